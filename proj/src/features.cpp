// SPDX-License-Identifier: Apache-2.0
#include "tci/features.hpp"

#include <algorithm>
#include <cmath>
#include <set>

namespace tci {

namespace {

constexpr int kEntityBlock = 17;  // 4 + 3 + 1 + 3 categorical/age + 6 DC

void entity_block_names(const std::string& prefix, std::vector<std::string>* out) {
  for (const char* s : {"biztype_soleprop", "biztype_unspec", "biztype_acc",
                        "biztype_listed", "ind_manufacturing", "ind_wholesale",
                        "ind_proserv", "business_age", "sales_small",
                        "sales_medium", "sales_large", "dc_o1", "dc_i1", "dc_oo2",
                        "dc_ii2", "dc_io2", "dc_oi2"})
    out->push_back(prefix + s);
}

Eigen::VectorXd entity_block(const EntityFeatures& f, const CentralityFeatures& dc) {
  Eigen::VectorXd out = Eigen::VectorXd::Zero(kEntityBlock);
  switch (f.business_type) {
    case BusinessType::SoleProprietorship: out[0] = 1; break;
    case BusinessType::UnspecifiedCorporation: out[1] = 1; break;
    case BusinessType::Acc: out[2] = 1; break;
    case BusinessType::Listed: out[3] = 1; break;
    case BusinessType::Llc: break;  // reference level
  }
  switch (f.industry) {
    case Industry::Manufacturing: out[4] = 1; break;
    case Industry::Wholesale: out[5] = 1; break;
    case Industry::ProfessionalServices: out[6] = 1; break;
    case Industry::Others: break;  // reference level
  }
  out[7] = f.business_age;
  switch (f.sales) {
    case SalesBucket::Small: out[8] = 1; break;
    case SalesBucket::Medium: out[9] = 1; break;
    case SalesBucket::Large: out[10] = 1; break;
    case SalesBucket::NotAvailable: break;  // reference level
  }
  out[11] = dc.dc_o1;
  out[12] = dc.dc_i1;
  out[13] = dc.dc_oo2;
  out[14] = dc.dc_ii2;
  out[15] = dc.dc_io2;
  out[16] = dc.dc_oi2;
  return out;
}

// continuous columns (standardization targets): ages, the 12 DC measures and
// the four amount/turnover covariates
std::vector<int> continuous_columns() {
  std::vector<int> cols;
  for (int side = 0; side < 2; ++side) {
    const int base = 1 + side * kEntityBlock;
    cols.push_back(base + 7);  // business age
    for (int j = 11; j < 17; ++j) cols.push_back(base + j);
  }
  const int pol = 1 + 2 * kEntityBlock;
  cols.push_back(pol);      // total insured amount
  cols.push_back(pol + 1);  // avg turnover ratio
  cols.push_back(pol + 3);  // connection insured amount
  cols.push_back(pol + 4);  // connection turnover ratio
  return cols;
}

}  // namespace

bool ScalingInfo::operator==(const ScalingInfo& o) const {
  if (columns.size() != o.columns.size()) return false;
  for (size_t i = 0; i < columns.size(); ++i) {
    if (columns[i].standardized != o.columns[i].standardized ||
        columns[i].mean != o.columns[i].mean ||
        columns[i].scale != o.columns[i].scale)
      return false;
  }
  return true;
}

int design_width() { return 1 + 2 * kEntityBlock + 3 + 2; }

std::vector<std::string> design_column_names() {
  std::vector<std::string> names;
  names.push_back("(intercept)");
  entity_block_names("b_", &names);
  entity_block_names("s_", &names);
  names.push_back("u_total_insured");
  names.push_back("u_avg_turnover");
  names.push_back("u_single_buyer");
  names.push_back("v_insured");
  names.push_back("v_turnover");
  return names;
}

int FeatureTable::latent_entity_index(EntityId id) const {
  auto it = std::lower_bound(latent_entities.begin(), latent_entities.end(), id);
  if (it == latent_entities.end() || *it != id) return -1;
  return static_cast<int>(it - latent_entities.begin());
}

int FeatureTable::latent_policy_index(PolicyId id) const {
  auto it = std::lower_bound(latent_policies.begin(), latent_policies.end(), id);
  if (it == latent_policies.end() || *it != id) return -1;
  return static_cast<int>(it - latent_policies.begin());
}

FeatureTable featurize_connections(const NetworkGraph& g, WeightScheme scheme,
                                   const ScalingInfo* fixed_scaling) {
  FeatureTable ft;
  ft.tau = g.tau;
  ft.origin_year = g.origin_year;
  ft.col_names = design_column_names();
  const int n = static_cast<int>(g.connections.size());
  const int p = design_width();
  ft.x.resize(n, p);
  ft.conn_ids.resize(static_cast<size_t>(n));
  ft.policy_of_row.resize(static_cast<size_t>(n));
  ft.buyer_of_row.resize(static_cast<size_t>(n));
  ft.seller_of_row.resize(static_cast<size_t>(n));
  ft.start.resize(n);
  ft.window.resize(n);
  ft.z_obs.resize(n);
  ft.t_obs.resize(n);
  ft.in_sample.resize(static_cast<size_t>(n));

  CentralityCache cache(g);

  for (int r = 0; r < n; ++r) {
    const ConnectionRecord& k = g.connections[static_cast<size_t>(r)];
    const PolicyRecord& pol = g.policies[static_cast<size_t>(g.policy_pos(k.policy))];
    const double t0 = pol.start;

    const int bpos = g.entity_pos(k.buyer);
    const int spos = g.entity_pos(k.seller);
    const EntityFeatures* bf = g.entity_features_at(bpos, t0);
    const EntityFeatures* sf = g.entity_features_at(spos, t0);
    if (!bf)
      throw ValidationError("connection " + std::to_string(k.id) + ": entity " +
                            std::to_string(k.buyer) + " has no features for year " +
                            std::to_string(year_of_time(g.origin_year, t0)));
    if (!sf)
      throw ValidationError("connection " + std::to_string(k.id) + ": entity " +
                            std::to_string(k.seller) + " has no features for year " +
                            std::to_string(year_of_time(g.origin_year, t0)));

    ft.x(r, 0) = 1.0;
    ft.x.row(r).segment(1, kEntityBlock) =
        entity_block(*bf, cache.at(k.buyer, t0, scheme)).transpose();
    ft.x.row(r).segment(1 + kEntityBlock, kEntityBlock) =
        entity_block(*sf, cache.at(k.seller, t0, scheme)).transpose();
    const int pc = 1 + 2 * kEntityBlock;
    ft.x(r, pc) = pol.total_insured;
    ft.x(r, pc + 1) = pol.avg_turnover;
    ft.x(r, pc + 2) = pol.type == PolicyType::SingleBuyer ? 1.0 : 0.0;
    ft.x(r, pc + 3) = k.insured;
    ft.x(r, pc + 4) = k.turnover;

    ft.conn_ids[static_cast<size_t>(r)] = k.id;
    ft.policy_of_row[static_cast<size_t>(r)] = k.policy;
    ft.buyer_of_row[static_cast<size_t>(r)] = k.buyer;
    ft.seller_of_row[static_cast<size_t>(r)] = k.seller;
    ft.start[r] = t0;
    ft.window[r] = g.tau - t0;
    ft.z_obs[r] = k.z_obs;
    ft.t_obs[r] = k.t_obs;
    ft.in_sample[static_cast<size_t>(r)] = ft.window[r] > 0.0 ? 1 : 0;
  }

  // scaling: z-score continuous columns over the in-sample rows
  if (fixed_scaling) {
    if (static_cast<int>(fixed_scaling->columns.size()) != p)
      throw ValidationError("scaling metadata does not match the design layout");
    ft.scaling = *fixed_scaling;
  } else {
    ft.scaling.columns.assign(static_cast<size_t>(p), ColumnScaling{});
    std::vector<int> rows;
    for (int r = 0; r < n; ++r)
      if (ft.in_sample[static_cast<size_t>(r)]) rows.push_back(r);
    for (int c : continuous_columns()) {
      ColumnScaling& cs = ft.scaling.columns[static_cast<size_t>(c)];
      cs.standardized = true;
      if (rows.empty()) {
        cs.mean = 0.0;
        cs.scale = 0.0;
        continue;
      }
      double sum = 0.0;
      for (int r : rows) sum += ft.x(r, c);
      cs.mean = sum / static_cast<double>(rows.size());
      double ss = 0.0;
      for (int r : rows) {
        const double dv = ft.x(r, c) - cs.mean;
        ss += dv * dv;
      }
      const double sd = std::sqrt(ss / static_cast<double>(rows.size()));
      cs.scale = sd > 1e-12 ? 1.0 / sd : 0.0;  // zero-variance guard
    }
  }
  for (int c = 0; c < p; ++c) {
    const ColumnScaling& cs = ft.scaling.columns[static_cast<size_t>(c)];
    if (!cs.standardized) continue;
    ft.x.col(c) = (ft.x.col(c).array() - cs.mean) * cs.scale;
  }

  // dense latent universe from in-sample rows
  {
    std::set<EntityId> ents;
    std::set<PolicyId> pols;
    for (int r = 0; r < n; ++r) {
      if (!ft.in_sample[static_cast<size_t>(r)]) continue;
      ents.insert(ft.buyer_of_row[static_cast<size_t>(r)]);
      ents.insert(ft.seller_of_row[static_cast<size_t>(r)]);
      pols.insert(ft.policy_of_row[static_cast<size_t>(r)]);
    }
    ft.latent_entities.assign(ents.begin(), ents.end());
    ft.latent_policies.assign(pols.begin(), pols.end());
  }
  ft.ent_b.resize(n);
  ft.ent_s.resize(n);
  ft.pol.resize(n);
  ft.entity_is_buyer.assign(ft.latent_entities.size(), 0);
  ft.entity_is_seller.assign(ft.latent_entities.size(), 0);
  for (int r = 0; r < n; ++r) {
    ft.ent_b[r] = ft.latent_entity_index(ft.buyer_of_row[static_cast<size_t>(r)]);
    ft.ent_s[r] = ft.latent_entity_index(ft.seller_of_row[static_cast<size_t>(r)]);
    ft.pol[r] = ft.latent_policy_index(ft.policy_of_row[static_cast<size_t>(r)]);
    if (ft.in_sample[static_cast<size_t>(r)]) {
      ft.entity_is_buyer[static_cast<size_t>(ft.ent_b[r])] = 1;
      ft.entity_is_seller[static_cast<size_t>(ft.ent_s[r])] = 1;
    }
  }
  return ft;
}

}  // namespace tci
