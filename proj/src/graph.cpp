// SPDX-License-Identifier: Apache-2.0
#include "tci/graph.hpp"

#include <algorithm>
#include <cmath>
#include <set>
#include <unordered_map>

namespace tci {

namespace {

template <typename Rec, typename Id>
int pos_by_id(const std::vector<Rec>& v, Id id) {
  auto it = std::lower_bound(v.begin(), v.end(), id,
                             [](const Rec& r, Id key) { return r.id < key; });
  if (it == v.end() || it->id != id) return -1;
  return static_cast<int>(it - v.begin());
}

}  // namespace

const EntityFeatures* EntityRecord::features_for_year(int year) const {
  auto it = std::lower_bound(
      by_year.begin(), by_year.end(), year,
      [](const std::pair<int, EntityFeatures>& p, int y) { return p.first < y; });
  if (it == by_year.end() || it->first != year) return nullptr;
  return &it->second;
}

int NetworkGraph::entity_pos(EntityId id) const { return pos_by_id(entities, id); }
int NetworkGraph::policy_pos(PolicyId id) const { return pos_by_id(policies, id); }
int NetworkGraph::connection_pos(ConnectionId id) const {
  return pos_by_id(connections, id);
}

const EntityFeatures* NetworkGraph::entity_features_at(int entity_position,
                                                       double t) const {
  const EntityRecord& e = entities.at(static_cast<size_t>(entity_position));
  return e.features_for_year(year_of_time(origin_year, t));
}

Observed observe(int z_actual, double t_actual, double policy_start, double tau) {
  const double window = tau - policy_start;
  if (z_actual != 0 && t_actual <= window) return Observed{1, t_actual};
  return Observed{0, kInf};
}

NetworkGraph build_graph(const std::vector<EntityFeatureRow>& entity_rows,
                         const std::vector<PolicyInputRow>& policy_rows,
                         const std::vector<ConnectionInputRow>& connection_rows,
                         double tau, int origin_year,
                         std::optional<Date> tau_date) {
  NetworkGraph g;
  g.tau = tau;
  g.origin_year = origin_year;
  g.tau_date = tau_date;

  // entities: group feature rows by id
  {
    std::map<EntityId, EntityRecord> by_id;
    for (const auto& row : entity_rows) {
      if (row.id < 0)
        throw ValidationError("entity id " + std::to_string(row.id) + " is negative");
      if (row.features.business_age < 0.0)
        throw ValidationError("entity " + std::to_string(row.id) +
                              ": negative business age");
      EntityRecord& rec = by_id[row.id];
      rec.id = row.id;
      for (const auto& [y, f] : rec.by_year)
        if (y == row.year)
          throw ValidationError("entity " + std::to_string(row.id) +
                                ": duplicate feature row for year " +
                                std::to_string(row.year));
      rec.by_year.emplace_back(row.year, row.features);
    }
    g.entities.reserve(by_id.size());
    for (auto& [id, rec] : by_id) {
      std::sort(rec.by_year.begin(), rec.by_year.end(),
                [](const auto& a, const auto& b) { return a.first < b.first; });
      g.entities.push_back(std::move(rec));
    }
  }

  // policies
  {
    std::set<PolicyId> seen;
    std::map<PolicyId, PolicyRecord> by_id;
    for (const auto& row : policy_rows) {
      if (!seen.insert(row.id).second)
        throw ValidationError("duplicate policy id " + std::to_string(row.id));
      if (g.entity_pos(row.seller) < 0)
        throw ValidationError("policy " + std::to_string(row.id) +
                              ": unknown seller entity " + std::to_string(row.seller));
      if (!(row.start < row.end))
        throw ValidationError("policy " + std::to_string(row.id) +
                              ": start date must precede end date");
      if (row.start < 0.0 || !(row.start < tau))
        throw ValidationError("policy " + std::to_string(row.id) +
                              ": start date outside [origin, tau)");
      if (!(row.total_insured > 0.0) || !(row.avg_turnover > 0.0))
        throw ValidationError("policy " + std::to_string(row.id) +
                              ": non-positive insured amount or turnover ratio");
      PolicyRecord rec;
      rec.id = row.id;
      rec.seller = row.seller;
      rec.start = row.start;
      rec.end = row.end;
      rec.start_date = row.start_date;
      rec.end_date = row.end_date;
      rec.type = row.type;
      rec.total_insured = row.total_insured;
      rec.avg_turnover = row.avg_turnover;
      by_id.emplace(row.id, std::move(rec));
    }
    g.policies.reserve(by_id.size());
    for (auto& [id, rec] : by_id) g.policies.push_back(std::move(rec));
  }

  // connections
  {
    std::set<ConnectionId> seen;
    std::map<ConnectionId, ConnectionRecord> by_id;
    for (const auto& row : connection_rows) {
      if (!seen.insert(row.id).second)
        throw ValidationError("duplicate connection id " + std::to_string(row.id));
      const int ppos = g.policy_pos(row.policy);
      if (ppos < 0)
        throw ValidationError("connection " + std::to_string(row.id) +
                              ": unknown policy " + std::to_string(row.policy));
      if (g.entity_pos(row.buyer) < 0)
        throw ValidationError("connection " + std::to_string(row.id) +
                              ": unknown buyer entity " + std::to_string(row.buyer));
      const PolicyRecord& pol = g.policies[static_cast<size_t>(ppos)];
      if (row.buyer == pol.seller)
        throw ValidationError("connection " + std::to_string(row.id) +
                              ": self-loop (buyer equals the policy seller " +
                              std::to_string(pol.seller) + ")");
      if (!(row.insured > 0.0) || !(row.turnover > 0.0))
        throw ValidationError("connection " + std::to_string(row.id) +
                              ": non-positive insured amount or turnover ratio");
      if (row.z_obs != 0) {
        if (!(row.t_obs > 0.0) || !std::isfinite(row.t_obs))
          throw ValidationError("connection " + std::to_string(row.id) +
                                ": claim flagged but reporting gap is not a positive "
                                "finite time");
        if (row.t_obs > tau - pol.start + 1e-12)
          throw ValidationError("connection " + std::to_string(row.id) +
                                ": observed claim reported outside the truncation "
                                "window (gap " + std::to_string(row.t_obs) +
                                " > tau - start)");
      } else if (std::isfinite(row.t_obs)) {
        throw ValidationError("connection " + std::to_string(row.id) +
                              ": reporting gap present without a claim flag");
      }
      ConnectionRecord rec;
      rec.id = row.id;
      rec.policy = row.policy;
      rec.seller = pol.seller;
      rec.buyer = row.buyer;
      rec.insured = row.insured;
      rec.turnover = row.turnover;
      rec.z_obs = row.z_obs ? 1 : 0;
      rec.t_obs = row.z_obs ? row.t_obs : kInf;
      rec.report_date = row.report_date;
      by_id.emplace(row.id, std::move(rec));
    }
    g.connections.reserve(by_id.size());
    for (auto& [id, rec] : by_id) g.connections.push_back(std::move(rec));
  }

  // inverted indexes and derived buyer sets
  g.conns_as_buyer.assign(g.entities.size(), {});
  g.conns_as_seller.assign(g.entities.size(), {});
  for (int c = 0; c < static_cast<int>(g.connections.size()); ++c) {
    const ConnectionRecord& k = g.connections[static_cast<size_t>(c)];
    const int ppos = g.policy_pos(k.policy);
    PolicyRecord& pol = g.policies[static_cast<size_t>(ppos)];
    pol.connections.push_back(c);
    pol.buyers.push_back(k.buyer);
    g.conns_as_buyer[static_cast<size_t>(g.entity_pos(k.buyer))].push_back(c);
    g.conns_as_seller[static_cast<size_t>(g.entity_pos(k.seller))].push_back(c);
  }
  for (auto& pol : g.policies) {
    std::sort(pol.buyers.begin(), pol.buyers.end());
    pol.buyers.erase(std::unique(pol.buyers.begin(), pol.buyers.end()),
                     pol.buyers.end());
    if (pol.buyers.empty())
      throw ValidationError("policy " + std::to_string(pol.id) +
                            " has no connections");
    const bool declared_single = pol.type == PolicyType::SingleBuyer;
    if (declared_single != (pol.buyers.size() == 1))
      throw ValidationError("policy " + std::to_string(pol.id) +
                            ": declared policy type does not match its buyer count (" +
                            std::to_string(pol.buyers.size()) + " buyers)");
  }
  return g;
}

ActiveSubgraph active_subgraph(const NetworkGraph& g, double t) {
  ActiveSubgraph v;
  v.graph = &g;
  v.t = t;
  std::set<EntityId> ents;
  for (int p = 0; p < static_cast<int>(g.policies.size()); ++p) {
    const PolicyRecord& pol = g.policies[static_cast<size_t>(p)];
    if (pol.start < t && t <= pol.end) {
      v.policies.push_back(p);
      ents.insert(pol.seller);
      for (EntityId b : pol.buyers) ents.insert(b);
      for (int c : pol.connections) v.connections.push_back(c);
    }
  }
  std::sort(v.connections.begin(), v.connections.end());
  v.entities.assign(ents.begin(), ents.end());
  return v;
}

NetworkGraph restrict_to_insample(const NetworkGraph& g, double tau_new,
                                  std::optional<Date> tau_date) {
  std::vector<EntityFeatureRow> ents;
  for (const auto& e : g.entities)
    for (const auto& [year, f] : e.by_year)
      ents.push_back(EntityFeatureRow{e.id, year, f});
  std::vector<PolicyInputRow> pols;
  std::set<PolicyId> kept;
  for (const auto& p : g.policies) {
    if (!(p.start < tau_new)) continue;
    kept.insert(p.id);
    pols.push_back(PolicyInputRow{p.id, p.seller, p.start, p.end, p.start_date,
                                  p.end_date, p.type, p.total_insured,
                                  p.avg_turnover});
  }
  std::vector<ConnectionInputRow> conns;
  for (const auto& k : g.connections) {
    if (!kept.count(k.policy)) continue;
    const PolicyRecord& pol = g.policies[static_cast<size_t>(g.policy_pos(k.policy))];
    const Observed o = observe(k.z_obs, k.t_obs, pol.start, tau_new);
    ConnectionInputRow row{k.id,      k.policy, k.buyer, k.insured,
                           k.turnover, o.z,      o.t,     std::nullopt};
    if (o.z) row.report_date = k.report_date;
    conns.push_back(row);
  }
  return build_graph(ents, pols, conns, tau_new, g.origin_year, tau_date);
}

}  // namespace tci
