// SPDX-License-Identifier: Apache-2.0
#include "tci/quadrature.hpp"

#include <algorithm>
#include <cmath>
#include <memory>

#include "tci/gammafn.hpp"

namespace tci {

QuadRule gauss_legendre(int n, double a, double b) {
  QuadRule rule;
  rule.nodes.resize(n);
  rule.weights.resize(n);
  const int m = (n + 1) / 2;
  const double xm = 0.5 * (b + a);
  const double xl = 0.5 * (b - a);
  for (int i = 0; i < m; ++i) {
    double z = std::cos(3.141592653589793 * (i + 0.75) / (n + 0.5));
    double pp = 0.0;
    for (int it = 0; it < 100; ++it) {
      double p1 = 1.0, p2 = 0.0;
      for (int j = 0; j < n; ++j) {
        const double p3 = p2;
        p2 = p1;
        p1 = ((2.0 * j + 1.0) * z * p2 - j * p3) / (j + 1.0);
      }
      pp = n * (z * p1 - p2) / (z * z - 1.0);
      const double z1 = z;
      z = z1 - p1 / pp;
      if (std::fabs(z - z1) < 1e-15) break;
    }
    rule.nodes[i] = xm - xl * z;
    rule.nodes[n - 1 - i] = xm + xl * z;
    rule.weights[i] = 2.0 * xl / ((1.0 - z * z) * pp * pp);
    rule.weights[n - 1 - i] = rule.weights[i];
  }
  return rule;
}

namespace {

double simpson(const std::function<double(double)>& f, double a, double fa,
               double b, double fb, double m, double fm) {
  return (b - a) / 6.0 * (fa + 4.0 * fm + fb);
}

double simpson_rec(const std::function<double(double)>& f, double a, double fa,
                   double b, double fb, double m, double fm, double whole,
                   double tol, int depth) {
  const double lm = 0.5 * (a + m), rm = 0.5 * (m + b);
  const double flm = f(lm), frm = f(rm);
  const double left = simpson(f, a, fa, m, fm, lm, flm);
  const double right = simpson(f, m, fm, b, fb, rm, frm);
  if (depth <= 0 || std::fabs(left + right - whole) <= 15.0 * tol)
    return left + right + (left + right - whole) / 15.0;
  return simpson_rec(f, a, fa, m, fm, lm, flm, left, 0.5 * tol, depth - 1) +
         simpson_rec(f, m, fm, b, fb, rm, frm, right, 0.5 * tol, depth - 1);
}

}  // namespace

double adaptive_simpson(const std::function<double(double)>& f, double a, double b,
                        double tol, int max_depth) {
  const double m = 0.5 * (a + b);
  const double fa = f(a), fb = f(b), fm = f(m);
  return simpson_rec(f, a, fa, b, fb, m, fm, simpson(f, a, fa, b, fb, m, fm), tol,
                     max_depth);
}

namespace {

struct LatentDim {
  char kind;      // 'B', 'S', 'P'
  int dense_idx;  // index into the table's latent universe
};

struct TensorPosterior {
  std::vector<LatentDim> dims;
  std::vector<QuadRule> rules;
  std::vector<double> log_post;  // log(prior * lik) per tensor point
  std::vector<double> weight;    // product of GL weights per point
  double log_norm = 0.0;

  int point_count() const {
    int n = 1;
    for (const auto& r : rules) n *= static_cast<int>(r.nodes.size());
    return n;
  }
  void coords(int flat, std::vector<int>* idx) const {
    idx->resize(dims.size());
    for (int d = static_cast<int>(dims.size()) - 1; d >= 0; --d) {
      const int n = static_cast<int>(rules[static_cast<size_t>(d)].nodes.size());
      (*idx)[static_cast<size_t>(d)] = flat % n;
      flat /= n;
    }
  }
};

// log prior over the latent dims; a same-entity (B, S) pair gets the
// correlated bivariate density, everything else is standard normal.
double log_prior_at(const std::vector<LatentDim>& dims,
                    const std::vector<double>& v, double rho) {
  double lp = 0.0;
  std::vector<char> done(dims.size(), 0);
  for (size_t i = 0; i < dims.size(); ++i) {
    if (done[i]) continue;
    if (dims[i].kind == 'P') {
      lp += log_normal_pdf(v[i]);
      continue;
    }
    int partner = -1;
    for (size_t j = i + 1; j < dims.size(); ++j)
      if (!done[j] && dims[j].kind != 'P' && dims[j].kind != dims[i].kind &&
          dims[j].dense_idx == dims[i].dense_idx)
        partner = static_cast<int>(j);
    if (partner >= 0) {
      const double b = dims[i].kind == 'B' ? v[i] : v[static_cast<size_t>(partner)];
      const double s = dims[i].kind == 'S' ? v[i] : v[static_cast<size_t>(partner)];
      lp += log_binormal_pdf(b, s, rho);
      done[static_cast<size_t>(partner)] = 1;
    } else {
      lp += log_normal_pdf(v[i]);
    }
  }
  return lp;
}

double row_loglik(const FeatureTable& ft, int r, const ParameterSet& ps,
                  const std::vector<LatentDim>& dims, const std::vector<double>& v) {
  double b = 0, s = 0, p = 0;
  for (size_t d = 0; d < dims.size(); ++d) {
    if (dims[d].kind == 'B' && ft.ent_b[r] == dims[d].dense_idx) b = v[d];
    if (dims[d].kind == 'S' && ft.ent_s[r] == dims[d].dense_idx) s = v[d];
    if (dims[d].kind == 'P' && ft.pol[r] == dims[d].dense_idx) p = v[d];
  }
  return obs_loglik_term(ft.z_obs[r], ft.t_obs[r], eta_logistic(ft, r, ps, b, s, p),
                         eta_gamma(ft, r, ps, b, s, p), ps.psi, ft.window[r]);
}

TensorPosterior build_tensor(const ConnectionData& data, const ParameterSet& ps,
                             int nodes_per_dim, double half_width) {
  const FeatureTable& ft = *data.table;
  TensorPosterior tp;
  {
    std::vector<int> bset, sset, pset;
    for (int r : data.rows) {
      if (ft.ent_b[r] >= 0) bset.push_back(ft.ent_b[r]);
      if (ft.ent_s[r] >= 0) sset.push_back(ft.ent_s[r]);
      if (ft.pol[r] >= 0) pset.push_back(ft.pol[r]);
    }
    auto uniq = [](std::vector<int>& v) {
      std::sort(v.begin(), v.end());
      v.erase(std::unique(v.begin(), v.end()), v.end());
    };
    uniq(bset);
    uniq(sset);
    uniq(pset);
    for (int i : bset) tp.dims.push_back(LatentDim{'B', i});
    for (int i : sset) tp.dims.push_back(LatentDim{'S', i});
    for (int i : pset) tp.dims.push_back(LatentDim{'P', i});
  }
  if (tp.dims.size() > 3)
    throw NumericError("oracle_posterior: instance has more than 3 latent dimensions");
  for (size_t d = 0; d < tp.dims.size(); ++d)
    tp.rules.push_back(gauss_legendre(nodes_per_dim, -half_width, half_width));

  const int npts = tp.point_count();
  tp.log_post.resize(static_cast<size_t>(npts));
  tp.weight.resize(static_cast<size_t>(npts));
  std::vector<int> idx;
  std::vector<double> v(tp.dims.size());
  for (int q = 0; q < npts; ++q) {
    tp.coords(q, &idx);
    double w = 1.0;
    for (size_t d = 0; d < tp.dims.size(); ++d) {
      v[d] = tp.rules[d].nodes[idx[d]];
      w *= tp.rules[d].weights[idx[d]];
    }
    double lp = log_prior_at(tp.dims, v, ps.rho);
    for (int r : data.rows) lp += row_loglik(ft, r, ps, tp.dims, v);
    tp.log_post[static_cast<size_t>(q)] = lp;
    tp.weight[static_cast<size_t>(q)] = w;
  }
  const double shift =
      *std::max_element(tp.log_post.begin(), tp.log_post.end());
  double norm = 0.0;
  for (int q = 0; q < npts; ++q)
    norm += tp.weight[static_cast<size_t>(q)] *
            std::exp(tp.log_post[static_cast<size_t>(q)] - shift);
  tp.log_norm = std::log(norm) + shift;
  return tp;
}

}  // namespace

OraclePosterior oracle_posterior(const ConnectionData& data, const ParameterSet& ps,
                                 int nodes_per_dim, double half_width) {
  const FeatureTable& ft = *data.table;
  auto tp = std::make_shared<TensorPosterior>(
      build_tensor(data, ps, nodes_per_dim, half_width));

  OraclePosterior out;
  out.log_marginal = tp->log_norm;
  {
    const TensorPosterior check =
        build_tensor(data, ps, std::max(21, 3 * nodes_per_dim / 4), half_width);
    out.richardson_gap = std::fabs(check.log_norm - tp->log_norm);
  }

  const int ndim = static_cast<int>(tp->dims.size());
  for (const auto& d : tp->dims) {
    const std::string id =
        d.kind == 'P' ? std::to_string(ft.latent_policies[static_cast<size_t>(d.dense_idx)])
                      : std::to_string(ft.latent_entities[static_cast<size_t>(d.dense_idx)]);
    out.dim_names.push_back(std::string(1, d.kind) + ":" + id);
  }

  const int npts = tp->point_count();
  out.mean = Eigen::VectorXd::Zero(ndim);
  out.var = Eigen::VectorXd::Zero(ndim);
  out.p_pos = Eigen::VectorXd::Zero(static_cast<Eigen::Index>(data.rows.size()));
  out.p_ur = Eigen::VectorXd::Zero(static_cast<Eigen::Index>(data.rows.size()));

  std::vector<int> idx;
  std::vector<double> v(static_cast<size_t>(ndim));
  for (int q = 0; q < npts; ++q) {
    tp->coords(q, &idx);
    for (int d = 0; d < ndim; ++d) v[static_cast<size_t>(d)] = tp->rules[d].nodes[idx[d]];
    const double wpost = tp->weight[static_cast<size_t>(q)] *
                         std::exp(tp->log_post[static_cast<size_t>(q)] - tp->log_norm);
    for (int d = 0; d < ndim; ++d) {
      out.mean[d] += wpost * v[static_cast<size_t>(d)];
      out.var[d] += wpost * v[static_cast<size_t>(d)] * v[static_cast<size_t>(d)];
    }
    for (size_t ri = 0; ri < data.rows.size(); ++ri) {
      const int r = data.rows[ri];
      double b = 0, s = 0, p = 0;
      for (int d = 0; d < ndim; ++d) {
        if (tp->dims[static_cast<size_t>(d)].kind == 'B' &&
            ft.ent_b[r] == tp->dims[static_cast<size_t>(d)].dense_idx)
          b = v[static_cast<size_t>(d)];
        if (tp->dims[static_cast<size_t>(d)].kind == 'S' &&
            ft.ent_s[r] == tp->dims[static_cast<size_t>(d)].dense_idx)
          s = v[static_cast<size_t>(d)];
        if (tp->dims[static_cast<size_t>(d)].kind == 'P' &&
            ft.pol[r] == tp->dims[static_cast<size_t>(d)].dense_idx)
          p = v[static_cast<size_t>(d)];
      }
      const double pk = logit_inv(eta_logistic(ft, r, ps, b, s, p));
      const double mu = std::exp(eta_gamma(ft, r, ps, b, s, p));
      const double f = ft.window[r] > 0 ? gap_cdf(ft.window[r], mu, ps.psi) : 0.0;
      out.p_pos[static_cast<Eigen::Index>(ri)] += wpost * pk;
      out.p_ur[static_cast<Eigen::Index>(ri)] +=
          wpost * (pk * (1.0 - f) / (pk * (1.0 - f) + (1.0 - pk)));
    }
  }
  for (int d = 0; d < ndim; ++d) out.var[d] -= out.mean[d] * out.mean[d];

  // Marginal CDFs via a fine grid: for queries we integrate the exact
  // marginal density (other dims integrated by the tensor rule) with a
  // cumulative trapezoid over [-hw, hw].
  struct CdfCache {
    std::vector<std::vector<double>> grid_x, grid_cdf;  // per dim, lazy
  };
  auto cache = std::make_shared<CdfCache>();
  cache->grid_x.resize(static_cast<size_t>(ndim));
  cache->grid_cdf.resize(static_cast<size_t>(ndim));

  const ParameterSet ps_copy = ps;
  const FeatureTable* ftp = data.table;
  const std::vector<int> rows = data.rows;
  const double hw = half_width;
  out.marginal_cdf = [tp, cache, ps_copy, ftp, rows, hw, ndim](int dim,
                                                               double x) -> double {
    if (dim < 0 || dim >= ndim) throw NumericError("marginal_cdf: bad dimension");
    auto& gx = cache->grid_x[static_cast<size_t>(dim)];
    auto& gc = cache->grid_cdf[static_cast<size_t>(dim)];
    if (gx.empty()) {
      const int fine = 1601;
      gx.resize(fine);
      std::vector<double> dens(static_cast<size_t>(fine), 0.0);
      // enumerate the complementary tensor once
      std::vector<int> other_dims;
      for (int d = 0; d < ndim; ++d)
        if (d != dim) other_dims.push_back(d);
      int nother = 1;
      for (int d : other_dims)
        nother *= static_cast<int>(tp->rules[static_cast<size_t>(d)].nodes.size());
      std::vector<double> v(static_cast<size_t>(ndim));
      for (int g = 0; g < fine; ++g) {
        const double u = -hw + 2.0 * hw * g / (fine - 1);
        gx[static_cast<size_t>(g)] = u;
        double total = 0.0;
        for (int oq = 0; oq < nother; ++oq) {
          int rem = oq;
          double w = 1.0;
          for (int d = static_cast<int>(other_dims.size()) - 1; d >= 0; --d) {
            const int dd = other_dims[static_cast<size_t>(d)];
            const int n = static_cast<int>(tp->rules[static_cast<size_t>(dd)].nodes.size());
            const int j = rem % n;
            rem /= n;
            v[static_cast<size_t>(dd)] = tp->rules[static_cast<size_t>(dd)].nodes[j];
            w *= tp->rules[static_cast<size_t>(dd)].weights[j];
          }
          v[static_cast<size_t>(dim)] = u;
          double lp = log_prior_at(tp->dims, v, ps_copy.rho);
          for (int r : rows) lp += row_loglik(*ftp, r, ps_copy, tp->dims, v);
          total += w * std::exp(lp - tp->log_norm);
        }
        dens[static_cast<size_t>(g)] = total;
      }
      gc.resize(static_cast<size_t>(fine));
      gc[0] = 0.0;
      for (int g = 1; g < fine; ++g)
        gc[static_cast<size_t>(g)] =
            gc[static_cast<size_t>(g - 1)] +
            0.5 * (dens[static_cast<size_t>(g - 1)] + dens[static_cast<size_t>(g)]) *
                (gx[static_cast<size_t>(g)] - gx[static_cast<size_t>(g - 1)]);
      const double total_mass = gc[static_cast<size_t>(fine - 1)];
      if (total_mass > 0)
        for (auto& cval : gc) cval /= total_mass;
    }
    if (x <= gx.front()) return 0.0;
    if (x >= gx.back()) return 1.0;
    const auto it = std::upper_bound(gx.begin(), gx.end(), x);
    const size_t j = static_cast<size_t>(it - gx.begin());
    const double w = (x - gx[j - 1]) / (gx[j] - gx[j - 1]);
    return gc[j - 1] + w * (gc[j] - gc[j - 1]);
  };
  return out;
}

}  // namespace tci
