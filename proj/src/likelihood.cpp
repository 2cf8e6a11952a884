// SPDX-License-Identifier: Apache-2.0
#include "tci/likelihood.hpp"

#include <cmath>

#include "tci/gammafn.hpp"

namespace tci {

void ParameterSet::validate() const {
  if (alpha.size() != gamma.size())
    throw ValidationError("parameter set: alpha and gamma layouts differ");
  if (beta[0] < 0.0)
    throw ValidationError("parameter set: beta1 must be non-negative");
  if (!(psi > 0.0)) throw ValidationError("parameter set: psi must be positive");
  if (!(std::fabs(rho) < 1.0))
    throw ValidationError("parameter set: rho must lie in (-1, 1)");
}

LatentState LatentState::zeros(int n_entities, int n_policies) {
  LatentState st;
  st.b = Eigen::VectorXd::Zero(n_entities);
  st.s = Eigen::VectorXd::Zero(n_entities);
  st.p = Eigen::VectorXd::Zero(n_policies);
  return st;
}

double claim_prob(const Eigen::VectorXd& xbar, const Eigen::VectorXd& alpha,
                  const Eigen::Vector3d& beta) {
  if (xbar.size() != alpha.size() + 3)
    throw ValidationError("claim_prob: design row length does not match alpha + 3");
  double eta = 0.0;
  for (Eigen::Index j = 0; j < alpha.size(); ++j) {
    const double term = alpha[j] * xbar[j];
    if (!std::isfinite(term))
      throw NumericError("claim_prob: non-finite contribution at coefficient " +
                         std::to_string(j));
    eta += term;
  }
  for (int j = 0; j < 3; ++j) {
    const double term = beta[j] * xbar[alpha.size() + j];
    if (!std::isfinite(term))
      throw NumericError("claim_prob: non-finite contribution at latent coefficient " +
                         std::to_string(j));
    eta += term;
  }
  return logit_inv(eta);
}

double gap_log_density(double t, double mu, double psi) {
  if (!(t > 0.0)) throw NumericError("gap_density: t must be positive");
  if (!(mu > 0.0) || !(psi > 0.0))
    throw NumericError("gap_density: mu and psi must be positive");
  const double a = 1.0 / psi;
  const double theta = psi * mu;
  return (a - 1.0) * std::log(t) - t / theta - a * std::log(theta) - std::lgamma(a);
}

double gap_density(double t, double mu, double psi) {
  return std::exp(gap_log_density(t, mu, psi));
}

double gap_cdf(double t, double mu, double psi) {
  if (t <= 0.0) return 0.0;
  if (!(mu > 0.0) || !(psi > 0.0))
    throw NumericError("gap_cdf: mu and psi must be positive");
  if (!std::isfinite(t)) return 1.0;
  return gammp(1.0 / psi, t / (psi * mu));
}

double truncated_claim_prob(double p, double mu, double psi, double c) {
  return p * gap_cdf(c, mu, psi);
}

double truncated_gap_density(double t, double mu, double psi, double c) {
  if (!(t > 0.0) || t > c)
    throw NumericError("truncated_gap_density: t outside (0, c]");
  const double f = gap_cdf(c, mu, psi);
  return gap_density(t, mu, psi) / f;
}

double obs_loglik_term(int z_obs, double t_obs, double eta_p, double eta_mu,
                       double psi, double window) {
  const double p = logit_inv(eta_p);
  const double mu = std::exp(std::min(std::max(eta_mu, -kLinPredClamp), kLinPredClamp));
  if (z_obs) {
    // log p* + log f*(t~) = log p + log f(t~): the truncation CDF cancels
    return std::log(p) + gap_log_density(t_obs, mu, psi);
  }
  const double f = gap_cdf(window, mu, psi);
  return std::log1p(-p * f);
}

double eta_logistic(const FeatureTable& ft, int row, const ParameterSet& ps,
                    double b, double s, double p) {
  return ft.x.row(row).dot(ps.alpha) + ps.beta[0] * b + ps.beta[1] * s +
         ps.beta[2] * p;
}

double eta_gamma(const FeatureTable& ft, int row, const ParameterSet& ps,
                 double b, double s, double p) {
  return ft.x.row(row).dot(ps.gamma) + ps.nu[0] * b + ps.nu[1] * s + ps.nu[2] * p;
}

namespace {

void latent_values(const FeatureTable& ft, int row, const LatentState& st,
                   double* b, double* s, double* p) {
  *b = ft.ent_b[row] >= 0 ? st.b[ft.ent_b[row]] : 0.0;
  *s = ft.ent_s[row] >= 0 ? st.s[ft.ent_s[row]] : 0.0;
  *p = ft.pol[row] >= 0 ? st.p[ft.pol[row]] : 0.0;
}

}  // namespace

double obs_loglik_conditional(const ConnectionData& data, const ParameterSet& ps,
                              const LatentState& latents) {
  const FeatureTable& ft = *data.table;
  double total = 0.0;
  for (int r : data.rows) {
    double b, s, p;
    latent_values(ft, r, latents, &b, &s, &p);
    total += obs_loglik_term(ft.z_obs[r], ft.t_obs[r],
                             eta_logistic(ft, r, ps, b, s, p),
                             eta_gamma(ft, r, ps, b, s, p), ps.psi, ft.window[r]);
  }
  return total;
}

double complete_loglik(const ConnectionData& data, const ParameterSet& ps,
                       const LatentState& latents,
                       const Eigen::VectorXi& z_actual,
                       const Eigen::VectorXd& t_actual) {
  if (!(std::fabs(ps.rho) < 1.0)) throw NumericError("complete_loglik: |rho| >= 1");
  const FeatureTable& ft = *data.table;
  double total = 0.0;
  for (size_t i = 0; i < data.rows.size(); ++i) {
    const int r = data.rows[i];
    double b, s, p;
    latent_values(ft, r, latents, &b, &s, &p);
    const double pk = logit_inv(eta_logistic(ft, r, ps, b, s, p));
    if (z_actual[static_cast<Eigen::Index>(i)]) {
      const double mu = std::exp(eta_gamma(ft, r, ps, b, s, p));
      total += std::log(pk) +
               gap_log_density(t_actual[static_cast<Eigen::Index>(i)], mu, ps.psi);
    } else {
      total += std::log1p(-pk);
    }
  }
  for (Eigen::Index i = 0; i < latents.b.size(); ++i)
    total += log_binormal_pdf(latents.b[i], latents.s[i], ps.rho);
  for (Eigen::Index j = 0; j < latents.p.size(); ++j)
    total += log_normal_pdf(latents.p[j]);
  return total;
}

}  // namespace tci
