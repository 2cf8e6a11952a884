// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <Eigen/Dense>
#include <vector>

#include "tci/common.hpp"
#include "tci/features.hpp"

namespace tci {

// Full model parameterization: logistic fixed effects alpha, logistic latent
// loadings beta = (buyer, seller, policy), Gamma fixed effects gamma, Gamma
// latent loadings nu, Gamma dispersion psi, buyer-seller latent correlation
// rho. alpha and gamma share one layout (design_column_names()).
struct ParameterSet {
  Eigen::VectorXd alpha;
  Eigen::Vector3d beta = Eigen::Vector3d::Zero();
  Eigen::VectorXd gamma;
  Eigen::Vector3d nu = Eigen::Vector3d::Zero();
  double psi = 1.0;
  double rho = 0.0;

  void validate() const;  // beta1 >= 0, psi > 0, |rho| < 1, layouts match
};

// One joint draw of all latent effects, dense-indexed per FeatureTable maps.
struct LatentState {
  Eigen::VectorXd b;  // buyer effects per latent entity
  Eigen::VectorXd s;  // seller effects per latent entity
  Eigen::VectorXd p;  // policy effects per latent policy

  static LatentState zeros(int n_entities, int n_policies);
};

// linear predictor clamp; keeps MH ratios finite under extreme proposals
inline constexpr double kLinPredClamp = 35.0;

inline double logit_inv(double eta) {
  if (eta > kLinPredClamp) eta = kLinPredClamp;
  if (eta < -kLinPredClamp) eta = -kLinPredClamp;
  return 1.0 / (1.0 + std::exp(-eta));
}

// Claim probability for one assembled design row (fixed covariates followed
// by the three latent values). Throws NumericError naming the offending
// coefficient if the linear predictor is not finite.
double claim_prob(const Eigen::VectorXd& xbar, const Eigen::VectorXd& alpha,
                  const Eigen::Vector3d& beta);

// ---- mean-parameterized Gamma: shape 1/psi, scale psi*mu ----
// (mean mu, variance psi*mu^2; the unique choice whose log-density score in
// eta = log mu is (1/psi)(-1 + t/mu))

double gap_log_density(double t, double mu, double psi);
double gap_density(double t, double mu, double psi);
double gap_cdf(double t, double mu, double psi);

// p* = p F(c; mu, psi): probability that a claim occurs and is reported
// within the truncation window c.
double truncated_claim_prob(double p, double mu, double psi, double c);

// f*(t) = f(t; mu, psi) / F(c; mu, psi) on (0, c]
double truncated_gap_density(double t, double mu, double psi, double c);

// One connection's contribution to the observed-data log-likelihood:
//   z (log p* + log f*(t~)) + (1 - z) log(1 - p*)
// (for z = 1 the F factors cancel: log p + log f(t~)).
double obs_loglik_term(int z_obs, double t_obs, double eta_p, double eta_mu,
                       double psi, double window);

// Row-major views used by the whole-portfolio likelihoods.
struct ConnectionData {
  const FeatureTable* table = nullptr;
  std::vector<int> rows;  // subset of table rows (the likelihood footprint)
};

// Observed-data log-likelihood given the random effects (sum over rows).
double obs_loglik_conditional(const ConnectionData& data, const ParameterSet& psi,
                              const LatentState& latents);

// Complete-data log-likelihood at actual outcomes (z, t): Bernoulli terms
// with untruncated p, Gamma terms where z = 1, plus the latent normal priors
// over the whole latent universe.
double complete_loglik(const ConnectionData& data, const ParameterSet& psi,
                       const LatentState& latents,
                       const Eigen::VectorXi& z_actual,
                       const Eigen::VectorXd& t_actual);

// Linear predictors for one row at given latent values.
double eta_logistic(const FeatureTable& ft, int row, const ParameterSet& ps,
                    double b, double s, double p);
double eta_gamma(const FeatureTable& ft, int row, const ParameterSet& ps,
                 double b, double s, double p);

}  // namespace tci
