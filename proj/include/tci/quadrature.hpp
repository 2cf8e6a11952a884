// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <Eigen/Dense>
#include <functional>
#include <vector>

#include "tci/likelihood.hpp"

namespace tci {

// Gauss-Legendre nodes and weights on [a, b].
struct QuadRule {
  Eigen::VectorXd nodes;
  Eigen::VectorXd weights;
};

QuadRule gauss_legendre(int n, double a, double b);

// Adaptive Simpson integration, used as an independent check on closed-form
// distribution functions.
double adaptive_simpson(const std::function<double(double)>& f, double a, double b,
                        double tol = 1e-12, int max_depth = 40);

// Exact posterior summaries for a tiny instance by tensor-product quadrature
// over the latent space (at most 3 dimensions). Latent dimensions are
// detected from the rows' dense indexes; an entity contributing both its
// buyer and seller effect gets the correlated bivariate prior.
struct OraclePosterior {
  double log_marginal = 0.0;
  std::vector<std::string> dim_names;  // "B:<id>", "S:<id>", "P:<id>"
  Eigen::VectorXd mean;
  Eigen::VectorXd var;
  // Marginal CDF of one latent dimension evaluated at x.
  std::function<double(int, double)> marginal_cdf;
  // Posterior predictive per supplied row: complete claim probability and
  // unreported claim probability.
  Eigen::VectorXd p_pos;
  Eigen::VectorXd p_ur;
  double richardson_gap = 0.0;  // |81-node - 61-node| on the log marginal
};

// `data` supplies the conditioning rows (their observed outcomes and
// windows). Throws if the instance has more than 3 latent dimensions.
OraclePosterior oracle_posterior(const ConnectionData& data, const ParameterSet& ps,
                                 int nodes_per_dim = 81, double half_width = 8.0);

}  // namespace tci
