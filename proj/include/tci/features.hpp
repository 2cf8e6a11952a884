// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <Eigen/Dense>
#include <string>
#include <vector>

#include "tci/centrality.hpp"
#include "tci/graph.hpp"

namespace tci {

// z-score metadata for one design column; scale == 0 marks a zero-variance
// column mapped to constant 0.
struct ColumnScaling {
  bool standardized = false;
  double mean = 0.0;
  double scale = 1.0;
};

struct ScalingInfo {
  std::vector<ColumnScaling> columns;

  bool operator==(const ScalingInfo&) const;
};

// Per-connection design table: fixed covariates for both model components
// (identical layout for the logistic and Gamma sides), observation data and
// the dense latent-index maps used by the estimation engine. Latent indexes
// cover entities/policies referenced by at least one in-sample connection.
struct FeatureTable {
  Eigen::MatrixXd x;  // n_rows x n_cols, column 0 is the intercept
  std::vector<std::string> col_names;
  ScalingInfo scaling;

  std::vector<ConnectionId> conn_ids;
  std::vector<PolicyId> policy_of_row;
  std::vector<EntityId> buyer_of_row;
  std::vector<EntityId> seller_of_row;
  Eigen::VectorXd start;    // policy start, years from origin
  Eigen::VectorXd window;   // tau - start (may be <= 0 for future business)
  Eigen::VectorXi z_obs;    // observed claim flag as recorded in the dataset
  Eigen::VectorXd t_obs;    // observed gap (inf if none)
  std::vector<char> in_sample;  // window > 0

  // dense latent universe (in-sample rows only)
  std::vector<EntityId> latent_entities;  // sorted
  std::vector<PolicyId> latent_policies;  // sorted
  Eigen::VectorXi ent_b;  // per row: dense buyer index or -1
  Eigen::VectorXi ent_s;  // per row: dense seller index or -1
  Eigen::VectorXi pol;    // per row: dense policy index or -1
  std::vector<char> entity_is_buyer;   // per dense entity
  std::vector<char> entity_is_seller;  // per dense entity

  double tau = 0.0;
  int origin_year = 1970;

  int rows() const { return static_cast<int>(x.rows()); }
  int cols() const { return static_cast<int>(x.cols()); }
  int n_latent_entities() const { return static_cast<int>(latent_entities.size()); }
  int n_latent_policies() const { return static_cast<int>(latent_policies.size()); }

  int latent_entity_index(EntityId id) const;
  int latent_policy_index(PolicyId id) const;
};

// Number of fixed design columns (intercept + buyer block + seller block +
// policy block + connection block).
int design_width();

std::vector<std::string> design_column_names();

// Assembles the per-connection design: entity covariates and the six degree
// centralities for each side, evaluated at the connection's policy start
// date, plus policy and connection covariates. Continuous columns are
// z-scored over the in-sample rows unless `fixed_scaling` is supplied (the
// prediction path reuses the training-time scaling).
FeatureTable featurize_connections(const NetworkGraph& g, WeightScheme scheme,
                                   const ScalingInfo* fixed_scaling = nullptr);

}  // namespace tci
