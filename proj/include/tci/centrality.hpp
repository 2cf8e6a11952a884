// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <Eigen/Dense>
#include <Eigen/Sparse>
#include <map>
#include <mutex>
#include <vector>

#include "tci/graph.hpp"

namespace tci {

enum class WeightScheme { Unit, InverseBuyerCount, InsuredAmount };

// Weighted adjacency over the entities active at one time point. Rows are
// sellers, columns buyers; parallel edges accumulate. Entity ordering is
// ascending EntityId.
struct AdjacencyMatrix {
  Eigen::SparseMatrix<double> d;
  std::vector<EntityId> index_to_entity;

  int index_of(EntityId id) const;  // -1 if inactive at this time
};

double connection_weight(const NetworkGraph& g, const ConnectionRecord& k,
                         WeightScheme scheme);

AdjacencyMatrix adjacency(const NetworkGraph& g, double t, WeightScheme scheme);

// First-order degree centrality: (outward, inward) per active entity, i.e.
// row and column sums of the adjacency matrix.
struct Fodc {
  std::vector<EntityId> entities;
  Eigen::VectorXd out;
  Eigen::VectorXd in;
};

Fodc fodc(const NetworkGraph& g, double t, WeightScheme scheme);

// Second-order degree centrality: four two-step walk counts per active
// entity, from D^2, D D^T and D^T D with their diagonals removed.
struct Sodc {
  std::vector<EntityId> entities;
  Eigen::VectorXd oo;
  Eigen::VectorXd ii;
  Eigen::VectorXd io;
  Eigen::VectorXd oi;
};

Sodc sodc(const NetworkGraph& g, double t, WeightScheme scheme);

// All six degree-centrality measures for one entity at one time.
struct CentralityFeatures {
  double dc_o1 = 0, dc_i1 = 0, dc_oo2 = 0, dc_ii2 = 0, dc_io2 = 0, dc_oi2 = 0;
};

// Memoizes per-time-point centralities; featurization hits the same policy
// start dates repeatedly. Read-mostly, guarded by a mutex.
class CentralityCache {
public:
  explicit CentralityCache(const NetworkGraph& g) : g_(&g) {}

  CentralityFeatures at(EntityId entity, double t, WeightScheme scheme) const;

private:
  struct Snapshot {
    std::vector<EntityId> entities;
    Eigen::MatrixXd values;  // n x 6: o1, i1, oo2, ii2, io2, oi2
  };
  const Snapshot& snapshot(double t, WeightScheme scheme) const;

  const NetworkGraph* g_;
  mutable std::mutex mu_;
  mutable std::map<std::pair<double, int>, Snapshot> cache_;
};

}  // namespace tci
