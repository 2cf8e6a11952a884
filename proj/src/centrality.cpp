// SPDX-License-Identifier: Apache-2.0
#include "tci/centrality.hpp"

#include <algorithm>

namespace tci {

int AdjacencyMatrix::index_of(EntityId id) const {
  auto it = std::lower_bound(index_to_entity.begin(), index_to_entity.end(), id);
  if (it == index_to_entity.end() || *it != id) return -1;
  return static_cast<int>(it - index_to_entity.begin());
}

double connection_weight(const NetworkGraph& g, const ConnectionRecord& k,
                         WeightScheme scheme) {
  switch (scheme) {
    case WeightScheme::Unit:
      return 1.0;
    case WeightScheme::InverseBuyerCount: {
      const PolicyRecord& pol =
          g.policies[static_cast<size_t>(g.policy_pos(k.policy))];
      return 1.0 / static_cast<double>(pol.buyers.size());
    }
    case WeightScheme::InsuredAmount:
      return k.insured;
  }
  return 1.0;
}

AdjacencyMatrix adjacency(const NetworkGraph& g, double t, WeightScheme scheme) {
  const ActiveSubgraph view = active_subgraph(g, t);
  AdjacencyMatrix a;
  a.index_to_entity = view.entities;
  const int n = static_cast<int>(view.entities.size());
  a.d.resize(n, n);
  std::vector<Eigen::Triplet<double>> trips;
  trips.reserve(view.connections.size());
  for (int c : view.connections) {
    const ConnectionRecord& k = g.connections[static_cast<size_t>(c)];
    const int si = a.index_of(k.seller);
    const int bi = a.index_of(k.buyer);
    trips.emplace_back(si, bi, connection_weight(g, k, scheme));
  }
  a.d.setFromTriplets(trips.begin(), trips.end());  // duplicates accumulate
  return a;
}

Fodc fodc(const NetworkGraph& g, double t, WeightScheme scheme) {
  const AdjacencyMatrix a = adjacency(g, t, scheme);
  Fodc f;
  f.entities = a.index_to_entity;
  const Eigen::VectorXd ones = Eigen::VectorXd::Ones(a.d.rows());
  f.out = a.d * ones;
  f.in = a.d.transpose() * ones;
  return f;
}

Sodc sodc(const NetworkGraph& g, double t, WeightScheme scheme) {
  const AdjacencyMatrix a = adjacency(g, t, scheme);
  Sodc s;
  s.entities = a.index_to_entity;
  const int n = static_cast<int>(a.d.rows());
  const Eigen::VectorXd ones = Eigen::VectorXd::Ones(n);

  const Eigen::SparseMatrix<double> dt = a.d.transpose();
  const Eigen::SparseMatrix<double> d2 = a.d * a.d;
  const Eigen::SparseMatrix<double> ddt = a.d * dt;
  const Eigen::SparseMatrix<double> dtd = dt * a.d;

  const Eigen::VectorXd diag2 = d2.diagonal();
  s.oo = d2 * ones - diag2;
  s.ii = d2.transpose() * ones - diag2;
  s.oi = ddt * ones - ddt.diagonal();
  s.io = dtd * ones - dtd.diagonal();
  return s;
}

const CentralityCache::Snapshot& CentralityCache::snapshot(double t,
                                                           WeightScheme scheme) const {
  const std::pair<double, int> key{t, static_cast<int>(scheme)};
  std::lock_guard<std::mutex> lock(mu_);
  auto it = cache_.find(key);
  if (it != cache_.end()) return it->second;

  Snapshot snap;
  const Fodc f = fodc(*g_, t, scheme);
  const Sodc s = sodc(*g_, t, scheme);
  snap.entities = f.entities;
  const int n = static_cast<int>(f.entities.size());
  snap.values.resize(n, 6);
  for (int i = 0; i < n; ++i) {
    snap.values(i, 0) = f.out[i];
    snap.values(i, 1) = f.in[i];
    snap.values(i, 2) = s.oo[i];
    snap.values(i, 3) = s.ii[i];
    snap.values(i, 4) = s.io[i];
    snap.values(i, 5) = s.oi[i];
  }
  return cache_.emplace(key, std::move(snap)).first->second;
}

CentralityFeatures CentralityCache::at(EntityId entity, double t,
                                       WeightScheme scheme) const {
  const Snapshot& snap = snapshot(t, scheme);
  auto it = std::lower_bound(snap.entities.begin(), snap.entities.end(), entity);
  CentralityFeatures c;
  if (it == snap.entities.end() || *it != entity) return c;  // inactive: all zero
  const int i = static_cast<int>(it - snap.entities.begin());
  c.dc_o1 = snap.values(i, 0);
  c.dc_i1 = snap.values(i, 1);
  c.dc_oo2 = snap.values(i, 2);
  c.dc_ii2 = snap.values(i, 3);
  c.dc_io2 = snap.values(i, 4);
  c.dc_oi2 = snap.values(i, 5);
  return c;
}

}  // namespace tci
