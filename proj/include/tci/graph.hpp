// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "tci/common.hpp"

namespace tci {

enum class BusinessType { SoleProprietorship, UnspecifiedCorporation, Llc, Acc, Listed };
enum class Industry { Manufacturing, Wholesale, ProfessionalServices, Others };
enum class SalesBucket { Small, Medium, Large, NotAvailable };
enum class PolicyType { SingleBuyer, MultipleBuyer };

// Per-year entity covariates; piecewise constant over policy years.
struct EntityFeatures {
  BusinessType business_type = BusinessType::Llc;
  Industry industry = Industry::Others;
  double business_age = 0.0;
  SalesBucket sales = SalesBucket::NotAvailable;

  bool operator==(const EntityFeatures&) const = default;
};

// ---- input rows (times already in fractional years from the origin) ----

struct EntityFeatureRow {
  EntityId id = 0;
  int year = 0;  // calendar year the features apply to
  EntityFeatures features;
};

struct PolicyInputRow {
  PolicyId id = 0;
  EntityId seller = 0;
  double start = 0.0;  // years from origin
  double end = 0.0;
  std::optional<Date> start_date;  // kept for lossless serialization
  std::optional<Date> end_date;
  PolicyType type = PolicyType::SingleBuyer;
  double total_insured = 0.0;
  double avg_turnover = 0.0;
};

struct ConnectionInputRow {
  ConnectionId id = 0;
  PolicyId policy = 0;
  EntityId buyer = 0;
  double insured = 0.0;
  double turnover = 0.0;
  int z_obs = 0;           // observed claim indicator
  double t_obs = kInf;     // observed reporting gap in years (inf if none)
  std::optional<Date> report_date;
};

// ---- stored records ----

struct EntityRecord {
  EntityId id = 0;
  std::vector<std::pair<int, EntityFeatures>> by_year;  // sorted by year

  const EntityFeatures* features_for_year(int year) const;
};

struct PolicyRecord {
  PolicyId id = 0;
  EntityId seller = 0;
  double start = 0.0;
  double end = 0.0;
  std::optional<Date> start_date;
  std::optional<Date> end_date;
  PolicyType type = PolicyType::SingleBuyer;
  double total_insured = 0.0;
  double avg_turnover = 0.0;
  std::vector<EntityId> buyers;      // distinct, sorted
  std::vector<int> connections;      // indices into NetworkGraph::connections
};

struct ConnectionRecord {
  ConnectionId id = 0;
  PolicyId policy = 0;
  EntityId seller = 0;  // always equals the policy's seller
  EntityId buyer = 0;
  double insured = 0.0;
  double turnover = 0.0;
  int z_obs = 0;
  double t_obs = kInf;
  std::optional<Date> report_date;
};

// Directed trade-credit network: entities (nodes), policies (stars) and
// connections (edges), plus the inverted indexes used by the samplers.
// Immutable after build_graph; concurrent reads are safe.
struct NetworkGraph {
  std::vector<EntityRecord> entities;       // sorted by id
  std::vector<PolicyRecord> policies;       // sorted by id
  std::vector<ConnectionRecord> connections;  // sorted by id
  double tau = 0.0;  // evaluation date, years from origin
  int origin_year = 1970;
  std::optional<Date> tau_date;

  // inverted indexes (positions into `connections`)
  std::vector<std::vector<int>> conns_as_buyer;   // per entity position
  std::vector<std::vector<int>> conns_as_seller;  // per entity position
  // per-policy connection lists live in PolicyRecord::connections

  int entity_pos(EntityId id) const;      // -1 if absent
  int policy_pos(PolicyId id) const;
  int connection_pos(ConnectionId id) const;

  // Entity covariates at time t (years from origin); null if that calendar
  // year is missing from the entity's feature table.
  const EntityFeatures* entity_features_at(int entity_position, double t) const;
};

// Assembles and validates the graph. Throws ValidationError naming the
// offending row on any contract violation (dangling reference, duplicate id,
// self-loop, observed claim outside the truncation window, ...).
NetworkGraph build_graph(const std::vector<EntityFeatureRow>& entity_rows,
                         const std::vector<PolicyInputRow>& policy_rows,
                         const std::vector<ConnectionInputRow>& connection_rows,
                         double tau, int origin_year = 1970,
                         std::optional<Date> tau_date = std::nullopt);

// Active subgraph view at time t: policies with start < t <= end, their
// connections, and every entity appearing as seller or buyer of one of them.
struct ActiveSubgraph {
  const NetworkGraph* graph = nullptr;
  double t = 0.0;
  std::vector<int> policies;     // positions, ascending id
  std::vector<int> connections;  // positions, ascending id
  std::vector<EntityId> entities;  // ascending id
};

ActiveSubgraph active_subgraph(const NetworkGraph& g, double t);

// Right-truncation rule mapping actual (Z, T) to observed (Z~, T~) at
// evaluation date tau for a policy starting at d0.
struct Observed {
  int z = 0;
  double t = kInf;
};

Observed observe(int z_actual, double t_actual, double policy_start, double tau);

// Copy of the graph keeping only policies starting before `tau_new` (and
// their connections), with observations re-truncated at tau_new. Used to
// carve an in-sample dataset out of one that extends past the evaluation
// date.
NetworkGraph restrict_to_insample(const NetworkGraph& g, double tau_new,
                                  std::optional<Date> tau_date = std::nullopt);

}  // namespace tci
