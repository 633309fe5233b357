#pragma once

#include <cstddef>
#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "pcfg/model.hpp"
#include "pcfg/query.hpp"

namespace pcfg {

struct GroundFactor {
  /// Id of the parfactor this instance came from.
  std::string source;
  std::vector<std::size_t> args;
  std::optional<std::size_t> child;
  /// Linear-scale potentials, row-major over the argument ranges.
  std::vector<double> table;
  bool mutilated = false;
};

/// Directed factor graph obtained by grounding a PCFG. RVs are ordered by
/// PRV declaration, then lexicographically by argument tuple.
struct GroundFG {
  std::vector<GroundRV> rvs;
  std::vector<std::string> names;
  std::vector<std::size_t> cards;
  std::vector<std::vector<std::string>> values;
  std::vector<GroundFactor> factors;
  std::map<GroundRV, std::size_t> index;

  std::size_t rv_count() const { return rvs.size(); }
  std::optional<std::size_t> find(const GroundRV& rv) const;
  std::optional<std::size_t> find(std::string_view name) const;

  /// Factors whose child is `rv`.
  std::vector<std::size_t> parent_factors(std::size_t rv) const;
};

struct GroundOptions {
  /// Refuse to ground when the model would have more RVs plus factors.
  std::size_t max_ground_size = 5'000'000;
};

/// gr(G). Throws SizeLimitExceeded above the configured ground size.
GroundFG ground(const PCFG& model, const GroundOptions& options = {});

/// Query over ground RV indices.
struct GroundQuery {
  std::vector<std::size_t> targets;
  std::vector<std::pair<std::size_t, std::uint32_t>> evidence;
  std::vector<std::pair<std::size_t, std::uint32_t>> dos;
};

GroundQuery resolve(const GroundFG& fg, const Query& query);

/// Full joint over all ground RVs, enumerated lexicographically (first RV
/// most significant).
struct JointTable {
  std::vector<std::size_t> cards;
  std::vector<double> probs;
};

struct OracleOptions {
  std::size_t max_states = std::size_t{1} << 20;
};

JointTable joint(const GroundFG& fg, const OracleOptions& options = {});

/// Brute-force P(targets | evidence, do(dos)) by enumerating the mutilated joint.
std::vector<double> oracle_query(const GroundFG& fg, const GroundQuery& query,
                                 const OracleOptions& options = {});

/// Convenience wrapper: ground, resolve, enumerate.
Distribution oracle_query(const PCFG& model, const Query& query,
                          const OracleOptions& options = {});

/// Factor-multiset signature of a grounding, used to check that splits
/// preserve semantics. Each entry is (argument RVs, child position, table).
struct GroundFactorKey {
  std::vector<GroundRV> args;
  std::optional<std::size_t> child;
  std::vector<double> table;

  friend auto operator<=>(const GroundFactorKey&, const GroundFactorKey&) = default;
};

std::vector<GroundFactorKey> grounding_multiset(const PCFG& model);

/// Renders the ground graph as a parameterless model (RV names become
/// `Train.bob.t1`), so the result can be parsed back.
PCFG as_propositional_model(const PCFG& model, const GroundFG& fg);

}  // namespace pcfg
