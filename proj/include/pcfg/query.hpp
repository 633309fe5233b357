#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "pcfg/model.hpp"

namespace pcfg {

/// A set of groundings of one PRV: a single ground RV, a whole PRV, or a
/// constrained subgroup. `tuples` are over the PRV's params, sorted and unique.
struct RVGroup {
  std::size_t prv = 0;
  std::vector<Tuple> tuples;

  std::size_t size() const { return tuples.size(); }
  bool contains(const Tuple& args) const;
  bool overlaps(const RVGroup& other) const;
};

/// Single ground RV.
RVGroup rv_group(const PCFG& model, std::size_t prv, Tuple args);
/// All groundings of a PRV.
RVGroup whole_prv(const PCFG& model, std::size_t prv);
/// Pattern with a constant or a free logvar (nullopt) per parameter,
/// e.g. Train(E, t1).
RVGroup pattern_group(const PCFG& model, std::size_t prv,
                      const std::vector<std::optional<ConstId>>& pattern);

struct EvidenceItem {
  RVGroup group;
  std::uint32_t value = 0;
};

/// do(target = value). Every grounding of `target` is set to `value`.
struct DoAssignment {
  RVGroup target;
  std::uint32_t value = 0;
};

/// P(targets | evidence, do(dos)).
struct Query {
  std::vector<RVGroup> targets;
  std::vector<EvidenceItem> evidence;
  std::vector<DoAssignment> dos;
};

/// Target ground RVs in output order (targets expanded in tuple order).
std::vector<GroundRV> target_rvs(const Query& query);

/// Throws QueryError unless: targets non-empty, values in range, do-targets
/// pairwise disjoint, no RV both intervened on and observed or queried,
/// no target observed.
void check_query(const PCFG& model, const Query& query);

/// Distribution over ground target variables in row-major order of their
/// ranges (first variable most significant).
struct Distribution {
  std::vector<std::string> variables;
  std::vector<std::vector<std::string>> values;
  std::vector<double> probs;

  std::size_t size() const { return probs.size(); }
};

/// Largest absolute entry-wise difference; +inf if the shapes differ.
double max_abs_diff(const Distribution& a, const Distribution& b);

Distribution make_distribution(const PCFG& model, const std::vector<GroundRV>& targets,
                               std::vector<double> probs);

}  // namespace pcfg
