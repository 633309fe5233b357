#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "pcfg/grounding.hpp"
#include "pcfg/lifted.hpp"
#include "pcfg/model.hpp"
#include "pcfg/query.hpp"

namespace pcfg {

/// Ground mutilation: every factor whose child is a do-target becomes the
/// indicator of the do-value. Throws QueryError for a do-target that is the
/// child of no factor.
GroundFG ground_do(const GroundFG& fg, std::span<const std::pair<std::size_t, std::uint32_t>> dos);

/// One constraint partition: `parfactor` keeps the tuples outside the group,
/// `split_off` (a new parfactor right after it) takes the tuples inside.
struct SplitEvent {
  std::string parfactor;
  std::string split_off;
  std::size_t group = 0;
  Constraint outside;
  Constraint inside;
};

struct SplitResult {
  PCFG model;
  std::vector<SplitEvent> events;
};

/// Splits every parfactor whose groundings of a group's PRV lie partly
/// inside and partly outside the group. One partition per parfactor and group.
SplitResult split_model(const PCFG& model, std::span<const RVGroup> groups);

/// Dos sharing PRV and value merged into one group each, in first-seen order.
std::vector<DoAssignment> merge_dos(std::span<const DoAssignment> dos);

/// Rewrites the tables of parfactors whose child lies in a do-group. Each
/// such parfactor's child groundings must lie entirely inside the group
/// (PreconditionError otherwise, i.e. split first); every RV in a group
/// needs a parent parfactor (QueryError).
PCFG mutilate(const PCFG& model, std::span<const DoAssignment> dos);

struct LciOptions {
  /// Check that the split keeps the ground factor multiset and audit every
  /// shatter inside the lifted engine.
  bool audit = false;
};

struct LciResult {
  Distribution distribution;
  std::vector<SplitEvent> splits;
  LiftedStats stats;
  /// Split events covered by the grounding audit.
  std::size_t audited_splits = 0;
};

/// Lifted causal inference: split on do-groups, mutilate, then lifted VE.
LciResult lci_run(const PCFG& model, const Query& query, const LciOptions& options = {});
Distribution lci_query(const PCFG& model, const Query& query, const LciOptions& options = {});

}  // namespace pcfg
