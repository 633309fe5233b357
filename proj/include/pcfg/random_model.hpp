#pragma once

#include <cstddef>
#include <cstdint>
#include <random>

#include "pcfg/model.hpp"
#include "pcfg/query.hpp"

namespace pcfg {

struct RandomModelOptions {
  std::size_t max_ground_rvs = 12;
  std::size_t max_logvars = 3;
  std::size_t max_range = 3;
  std::size_t max_prvs = 5;
  /// Every PRV is the child of exactly one TOP-constrained parfactor whose
  /// logvars are the child's, and all tables are row-normalized. Such models
  /// translate into a Bayesian network factor by factor.
  bool bn_compatible = false;
  double explicit_constraint_prob = 0.25;
  /// Share of parfactors whose rows are normalized (then scaled by a random
  /// constant) rather than arbitrary.
  double normalized_prob = 0.5;
  double extra_parent_factor_prob = 0.2;
};

/// Random valid acyclic PCFG.
PCFG random_model(std::mt19937_64& rng, const RandomModelOptions& options = {});

struct RandomQueryOptions {
  std::size_t max_targets = 2;
  std::size_t max_evidence = 2;
  std::size_t max_dos = 3;
  /// Probability that a target or do-target is a lifted group.
  double group_prob = 0.3;
};

/// Random well-formed query. Do-targets are only drawn among RVs that are
/// the child of some parfactor.
Query random_query(const PCFG& model, std::mt19937_64& rng, const RandomQueryOptions& options = {});

}  // namespace pcfg
