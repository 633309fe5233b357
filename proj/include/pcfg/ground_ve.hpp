#pragma once

#include <cstddef>
#include <vector>

#include "pcfg/grounding.hpp"
#include "pcfg/query.hpp"

namespace pcfg {

enum class OrderHeuristic { MinDegree, MinFill };

struct VeOptions {
  OrderHeuristic heuristic = OrderHeuristic::MinDegree;
};

/// Greedy elimination order over the non-target, non-evidence RVs of the
/// factor graph. Ties go to the lexicographically smaller RV name.
std::vector<std::size_t> choose_order(const GroundFG& fg, const GroundQuery& query,
                                      OrderHeuristic heuristic = OrderHeuristic::MinDegree);

struct VeStats {
  std::size_t max_table_size = 0;
  std::size_t eliminated = 0;
};

/// Sum-product VE on the mutilated ground graph. An explicit `order` must
/// list exactly the RVs choose_order would eliminate.
std::vector<double> ve_query(const GroundFG& fg, const GroundQuery& query,
                             const VeOptions& options = {}, VeStats* stats = nullptr,
                             const std::vector<std::size_t>* order = nullptr);

Distribution ve_query(const PCFG& model, const Query& query, const VeOptions& options = {});

/// CPT-normalized copy: every factor's child rows are rescaled to sum to one.
/// Throws ModelError unless every RV is the child of exactly one factor.
GroundFG to_bayes_net(const GroundFG& fg);

/// True iff each RV is the child of exactly one factor.
bool bayes_net_compatible(const GroundFG& fg);

}  // namespace pcfg
