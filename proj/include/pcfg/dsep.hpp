#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "pcfg/grounding.hpp"
#include "pcfg/model.hpp"

namespace pcfg {

/// Three pairwise disjoint sets of ground RVs.
struct DsepQuery {
  std::vector<GroundRV> x;
  std::vector<GroundRV> y;
  std::vector<GroundRV> z;
};

/// Ground-level d-separation on the directed factor graph. A path is
/// blocked if it visits an RV in z, or if it passes from one parent of a
/// factor to another parent while neither the factor's child nor any
/// descendant of it is in z. Sets are given as RV indices of `fg`.
bool d_separated(const GroundFG& fg, std::span<const std::size_t> x,
                 std::span<const std::size_t> y, std::span<const std::size_t> z);

/// Grounds the model first. Throws QueryError if the sets overlap or name
/// RVs outside the grounding.
bool d_separated(const PCFG& model, const DsepQuery& q);

/// Numeric check of P(X,Y|Z) = P(X|Z) P(Y|Z) over all value combinations.
struct CiCheck {
  bool holds = true;
  double max_deviation = 0.0;
  /// Assignments of Z with probability zero (not checked).
  std::size_t zero_mass = 0;
};

CiCheck check_ci(const GroundFG& fg, std::span<const std::size_t> x,
                 std::span<const std::size_t> y, std::span<const std::size_t> z,
                 double tolerance = 1e-9);
CiCheck check_ci(const PCFG& model, const DsepQuery& q, double tolerance = 1e-9);

struct DsepCiReport {
  std::size_t triples = 0;
  std::size_t separated = 0;
  std::size_t violations = 0;
  double max_deviation = 0.0;
  std::vector<std::string> messages;
};

/// For every d-separated triple, verifies the factorization numerically.
DsepCiReport dsep_implies_ci_check(const PCFG& model, std::span<const DsepQuery> triples,
                                   double tolerance = 1e-9);

/// Random disjoint non-empty x and y sets (and a possibly empty z) drawn
/// from the grounding.
std::vector<DsepQuery> random_triples(const PCFG& model, std::size_t count, std::uint64_t seed);

std::string describe(const PCFG& model, const DsepQuery& q);

}  // namespace pcfg
