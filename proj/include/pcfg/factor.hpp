#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

namespace pcfg {

/// Dense factor over integer-labelled variables, stored as log-potentials
/// in row-major order (first variable most significant). Zero potentials
/// are -inf.
struct LogFactor {
  std::vector<int> vars;
  std::vector<std::size_t> cards;
  std::vector<double> values;

  static LogFactor scalar(double log_value = 0.0);
  static LogFactor from_linear(std::vector<int> vars, std::vector<std::size_t> cards,
                               std::span<const double> table);

  std::size_t size() const { return values.size(); }
  /// Position of `var` in `vars`, or -1.
  int index_of(int var) const;
};

/// Pointwise product over the union of scopes: `scale_a * log a + scale_b * log b`.
/// The result scope lists a's variables first, then b's new ones.
LogFactor multiply(const LogFactor& a, const LogFactor& b, double scale_a = 1.0,
                   double scale_b = 1.0);

/// Sums `var` out of `f` (log-sum-exp along one axis).
LogFactor sum_out(const LogFactor& f, int var);

/// Slices `f` at `var = value` and drops the variable.
LogFactor restrict(const LogFactor& f, int var, std::uint32_t value);

/// Merges two axes that denote the same variable (keeps the diagonal).
LogFactor merge_axes(const LogFactor& f, std::size_t keep, std::size_t drop);

/// Reorders axes to `order` (a permutation of f.vars).
LogFactor reorder(const LogFactor& f, std::span<const int> order);

/// Normalized linear-scale probabilities. Throws InconsistentEvidence when
/// every entry is zero.
std::vector<double> normalize_exp(std::span<const double> log_values);

double log_sum_exp(std::span<const double> values);

}  // namespace pcfg
