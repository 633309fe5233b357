#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace pcfg {

using ConstId = std::uint32_t;
using Tuple = std::vector<ConstId>;

/// A logical variable together with its finite domain. Logvars are named
/// after their domain, so `Comp(E)` ranges over the constants of `E`.
struct DomainSpec {
  std::string name;
  std::vector<std::string> constants;

  std::size_t size() const { return constants.size(); }
  std::optional<ConstId> find(std::string_view constant) const;
};

struct RangeSpec {
  std::string name;
  std::vector<std::string> values;

  std::size_t size() const { return values.size(); }
  std::optional<std::uint32_t> find(std::string_view value) const;
};

/// Parameterized random variable R(L1..Ln). `params` are domain indices.
struct PRV {
  std::string name;
  std::vector<std::size_t> params;
  std::size_t range = 0;

  bool is_propositional() const { return params.empty(); }
};

/// Instance of a PRV: one constant per parameter.
struct GroundRV {
  std::size_t prv = 0;
  Tuple args;

  friend bool operator==(const GroundRV&, const GroundRV&) = default;
  friend auto operator<=>(const GroundRV&, const GroundRV&) = default;
};

/// (logvars, allowed tuples). TOP stands for the full Cartesian product and
/// stays unmaterialized until a split needs explicit tuples. Explicit tuples
/// are kept sorted and unique in one flat row-major buffer.
class Constraint {
 public:
  Constraint() = default;

  static Constraint top(std::vector<std::size_t> logvars);
  /// Throws ModelError on arity mismatch or an empty tuple set.
  static Constraint of(std::vector<std::size_t> logvars, std::vector<Tuple> tuples);
  static Constraint of_flat(std::vector<std::size_t> logvars, std::vector<ConstId> flat);

  bool is_top() const { return top_; }
  const std::vector<std::size_t>& logvars() const { return logvars_; }
  std::size_t arity() const { return logvars_.size(); }

  /// Number of allowed tuples.
  std::size_t count(std::span<const DomainSpec> domains) const;
  /// Explicit tuples in sorted order (materializes TOP).
  std::vector<Tuple> tuples(std::span<const DomainSpec> domains) const;
  /// Flat row-major buffer of all tuples (materializes TOP).
  std::vector<ConstId> flat(std::span<const DomainSpec> domains) const;
  /// Raw explicit buffer; empty for TOP.
  const std::vector<ConstId>& explicit_rows() const { return rows_; }

  bool contains(std::span<const ConstId> tuple) const;

  friend bool operator==(const Constraint&, const Constraint&) = default;

 private:
  std::vector<std::size_t> logvars_;
  bool top_ = true;
  std::vector<ConstId> rows_;
};

/// Directed potential over a PRV sequence. `table` is dense row-major over
/// the ranges of `args` (first argument most significant).
struct Parfactor {
  std::string id;
  std::vector<std::size_t> args;
  std::optional<std::size_t> child;
  Constraint constraint;
  std::vector<double> table;
  /// Set once an intervention has written hard 0/1 entries.
  bool mutilated = false;
};

/// Parametric causal factor graph.
struct PCFG {
  std::vector<DomainSpec> domains;
  std::vector<RangeSpec> ranges;
  std::vector<PRV> prvs;
  std::vector<Parfactor> parfactors;

  std::optional<std::size_t> find_domain(std::string_view name) const;
  std::optional<std::size_t> find_range(std::string_view name) const;
  std::optional<std::size_t> find_prv(std::string_view name) const;
  std::optional<std::size_t> find_parfactor(std::string_view id) const;

  const RangeSpec& range_of(std::size_t prv) const { return ranges[prvs[prv].range]; }
  std::size_t range_size(std::size_t prv) const { return range_of(prv).size(); }

  // Builders. Throw ModelError on unknown or duplicate names.
  std::size_t add_domain(std::string name, std::vector<std::string> constants);
  std::size_t add_range(std::string name, std::vector<std::string> values);
  std::size_t add_prv(std::string name, const std::vector<std::string>& params,
                      std::string_view range);
  /// `child` names one of `args`; the constraint defaults to TOP over lv(args).
  std::size_t add_parfactor(std::string id, const std::vector<std::string>& args,
                            std::optional<std::string_view> child, std::vector<double> table,
                            std::optional<std::vector<std::vector<std::string>>> tuples =
                                std::nullopt);

  std::string rv_name(const GroundRV& rv) const;
  std::string prv_signature(std::size_t prv) const;
};

/// Logvars of a parfactor's argument list, ordered by domain declaration.
std::vector<std::size_t> logvars_of(const PCFG& model, std::span<const std::size_t> args);

/// Size of the dense table over the ranges of `args`.
std::size_t table_size(const PCFG& model, std::span<const std::size_t> args);

/// Positions of `prv`'s params inside `constraint.logvars()`.
std::vector<std::size_t> projection(const PCFG& model, std::size_t prv,
                                    const Constraint& constraint);

/// gr(A|C): the groundings of `prv` under `constraint`, sorted and unique.
/// The constraint may mention more logvars than the PRV (projection).
std::vector<GroundRV> groundings(const PCFG& model, std::size_t prv,
                                 const Constraint& constraint);

/// Number of groundings of a parfactor, i.e. |gr(g)|.
std::size_t grounding_count(const PCFG& model, const Parfactor& pf);

/// Pa(A): indices of parfactors whose child is `prv`.
std::vector<std::size_t> parents(const PCFG& model, std::size_t prv);
/// Parfactors with a ground instance whose child is `rv`.
std::vector<std::size_t> parents(const PCFG& model, const GroundRV& rv);
/// Ch(g). Throws ModelError if the parfactor has no child.
std::size_t child(const PCFG& model, std::size_t parfactor);

enum class Severity { Error, Warning };

struct Violation {
  Severity severity = Severity::Error;
  std::optional<std::size_t> parfactor;
  std::string message;
};

struct ValidateOptions {
  /// Report (as warnings) parfactors whose child-rows do not sum to one.
  bool check_normalization = false;
  double normalization_tolerance = 1e-9;
};

/// Structural validation. Violations are returned, never thrown.
std::vector<Violation> validate(const PCFG& model, const ValidateOptions& options = {});

bool has_errors(std::span<const Violation> violations);

/// True iff, for every parent assignment, the child entries sum to one.
bool is_row_normalized(const PCFG& model, const Parfactor& pf, double tolerance = 1e-9);

/// Mixed-radix helpers for dense tables (first position most significant).
std::vector<std::size_t> strides_for(std::span<const std::size_t> cards);
void decode_index(std::size_t index, std::span<const std::size_t> cards,
                  std::span<std::uint32_t> out);

}  // namespace pcfg
