#pragma once

#include <cstddef>
#include <cstdint>
#include <limits>
#include <map>
#include <span>
#include <string>
#include <vector>

#include "pcfg/model.hpp"
#include "pcfg/query.hpp"

namespace pcfg {

/// Term value marking a parameter still bound by the parfactor's box.
inline constexpr ConstId kFreeTerm = std::numeric_limits<ConstId>::max();

/// PRV occurrence inside a lifted parfactor. Each parameter is either free
/// (ranges over the box dimension of that parameter's logvar) or a constant.
struct Atom {
  std::size_t prv = 0;
  std::vector<ConstId> terms;

  friend bool operator==(const Atom&, const Atom&) = default;
  friend auto operator<=>(const Atom&, const Atom&) = default;
};

/// Per-logvar allowed constants. A parfactor's constraint is the Cartesian
/// product of its box dimensions, which keeps counts uniform.
using Box = std::map<std::size_t, std::vector<ConstId>>;

/// Parfactor with a box constraint and a log-potential table, the unit the
/// lifted engine works on. Canonical form: every box dimension has at least
/// two constants and is used by some free term; atoms are distinct.
struct LiftedParfactor {
  Box box;
  std::vector<Atom> atoms;
  std::vector<double> log_table;
  std::string origin;

  std::size_t grounding_count() const;
};

/// A box of groundings of one PRV, one constant set per parameter.
struct GroupBox {
  std::size_t prv = 0;
  std::vector<std::vector<ConstId>> sets;

  friend bool operator==(const GroupBox&, const GroupBox&) = default;
  friend auto operator<=>(const GroupBox&, const GroupBox&) = default;
};

/// Groundings of `atom` within `pf`.
GroupBox group_of(const PCFG& model, const LiftedParfactor& pf, const Atom& atom);

/// Disjoint boxes covering an explicit tuple set over `logvars`.
std::vector<Box> decompose_rows(std::span<const std::size_t> logvars,
                                std::span<const ConstId> flat_rows);

/// Disjoint group boxes covering a group of ground RVs.
std::vector<GroupBox> decompose_group(const PCFG& model, const RVGroup& group);

/// Working set of lifted parfactors.
struct LiftedState {
  std::vector<LiftedParfactor> parfactors;
};

/// Converts every model parfactor into canonical box-constrained parfactors.
LiftedState make_state(const PCFG& model);

/// Substitutes singleton dimensions, merges duplicate atoms and contracts
/// box dimensions no atom uses (raising the table to the count).
void canonicalize(const PCFG& model, LiftedParfactor& pf);

struct ShatterStats {
  std::size_t splits = 0;
};

/// Splits parfactors until (a) any two atoms of the same PRV have equal or
/// disjoint groundings and (b) every atom is inside or disjoint from each
/// term. Groundings of the state are preserved. Returns true on change.
bool shatter(const PCFG& model, LiftedState& state, std::span<const GroupBox> terms,
             ShatterStats* stats = nullptr);

/// Product of two parfactors; shared logvars must have equal box sets and
/// overlapping atoms of the same PRV must be identical (PreconditionError
/// otherwise). A parfactor lacking some result logvars contributes its table
/// with exponent 1/r, r the number of groundings of those logvars.
LiftedParfactor lifted_multiply(const PCFG& model, const LiftedParfactor& a,
                                const LiftedParfactor& b);

/// Sums the atom at `atom_index` out. Every box logvar must be a free term
/// of that atom; logvars left unused afterwards are contracted, raising the
/// summed table to the number of their groundings. The caller guarantees
/// the atom occurs in no other parfactor.
LiftedParfactor lifted_sum_out(const PCFG& model, const LiftedParfactor& pf,
                               std::size_t atom_index);

/// One parfactor per allowed constant of `logvar`.
std::vector<LiftedParfactor> ground_logvar(const PCFG& model, const LiftedParfactor& pf,
                                           std::size_t logvar);

/// Multiset of ground factors (argument RVs, linear table) represented by a
/// state. Only used for audits and tests.
struct LiftedGroundFactor {
  std::vector<GroundRV> args;
  std::vector<double> log_table;

  friend auto operator<=>(const LiftedGroundFactor&, const LiftedGroundFactor&) = default;
};
std::vector<LiftedGroundFactor> ground_state(const PCFG& model, const LiftedState& state);

struct LiftedStats {
  std::size_t lifted_eliminations = 0;
  std::size_t propositional_eliminations = 0;
  std::size_t logvar_groundings = 0;
  std::size_t shatter_splits = 0;
  std::size_t audited_shatters = 0;
  std::size_t max_table_size = 0;
  std::size_t max_parfactors = 0;
};

struct LveOptions {
  /// Verify after every shatter that the ground factor multiset is
  /// unchanged (expensive, test use only). Throws Error on violation.
  bool audit_shatter = false;
};

struct LveResult {
  Distribution distribution;
  LiftedStats stats;
};

/// P(targets | evidence) by lifted variable elimination. The query must
/// not contain interventions (see lci_query).
LveResult lve_run(const PCFG& model, const Query& query, const LveOptions& options = {});
Distribution lve_query(const PCFG& model, const Query& query, const LveOptions& options = {});

}  // namespace pcfg
