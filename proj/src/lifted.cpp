#include "pcfg/lifted.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <set>

#include "pcfg/error.hpp"
#include "pcfg/factor.hpp"

namespace pcfg {

namespace {

using Set = std::vector<ConstId>;

Set intersect(const Set& a, const Set& b) {
  Set out;
  std::set_intersection(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out));
  return out;
}

Set difference(const Set& a, const Set& b) {
  Set out;
  std::set_difference(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out));
  return out;
}

bool overlaps(const Set& a, const Set& b) {
  auto i = a.begin();
  auto j = b.begin();
  while (i != a.end() && j != b.end()) {
    if (*i < *j) {
      ++i;
    } else if (*j < *i) {
      ++j;
    } else {
      return true;
    }
  }
  return false;
}

bool subset(const Set& a, const Set& b) { return std::includes(b.begin(), b.end(), a.begin(), a.end()); }

bool groups_overlap(const GroupBox& a, const GroupBox& b) {
  if (a.prv != b.prv) return false;
  for (std::size_t k = 0; k < a.sets.size(); ++k) {
    if (!overlaps(a.sets[k], b.sets[k])) return false;
  }
  return true;
}

bool group_subset(const GroupBox& a, const GroupBox& b) {
  if (a.prv != b.prv) return false;
  for (std::size_t k = 0; k < a.sets.size(); ++k) {
    if (!subset(a.sets[k], b.sets[k])) return false;
  }
  return true;
}

std::vector<std::size_t> atom_cards(const PCFG& model, const std::vector<Atom>& atoms) {
  std::vector<std::size_t> cards;
  cards.reserve(atoms.size());
  for (const auto& a : atoms) cards.push_back(model.range_size(a.prv));
  return cards;
}

LogFactor as_factor(const PCFG& model, const LiftedParfactor& pf) {
  LogFactor f;
  f.vars.resize(pf.atoms.size());
  std::iota(f.vars.begin(), f.vars.end(), 0);
  f.cards = atom_cards(model, pf.atoms);
  f.values = pf.log_table;
  return f;
}

bool uses_logvar(const PCFG& model, const Atom& atom, std::size_t lv) {
  const auto& params = model.prvs[atom.prv].params;
  for (std::size_t k = 0; k < params.size(); ++k) {
    if (params[k] == lv && atom.terms[k] == kFreeTerm) return true;
  }
  return false;
}

// Decomposition of a flat row set into disjoint boxes, one column at a time.
std::vector<Box> decompose_impl(std::span<const std::size_t> logvars, std::vector<ConstId> rows,
                                bool try_all_columns);

std::vector<Box> decompose_on(std::span<const std::size_t> logvars, const std::vector<ConstId>& rows,
                              std::size_t col, bool try_all_columns) {
  const std::size_t n = logvars.size();
  // rest-row -> values of `col`
  std::map<std::vector<ConstId>, Set> by_rest;
  std::vector<ConstId> rest(n - 1);
  for (std::size_t i = 0; i < rows.size(); i += n) {
    for (std::size_t k = 0, j = 0; k < n; ++k) {
      if (k != col) rest[j++] = rows[i + k];
    }
    by_rest[rest].push_back(rows[i + col]);
  }
  std::map<Set, std::vector<ConstId>> by_values;
  for (auto& [r, vals] : by_rest) {
    std::sort(vals.begin(), vals.end());
    vals.erase(std::unique(vals.begin(), vals.end()), vals.end());
    auto& flat = by_values[vals];
    flat.insert(flat.end(), r.begin(), r.end());
  }
  std::vector<std::size_t> rest_lvs;
  for (std::size_t k = 0; k < n; ++k) {
    if (k != col) rest_lvs.push_back(logvars[k]);
  }
  std::vector<Box> out;
  for (auto& [vals, flat] : by_values) {
    for (auto& b : decompose_impl(rest_lvs, std::move(flat), try_all_columns)) {
      b[logvars[col]] = vals;
      out.push_back(std::move(b));
    }
  }
  return out;
}

std::vector<Box> decompose_impl(std::span<const std::size_t> logvars, std::vector<ConstId> rows,
                                bool try_all_columns) {
  const std::size_t n = logvars.size();
  if (n == 0) return {Box{}};
  // Fast path: the rows already form a full product.
  std::vector<Set> cols(n);
  for (std::size_t i = 0; i < rows.size(); i += n) {
    for (std::size_t k = 0; k < n; ++k) cols[k].push_back(rows[i + k]);
  }
  double product = 1.0;
  for (auto& c : cols) {
    std::sort(c.begin(), c.end());
    c.erase(std::unique(c.begin(), c.end()), c.end());
    product *= static_cast<double>(c.size());
  }
  if (product == static_cast<double>(rows.size() / n)) {
    Box b;
    for (std::size_t k = 0; k < n; ++k) b[logvars[k]] = std::move(cols[k]);
    return {b};
  }
  if (!try_all_columns || n > 4) return decompose_on(logvars, rows, 0, false);
  std::vector<Box> best;
  for (std::size_t col = 0; col < n; ++col) {
    auto boxes = decompose_on(logvars, rows, col, true);
    if (best.empty() || boxes.size() < best.size()) best = std::move(boxes);
  }
  return best;
}

std::vector<LiftedParfactor> split_by(const PCFG& model, const LiftedParfactor& pf,
                                      std::size_t atom_index, const GroupBox& target) {
  const Atom& atom = pf.atoms[atom_index];
  const auto& params = model.prvs[atom.prv].params;
  std::vector<LiftedParfactor> pieces;
  LiftedParfactor remaining = pf;
  for (std::size_t k = 0; k < params.size(); ++k) {
    if (atom.terms[k] != kFreeTerm) continue;
    const std::size_t lv = params[k];
    const Set& cur = remaining.box.at(lv);
    Set inter = intersect(cur, target.sets[k]);
    Set rest = difference(cur, target.sets[k]);
    if (inter.empty()) return {pf};
    if (!rest.empty()) {
      LiftedParfactor piece = remaining;
      piece.box[lv] = std::move(rest);
      canonicalize(model, piece);
      pieces.push_back(std::move(piece));
    }
    remaining.box[lv] = std::move(inter);
  }
  canonicalize(model, remaining);
  pieces.push_back(std::move(remaining));
  return pieces;
}

struct Occurrence {
  std::size_t pf;
  std::size_t atom;
  GroupBox group;
};

std::vector<Occurrence> occurrences(const PCFG& model, const LiftedState& state) {
  std::vector<Occurrence> occ;
  for (std::size_t p = 0; p < state.parfactors.size(); ++p) {
    const auto& pf = state.parfactors[p];
    for (std::size_t a = 0; a < pf.atoms.size(); ++a) {
      occ.push_back({p, a, group_of(model, pf, pf.atoms[a])});
    }
  }
  return occ;
}

void replace_parfactor(LiftedState& state, std::size_t index, std::vector<LiftedParfactor> pieces) {
  state.parfactors[index] = std::move(pieces.front());
  for (std::size_t i = 1; i < pieces.size(); ++i) state.parfactors.push_back(std::move(pieces[i]));
}

}  // namespace

// ---------------------------------------------------------------------------

std::size_t LiftedParfactor::grounding_count() const {
  std::size_t n = 1;
  for (const auto& [lv, s] : box) n *= s.size();
  return n;
}

GroupBox group_of(const PCFG& model, const LiftedParfactor& pf, const Atom& atom) {
  GroupBox g{atom.prv, {}};
  const auto& params = model.prvs[atom.prv].params;
  g.sets.reserve(params.size());
  for (std::size_t k = 0; k < params.size(); ++k) {
    if (atom.terms[k] == kFreeTerm) {
      g.sets.push_back(pf.box.at(params[k]));
    } else {
      g.sets.push_back({atom.terms[k]});
    }
  }
  return g;
}

std::vector<Box> decompose_rows(std::span<const std::size_t> logvars,
                                std::span<const ConstId> flat_rows) {
  if (!logvars.empty() && flat_rows.empty()) return {};
  return decompose_impl(logvars, std::vector<ConstId>(flat_rows.begin(), flat_rows.end()), true);
}

std::vector<GroupBox> decompose_group(const PCFG& model, const RVGroup& group) {
  const auto& params = model.prvs.at(group.prv).params;
  std::vector<ConstId> flat;
  flat.reserve(group.tuples.size() * params.size());
  for (const auto& t : group.tuples) flat.insert(flat.end(), t.begin(), t.end());
  std::vector<GroupBox> out;
  for (const auto& box : decompose_rows(params, flat)) {
    GroupBox g{group.prv, {}};
    for (auto lv : params) g.sets.push_back(box.at(lv));
    out.push_back(std::move(g));
  }
  return out;
}

void canonicalize(const PCFG& model, LiftedParfactor& pf) {
  for (auto it = pf.box.begin(); it != pf.box.end();) {
    if (it->second.empty()) throw Error("lifted parfactor with an empty box dimension");
    if (it->second.size() == 1) {
      const ConstId c = it->second.front();
      for (auto& atom : pf.atoms) {
        const auto& params = model.prvs[atom.prv].params;
        for (std::size_t k = 0; k < params.size(); ++k) {
          if (params[k] == it->first && atom.terms[k] == kFreeTerm) atom.terms[k] = c;
        }
      }
      it = pf.box.erase(it);
    } else {
      ++it;
    }
  }
  for (std::size_t i = 0; i < pf.atoms.size(); ++i) {
    for (std::size_t j = pf.atoms.size(); j-- > i + 1;) {
      if (pf.atoms[i] == pf.atoms[j]) {
        LogFactor merged = merge_axes(as_factor(model, pf), i, j);
        pf.log_table = std::move(merged.values);
        pf.atoms.erase(pf.atoms.begin() + static_cast<std::ptrdiff_t>(j));
      }
    }
  }
  for (auto it = pf.box.begin(); it != pf.box.end();) {
    bool used = std::any_of(pf.atoms.begin(), pf.atoms.end(),
                            [&](const Atom& a) { return uses_logvar(model, a, it->first); });
    if (!used) {
      const double r = static_cast<double>(it->second.size());
      for (double& v : pf.log_table) {
        if (std::isfinite(v)) v *= r;
      }
      it = pf.box.erase(it);
    } else {
      ++it;
    }
  }
}

LiftedState make_state(const PCFG& model) {
  LiftedState state;
  for (const auto& mpf : model.parfactors) {
    const auto& lvs = mpf.constraint.logvars();
    std::vector<Box> boxes;
    if (mpf.constraint.is_top()) {
      Box b;
      for (auto lv : lvs) {
        Set all(model.domains[lv].size());
        std::iota(all.begin(), all.end(), 0);
        b[lv] = std::move(all);
      }
      boxes.push_back(std::move(b));
    } else {
      boxes = decompose_rows(lvs, mpf.constraint.explicit_rows());
    }
    std::vector<double> log_table;
    log_table.reserve(mpf.table.size());
    for (double v : mpf.table) {
      log_table.push_back(v > 0.0 ? std::log(v) : -std::numeric_limits<double>::infinity());
    }
    for (auto& b : boxes) {
      LiftedParfactor pf;
      pf.box = std::move(b);
      pf.origin = mpf.id;
      for (auto a : mpf.args) {
        pf.atoms.push_back({a, std::vector<ConstId>(model.prvs[a].params.size(), kFreeTerm)});
      }
      pf.log_table = log_table;
      canonicalize(model, pf);
      state.parfactors.push_back(std::move(pf));
    }
  }
  return state;
}

bool shatter(const PCFG& model, LiftedState& state, std::span<const GroupBox> terms,
             ShatterStats* stats) {
  bool any = false;
  while (true) {
    bool changed = false;
    auto occ = occurrences(model, state);
    for (std::size_t i = 0; i < occ.size() && !changed; ++i) {
      for (std::size_t j = i + 1; j < occ.size() && !changed; ++j) {
        const auto& a = occ[i];
        const auto& b = occ[j];
        if (a.group.prv != b.group.prv || a.group == b.group || !groups_overlap(a.group, b.group)) continue;
        auto pieces_a = split_by(model, state.parfactors[a.pf], a.atom, b.group);
        if (a.pf != b.pf) {
          auto pieces_b = split_by(model, state.parfactors[b.pf], b.atom, a.group);
          if (stats && pieces_b.size() > 1) ++stats->splits;
          replace_parfactor(state, b.pf, std::move(pieces_b));
        }
        if (stats && pieces_a.size() > 1) ++stats->splits;
        replace_parfactor(state, a.pf, std::move(pieces_a));
        changed = true;
      }
    }
    for (std::size_t t = 0; t < terms.size() && !changed; ++t) {
      for (const auto& o : occ) {
        if (o.group.prv != terms[t].prv || !groups_overlap(o.group, terms[t]) ||
            group_subset(o.group, terms[t])) {
          continue;
        }
        auto pieces = split_by(model, state.parfactors[o.pf], o.atom, terms[t]);
        if (stats && pieces.size() > 1) ++stats->splits;
        replace_parfactor(state, o.pf, std::move(pieces));
        changed = true;
        break;
      }
    }
    if (!changed) break;
    any = true;
  }
  return any;
}

LiftedParfactor lifted_multiply(const PCFG& model, const LiftedParfactor& a,
                                const LiftedParfactor& b) {
  LiftedParfactor r;
  r.box = a.box;
  for (const auto& [lv, s] : b.box) {
    auto it = r.box.find(lv);
    if (it == r.box.end()) {
      r.box.emplace(lv, s);
    } else if (it->second != s) {
      throw PreconditionError("lifted_multiply: box sets differ on logvar '" +
                              model.domains[lv].name + "'");
    }
  }
  // Atoms of b that equal an atom of a share its axis.
  std::vector<int> ids_b;
  r.atoms = a.atoms;
  for (const auto& atom : b.atoms) {
    auto it = std::find(r.atoms.begin(), r.atoms.end(), atom);
    if (it != r.atoms.end()) {
      ids_b.push_back(static_cast<int>(it - r.atoms.begin()));
    } else {
      ids_b.push_back(static_cast<int>(r.atoms.size()));
      r.atoms.push_back(atom);
    }
  }
  for (std::size_t i = 0; i < r.atoms.size(); ++i) {
    for (std::size_t j = i + 1; j < r.atoms.size(); ++j) {
      if (r.atoms[i].prv != r.atoms[j].prv) continue;
      if (groups_overlap(group_of(model, r, r.atoms[i]), group_of(model, r, r.atoms[j]))) {
        throw PreconditionError("lifted_multiply: overlapping atoms of '" +
                                model.prvs[r.atoms[i].prv].name + "' (shatter first)");
      }
    }
  }
  double ra = 1.0, rb = 1.0;
  for (const auto& [lv, s] : r.box) {
    if (!a.box.count(lv)) ra *= static_cast<double>(s.size());
    if (!b.box.count(lv)) rb *= static_cast<double>(s.size());
  }
  LogFactor fa = as_factor(model, a);
  LogFactor fb;
  fb.vars = ids_b;
  fb.cards = atom_cards(model, b.atoms);
  fb.values = b.log_table;
  LogFactor prod = multiply(fa, fb, 1.0 / ra, 1.0 / rb);
  // multiply() lists a's axes then b's new ones, matching r.atoms.
  r.log_table = std::move(prod.values);
  r.origin = a.origin + "*" + b.origin;
  canonicalize(model, r);
  return r;
}

LiftedParfactor lifted_sum_out(const PCFG& model, const LiftedParfactor& pf,
                               std::size_t atom_index) {
  const Atom& atom = pf.atoms.at(atom_index);
  for (const auto& [lv, s] : pf.box) {
    if (!uses_logvar(model, atom, lv)) {
      throw PreconditionError("lifted_sum_out: logvar '" + model.domains[lv].name +
                              "' is not covered by '" + model.prvs[atom.prv].name + "'");
    }
  }
  LogFactor f = sum_out(as_factor(model, pf), static_cast<int>(atom_index));
  LiftedParfactor r;
  r.box = pf.box;
  r.atoms = pf.atoms;
  r.atoms.erase(r.atoms.begin() + static_cast<std::ptrdiff_t>(atom_index));
  r.log_table = std::move(f.values);
  r.origin = pf.origin;
  canonicalize(model, r);
  return r;
}

std::vector<LiftedParfactor> ground_logvar(const PCFG& model, const LiftedParfactor& pf,
                                           std::size_t logvar) {
  auto it = pf.box.find(logvar);
  if (it == pf.box.end()) return {pf};
  std::vector<LiftedParfactor> out;
  for (ConstId c : it->second) {
    LiftedParfactor piece = pf;
    piece.box[logvar] = {c};
    canonicalize(model, piece);
    out.push_back(std::move(piece));
  }
  return out;
}

std::vector<LiftedGroundFactor> ground_state(const PCFG& model, const LiftedState& state) {
  std::vector<LiftedGroundFactor> out;
  for (const auto& pf : state.parfactors) {
    std::vector<std::size_t> lvs;
    std::vector<const Set*> sets;
    for (const auto& [lv, s] : pf.box) {
      lvs.push_back(lv);
      sets.push_back(&s);
    }
    std::vector<std::size_t> pos(lvs.size(), 0);
    while (true) {
      LiftedGroundFactor gf;
      gf.log_table = pf.log_table;
      for (const auto& atom : pf.atoms) {
        GroundRV rv{atom.prv, atom.terms};
        const auto& params = model.prvs[atom.prv].params;
        for (std::size_t k = 0; k < params.size(); ++k) {
          if (rv.args[k] != kFreeTerm) continue;
          auto i = static_cast<std::size_t>(std::find(lvs.begin(), lvs.end(), params[k]) - lvs.begin());
          rv.args[k] = (*sets[i])[pos[i]];
        }
        gf.args.push_back(std::move(rv));
      }
      out.push_back(std::move(gf));
      std::size_t k = lvs.size();
      while (k-- > 0) {
        if (++pos[k] < sets[k]->size()) break;
        pos[k] = 0;
      }
      if (k == static_cast<std::size_t>(-1)) break;
    }
  }
  std::sort(out.begin(), out.end());
  return out;
}

// ---------------------------------------------------------------------------
// Lifted variable elimination

namespace {

struct Engine {
  const PCFG& model;
  const LveOptions& options;
  LiftedState state;
  std::vector<GroupBox> terms;
  std::set<GroundRV> targets;
  LiftedStats stats;

  void note_sizes() {
    stats.max_parfactors = std::max(stats.max_parfactors, state.parfactors.size());
    for (const auto& pf : state.parfactors) {
      stats.max_table_size = std::max(stats.max_table_size, pf.log_table.size());
    }
  }

  void do_shatter() {
    std::vector<LiftedGroundFactor> before;
    if (options.audit_shatter) before = ground_state(model, state);
    ShatterStats s;
    shatter(model, state, terms, &s);
    stats.shatter_splits += s.splits;
    if (options.audit_shatter) {
      ++stats.audited_shatters;
      if (ground_state(model, state) != before) {
        throw Error("shatter changed the ground factor multiset");
      }
    }
    note_sizes();
  }

  bool is_target(const GroupBox& g) const {
    GroundRV rv{g.prv, {}};
    for (const auto& s : g.sets) {
      if (s.size() != 1) return false;
      rv.args.push_back(s.front());
    }
    return targets.count(rv) > 0;
  }

  void absorb_evidence(const GroupBox& term, std::uint32_t value) {
    for (auto& pf : state.parfactors) {
      for (std::size_t a = pf.atoms.size(); a-- > 0;) {
        if (pf.atoms[a].prv != term.prv) continue;
        if (!group_subset(group_of(model, pf, pf.atoms[a]), term)) continue;
        LogFactor f = restrict(as_factor(model, pf), static_cast<int>(a), value);
        pf.log_table = std::move(f.values);
        pf.atoms.erase(pf.atoms.begin() + static_cast<std::ptrdiff_t>(a));
      }
      canonicalize(model, pf);
    }
  }

  // Eliminates one non-target group. Returns false when none is left.
  bool step() {
    auto occ = occurrences(model, state);
    std::map<GroupBox, std::vector<const Occurrence*>> groups;
    for (const auto& o : occ) {
      if (!is_target(o.group)) groups[o.group].push_back(&o);
    }
    if (groups.empty()) return false;

    const GroupBox* best = nullptr;
    double best_size = 0.0;
    for (const auto& [g, list] : groups) {
      bool liftable = true;
      std::set<Atom> others;
      for (const auto* o : list) {
        const auto& pf = state.parfactors[o->pf];
        for (const auto& [lv, s] : pf.box) {
          if (!uses_logvar(model, pf.atoms[o->atom], lv)) liftable = false;
        }
        for (std::size_t a = 0; a < pf.atoms.size(); ++a) {
          if (a != o->atom) others.insert(pf.atoms[a]);
        }
      }
      if (!liftable) continue;
      double size = 1.0;
      for (const auto& atom : others) size *= static_cast<double>(model.range_size(atom.prv));
      if (!best || size < best_size) {
        best = &g;
        best_size = size;
      }
    }

    if (!best) {
      fallback(groups);
      return true;
    }

    const auto& list = groups.at(*best);
    std::vector<std::size_t> pfs;
    for (const auto* o : list) pfs.push_back(o->pf);
    std::sort(pfs.begin(), pfs.end());
    pfs.erase(std::unique(pfs.begin(), pfs.end()), pfs.end());

    LiftedParfactor product = state.parfactors[pfs.front()];
    for (std::size_t i = 1; i < pfs.size(); ++i) {
      product = lifted_multiply(model, product, state.parfactors[pfs[i]]);
      stats.max_table_size = std::max(stats.max_table_size, product.log_table.size());
    }
    std::size_t atom_index = product.atoms.size();
    for (std::size_t a = 0; a < product.atoms.size(); ++a) {
      if (group_of(model, product, product.atoms[a]) == *best) atom_index = a;
    }
    if (product.box.empty()) {
      ++stats.propositional_eliminations;
    } else {
      ++stats.lifted_eliminations;
    }
    LiftedParfactor result = lifted_sum_out(model, product, atom_index);
    for (std::size_t i = pfs.size(); i-- > 0;) {
      state.parfactors.erase(state.parfactors.begin() + static_cast<std::ptrdiff_t>(pfs[i]));
    }
    state.parfactors.push_back(std::move(result));
    note_sizes();
    return true;
  }

  // No lifted sum-out applies: ground the smallest blocking logvar.
  void fallback(const std::map<GroupBox, std::vector<const Occurrence*>>& groups) {
    std::size_t best_pf = 0, best_lv = 0, best_count = 0;
    bool found = false;
    for (const auto& [g, list] : groups) {
      for (const auto* o : list) {
        const auto& pf = state.parfactors[o->pf];
        for (const auto& [lv, s] : pf.box) {
          if (uses_logvar(model, pf.atoms[o->atom], lv)) continue;
          if (!found || s.size() < best_count) {
            found = true;
            best_pf = o->pf;
            best_lv = lv;
            best_count = s.size();
          }
        }
      }
    }
    if (!found) throw Error("lifted elimination is stuck");
    auto pieces = ground_logvar(model, state.parfactors[best_pf], best_lv);
    ++stats.logvar_groundings;
    replace_parfactor(state, best_pf, std::move(pieces));
    do_shatter();
  }
};

}  // namespace

LveResult lve_run(const PCFG& model, const Query& query, const LveOptions& options) {
  check_query(model, query);
  if (!query.dos.empty()) {
    throw QueryError("lve_query does not handle interventions; use lci_query");
  }
  Engine eng{model, options, make_state(model), {}, {}, {}};
  const auto targets = target_rvs(query);
  for (const auto& rv : targets) {
    eng.targets.insert(rv);
    GroupBox g{rv.prv, {}};
    for (auto c : rv.args) g.sets.push_back({c});
    eng.terms.push_back(std::move(g));
  }
  std::vector<std::pair<GroupBox, std::uint32_t>> evidence;
  for (const auto& e : query.evidence) {
    for (auto& g : decompose_group(model, e.group)) {
      eng.terms.push_back(g);
      evidence.emplace_back(std::move(g), e.value);
    }
  }
  eng.note_sizes();
  eng.do_shatter();
  for (const auto& [g, v] : evidence) eng.absorb_evidence(g, v);

  while (eng.step()) {
  }

  // Only target atoms remain; their boxes are contracted away.
  std::map<GroundRV, int> target_index;
  for (std::size_t i = 0; i < targets.size(); ++i) target_index[targets[i]] = static_cast<int>(i);
  LogFactor acc = LogFactor::scalar(0.0);
  for (const auto& pf : eng.state.parfactors) {
    if (!pf.box.empty()) throw Error("lifted elimination left a non-ground parfactor");
    LogFactor f;
    for (const auto& atom : pf.atoms) {
      f.vars.push_back(target_index.at(GroundRV{atom.prv, atom.terms}));
      f.cards.push_back(model.range_size(atom.prv));
    }
    f.values = pf.log_table;
    acc = multiply(acc, f);
  }
  for (std::size_t i = 0; i < targets.size(); ++i) {
    if (acc.index_of(static_cast<int>(i)) >= 0) continue;
    LogFactor uniform;
    uniform.vars = {static_cast<int>(i)};
    uniform.cards = {model.range_size(targets[i].prv)};
    uniform.values.assign(uniform.cards[0], 0.0);
    acc = multiply(acc, uniform);
  }
  std::vector<int> order(targets.size());
  std::iota(order.begin(), order.end(), 0);
  acc = reorder(acc, order);
  LveResult result;
  result.distribution = make_distribution(model, targets, normalize_exp(acc.values));
  result.stats = eng.stats;
  return result;
}

Distribution lve_query(const PCFG& model, const Query& query, const LveOptions& options) {
  return lve_run(model, query, options).distribution;
}

}  // namespace pcfg
