#include "pcfg/model.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <set>

#include "pcfg/error.hpp"

namespace pcfg {

namespace {

template <typename T>
std::optional<std::size_t> find_named(const std::vector<T>& items, std::string_view name) {
  for (std::size_t i = 0; i < items.size(); ++i) {
    if (items[i].name == name) return i;
  }
  return std::nullopt;
}

bool row_less(std::span<const ConstId> a, std::span<const ConstId> b) {
  return std::lexicographical_compare(a.begin(), a.end(), b.begin(), b.end());
}

}  // namespace

std::optional<ConstId> DomainSpec::find(std::string_view constant) const {
  for (std::size_t i = 0; i < constants.size(); ++i) {
    if (constants[i] == constant) return static_cast<ConstId>(i);
  }
  return std::nullopt;
}

std::optional<std::uint32_t> RangeSpec::find(std::string_view value) const {
  for (std::size_t i = 0; i < values.size(); ++i) {
    if (values[i] == value) return static_cast<std::uint32_t>(i);
  }
  return std::nullopt;
}

// ---------------------------------------------------------------------------
// Constraint

Constraint Constraint::top(std::vector<std::size_t> logvars) {
  Constraint c;
  c.logvars_ = std::move(logvars);
  c.top_ = true;
  return c;
}

Constraint Constraint::of(std::vector<std::size_t> logvars, std::vector<Tuple> tuples) {
  std::vector<ConstId> flat;
  flat.reserve(tuples.size() * logvars.size());
  for (const auto& t : tuples) {
    if (t.size() != logvars.size()) {
      throw ModelError("constraint tuple arity " + std::to_string(t.size()) +
                       " does not match " + std::to_string(logvars.size()) + " logvars");
    }
    flat.insert(flat.end(), t.begin(), t.end());
  }
  if (tuples.empty()) throw ModelError("explicit constraint has no tuples");
  return of_flat(std::move(logvars), std::move(flat));
}

Constraint Constraint::of_flat(std::vector<std::size_t> logvars, std::vector<ConstId> flat) {
  const std::size_t n = logvars.size();
  Constraint c;
  c.logvars_ = std::move(logvars);
  if (n == 0) {
    // The only tuple over zero logvars is the empty one.
    c.top_ = true;
    return c;
  }
  if (flat.empty()) throw ModelError("explicit constraint has no tuples");
  if (flat.size() % n != 0) throw ModelError("constraint buffer is not a multiple of its arity");
  const std::size_t rows = flat.size() / n;
  std::vector<std::size_t> order(rows);
  std::iota(order.begin(), order.end(), 0);
  auto row = [&](std::size_t r) { return std::span<const ConstId>(flat.data() + r * n, n); };
  bool sorted = true;
  for (std::size_t r = 1; r < rows && sorted; ++r) sorted = row_less(row(r - 1), row(r));
  if (sorted) {
    c.rows_ = std::move(flat);
  } else {
    std::sort(order.begin(), order.end(),
              [&](std::size_t a, std::size_t b) { return row_less(row(a), row(b)); });
    c.rows_.reserve(flat.size());
    for (std::size_t i = 0; i < rows; ++i) {
      auto r = row(order[i]);
      if (i > 0 && std::equal(r.begin(), r.end(), row(order[i - 1]).begin())) continue;
      c.rows_.insert(c.rows_.end(), r.begin(), r.end());
    }
  }
  c.top_ = false;
  return c;
}

std::size_t Constraint::count(std::span<const DomainSpec> domains) const {
  if (top_) {
    std::size_t n = 1;
    for (auto lv : logvars_) n *= domains[lv].size();
    return n;
  }
  return rows_.size() / logvars_.size();
}

std::vector<ConstId> Constraint::flat(std::span<const DomainSpec> domains) const {
  if (!top_) return rows_;
  const std::size_t n = logvars_.size();
  const std::size_t total = count(domains);
  std::vector<ConstId> out;
  out.reserve(total * n);
  std::vector<ConstId> cur(n, 0);
  for (std::size_t i = 0; i < total; ++i) {
    out.insert(out.end(), cur.begin(), cur.end());
    for (std::size_t k = n; k-- > 0;) {
      if (++cur[k] < domains[logvars_[k]].size()) break;
      cur[k] = 0;
    }
  }
  return out;
}

std::vector<Tuple> Constraint::tuples(std::span<const DomainSpec> domains) const {
  const std::size_t n = logvars_.size();
  std::vector<ConstId> f = flat(domains);
  std::vector<Tuple> out;
  if (n == 0) {
    out.emplace_back();
    return out;
  }
  out.reserve(f.size() / n);
  for (std::size_t i = 0; i < f.size(); i += n) out.emplace_back(f.begin() + i, f.begin() + i + n);
  return out;
}

bool Constraint::contains(std::span<const ConstId> tuple) const {
  if (top_) return true;
  const std::size_t n = logvars_.size();
  std::size_t lo = 0, hi = rows_.size() / n;
  while (lo < hi) {
    std::size_t mid = (lo + hi) / 2;
    std::span<const ConstId> r(rows_.data() + mid * n, n);
    if (row_less(r, tuple)) {
      lo = mid + 1;
    } else {
      hi = mid;
    }
  }
  if (lo == rows_.size() / n) return false;
  std::span<const ConstId> r(rows_.data() + lo * n, n);
  return std::equal(r.begin(), r.end(), tuple.begin(), tuple.end());
}

// ---------------------------------------------------------------------------
// PCFG

std::optional<std::size_t> PCFG::find_domain(std::string_view name) const {
  return find_named(domains, name);
}
std::optional<std::size_t> PCFG::find_range(std::string_view name) const {
  return find_named(ranges, name);
}
std::optional<std::size_t> PCFG::find_prv(std::string_view name) const {
  return find_named(prvs, name);
}
std::optional<std::size_t> PCFG::find_parfactor(std::string_view id) const {
  for (std::size_t i = 0; i < parfactors.size(); ++i) {
    if (parfactors[i].id == id) return i;
  }
  return std::nullopt;
}

std::size_t PCFG::add_domain(std::string name, std::vector<std::string> constants) {
  if (find_domain(name)) throw ModelError("duplicate domain '" + name + "'");
  domains.push_back({std::move(name), std::move(constants)});
  return domains.size() - 1;
}

std::size_t PCFG::add_range(std::string name, std::vector<std::string> values) {
  if (find_range(name)) throw ModelError("duplicate range '" + name + "'");
  ranges.push_back({std::move(name), std::move(values)});
  return ranges.size() - 1;
}

std::size_t PCFG::add_prv(std::string name, const std::vector<std::string>& params,
                          std::string_view range) {
  if (find_prv(name)) throw ModelError("duplicate prv '" + name + "'");
  PRV p;
  p.name = std::move(name);
  for (const auto& lv : params) {
    auto d = find_domain(lv);
    if (!d) throw ModelError("unknown logvar '" + lv + "' in prv '" + p.name + "'");
    p.params.push_back(*d);
  }
  auto r = find_range(range);
  if (!r) throw ModelError("unknown range '" + std::string(range) + "'");
  p.range = *r;
  prvs.push_back(std::move(p));
  return prvs.size() - 1;
}

std::size_t PCFG::add_parfactor(std::string id, const std::vector<std::string>& args,
                                std::optional<std::string_view> child, std::vector<double> table,
                                std::optional<std::vector<std::vector<std::string>>> tuples) {
  if (find_parfactor(id)) throw ModelError("duplicate parfactor '" + id + "'");
  Parfactor pf;
  pf.id = std::move(id);
  for (const auto& a : args) {
    auto p = find_prv(a);
    if (!p) throw ModelError("unknown prv '" + a + "' in parfactor '" + pf.id + "'");
    pf.args.push_back(*p);
  }
  if (child) {
    auto p = find_prv(*child);
    auto it = p ? std::find(pf.args.begin(), pf.args.end(), *p) : pf.args.end();
    if (it == pf.args.end()) {
      throw ModelError("child '" + std::string(*child) + "' is not an argument of '" + pf.id + "'");
    }
    pf.child = static_cast<std::size_t>(it - pf.args.begin());
  }
  auto lvs = logvars_of(*this, pf.args);
  if (tuples) {
    std::vector<Tuple> rows;
    for (const auto& t : *tuples) {
      if (t.size() != lvs.size()) throw ModelError("constraint tuple arity mismatch in '" + pf.id + "'");
      Tuple row;
      for (std::size_t k = 0; k < t.size(); ++k) {
        auto c = domains[lvs[k]].find(t[k]);
        if (!c) throw ModelError("unknown constant '" + t[k] + "' in '" + pf.id + "'");
        row.push_back(*c);
      }
      rows.push_back(std::move(row));
    }
    pf.constraint = Constraint::of(lvs, std::move(rows));
  } else {
    pf.constraint = Constraint::top(lvs);
  }
  pf.table = std::move(table);
  if (pf.table.size() != table_size(*this, pf.args)) {
    throw ModelError("table of '" + pf.id + "' has " + std::to_string(pf.table.size()) +
                     " entries, expected " + std::to_string(table_size(*this, pf.args)));
  }
  parfactors.push_back(std::move(pf));
  return parfactors.size() - 1;
}

std::string PCFG::rv_name(const GroundRV& rv) const {
  const PRV& p = prvs[rv.prv];
  std::string s = p.name;
  if (p.params.empty()) return s;
  s += '(';
  for (std::size_t k = 0; k < p.params.size(); ++k) {
    if (k) s += ',';
    s += domains[p.params[k]].constants[rv.args[k]];
  }
  s += ')';
  return s;
}

std::string PCFG::prv_signature(std::size_t prv) const {
  const PRV& p = prvs[prv];
  std::string s = p.name;
  if (p.params.empty()) return s;
  s += '(';
  for (std::size_t k = 0; k < p.params.size(); ++k) {
    if (k) s += ',';
    s += domains[p.params[k]].name;
  }
  s += ')';
  return s;
}

// ---------------------------------------------------------------------------
// Free functions

std::vector<std::size_t> logvars_of(const PCFG& model, std::span<const std::size_t> args) {
  std::vector<std::size_t> lvs;
  for (auto a : args) {
    for (auto lv : model.prvs.at(a).params) lvs.push_back(lv);
  }
  std::sort(lvs.begin(), lvs.end());
  lvs.erase(std::unique(lvs.begin(), lvs.end()), lvs.end());
  return lvs;
}

std::size_t table_size(const PCFG& model, std::span<const std::size_t> args) {
  std::size_t n = 1;
  for (auto a : args) n *= model.range_size(a);
  return n;
}

std::vector<std::size_t> projection(const PCFG& model, std::size_t prv,
                                    const Constraint& constraint) {
  std::vector<std::size_t> pos;
  const auto& lvs = constraint.logvars();
  for (auto lv : model.prvs.at(prv).params) {
    auto it = std::find(lvs.begin(), lvs.end(), lv);
    if (it == lvs.end()) {
      throw ModelError("constraint does not cover logvar '" + model.domains.at(lv).name +
                       "' of prv '" + model.prvs[prv].name + "'");
    }
    pos.push_back(static_cast<std::size_t>(it - lvs.begin()));
  }
  return pos;
}

std::vector<GroundRV> groundings(const PCFG& model, std::size_t prv, const Constraint& constraint) {
  for (auto lv : constraint.logvars()) {
    if (lv >= model.domains.size()) throw ModelError("constraint mentions an unknown logvar");
  }
  const auto pos = projection(model, prv, constraint);
  const std::size_t n = constraint.arity();
  std::vector<GroundRV> out;
  if (n == 0) {
    out.push_back({prv, {}});
    return out;
  }
  const auto flat = constraint.flat(model.domains);
  out.reserve(flat.size() / n);
  for (std::size_t i = 0; i < flat.size(); i += n) {
    GroundRV rv{prv, {}};
    rv.args.reserve(pos.size());
    for (auto p : pos) rv.args.push_back(flat[i + p]);
    out.push_back(std::move(rv));
  }
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

std::size_t grounding_count(const PCFG& model, const Parfactor& pf) {
  return pf.constraint.count(model.domains);
}

std::vector<std::size_t> parents(const PCFG& model, std::size_t prv) {
  std::vector<std::size_t> out;
  for (std::size_t g = 0; g < model.parfactors.size(); ++g) {
    const auto& pf = model.parfactors[g];
    if (pf.child && pf.args[*pf.child] == prv) out.push_back(g);
  }
  return out;
}

std::vector<std::size_t> parents(const PCFG& model, const GroundRV& rv) {
  std::vector<std::size_t> out;
  for (auto g : parents(model, rv.prv)) {
    auto gr = groundings(model, rv.prv, model.parfactors[g].constraint);
    if (std::binary_search(gr.begin(), gr.end(), rv)) out.push_back(g);
  }
  return out;
}

std::size_t child(const PCFG& model, std::size_t parfactor) {
  const auto& pf = model.parfactors.at(parfactor);
  if (!pf.child) throw ModelError("parfactor '" + pf.id + "' has no child");
  return pf.args[*pf.child];
}

std::vector<std::size_t> strides_for(std::span<const std::size_t> cards) {
  std::vector<std::size_t> s(cards.size(), 1);
  for (std::size_t k = cards.size(); k-- > 1;) s[k - 1] = s[k] * cards[k];
  return s;
}

void decode_index(std::size_t index, std::span<const std::size_t> cards,
                  std::span<std::uint32_t> out) {
  for (std::size_t k = cards.size(); k-- > 0;) {
    out[k] = static_cast<std::uint32_t>(index % cards[k]);
    index /= cards[k];
  }
}

bool is_row_normalized(const PCFG& model, const Parfactor& pf, double tolerance) {
  if (!pf.child) return false;
  std::vector<std::size_t> cards;
  for (auto a : pf.args) cards.push_back(model.range_size(a));
  const auto strides = strides_for(cards);
  const std::size_t c = *pf.child;
  const std::size_t stride = strides[c];
  for (std::size_t i = 0; i < pf.table.size(); ++i) {
    if ((i / stride) % cards[c] != 0) continue;
    double sum = 0.0;
    for (std::size_t v = 0; v < cards[c]; ++v) sum += pf.table[i + v * stride];
    if (std::abs(sum - 1.0) > tolerance) return false;
  }
  return true;
}

bool has_errors(std::span<const Violation> violations) {
  return std::any_of(violations.begin(), violations.end(),
                     [](const Violation& v) { return v.severity == Severity::Error; });
}

std::vector<Violation> validate(const PCFG& model, const ValidateOptions& options) {
  std::vector<Violation> out;
  auto error = [&](std::optional<std::size_t> pf, std::string msg) {
    out.push_back({Severity::Error, pf, std::move(msg)});
  };

  auto check_unique = [&](const auto& items, const char* what) {
    std::set<std::string> seen;
    for (const auto& it : items) {
      if (!seen.insert(it.name).second) error(std::nullopt, std::string("duplicate ") + what + " '" + it.name + "'");
    }
  };
  check_unique(model.domains, "domain");
  check_unique(model.ranges, "range");
  check_unique(model.prvs, "prv");

  for (const auto& d : model.domains) {
    if (d.constants.empty()) error(std::nullopt, "domain '" + d.name + "' is empty");
    std::set<std::string> seen(d.constants.begin(), d.constants.end());
    if (seen.size() != d.constants.size()) error(std::nullopt, "domain '" + d.name + "' repeats a constant");
  }
  for (const auto& r : model.ranges) {
    if (r.values.empty()) error(std::nullopt, "range '" + r.name + "' is empty");
    std::set<std::string> seen(r.values.begin(), r.values.end());
    if (seen.size() != r.values.size()) error(std::nullopt, "range '" + r.name + "' repeats a value");
  }
  bool prvs_ok = true;
  for (const auto& p : model.prvs) {
    if (p.range >= model.ranges.size()) {
      error(std::nullopt, "prv '" + p.name + "' has an unknown range");
      prvs_ok = false;
    }
    std::set<std::size_t> seen;
    for (auto lv : p.params) {
      if (lv >= model.domains.size()) {
        error(std::nullopt, "prv '" + p.name + "' has an unknown logvar");
        prvs_ok = false;
      } else if (!seen.insert(lv).second) {
        error(std::nullopt, "prv '" + p.name + "' repeats logvar '" + model.domains[lv].name + "'");
      }
    }
  }
  if (!prvs_ok) return out;

  if (model.parfactors.empty()) error(std::nullopt, "model has no parfactors");

  std::set<std::string> ids;
  std::vector<bool> used(model.prvs.size(), false);
  for (std::size_t g = 0; g < model.parfactors.size(); ++g) {
    const auto& pf = model.parfactors[g];
    if (!ids.insert(pf.id).second) error(g, "duplicate parfactor '" + pf.id + "'");
    if (pf.args.empty()) {
      error(g, "parfactor '" + pf.id + "' has no arguments");
      continue;
    }
    bool args_ok = true;
    std::set<std::size_t> seen;
    for (auto a : pf.args) {
      if (a >= model.prvs.size()) {
        error(g, "parfactor '" + pf.id + "' references an unknown prv");
        args_ok = false;
      } else {
        used[a] = true;
        if (!seen.insert(a).second) {
          error(g, "parfactor '" + pf.id + "' repeats prv '" + model.prvs[a].name + "'");
        }
      }
    }
    if (!args_ok) continue;
    if (!pf.child) {
      error(g, "parfactor '" + pf.id + "' has no child");
    } else if (*pf.child >= pf.args.size()) {
      error(g, "child of parfactor '" + pf.id + "' is not in its argument list");
    }

    auto lvs = logvars_of(model, pf.args);
    if (pf.constraint.logvars() != lvs) {
      error(g, "constraint logvars of '" + pf.id + "' differ from the logvars of its arguments");
    } else if (!pf.constraint.is_top()) {
      const auto& rows = pf.constraint.explicit_rows();
      const std::size_t n = lvs.size();
      if (rows.empty()) error(g, "constraint of '" + pf.id + "' is empty");
      for (std::size_t i = 0; i < rows.size(); ++i) {
        if (rows[i] >= model.domains[lvs[i % n]].size()) {
          error(g, "constraint of '" + pf.id + "' uses a constant outside its domain");
          break;
        }
      }
    }

    const std::size_t expected = table_size(model, pf.args);
    if (pf.table.size() != expected) {
      error(g, "table of '" + pf.id + "' has " + std::to_string(pf.table.size()) +
                   " entries, expected " + std::to_string(expected));
      continue;
    }
    bool nonzero = false;
    for (double v : pf.table) {
      if (!std::isfinite(v) || v < 0.0 || (v == 0.0 && !pf.mutilated)) {
        error(g, "table of '" + pf.id + "' has a non-positive or non-finite potential");
        break;
      }
      nonzero = nonzero || v > 0.0;
    }
    if (!nonzero) error(g, "table of '" + pf.id + "' has no non-zero potential");
    if (options.check_normalization && pf.child && *pf.child < pf.args.size() &&
        !is_row_normalized(model, pf, options.normalization_tolerance)) {
      out.push_back({Severity::Warning, g,
                     "rows of '" + pf.id + "' do not sum to one over the child"});
    }
  }

  for (std::size_t p = 0; p < model.prvs.size(); ++p) {
    if (!used[p]) error(std::nullopt, "prv '" + model.prvs[p].name + "' is not used by any parfactor");
  }

  // Acyclicity over parent-PRV -> child-PRV edges (Kahn).
  const std::size_t n = model.prvs.size();
  std::vector<std::set<std::size_t>> succ(n);
  std::vector<std::size_t> indeg(n, 0);
  for (const auto& pf : model.parfactors) {
    if (!pf.child || *pf.child >= pf.args.size()) continue;
    const std::size_t c = pf.args[*pf.child];
    for (auto a : pf.args) {
      if (a == c || a >= n) continue;
      if (succ[a].insert(c).second) ++indeg[c];
    }
  }
  std::vector<std::size_t> queue;
  for (std::size_t p = 0; p < n; ++p) {
    if (indeg[p] == 0) queue.push_back(p);
  }
  std::size_t visited = 0;
  while (!queue.empty()) {
    auto p = queue.back();
    queue.pop_back();
    ++visited;
    for (auto c : succ[p]) {
      if (--indeg[c] == 0) queue.push_back(c);
    }
  }
  if (visited != n) {
    std::string names;
    for (std::size_t p = 0; p < n; ++p) {
      if (indeg[p] > 0) names += (names.empty() ? "" : ", ") + model.prvs[p].name;
    }
    error(std::nullopt, "directed cycle through prvs: " + names);
  }
  return out;
}

}  // namespace pcfg
