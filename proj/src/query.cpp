#include "pcfg/query.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <set>

#include "pcfg/error.hpp"

namespace pcfg {

bool RVGroup::contains(const Tuple& args) const {
  return std::binary_search(tuples.begin(), tuples.end(), args);
}

bool RVGroup::overlaps(const RVGroup& other) const {
  if (prv != other.prv) return false;
  auto a = tuples.begin();
  auto b = other.tuples.begin();
  while (a != tuples.end() && b != other.tuples.end()) {
    if (*a < *b) {
      ++a;
    } else if (*b < *a) {
      ++b;
    } else {
      return true;
    }
  }
  return false;
}

RVGroup rv_group(const PCFG& model, std::size_t prv, Tuple args) {
  const PRV& p = model.prvs.at(prv);
  if (args.size() != p.params.size()) {
    throw QueryError("'" + p.name + "' expects " + std::to_string(p.params.size()) + " arguments");
  }
  for (std::size_t k = 0; k < args.size(); ++k) {
    if (args[k] >= model.domains[p.params[k]].size()) throw QueryError("constant outside domain");
  }
  return RVGroup{prv, {std::move(args)}};
}

RVGroup whole_prv(const PCFG& model, std::size_t prv) {
  return pattern_group(model, prv,
                       std::vector<std::optional<ConstId>>(model.prvs.at(prv).params.size()));
}

RVGroup pattern_group(const PCFG& model, std::size_t prv,
                      const std::vector<std::optional<ConstId>>& pattern) {
  const PRV& p = model.prvs.at(prv);
  if (pattern.size() != p.params.size()) {
    throw QueryError("'" + p.name + "' expects " + std::to_string(p.params.size()) + " arguments");
  }
  RVGroup g{prv, {}};
  Tuple cur(pattern.size(), 0);
  std::vector<std::size_t> lo(pattern.size()), hi(pattern.size());
  for (std::size_t k = 0; k < pattern.size(); ++k) {
    const std::size_t dom = model.domains[p.params[k]].size();
    if (pattern[k]) {
      if (*pattern[k] >= dom) throw QueryError("constant outside domain");
      lo[k] = *pattern[k];
      hi[k] = *pattern[k] + 1;
    } else {
      lo[k] = 0;
      hi[k] = dom;
    }
    cur[k] = static_cast<ConstId>(lo[k]);
  }
  while (true) {
    g.tuples.push_back(cur);
    std::size_t k = cur.size();
    while (k-- > 0) {
      if (++cur[k] < hi[k]) break;
      cur[k] = static_cast<ConstId>(lo[k]);
    }
    if (k == static_cast<std::size_t>(-1)) break;
  }
  return g;
}

std::vector<GroundRV> target_rvs(const Query& query) {
  std::vector<GroundRV> out;
  for (const auto& t : query.targets) {
    for (const auto& args : t.tuples) out.push_back({t.prv, args});
  }
  return out;
}

void check_query(const PCFG& model, const Query& query) {
  if (query.targets.empty()) throw QueryError("query has no targets");
  auto check_group = [&](const RVGroup& g) {
    if (g.prv >= model.prvs.size()) throw QueryError("unknown prv in query");
    if (g.tuples.empty()) throw QueryError("empty variable group in query");
    const PRV& p = model.prvs[g.prv];
    for (const auto& t : g.tuples) {
      if (t.size() != p.params.size()) throw QueryError("arity mismatch for '" + p.name + "'");
      for (std::size_t k = 0; k < t.size(); ++k) {
        if (t[k] >= model.domains[p.params[k]].size()) throw QueryError("constant outside domain");
      }
    }
    if (!std::is_sorted(g.tuples.begin(), g.tuples.end()) ||
        std::adjacent_find(g.tuples.begin(), g.tuples.end()) != g.tuples.end()) {
      throw QueryError("variable group for '" + p.name + "' is not sorted and unique");
    }
  };
  std::set<GroundRV> targets;
  for (const auto& t : query.targets) {
    check_group(t);
    for (const auto& args : t.tuples) {
      if (!targets.insert({t.prv, args}).second) {
        throw QueryError("target '" + model.rv_name({t.prv, args}) + "' listed twice");
      }
    }
  }
  std::map<GroundRV, std::uint32_t> observed;
  for (const auto& e : query.evidence) {
    check_group(e.group);
    if (e.value >= model.range_size(e.group.prv)) throw QueryError("evidence value out of range");
    for (const auto& args : e.group.tuples) {
      auto [it, inserted] = observed.emplace(GroundRV{e.group.prv, args}, e.value);
      if (!inserted && it->second != e.value) {
        throw QueryError("contradictory evidence on '" + model.rv_name(it->first) + "'");
      }
      if (targets.count(it->first)) {
        throw QueryError("'" + model.rv_name(it->first) + "' is both a target and observed");
      }
    }
  }
  for (std::size_t i = 0; i < query.dos.size(); ++i) {
    const auto& d = query.dos[i];
    check_group(d.target);
    if (d.value >= model.range_size(d.target.prv)) throw QueryError("do value out of range");
    for (std::size_t j = 0; j < i; ++j) {
      if (d.target.overlaps(query.dos[j].target)) {
        throw QueryError("overlapping do-targets on '" + model.prvs[d.target.prv].name + "'");
      }
    }
    for (const auto& args : d.target.tuples) {
      GroundRV rv{d.target.prv, args};
      if (observed.count(rv)) {
        throw QueryError("'" + model.rv_name(rv) + "' is both observed and intervened on");
      }
      if (targets.count(rv)) {
        throw QueryError("'" + model.rv_name(rv) + "' is both a target and intervened on");
      }
    }
  }
}

double max_abs_diff(const Distribution& a, const Distribution& b) {
  if (a.probs.size() != b.probs.size() || a.variables != b.variables) {
    return std::numeric_limits<double>::infinity();
  }
  double d = 0.0;
  for (std::size_t i = 0; i < a.probs.size(); ++i) d = std::max(d, std::abs(a.probs[i] - b.probs[i]));
  return d;
}

Distribution make_distribution(const PCFG& model, const std::vector<GroundRV>& targets,
                               std::vector<double> probs) {
  Distribution d;
  for (const auto& rv : targets) {
    d.variables.push_back(model.rv_name(rv));
    d.values.push_back(model.range_of(rv.prv).values);
  }
  d.probs = std::move(probs);
  return d;
}

}  // namespace pcfg
