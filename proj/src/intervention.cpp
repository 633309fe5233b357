#include "pcfg/intervention.hpp"

#include <algorithm>
#include <map>

#include "pcfg/error.hpp"

namespace pcfg {

namespace {

// Indicator of `value` at the child position of a dense table.
std::vector<double> indicator_table(const PCFG& model, const Parfactor& pf, std::uint32_t value) {
  std::vector<std::size_t> cards;
  for (auto a : pf.args) cards.push_back(model.range_size(a));
  const auto strides = strides_for(cards);
  const std::size_t c = *pf.child;
  std::vector<double> table(pf.table.size());
  for (std::size_t i = 0; i < table.size(); ++i) {
    table[i] = (i / strides[c]) % cards[c] == value ? 1.0 : 0.0;
  }
  return table;
}

std::string fresh_id(const PCFG& model, std::string id) {
  do {
    id += '\'';
  } while (model.find_parfactor(id));
  return id;
}

}  // namespace

GroundFG ground_do(const GroundFG& fg, std::span<const std::pair<std::size_t, std::uint32_t>> dos) {
  GroundFG out = fg;
  std::map<std::size_t, std::uint32_t> value_of;
  for (auto [rv, v] : dos) {
    if (rv >= fg.rv_count() || v >= fg.cards[rv]) throw QueryError("intervention outside the grounding or range");
    value_of[rv] = v;
  }
  std::vector<bool> clamped(fg.rv_count(), false);
  for (auto& f : out.factors) {
    if (!f.child) continue;
    const std::size_t rv = f.args[*f.child];
    auto it = value_of.find(rv);
    if (it == value_of.end()) continue;
    clamped[rv] = true;
    std::vector<std::size_t> cards;
    for (auto a : f.args) cards.push_back(fg.cards[a]);
    const auto strides = strides_for(cards);
    const std::size_t c = *f.child;
    for (std::size_t i = 0; i < f.table.size(); ++i) {
      f.table[i] = (i / strides[c]) % cards[c] == it->second ? 1.0 : 0.0;
    }
    f.mutilated = true;
  }
  for (auto [rv, v] : dos) {
    if (!clamped[rv]) {
      throw QueryError("cannot intervene on '" + fg.names[rv] + "': it is the child of no factor");
    }
  }
  return out;
}

std::vector<DoAssignment> merge_dos(std::span<const DoAssignment> dos) {
  std::vector<DoAssignment> out;
  for (const auto& d : dos) {
    auto it = std::find_if(out.begin(), out.end(), [&](const DoAssignment& m) {
      return m.target.prv == d.target.prv && m.value == d.value;
    });
    if (it == out.end()) {
      out.push_back(d);
      continue;
    }
    auto& t = it->target.tuples;
    t.insert(t.end(), d.target.tuples.begin(), d.target.tuples.end());
    std::sort(t.begin(), t.end());
    t.erase(std::unique(t.begin(), t.end()), t.end());
  }
  return out;
}

SplitResult split_model(const PCFG& model, std::span<const RVGroup> groups) {
  SplitResult result{model, {}};
  PCFG& m = result.model;
  for (std::size_t gi = 0; gi < groups.size(); ++gi) {
    const RVGroup& group = groups[gi];
    for (std::size_t p = 0; p < m.parfactors.size(); ++p) {
      const Parfactor& pf = m.parfactors[p];
      if (std::find(pf.args.begin(), pf.args.end(), group.prv) == pf.args.end()) continue;
      const auto proj = projection(m, group.prv, pf.constraint);
      const std::size_t n = pf.constraint.arity();
      const auto flat = pf.constraint.flat(m.domains);
      std::vector<ConstId> inside, outside;
      Tuple key(proj.size());
      for (std::size_t i = 0; i < flat.size(); i += n) {
        for (std::size_t k = 0; k < proj.size(); ++k) key[k] = flat[i + proj[k]];
        auto& dst = group.contains(key) ? inside : outside;
        dst.insert(dst.end(), flat.begin() + static_cast<std::ptrdiff_t>(i),
                   flat.begin() + static_cast<std::ptrdiff_t>(i + n));
      }
      if (inside.empty() || outside.empty()) continue;
      Parfactor split_off = pf;
      split_off.id = fresh_id(m, pf.id);
      split_off.constraint = Constraint::of_flat(pf.constraint.logvars(), std::move(inside));
      Parfactor& kept = m.parfactors[p];
      kept.constraint = Constraint::of_flat(kept.constraint.logvars(), std::move(outside));
      result.events.push_back({kept.id, split_off.id, gi, kept.constraint, split_off.constraint});
      m.parfactors.insert(m.parfactors.begin() + static_cast<std::ptrdiff_t>(p + 1),
                          std::move(split_off));
      ++p;
    }
  }
  return result;
}

PCFG mutilate(const PCFG& model, std::span<const DoAssignment> dos) {
  PCFG out = model;
  for (const auto& d : dos) {
    std::vector<bool> covered(d.target.tuples.size(), false);
    for (auto& pf : out.parfactors) {
      if (!pf.child || pf.args[*pf.child] != d.target.prv) continue;
      std::size_t in = 0, total = 0;
      for (const auto& rv : groundings(out, d.target.prv, pf.constraint)) {
        ++total;
        auto it = std::lower_bound(d.target.tuples.begin(), d.target.tuples.end(), rv.args);
        if (it != d.target.tuples.end() && *it == rv.args) {
          ++in;
          covered[static_cast<std::size_t>(it - d.target.tuples.begin())] = true;
        }
      }
      if (in == 0) continue;
      if (in != total) {
        throw PreconditionError("parfactor '" + pf.id + "' is not isolated for the intervention on '" +
                                out.prvs[d.target.prv].name + "'");
      }
      pf.table = indicator_table(out, pf, d.value);
      pf.mutilated = true;
    }
    for (std::size_t i = 0; i < covered.size(); ++i) {
      if (!covered[i]) {
        throw QueryError("cannot intervene on '" +
                         out.rv_name({d.target.prv, d.target.tuples[i]}) +
                         "': it is the child of no parfactor");
      }
    }
  }
  return out;
}

LciResult lci_run(const PCFG& model, const Query& query, const LciOptions& options) {
  check_query(model, query);
  LciResult result;
  const auto dos = merge_dos(query.dos);
  std::vector<RVGroup> groups;
  for (const auto& d : dos) groups.push_back(d.target);
  SplitResult split = split_model(model, groups);
  if (options.audit && !split.events.empty()) {
    if (grounding_multiset(model) != grounding_multiset(split.model)) {
      throw Error("splitting changed the ground factor multiset");
    }
    result.audited_splits = split.events.size();
  }
  const PCFG mutilated = mutilate(split.model, dos);
  Query observational{query.targets, query.evidence, {}};
  LveOptions lve_options;
  lve_options.audit_shatter = options.audit;
  auto lve = lve_run(mutilated, observational, lve_options);
  result.distribution = std::move(lve.distribution);
  result.stats = lve.stats;
  result.splits = std::move(split.events);
  return result;
}

Distribution lci_query(const PCFG& model, const Query& query, const LciOptions& options) {
  return lci_run(model, query, options).distribution;
}

}  // namespace pcfg
