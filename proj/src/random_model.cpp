#include "pcfg/random_model.hpp"

#include <algorithm>
#include <numeric>
#include <set>

namespace pcfg {

namespace {

std::size_t pick(std::mt19937_64& rng, std::size_t lo, std::size_t hi) {
  return std::uniform_int_distribution<std::size_t>(lo, hi)(rng);
}

bool coin(std::mt19937_64& rng, double p) { return std::uniform_real_distribution<double>(0, 1)(rng) < p; }

std::vector<double> random_table(const PCFG& m, const Parfactor& pf, std::mt19937_64& rng,
                                 bool normalized, bool scaled) {
  std::uniform_real_distribution<double> val(0.05, 1.0);
  std::vector<double> t(table_size(m, pf.args));
  for (auto& v : t) v = val(rng);
  if (!normalized) return t;
  std::vector<std::size_t> cards;
  for (auto a : pf.args) cards.push_back(m.range_size(a));
  const auto strides = strides_for(cards);
  const std::size_t c = *pf.child;
  const std::size_t step = strides[c];
  const std::size_t block = step * cards[c];
  const double scale = scaled ? std::uniform_real_distribution<double>(0.5, 2.0)(rng) : 1.0;
  for (std::size_t base = 0; base < t.size(); base += block) {
    for (std::size_t in = 0; in < step; ++in) {
      double sum = 0.0;
      for (std::size_t v = 0; v < cards[c]; ++v) sum += t[base + v * step + in];
      for (std::size_t v = 0; v < cards[c]; ++v) t[base + v * step + in] *= scale / sum;
    }
  }
  return t;
}

}  // namespace

PCFG random_model(std::mt19937_64& rng, const RandomModelOptions& options) {
  PCFG m;
  const std::size_t nd = pick(rng, 1, std::max<std::size_t>(1, options.max_logvars));
  for (std::size_t d = 0; d < nd; ++d) {
    const std::string name(1, static_cast<char>('A' + d));
    std::vector<std::string> constants;
    const std::size_t size = pick(rng, 1, 3);
    for (std::size_t k = 0; k < size; ++k) constants.push_back(std::string(1, static_cast<char>('a' + d)) + std::to_string(k + 1));
    m.add_domain(name, constants);
  }
  for (std::size_t r = 2; r <= std::max<std::size_t>(2, options.max_range); ++r) {
    std::vector<std::string> values;
    for (std::size_t v = 0; v < r; ++v) values.push_back("v" + std::to_string(v));
    m.add_range("r" + std::to_string(r), values);
  }

  const std::size_t np = pick(rng, 2, std::max<std::size_t>(2, options.max_prvs));
  std::size_t grounds = 0;
  for (std::size_t i = 0; i < np; ++i) {
    PRV p;
    p.name = "X" + std::to_string(i);
    p.range = pick(rng, 0, m.ranges.size() - 1);
    for (int attempt = 0; attempt < 8; ++attempt) {
      std::vector<std::size_t> doms(nd);
      std::iota(doms.begin(), doms.end(), 0);
      std::shuffle(doms.begin(), doms.end(), rng);
      doms.resize(pick(rng, 0, std::min<std::size_t>(nd, 2)));
      std::size_t n = 1;
      for (auto d : doms) n *= m.domains[d].size();
      // Leave room for the PRVs still to come.
      if (grounds + n + (np - i - 1) <= options.max_ground_rvs) {
        p.params = doms;
        break;
      }
    }
    std::size_t n = 1;
    for (auto d : p.params) n *= m.domains[d].size();
    if (grounds + n > options.max_ground_rvs) break;
    grounds += n;
    m.prvs.push_back(std::move(p));
  }

  auto add_factor = [&](std::size_t child, bool extra) {
    std::vector<std::size_t> eligible;
    for (std::size_t j = 0; j < child; ++j) {
      if (options.bn_compatible) {
        const auto& cp = m.prvs[child].params;
        const auto& jp = m.prvs[j].params;
        if (!std::all_of(jp.begin(), jp.end(),
                         [&](std::size_t d) { return std::find(cp.begin(), cp.end(), d) != cp.end(); })) {
          continue;
        }
      }
      eligible.push_back(j);
    }
    std::shuffle(eligible.begin(), eligible.end(), rng);
    eligible.resize(std::min<std::size_t>(eligible.size(), pick(rng, extra ? 1 : 0, 2)));
    if (extra && eligible.empty()) return;
    Parfactor pf;
    pf.id = "g" + std::to_string(m.parfactors.size() + 1);
    pf.args = eligible;
    const std::size_t pos = pick(rng, 0, pf.args.size());
    pf.args.insert(pf.args.begin() + static_cast<std::ptrdiff_t>(pos), child);
    pf.child = pos;
    const auto lvs = logvars_of(m, pf.args);
    pf.constraint = Constraint::top(lvs);
    if (!options.bn_compatible && !lvs.empty() && coin(rng, options.explicit_constraint_prob)) {
      const auto all = Constraint::top(lvs).tuples(m.domains);
      std::vector<Tuple> kept;
      for (const auto& t : all) {
        if (coin(rng, 0.6)) kept.push_back(t);
      }
      if (kept.empty()) kept.push_back(all[pick(rng, 0, all.size() - 1)]);
      pf.constraint = Constraint::of(lvs, std::move(kept));
    }
    const bool normalized = options.bn_compatible || coin(rng, options.normalized_prob);
    pf.table = random_table(m, pf, rng, normalized, !options.bn_compatible);
    m.parfactors.push_back(std::move(pf));
  };
  for (std::size_t i = 0; i < m.prvs.size(); ++i) {
    add_factor(i, false);
    if (!options.bn_compatible && i > 0 && coin(rng, options.extra_parent_factor_prob)) add_factor(i, true);
  }
  return m;
}

Query random_query(const PCFG& model, std::mt19937_64& rng, const RandomQueryOptions& options) {
  std::vector<GroundRV> all;
  for (std::size_t p = 0; p < model.prvs.size(); ++p) {
    for (auto& t : whole_prv(model, p).tuples) all.push_back({p, std::move(t)});
  }
  std::set<GroundRV> used;
  std::set<GroundRV> has_parent;
  for (const auto& rv : all) {
    if (!parents(model, rv).empty()) has_parent.insert(rv);
  }
  // A random RV's group: itself, or a pattern with one parameter left free.
  auto group_around = [&](const GroundRV& rv) {
    const auto& params = model.prvs[rv.prv].params;
    if (params.empty() || !coin(rng, options.group_prob)) return rv_group(model, rv.prv, rv.args);
    std::vector<std::optional<ConstId>> pattern(rv.args.begin(), rv.args.end());
    pattern[pick(rng, 0, params.size() - 1)] = std::nullopt;
    return pattern_group(model, rv.prv, pattern);
  };
  auto available = [&](const RVGroup& g, bool need_parent) {
    for (const auto& t : g.tuples) {
      GroundRV rv{g.prv, t};
      if (used.count(rv) || (need_parent && !has_parent.count(rv))) return false;
    }
    return true;
  };
  auto claim = [&](const RVGroup& g) {
    for (const auto& t : g.tuples) used.insert({g.prv, t});
  };
  auto random_rv = [&]() -> const GroundRV& { return all[pick(rng, 0, all.size() - 1)]; };

  Query q;
  const std::size_t nt = pick(rng, 1, std::max<std::size_t>(1, options.max_targets));
  for (std::size_t i = 0; i < nt * 4 && q.targets.size() < nt; ++i) {
    RVGroup g = group_around(random_rv());
    if (!available(g, false)) continue;
    claim(g);
    q.targets.push_back(std::move(g));
  }
  const std::size_t nd = pick(rng, 0, options.max_dos);
  for (std::size_t i = 0; i < nd * 4 && q.dos.size() < nd; ++i) {
    RVGroup g = group_around(random_rv());
    if (!available(g, true)) continue;
    claim(g);
    const auto value = static_cast<std::uint32_t>(pick(rng, 0, model.range_size(g.prv) - 1));
    q.dos.push_back({std::move(g), value});
  }
  const std::size_t ne = pick(rng, 0, options.max_evidence);
  for (std::size_t i = 0; i < ne * 4 && q.evidence.size() < ne; ++i) {
    const GroundRV& rv = random_rv();
    RVGroup g = rv_group(model, rv.prv, rv.args);
    if (!available(g, false)) continue;
    claim(g);
    const auto value = static_cast<std::uint32_t>(pick(rng, 0, model.range_size(g.prv) - 1));
    q.evidence.push_back({std::move(g), value});
  }
  return q;
}

}  // namespace pcfg
