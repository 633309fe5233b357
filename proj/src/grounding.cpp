#include "pcfg/grounding.hpp"

#include <algorithm>
#include <cmath>

#include "pcfg/error.hpp"
#include "pcfg/intervention.hpp"

namespace pcfg {

std::optional<std::size_t> GroundFG::find(const GroundRV& rv) const {
  auto it = index.find(rv);
  if (it == index.end()) return std::nullopt;
  return it->second;
}

std::optional<std::size_t> GroundFG::find(std::string_view name) const {
  for (std::size_t i = 0; i < names.size(); ++i) {
    if (names[i] == name) return i;
  }
  return std::nullopt;
}

std::vector<std::size_t> GroundFG::parent_factors(std::size_t rv) const {
  std::vector<std::size_t> out;
  for (std::size_t f = 0; f < factors.size(); ++f) {
    const auto& gf = factors[f];
    if (gf.child && gf.args[*gf.child] == rv) out.push_back(f);
  }
  return out;
}

GroundFG ground(const PCFG& model, const GroundOptions& options) {
  std::size_t total = 0;
  for (std::size_t p = 0; p < model.prvs.size(); ++p) {
    std::size_t n = 1;
    for (auto lv : model.prvs[p].params) n *= model.domains[lv].size();
    total += n;
  }
  for (const auto& pf : model.parfactors) total += grounding_count(model, pf);
  if (total > options.max_ground_size) {
    throw SizeLimitExceeded("grounding would create " + std::to_string(total) +
                            " nodes (limit " + std::to_string(options.max_ground_size) + ")");
  }

  GroundFG fg;
  for (std::size_t p = 0; p < model.prvs.size(); ++p) {
    for (auto& args : whole_prv(model, p).tuples) {
      GroundRV rv{p, std::move(args)};
      fg.index.emplace(rv, fg.rvs.size());
      fg.names.push_back(model.rv_name(rv));
      fg.cards.push_back(model.range_size(p));
      fg.values.push_back(model.range_of(p).values);
      fg.rvs.push_back(std::move(rv));
    }
  }
  for (const auto& pf : model.parfactors) {
    const auto& c = pf.constraint;
    std::vector<std::vector<std::size_t>> proj;
    for (auto a : pf.args) proj.push_back(projection(model, a, c));
    const std::size_t n = c.arity();
    const auto flat = c.flat(model.domains);
    const std::size_t rows = n == 0 ? 1 : flat.size() / n;
    for (std::size_t r = 0; r < rows; ++r) {
      GroundFactor gf;
      gf.source = pf.id;
      gf.child = pf.child;
      gf.table = pf.table;
      gf.mutilated = pf.mutilated;
      for (std::size_t k = 0; k < pf.args.size(); ++k) {
        GroundRV rv{pf.args[k], {}};
        for (auto pos : proj[k]) rv.args.push_back(flat[r * n + pos]);
        gf.args.push_back(fg.index.at(rv));
      }
      fg.factors.push_back(std::move(gf));
    }
  }
  return fg;
}

GroundQuery resolve(const GroundFG& fg, const Query& query) {
  GroundQuery q;
  auto lookup = [&](std::size_t prv, const Tuple& args) {
    auto i = fg.find(GroundRV{prv, args});
    if (!i) throw QueryError("query variable is not part of the grounding");
    return *i;
  };
  for (const auto& t : query.targets) {
    for (const auto& args : t.tuples) q.targets.push_back(lookup(t.prv, args));
  }
  for (const auto& e : query.evidence) {
    for (const auto& args : e.group.tuples) q.evidence.emplace_back(lookup(e.group.prv, args), e.value);
  }
  for (const auto& d : query.dos) {
    for (const auto& args : d.target.tuples) q.dos.emplace_back(lookup(d.target.prv, args), d.value);
  }
  return q;
}

namespace {

struct Neumaier {
  double sum = 0.0;
  double comp = 0.0;
  void add(double x) {
    double t = sum + x;
    comp += std::abs(sum) >= std::abs(x) ? (sum - t) + x : (x - t) + sum;
    sum = t;
  }
  double value() const { return sum + comp; }
};

std::size_t state_count(const std::vector<std::size_t>& cards, const std::vector<std::size_t>& vars,
                        std::size_t limit) {
  std::size_t n = 1;
  for (auto v : vars) {
    n *= cards[v];
    if (n > limit) {
      throw SizeLimitExceeded("joint state space exceeds " + std::to_string(limit) + " entries");
    }
  }
  return n;
}

double factor_value(const GroundFG& fg, const GroundFactor& f, const std::vector<std::uint32_t>& a) {
  std::size_t idx = 0;
  for (auto rv : f.args) idx = idx * fg.cards[rv] + a[rv];
  return f.table[idx];
}

}  // namespace

JointTable joint(const GroundFG& fg, const OracleOptions& options) {
  std::vector<std::size_t> all(fg.rv_count());
  for (std::size_t i = 0; i < all.size(); ++i) all[i] = i;
  const std::size_t states = state_count(fg.cards, all, options.max_states);
  JointTable jt;
  jt.cards = fg.cards;
  jt.probs.resize(states);
  std::vector<std::uint32_t> a(fg.rv_count(), 0);
  Neumaier z;
  for (std::size_t s = 0; s < states; ++s) {
    double p = 1.0;
    for (const auto& f : fg.factors) {
      p *= factor_value(fg, f, a);
      if (p == 0.0) break;
    }
    jt.probs[s] = p;
    z.add(p);
    for (std::size_t k = a.size(); k-- > 0;) {
      if (++a[k] < fg.cards[k]) break;
      a[k] = 0;
    }
  }
  const double zv = z.value();
  if (!(zv > 0.0)) throw InconsistentEvidence("model assigns zero mass to every state");
  for (double& p : jt.probs) p /= zv;
  return jt;
}

std::vector<double> oracle_query(const GroundFG& fg, const GroundQuery& query,
                                 const OracleOptions& options) {
  const GroundFG mutilated = query.dos.empty() ? GroundFG{} : ground_do(fg, query.dos);
  const GroundFG& g = query.dos.empty() ? fg : mutilated;

  std::vector<std::uint32_t> a(g.rv_count(), 0);
  std::vector<bool> fixed(g.rv_count(), false);
  for (auto [rv, v] : query.evidence) {
    if (fixed[rv] && a[rv] != v) throw InconsistentEvidence("contradictory evidence");
    fixed[rv] = true;
    a[rv] = v;
  }
  std::vector<std::size_t> free;
  for (std::size_t i = 0; i < g.rv_count(); ++i) {
    if (!fixed[i]) free.push_back(i);
  }
  const std::size_t states = state_count(g.cards, free, options.max_states);

  std::size_t out_size = 1;
  for (auto t : query.targets) out_size *= g.cards[t];
  std::vector<Neumaier> acc(out_size);
  for (std::size_t s = 0; s < states; ++s) {
    double p = 1.0;
    for (const auto& f : g.factors) {
      p *= factor_value(g, f, a);
      if (p == 0.0) break;
    }
    if (p != 0.0) {
      std::size_t ti = 0;
      for (auto t : query.targets) ti = ti * g.cards[t] + a[t];
      acc[ti].add(p);
    }
    for (std::size_t k = free.size(); k-- > 0;) {
      const auto rv = free[k];
      if (++a[rv] < g.cards[rv]) break;
      a[rv] = 0;
    }
  }
  Neumaier z;
  for (const auto& c : acc) z.add(c.value());
  const double zv = z.value();
  if (!(zv > 0.0)) throw InconsistentEvidence("the conditioning event has probability zero");
  std::vector<double> out(out_size);
  for (std::size_t i = 0; i < out_size; ++i) out[i] = acc[i].value() / zv;
  return out;
}

Distribution oracle_query(const PCFG& model, const Query& query, const OracleOptions& options) {
  check_query(model, query);
  const GroundFG fg = ground(model);
  return make_distribution(model, target_rvs(query), oracle_query(fg, resolve(fg, query), options));
}

std::vector<GroundFactorKey> grounding_multiset(const PCFG& model) {
  const GroundFG fg = ground(model);
  std::vector<GroundFactorKey> out;
  out.reserve(fg.factors.size());
  for (const auto& f : fg.factors) {
    GroundFactorKey k;
    for (auto rv : f.args) k.args.push_back(fg.rvs[rv]);
    k.child = f.child;
    k.table = f.table;
    out.push_back(std::move(k));
  }
  std::sort(out.begin(), out.end());
  return out;
}

PCFG as_propositional_model(const PCFG& model, const GroundFG& fg) {
  PCFG out;
  out.ranges = model.ranges;
  for (std::size_t i = 0; i < fg.rv_count(); ++i) {
    const auto& rv = fg.rvs[i];
    PRV p;
    p.name = model.prvs[rv.prv].name;
    for (std::size_t k = 0; k < rv.args.size(); ++k) {
      p.name += '.' + model.domains[model.prvs[rv.prv].params[k]].constants[rv.args[k]];
    }
    p.range = model.prvs[rv.prv].range;
    out.prvs.push_back(std::move(p));
  }
  std::map<std::string, std::size_t> counters;
  for (const auto& f : fg.factors) {
    Parfactor pf;
    pf.id = f.source + "." + std::to_string(++counters[f.source]);
    pf.args = f.args;
    pf.child = f.child;
    pf.constraint = Constraint::top({});
    pf.table = f.table;
    pf.mutilated = f.mutilated;
    out.parfactors.push_back(std::move(pf));
  }
  return out;
}

}  // namespace pcfg
