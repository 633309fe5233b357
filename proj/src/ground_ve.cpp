#include "pcfg/ground_ve.hpp"

#include <algorithm>
#include <numeric>
#include <set>

#include "pcfg/error.hpp"
#include "pcfg/factor.hpp"
#include "pcfg/intervention.hpp"

namespace pcfg {

namespace {

std::vector<bool> observed_mask(const GroundFG& fg, const GroundQuery& query) {
  std::vector<bool> mask(fg.rv_count(), false);
  for (auto [rv, v] : query.evidence) mask[rv] = true;
  return mask;
}

std::size_t fill_in(const std::vector<std::set<std::size_t>>& adj, std::size_t v) {
  std::size_t missing = 0;
  for (auto a = adj[v].begin(); a != adj[v].end(); ++a) {
    for (auto b = std::next(a); b != adj[v].end(); ++b) {
      if (!adj[*a].count(*b)) ++missing;
    }
  }
  return missing;
}

}  // namespace

std::vector<std::size_t> choose_order(const GroundFG& fg, const GroundQuery& query,
                                      OrderHeuristic heuristic) {
  const auto observed = observed_mask(fg, query);
  std::vector<bool> keep(fg.rv_count(), false);
  for (auto t : query.targets) keep[t] = true;

  std::vector<std::set<std::size_t>> adj(fg.rv_count());
  for (const auto& f : fg.factors) {
    for (auto a : f.args) {
      if (observed[a]) continue;
      for (auto b : f.args) {
        if (a != b && !observed[b]) adj[a].insert(b);
      }
    }
  }
  std::vector<std::size_t> remaining;
  for (std::size_t i = 0; i < fg.rv_count(); ++i) {
    if (!keep[i] && !observed[i]) remaining.push_back(i);
  }
  std::vector<std::size_t> order;
  order.reserve(remaining.size());
  while (!remaining.empty()) {
    std::size_t best = 0;
    std::size_t best_cost = 0;
    for (std::size_t i = 0; i < remaining.size(); ++i) {
      const std::size_t v = remaining[i];
      const std::size_t cost = heuristic == OrderHeuristic::MinDegree ? adj[v].size() : fill_in(adj, v);
      if (i == 0 || cost < best_cost ||
          (cost == best_cost && fg.names[v] < fg.names[remaining[best]])) {
        best = i;
        best_cost = cost;
      }
    }
    const std::size_t v = remaining[best];
    for (auto a : adj[v]) {
      adj[a].erase(v);
      for (auto b : adj[v]) {
        if (a != b) adj[a].insert(b);
      }
    }
    adj[v].clear();
    order.push_back(v);
    remaining.erase(remaining.begin() + static_cast<std::ptrdiff_t>(best));
  }
  return order;
}

std::vector<double> ve_query(const GroundFG& fg, const GroundQuery& query, const VeOptions& options,
                             VeStats* stats, const std::vector<std::size_t>* order) {
  const GroundFG mutilated = query.dos.empty() ? GroundFG{} : ground_do(fg, query.dos);
  const GroundFG& g = query.dos.empty() ? fg : mutilated;

  std::vector<std::optional<std::uint32_t>> evidence(g.rv_count());
  for (auto [rv, v] : query.evidence) {
    if (evidence[rv] && *evidence[rv] != v) throw InconsistentEvidence("contradictory evidence");
    evidence[rv] = v;
  }

  std::vector<LogFactor> pool;
  pool.reserve(g.factors.size());
  for (const auto& f : g.factors) {
    std::vector<int> vars;
    std::vector<std::size_t> cards;
    for (auto a : f.args) {
      vars.push_back(static_cast<int>(a));
      cards.push_back(g.cards[a]);
    }
    LogFactor lf = LogFactor::from_linear(std::move(vars), std::move(cards), f.table);
    for (auto a : f.args) {
      if (evidence[a]) lf = restrict(lf, static_cast<int>(a), *evidence[a]);
    }
    pool.push_back(std::move(lf));
  }

  VeStats local;
  const auto chosen = order ? *order : choose_order(g, query, options.heuristic);
  for (auto v : chosen) {
    const int var = static_cast<int>(v);
    LogFactor product = LogFactor::scalar(0.0);
    bool touched = false;
    for (std::size_t i = pool.size(); i-- > 0;) {
      if (pool[i].index_of(var) < 0) continue;
      product = multiply(product, pool[i]);
      pool.erase(pool.begin() + static_cast<std::ptrdiff_t>(i));
      touched = true;
    }
    if (!touched) continue;
    local.max_table_size = std::max(local.max_table_size, product.size());
    pool.push_back(sum_out(product, var));
    ++local.eliminated;
  }

  LogFactor acc = LogFactor::scalar(0.0);
  for (const auto& f : pool) acc = multiply(acc, f);
  std::vector<int> target_vars;
  for (auto t : query.targets) {
    const int var = static_cast<int>(t);
    target_vars.push_back(var);
    if (acc.index_of(var) >= 0) continue;
    LogFactor uniform;
    uniform.vars = {var};
    uniform.cards = {g.cards[t]};
    uniform.values.assign(g.cards[t], 0.0);
    acc = multiply(acc, uniform);
  }
  if (acc.vars.size() != target_vars.size()) {
    throw Error("elimination order does not cover every non-target variable");
  }
  local.max_table_size = std::max(local.max_table_size, acc.size());
  if (stats) *stats = local;
  return normalize_exp(reorder(acc, target_vars).values);
}

Distribution ve_query(const PCFG& model, const Query& query, const VeOptions& options) {
  check_query(model, query);
  const GroundFG fg = ground(model);
  return make_distribution(model, target_rvs(query), ve_query(fg, resolve(fg, query), options));
}

bool bayes_net_compatible(const GroundFG& fg) {
  std::vector<std::size_t> parent_count(fg.rv_count(), 0);
  for (const auto& f : fg.factors) {
    if (!f.child) return false;
    ++parent_count[f.args[*f.child]];
  }
  return std::all_of(parent_count.begin(), parent_count.end(), [](std::size_t n) { return n == 1; });
}

GroundFG to_bayes_net(const GroundFG& fg) {
  std::vector<std::size_t> parent_count(fg.rv_count(), 0);
  for (const auto& f : fg.factors) {
    if (!f.child) throw ModelError("factor from '" + f.source + "' has no child");
    ++parent_count[f.args[*f.child]];
  }
  for (std::size_t i = 0; i < fg.rv_count(); ++i) {
    if (parent_count[i] != 1) {
      throw ModelError("'" + fg.names[i] + "' is the child of " + std::to_string(parent_count[i]) +
                       " factors; a Bayesian network needs exactly one");
    }
  }
  GroundFG out = fg;
  for (auto& f : out.factors) {
    std::vector<std::size_t> cards;
    for (auto a : f.args) cards.push_back(fg.cards[a]);
    const auto strides = strides_for(cards);
    const std::size_t c = *f.child;
    const std::size_t step = strides[c];
    const std::size_t block = step * cards[c];
    for (std::size_t base = 0; base < f.table.size(); base += block) {
      for (std::size_t in = 0; in < step; ++in) {
        double sum = 0.0;
        for (std::size_t v = 0; v < cards[c]; ++v) sum += f.table[base + v * step + in];
        if (sum <= 0.0) continue;
        for (std::size_t v = 0; v < cards[c]; ++v) f.table[base + v * step + in] /= sum;
      }
    }
  }
  return out;
}

}  // namespace pcfg
