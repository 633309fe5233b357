#include "pcfg/dsep.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <deque>
#include <numeric>
#include <random>
#include <set>

#include "pcfg/error.hpp"

namespace pcfg {

namespace {

std::vector<std::vector<std::size_t>> factors_of(const GroundFG& fg) {
  std::vector<std::vector<std::size_t>> out(fg.rv_count());
  for (std::size_t f = 0; f < fg.factors.size(); ++f) {
    for (auto a : fg.factors[f].args) out[a].push_back(f);
  }
  return out;
}

// RVs that are in z or have a descendant in z.
std::vector<bool> z_or_ancestor(const GroundFG& fg, std::span<const std::size_t> z) {
  std::vector<std::vector<std::size_t>> parent_factors(fg.rv_count());
  for (std::size_t f = 0; f < fg.factors.size(); ++f) {
    const auto& gf = fg.factors[f];
    if (gf.child) parent_factors[gf.args[*gf.child]].push_back(f);
  }
  std::vector<bool> mark(fg.rv_count(), false);
  std::vector<std::size_t> stack(z.begin(), z.end());
  for (auto v : z) mark[v] = true;
  while (!stack.empty()) {
    const auto v = stack.back();
    stack.pop_back();
    for (auto f : parent_factors[v]) {
      const auto& gf = fg.factors[f];
      for (std::size_t k = 0; k < gf.args.size(); ++k) {
        if (k == *gf.child || mark[gf.args[k]]) continue;
        mark[gf.args[k]] = true;
        stack.push_back(gf.args[k]);
      }
    }
  }
  return mark;
}

std::vector<std::size_t> resolve_set(const GroundFG& fg, const PCFG& model,
                                     const std::vector<GroundRV>& rvs) {
  std::vector<std::size_t> out;
  for (const auto& rv : rvs) {
    auto i = fg.find(rv);
    if (!i) throw QueryError("'" + model.rv_name(rv) + "' is not part of the grounding");
    out.push_back(*i);
  }
  return out;
}

void check_disjoint(const GroundFG& fg, std::span<const std::size_t> x,
                    std::span<const std::size_t> y, std::span<const std::size_t> z) {
  std::vector<int> owner(fg.rv_count(), -1);
  int k = 0;
  for (auto set : {x, y, z}) {
    for (auto v : set) {
      if (owner[v] >= 0 && owner[v] != k) {
        throw QueryError("'" + fg.names[v] + "' appears in more than one set");
      }
      owner[v] = k;
    }
    ++k;
  }
}

}  // namespace

bool d_separated(const GroundFG& fg, std::span<const std::size_t> x,
                 std::span<const std::size_t> y, std::span<const std::size_t> z) {
  check_disjoint(fg, x, y, z);
  const auto adj = factors_of(fg);
  const auto opens = z_or_ancestor(fg, z);
  std::vector<bool> in_z(fg.rv_count(), false), in_y(fg.rv_count(), false);
  for (auto v : z) in_z[v] = true;
  for (auto v : y) in_y[v] = true;

  // RV states carry the factor they were reached from as its child (or
  // kNone): stepping back into that factor would revisit it on one path.
  constexpr std::size_t kNone = static_cast<std::size_t>(-1);
  std::set<std::pair<std::size_t, std::size_t>> seen_rv;
  // Factor states: entered from a parent (0) or from the child (1).
  std::vector<std::array<bool, 2>> seen_factor(fg.factors.size(), {false, false});
  std::deque<std::pair<std::size_t, std::size_t>> rvs;
  std::deque<std::pair<std::size_t, int>> factors;
  auto visit = [&](std::size_t v, std::size_t via) {
    if (in_z[v] || seen_rv.count({v, kNone}) || !seen_rv.insert({v, via}).second) return;
    rvs.emplace_back(v, via);
  };
  for (auto v : x) visit(v, kNone);

  while (!rvs.empty() || !factors.empty()) {
    if (!rvs.empty()) {
      const auto [v, via] = rvs.front();
      rvs.pop_front();
      if (in_y[v]) return false;
      for (auto f : adj[v]) {
        if (f == via) continue;
        const auto& gf = fg.factors[f];
        const int from_child = gf.child && gf.args[*gf.child] == v ? 1 : 0;
        if (!seen_factor[f][from_child]) {
          seen_factor[f][from_child] = true;
          factors.emplace_back(f, from_child);
        }
      }
      continue;
    }
    const auto [f, from_child] = factors.front();
    factors.pop_front();
    const auto& gf = fg.factors[f];
    if (!gf.child) {
      for (auto a : gf.args) visit(a, kNone);
      continue;
    }
    const std::size_t c = gf.args[*gf.child];
    const bool to_parents = from_child == 1 || opens[c];
    if (from_child == 0) visit(c, f);
    if (to_parents) {
      for (std::size_t k = 0; k < gf.args.size(); ++k) {
        if (k != *gf.child) visit(gf.args[k], kNone);
      }
    }
  }
  return true;
}

bool d_separated(const PCFG& model, const DsepQuery& q) {
  const GroundFG fg = ground(model);
  return d_separated(fg, resolve_set(fg, model, q.x), resolve_set(fg, model, q.y),
                     resolve_set(fg, model, q.z));
}

CiCheck check_ci(const GroundFG& fg, std::span<const std::size_t> x,
                 std::span<const std::size_t> y, std::span<const std::size_t> z, double tolerance) {
  check_disjoint(fg, x, y, z);
  const JointTable jt = joint(fg);
  auto card = [&](std::span<const std::size_t> set) {
    std::size_t n = 1;
    for (auto v : set) n *= fg.cards[v];
    return n;
  };
  const std::size_t nx = card(x), ny = card(y), nz = card(z);
  std::vector<double> pxyz(nx * ny * nz, 0.0);
  std::vector<std::uint32_t> a(fg.rv_count(), 0);
  auto index = [&](std::span<const std::size_t> set) {
    std::size_t i = 0;
    for (auto v : set) i = i * fg.cards[v] + a[v];
    return i;
  };
  for (double p : jt.probs) {
    pxyz[(index(z) * nx + index(x)) * ny + index(y)] += p;
    for (std::size_t k = a.size(); k-- > 0;) {
      if (++a[k] < fg.cards[k]) break;
      a[k] = 0;
    }
  }
  CiCheck out;
  for (std::size_t zi = 0; zi < nz; ++zi) {
    const double* block = pxyz.data() + zi * nx * ny;
    double pz = 0.0;
    for (std::size_t i = 0; i < nx * ny; ++i) pz += block[i];
    if (pz <= 0.0) {
      ++out.zero_mass;
      continue;
    }
    std::vector<double> px(nx, 0.0), py(ny, 0.0);
    for (std::size_t xi = 0; xi < nx; ++xi) {
      for (std::size_t yi = 0; yi < ny; ++yi) {
        px[xi] += block[xi * ny + yi];
        py[yi] += block[xi * ny + yi];
      }
    }
    for (std::size_t xi = 0; xi < nx; ++xi) {
      for (std::size_t yi = 0; yi < ny; ++yi) {
        const double dev = std::abs(block[xi * ny + yi] / pz - (px[xi] / pz) * (py[yi] / pz));
        out.max_deviation = std::max(out.max_deviation, dev);
      }
    }
  }
  out.holds = out.max_deviation <= tolerance;
  return out;
}

CiCheck check_ci(const PCFG& model, const DsepQuery& q, double tolerance) {
  const GroundFG fg = ground(model);
  return check_ci(fg, resolve_set(fg, model, q.x), resolve_set(fg, model, q.y),
                  resolve_set(fg, model, q.z), tolerance);
}

DsepCiReport dsep_implies_ci_check(const PCFG& model, std::span<const DsepQuery> triples,
                                   double tolerance) {
  const GroundFG fg = ground(model);
  DsepCiReport report;
  for (const auto& q : triples) {
    ++report.triples;
    const auto x = resolve_set(fg, model, q.x);
    const auto y = resolve_set(fg, model, q.y);
    const auto z = resolve_set(fg, model, q.z);
    if (!d_separated(fg, x, y, z)) continue;
    ++report.separated;
    const CiCheck ci = check_ci(fg, x, y, z, tolerance);
    report.max_deviation = std::max(report.max_deviation, ci.max_deviation);
    if (!ci.holds) {
      ++report.violations;
      report.messages.push_back(describe(model, q) + ": deviation " + std::to_string(ci.max_deviation));
    }
  }
  return report;
}

std::vector<DsepQuery> random_triples(const PCFG& model, std::size_t count, std::uint64_t seed) {
  const GroundFG fg = ground(model);
  std::vector<DsepQuery> out;
  if (fg.rv_count() < 2) return out;
  std::mt19937_64 rng(seed);
  std::vector<std::size_t> idx(fg.rv_count());
  std::iota(idx.begin(), idx.end(), 0);
  for (std::size_t t = 0; t < count; ++t) {
    std::shuffle(idx.begin(), idx.end(), rng);
    const std::size_t n = idx.size();
    const std::size_t nx = 1 + rng() % std::min<std::size_t>(2, n - 1);
    const std::size_t ny = 1 + rng() % std::min<std::size_t>(2, n - nx);
    const std::size_t nz = rng() % (std::min<std::size_t>(3, n - nx - ny) + 1);
    DsepQuery q;
    std::size_t k = 0;
    for (std::size_t i = 0; i < nx; ++i) q.x.push_back(fg.rvs[idx[k++]]);
    for (std::size_t i = 0; i < ny; ++i) q.y.push_back(fg.rvs[idx[k++]]);
    for (std::size_t i = 0; i < nz; ++i) q.z.push_back(fg.rvs[idx[k++]]);
    out.push_back(std::move(q));
  }
  return out;
}

std::string describe(const PCFG& model, const DsepQuery& q) {
  auto join = [&](const std::vector<GroundRV>& rvs) {
    std::string s;
    for (std::size_t i = 0; i < rvs.size(); ++i) {
      if (i) s += ", ";
      s += model.rv_name(rvs[i]);
    }
    return s;
  };
  std::string s = join(q.x) + " ; " + join(q.y);
  if (!q.z.empty()) s += " | " + join(q.z);
  return s;
}

}  // namespace pcfg
