// Acceptance suite. Prints one PASS/FAIL line per criterion and exits
// non-zero if any selected criterion fails.
//
//   pcfg_acceptance [--criterion all|1|2|3|4|5|6a|6b|7|8] [--models N]
//                   [--fuzz-seconds S]
//
// PCFG_FUZZ_SECONDS overrides the default fuzz duration.

#include <CLI11.hpp>

#include <algorithm>
#include <chrono>
#include <cstdio>
#include <cstdlib>
#include <functional>
#include <iostream>
#include <map>
#include <set>
#include <sstream>

#include "pcfg/bench.hpp"
#include "pcfg/dsep.hpp"
#include "pcfg/ground_ve.hpp"
#include "pcfg/grounding.hpp"
#include "pcfg/intervention.hpp"
#include "pcfg/io.hpp"
#include "pcfg/lifted.hpp"
#include "support.hpp"

namespace {

using namespace pcfg;
using Clock = std::chrono::steady_clock;

// Tolerances and limits.
constexpr double kOracleTol = 1e-9;
constexpr double kTableTol = 1e-9;
constexpr double kCiTol = 1e-9;
constexpr double kCorpusSeconds = 120.0;
constexpr double kLveGrowthLimit = 50.0;
constexpr std::uint64_t kCorpusSeed = 20240101;
constexpr std::uint64_t kBnCorpusSeed = 777000;
constexpr std::size_t kBnCorpusSize = 300;
constexpr std::size_t kTriplesPerModel = 20;

struct Config {
  std::size_t models = 2000;
  double fuzz_seconds = 60.0;
};

struct Outcome {
  bool pass = false;
  std::string detail;
};

double seconds_since(Clock::time_point start) {
  return std::chrono::duration<double>(Clock::now() - start).count();
}

std::string fmt(const char* format, auto... args) {
  char buf[512];
  std::snprintf(buf, sizeof buf, format, args...);
  return buf;
}

const std::vector<test::CorpusItem>& main_corpus(const Config& cfg) {
  static std::vector<test::CorpusItem> items = test::corpus(cfg.models, kCorpusSeed);
  return items;
}

// Runs `f`; an exception counts as a result so that two engines rejecting
// the same query (e.g. zero-probability evidence) still agree.
struct Attempt {
  std::optional<Distribution> dist;
  std::string error;
};

Attempt attempt(const std::function<Distribution()>& f) {
  try {
    return {f(), {}};
  } catch (const InconsistentEvidence&) {
    return {std::nullopt, "inconsistent evidence"};
  }
}

// Compares two attempts; returns the deviation (inf on shape or outcome mismatch).
double deviation(const Attempt& a, const Attempt& b) {
  if (a.dist && b.dist) return max_abs_diff(*a.dist, *b.dist);
  return a.error == b.error && !a.dist && !b.dist ? 0.0 : HUGE_VAL;
}

Outcome criterion1(const Config& cfg) {
  const auto start = Clock::now();
  const auto& items = main_corpus(cfg);
  double worst = 0.0;
  std::size_t with_dos = 0, failures = 0;
  std::string first_failure;
  for (const auto& item : items) {
    if (!item.query.dos.empty()) ++with_dos;
    double dev = HUGE_VAL;
    try {
      dev = deviation(attempt([&] { return lci_query(item.model, item.query); }),
                      attempt([&] { return oracle_query(item.model, item.query); }));
    } catch (const std::exception& e) {
      if (first_failure.empty()) first_failure = fmt("seed %llu: %s", (unsigned long long)item.seed, e.what());
    }
    worst = std::max(worst, dev);
    if (!(dev <= kOracleTol)) {
      ++failures;
      if (first_failure.empty()) first_failure = fmt("seed %llu: deviation %g", (unsigned long long)item.seed, dev);
    }
  }
  const double secs = seconds_since(start);
  Outcome out;
  out.pass = failures == 0 && items.size() >= 1000 && secs < kCorpusSeconds;
  out.detail = fmt("%zu models (%zu with interventions), max |lci - oracle| %.3g (tol %g), %zu failures, %.1f s (limit %.0f s)",
                   items.size(), with_dos, worst, kOracleTol, failures, secs, kCorpusSeconds);
  if (items.size() < 1000) out.detail += "; corpus smaller than 1000";
  if (!first_failure.empty()) out.detail += "; first: " + first_failure;
  return out;
}

Outcome criterion2(const Config& cfg) {
  auto items = main_corpus(cfg);
  RandomModelOptions bn;
  bn.bn_compatible = true;
  for (auto& item : test::corpus(kBnCorpusSize, kBnCorpusSeed, bn)) items.push_back(std::move(item));

  double worst = 0.0;
  std::size_t failures = 0, bn_checked = 0;
  std::string first_failure;
  auto note = [&](const test::CorpusItem& item, const char* what, double dev) {
    worst = std::max(worst, dev);
    if (dev <= kOracleTol) return;
    ++failures;
    if (first_failure.empty()) {
      first_failure = fmt("seed %llu %s: deviation %g", (unsigned long long)item.seed, what, dev);
    }
  };
  for (const auto& item : items) {
    try {
      const Query obs = test::observational(item.query);
      const auto oracle_obs = attempt([&] { return oracle_query(item.model, obs); });
      note(item, "lve", deviation(attempt([&] { return lve_query(item.model, obs); }), oracle_obs));
      note(item, "ve", deviation(attempt([&] { return ve_query(item.model, obs); }), oracle_obs));
      const auto oracle_do = attempt([&] { return oracle_query(item.model, item.query); });
      note(item, "ve+do", deviation(attempt([&] { return ve_query(item.model, item.query); }), oracle_do));

      const GroundFG fg = ground(item.model);
      if (bayes_net_compatible(fg) && test::uniform_row_sums(fg)) {
        ++bn_checked;
        const GroundFG bnet = to_bayes_net(fg);
        const auto targets = target_rvs(item.query);
        note(item, "bn",
             deviation(attempt([&] {
                         return make_distribution(item.model, targets,
                                                  ve_query(bnet, resolve(bnet, item.query)));
                       }),
                       oracle_do));
      }
    } catch (const std::exception& e) {
      note(item, e.what(), HUGE_VAL);
    }
  }
  Outcome out;
  out.pass = failures == 0 && bn_checked > 0;
  out.detail = fmt("%zu models, lve/ve/oracle and ve-on-BN (%zu convertible models) max deviation %.3g (tol %g), %zu failures",
                   items.size(), bn_checked, worst, kOracleTol, failures);
  if (!first_failure.empty()) out.detail += "; first: " + first_failure;
  return out;
}

std::vector<Tuple> tuples_of(const PCFG& m, std::initializer_list<std::pair<const char*, const char*>> names) {
  const auto& e = m.domains[*m.find_domain("E")];
  const auto& t = m.domains[*m.find_domain("T")];
  std::vector<Tuple> out;
  for (auto [a, b] : names) out.push_back({*e.find(a), *t.find(b)});
  std::sort(out.begin(), out.end());
  return out;
}

Outcome criterion3(const Config&) {
  const PCFG model = test::fixture("employees.pcfg");
  const std::size_t train = *model.find_prv("Train");
  const auto& E = model.domains[*model.find_domain("E")];
  const auto& T = model.domains[*model.find_domain("T")];
  const RVGroup bob_t1 = rv_group(model, train, {*E.find("bob"), *T.find("t1")});
  const auto split = split_model(model, std::span(&bob_t1, 1));

  const auto c2 = tuples_of(model, {{"alice", "t1"}, {"alice", "t2"}, {"bob", "t2"}, {"dave", "t1"},
                                    {"dave", "t2"}, {"eve", "t1"}, {"eve", "t2"}});
  const auto c2_split = tuples_of(model, {{"bob", "t1"}});
  std::vector<std::string> problems;
  std::set<std::string> split_ids;
  for (const auto& ev : split.events) {
    split_ids.insert(ev.parfactor);
    if (ev.outside.tuples(model.domains) != c2) problems.push_back(ev.parfactor + " outside constraint differs");
    if (ev.inside.tuples(model.domains) != c2_split) problems.push_back(ev.parfactor + " inside constraint differs");
    const auto pf = split.model.find_parfactor(ev.parfactor);
    const auto off = split.model.find_parfactor(ev.split_off);
    if (!pf || !off) {
      problems.push_back("split parfactors missing for " + ev.parfactor);
      continue;
    }
    if (split.model.parfactors[*pf].constraint.tuples(model.domains) != c2) {
      problems.push_back(ev.parfactor + " constraint in split model differs");
    }
    if (split.model.parfactors[*off].constraint.tuples(model.domains) != c2_split) {
      problems.push_back(ev.split_off + " constraint in split model differs");
    }
  }
  if (split_ids != std::set<std::string>{"g2", "g3"}) problems.push_back("split set is not {g2, g3}");
  if (split.events.size() != 2) problems.push_back(fmt("%zu split events, expected 2", split.events.size()));
  for (const char* id : {"g1", "g4"}) {
    const auto i = split.model.find_parfactor(id);
    if (!i || !split.model.parfactors[*i].constraint.is_top()) problems.push_back(std::string(id) + " lost TOP");
  }

  // Mutilation: the split-off parent of Train(bob,t1) becomes an indicator.
  const std::uint32_t yes = *model.ranges[model.prvs[train].range].find("true");
  const DoAssignment d{bob_t1, yes};
  const PCFG mutilated = mutilate(split.model, std::span(&d, 1));
  std::size_t indicator_rows = 0;
  std::string g2_split_id;
  for (const auto& ev : split.events) {
    if (ev.parfactor == "g2") g2_split_id = ev.split_off;
  }
  if (const auto i = mutilated.find_parfactor(g2_split_id)) {
    const auto& pf = mutilated.parfactors[*i];
    if (!pf.mutilated) problems.push_back(g2_split_id + " not flagged as mutilated");
    // Table over (Qual, Train): Train is the last, binary axis.
    for (std::size_t q = 0; q < 3; ++q) {
      if (pf.table[q * 2 + yes] == 1.0 && pf.table[q * 2 + (1 - yes)] == 0.0) ++indicator_rows;
    }
  } else {
    problems.push_back("split-off g2 missing after mutilation");
  }
  const auto g2 = mutilated.find_parfactor("g2");
  if (!g2 || mutilated.parfactors[*g2].table != model.parfactors[*model.find_parfactor("g2")].table) {
    problems.push_back("g2 (outside part) changed by mutilation");
  }
  for (const auto& pf : mutilated.parfactors) {
    if (pf.mutilated && pf.id != g2_split_id) problems.push_back(pf.id + " unexpectedly mutilated");
  }
  if (indicator_rows != 3) problems.push_back(fmt("%zu of 3 indicator rows exact", indicator_rows));

  Outcome out;
  out.pass = problems.empty();
  out.detail = fmt("split on Train(bob,t1): %zu events, C2 has %zu tuples, C2' = {(bob,t1)}, %zu/3 exact indicator rows",
                   split.events.size(), c2.size(), indicator_rows);
  for (const auto& p : problems) out.detail += "; " + p;
  return out;
}

// Sorted (args, child, table) keys of a ground graph.
std::vector<GroundFactorKey> keys_of(const GroundFG& fg) {
  std::vector<GroundFactorKey> out;
  for (const auto& f : fg.factors) {
    GroundFactorKey k;
    for (auto a : f.args) k.args.push_back(fg.rvs[a]);
    k.child = f.child;
    k.table = f.table;
    out.push_back(std::move(k));
  }
  std::sort(out.begin(), out.end());
  return out;
}

// Largest table difference between two factor multisets with identical
// scopes; inf if the scopes differ.
double multiset_deviation(std::vector<GroundFactorKey> a, std::vector<GroundFactorKey> b) {
  auto by_scope = [](const GroundFactorKey& x, const GroundFactorKey& y) {
    return std::tie(x.args, x.child, x.table) < std::tie(y.args, y.child, y.table);
  };
  std::sort(a.begin(), a.end(), by_scope);
  std::sort(b.begin(), b.end(), by_scope);
  if (a.size() != b.size()) return HUGE_VAL;
  double worst = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (a[i].args != b[i].args || a[i].child != b[i].child || a[i].table.size() != b[i].table.size()) {
      return HUGE_VAL;
    }
    for (std::size_t k = 0; k < a[i].table.size(); ++k) {
      worst = std::max(worst, std::abs(a[i].table[k] - b[i].table[k]));
    }
  }
  return worst;
}

Outcome criterion4(const Config&) {
  std::vector<std::string> problems;
  std::string summary;
  double worst = 0.0;
  for (std::size_t n : {2, 4, 8}) {
    const PCFG model = test::employees_model(n);
    const std::size_t train = *model.find_prv("Train");
    const ConstId t1 = *model.domains[*model.find_domain("T")].find("t1");
    const std::uint32_t yes = *model.range_of(train).find("true");
    const RVGroup group = pattern_group(model, train, {std::nullopt, t1});
    const DoAssignment group_do{group, yes};

    const auto split = split_model(model, std::span(&group, 1));
    std::set<std::string> affected;
    for (const auto& pf : model.parfactors) {
      if (std::find(pf.args.begin(), pf.args.end(), train) != pf.args.end()) affected.insert(pf.id);
    }
    std::map<std::string, std::size_t> per_pf;
    for (const auto& ev : split.events) ++per_pf[ev.parfactor];
    bool one_each = per_pf.size() == affected.size();
    for (const auto& [id, count] : per_pf) one_each = one_each && count == 1 && affected.count(id);
    if (!one_each) problems.push_back(fmt("|E|=%zu: split events are not one per affected parfactor", n));

    // Tables: lifted group mutilation vs n individual ground interventions.
    const PCFG lifted = mutilate(split.model, std::span(&group_do, 1));
    const GroundFG fg = ground(model);
    std::vector<std::pair<std::size_t, std::uint32_t>> individual;
    for (const auto& args : group.tuples) individual.emplace_back(*fg.find(GroundRV{train, args}), yes);
    const GroundFG ground_mut = ground_do(fg, individual);
    const double table_dev = multiset_deviation(grounding_multiset(lifted), keys_of(ground_mut));
    worst = std::max(worst, table_dev);
    if (!(table_dev <= kTableTol)) problems.push_back(fmt("|E|=%zu: table deviation %g", n, table_dev));

    // Queries: one group do vs n individual dos, lifted and ground.
    Query q;
    q.targets.push_back(rv_group(model, *model.find_prv("Rev"), {}));
    q.dos.push_back(group_do);
    Query qi = q;
    qi.dos.clear();
    for (const auto& args : group.tuples) qi.dos.push_back({rv_group(model, train, args), yes});
    const auto lifted_group = lci_query(model, q);
    const auto lifted_individual = lci_query(model, qi);
    GroundQuery gq;
    gq.targets = {*fg.find(GroundRV{q.targets[0].prv, {}})};
    const auto ground_individual = ve_query(ground_mut, gq);
    const auto ground_dist = make_distribution(model, target_rvs(q), ground_individual);
    const double qdev = std::max(max_abs_diff(lifted_group, ground_dist), max_abs_diff(lifted_individual, ground_dist));
    worst = std::max(worst, qdev);
    if (!(qdev <= kTableTol)) problems.push_back(fmt("|E|=%zu: query deviation %g", n, qdev));
    summary += fmt("%s|E|=%zu: %zu splits", summary.empty() ? "" : ", ", n, split.events.size());
  }
  Outcome out;
  out.pass = problems.empty();
  out.detail = summary + fmt(", max deviation %.3g (tol %g)", worst, kTableTol);
  for (const auto& p : problems) out.detail += "; " + p;
  return out;
}

Outcome criterion5(const Config&) {
  const auto start = Clock::now();
  BenchOptions opts;
  opts.repeats = 5;
  const auto report = run_bench(test::fixture_text("bench_template.pcfg"), opts);
  std::map<std::string, std::map<std::size_t, double>> secs;
  for (const auto& r : report.records) {
    if (r.seconds) secs[r.engine][r.d] = *r.seconds;
  }
  std::vector<std::string> problems;
  for (const auto& m : report.mismatches) problems.push_back(m);
  const auto& lve = secs[kEngineLve];
  double ratio = HUGE_VAL;
  if (lve.count(8) && lve.count(4096)) ratio = lve.at(4096) / lve.at(8);
  if (!(ratio < kLveGrowthLimit)) problems.push_back(fmt("LVE growth ratio %.1f", ratio));
  for (const char* engine : {kEngineVeFg, kEngineVeBn}) {
    double prev = -1.0;
    std::size_t points = 0;
    for (const auto& [d, s] : secs[engine]) {
      if (d < 64) continue;
      ++points;
      if (s <= prev) problems.push_back(fmt("%s not increasing at d=%zu", engine, d));
      prev = s;
    }
    if (points < 2) problems.push_back(std::string(engine) + " has fewer than two points at d >= 64");
  }
  std::size_t both = 0;
  for (std::size_t d = 8; d <= 256; d *= 2) both += secs[kEngineVeFg].count(d) && lve.count(d);
  Outcome out;
  out.pass = problems.empty();
  out.detail = fmt("checksums agree at %zu shared sizes, LVE t(4096)/t(8) = %.1f (limit %.0f), VE times for d>=64: %.2e %.2e %.2e s, total %.1f s",
                   both, ratio, kLveGrowthLimit, secs[kEngineVeFg][64], secs[kEngineVeFg][128],
                   secs[kEngineVeFg][256], seconds_since(start));
  for (const auto& p : problems) out.detail += "; " + p;
  return out;
}

Outcome criterion6a(const Config&) {
  const PCFG model = test::fixture("employees.pcfg");
  const auto q = parse_dsep(model, "Qual(t1) ; Comp(bob) | Train(bob,t1)");
  const bool sep = d_separated(model, q);
  const auto ci = check_ci(model, q, kCiTol);
  Outcome out;
  out.pass = sep;
  out.detail = fmt("%s: %s; numeric CI %s (max deviation %.4g)", describe(model, q).c_str(),
                   sep ? "d-separated" : "not d-separated", ci.holds ? "holds" : "fails", ci.max_deviation);
  return out;
}

Outcome criterion6b(const Config&) {
  RandomModelOptions bn;
  bn.bn_compatible = true;
  const auto items = test::corpus(kBnCorpusSize, kBnCorpusSeed, bn);
  std::size_t triples = 0, separated = 0, violations = 0;
  double worst = 0.0;
  std::string first;
  for (const auto& item : items) {
    const auto qs = random_triples(item.model, kTriplesPerModel, item.seed);
    const auto r = dsep_implies_ci_check(item.model, qs, kCiTol);
    triples += r.triples;
    separated += r.separated;
    violations += r.violations;
    worst = std::max(worst, r.max_deviation);
    if (first.empty() && !r.messages.empty()) first = r.messages.front();
  }
  // Not part of the verdict: row-normalized models where an RV may have
  // several parent factors. Summing such an RV out leaves a non-constant
  // function of its parents, which the path rules do not account for.
  RandomModelOptions multi;
  multi.normalized_prob = 1.0;
  multi.extra_parent_factor_prob = 0.5;
  std::size_t multi_sep = 0, multi_viol = 0;
  for (const auto& item : test::corpus(kBnCorpusSize, kBnCorpusSeed, multi)) {
    const auto r = dsep_implies_ci_check(item.model, random_triples(item.model, kTriplesPerModel, item.seed), kCiTol);
    multi_sep += r.separated;
    multi_viol += r.violations;
  }
  Outcome out;
  out.pass = violations == 0 && separated > 0;
  out.detail = fmt("%zu Bayesian-network-compatible row-normalized models, %zu triples, %zu d-separated, %zu CI violations, max deviation %.3g (tol %g)",
                   items.size(), triples, separated, violations, worst, kCiTol);
  if (!first.empty()) out.detail += "; first: " + first;
  out.detail += fmt("; informational, models with several parent factors per RV: %zu of %zu d-separated triples violate CI",
                    multi_viol, multi_sep);
  return out;
}

Outcome criterion7(const Config& cfg) {
  std::size_t split_audits = 0, shatter_audits = 0, failures = 0;
  std::string first;
  auto fail = [&](const std::string& what) {
    ++failures;
    if (first.empty()) first = what;
  };
  LciOptions lo;
  lo.audit = true;
  LveOptions vo;
  vo.audit_shatter = true;
  // Criteria 1 and 2: every corpus query, interventional and observational.
  for (const auto& item : main_corpus(cfg)) {
    try {
      const auto r = lci_run(item.model, item.query, lo);
      split_audits += r.audited_splits;
      shatter_audits += r.stats.audited_shatters;
      const auto v = lve_run(item.model, test::observational(item.query), vo);
      shatter_audits += v.stats.audited_shatters;
    } catch (const InconsistentEvidence&) {
    } catch (const std::exception& e) {
      fail(fmt("seed %llu: %s", (unsigned long long)item.seed, e.what()));
    }
  }
  // Criteria 3 and 4: the explicit splits.
  auto check_split = [&](const PCFG& model, const RVGroup& g, const std::string& label) {
    const auto split = split_model(model, std::span(&g, 1));
    ++split_audits;
    if (grounding_multiset(model) != grounding_multiset(split.model)) fail(label + ": grounding changed");
  };
  {
    const PCFG employees = test::fixture("employees.pcfg");
    const std::size_t train = *employees.find_prv("Train");
    check_split(employees, rv_group(employees, train, {*employees.domains[0].find("bob"), *employees.domains[1].find("t1")}),
                "employees");
  }
  for (std::size_t n : {2, 4, 8}) {
    const PCFG m = test::employees_model(n);
    const std::size_t train = *m.find_prv("Train");
    check_split(m, pattern_group(m, train, {std::nullopt, *m.domains[1].find("t1")}), fmt("|E|=%zu", n));
  }
  // Criterion 5: the lifted bench query at every size.
  const std::string tmpl = test::fixture_text("bench_template.pcfg");
  for (std::size_t d : BenchOptions{}.sizes) {
    ParseOptions po;
    po.template_size = d;
    const PCFG m = parse_model(tmpl, po);
    try {
      const auto r = lci_run(m, parse_query(m, BenchOptions{}.query), lo);
      split_audits += r.audited_splits;
      shatter_audits += r.stats.audited_shatters;
    } catch (const std::exception& e) {
      fail(fmt("bench d=%zu: %s", d, e.what()));
    }
  }
  Outcome out;
  out.pass = failures == 0 && split_audits > 0 && shatter_audits > 0;
  out.detail = fmt("%zu split audits and %zu shatter audits, %zu grounding mismatches", split_audits,
                   shatter_audits, failures);
  if (!first.empty()) out.detail += "; first: " + first;
  return out;
}

// Random edits of a seed text: byte flips, deletions, duplicated slices,
// punctuation and number injection.
std::string mutate(const std::string& seed, std::mt19937_64& rng) {
  static const std::vector<std::string> snippets = {
      "{", "}", "(", ")", ",", ";", "=", "..", "@1..@d", "@", "|", ":", "parfactor", "child", "constraint",
      "domain", "range", "prv", "@mutilated", "TOP", "-1", "1e308", "nan", "inf", "0", "\n", "#", "\"",
      "\xff", "Qual(T)", "E", "(low,low)=0.5;", "{}", "()"};
  std::string s = seed;
  const int edits = 1 + static_cast<int>(rng() % 8);
  for (int e = 0; e < edits; ++e) {
    const std::size_t pos = s.empty() ? 0 : rng() % (s.size() + 1);
    switch (rng() % 6) {
      case 0:
        if (pos < s.size()) s[pos] = static_cast<char>(rng() % 256);
        break;
      case 1:
        s.erase(pos, rng() % 16);
        break;
      case 2: {
        const std::size_t from = s.empty() ? 0 : rng() % s.size();
        s.insert(pos, s.substr(from, rng() % 32));
        break;
      }
      case 3:
        s.insert(pos, snippets[rng() % snippets.size()]);
        break;
      case 4:
        s.resize(pos);
        break;
      default:
        s.insert(pos, std::to_string(static_cast<long long>(rng() % 2000000) - 1000000));
        break;
    }
  }
  return s;
}

Outcome criterion8(const Config& cfg) {
  std::vector<std::string> problems;
  // Round trip: canonical text is a fixed point.
  std::size_t round_trips = 0;
  auto round_trip = [&](const std::string& label, const std::string& text, std::optional<std::size_t> size) {
    ParseOptions po;
    po.template_size = size;
    const std::string once = serialize_model(parse_model(text, po));
    const std::string twice = serialize_model(parse_model(once));
    ++round_trips;
    if (once != twice) problems.push_back(label + " is not byte-stable");
  };
  round_trip("employees", test::fixture_text("employees.pcfg"), std::nullopt);
  round_trip("bench template d=8", test::fixture_text("bench_template.pcfg"), 8);
  for (const auto& item : test::corpus(200, 5150)) {
    round_trip(fmt("random model %llu", (unsigned long long)item.seed), serialize_model(item.model), std::nullopt);
  }

  // Fuzz the model, query and d-sep parsers with mutated inputs.
  const std::vector<std::string> seeds = {test::fixture_text("employees.pcfg"), test::fixture_text("bench_template.pcfg"),
                                          serialize_model(test::corpus(1, 99).front().model)};
  const PCFG employees = test::fixture("employees.pcfg");
  const std::vector<std::string> query_seeds = {"P(Rev | Comp(alice)=high; do(Train(bob,t1)=true))",
                                                "P(Comp(E), Qual(t1) | do(Train(E,t1)=false))",
                                                "Qual(t1) ; Comp(bob) | Train(bob,t1)"};
  std::mt19937_64 rng(8);
  std::size_t inputs = 0, accepted = 0, crashes = 0;
  const auto start = Clock::now();
  while (seconds_since(start) < cfg.fuzz_seconds) {
    for (int batch = 0; batch < 64; ++batch) {
      ++inputs;
      const bool model_input = rng() % 4 != 0;
      const auto& seed = model_input ? seeds[rng() % seeds.size()] : query_seeds[rng() % query_seeds.size()];
      const std::string text = mutate(seed, rng);
      try {
        if (model_input) {
          ParseOptions po;
          po.template_size = 1 + rng() % 16;
          const PCFG m = parse_model(text, po);
          serialize_model(m);
        } else if (rng() % 2) {
          parse_query(employees, text);
        } else {
          parse_dsep(employees, text);
        }
        ++accepted;
      } catch (const Error&) {
        // Rejected input with a diagnostic is the expected outcome.
      } catch (const std::exception& e) {
        ++crashes;
        if (crashes == 1) problems.push_back(std::string("unexpected exception: ") + e.what());
      }
    }
  }
  Outcome out;
  out.pass = problems.empty();
  out.detail = fmt("%zu byte-stable round trips; fuzzed %zu inputs for %.0f s (%zu accepted, %zu non-library exceptions)",
                   round_trips, inputs, cfg.fuzz_seconds, accepted, crashes);
  for (const auto& p : problems) out.detail += "; " + p;
  return out;
}

struct Criterion {
  const char* id;
  const char* title;
  Outcome (*run)(const Config&);
};

const Criterion kCriteria[] = {
    {"1", "oracle equivalence", criterion1},
    {"2", "lifted/ground parity", criterion2},
    {"3", "example split and mutilation", criterion3},
    {"4", "group intervention equivalence", criterion4},
    {"5", "scaling experiment", criterion5},
    {"6a", "d-separation of the example triple", criterion6a},
    {"6b", "d-separation implies numeric CI", criterion6b},
    {"7", "semantics preservation audits", criterion7},
    {"8", "parser round trip and fuzzing", criterion8},
};

}  // namespace

int main(int argc, char** argv) {
  Config cfg;
  if (const char* env = std::getenv("PCFG_FUZZ_SECONDS")) cfg.fuzz_seconds = std::atof(env);
  std::string which = "all";
  CLI::App app{"Acceptance suite"};
  app.add_option("--criterion", which, "Criterion id or 'all'");
  app.add_option("--models", cfg.models, "Corpus size for criteria 1, 2 and 7");
  app.add_option("--fuzz-seconds", cfg.fuzz_seconds, "Parser fuzzing duration");
  CLI11_PARSE(app, argc, argv);

  bool all_pass = true, matched = false;
  for (const auto& c : kCriteria) {
    if (which != "all" && which != c.id) continue;
    matched = true;
    Outcome o;
    const auto start = Clock::now();
    try {
      o = c.run(cfg);
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    all_pass = all_pass && o.pass;
    std::printf("[%s] criterion %s (%s): %s [%.1f s]\n", o.pass ? "PASS" : "FAIL", c.id, c.title, o.detail.c_str(),
                seconds_since(start));
    std::fflush(stdout);
  }
  if (!matched) {
    std::fprintf(stderr, "unknown criterion '%s'\n", which.c_str());
    return 2;
  }
  return all_pass ? 0 : 1;
}
