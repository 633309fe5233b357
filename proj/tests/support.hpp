#pragma once

// Helpers shared by the unit and acceptance tests.

#include <cmath>
#include <cstdint>
#include <random>
#include <string>
#include <vector>

#include "pcfg/grounding.hpp"
#include "pcfg/io.hpp"
#include "pcfg/model.hpp"
#include "pcfg/query.hpp"
#include "pcfg/random_model.hpp"

#ifndef PCFG_FIXTURE_DIR
#error "PCFG_FIXTURE_DIR must point at tests/fixtures"
#endif

namespace pcfg::test {

inline std::string fixture_path(const std::string& name) {
  return std::string(PCFG_FIXTURE_DIR) + "/" + name;
}

inline std::string fixture_text(const std::string& name) { return read_file(fixture_path(name)); }

inline PCFG fixture(const std::string& name) { return parse_model(fixture_text(name)); }

/// The employee example model with `employees` constants e1..en in E.
inline PCFG employees_model(std::size_t employees) {
  std::string text = fixture_text("employees.pcfg");
  const std::string from = "domain E = {alice, bob, dave, eve}";
  text.replace(text.find(from), from.size(), "domain E = {@1..@d}");
  ParseOptions po;
  po.template_size = employees;
  return parse_model(text, po);
}

struct CorpusItem {
  std::uint64_t seed = 0;
  PCFG model;
  Query query;
};

/// Deterministic corpus of random models with one random query each.
inline std::vector<CorpusItem> corpus(std::size_t count, std::uint64_t base_seed,
                                      const RandomModelOptions& mo = {},
                                      const RandomQueryOptions& qo = {}) {
  std::vector<CorpusItem> out;
  out.reserve(count);
  for (std::size_t i = 0; i < count; ++i) {
    const std::uint64_t seed = base_seed + i;
    std::mt19937_64 rng(seed);
    CorpusItem item;
    item.seed = seed;
    item.model = random_model(rng, mo);
    item.query = random_query(item.model, rng, qo);
    out.push_back(std::move(item));
  }
  return out;
}

/// Query without its interventions.
inline Query observational(Query q) {
  q.dos.clear();
  return q;
}

/// True iff every factor's child rows share one sum, so CPT rescaling keeps
/// the joint distribution unchanged.
inline bool uniform_row_sums(const GroundFG& fg, double tolerance = 1e-9) {
  for (const auto& f : fg.factors) {
    if (!f.child) return false;
    const std::size_t c = fg.cards[f.args[*f.child]];
    std::vector<std::size_t> cards;
    for (auto a : f.args) cards.push_back(fg.cards[a]);
    const auto strides = strides_for(cards);
    const std::size_t stride = strides[*f.child];
    double first = -1.0;
    for (std::size_t i = 0; i < f.table.size(); ++i) {
      if ((i / stride) % c != 0) continue;
      double s = 0.0;
      for (std::size_t k = 0; k < c; ++k) s += f.table[i + k * stride];
      if (first < 0.0) first = s;
      if (std::abs(s - first) > tolerance * std::max(1.0, first)) return false;
    }
  }
  return true;
}

}  // namespace pcfg::test
