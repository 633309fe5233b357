#include <doctest.h>

#include <algorithm>
#include <random>

#include "pcfg/error.hpp"
#include "pcfg/model.hpp"
#include "pcfg/random_model.hpp"
#include "support.hpp"

using namespace pcfg;

namespace {

bool mentions(const std::vector<Violation>& vs, const std::string& needle) {
  return std::any_of(vs.begin(), vs.end(), [&](const Violation& v) { return v.message.find(needle) != std::string::npos; });
}

PCFG two_node() {
  PCFG m;
  m.add_domain("X", {"x1", "x2", "x3"});
  m.add_range("bool", {"f", "t"});
  m.add_prv("A", {}, "bool");
  m.add_prv("B", {"X"}, "bool");
  m.add_parfactor("ga", {"A"}, "A", {0.4, 0.6});
  m.add_parfactor("gb", {"A", "B"}, "B", {0.9, 0.1, 0.2, 0.8});
  return m;
}

}  // namespace

TEST_SUITE("model") {
  TEST_CASE("constraint TOP materializes the Cartesian product in sorted order") {
    PCFG m;
    m.add_domain("E", {"a", "b", "c"});
    m.add_domain("T", {"t1", "t2"});
    const auto c = Constraint::top({0, 1});
    CHECK(c.is_top());
    CHECK(c.count(m.domains) == 6);
    const auto t = c.tuples(m.domains);
    REQUIRE(t.size() == 6);
    CHECK(std::is_sorted(t.begin(), t.end()));
    CHECK(t.front() == Tuple{0, 0});
    CHECK(t.back() == Tuple{2, 1});
    CHECK(c.contains(Tuple{1, 1}));
  }

  TEST_CASE("explicit constraints are sorted and deduplicated") {
    const auto c = Constraint::of({0, 1}, {{2, 0}, {0, 1}, {2, 0}});
    CHECK_FALSE(c.is_top());
    CHECK(c.explicit_rows() == std::vector<ConstId>{0, 1, 2, 0});
    CHECK(c.contains(Tuple{2, 0}));
    CHECK_FALSE(c.contains(Tuple{1, 0}));
    CHECK_THROWS_AS(Constraint::of({0, 1}, {}), ModelError);
    CHECK_THROWS_AS(Constraint::of({0, 1}, {{1}}), ModelError);
  }

  TEST_CASE("builders reject unknown and duplicate names") {
    PCFG m = two_node();
    CHECK_THROWS_AS(m.add_domain("X", {"q"}), ModelError);
    CHECK_THROWS_AS(m.add_prv("C", {"Nope"}, "bool"), ModelError);
    CHECK_THROWS_AS(m.add_prv("C", {}, "nope"), ModelError);
    CHECK_THROWS_AS(m.add_parfactor("gc", {"A", "Zed"}, "A", {1, 1}), ModelError);
    CHECK(validate(m).empty());
  }

  TEST_CASE("groundings and parents") {
    const PCFG m = test::fixture("employees.pcfg");
    const std::size_t train = *m.find_prv("Train"), comp = *m.find_prv("Comp");
    const auto& g2 = m.parfactors[*m.find_parfactor("g2")];
    CHECK(groundings(m, train, g2.constraint).size() == 8);
    CHECK(groundings(m, *m.find_prv("Qual"), g2.constraint).size() == 2);
    CHECK(grounding_count(m, g2) == 8);
    CHECK(parents(m, comp) == std::vector<std::size_t>{*m.find_parfactor("g3")});
    CHECK(child(m, *m.find_parfactor("g4")) == *m.find_prv("Rev"));
    CHECK(m.rv_name(GroundRV{train, {1, 0}}) == "Train(bob,t1)");
    CHECK(m.prv_signature(train) == "Train(E,T)");
  }

  TEST_CASE("validate reports structural problems") {
    SUBCASE("non-positive potential") {
      PCFG m = two_node();
      m.parfactors[0].table[0] = 0.0;
      CHECK(mentions(validate(m), "non-positive"));
      m.parfactors[0].mutilated = true;
      CHECK_FALSE(has_errors(validate(m)));
    }
    SUBCASE("wrong table size") {
      PCFG m = two_node();
      m.parfactors[1].table.pop_back();
      CHECK(mentions(validate(m), "expected 4"));
    }
    SUBCASE("cycle") {
      PCFG m = two_node();
      m.add_parfactor("back", {"B", "A"}, "A", {1, 1, 1, 1});
      CHECK(has_errors(validate(m)));
    }
    SUBCASE("unused prv") {
      PCFG m = two_node();
      m.add_prv("C", {}, "bool");
      CHECK(mentions(validate(m), "not used"));
    }
    SUBCASE("repeated logvar") {
      PCFG m = two_node();
      m.prvs[1].params = {0, 0};
      CHECK(mentions(validate(m), "repeats logvar"));
    }
  }

  TEST_CASE("normalization check") {
    PCFG m = two_node();
    CHECK(is_row_normalized(m, m.parfactors[1]));
    m.parfactors[1].table[0] = 2.0;
    CHECK_FALSE(is_row_normalized(m, m.parfactors[1]));
    ValidateOptions vo;
    vo.check_normalization = true;
    const auto vs = validate(m, vo);
    CHECK_FALSE(has_errors(vs));
    CHECK(mentions(vs, "do not sum to one"));
  }

  TEST_CASE("mixed radix decode matches strides") {
    const std::vector<std::size_t> cards{3, 2, 4};
    const auto strides = strides_for(cards);
    CHECK(strides == std::vector<std::size_t>{8, 4, 1});
    std::vector<std::uint32_t> digits(3);
    for (std::size_t i = 0; i < 24; ++i) {
      decode_index(i, cards, digits);
      std::size_t back = 0;
      for (std::size_t k = 0; k < 3; ++k) back += digits[k] * strides[k];
      CHECK(back == i);
    }
  }

  TEST_CASE("random models are valid and within bounds") {
    for (std::uint64_t seed = 0; seed < 200; ++seed) {
      std::mt19937_64 rng(seed);
      RandomModelOptions opts;
      opts.bn_compatible = seed % 2;
      const PCFG m = random_model(rng, opts);
      CAPTURE(seed);
      CHECK_FALSE(has_errors(validate(m)));
      std::size_t ground_rvs = 0;
      for (std::size_t p = 0; p < m.prvs.size(); ++p) {
        ground_rvs += groundings(m, p, Constraint::top(m.prvs[p].params)).size();
        CHECK(m.range_size(p) <= opts.max_range);
      }
      CHECK(ground_rvs <= opts.max_ground_rvs);
      CHECK(m.domains.size() <= opts.max_logvars);
      if (opts.bn_compatible) {
        for (const auto& pf : m.parfactors) CHECK(is_row_normalized(m, pf));
      }
    }
  }
}
