#include <doctest.h>

#include "pcfg/bench.hpp"
#include "pcfg/error.hpp"
#include "support.hpp"

using namespace pcfg;

TEST_SUITE("bench") {
  TEST_CASE("size lists") {
    CHECK(parse_sizes("8,16,...,4096") ==
          std::vector<std::size_t>{8, 16, 32, 64, 128, 256, 512, 1024, 2048, 4096});
    CHECK(parse_sizes("3, 5, 9") == std::vector<std::size_t>{3, 5, 9});
    CHECK(parse_sizes("2,6,...,54") == std::vector<std::size_t>{2, 6, 18, 54});
    CHECK_THROWS_AS(parse_sizes("8,...,64"), Error);
    CHECK_THROWS_AS(parse_sizes("8,16,...,100"), Error);
    CHECK_THROWS_AS(parse_sizes("8,x"), Error);
    CHECK_THROWS_AS(parse_sizes("0"), Error);
  }

  TEST_CASE("checksum weights entries by position") {
    Distribution d;
    d.probs = {0.5, 0.25, 0.25};
    CHECK(checksum(d) == doctest::Approx(0.5 + 0.5 + 0.75));
  }

  TEST_CASE("engines agree and ground engines stop at the cutoff") {
    BenchOptions opts;
    opts.sizes = {4, 8, 16};
    opts.repeats = 1;
    opts.ground_cutoff = 8;
    const auto report = run_bench(test::fixture_text("bench_template.pcfg"), opts);
    CHECK(report.mismatches.empty());
    REQUIRE(report.records.size() == 9);
    for (const auto& r : report.records) {
      CAPTURE(r.engine);
      CAPTURE(r.d);
      const bool skipped = r.engine != std::string(kEngineLve) && r.d > 8;
      CHECK(r.seconds.has_value() != skipped);
    }
    const std::string csv = to_csv(report);
    CHECK(csv.rfind("engine,d,query,seconds,checksum\n", 0) == 0);
    CHECK(csv.find("ve_fg,16,\"P(Rev | Comp(e1)=high; do(Train(e1,t1)=true))\",skipped,\n") != std::string::npos);
  }

  TEST_CASE("unknown engine") {
    BenchOptions opts;
    opts.sizes = {4};
    opts.engines = {"magic"};
    CHECK_THROWS_AS(run_bench(test::fixture_text("bench_template.pcfg"), opts), Error);
  }
}
