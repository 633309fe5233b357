// Command-line front end: query, dsep, bench, validate, ground, format, random.

#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <random>
#include <sstream>

#include "pcfg/bench.hpp"
#include "pcfg/dsep.hpp"
#include "pcfg/ground_ve.hpp"
#include "pcfg/grounding.hpp"
#include "pcfg/intervention.hpp"
#include "pcfg/io.hpp"
#include "pcfg/random_model.hpp"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitInput = 1;
constexpr int kExitSize = 2;
constexpr int kExitMismatch = 3;

pcfg::PCFG load(const std::string& path, std::optional<std::size_t> size, bool validate = true) {
  pcfg::ParseOptions po;
  po.template_size = size;
  po.validate = validate;
  try {
    return pcfg::parse_model(pcfg::read_file(path), po);
  } catch (const pcfg::ParseError& e) {
    throw pcfg::Error(path + ":" + e.what());
  }
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Exact lifted causal inference on parametric causal factor graphs"};
  app.require_subcommand(1);

  std::string model_path, text, engine = "lci";
  std::optional<std::size_t> size;
  bool stats = false;

  auto* query = app.add_subcommand("query", "Print P(targets | evidence, do(...))");
  query->add_option("model", model_path, "Model file (.pcfg)")->required();
  query->add_option("query", text, "Query, e.g. \"P(Rev | do(Train(bob,t1)=true))\"")->required();
  query->add_option("--engine", engine, "lci, ve or oracle")
      ->check(CLI::IsMember({"lci", "ve", "oracle"}));
  query->add_option("--size", size, "Domain size for template models");
  query->add_flag("--stats", stats, "Print engine statistics to stderr");

  bool verify_ci = false;
  auto* dsep = app.add_subcommand("dsep", "Ground d-separation test");
  dsep->add_option("model", model_path, "Model file")->required();
  dsep->add_option("sets", text, "\"X1, X2 ; Y | Z1, Z2\"")->required();
  dsep->add_option("--size", size, "Domain size for template models");
  dsep->add_flag("--verify-ci", verify_ci, "Also check the factorization numerically");

  std::string sizes = "8,16,...,4096", out_path;
  pcfg::BenchOptions bench_opts;
  std::string engines = "ve_fg,ve_bn,lve_pcfg";
  auto* bench = app.add_subcommand("bench", "Runtime scaling over a template's domain size");
  bench->add_option("template", model_path, "Template model with a {@1..@d} domain")->required();
  bench->add_option("--sizes", sizes, "Sizes, e.g. 8,16,...,4096");
  bench->add_option("--query", bench_opts.query, "Query evaluated at every size");
  bench->add_option("--engines", engines, "Comma-separated subset of ve_fg,ve_bn,lve_pcfg");
  bench->add_option("--repeats", bench_opts.repeats, "Runs per cell; the median is reported");
  bench->add_option("--ground-cutoff", bench_opts.ground_cutoff, "Largest d for ground engines");
  bench->add_option("--out", out_path, "CSV output path (default: stdout)");

  bool check_norm = false;
  auto* validate = app.add_subcommand("validate", "Report structural problems");
  validate->add_option("model", model_path, "Model file")->required();
  validate->add_option("--size", size, "Domain size for template models");
  validate->add_flag("--check-normalization", check_norm, "Warn about rows not summing to one");

  auto* ground = app.add_subcommand("ground", "Print the grounding as a parameterless model");
  ground->add_option("model", model_path, "Model file")->required();
  ground->add_option("--size", size, "Domain size for template models");

  auto* format = app.add_subcommand("format", "Print the canonical form of a model");
  format->add_option("model", model_path, "Model file")->required();
  format->add_option("--size", size, "Domain size for template models");

  std::uint64_t seed = 1;
  bool bn = false;
  auto* random = app.add_subcommand("random", "Print a random model and query");
  random->add_option("--seed", seed, "Generator seed");
  random->add_flag("--bn", bn, "Bayesian-network compatible, row-normalized model");

  CLI11_PARSE(app, argc, argv);

  try {
    if (*query) {
      const auto model = load(model_path, size);
      const auto q = pcfg::parse_query(model, text);
      pcfg::Distribution dist;
      if (engine == "lci") {
        auto r = pcfg::lci_run(model, q);
        dist = std::move(r.distribution);
        if (stats) {
          std::cerr << "splits " << r.splits.size() << "\nlifted_eliminations " << r.stats.lifted_eliminations
                    << "\npropositional_eliminations " << r.stats.propositional_eliminations
                    << "\nlogvar_groundings " << r.stats.logvar_groundings << "\nshatter_splits "
                    << r.stats.shatter_splits << "\nmax_table_size " << r.stats.max_table_size << "\n";
        }
      } else if (engine == "ve") {
        dist = pcfg::ve_query(model, q);
      } else {
        dist = pcfg::oracle_query(model, q);
      }
      std::cout << pcfg::serialize_distribution(dist);
    } else if (*dsep) {
      const auto model = load(model_path, size);
      const auto q = pcfg::parse_dsep(model, text);
      const bool sep = pcfg::d_separated(model, q);
      std::cout << (sep ? "d-separated" : "not d-separated") << "\n";
      if (verify_ci) {
        const auto ci = pcfg::check_ci(model, q);
        std::cout << "numeric CI " << (ci.holds ? "holds" : "fails") << " (max deviation "
                  << ci.max_deviation << ")\n";
        if (sep && !ci.holds) std::cout << "warning: potentials are incompatible with the structure\n";
      }
    } else if (*bench) {
      bench_opts.sizes = pcfg::parse_sizes(sizes);
      bench_opts.engines.clear();
      std::stringstream ss(engines);
      for (std::string e; std::getline(ss, e, ',');) bench_opts.engines.push_back(e);
      const auto report = pcfg::run_bench(pcfg::read_file(model_path), bench_opts);
      const auto csv = pcfg::to_csv(report);
      if (out_path.empty()) {
        std::cout << csv;
      } else {
        std::ofstream(out_path) << csv;
      }
      for (const auto& m : report.mismatches) std::cerr << "checksum mismatch: " << m << "\n";
      if (!report.mismatches.empty()) return kExitMismatch;
    } else if (*validate) {
      const auto model = load(model_path, size, false);
      pcfg::ValidateOptions vo;
      vo.check_normalization = check_norm;
      const auto violations = pcfg::validate(model, vo);
      for (const auto& v : violations) {
        std::cout << (v.severity == pcfg::Severity::Error ? "error: " : "warning: ") << v.message << "\n";
      }
      if (pcfg::has_errors(violations)) return kExitInput;
      std::cout << "ok\n";
    } else if (*ground) {
      const auto model = load(model_path, size);
      const auto fg = pcfg::ground(model);
      std::cout << pcfg::serialize_model(pcfg::as_propositional_model(model, fg));
    } else if (*format) {
      std::cout << pcfg::serialize_model(load(model_path, size));
    } else if (*random) {
      std::mt19937_64 rng(seed);
      pcfg::RandomModelOptions ro;
      ro.bn_compatible = bn;
      const auto model = pcfg::random_model(rng, ro);
      std::cout << pcfg::serialize_model(model);
      std::cout << "# query: " << pcfg::serialize_query(model, pcfg::random_query(model, rng)) << "\n";
    }
  } catch (const pcfg::SizeLimitExceeded& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitSize;
  } catch (const pcfg::Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitInput;
  }
  return kExitOk;
}
