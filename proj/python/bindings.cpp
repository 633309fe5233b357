// Python bindings: parse models, run queries with every engine, test
// d-separation and run the scaling benchmark.

#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <random>

#include "pcfg/bench.hpp"
#include "pcfg/dsep.hpp"
#include "pcfg/ground_ve.hpp"
#include "pcfg/grounding.hpp"
#include "pcfg/intervention.hpp"
#include "pcfg/io.hpp"
#include "pcfg/random_model.hpp"

namespace py = pybind11;
using namespace pcfg;

namespace {

PCFG parse(const std::string& text, std::optional<std::size_t> size) {
  ParseOptions po;
  po.template_size = size;
  return parse_model(text, po);
}

py::dict to_dict(const Distribution& d) {
  py::dict out;
  out["variables"] = d.variables;
  out["values"] = d.values;
  out["probs"] = d.probs;
  return out;
}

py::dict stats_dict(const LiftedStats& s) {
  py::dict out;
  out["lifted_eliminations"] = s.lifted_eliminations;
  out["propositional_eliminations"] = s.propositional_eliminations;
  out["logvar_groundings"] = s.logvar_groundings;
  out["shatter_splits"] = s.shatter_splits;
  out["max_table_size"] = s.max_table_size;
  return out;
}

Distribution run_query(const PCFG& m, const std::string& text, const std::string& engine) {
  const Query q = parse_query(m, text);
  if (engine == "lci") return lci_query(m, q);
  if (engine == "ve") return ve_query(m, q);
  if (engine == "oracle") return oracle_query(m, q);
  throw Error("unknown engine '" + engine + "' (expected lci, ve or oracle)");
}

}  // namespace

PYBIND11_MODULE(_pcfg, mod) {
  mod.doc() = "Exact lifted causal inference on parametric causal factor graphs";

  auto error = py::register_exception<Error>(mod, "Error", PyExc_RuntimeError);
  py::register_exception<ParseError>(mod, "ParseError", error.ptr());
  py::register_exception<ModelError>(mod, "ModelError", error.ptr());
  py::register_exception<QueryError>(mod, "QueryError", error.ptr());
  py::register_exception<InconsistentEvidence>(mod, "InconsistentEvidence", error.ptr());
  py::register_exception<SizeLimitExceeded>(mod, "SizeLimitExceeded", error.ptr());
  py::register_exception<PreconditionError>(mod, "PreconditionError", error.ptr());

  py::class_<PCFG>(mod, "Model")
      .def_static("parse", &parse, py::arg("text"), py::arg("size") = std::nullopt,
                  "Parse model text; `size` instantiates {@1..@d} templates.")
      .def_static(
          "load", [](const std::string& path, std::optional<std::size_t> size) { return parse(read_file(path), size); },
          py::arg("path"), py::arg("size") = std::nullopt)
      .def("to_text", &serialize_model, "Canonical model text.")
      .def_property_readonly("domains",
                             [](const PCFG& m) {
                               py::dict d;
                               for (const auto& dom : m.domains) d[py::str(dom.name)] = dom.constants;
                               return d;
                             })
      .def_property_readonly("prvs",
                             [](const PCFG& m) {
                               std::vector<std::string> out;
                               for (std::size_t p = 0; p < m.prvs.size(); ++p) out.push_back(m.prv_signature(p));
                               return out;
                             })
      .def_property_readonly("parfactors",
                             [](const PCFG& m) {
                               std::vector<std::string> out;
                               for (const auto& pf : m.parfactors) out.push_back(pf.id);
                               return out;
                             })
      .def(
          "validate",
          [](const PCFG& m, bool check_normalization) {
            ValidateOptions vo;
            vo.check_normalization = check_normalization;
            std::vector<std::pair<std::string, std::string>> out;
            for (const auto& v : validate(m, vo)) {
              out.emplace_back(v.severity == Severity::Error ? "error" : "warning", v.message);
            }
            return out;
          },
          py::arg("check_normalization") = false, "List of (severity, message) pairs.")
      .def("ground_size",
           [](const PCFG& m) {
             const GroundFG fg = ground(m);
             return std::make_pair(fg.rv_count(), fg.factors.size());
           })
      .def("__repr__", [](const PCFG& m) {
        return "<pcfg.Model " + std::to_string(m.prvs.size()) + " prvs, " + std::to_string(m.parfactors.size()) +
               " parfactors>";
      });

  mod.def(
      "query",
      [](const PCFG& m, const std::string& text, const std::string& engine) {
        return to_dict(run_query(m, text, engine));
      },
      py::arg("model"), py::arg("query"), py::arg("engine") = "lci",
      "Answer `P(targets | evidence; do(...))`; returns variables, values and probs.");

  mod.def(
      "lci",
      [](const PCFG& m, const std::string& text, bool audit) {
        LciOptions lo;
        lo.audit = audit;
        const auto r = lci_run(m, parse_query(m, text), lo);
        py::dict out = to_dict(r.distribution);
        std::vector<py::dict> splits;
        for (const auto& ev : r.splits) {
          py::dict s;
          s["parfactor"] = ev.parfactor;
          s["split_off"] = ev.split_off;
          s["outside"] = ev.outside.count(m.domains);
          s["inside"] = ev.inside.count(m.domains);
          splits.push_back(s);
        }
        out["splits"] = splits;
        out["stats"] = stats_dict(r.stats);
        return out;
      },
      py::arg("model"), py::arg("query"), py::arg("audit") = false,
      "Lifted causal inference with split events and engine statistics.");

  mod.def(
      "d_separated", [](const PCFG& m, const std::string& sets) { return d_separated(m, parse_dsep(m, sets)); },
      py::arg("model"), py::arg("sets"), "Ground d-separation for `X ; Y | Z`.");

  mod.def(
      "check_ci",
      [](const PCFG& m, const std::string& sets, double tolerance) {
        const auto r = check_ci(m, parse_dsep(m, sets), tolerance);
        py::dict out;
        out["holds"] = r.holds;
        out["max_deviation"] = r.max_deviation;
        out["zero_mass"] = r.zero_mass;
        return out;
      },
      py::arg("model"), py::arg("sets"), py::arg("tolerance") = 1e-9,
      "Numeric check of P(X,Y|Z) = P(X|Z) P(Y|Z).");

  mod.def(
      "bench",
      [](const std::string& template_text, const std::string& sizes, const std::string& query,
         std::vector<std::string> engines, std::size_t repeats, std::size_t ground_cutoff) {
        BenchOptions opts;
        opts.sizes = parse_sizes(sizes);
        if (!query.empty()) opts.query = query;
        if (!engines.empty()) opts.engines = std::move(engines);
        opts.repeats = repeats;
        opts.ground_cutoff = ground_cutoff;
        BenchReport report;
        {
          py::gil_scoped_release release;
          report = run_bench(template_text, opts);
        }
        std::vector<py::dict> rows;
        for (const auto& r : report.records) {
          py::dict row;
          row["engine"] = r.engine;
          row["d"] = r.d;
          row["query"] = r.query;
          row["seconds"] = r.seconds;
          row["checksum"] = r.checksum;
          rows.push_back(row);
        }
        py::dict out;
        out["records"] = rows;
        out["mismatches"] = report.mismatches;
        out["csv"] = to_csv(report);
        return out;
      },
      py::arg("template_text"), py::arg("sizes") = "8,16,...,4096", py::arg("query") = "",
      py::arg("engines") = std::vector<std::string>{}, py::arg("repeats") = 3, py::arg("ground_cutoff") = 256,
      "Time every engine on a template across domain sizes.");

  mod.def(
      "random_model",
      [](std::uint64_t seed, bool bn_compatible) {
        std::mt19937_64 rng(seed);
        RandomModelOptions ro;
        ro.bn_compatible = bn_compatible;
        PCFG m = random_model(rng, ro);
        const std::string q = serialize_query(m, random_query(m, rng));
        return std::make_pair(std::move(m), q);
      },
      py::arg("seed"), py::arg("bn_compatible") = false, "A random valid model and a random query for it.");
}
