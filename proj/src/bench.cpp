#include "pcfg/bench.hpp"

#include <algorithm>
#include <chrono>
#include <charconv>
#include <cmath>
#include <cstdio>

#include "pcfg/error.hpp"
#include "pcfg/ground_ve.hpp"
#include "pcfg/grounding.hpp"
#include "pcfg/intervention.hpp"
#include "pcfg/io.hpp"

namespace pcfg {

namespace {

using Clock = std::chrono::steady_clock;

bool is_ground_engine(const std::string& engine) { return engine == kEngineVeFg || engine == kEngineVeBn; }

Distribution run_engine(const std::string& engine, const PCFG& model, const Query& query) {
  if (engine == kEngineLve) return lci_query(model, query);
  GroundOptions limits;
  limits.max_ground_size = std::size_t{1} << 26;
  GroundFG fg = ground(model, limits);
  if (engine == kEngineVeBn) fg = to_bayes_net(fg);
  return make_distribution(model, target_rvs(query), ve_query(fg, resolve(fg, query)));
}

std::string csv_field(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  return out + "\"";
}

std::size_t to_size(std::string_view s) {
  while (!s.empty() && s.front() == ' ') s.remove_prefix(1);
  while (!s.empty() && s.back() == ' ') s.remove_suffix(1);
  std::size_t v = 0;
  auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc() || ptr != s.data() + s.size() || v == 0) {
    throw Error("invalid size '" + std::string(s) + "'");
  }
  return v;
}

}  // namespace

double checksum(const Distribution& dist) {
  double s = 0.0;
  for (std::size_t i = 0; i < dist.probs.size(); ++i) s += static_cast<double>(i + 1) * dist.probs[i];
  return s;
}

std::vector<std::size_t> parse_sizes(std::string_view text) {
  std::vector<std::string_view> parts;
  while (true) {
    auto comma = text.find(',');
    parts.push_back(text.substr(0, comma));
    if (comma == std::string_view::npos) break;
    text.remove_prefix(comma + 1);
  }
  std::vector<std::size_t> out;
  for (std::size_t i = 0; i < parts.size(); ++i) {
    auto p = parts[i];
    while (!p.empty() && p.front() == ' ') p.remove_prefix(1);
    if (p != "...") {
      out.push_back(to_size(p));
      continue;
    }
    if (out.size() < 2 || i + 1 >= parts.size()) throw Error("'...' needs two sizes before and one after");
    const std::size_t a = out[out.size() - 2], b = out.back(), last = to_size(parts[i + 1]);
    if (b <= a || b % a != 0) throw Error("'...' expects a geometric sequence");
    const std::size_t ratio = b / a;
    for (std::size_t v = b * ratio; v <= last; v *= ratio) out.push_back(v);
    if (out.back() != last) throw Error("'...' end is not part of the sequence");
    ++i;
  }
  return out;
}

BenchReport run_bench(std::string_view template_text, const BenchOptions& options) {
  BenchReport report;
  for (auto d : options.sizes) {
    ParseOptions po;
    po.template_size = d;
    const PCFG model = parse_model(template_text, po);
    const Query query = parse_query(model, options.query);
    std::optional<std::pair<std::string, double>> reference;
    for (const auto& engine : options.engines) {
      if (engine != kEngineVeFg && engine != kEngineVeBn && engine != kEngineLve) {
        throw Error("unknown engine '" + engine + "'");
      }
      BenchRecord rec{engine, d, options.query, std::nullopt, std::nullopt};
      if (is_ground_engine(engine) && d > options.ground_cutoff) {
        report.records.push_back(std::move(rec));
        continue;
      }
      std::vector<double> times;
      Distribution result;
      for (std::size_t r = 0; r < std::max<std::size_t>(1, options.repeats); ++r) {
        const auto start = Clock::now();
        result = run_engine(engine, model, query);
        times.push_back(std::chrono::duration<double>(Clock::now() - start).count());
      }
      std::sort(times.begin(), times.end());
      rec.seconds = times[times.size() / 2];
      rec.checksum = checksum(result);
      if (!reference) {
        reference.emplace(engine, *rec.checksum);
      } else if (std::abs(*rec.checksum - reference->second) >
                 options.checksum_tolerance * std::max(1.0, std::abs(reference->second))) {
        char buf[160];
        std::snprintf(buf, sizeof buf, "d=%zu: %s checksum %.17g differs from %s %.17g", d,
                      engine.c_str(), *rec.checksum, reference->first.c_str(), reference->second);
        report.mismatches.emplace_back(buf);
      }
      report.records.push_back(std::move(rec));
    }
  }
  return report;
}

std::string to_csv(const BenchReport& report) {
  std::string out = "engine,d,query,seconds,checksum\n";
  char buf[64];
  for (const auto& r : report.records) {
    out += r.engine + "," + std::to_string(r.d) + "," + csv_field(r.query) + ",";
    if (r.seconds) {
      std::snprintf(buf, sizeof buf, "%.6e,%.15g\n", *r.seconds, *r.checksum);
      out += buf;
    } else {
      out += "skipped,\n";
    }
  }
  return out;
}

}  // namespace pcfg
