#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <string_view>

#include "pcfg/dsep.hpp"
#include "pcfg/error.hpp"
#include "pcfg/model.hpp"
#include "pcfg/query.hpp"

namespace pcfg {

struct SourcePos {
  std::size_t line = 1;
  std::size_t column = 1;
};

/// Syntax or validation error with the position it refers to. what() reads
/// "line:column: message".
class ParseError : public Error {
 public:
  ParseError(SourcePos pos, const std::string& message);

  SourcePos pos() const { return pos_; }
  const std::string& message() const { return message_; }

 private:
  SourcePos pos_;
  std::string message_;
};

struct ParseOptions {
  /// Size substituted for `@1..@d` domain placeholders. Templates fail to
  /// parse without it.
  std::optional<std::size_t> template_size;
  /// Run validate() and report its errors as ParseError.
  bool validate = true;
};

/// Parses the line-oriented model format:
///
///   domain E = {alice, bob}        # or {@1..@d} in templates
///   range tri = {low, medium, high}
///   prv Comp(E) : tri
///   parfactor g4 (Comp(E), Rev) child Rev [constraint TOP | constraint {(bob)}] [@mutilated] {
///     (low,low)=0.9; ...
///   }
///
/// Every table row must appear exactly once.
PCFG parse_model(std::string_view text, const ParseOptions& options = {});

/// True if the text declares a `{@1..@d}` domain.
bool is_template(std::string_view text);

/// `P(Rev | Comp(alice)=high; do(Train(bob,t1)=true))`. Terms may name a
/// logvar instead of a constant (`Train(E,t1)`) to denote all groundings.
Query parse_query(const PCFG& model, std::string_view text);

/// Query text that parse_query reads back to the same query. Groups that
/// are not a single RV or a one-pattern set are written RV by RV.
std::string serialize_query(const PCFG& model, const Query& query);

/// `X1, X2 ; Y | Z1, Z2` with ground or lifted terms; Z may be omitted.
DsepQuery parse_dsep(const PCFG& model, std::string_view text);

/// Canonical text: declaration order, shortest round-trip numbers.
std::string serialize_model(const PCFG& model);

/// One `value<TAB>probability` line per entry, 12 significant digits. Joint
/// values over several targets are joined with ','.
std::string serialize_distribution(const Distribution& dist);

/// Shortest decimal that parses back to the same double.
std::string format_number(double value);

/// Reads a whole file; throws Error if it cannot be opened.
std::string read_file(const std::string& path);

}  // namespace pcfg
