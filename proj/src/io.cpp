#include "pcfg/io.hpp"

#include <cctype>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <map>
#include <set>
#include <sstream>

namespace pcfg {

ParseError::ParseError(SourcePos pos, const std::string& message)
    : Error(std::to_string(pos.line) + ":" + std::to_string(pos.column) + ": " + message),
      pos_(pos),
      message_(message) {}

namespace {

enum class Tok { Ident, Number, Punct, End };

struct Token {
  Tok kind = Tok::End;
  std::string text;
  SourcePos pos;
};

bool ident_start(char c) { return std::isalpha(static_cast<unsigned char>(c)) || c == '_'; }
bool ident_char(char c) {
  return std::isalnum(static_cast<unsigned char>(c)) || c == '_' || c == '.' || c == '\'';
}
bool digit(char c) { return c >= '0' && c <= '9'; }

std::vector<Token> tokenize(std::string_view s) {
  std::vector<Token> out;
  std::size_t i = 0, line = 1, col = 1;
  auto advance = [&](std::size_t n) {
    for (std::size_t k = 0; k < n && i < s.size(); ++k, ++i) {
      if (s[i] == '\n') {
        ++line;
        col = 1;
      } else {
        ++col;
      }
    }
  };
  while (i < s.size()) {
    const char c = s[i];
    if (c == ' ' || c == '\t' || c == '\r' || c == '\n') {
      advance(1);
      continue;
    }
    if (c == '#') {
      while (i < s.size() && s[i] != '\n') advance(1);
      continue;
    }
    const SourcePos pos{line, col};
    auto at = [&](std::size_t k) { return i + k < s.size() ? s[i + k] : '\0'; };
    if (ident_start(c)) {
      std::size_t n = 1;
      // A '.' directly followed by another '.' ends the identifier (range syntax).
      while (ident_char(at(n)) && !(at(n) == '.' && at(n + 1) == '.')) ++n;
      out.push_back({Tok::Ident, std::string(s.substr(i, n)), pos});
      advance(n);
      continue;
    }
    const bool signed_number = (c == '-' || c == '+') && (digit(at(1)) || (at(1) == '.' && digit(at(2))));
    if (digit(c) || (c == '.' && digit(at(1))) || signed_number) {
      std::size_t n = signed_number ? 1 : 0;
      while (digit(at(n))) ++n;
      if (at(n) == '.' && digit(at(n + 1))) {
        ++n;
        while (digit(at(n))) ++n;
      }
      if (at(n) == 'e' || at(n) == 'E') {
        std::size_t m = n + 1;
        if (at(m) == '+' || at(m) == '-') ++m;
        if (digit(at(m))) {
          while (digit(at(m))) ++m;
          n = m;
        }
      }
      out.push_back({Tok::Number, std::string(s.substr(i, n)), pos});
      advance(n);
      continue;
    }
    if (c == '.' && at(1) == '.') {
      out.push_back({Tok::Punct, "..", pos});
      advance(2);
      continue;
    }
    if (std::string_view("={}(),;:|@").find(c) != std::string_view::npos) {
      out.push_back({Tok::Punct, std::string(1, c), pos});
      advance(1);
      continue;
    }
    std::string shown = std::isprint(static_cast<unsigned char>(c))
                            ? std::string("'") + c + "'"
                            : "byte 0x" + [&] {
                                char buf[8];
                                std::snprintf(buf, sizeof buf, "%02x", static_cast<unsigned char>(c));
                                return std::string(buf);
                              }();
    throw ParseError(pos, "unexpected character " + shown);
  }
  out.push_back({Tok::End, "", {line, col}});
  return out;
}

class Cursor {
 public:
  explicit Cursor(std::vector<Token> tokens) : toks_(std::move(tokens)) {}

  const Token& peek(std::size_t k = 0) const { return toks_[std::min(pos_ + k, toks_.size() - 1)]; }
  const Token& next() {
    const Token& t = peek();
    if (pos_ < toks_.size() - 1) ++pos_;
    return t;
  }
  bool at_end() const { return peek().kind == Tok::End; }
  bool is(std::string_view punct) const { return peek().kind == Tok::Punct && peek().text == punct; }
  bool is_word(std::string_view word) const {
    return peek().kind == Tok::Ident && peek().text == word;
  }
  bool accept(std::string_view punct) {
    if (!is(punct)) return false;
    next();
    return true;
  }
  void expect(std::string_view punct) {
    if (!accept(punct)) fail("expected '" + std::string(punct) + "'");
  }
  const Token& ident(const char* what) {
    if (peek().kind != Tok::Ident) fail(std::string("expected ") + what);
    return next();
  }
  /// Identifier or number, used for constants and range values.
  const Token& name(const char* what) {
    if (peek().kind != Tok::Ident && peek().kind != Tok::Number) fail(std::string("expected ") + what);
    return next();
  }
  [[noreturn]] void fail(const std::string& msg) const {
    const Token& t = peek();
    const std::string found = t.kind == Tok::End ? "end of input" : "'" + t.text + "'";
    throw ParseError(t.pos, msg + ", found " + found);
  }

 private:
  std::vector<Token> toks_;
  std::size_t pos_ = 0;
};

std::string lowercase(std::string s) {
  for (auto& c : s) c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
  return s;
}

class ModelParser {
 public:
  ModelParser(std::string_view text, const ParseOptions& options)
      : cur_(tokenize(text)), options_(options) {}

  PCFG run() {
    while (!cur_.at_end()) {
      if (cur_.is_word("domain")) {
        domain();
      } else if (cur_.is_word("range")) {
        range();
      } else if (cur_.is_word("prv")) {
        prv();
      } else if (cur_.is_word("parfactor")) {
        parfactor();
      } else {
        cur_.fail("expected 'domain', 'range', 'prv' or 'parfactor'");
      }
    }
    if (options_.validate) {
      for (const auto& v : validate(m_)) {
        if (v.severity != Severity::Error) continue;
        const SourcePos pos = v.parfactor && *v.parfactor < pf_pos_.size() ? pf_pos_[*v.parfactor]
                                                                            : SourcePos{1, 1};
        throw ParseError(pos, v.message);
      }
    }
    return std::move(m_);
  }

 private:
  void domain() {
    const SourcePos at = cur_.next().pos;
    const std::string name = cur_.ident("domain name").text;
    cur_.expect("=");
    cur_.expect("{");
    std::vector<std::string> constants;
    if (cur_.is("@")) {
      cur_.next();
      if (cur_.peek().kind != Tok::Number) cur_.fail("expected a number after '@'");
      const auto lo = integer(cur_.next());
      cur_.expect("..");
      cur_.expect("@");
      std::size_t hi = 0;
      if (cur_.peek().kind == Tok::Number) {
        hi = integer(cur_.next());
      } else {
        const Token& t = cur_.ident("template size");
        if (!options_.template_size) {
          throw ParseError(t.pos, "template placeholder '@" + t.text + "' needs a size");
        }
        hi = *options_.template_size;
      }
      if (hi < lo || hi - lo > 1'000'000) throw ParseError(at, "invalid template range");
      const std::string prefix = lowercase(name);
      for (std::size_t k = lo; k <= hi; ++k) constants.push_back(prefix + std::to_string(k));
    } else if (!cur_.is("}")) {
      do {
        constants.push_back(cur_.name("constant").text);
      } while (cur_.accept(","));
    }
    cur_.expect("}");
    guard(at, [&] { m_.add_domain(name, std::move(constants)); });
  }

  void range() {
    const SourcePos at = cur_.next().pos;
    const std::string name = cur_.ident("range name").text;
    cur_.expect("=");
    cur_.expect("{");
    std::vector<std::string> values;
    if (!cur_.is("}")) {
      do {
        values.push_back(cur_.name("range value").text);
      } while (cur_.accept(","));
    }
    cur_.expect("}");
    guard(at, [&] { m_.add_range(name, std::move(values)); });
  }

  void prv() {
    const SourcePos at = cur_.next().pos;
    const std::string name = cur_.ident("prv name").text;
    std::vector<std::string> params;
    if (cur_.accept("(")) {
      do {
        params.push_back(cur_.ident("logvar").text);
      } while (cur_.accept(","));
      cur_.expect(")");
    }
    cur_.expect(":");
    const std::string range = cur_.ident("range name").text;
    guard(at, [&] { m_.add_prv(name, params, range); });
  }

  std::size_t atom() {
    const Token& t = cur_.ident("prv name");
    const SourcePos at = t.pos;
    const std::string name = t.text;
    auto p = m_.find_prv(name);
    if (!p) throw ParseError(at, "unknown prv '" + name + "'");
    std::vector<std::string> lvs;
    if (cur_.accept("(")) {
      do {
        lvs.push_back(cur_.ident("logvar").text);
      } while (cur_.accept(","));
      cur_.expect(")");
    }
    const auto& params = m_.prvs[*p].params;
    bool ok = lvs.size() == params.size();
    for (std::size_t k = 0; ok && k < lvs.size(); ++k) ok = m_.domains[params[k]].name == lvs[k];
    if (!ok) throw ParseError(at, "'" + name + "' must be written as " + m_.prv_signature(*p));
    return *p;
  }

  void parfactor() {
    const SourcePos at = cur_.next().pos;
    const Token& id_tok = cur_.ident("parfactor id");
    Parfactor pf;
    pf.id = id_tok.text;
    if (m_.find_parfactor(pf.id)) throw ParseError(id_tok.pos, "duplicate parfactor '" + pf.id + "'");
    cur_.expect("(");
    do {
      const SourcePos apos = cur_.peek().pos;
      const auto a = atom();
      if (std::find(pf.args.begin(), pf.args.end(), a) != pf.args.end()) {
        throw ParseError(apos, "prv '" + m_.prvs[a].name + "' listed twice");
      }
      pf.args.push_back(a);
    } while (cur_.accept(","));
    cur_.expect(")");
    if (!cur_.is_word("child")) cur_.fail("expected 'child'");
    cur_.next();
    const SourcePos cpos = cur_.peek().pos;
    const auto c = atom();
    auto it = std::find(pf.args.begin(), pf.args.end(), c);
    if (it == pf.args.end()) {
      throw ParseError(cpos, "child '" + m_.prvs[c].name + "' is not an argument of '" + pf.id + "'");
    }
    pf.child = static_cast<std::size_t>(it - pf.args.begin());

    auto lvs = logvars_of(m_, pf.args);
    pf.constraint = Constraint::top(lvs);
    if (cur_.is_word("constraint")) {
      cur_.next();
      if (cur_.is_word("TOP")) {
        cur_.next();
      } else {
        pf.constraint = constraint(lvs);
      }
    }
    if (cur_.accept("@")) {
      if (!cur_.is_word("mutilated")) cur_.fail("expected 'mutilated'");
      cur_.next();
      pf.mutilated = true;
    }
    pf.table = table(pf.args);
    pf_pos_.push_back(at);
    m_.parfactors.push_back(std::move(pf));
  }

  Constraint constraint(const std::vector<std::size_t>& lvs) {
    const SourcePos at = cur_.peek().pos;
    cur_.expect("{");
    std::vector<ConstId> flat;
    std::size_t rows = 0;
    if (!cur_.is("}")) {
      do {
        const bool paren = cur_.accept("(");
        std::size_t k = 0;
        if (!paren || !cur_.is(")")) {
          do {
            const Token& t = cur_.name("constant");
            if (k >= lvs.size()) throw ParseError(t.pos, "constraint tuple has too many constants");
            auto c = m_.domains[lvs[k]].find(t.text);
            if (!c) {
              throw ParseError(t.pos, "'" + t.text + "' is not in domain '" + m_.domains[lvs[k]].name + "'");
            }
            flat.push_back(*c);
            ++k;
          } while (paren && cur_.accept(","));
        }
        if (paren) cur_.expect(")");
        if (k != lvs.size()) {
          throw ParseError(at, "constraint tuples need " + std::to_string(lvs.size()) + " constants");
        }
        ++rows;
      } while (cur_.accept(","));
    }
    cur_.expect("}");
    if (lvs.empty()) return Constraint::top(lvs);
    if (rows == 0) throw ParseError(at, "explicit constraint has no tuples");
    return Constraint::of_flat(lvs, std::move(flat));
  }

  std::vector<double> table(const std::vector<std::size_t>& args) {
    const std::size_t size = table_size(m_, args);
    if (size > 10'000'000) throw ParseError(cur_.peek().pos, "table too large");
    std::vector<std::size_t> cards;
    for (auto a : args) cards.push_back(m_.range_size(a));
    std::vector<double> out(size, 0.0);
    std::vector<bool> seen(size, false);
    cur_.expect("{");
    while (!cur_.is("}")) {
      const SourcePos rpos = cur_.peek().pos;
      const bool paren = cur_.accept("(");
      std::size_t index = 0, k = 0;
      if (!paren || !cur_.is(")")) {
        do {
          const Token& t = cur_.name("range value");
          if (k >= args.size()) throw ParseError(t.pos, "table row has too many values");
          auto v = m_.range_of(args[k]).find(t.text);
          if (!v) {
            throw ParseError(t.pos, "'" + t.text + "' is not a value of '" + m_.prvs[args[k]].name + "'");
          }
          index = index * cards[k] + *v;
          ++k;
        } while (paren && cur_.accept(","));
      }
      if (paren) cur_.expect(")");
      if (k != args.size()) {
        throw ParseError(rpos, "table row needs " + std::to_string(args.size()) + " values");
      }
      cur_.expect("=");
      if (cur_.peek().kind != Tok::Number) cur_.fail("expected a number");
      const Token& num = cur_.next();
      double value = 0.0;
      const char* begin = num.text.data() + (num.text[0] == '+' ? 1 : 0);
      auto [ptr, ec] = std::from_chars(begin, num.text.data() + num.text.size(), value);
      if (ec != std::errc() || ptr != num.text.data() + num.text.size() || !std::isfinite(value)) {
        throw ParseError(num.pos, "invalid number '" + num.text + "'");
      }
      if (seen[index]) throw ParseError(rpos, "table row listed twice");
      seen[index] = true;
      out[index] = value;
      if (!cur_.accept(";")) cur_.accept(",");
    }
    const SourcePos close = cur_.peek().pos;
    cur_.expect("}");
    for (std::size_t i = 0; i < size; ++i) {
      if (seen[i]) continue;
      std::vector<std::uint32_t> vals(args.size());
      decode_index(i, cards, vals);
      std::string row;
      for (std::size_t k = 0; k < args.size(); ++k) {
        if (k) row += ',';
        row += m_.range_of(args[k]).values[vals[k]];
      }
      throw ParseError(close, "table row (" + row + ") is missing");
    }
    return out;
  }

  std::size_t integer(const Token& t) {
    std::size_t v = 0;
    auto [ptr, ec] = std::from_chars(t.text.data(), t.text.data() + t.text.size(), v);
    if (ec != std::errc() || ptr != t.text.data() + t.text.size()) {
      throw ParseError(t.pos, "expected a non-negative integer");
    }
    return v;
  }

  template <typename F>
  void guard(SourcePos at, F&& f) {
    try {
      f();
    } catch (const ModelError& e) {
      throw ParseError(at, e.what());
    }
  }

  Cursor cur_;
  ParseOptions options_;
  PCFG m_;
  std::vector<SourcePos> pf_pos_;
};

// Term with constants or logvars, e.g. Train(E,t1).
RVGroup term(Cursor& cur, const PCFG& model) {
  const Token& t = cur.ident("variable");
  auto p = model.find_prv(t.text);
  if (!p) throw ParseError(t.pos, "unknown prv '" + t.text + "'");
  const auto& params = model.prvs[*p].params;
  std::vector<std::optional<ConstId>> pattern;
  if (cur.accept("(")) {
    do {
      const Token& a = cur.name("constant or logvar");
      const std::size_t k = pattern.size();
      if (k >= params.size()) {
        throw ParseError(a.pos, "too many arguments for " + model.prv_signature(*p));
      }
      const auto& dom = model.domains[params[k]];
      if (a.text == dom.name) {
        pattern.push_back(std::nullopt);
      } else if (auto c = dom.find(a.text)) {
        pattern.push_back(*c);
      } else {
        throw ParseError(a.pos, "'" + a.text + "' is neither logvar nor constant of '" + dom.name + "'");
      }
    } while (cur.accept(","));
    cur.expect(")");
  }
  if (pattern.size() != params.size()) {
    throw ParseError(t.pos, "'" + t.text + "' expects " + std::to_string(params.size()) + " arguments");
  }
  return pattern_group(model, *p, pattern);
}

std::uint32_t value_of(Cursor& cur, const PCFG& model, std::size_t prv) {
  const Token& v = cur.name("value");
  auto r = model.range_of(prv).find(v.text);
  if (!r) throw ParseError(v.pos, "'" + v.text + "' is not a value of '" + model.prvs[prv].name + "'");
  return *r;
}

}  // namespace

PCFG parse_model(std::string_view text, const ParseOptions& options) {
  return ModelParser(text, options).run();
}

bool is_template(std::string_view text) {
  try {
    auto toks = tokenize(text);
    for (std::size_t i = 0; i + 2 < toks.size(); ++i) {
      if (toks[i].text == "{" && toks[i + 1].text == "@" && toks[i + 2].kind == Tok::Number) return true;
    }
  } catch (const ParseError&) {
  }
  return false;
}

Query parse_query(const PCFG& model, std::string_view text) {
  Cursor cur(tokenize(text));
  Query q;
  if (!cur.is_word("P")) cur.fail("expected 'P('");
  cur.next();
  cur.expect("(");
  do {
    q.targets.push_back(term(cur, model));
  } while (cur.accept(","));
  if (cur.accept("|")) {
    do {
      if (cur.is_word("do") && cur.peek(1).kind == Tok::Punct && cur.peek(1).text == "(") {
        cur.next();
        cur.next();
        do {
          DoAssignment d;
          d.target = term(cur, model);
          cur.expect("=");
          d.value = value_of(cur, model, d.target.prv);
          q.dos.push_back(std::move(d));
        } while (cur.accept(","));
        cur.expect(")");
      } else {
        EvidenceItem e;
        e.group = term(cur, model);
        cur.expect("=");
        e.value = value_of(cur, model, e.group.prv);
        q.evidence.push_back(std::move(e));
      }
    } while (cur.accept(";") || cur.accept(","));
  }
  cur.expect(")");
  if (!cur.at_end()) cur.fail("unexpected trailing input");
  try {
    check_query(model, q);
  } catch (const QueryError& e) {
    throw ParseError({1, 1}, e.what());
  }
  return q;
}

DsepQuery parse_dsep(const PCFG& model, std::string_view text) {
  Cursor cur(tokenize(text));
  auto set = [&](std::vector<GroundRV>& out) {
    do {
      RVGroup g = term(cur, model);
      for (auto& args : g.tuples) out.push_back({g.prv, std::move(args)});
    } while (cur.accept(","));
  };
  DsepQuery q;
  set(q.x);
  cur.expect(";");
  set(q.y);
  if (cur.accept("|") && !cur.at_end()) set(q.z);
  if (!cur.at_end()) cur.fail("unexpected trailing input");
  return q;
}

namespace {

std::string term_text(const PCFG& model, std::size_t prv, const std::vector<std::string>& args) {
  std::string s = model.prvs[prv].name;
  if (args.empty()) return s;
  s += "(";
  for (std::size_t k = 0; k < args.size(); ++k) {
    if (k) s += ",";
    s += args[k];
  }
  return s + ")";
}

// Terms denoting `g`: one pattern term when possible, else one per RV.
std::vector<std::string> group_terms(const PCFG& model, const RVGroup& g) {
  const auto& params = model.prvs[g.prv].params;
  std::vector<std::set<ConstId>> seen(params.size());
  for (const auto& t : g.tuples) {
    for (std::size_t k = 0; k < t.size(); ++k) seen[k].insert(t[k]);
  }
  std::vector<std::string> args;
  std::size_t product = 1;
  bool pattern = true;
  for (std::size_t k = 0; k < params.size() && pattern; ++k) {
    const auto& dom = model.domains[params[k]];
    if (seen[k].size() == 1) {
      args.push_back(dom.constants[*seen[k].begin()]);
    } else if (seen[k].size() == dom.size()) {
      args.push_back(dom.name);
      product *= dom.size();
    } else {
      pattern = false;
    }
  }
  if (pattern && product == g.tuples.size()) return {term_text(model, g.prv, args)};
  std::vector<std::string> out;
  for (const auto& t : g.tuples) {
    std::vector<std::string> a;
    for (std::size_t k = 0; k < t.size(); ++k) a.push_back(model.domains[params[k]].constants[t[k]]);
    out.push_back(term_text(model, g.prv, a));
  }
  return out;
}

}  // namespace

std::string serialize_query(const PCFG& model, const Query& query) {
  std::string s = "P(";
  bool first = true;
  for (const auto& t : query.targets) {
    for (const auto& term : group_terms(model, t)) {
      if (!first) s += ", ";
      s += term;
      first = false;
    }
  }
  std::vector<std::string> items;
  for (const auto& e : query.evidence) {
    for (const auto& term : group_terms(model, e.group)) {
      items.push_back(term + "=" + model.range_of(e.group.prv).values[e.value]);
    }
  }
  if (!query.dos.empty()) {
    std::string d = "do(";
    bool first_do = true;
    for (const auto& a : query.dos) {
      for (const auto& term : group_terms(model, a.target)) {
        if (!first_do) d += ", ";
        d += term + "=" + model.range_of(a.target.prv).values[a.value];
        first_do = false;
      }
    }
    items.push_back(d + ")");
  }
  if (!items.empty()) {
    s += " | ";
    for (std::size_t i = 0; i < items.size(); ++i) {
      if (i) s += "; ";
      s += items[i];
    }
  }
  return s + ")";
}

std::string format_number(double value) {
  char buf[64];
  auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, value);
  return std::string(buf, ptr);
}

std::string serialize_model(const PCFG& model) {
  std::ostringstream out;
  auto join = [](const std::vector<std::string>& items) {
    std::string s;
    for (std::size_t i = 0; i < items.size(); ++i) {
      if (i) s += ", ";
      s += items[i];
    }
    return s;
  };
  for (const auto& d : model.domains) out << "domain " << d.name << " = {" << join(d.constants) << "}\n";
  for (const auto& r : model.ranges) out << "range " << r.name << " = {" << join(r.values) << "}\n";
  for (std::size_t p = 0; p < model.prvs.size(); ++p) {
    out << "prv " << model.prv_signature(p) << " : " << model.ranges[model.prvs[p].range].name << "\n";
  }
  for (const auto& pf : model.parfactors) {
    out << "\nparfactor " << pf.id << " (";
    for (std::size_t k = 0; k < pf.args.size(); ++k) {
      if (k) out << ", ";
      out << model.prv_signature(pf.args[k]);
    }
    out << ")";
    if (pf.child) out << " child " << model.prv_signature(pf.args[*pf.child]);
    const auto& c = pf.constraint;
    if (!c.is_top()) {
      out << " constraint {";
      const std::size_t n = c.arity();
      const auto& rows = c.explicit_rows();
      for (std::size_t i = 0; i < rows.size(); i += n) {
        if (i) out << ", ";
        out << "(";
        for (std::size_t k = 0; k < n; ++k) {
          if (k) out << ",";
          out << model.domains[c.logvars()[k]].constants[rows[i + k]];
        }
        out << ")";
      }
      out << "}";
    }
    if (pf.mutilated) out << " @mutilated";
    out << " {\n";
    std::vector<std::size_t> cards;
    for (auto a : pf.args) cards.push_back(model.range_size(a));
    std::vector<std::uint32_t> vals(cards.size());
    for (std::size_t i = 0; i < pf.table.size(); ++i) {
      decode_index(i, cards, vals);
      out << "  (";
      for (std::size_t k = 0; k < vals.size(); ++k) {
        if (k) out << ",";
        out << model.range_of(pf.args[k]).values[vals[k]];
      }
      out << ")=" << format_number(pf.table[i]) << ";\n";
    }
    out << "}\n";
  }
  return out.str();
}

std::string serialize_distribution(const Distribution& dist) {
  std::vector<std::size_t> cards;
  for (const auto& v : dist.values) cards.push_back(v.size());
  std::vector<std::uint32_t> vals(cards.size());
  std::string out;
  char buf[64];
  for (std::size_t i = 0; i < dist.probs.size(); ++i) {
    decode_index(i, cards, vals);
    for (std::size_t k = 0; k < vals.size(); ++k) {
      if (k) out += ',';
      out += dist.values[k][vals[k]];
    }
    std::snprintf(buf, sizeof buf, "\t%.12g\n", dist.probs[i]);
    out += buf;
  }
  return out;
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error("cannot open '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

}  // namespace pcfg
