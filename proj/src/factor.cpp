#include "pcfg/factor.hpp"

#include <algorithm>
#include <cassert>
#include <cmath>
#include <limits>

#include "pcfg/error.hpp"
#include "pcfg/model.hpp"

namespace pcfg {

namespace {

constexpr double kNegInf = -std::numeric_limits<double>::infinity();

// Product of scaled log-potentials; -inf stays -inf for positive scales.
inline double scaled(double scale, double v) { return v == kNegInf ? kNegInf : scale * v; }

}  // namespace

LogFactor LogFactor::scalar(double log_value) {
  LogFactor f;
  f.values.push_back(log_value);
  return f;
}

LogFactor LogFactor::from_linear(std::vector<int> vars, std::vector<std::size_t> cards,
                                 std::span<const double> table) {
  LogFactor f;
  f.vars = std::move(vars);
  f.cards = std::move(cards);
  f.values.reserve(table.size());
  for (double v : table) f.values.push_back(v > 0.0 ? std::log(v) : kNegInf);
  return f;
}

int LogFactor::index_of(int var) const {
  for (std::size_t i = 0; i < vars.size(); ++i) {
    if (vars[i] == var) return static_cast<int>(i);
  }
  return -1;
}

LogFactor multiply(const LogFactor& a, const LogFactor& b, double scale_a, double scale_b) {
  LogFactor r;
  r.vars = a.vars;
  r.cards = a.cards;
  for (std::size_t k = 0; k < b.vars.size(); ++k) {
    if (a.index_of(b.vars[k]) < 0) {
      r.vars.push_back(b.vars[k]);
      r.cards.push_back(b.cards[k]);
    }
  }
  const auto sa = strides_for(a.cards);
  const auto sb = strides_for(b.cards);
  const std::size_t n = r.vars.size();
  std::vector<std::size_t> stride_a(n, 0), stride_b(n, 0);
  for (std::size_t k = 0; k < n; ++k) {
    int ia = a.index_of(r.vars[k]);
    int ib = b.index_of(r.vars[k]);
    if (ia >= 0) stride_a[k] = sa[ia];
    if (ib >= 0) {
      assert(b.cards[ib] == r.cards[k]);
      stride_b[k] = sb[ib];
    }
  }
  std::size_t total = 1;
  for (auto c : r.cards) total *= c;
  r.values.resize(total);
  std::vector<std::size_t> counter(n, 0);
  std::size_t ia = 0, ib = 0;
  for (std::size_t i = 0; i < total; ++i) {
    const double va = a.values[ia];
    const double vb = b.values[ib];
    r.values[i] = (va == kNegInf || vb == kNegInf) ? kNegInf
                                                   : scaled(scale_a, va) + scaled(scale_b, vb);
    for (std::size_t k = n; k-- > 0;) {
      if (++counter[k] < r.cards[k]) {
        ia += stride_a[k];
        ib += stride_b[k];
        break;
      }
      ia -= stride_a[k] * (r.cards[k] - 1);
      ib -= stride_b[k] * (r.cards[k] - 1);
      counter[k] = 0;
    }
  }
  return r;
}

double log_sum_exp(std::span<const double> values) {
  double m = kNegInf;
  for (double v : values) m = std::max(m, v);
  if (m == kNegInf) return kNegInf;
  double s = 0.0;
  for (double v : values) s += std::exp(v - m);
  return m + std::log(s);
}

LogFactor sum_out(const LogFactor& f, int var) {
  const int k = f.index_of(var);
  if (k < 0) return f;
  std::size_t outer = 1, inner = 1;
  for (int i = 0; i < k; ++i) outer *= f.cards[i];
  for (std::size_t i = k + 1; i < f.cards.size(); ++i) inner *= f.cards[i];
  const std::size_t card = f.cards[k];
  LogFactor r;
  r.vars = f.vars;
  r.cards = f.cards;
  r.vars.erase(r.vars.begin() + k);
  r.cards.erase(r.cards.begin() + k);
  r.values.assign(outer * inner, kNegInf);
  for (std::size_t o = 0; o < outer; ++o) {
    const std::size_t base = o * card * inner;
    for (std::size_t in = 0; in < inner; ++in) {
      double m = kNegInf;
      for (std::size_t v = 0; v < card; ++v) m = std::max(m, f.values[base + v * inner + in]);
      if (m == kNegInf) continue;
      double s = 0.0;
      for (std::size_t v = 0; v < card; ++v) s += std::exp(f.values[base + v * inner + in] - m);
      r.values[o * inner + in] = m + std::log(s);
    }
  }
  return r;
}

LogFactor restrict(const LogFactor& f, int var, std::uint32_t value) {
  const int k = f.index_of(var);
  if (k < 0) return f;
  std::size_t outer = 1, inner = 1;
  for (int i = 0; i < k; ++i) outer *= f.cards[i];
  for (std::size_t i = k + 1; i < f.cards.size(); ++i) inner *= f.cards[i];
  const std::size_t card = f.cards[k];
  LogFactor r;
  r.vars = f.vars;
  r.cards = f.cards;
  r.vars.erase(r.vars.begin() + k);
  r.cards.erase(r.cards.begin() + k);
  r.values.resize(outer * inner);
  for (std::size_t o = 0; o < outer; ++o) {
    std::copy_n(f.values.begin() + static_cast<std::ptrdiff_t>(o * card * inner + value * inner),
                inner, r.values.begin() + static_cast<std::ptrdiff_t>(o * inner));
  }
  return r;
}

LogFactor merge_axes(const LogFactor& f, std::size_t keep, std::size_t drop) {
  assert(keep != drop && f.cards[keep] == f.cards[drop]);
  LogFactor r;
  for (std::size_t k = 0; k < f.vars.size(); ++k) {
    if (k == drop) continue;
    r.vars.push_back(f.vars[k]);
    r.cards.push_back(f.cards[k]);
  }
  const auto sf = strides_for(f.cards);
  std::size_t total = 1;
  for (auto c : r.cards) total *= c;
  r.values.resize(total);
  std::vector<std::uint32_t> assign(r.cards.size());
  for (std::size_t i = 0; i < total; ++i) {
    decode_index(i, r.cards, assign);
    std::size_t src = 0;
    std::size_t j = 0;
    std::uint32_t keep_value = 0;
    for (std::size_t k = 0; k < f.vars.size(); ++k) {
      if (k == drop) continue;
      if (k == keep) keep_value = assign[j];
      src += assign[j] * sf[k];
      ++j;
    }
    src += keep_value * sf[drop];
    r.values[i] = f.values[src];
  }
  return r;
}

LogFactor reorder(const LogFactor& f, std::span<const int> order) {
  LogFactor r;
  r.vars.assign(order.begin(), order.end());
  std::vector<std::size_t> src_axis;
  for (int v : order) {
    int k = f.index_of(v);
    if (k < 0) throw Error("reorder: variable not in factor scope");
    src_axis.push_back(static_cast<std::size_t>(k));
    r.cards.push_back(f.cards[k]);
  }
  const auto sf = strides_for(f.cards);
  r.values.resize(f.values.size());
  std::vector<std::uint32_t> assign(r.cards.size());
  for (std::size_t i = 0; i < r.values.size(); ++i) {
    decode_index(i, r.cards, assign);
    std::size_t src = 0;
    for (std::size_t k = 0; k < assign.size(); ++k) src += assign[k] * sf[src_axis[k]];
    r.values[i] = f.values[src];
  }
  return r;
}

std::vector<double> normalize_exp(std::span<const double> log_values) {
  double m = kNegInf;
  for (double v : log_values) m = std::max(m, v);
  if (m == kNegInf) throw InconsistentEvidence("the conditioning event has probability zero");
  std::vector<double> out(log_values.size());
  double sum = 0.0, comp = 0.0;
  for (std::size_t i = 0; i < out.size(); ++i) {
    out[i] = std::exp(log_values[i] - m);
    // Neumaier summation.
    double t = sum + out[i];
    comp += std::abs(sum) >= std::abs(out[i]) ? (sum - t) + out[i] : (out[i] - t) + sum;
    sum = t;
  }
  sum += comp;
  for (double& v : out) v /= sum;
  return out;
}

}  // namespace pcfg
