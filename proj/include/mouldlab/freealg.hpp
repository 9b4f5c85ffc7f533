#pragma once

#include <algorithm>
#include <cstdint>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "mouldlab/rational.hpp"

namespace mouldlab {

// A word over the generators X_1..X_N, stored 0-based.
using GenWord = std::vector<std::uint32_t>;

// Truncated series in noncommuting generators X_1..X_N, each of t-degree 1, so
// t-degree equals word length. Component d is a dense array indexed by the
// base-N reading of the word (first letter most significant).
class NcSeries {
 public:
  NcSeries(int generators, int max_degree) : generators_(generators), max_degree_(max_degree) {
    if (generators < 1) throw DomainError("NcSeries needs at least one generator");
    if (max_degree < 0) throw DomainError("NcSeries max degree must be >= 0");
    components_.resize(static_cast<std::size_t>(max_degree) + 1);
    std::size_t size = 1;
    for (auto& c : components_) {
      c.assign(size, Rational(0));
      size *= static_cast<std::size_t>(generators);
    }
  }

  static NcSeries one(int generators, int max_degree) {
    NcSeries s(generators, max_degree);
    s.components_[0][0] = 1;
    return s;
  }

  static NcSeries monomial(int generators, int max_degree, const GenWord& word, const Rational& c = 1) {
    NcSeries s(generators, max_degree);
    if (static_cast<int>(word.size()) <= max_degree) s.add_term(word, c);
    return s;
  }

  // c * X_j (j is 0-based).
  static NcSeries generator(int generators, int max_degree, std::uint32_t j, const Rational& c = 1) {
    return monomial(generators, max_degree, GenWord{j}, c);
  }

  int generators() const noexcept { return generators_; }
  int max_degree() const noexcept { return max_degree_; }

  const std::vector<Rational>& component(int degree) const { return components_.at(static_cast<std::size_t>(degree)); }
  std::vector<Rational>& component_mut(int degree) { return components_.at(static_cast<std::size_t>(degree)); }

  std::size_t index_of(const GenWord& w) const {
    std::size_t idx = 0;
    for (auto g : w) {
      if (g >= static_cast<std::uint32_t>(generators_)) throw DomainError("generator index out of range");
      idx = idx * static_cast<std::size_t>(generators_) + g;
    }
    return idx;
  }

  GenWord word_of(int degree, std::size_t index) const {
    GenWord w(static_cast<std::size_t>(degree));
    for (int i = degree - 1; i >= 0; --i) {
      w[static_cast<std::size_t>(i)] = static_cast<std::uint32_t>(index % static_cast<std::size_t>(generators_));
      index /= static_cast<std::size_t>(generators_);
    }
    return w;
  }

  Rational coeff(const GenWord& w) const {
    if (static_cast<int>(w.size()) > max_degree_) {
      throw BoundError("series read beyond its max degree", static_cast<int>(w.size()));
    }
    return components_[w.size()][index_of(w)];
  }

  void add_term(const GenWord& w, const Rational& c) {
    if (static_cast<int>(w.size()) > max_degree_) {
      throw BoundError("term beyond series max degree", static_cast<int>(w.size()));
    }
    components_[w.size()][index_of(w)] += c;
  }

  bool is_zero() const {
    for (const auto& c : components_) {
      for (const auto& q : c) {
        if (q != 0) return false;
      }
    }
    return true;
  }

  bool component_is_zero(int d) const {
    for (const auto& q : component(d)) {
      if (q != 0) return false;
    }
    return true;
  }

  // Least degree with a nonzero coefficient; nullopt for the zero series.
  std::optional<int> order() const {
    for (int d = 0; d <= max_degree_; ++d) {
      if (!component_is_zero(d)) return d;
    }
    return std::nullopt;
  }

  // Nonzero terms sorted by (degree, lexicographic word).
  std::vector<std::pair<GenWord, Rational>> terms() const {
    std::vector<std::pair<GenWord, Rational>> out;
    for (int d = 0; d <= max_degree_; ++d) {
      const auto& c = component(d);
      for (std::size_t i = 0; i < c.size(); ++i) {
        if (c[i] != 0) out.emplace_back(word_of(d, i), c[i]);
      }
    }
    return out;
  }

  friend bool operator==(const NcSeries& a, const NcSeries& b) {
    return a.generators_ == b.generators_ && a.max_degree_ == b.max_degree_ && a.components_ == b.components_;
  }

 private:
  int generators_;
  int max_degree_;
  std::vector<std::vector<Rational>> components_;
};

namespace detail {

inline void require_same_generators(const NcSeries& p, const NcSeries& q, const char* op) {
  if (p.generators() != q.generators()) {
    throw DomainError(std::string(op) + ": generator count mismatch");
  }
}

}  // namespace detail

inline NcSeries nc_truncate(const NcSeries& p, int degree) {
  if (degree > p.max_degree()) throw BoundError("nc_truncate cannot raise the degree cap", degree);
  NcSeries out(p.generators(), degree);
  for (int d = 0; d <= degree; ++d) out.component_mut(d) = p.component(d);
  return out;
}

inline NcSeries nc_add(const NcSeries& p, const NcSeries& q) {
  detail::require_same_generators(p, q, "nc_add");
  NcSeries out(p.generators(), std::min(p.max_degree(), q.max_degree()));
  for (int d = 0; d <= out.max_degree(); ++d) {
    auto& o = out.component_mut(d);
    const auto& a = p.component(d);
    const auto& b = q.component(d);
    for (std::size_t i = 0; i < o.size(); ++i) o[i] = a[i] + b[i];
  }
  return out;
}

inline NcSeries nc_scale(const Rational& s, const NcSeries& p) {
  NcSeries out(p.generators(), p.max_degree());
  for (int d = 0; d <= p.max_degree(); ++d) {
    auto& o = out.component_mut(d);
    const auto& a = p.component(d);
    for (std::size_t i = 0; i < o.size(); ++i) {
      if (a[i] != 0) o[i] = s * a[i];
    }
  }
  return out;
}

inline NcSeries nc_sub(const NcSeries& p, const NcSeries& q) { return nc_add(p, nc_scale(Rational(-1), q)); }

inline NcSeries nc_mul(const NcSeries& p, const NcSeries& q) {
  detail::require_same_generators(p, q, "nc_mul");
  const int cap = std::min(p.max_degree(), q.max_degree());
  NcSeries out(p.generators(), cap);
  const std::size_t n = static_cast<std::size_t>(p.generators());
  std::size_t right_size = 1;
  std::vector<std::size_t> sizes(static_cast<std::size_t>(cap) + 1);
  for (auto& s : sizes) {
    s = right_size;
    right_size *= n;
  }
  Rational prod;
  for (int i = 0; i <= cap; ++i) {
    const auto& a = p.component(i);
    for (int j = 0; i + j <= cap; ++j) {
      const auto& b = q.component(j);
      auto& o = out.component_mut(i + j);
      const std::size_t bs = sizes[static_cast<std::size_t>(j)];
      for (std::size_t ia = 0; ia < a.size(); ++ia) {
        if (a[ia] == 0) continue;
        const std::size_t base = ia * bs;
        for (std::size_t ib = 0; ib < b.size(); ++ib) {
          if (b[ib] == 0) continue;
          prod = a[ia] * b[ib];
          o[base + ib] += prod;
        }
      }
    }
  }
  return out;
}

// out += c * p on the common degree range of out.
inline void add_scaled(NcSeries& out, const Rational& c, const NcSeries& p) {
  detail::require_same_generators(out, p, "add_scaled");
  if (c == 0) return;
  const int cap = std::min(out.max_degree(), p.max_degree());
  Rational term;
  for (int d = 0; d <= cap; ++d) {
    auto& o = out.component_mut(d);
    const auto& a = p.component(d);
    for (std::size_t i = 0; i < o.size(); ++i) {
      if (a[i] == 0) continue;
      term = c * a[i];
      o[i] += term;
    }
  }
}

inline NcSeries operator+(const NcSeries& p, const NcSeries& q) { return nc_add(p, q); }
inline NcSeries operator-(const NcSeries& p, const NcSeries& q) { return nc_sub(p, q); }
inline NcSeries operator*(const NcSeries& p, const NcSeries& q) { return nc_mul(p, q); }
inline NcSeries operator*(const Rational& s, const NcSeries& p) { return nc_scale(s, p); }

inline NcSeries nc_exp(const NcSeries& p) {
  if (p.component(0)[0] != 0) throw DomainError("nc_exp needs a series without constant term");
  NcSeries result = NcSeries::one(p.generators(), p.max_degree());
  NcSeries power = result;
  for (int k = 1; k <= p.max_degree(); ++k) {
    power = nc_mul(power, p);
    result = nc_add(result, nc_scale(inverse_factorial(static_cast<unsigned>(k)), power));
  }
  return result;
}

inline NcSeries nc_log(const NcSeries& p) {
  if (p.component(0)[0] != 1) throw DomainError("nc_log needs a series with constant term 1");
  const NcSeries shifted = nc_sub(p, NcSeries::one(p.generators(), p.max_degree()));
  NcSeries result(p.generators(), p.max_degree());
  NcSeries power = NcSeries::one(p.generators(), p.max_degree());
  for (int k = 1; k <= p.max_degree(); ++k) {
    power = nc_mul(power, shifted);
    result = nc_add(result, nc_scale(Rational(k % 2 ? 1 : -1, k), power));
  }
  return result;
}

inline NcSeries commutator(const NcSeries& p, const NcSeries& q) { return nc_sub(nc_mul(p, q), nc_mul(q, p)); }

// ad_P^k Q.
inline NcSeries ad_pow(const NcSeries& p, int k, const NcSeries& q) {
  if (k < 0) throw DomainError("ad_pow needs k >= 0");
  NcSeries out = q;
  for (int i = 0; i < k; ++i) out = commutator(p, out);
  return out;
}

// e^{ad_P} Q = sum_k ad_P^k Q / k!, for P without constant term.
inline NcSeries exp_ad(const NcSeries& p, const NcSeries& q) {
  if (p.component(0)[0] != 0) throw DomainError("exp_ad needs a series without constant term");
  const int cap = std::min(p.max_degree(), q.max_degree());
  NcSeries result = nc_truncate(q, cap);
  NcSeries term = result;
  for (int k = 1; k <= cap; ++k) {
    term = commutator(p, term);
    result = nc_add(result, nc_scale(inverse_factorial(static_cast<unsigned>(k)), term));
  }
  return result;
}

// Coefficientwise expansion of the right-nested bracket [g1,[g2,...[g_{d-1},g_d]]]
// of single generators, accumulated as c * bracket into the degree-d component
// of out. Each letter g_i lands either on the left or on the right of the inner
// bracket, carrying a sign for each right placement.
inline void add_nested_bracket(NcSeries& out, const GenWord& g, const Rational& c) {
  const std::size_t d = g.size();
  if (d == 0 || c == 0) return;
  if (static_cast<int>(d) > out.max_degree()) return;
  auto& comp = out.component_mut(static_cast<int>(d));
  const std::size_t n = static_cast<std::size_t>(out.generators());
  std::vector<std::size_t> pow(d + 1, 1);
  for (std::size_t i = 1; i <= d; ++i) pow[i] = pow[i - 1] * n;
  Rational neg = -c;
  // Bit i of mask (i < d-1) set: g_i goes to the right end of the current word.
  const std::size_t masks = std::size_t{1} << (d - 1);
  std::vector<std::uint32_t> word(d);
  for (std::size_t mask = 0; mask < masks; ++mask) {
    std::size_t lo = 0, hi = d;
    int sign = 1;
    for (std::size_t i = 0; i + 1 < d; ++i) {
      if (mask >> i & 1) {
        word[--hi] = g[i];
        sign = -sign;
      } else {
        word[lo++] = g[i];
      }
    }
    word[lo] = g[d - 1];
    std::size_t idx = 0;
    for (auto x : word) idx = idx * n + x;
    comp[idx] += sign > 0 ? c : neg;
  }
}

inline NcSeries nested_bracket(int generators, int max_degree, const GenWord& g) {
  if (g.empty()) throw DomainError("nested_bracket needs a nonempty word");
  NcSeries out(generators, max_degree);
  add_nested_bracket(out, g, Rational(1));
  return out;
}

// Dynkin-Specht-Wever image of the homogeneous degree-d part: every word is
// replaced by its right-nested bracket.
inline NcSeries dsw_image(const NcSeries& p, int degree) {
  NcSeries out(p.generators(), p.max_degree());
  const auto& comp = p.component(degree);
  for (std::size_t i = 0; i < comp.size(); ++i) {
    if (comp[i] != 0) add_nested_bracket(out, p.word_of(degree, i), comp[i]);
  }
  return out;
}

struct DswReport {
  bool passed = true;
  int max_degree = 0;
  std::vector<int> failing_degrees;

  std::string describe() const {
    if (passed) return "pass (degrees 0.." + std::to_string(max_degree) + ")";
    std::ostringstream os;
    os << "fail at degree(s)";
    for (int d : failing_degrees) os << ' ' << d;
    return os.str();
  }
  explicit operator bool() const noexcept { return passed; }
};

// A homogeneous degree-d element P_d is a Lie element iff DSW(P_d) = d P_d.
// A nonzero constant term fails at degree 0.
inline DswReport dsw_check(const NcSeries& p) {
  DswReport report;
  report.max_degree = p.max_degree();
  if (p.component(0)[0] != 0) report.failing_degrees.push_back(0);
  for (int d = 1; d <= p.max_degree(); ++d) {
    if (p.component_is_zero(d)) continue;
    const NcSeries image = dsw_image(p, d);
    const auto& lhs = image.component(d);
    const auto& rhs = p.component(d);
    const Rational scale(d);
    for (std::size_t i = 0; i < lhs.size(); ++i) {
      if (lhs[i] != scale * rhs[i]) {
        report.failing_degrees.push_back(d);
        break;
      }
    }
  }
  report.passed = report.failing_degrees.empty();
  return report;
}

// e^{X_1} ... e^{X_N}, truncated at degree D.
inline NcSeries direct_product(int generators, int max_degree) {
  NcSeries out = NcSeries::one(generators, max_degree);
  for (int j = 0; j < generators; ++j) {
    out = nc_mul(out, nc_exp(NcSeries::generator(generators, max_degree, static_cast<std::uint32_t>(j))));
  }
  return out;
}

inline NcSeries direct_log(int generators, int max_degree) { return nc_log(direct_product(generators, max_degree)); }

// t d/dt: scales each homogeneous component by its degree.
inline NcSeries degree_scale(const NcSeries& p) {
  NcSeries out(p.generators(), p.max_degree());
  for (int d = 1; d <= p.max_degree(); ++d) {
    const auto& src = p.component(d);
    auto& dst = out.component_mut(d);
    for (std::size_t i = 0; i < src.size(); ++i) {
      if (src[i] != 0) dst[i] = d * src[i];
    }
  }
  return out;
}

// Reinterprets P in a free algebra with more generators (old generators keep their indices).
inline NcSeries embed(const NcSeries& p, int generators) {
  if (generators < p.generators()) throw DomainError("embed cannot drop generators");
  NcSeries out(generators, p.max_degree());
  for (const auto& [w, c] : p.terms()) out.add_term(w, c);
  return out;
}

// X_1..X_N as "X1".."XN"; with two generators the short names X, Y may be used.
inline std::string render_gen_word(const GenWord& w, int generators, bool short_names) {
  if (w.empty()) return "1";
  std::string s;
  for (auto g : w) {
    if (short_names && generators == 2) {
      s += g == 0 ? "X" : "Y";
    } else {
      s += "X" + std::to_string(g + 1);
    }
  }
  return s;
}

inline GenWord parse_gen_word(std::string_view text) {
  GenWord w;
  if (text == "1" || text.empty()) return w;
  std::size_t pos = 0;
  while (pos < text.size()) {
    if (text[pos] != 'X') throw DomainError("bad generator word '" + std::string(text) + "'");
    std::size_t end = ++pos;
    while (end < text.size() && text[end] >= '0' && text[end] <= '9') ++end;
    if (end == pos) throw DomainError("bad generator word '" + std::string(text) + "'");
    const unsigned long j = std::stoul(std::string(text.substr(pos, end - pos)));
    if (j == 0) throw DomainError("generators are numbered from 1");
    w.push_back(static_cast<std::uint32_t>(j - 1));
    pos = end;
  }
  return w;
}

// Structured comparison of two series on their common degree range.
struct SeriesReport {
  bool equal = true;
  int max_degree = 0;
  std::optional<GenWord> word;
  Rational lhs, rhs;
  int generators = 1;

  std::string describe() const {
    std::ostringstream os;
    if (equal) {
      os << "equal through degree " << max_degree;
    } else {
      os << "differ at " << render_gen_word(*word, generators, false) << ": " << lhs.get_str() << " vs "
         << rhs.get_str();
    }
    return os.str();
  }
  explicit operator bool() const noexcept { return equal; }
};

inline SeriesReport compare_series(const NcSeries& p, const NcSeries& q) {
  detail::require_same_generators(p, q, "compare_series");
  SeriesReport r;
  r.generators = p.generators();
  r.max_degree = std::min(p.max_degree(), q.max_degree());
  for (int d = 0; d <= r.max_degree; ++d) {
    const auto& a = p.component(d);
    const auto& b = q.component(d);
    for (std::size_t i = 0; i < a.size(); ++i) {
      if (a[i] != b[i]) {
        r.equal = false;
        r.word = p.word_of(d, i);
        r.lhs = a[i];
        r.rhs = b[i];
        return r;
      }
    }
  }
  return r;
}

}  // namespace mouldlab
