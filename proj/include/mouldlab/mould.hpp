#pragma once

#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <random>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "mouldlab/rational.hpp"
#include "mouldlab/words.hpp"

namespace mouldlab {

enum class GradingKind { length, weight };

inline const char* to_string(GradingKind k) { return k == GradingKind::length ? "length" : "weight"; }

// Truncation data of a mould. Named alphabets are graded by length, the
// integer alphabet by letter-sum weight; there each grade holds finitely many words.
struct Grading {
  GradingKind kind = GradingKind::length;
  int bound = 0;

  static Grading natural(const Alphabet& alphabet, int bound) {
    if (bound < 0) throw DomainError("grading bound must be >= 0");
    return Grading{alphabet.is_integer() ? GradingKind::weight : GradingKind::length, bound};
  }
  friend bool operator==(const Grading&, const Grading&) = default;
};

class Mould {
 public:
  using Table = std::map<Letters, Rational>;

  Mould(AlphabetPtr alphabet, int bound) : Mould(std::move(alphabet), bound, Table{}) {}

  Mould(AlphabetPtr alphabet, int bound, Table values)
      : alphabet_(std::move(alphabet)), grading_(Grading::natural(*alphabet_, bound)) {
    for (auto& [w, c] : values) {
      for (Letter l : w) {
        if (!alphabet_->contains(l)) throw DomainError("mould entry outside alphabet");
      }
      if (alphabet_->grade(w) > bound) throw BoundError("mould entry beyond grading bound", alphabet_->grade(w));
      if (c != 0) values_.emplace(w, std::move(c));
    }
  }

  // Tabulates rule(w) over every word of grade <= bound.
  template <class Rule>
  static Mould from_rule(AlphabetPtr alphabet, int bound, Rule&& rule) {
    Table t;
    for (auto& w : words_up_to(*alphabet, bound)) {
      Rational c = rule(static_cast<const Letters&>(w));
      if (c != 0) t.emplace(std::move(w), std::move(c));
    }
    return Mould(std::move(alphabet), bound, std::move(t));
  }

  const AlphabetPtr& alphabet() const noexcept { return alphabet_; }
  const Grading& grading() const noexcept { return grading_; }
  int bound() const noexcept { return grading_.bound; }
  const Table& entries() const noexcept { return values_; }

  Rational value(const Letters& w) const {
    if (alphabet_->grade(w) > bound()) {
      throw BoundError("mould read beyond its bound at " + render_letters(*alphabet_, w), alphabet_->grade(w));
    }
    auto it = values_.find(w);
    return it == values_.end() ? Rational(0) : it->second;
  }
  Rational value(const Word& w) const {
    require_same_alphabet(alphabet_, w.alphabet(), "mould value");
    return value(w.letters());
  }
  Rational operator[](const Word& w) const { return value(w); }
  Rational empty_value() const { return value(Letters{}); }

  Mould truncated(int bound) const {
    if (bound > this->bound()) throw BoundError("cannot raise a mould's bound", bound);
    Table t;
    for (const auto& [w, c] : values_) {
      if (alphabet_->grade(w) <= bound) t.emplace(w, c);
    }
    return Mould(alphabet_, bound, std::move(t));
  }

  // Equal as tables up to the common bound.
  friend bool operator==(const Mould& a, const Mould& b) {
    if (!same_alphabet(a.alphabet_, b.alphabet_)) return false;
    const int g = std::min(a.bound(), b.bound());
    return a.truncated(g).values_ == b.truncated(g).values_;
  }

 private:
  AlphabetPtr alphabet_;
  Grading grading_;
  Table values_;
};

namespace detail {

inline void require_compatible(const Mould& a, const Mould& b, std::string_view op) {
  require_same_alphabet(a.alphabet(), b.alphabet(), op);
  if (a.grading().kind != b.grading().kind) throw AlphabetMismatch(std::string(op) + ": grading mismatch");
}

}  // namespace detail

// First word where two moulds differ (up to the common bound), if any.
struct MouldDiff {
  std::string word;
  Rational lhs, rhs;
};

inline std::optional<MouldDiff> first_difference(const Mould& a, const Mould& b) {
  detail::require_compatible(a, b, "compare");
  const int g = std::min(a.bound(), b.bound());
  for (const auto& w : words_up_to(*a.alphabet(), g)) {
    Rational x = a.value(w), y = b.value(w);
    if (x != y) return MouldDiff{render_letters(*a.alphabet(), w), x, y};
  }
  return std::nullopt;
}

inline Mould mould_unit(AlphabetPtr alphabet, int bound) {
  Mould::Table t;
  t.emplace(Letters{}, Rational(1));
  return Mould(std::move(alphabet), bound, std::move(t));
}

inline Mould mould_zero(AlphabetPtr alphabet, int bound) { return Mould(std::move(alphabet), bound); }

inline Mould mould_add(const Mould& m, const Mould& n) {
  detail::require_compatible(m, n, "mould_add");
  const int g = std::min(m.bound(), n.bound());
  Mould::Table t;
  for (const auto& [w, c] : m.entries()) {
    if (m.alphabet()->grade(w) <= g) t[w] += c;
  }
  for (const auto& [w, c] : n.entries()) {
    if (n.alphabet()->grade(w) <= g) t[w] += c;
  }
  return Mould(m.alphabet(), g, std::move(t));
}

inline Mould mould_scale(const Rational& s, const Mould& m) {
  Mould::Table t;
  if (s != 0) {
    for (const auto& [w, c] : m.entries()) t.emplace(w, s * c);
  }
  return Mould(m.alphabet(), m.bound(), std::move(t));
}

inline Mould mould_sub(const Mould& m, const Mould& n) { return mould_add(m, mould_scale(Rational(-1), n)); }

// (M x N)^w = sum over splittings w = ab of M^a N^b. Both tables are sparse, so
// the sum runs over pairs of stored entries with grade(a) + grade(b) within bound.
inline Mould mould_mul(const Mould& m, const Mould& n) {
  detail::require_compatible(m, n, "mould_mul");
  const int g = std::min(m.bound(), n.bound());
  const Alphabet& alpha = *m.alphabet();
  Mould::Table t;
  for (const auto& [a, ca] : m.entries()) {
    const int ga = alpha.grade(a);
    if (ga > g) continue;
    for (const auto& [b, cb] : n.entries()) {
      if (ga + alpha.grade(b) > g) continue;
      t[concat(a, b)] += ca * cb;
    }
  }
  return Mould(m.alphabet(), g, std::move(t));
}

inline Mould mould_commutator(const Mould& m, const Mould& n) {
  return mould_sub(mould_mul(m, n), mould_mul(n, m));
}

inline Mould mould_exp(const Mould& m) {
  if (m.empty_value() != 0) throw DomainError("mould_exp needs a mould vanishing on the empty word");
  Mould result = mould_unit(m.alphabet(), m.bound());
  Mould power = result;
  // order(M^k) >= k, so k never needs to exceed the bound.
  for (int k = 1; k <= m.bound(); ++k) {
    power = mould_mul(power, m);
    if (power.entries().empty()) break;
    result = mould_add(result, mould_scale(inverse_factorial(static_cast<unsigned>(k)), power));
  }
  return result;
}

inline Mould mould_log(const Mould& m) {
  if (m.empty_value() != 1) throw DomainError("mould_log needs a mould equal to 1 on the empty word");
  const Mould shifted = mould_sub(m, mould_unit(m.alphabet(), m.bound()));
  Mould result = mould_zero(m.alphabet(), m.bound());
  Mould power = mould_unit(m.alphabet(), m.bound());
  for (int k = 1; k <= m.bound(); ++k) {
    power = mould_mul(power, shifted);
    if (power.entries().empty()) break;
    result = mould_add(result, mould_scale(Rational(k % 2 ? 1 : -1, k), power));
  }
  return result;
}

// (nabla_phi M)^{n1..nr} = (phi(n1) + ... + phi(nr)) M^{n1..nr}.
inline Mould mould_nabla(const std::function<Rational(Letter)>& phi, const Mould& m) {
  Mould::Table t;
  for (const auto& [w, c] : m.entries()) {
    Rational s = 0;
    for (Letter l : w) s += phi(l);
    if (s != 0) t.emplace(w, s * c);
  }
  return Mould(m.alphabet(), m.bound(), std::move(t));
}

// S(M)^{n1..nr} = (-1)^r M^{nr..n1}.
inline Mould mould_antipode(const Mould& m) {
  Mould::Table t;
  for (const auto& [w, c] : m.entries()) {
    t.emplace(reversed(w), w.size() % 2 ? Rational(-c) : c);
  }
  return Mould(m.alphabet(), m.bound(), std::move(t));
}

struct ShuffleFailure {
  Word a, b;
  Rational lhs, rhs;
};

struct ShuffleCheckReport {
  bool passed = true;
  std::size_t pairs_checked = 0;
  std::optional<ShuffleFailure> failure;

  std::string describe() const {
    std::ostringstream os;
    if (passed) {
      os << "pass (" << pairs_checked << " pairs)";
    } else if (failure) {
      os << "fail at a=\"" << to_string(failure->a) << "\" b=\"" << to_string(failure->b)
         << "\": lhs=" << failure->lhs.get_str() << " rhs=" << failure->rhs.get_str();
    } else {
      os << "fail";
    }
    return os.str();
  }
  explicit operator bool() const noexcept { return passed; }
};

namespace detail {

// Checks sum_n sh(a,b;n) M^n == expected(a, b) for all pairs with grade(ab) <= bound.
template <class Expected>
ShuffleCheckReport check_shuffle_relation(const Mould& m, bool skip_empty, Rational empty_expected,
                                          Expected&& expected) {
  const AlphabetPtr& alpha = m.alphabet();
  ShuffleCheckReport report;
  const Rational e = m.empty_value();
  if (e != empty_expected) {
    report.passed = false;
    report.failure = ShuffleFailure{Word(alpha), Word(alpha), e, empty_expected};
    return report;
  }
  const auto words = words_up_to(*alpha, m.bound());
  for (const auto& a : words) {
    if (skip_empty && a.empty()) continue;
    const int ga = alpha->grade(a);
    for (const auto& b : words) {
      if (skip_empty && b.empty()) continue;
      if (ga + alpha->grade(b) > m.bound()) continue;
      Rational lhs = 0;
      for (const auto& [n, mult] : shuffle_product(a, b)) {
        lhs += Rational(static_cast<unsigned long>(mult)) * m.value(n);
      }
      Rational rhs = expected(a, b);
      ++report.pairs_checked;
      if (lhs != rhs) {
        report.passed = false;
        report.failure = ShuffleFailure{Word(alpha, a), Word(alpha, b), lhs, rhs};
        return report;
      }
    }
  }
  return report;
}

}  // namespace detail

// M^empty = 0 and sum_n sh(a,b;n) M^n = 0 for nonempty a, b.
inline ShuffleCheckReport check_alternal(const Mould& m) {
  return detail::check_shuffle_relation(m, true, Rational(0),
                                        [](const Letters&, const Letters&) { return Rational(0); });
}

// M^empty = 1 and sum_n sh(a,b;n) M^n = M^a M^b.
inline ShuffleCheckReport check_symmetral(const Mould& m) {
  return detail::check_shuffle_relation(
      m, false, Rational(1), [&m](const Letters& a, const Letters& b) { return Rational(m.value(a) * m.value(b)); });
}

// ---------------------------------------------------------------------------
// Named moulds.

inline Mould make_I(AlphabetPtr alphabet, int bound) {
  return Mould::from_rule(std::move(alphabet), bound,
                          [](const Letters& w) { return Rational(w.size() == 1 ? 1 : 0); });
}

inline Mould make_I_letter(AlphabetPtr alphabet, Letter letter, int bound) {
  if (!alphabet->contains(letter)) throw DomainError("make_I_letter: letter outside alphabet");
  return Mould::from_rule(std::move(alphabet), bound, [letter](const Letters& w) {
    return Rational(w.size() == 1 && w[0] == letter ? 1 : 0);
  });
}

inline Mould make_E(AlphabetPtr alphabet, int bound) {
  return Mould::from_rule(std::move(alphabet), bound,
                          [](const Letters& w) { return inverse_factorial(static_cast<unsigned>(w.size())); });
}

// S^{n1..nr} = 1 / (nr (nr + n_{r-1}) ... (nr + ... + n1)) on the integer alphabet.
inline Mould make_S_N(int bound) {
  return Mould::from_rule(Alphabet::integers(), bound, [](const Letters& w) {
    Integer den = 1, partial = 0;
    for (auto it = w.rbegin(); it != w.rend(); ++it) {
      partial += it->value;
      den *= partial;
    }
    return Rational(Integer(1), den);
  });
}

inline Mould make_T_N(int bound) { return mould_log(make_S_N(bound)); }

// S_Omega^w = 1/(p1! ... pN!) when w = x1^p1 ... xN^pN, else 0.
inline Mould make_S_Omega(int letters, int bound) {
  return Mould::from_rule(omega_alphabet(letters), bound, [](const Letters& w) {
    Integer den = 1;
    std::size_t i = 0;
    while (i < w.size()) {
      std::size_t j = i;
      while (j < w.size() && w[j] == w[i]) ++j;
      if (j < w.size() && w[j] < w[i]) return Rational(0);
      den *= factorial(static_cast<unsigned>(j - i));
      i = j;
    }
    return Rational(Integer(1), den);
  });
}

inline Mould make_T_Omega(int letters, int bound) { return mould_log(make_S_Omega(letters, bound)); }

// Closed form of U = sum_j Ad_{e^{I_1}} ... Ad_{e^{I_{j-1}}} I_j. Its support is the
// words x1^p1 ... x_{j-1}^p_{j-1} x_j x_{j-1}^q_{j-1} ... x1^q1, with value
// prod_i (-1)^{q_i} / (p_i! q_i!). For two letters: 1 on x, (-1)^q/(p!q!) on x^p y x^q.
inline Mould make_U(int letters, int bound) {
  return Mould::from_rule(omega_alphabet(letters), bound, [](const Letters& w) {
    if (w.empty()) return Rational(0);
    // The peak letter x_j is the maximum and occurs exactly once.
    const auto peak_it = std::max_element(w.begin(), w.end());
    const Letter peak = *peak_it;
    if (std::count(w.begin(), w.end(), peak) != 1) return Rational(0);
    const std::size_t pos = static_cast<std::size_t>(peak_it - w.begin());
    std::vector<unsigned> left(peak.value, 0), right(peak.value, 0);
    // Left part nondecreasing, right part nonincreasing, both below the peak.
    for (std::size_t i = 0; i < pos; ++i) {
      if (i && w[i] < w[i - 1]) return Rational(0);
      ++left[w[i].value];
    }
    for (std::size_t i = pos + 1; i < w.size(); ++i) {
      if (i > pos + 1 && w[i] > w[i - 1]) return Rational(0);
      ++right[w[i].value];
    }
    Rational c = 1;
    for (std::uint32_t i = 0; i < peak.value; ++i) {
      c /= Rational(factorial(left[i]) * factorial(right[i]));
      if (right[i] % 2) c = -c;
    }
    return c;
  });
}

inline Mould make_U(int bound) { return make_U(2, bound); }

// ---------------------------------------------------------------------------
// Seeded random moulds for property tests: numerators in -3..3, denominators in 1..4.

inline Rational random_coefficient(std::mt19937_64& rng) {
  std::uniform_int_distribution<long> num(-3, 3);
  std::uniform_int_distribution<unsigned long> den(1, 4);
  const long p = num(rng);
  return make_rational(p, den(rng));
}

inline Mould random_mould(AlphabetPtr alphabet, int bound, std::mt19937_64& rng,
                          std::optional<Rational> empty_value = std::nullopt) {
  return Mould::from_rule(std::move(alphabet), bound, [&](const Letters& w) {
    if (w.empty() && empty_value) return *empty_value;
    return random_coefficient(rng);
  });
}

// Alternal by construction: a combination of one-letter-supported moulds and
// nested mould commutators of them (depth up to 4).
inline Mould random_alternal_mould(const AlphabetPtr& alphabet, int bound, std::mt19937_64& rng) {
  auto one_letter = [&] {
    return Mould::from_rule(alphabet, bound, [&](const Letters& w) {
      return w.size() == 1 ? random_coefficient(rng) : Rational(0);
    });
  };
  Mould result = one_letter();
  Mould nested = one_letter();
  for (int depth = 2; depth <= 4; ++depth) {
    nested = mould_commutator(one_letter(), nested);
    result = mould_add(result, mould_scale(random_coefficient(rng), nested));
  }
  result = mould_add(result, mould_commutator(mould_commutator(one_letter(), one_letter()),
                                              mould_commutator(one_letter(), one_letter())));
  return result;
}

}  // namespace mouldlab
