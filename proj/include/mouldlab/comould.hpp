#pragma once

#include <map>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "mouldlab/freealg.hpp"
#include "mouldlab/mould.hpp"
#include "mouldlab/words.hpp"

namespace mouldlab {

// An indexed family n -> B_n of series, with order(B_n) >= grade(n) >= 1.
// Integer letters above the degree cap are not stored; their members truncate to zero.
class GeneratorFamily {
 public:
  GeneratorFamily(AlphabetPtr alphabet, int generators, int max_degree, std::map<Letter, NcSeries> members)
      : alphabet_(std::move(alphabet)),
        generators_(generators),
        max_degree_(max_degree),
        members_(std::move(members)),
        zero_(generators, max_degree) {
    for (const auto& [l, b] : members_) {
      if (!alphabet_->contains(l)) throw DomainError("family member outside alphabet");
      if (b.generators() != generators_ || b.max_degree() != max_degree_) {
        throw DomainError("family member has mismatched generators or degree cap");
      }
      const auto ord = b.order();
      if (ord && *ord < alphabet_->letter_grade(l)) {
        throw DomainError("family member " + alphabet_->letter_name(l) + " has order below its grade");
      }
    }
    if (!alphabet_->is_integer()) {
      for (Letter l : alphabet_->letters()) {
        if (!members_.count(l)) throw DomainError("family is missing letter " + alphabet_->letter_name(l));
      }
    }
  }

  const AlphabetPtr& alphabet() const noexcept { return alphabet_; }
  int generators() const noexcept { return generators_; }
  int max_degree() const noexcept { return max_degree_; }

  const NcSeries& member(Letter l) const {
    if (!alphabet_->contains(l)) throw DomainError("letter outside family alphabet");
    auto it = members_.find(l);
    if (it != members_.end()) return it->second;
    if (alphabet_->letter_grade(l) > max_degree_) return zero_;
    throw DomainError("family has no member for letter " + alphabet_->letter_name(l));
  }

 private:
  AlphabetPtr alphabet_;
  int generators_;
  int max_degree_;
  std::map<Letter, NcSeries> members_;
  NcSeries zero_;
};

// B_empty = 1, B_{n1..nr} = B_{n1} ... B_{nr}.
inline NcSeries b_word(const GeneratorFamily& f, const Word& w) {
  require_same_alphabet(f.alphabet(), w.alphabet(), "b_word");
  NcSeries out = NcSeries::one(f.generators(), f.max_degree());
  for (Letter l : w.letters()) out = nc_mul(out, f.member(l));
  return out;
}

// B_[empty] = 0, B_[n1..nr] = ad_{B_n1} ... ad_{B_n(r-1)} B_nr.
inline NcSeries b_bracket(const GeneratorFamily& f, const Word& w) {
  require_same_alphabet(f.alphabet(), w.alphabet(), "b_bracket");
  if (w.empty()) return NcSeries(f.generators(), f.max_degree());
  const auto& ls = w.letters();
  NcSeries out = f.member(ls.back());
  for (std::size_t i = ls.size() - 1; i-- > 0;) out = commutator(f.member(ls[i]), out);
  return out;
}

namespace detail {

inline void require_expansion_bounds(const Mould& m, const GeneratorFamily& f, int degree, const char* op) {
  require_same_alphabet(m.alphabet(), f.alphabet(), op);
  if (degree < 0) throw DomainError(std::string(op) + ": negative degree");
  if (degree > f.max_degree()) {
    throw BoundError(std::string(op) + ": family degree cap " + std::to_string(f.max_degree()) + " below requested degree",
                     degree);
  }
  // Words of grade g contribute only in degree >= g, so grade <= degree suffices.
  if (m.bound() < degree) {
    throw BoundError(std::string(op) + ": mould bound " + std::to_string(m.bound()) + " insufficient for degree " +
                         std::to_string(degree),
                     degree);
  }
}

inline void expand_from(const Mould& m, const GeneratorFamily& f, int degree, const std::vector<Letter>& letters,
                        Letters& word, int grade, const NcSeries& prefix, NcSeries& out) {
  const Rational c = m.value(word);
  if (c != 0) add_scaled(out, c, prefix);
  for (Letter l : letters) {
    const int g = grade + m.alphabet()->letter_grade(l);
    if (g > degree) continue;
    word.push_back(l);
    expand_from(m, f, degree, letters, word, g, nc_truncate(nc_mul(prefix, f.member(l)), degree), out);
    word.pop_back();
  }
}

inline void lie_expand_from(const Mould& m, const GeneratorFamily& f, int degree, const std::vector<Letter>& letters,
                            Letters& reversed_word, int grade, const NcSeries& bracket, NcSeries& out) {
  const Letters word(reversed_word.rbegin(), reversed_word.rend());
  const Rational c = m.value(word);
  if (c != 0) add_scaled(out, c / static_cast<unsigned long>(word.size()), bracket);
  for (Letter l : letters) {
    const int g = grade + m.alphabet()->letter_grade(l);
    if (g > degree) continue;
    reversed_word.push_back(l);
    lie_expand_from(m, f, degree, letters, reversed_word, g, commutator(f.member(l), bracket), out);
    reversed_word.pop_back();
  }
}

inline std::vector<Letter> letters_up_to(const Alphabet& alphabet, int degree) {
  if (!alphabet.is_integer()) return alphabet.letters();
  std::vector<Letter> out;
  for (int n = 1; n <= degree; ++n) out.push_back(Letter{static_cast<std::uint32_t>(n)});
  return out;
}

}  // namespace detail

// MB = sum_w M^w B_w, exact through the requested degree.
inline NcSeries expand(const Mould& m, const GeneratorFamily& f, int degree) {
  detail::require_expansion_bounds(m, f, degree, "expand");
  NcSeries out(f.generators(), degree);
  Letters word;
  detail::expand_from(m, f, degree, detail::letters_up_to(*f.alphabet(), degree), word, 0,
                      NcSeries::one(f.generators(), degree), out);
  return out;
}

// M[B] = sum_{w nonempty} (1/r(w)) M^w B_[w].
inline NcSeries lie_expand(const Mould& m, const GeneratorFamily& f, int degree) {
  detail::require_expansion_bounds(m, f, degree, "lie_expand");
  NcSeries out(f.generators(), degree);
  const auto letters = detail::letters_up_to(*f.alphabet(), degree);
  for (Letter l : letters) {
    const int g = f.alphabet()->letter_grade(l);
    if (g > degree) continue;
    Letters rw{l};
    detail::lie_expand_from(m, f, degree, letters, rw, g, nc_truncate(f.member(l), degree), out);
  }
  return out;
}

// Left-nested bracket [[..[B_n1, B_n2], ..], B_nr]; zero for the empty word.
inline NcSeries b_left_bracket(const GeneratorFamily& f, const Word& w) {
  require_same_alphabet(f.alphabet(), w.alphabet(), "b_left_bracket");
  if (w.empty()) return NcSeries(f.generators(), f.max_degree());
  const auto& ls = w.letters();
  NcSeries out = f.member(ls.front());
  for (std::size_t i = 1; i < ls.size(); ++i) out = commutator(out, f.member(ls[i]));
  return out;
}

enum class BracketForm {
  right_nested,  // B_[n] = sum (-1)^{r(b)} r(a) sh(a,b;n) B_{a rev(b)}
  left_nested,   // [[..]]_n = sum (-1)^{r(b)} r(a) sh(a,b;n) B_{rev(b) a}
};

// Evaluates both sides of the Lie/associative comould relation in the free algebra.
// With right-nested brackets the associative word is a rev(b); the mirrored word
// rev(b) a belongs to the left-nested bracket.
inline SeriesReport bracket_relation_check(const GeneratorFamily& f, const Word& w,
                                           BracketForm form = BracketForm::right_nested) {
  const NcSeries lhs = form == BracketForm::right_nested ? b_bracket(f, w) : b_left_bracket(f, w);
  const auto& n = w.letters();
  // Every (a, b) with sh(a,b;n) != 0 arises as the letters of n inside / outside a position set.
  std::set<std::pair<Letters, Letters>> pairs;
  for (std::size_t mask = 0; mask < (std::size_t{1} << n.size()); ++mask) {
    Letters a, b;
    for (std::size_t i = 0; i < n.size(); ++i) (mask >> i & 1 ? a : b).push_back(n[i]);
    pairs.emplace(std::move(a), std::move(b));
  }
  NcSeries rhs(f.generators(), f.max_degree());
  for (const auto& [a, b] : pairs) {
    const std::uint64_t sh = shuffle_coefficient(a, b, n);
    if (sh == 0 || a.empty()) continue;
    Rational c(static_cast<unsigned long>(a.size() * sh));
    if (b.size() % 2) c = -c;
    const Letters word = form == BracketForm::right_nested ? concat(a, reversed(b)) : concat(reversed(b), a);
    add_scaled(rhs, c, b_word(f, Word(f.alphabet(), word)));
  }
  return compare_series(lhs, rhs);
}

// ---------------------------------------------------------------------------
// Families.

// B_{x_j} = X_j on the alphabet {x_1..x_N}; extra generators (beyond N) stay free.
inline GeneratorFamily make_B_family(int letters, int max_degree, int generators = 0) {
  if (generators == 0) generators = letters;
  if (generators < letters) throw DomainError("make_B_family: fewer generators than letters");
  auto alphabet = omega_alphabet(letters);
  std::map<Letter, NcSeries> members;
  for (int j = 0; j < letters; ++j) {
    members.emplace(Letter{static_cast<std::uint32_t>(j)},
                    NcSeries::generator(generators, max_degree, static_cast<std::uint32_t>(j)));
  }
  return GeneratorFamily(std::move(alphabet), generators, max_degree, std::move(members));
}

// D_n = ad_X^{n-1}(X + Y) / (n-1)! over two generators.
inline GeneratorFamily make_D_family(int max_degree) {
  const NcSeries x = NcSeries::generator(2, max_degree, 0);
  const NcSeries x_plus_y = x + NcSeries::generator(2, max_degree, 1);
  std::map<Letter, NcSeries> members;
  NcSeries term = x_plus_y;
  for (int n = 1; n <= max_degree; ++n) {
    members.emplace(Letter{static_cast<std::uint32_t>(n)}, nc_scale(inverse_factorial(static_cast<unsigned>(n - 1)), term));
    term = commutator(x, term);
  }
  return GeneratorFamily(Alphabet::integers(), 2, max_degree, std::move(members));
}

// fD_n = sum_j sum_{m_1+..+m_{j-1} = n-1} ad_{X_1}^{m_1} ... ad_{X_{j-1}}^{m_{j-1}} X_j / (m_1! ... m_{j-1}!).
inline GeneratorFamily make_fD_family(int factors, int max_degree) {
  std::map<Letter, NcSeries> members;
  for (int n = 1; n <= max_degree; ++n) members.emplace(Letter{static_cast<std::uint32_t>(n)}, NcSeries(factors, max_degree));
  for (int j = 1; j <= factors; ++j) {
    // inner[k] holds sum over exponent choices for ad_{X_i}..ad_{X_{j-1}} of total k, applied to X_j.
    std::vector<NcSeries> inner(static_cast<std::size_t>(max_degree), NcSeries(factors, max_degree));
    inner[0] = NcSeries::generator(factors, max_degree, static_cast<std::uint32_t>(j - 1));
    for (int i = j - 1; i >= 1; --i) {
      const NcSeries xi = NcSeries::generator(factors, max_degree, static_cast<std::uint32_t>(i - 1));
      std::vector<NcSeries> next(static_cast<std::size_t>(max_degree), NcSeries(factors, max_degree));
      for (int k = 0; k < max_degree; ++k) {
        if (inner[static_cast<std::size_t>(k)].is_zero()) continue;
        NcSeries applied = inner[static_cast<std::size_t>(k)];
        for (int m = 0; k + m < max_degree; ++m) {
          add_scaled(next[static_cast<std::size_t>(k + m)], inverse_factorial(static_cast<unsigned>(m)), applied);
          applied = commutator(xi, applied);
        }
      }
      inner = std::move(next);
    }
    for (int n = 1; n <= max_degree; ++n) {
      NcSeries& member = members.at(Letter{static_cast<std::uint32_t>(n)});
      add_scaled(member, Rational(1), inner[static_cast<std::size_t>(n - 1)]);
    }
  }
  return GeneratorFamily(Alphabet::integers(), factors, max_degree, std::move(members));
}

}  // namespace mouldlab
