#pragma once

#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <random>
#include <string>
#include <utility>
#include <vector>

#include "mouldlab/comould.hpp"
#include "mouldlab/freealg.hpp"
#include "mouldlab/mould.hpp"
#include "mouldlab/report.hpp"

namespace mouldlab {

// A map from nonempty source words to target letters, with optional claimed
// properties. Claims are checked exhaustively up to a bound before use.
class SigmaMap {
 public:
  using Fn = std::function<Letter(const Letters&)>;
  using Phi = std::function<Rational(Letter)>;

  SigmaMap(std::string name, AlphabetPtr source, AlphabetPtr target, Fn fn)
      : name_(std::move(name)), source_(std::move(source)), target_(std::move(target)), fn_(std::move(fn)) {}

  SigmaMap& claim_permutation_invariant() {
    permutation_invariant_ = true;
    return *this;
  }
  // Claims that phi o sigma turns concatenation into addition.
  SigmaMap& claim_additive_under(Phi phi) {
    additive_under_ = std::move(phi);
    return *this;
  }

  const std::string& name() const noexcept { return name_; }
  const AlphabetPtr& source() const noexcept { return source_; }
  const AlphabetPtr& target() const noexcept { return target_; }
  bool claims_permutation_invariant() const noexcept { return permutation_invariant_; }
  const std::optional<Phi>& additive_under() const noexcept { return additive_under_; }

  Letter operator()(const Letters& w) const {
    if (w.empty()) throw DomainError("sigma is defined on nonempty words only");
    const Letter l = fn_(w);
    if (!target_->contains(l)) throw DomainError("sigma(" + render_letters(*source_, w) + ") outside target alphabet");
    return l;
  }

  // sigma(w) == sigma(any rearrangement of w) for all words of grade <= bound.
  bool verify_permutation_invariant(int bound) const {
    for (const auto& w : words_up_to(*source_, bound)) {
      if (w.empty()) continue;
      Letters sorted = w;
      std::sort(sorted.begin(), sorted.end());
      if ((*this)(w) != (*this)(sorted)) return false;
    }
    return true;
  }

  bool verify_additive(const Phi& phi, int bound) const {
    const auto words = words_up_to(*source_, bound);
    for (const auto& a : words) {
      if (a.empty()) continue;
      for (const auto& b : words) {
        if (b.empty() || source_->grade(a) + source_->grade(b) > bound) continue;
        if (phi((*this)(concat(a, b))) != phi((*this)(a)) + phi((*this)(b))) return false;
      }
    }
    return true;
  }

 private:
  std::string name_;
  AlphabetPtr source_, target_;
  Fn fn_;
  bool permutation_invariant_ = false;
  std::optional<Phi> additive_under_;
};

inline Rational inclusion(Letter l) { return Rational(l.value); }

// sigma = word length, onto the positive integers.
inline SigmaMap sigma_length(AlphabetPtr source) {
  SigmaMap s("length", std::move(source), Alphabet::integers(),
             [](const Letters& w) { return Letter{static_cast<std::uint32_t>(w.size())}; });
  s.claim_permutation_invariant().claim_additive_under(inclusion);
  return s;
}

// sigma = letter sum on the integer alphabet (the classical composition).
inline SigmaMap sigma_letter_sum() {
  SigmaMap s("letter-sum", Alphabet::integers(), Alphabet::integers(), [](const Letters& w) {
    std::uint32_t total = 0;
    for (Letter l : w) total += l.value;
    return Letter{total};
  });
  s.claim_permutation_invariant().claim_additive_under(inclusion);
  return s;
}

namespace detail {

// Calls visit(blocks) for each splitting of w into nonempty consecutive blocks.
template <class Visit>
void for_each_composition(const Letters& w, Visit&& visit) {
  if (w.empty()) return;
  const std::size_t cuts = w.size() - 1;
  std::vector<Letters> blocks;
  for (std::size_t mask = 0; mask < (std::size_t{1} << cuts); ++mask) {
    blocks.clear();
    Letters current{w[0]};
    for (std::size_t i = 1; i < w.size(); ++i) {
      if (mask >> (i - 1) & 1) {
        blocks.push_back(std::move(current));
        current.clear();
      }
      current.push_back(w[i]);
    }
    blocks.push_back(std::move(current));
    visit(static_cast<const std::vector<Letters>&>(blocks));
  }
}

}  // namespace detail

// Largest target grade reached by sigma(w^1) ... sigma(w^s) over source words of grade <= bound.
inline int required_target_bound(const SigmaMap& sigma, int bound) {
  int required = 0;
  for (const auto& w : words_up_to(*sigma.source(), bound)) {
    detail::for_each_composition(w, [&](const std::vector<Letters>& blocks) {
      int g = 0;
      for (const auto& b : blocks) g += sigma.target()->letter_grade(sigma(b));
      required = std::max(required, g);
    });
  }
  return required;
}

// (M o_sigma U)^empty = M^empty;
// (M o_sigma U)^w = sum over w = w^1 ... w^s (blocks nonempty) of M^{sigma(w^1)..sigma(w^s)} U^{w^1} ... U^{w^s}.
inline Mould sigma_compose(const Mould& m, const Mould& u, const SigmaMap& sigma, int bound) {
  require_same_alphabet(m.alphabet(), sigma.target(), "sigma_compose (M vs target)");
  require_same_alphabet(u.alphabet(), sigma.source(), "sigma_compose (U vs source)");
  if (u.bound() < bound) throw BoundError("sigma_compose: U's bound is below the output bound", bound);
  const int m_required = required_target_bound(sigma, bound);
  if (m.bound() < m_required) throw BoundError("sigma_compose: M's bound does not cover reachable words", m_required);

  std::map<Letters, Letter> sigma_cache;
  auto sigma_of = [&](const Letters& b) {
    auto it = sigma_cache.find(b);
    if (it == sigma_cache.end()) it = sigma_cache.emplace(b, sigma(b)).first;
    return it->second;
  };
  Mould::Table t;
  t.emplace(Letters{}, m.empty_value());
  Letters target;
  for (const auto& w : words_up_to(*u.alphabet(), bound)) {
    if (w.empty()) continue;
    Rational sum = 0;
    detail::for_each_composition(w, [&](const std::vector<Letters>& blocks) {
      Rational prod = 1;
      for (const auto& b : blocks) {
        prod *= u.value(b);
        if (prod == 0) return;
      }
      target.clear();
      for (const auto& b : blocks) target.push_back(sigma_of(b));
      prod *= m.value(target);
      sum += prod;
    });
    if (sum != 0) t.emplace(w, std::move(sum));
  }
  return Mould(u.alphabet(), bound, std::move(t));
}

// sigma = length: M D = (M odot U) B.
inline Mould odot(const Mould& m, const Mould& u) { return sigma_compose(m, u, sigma_length(u.alphabet()), u.bound()); }

// U by conjugation: sum_j Ad_{e^{I_1}} ... Ad_{e^{I_{j-1}}} I_j, with Ad_E V = E x V x E^{-1};
// for two letters this is e^{I_x} x (I_x + I_y) x e^{-I_x}.
inline Mould make_U_via_conjugation(int letters, int bound) {
  const AlphabetPtr alpha = omega_alphabet(letters);
  Mould u = mould_zero(alpha, bound);
  for (int j = 0; j < letters; ++j) {
    Mould term = make_I_letter(alpha, Letter{static_cast<std::uint32_t>(j)}, bound);
    for (int i = j - 1; i >= 0; --i) {
      const Mould ii = make_I_letter(alpha, Letter{static_cast<std::uint32_t>(i)}, bound);
      term = mould_mul(mould_mul(mould_exp(ii), term), mould_exp(mould_scale(Rational(-1), ii)));
    }
    u = mould_add(u, term);
  }
  return u;
}

inline Mould make_U_via_conjugation(int bound) { return make_U_via_conjugation(2, bound); }

// Restriction of a mould to the words of one grade.
inline Mould restrict_to_grade(const Mould& m, int grade) {
  Mould::Table t;
  for (const auto& [w, c] : m.entries()) {
    if (m.alphabet()->grade(w) == grade) t.emplace(w, c);
  }
  return Mould(m.alphabet(), m.bound(), std::move(t));
}

// Conjugation form equals the closed form, and fD_n = U_n B for n <= bound.
inline std::vector<CheckResult> check_U_identities(int letters, int bound) {
  std::vector<CheckResult> out;
  const Mould closed = make_U(letters, bound);
  const Mould conj = make_U_via_conjugation(letters, bound);
  const auto diff = first_difference(conj, closed);
  out.push_back({"U conjugation = closed form", !diff,
                 diff ? "differ at " + diff->word : "equal through length " + std::to_string(bound)});
  const GeneratorFamily b = make_B_family(letters, bound);
  const GeneratorFamily fd = letters == 2 ? make_D_family(bound) : make_fD_family(letters, bound);
  bool ok = true;
  std::string detail = "equal for n <= " + std::to_string(bound);
  for (int n = 1; n <= bound && ok; ++n) {
    const SeriesReport rep = compare_series(expand(restrict_to_grade(closed, n), b, bound),
                                            fd.member(Letter{static_cast<std::uint32_t>(n)}));
    if (!rep.equal) {
      ok = false;
      detail = "n=" + std::to_string(n) + ": " + rep.describe();
    }
  }
  out.push_back({"D_n = U_n B", ok, detail});
  return out;
}

// The unique solution of M^empty = 1, r(w) M^w = (U x M)^w, solved grade by grade.
inline Mould solve_length_nabla_equation(const Mould& u, int bound) {
  if (u.alphabet()->is_integer()) throw DomainError("length equation is posed on a named alphabet");
  Mould::Table t;
  t.emplace(Letters{}, Rational(1));
  for (const auto& w : words_up_to(*u.alphabet(), bound)) {
    if (w.empty()) continue;
    Rational sum = 0;
    for (std::size_t k = 1; k <= w.size(); ++k) {
      auto it = t.find(slice(w, k, w.size()));
      if (it == t.end()) continue;
      sum += u.value(slice(w, 0, k)) * it->second;
    }
    sum /= static_cast<unsigned long>(w.size());
    if (sum != 0) t.emplace(w, std::move(sum));
  }
  return Mould(u.alphabet(), bound, std::move(t));
}

// ---------------------------------------------------------------------------
// Property suite for sigma-composition.

struct SuiteInputs {
  Mould u;                                          // over sigma.source()
  int bound = 5;                                    // output bound of the compositions
  std::optional<GeneratorFamily> family;            // over sigma.source(), enables (vi)
  std::optional<SigmaMap> tau;                      // target words -> third alphabet, enables (vii)
  std::uint64_t seed = 20240601;
  int samples = 3;
};

namespace detail {

inline std::string diff_text(const std::optional<MouldDiff>& d) {
  return d ? "differ at " + d->word + ": " + d->lhs.get_str() + " vs " + d->rhs.get_str() : "equal";
}

// psi(w) = tau(sigma(w)) read as a one-letter word.
inline SigmaMap chain_map(const SigmaMap& tau, const SigmaMap& sigma) {
  return SigmaMap("tau.sigma", sigma.source(), tau.target(),
                  [tau, sigma](const Letters& w) { return tau(Letters{sigma(w)}); });
}

}  // namespace detail

// psi(w^1 ... w^s) == tau(sigma(w^1) ... sigma(w^s)) for all splittings within bound.
inline bool verify_chain_compatibility(const SigmaMap& tau, const SigmaMap& sigma, int bound) {
  const SigmaMap psi = detail::chain_map(tau, sigma);
  for (const auto& w : words_up_to(*sigma.source(), bound)) {
    bool ok = true;
    detail::for_each_composition(w, [&](const std::vector<Letters>& blocks) {
      Letters image;
      for (const auto& b : blocks) image.push_back(sigma(b));
      if (psi(w) != tau(image)) ok = false;
    });
    if (!ok) return false;
  }
  return true;
}

inline std::vector<CheckResult> property_suite(const SigmaMap& sigma, const SuiteInputs& in) {
  std::vector<CheckResult> out;
  const int bound = in.bound;
  const AlphabetPtr& target = sigma.target();
  const int mb = required_target_bound(sigma, bound);
  std::mt19937_64 rng(in.seed);
  auto compose = [&](const Mould& m) { return sigma_compose(m, in.u, sigma, bound); };

  // Sample moulds on the target alphabet.
  std::vector<Mould> general, vanishing, unital, alternal, symmetral;
  for (int i = 0; i < in.samples; ++i) {
    general.push_back(random_mould(target, mb, rng));
    vanishing.push_back(random_mould(target, mb, rng, Rational(0)));
    unital.push_back(random_mould(target, mb, rng, Rational(1)));
    alternal.push_back(random_alternal_mould(target, mb, rng));
    symmetral.push_back(mould_exp(alternal.back()));
  }
  if (target->is_integer()) {
    general.push_back(make_S_N(mb));
    unital.push_back(make_S_N(mb));
    vanishing.push_back(make_T_N(mb));
    alternal.push_back(make_T_N(mb));
    symmetral.push_back(make_S_N(mb));
  }

  {
    std::optional<MouldDiff> bad;
    for (std::size_t i = 0; i < general.size() && !bad; ++i) {
      const Mould& m = general[i];
      const Mould& n = general[(i + 1) % general.size()];
      bad = first_difference(mould_mul(compose(m), compose(n)), compose(mould_mul(m, n)));
    }
    out.push_back({"(i) (M o U) x (N o U) = (M x N) o U", !bad, detail::diff_text(bad)});
  }
  {
    std::optional<MouldDiff> bad;
    for (const auto& m : vanishing) {
      if (!bad) bad = first_difference(mould_exp(compose(m)), compose(mould_exp(m)));
    }
    for (const auto& m : unital) {
      if (!bad) bad = first_difference(mould_log(compose(m)), compose(mould_log(m)));
    }
    out.push_back({"(ii) exp/log commute with o U", !bad, detail::diff_text(bad)});
  }
  {
    const Mould i_target = make_I(target, mb);
    std::optional<MouldDiff> bad =
        first_difference(compose(i_target), mould_sub(in.u.truncated(bound),
                                                      mould_scale(in.u.empty_value(), mould_unit(in.u.alphabet(), bound))));
    // Also with a U that does not vanish on the empty word.
    const Mould u2 = random_mould(in.u.alphabet(), bound, rng, Rational(2));
    if (!bad) {
      bad = first_difference(sigma_compose(i_target, u2, sigma, bound),
                             mould_sub(u2, mould_scale(u2.empty_value(), mould_unit(u2.alphabet(), bound))));
    }
    out.push_back({"(iii) I o U = U - U^empty 1", !bad, detail::diff_text(bad)});
  }
  {
    const std::string name = "(iv) (nabla_phi M) o U = nabla_psi (M o U)";
    if (!sigma.additive_under()) {
      out.push_back(not_applicable(name, "no additivity claim on sigma"));
    } else if (!sigma.verify_additive(*sigma.additive_under(), bound)) {
      out.push_back(not_applicable(name, "phi o sigma is not additive on concatenation"));
    } else {
      const auto& phi = *sigma.additive_under();
      auto psi = [&](Letter l) { return phi(sigma(Letters{l})); };
      std::optional<MouldDiff> bad;
      for (const auto& m : general) {
        if (!bad) bad = first_difference(compose(mould_nabla(phi, m)), mould_nabla(psi, compose(m)));
      }
      out.push_back({name, !bad, detail::diff_text(bad)});
    }
  }
  {
    const std::string name = "(v) alternality/symmetrality preserved";
    const ShuffleCheckReport u_alt = check_alternal(in.u.truncated(bound));
    if (!u_alt.passed) {
      out.push_back(not_applicable(name, "U is not alternal: " + u_alt.describe()));
    } else if (!sigma.claims_permutation_invariant() || !sigma.verify_permutation_invariant(bound)) {
      out.push_back(not_applicable(name, "sigma is not permutation invariant"));
    } else {
      std::string detail = "ok";
      bool ok = true;
      for (const auto& m : alternal) {
        const auto rep = check_alternal(compose(m));
        if (ok && !rep.passed) ok = false, detail = "alternal image: " + rep.describe();
      }
      for (const auto& m : symmetral) {
        const auto rep = check_symmetral(compose(m));
        if (ok && !rep.passed) ok = false, detail = "symmetral image: " + rep.describe();
      }
      out.push_back({name, ok, detail});
    }
  }
  {
    const std::string name = "(vi) M D = (M o U) B";
    if (!in.family) {
      out.push_back(not_applicable(name, "no comould family supplied"));
    } else {
      const GeneratorFamily& b = *in.family;
      const int degree = std::min(bound, b.max_degree());
      // D_n = sum over sigma(w) = n of U^w B_w; words of grade > degree vanish after truncation.
      std::map<Letter, NcSeries> members;
      for (const auto& w : words_up_to(*sigma.source(), degree)) {
        if (w.empty()) continue;
        const Rational c = in.u.value(w);
        if (c == 0) continue;
        const Letter n = sigma(w);
        auto it = members.find(n);
        if (it == members.end()) it = members.emplace(n, NcSeries(b.generators(), b.max_degree())).first;
        add_scaled(it->second, c, b_word(b, Word(sigma.source(), w)));
      }
      if (!target->is_integer()) {
        for (Letter l : target->letters()) members.emplace(l, NcSeries(b.generators(), b.max_degree()));
      }
      std::string detail = "equal through degree " + std::to_string(degree);
      bool ok = true;
      try {
        const GeneratorFamily d(target, b.generators(), b.max_degree(), std::move(members));
        for (const auto& m : general) {
          const SeriesReport rep =
              compare_series(expand(m.truncated(std::min(m.bound(), std::max(degree, 0))), d, degree),
                             expand(compose(m), b, degree));
          if (ok && !rep.equal) ok = false, detail = rep.describe();
        }
      } catch (const Error& e) {
        ok = false;
        detail = e.what();
      }
      out.push_back({name, ok, detail});
    }
  }
  {
    const std::string name = "(vii) M o_psi (N o_sigma U) = (M o_tau N) o_sigma U";
    if (!in.tau) {
      out.push_back(not_applicable(name, "no tau supplied"));
    } else if (!same_alphabet(in.tau->source(), target)) {
      out.push_back(not_applicable(name, "tau is not defined on sigma's target words"));
    } else if (!verify_chain_compatibility(*in.tau, sigma, bound)) {
      out.push_back(not_applicable(name, "psi = tau o sigma fails the splitting compatibility"));
    } else {
      const SigmaMap& tau = *in.tau;
      const SigmaMap psi = detail::chain_map(tau, sigma);
      const int n_bound = mb;
      const int m_bound = std::max(required_target_bound(tau, n_bound), required_target_bound(psi, bound));
      std::optional<MouldDiff> bad;
      for (int i = 0; i < in.samples && !bad; ++i) {
        const Mould m = random_mould(tau.target(), m_bound, rng);
        const Mould n = random_mould(target, n_bound, rng);
        const Mould lhs = sigma_compose(m, sigma_compose(n, in.u, sigma, bound), psi, bound);
        const Mould rhs = sigma_compose(sigma_compose(m, n, tau, n_bound), in.u, sigma, bound);
        bad = first_difference(lhs, rhs);
      }
      out.push_back({name, !bad, detail::diff_text(bad)});
    }
  }
  return out;
}

// The concrete instance: sigma = length from {x, y}, the mould U, the B-family, and
// tau = letter sum for (vii) (so that tau o sigma is again the length).
inline SuiteInputs length_suite_inputs(int bound, int letters = 2) {
  return SuiteInputs{make_U(letters, bound), bound, make_B_family(letters, bound), sigma_letter_sum(), 20240601, 3};
}

// sigma = letter sum on the integers, with a random alternal U and the fD-family.
inline SuiteInputs letter_sum_suite_inputs(int bound, std::uint64_t seed = 7) {
  std::mt19937_64 rng(seed);
  return SuiteInputs{random_alternal_mould(Alphabet::integers(), bound, rng), bound, make_fD_family(2, bound),
                     sigma_letter_sum(), seed, 3};
}

}  // namespace mouldlab
