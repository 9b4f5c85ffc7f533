#pragma once

#include <functional>
#include <map>
#include <string>
#include <vector>

#include "mouldlab/comould.hpp"
#include "mouldlab/freealg.hpp"
#include "mouldlab/mould.hpp"
#include "mouldlab/report.hpp"

namespace mouldlab {

enum class BchMethod { dynkin, kimura_product, kimura_log, direct };

struct BchRequest {
  int factors = 2;
  int max_degree = 5;
  BchMethod method = BchMethod::kimura_log;
};

namespace detail {

// Coefficient of the generator word g in sum_k (-1)^{k-1}/k sum_{p^1..p^k} prod 1/p!,
// where g is the concatenation of the blocks X_1^{p^i_1} ... X_N^{p^i_N}.
// Enumerates k, then the nonzero exponent vectors p^1..p^k with total <= D.
class DynkinEnumerator {
 public:
  DynkinEnumerator(int factors, int max_degree) : factors_(factors), max_degree_(max_degree) {
    blocks_for_total_.resize(static_cast<std::size_t>(max_degree) + 1);
    std::vector<unsigned> p(static_cast<std::size_t>(factors), 0);
    collect_blocks(p, 0, 0);
  }

  std::map<GenWord, Rational> coefficients() const {
    std::map<GenWord, Rational> out;
    GenWord word;
    for (int k = 1; k <= max_degree_; ++k) {
      const Rational sign_over_k(k % 2 ? 1 : -1, k);
      recurse(k, max_degree_, word, sign_over_k, out);
    }
    return out;
  }

 private:
  struct Block {
    GenWord letters;
    Rational weight;  // 1 / (p_1! ... p_N!)
  };

  void collect_blocks(std::vector<unsigned>& p, std::size_t j, int total) {
    if (j == p.size()) {
      if (total == 0) return;
      Block b;
      Integer den = 1;
      for (std::size_t i = 0; i < p.size(); ++i) {
        for (unsigned r = 0; r < p[i]; ++r) b.letters.push_back(static_cast<std::uint32_t>(i));
        den *= factorial(p[i]);
      }
      b.weight = Rational(Integer(1), den);
      blocks_for_total_[static_cast<std::size_t>(total)].push_back(std::move(b));
      return;
    }
    for (int e = 0; total + e <= max_degree_; ++e) {
      p[j] = static_cast<unsigned>(e);
      collect_blocks(p, j + 1, total + e);
    }
    p[j] = 0;
  }

  void recurse(int blocks_left, int budget, GenWord& word, const Rational& c, std::map<GenWord, Rational>& out) const {
    if (blocks_left == 0) {
      out[word] += c;
      return;
    }
    // Each remaining block needs at least one letter.
    for (int total = 1; total <= budget - (blocks_left - 1); ++total) {
      for (const Block& b : blocks_for_total_[static_cast<std::size_t>(total)]) {
        word.insert(word.end(), b.letters.begin(), b.letters.end());
        recurse(blocks_left - 1, budget - total, word, Rational(c * b.weight), out);
        word.resize(word.size() - b.letters.size());
      }
    }
  }

  int factors_;
  int max_degree_;
  std::vector<std::vector<Block>> blocks_for_total_;
};

}  // namespace detail

// Dynkin's nested-bracket series for log(e^{X_1} ... e^{X_N}), truncated at degree D.
// Words ending in a repeated generator bracket to zero and are skipped before expansion.
inline NcSeries dynkin_log(int factors, int max_degree) {
  if (factors < 1) throw DomainError("dynkin_log needs at least one factor");
  if (max_degree < 0) throw DomainError("dynkin_log needs a nonnegative degree");
  NcSeries out(factors, max_degree);
  const auto coeffs = detail::DynkinEnumerator(factors, max_degree).coefficients();
  for (const auto& [g, c] : coeffs) {
    const std::size_t sigma = g.size();
    if (sigma >= 2 && g[sigma - 1] == g[sigma - 2]) continue;
    add_nested_bracket(out, g, c / static_cast<unsigned long>(sigma));
  }
  return out;
}

// 1 + sum S_N^{n1..nr} fD_{n1} ... fD_{nr}.
inline NcSeries kimura_product(int factors, int max_degree) {
  if (factors < 1) throw DomainError("kimura_product needs at least one factor");
  return expand(make_S_N(max_degree), make_fD_family(factors, max_degree), max_degree);
}

// T_N[fD]: the Lie mould expansion of T_N = log S_N.
inline NcSeries kimura_log(int factors, int max_degree) {
  if (factors < 1) throw DomainError("kimura_log needs at least one factor");
  return lie_expand(make_T_N(max_degree), make_fD_family(factors, max_degree), max_degree);
}

inline NcSeries bch_series(const BchRequest& req) {
  if (req.max_degree < 1) throw DomainError("BCH degree must be >= 1");
  switch (req.method) {
    case BchMethod::dynkin:
      return dynkin_log(req.factors, req.max_degree);
    case BchMethod::kimura_product:
      return kimura_product(req.factors, req.max_degree);
    case BchMethod::kimura_log:
      return kimura_log(req.factors, req.max_degree);
    case BchMethod::direct:
      return direct_log(req.factors, req.max_degree);
  }
  throw DomainError("unknown BCH method");
}

// (i) Psi(0) = 1 and t d/dt Psi = fD Psi for Psi = kimura_product, with fD = sum_n fD_n,
// also compared with t sum_j Ad_{e^{X_1}} ... Ad_{e^{X_{j-1}}} X_j via the Hadamard
// identity; (ii) nabla S_N = I x S_N as moulds up to the weight bound.
inline std::vector<CheckResult> mould_ode_check(int factors, int max_degree, int weight_bound) {
  std::vector<CheckResult> out;
  const GeneratorFamily fd = make_fD_family(factors, max_degree);
  const NcSeries psi = kimura_product(factors, max_degree);
  {
    CheckResult r{"psi(0) = 1", psi.component(0)[0] == 1, ""};
    r.detail = "constant term " + psi.component(0)[0].get_str();
    out.push_back(r);
  }
  const NcSeries generator_sum = expand(make_I(Alphabet::integers(), max_degree), fd, max_degree);
  {
    const SeriesReport rep = compare_series(degree_scale(psi), nc_mul(generator_sum, psi));
    out.push_back({"t d/dt psi = fD psi", rep.equal, rep.describe()});
  }
  {
    // Each generator already carries its factor of t, so t Ad_{e^{tX}} Y = Ad_{e^X} Y here.
    NcSeries hadamard(factors, max_degree);
    for (int j = 0; j < factors; ++j) {
      NcSeries term = NcSeries::generator(factors, max_degree, static_cast<std::uint32_t>(j));
      for (int i = j - 1; i >= 0; --i) {
        const NcSeries xi = NcSeries::generator(factors, max_degree, static_cast<std::uint32_t>(i));
        term = nc_mul(nc_mul(nc_exp(xi), term), nc_exp(nc_scale(Rational(-1), xi)));
      }
      add_scaled(hadamard, Rational(1), term);
    }
    const SeriesReport rep = compare_series(hadamard, generator_sum);
    out.push_back({"fD = sum_j Ad_{e^X1}..Ad_{e^X(j-1)} X_j", rep.equal, rep.describe()});
  }
  {
    const Mould s = make_S_N(weight_bound);
    const Mould lhs = mould_nabla([](Letter l) { return Rational(l.value); }, s);
    const Mould rhs = mould_mul(make_I(Alphabet::integers(), weight_bound), s);
    const auto diff = first_difference(lhs, rhs);
    out.push_back({"nabla S_N = I x S_N", !diff.has_value(),
                   diff ? "differ at " + diff->word + ": " + diff->lhs.get_str() + " vs " + diff->rhs.get_str()
                        : "equal through weight " + std::to_string(weight_bound)});
  }
  return out;
}

// ad_Z for Z = log(e^{X_1} ... e^{X_N}), applied to a fresh generator W, three ways:
// the bracket [Z, W] itself, sum c_g ad_{g_1} ... ad_{g_s} W, and
// sum (c_g / s) [[g_1 .. g_s], W], where c_g are the Dynkin word coefficients.
inline std::vector<CheckResult> inner_derivation_check(int factors, int max_degree) {
  if (factors < 1 || max_degree < 1) throw DomainError("inner_derivation_check needs factors, degree >= 1");
  const int gens = factors + 1;
  const auto w_index = static_cast<std::uint32_t>(factors);
  const NcSeries w = NcSeries::generator(gens, max_degree, w_index);
  const NcSeries z = embed(direct_log(factors, max_degree), gens);
  const NcSeries reference = commutator(z, w);

  const auto coeffs = detail::DynkinEnumerator(factors, max_degree - 1).coefficients();
  NcSeries plain(gens, max_degree), bracketed(gens, max_degree);
  for (const auto& [g, c] : coeffs) {
    NcSeries chain = w;
    for (auto it = g.rbegin(); it != g.rend(); ++it) chain = commutator(NcSeries::generator(gens, max_degree, *it), chain);
    add_scaled(plain, c, chain);
    NcSeries nested(gens, max_degree);
    add_nested_bracket(nested, g, Rational(1));
    add_scaled(bracketed, c / static_cast<unsigned long>(g.size()), commutator(nested, w));
  }
  std::vector<CheckResult> out;
  const SeriesReport a = compare_series(plain, reference);
  out.push_back({"ad_Z W = sum c ad..ad W", a.equal, a.describe()});
  const SeriesReport b = compare_series(bracketed, reference);
  out.push_back({"ad_Z W = sum c/s [[..], W]", b.equal, b.describe()});
  return out;
}

}  // namespace mouldlab
