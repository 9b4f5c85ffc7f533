#include <gtest/gtest.h>

#include <random>

#include "mouldlab/mould.hpp"

using namespace mouldlab;

namespace {

const AlphabetPtr ints = Alphabet::integers();
const AlphabetPtr xy = omega_alphabet(2);

Letters L(std::initializer_list<std::uint32_t> v) {
  Letters out;
  for (auto x : v) out.push_back(Letter{x});
  return out;
}

Letters named(const AlphabetPtr& a, std::string_view s) { return parse_letters(*a, s); }

// Product by explicit splitting of every word; independent of the sparse pair loop.
Mould oracle_mul(const Mould& m, const Mould& n) {
  const int g = std::min(m.bound(), n.bound());
  return Mould::from_rule(m.alphabet(), g, [&](const Letters& w) {
    Rational s = 0;
    for (std::size_t k = 0; k <= w.size(); ++k) s += m.value(slice(w, 0, k)) * n.value(slice(w, k, w.size()));
    return s;
  });
}

int order_of(const Mould& m) {
  int o = m.bound() + 1;
  for (const auto& [w, c] : m.entries()) o = std::min(o, static_cast<int>(w.size()));
  return o;
}

// Mould vanishing on words of length < k.
Mould random_of_order(const AlphabetPtr& a, int bound, int k, std::mt19937_64& rng) {
  return Mould::from_rule(a, bound, [&](const Letters& w) {
    return static_cast<int>(w.size()) < k ? Rational(0) : random_coefficient(rng);
  });
}

}  // namespace

TEST(Mould, UnitValues) {
  const Mould u = mould_unit(xy, 4);
  EXPECT_EQ(u.empty_value(), 1);
  for (const auto& w : words_up_to(*xy, 4)) {
    if (!w.empty()) {
      EXPECT_EQ(u.value(w), 0);
    }
  }
}

TEST(Mould, ProductOnTwoLetterWord) {
  std::mt19937_64 rng(11);
  const Mould m = random_mould(ints, 5, rng), n = random_mould(ints, 5, rng);
  const Letters w = L({1, 2});
  const Rational expect =
      m.empty_value() * n.value(w) + m.value(L({1})) * n.value(L({2})) + m.value(w) * n.empty_value();
  EXPECT_EQ(mould_mul(m, n).value(w), expect);
}

TEST(Mould, ProductMatchesSplittingOracle) {
  std::mt19937_64 rng(3);
  for (int i = 0; i < 5; ++i) {
    const Mould m = random_mould(xy, 5, rng), n = random_mould(xy, 5, rng);
    EXPECT_EQ(mould_mul(m, n), oracle_mul(m, n));
    const Mould p = random_mould(ints, 6, rng), q = random_mould(ints, 6, rng);
    EXPECT_EQ(mould_mul(p, q), oracle_mul(p, q));
  }
}

TEST(Mould, UnitLawsAndLinearOps) {
  std::mt19937_64 rng(5);
  const Mould m = random_mould(xy, 5, rng);
  EXPECT_EQ(mould_mul(mould_unit(xy, 5), m), m);
  EXPECT_EQ(mould_mul(m, mould_unit(xy, 5)), m);
  EXPECT_EQ(mould_add(m, mould_zero(xy, 5)), m);
  EXPECT_EQ(mould_scale(Rational(1), m), m);
  EXPECT_TRUE(mould_sub(m, m).entries().empty());
}

TEST(Mould, AssociativityAndOrders) {
  std::mt19937_64 rng(17);
  for (int i = 0; i < 4; ++i) {
    const Mould a = random_of_order(xy, 6, i % 3, rng), b = random_of_order(xy, 6, (i + 1) % 3, rng),
                c = random_mould(xy, 6, rng);
    EXPECT_EQ(mould_mul(mould_mul(a, b), c), mould_mul(a, mould_mul(b, c)));
    EXPECT_GE(order_of(mould_mul(a, b)), order_of(a) + order_of(b));
  }
}

TEST(Mould, BoundMinRuleAndOverreadError) {
  const Mould a = make_E(xy, 3), b = make_E(xy, 5);
  EXPECT_EQ(mould_mul(a, b).bound(), 3);
  EXPECT_EQ(mould_add(a, b).bound(), 3);
  EXPECT_THROW(a.value(named(xy, "xxxx")), BoundError);
  try {
    a.value(named(xy, "xxxx"));
  } catch (const BoundError& e) {
    EXPECT_EQ(e.required(), 4);
  }
  EXPECT_THROW(mould_mul(make_E(xy, 3), make_E(ints, 3)), AlphabetMismatch);
}

TEST(Mould, ExpOfLetterMouldsGivesSOmega) {
  const Mould s = mould_mul(mould_exp(make_I_letter(xy, Letter{0}, 6)), mould_exp(make_I_letter(xy, Letter{1}, 6)));
  EXPECT_EQ(s.value(named(xy, "xy")), 1);
  EXPECT_EQ(s, make_S_Omega(2, 6));
}

TEST(Mould, ExpLog) {
  EXPECT_EQ(mould_exp(mould_zero(xy, 4)), mould_unit(xy, 4));
  EXPECT_TRUE(mould_log(mould_unit(xy, 4)).entries().empty());
  EXPECT_EQ(mould_exp(make_I(ints, 7)), make_E(ints, 7));
  EXPECT_EQ(make_E(ints, 7).value(L({1, 1, 2})), Rational(1, 6));
  std::mt19937_64 rng(23);
  for (int i = 0; i < 3; ++i) {
    const Mould m = random_mould(xy, 6, rng, Rational(0));
    EXPECT_EQ(mould_log(mould_exp(m)), m);
    const Mould g = random_mould(ints, 6, rng, Rational(1));
    EXPECT_EQ(mould_exp(mould_log(g)), g);
  }
  EXPECT_THROW(mould_exp(make_E(xy, 2)), DomainError);
  EXPECT_THROW(mould_log(make_I(xy, 2)), DomainError);
}

TEST(Mould, TNClosedForms) {
  const Mould t = make_T_N(8);
  for (std::uint32_t a = 1; a <= 6; ++a) {
    EXPECT_EQ(t.value(L({a})), Rational(1, a));
    for (std::uint32_t b = 1; a + b <= 8; ++b) {
      Rational e(static_cast<long>(a) - static_cast<long>(b), 2 * a * b * (a + b));
      e.canonicalize();
      EXPECT_EQ(t.value(L({a, b})), e) << a << "," << b;
    }
  }
  EXPECT_EQ(t.value(L({1, 2})), Rational(-1, 12));
}

TEST(Mould, SNValues) {
  const Mould s = make_S_N(8);
  EXPECT_EQ(s.empty_value(), 1);
  EXPECT_EQ(s.value(L({1, 2})), Rational(1, 6));
  EXPECT_EQ(s.value(L({3})), Rational(1, 3));
  EXPECT_EQ(s.value(L({2, 1, 1})), Rational(1, 1 * 2 * 4));
}

TEST(Mould, SOmegaAndUValues) {
  const Mould s = make_S_Omega(2, 7);
  for (const auto& w : words_up_to(*xy, 7)) {
    // x^p y^q gets 1/(p! q!), anything with a y before an x gets 0.
    std::size_t p = 0;
    while (p < w.size() && w[p].value == 0) ++p;
    bool sorted = true;
    for (std::size_t i = p; i < w.size(); ++i) sorted &= w[i].value == 1;
    const Rational e = sorted ? Rational(inverse_factorial(static_cast<unsigned>(p)) *
                                         inverse_factorial(static_cast<unsigned>(w.size() - p)))
                              : Rational(0);
    EXPECT_EQ(s.value(w), e) << render_letters(*xy, w);
  }
  const Mould u = make_U(7);
  EXPECT_EQ(u.value(named(xy, "x")), 1);
  EXPECT_EQ(u.value(named(xy, "y")), 1);
  EXPECT_EQ(u.value(named(xy, "xyx")), -1);
  EXPECT_EQ(u.value(named(xy, "xxyx")), Rational(-1, 2));
  EXPECT_EQ(u.value(named(xy, "xxyxxx")), Rational(-1, 12));
  EXPECT_EQ(u.value(named(xy, "yy")), 0);
  EXPECT_EQ(u.value(named(xy, "xx")), 0);
  EXPECT_EQ(u.empty_value(), 0);
}

TEST(Mould, NablaOnSN) {
  const auto incl = [](Letter l) { return Rational(l.value); };
  const Mould s = make_S_N(8);
  const Mould d = mould_nabla(incl, s);
  for (const auto& w : words_up_to(*ints, 8)) {
    if (w.empty()) continue;
    EXPECT_EQ(d.value(w), s.value(slice(w, 1, w.size())));
  }
  EXPECT_TRUE(mould_nabla(incl, mould_unit(ints, 4)).entries().empty());
  EXPECT_EQ(d, mould_mul(make_I(ints, 8), s));
}

TEST(Mould, NablaLeibniz) {
  std::mt19937_64 rng(29);
  const auto phi = [](Letter l) {
    Rational r(2 * l.value + 1, 3);  // the two-argument constructor does not reduce
    r.canonicalize();
    return r;
  };
  const Mould m = random_mould(ints, 6, rng), n = random_mould(ints, 6, rng);
  EXPECT_EQ(mould_nabla(phi, mould_mul(m, n)),
            mould_add(mould_mul(mould_nabla(phi, m), n), mould_mul(m, mould_nabla(phi, n))));
}

// The equation nabla S = I x S with S^empty = 1 fixes S word by word: weight(w) S^w = S^{w minus first letter}.
TEST(Mould, SNIsTheSolutionOfItsNablaEquation) {
  Mould::Table t{{Letters{}, Rational(1)}};
  for (const auto& w : words_up_to(*ints, 8)) {
    if (w.empty()) continue;
    t[w] = t.at(slice(w, 1, w.size())) / static_cast<unsigned long>(ints->grade(w));
  }
  EXPECT_EQ(Mould(ints, 8, t), make_S_N(8));
}

TEST(Mould, Antipode) {
  EXPECT_EQ(mould_antipode(mould_unit(ints, 5)), mould_unit(ints, 5));
  const Mould s = make_S_N(8), t = make_T_N(8);
  EXPECT_EQ(mould_mul(mould_antipode(s), s), mould_unit(ints, 8));
  EXPECT_EQ(mould_antipode(t), mould_scale(Rational(-1), t));
  std::mt19937_64 rng(31);
  const Mould m = random_mould(xy, 5, rng);
  EXPECT_EQ(mould_antipode(mould_antipode(m)), m);
}

TEST(Mould, AlternalAndSymmetralBuiltins) {
  EXPECT_TRUE(check_alternal(make_I(ints, 6)).passed);
  EXPECT_FALSE(check_alternal(make_E(ints, 6)).passed);
  EXPECT_TRUE(check_symmetral(make_E(ints, 6)).passed);
  EXPECT_FALSE(check_symmetral(make_I(ints, 6)).passed);
  EXPECT_TRUE(check_symmetral(make_S_N(8)).passed);
  EXPECT_TRUE(check_alternal(make_T_N(8)).passed);
  EXPECT_TRUE(check_symmetral(make_S_Omega(2, 8)).passed);
  EXPECT_TRUE(check_alternal(make_T_Omega(2, 8)).passed);
  EXPECT_TRUE(check_alternal(make_U(7)).passed);
  EXPECT_TRUE(check_alternal(make_U(3, 6)).passed);
  EXPECT_TRUE(check_symmetral(make_S_Omega(3, 6)).passed);
}

TEST(Mould, ShuffleReportNamesFirstFailure) {
  // Breaking one entry of T_N must be caught with the offending pair.
  Mould::Table t = make_T_N(4).entries();
  t[L({1, 2})] += 1;
  const auto rep = check_alternal(Mould(ints, 4, t));
  ASSERT_FALSE(rep.passed);
  ASSERT_TRUE(rep.failure.has_value());
  EXPECT_EQ(rep.failure->a.length() + rep.failure->b.length(), 2u);
  EXPECT_NE(rep.describe().find("fail at"), std::string::npos);
}

TEST(Mould, GroupAndLieStructure) {
  std::mt19937_64 rng(37);
  const Mould s1 = make_S_Omega(2, 6), s2 = mould_exp(random_alternal_mould(xy, 6, rng));
  EXPECT_TRUE(check_symmetral(s2).passed);
  EXPECT_TRUE(check_symmetral(mould_mul(s1, s2)).passed);
  EXPECT_TRUE(check_alternal(mould_log(s1)).passed);
  EXPECT_TRUE(check_alternal(mould_log(mould_mul(s1, s2))).passed);
  const Mould a = random_alternal_mould(xy, 6, rng), b = random_alternal_mould(xy, 6, rng);
  EXPECT_TRUE(check_alternal(a).passed);
  EXPECT_TRUE(check_alternal(mould_commutator(a, b)).passed);
  EXPECT_TRUE(check_symmetral(mould_exp(a)).passed);
  EXPECT_EQ(mould_antipode(a), mould_scale(Rational(-1), a));
  EXPECT_EQ(mould_mul(mould_antipode(s2), s2), mould_unit(xy, 6));
}

TEST(Mould, RandomMouldsAreSeeded) {
  std::mt19937_64 r1(99), r2(99);
  EXPECT_EQ(random_mould(ints, 5, r1), random_mould(ints, 5, r2));
  std::mt19937_64 r3(1);
  for (int i = 0; i < 200; ++i) {
    const Rational c = random_coefficient(r3);
    EXPECT_LE(abs(c.get_num()), 3);
    EXPECT_GE(c.get_den(), 1);
    EXPECT_LE(c.get_den(), 4);
  }
}

TEST(Mould, ConstructionRejectsBadEntries) {
  EXPECT_THROW(Mould(xy, 2, Mould::Table{{named(xy, "xxx"), Rational(1)}}), BoundError);
  EXPECT_THROW(Mould(xy, 2, Mould::Table{{L({5}), Rational(1)}}), DomainError);
  EXPECT_THROW(Mould(xy, -1), DomainError);
}
