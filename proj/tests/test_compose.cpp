#include <gtest/gtest.h>

#include <random>

#include "mouldlab/compose.hpp"

using namespace mouldlab;

namespace {

const AlphabetPtr ints = Alphabet::integers();
const AlphabetPtr xy = omega_alphabet(2);

Letters named(std::string_view s) { return parse_letters(*xy, s); }
Letters L(std::initializer_list<std::uint32_t> v) {
  Letters out;
  for (auto x : v) out.push_back(Letter{x});
  return out;
}

void expect_all_pass(const std::vector<CheckResult>& rs) {
  for (const auto& r : rs) {
    EXPECT_TRUE(r.applicable) << r.name << ": " << r.detail;
    EXPECT_TRUE(r.passed) << r.name << ": " << r.detail;
  }
}

}  // namespace

TEST(Compose, UnitAndIdentity) {
  const Mould u = make_U(5);
  EXPECT_EQ(odot(mould_unit(ints, 5), u), mould_unit(xy, 5));
  EXPECT_EQ(odot(make_I(ints, 5), u), u);
  // I o U = U - U^empty 1 with U^empty != 0.
  std::mt19937_64 rng(71);
  const Mould v = random_mould(xy, 4, rng, Rational(3));
  EXPECT_EQ(odot(make_I(ints, 4), v), mould_sub(v, mould_scale(Rational(3), mould_unit(xy, 4))));
}

TEST(Compose, TwoLetterWordBySplitting) {
  const Mould u = make_U(4), s = make_S_N(4);
  const Mould c = odot(s, u);
  EXPECT_EQ(c.value(named("xy")), s.value(L({2})) * u.value(named("xy")) +
                                       s.value(L({1, 1})) * u.value(named("x")) * u.value(named("y")));
  EXPECT_EQ(c.value(named("xy")), 1);
  EXPECT_EQ(c.value(named("yx")), 0);
}

TEST(Compose, ExponentialFormulas) {
  const Mould u = make_U(8);
  EXPECT_EQ(odot(make_S_N(8), u), make_S_Omega(2, 8));
  EXPECT_EQ(odot(make_T_N(8), u), make_T_Omega(2, 8));
  EXPECT_EQ(solve_length_nabla_equation(u, 8), make_S_Omega(2, 8));
}

TEST(Compose, ThreeFactorExtension) {
  const Mould u = make_U(3, 5);
  EXPECT_EQ(make_U_via_conjugation(3, 5), u);
  EXPECT_EQ(odot(make_S_N(5), u), make_S_Omega(3, 5));
  EXPECT_EQ(odot(make_T_N(5), u), make_T_Omega(3, 5));
  expect_all_pass(check_U_identities(3, 5));
}

TEST(Compose, UForms) {
  EXPECT_EQ(make_U_via_conjugation(7), make_U(7));
  expect_all_pass(check_U_identities(2, 6));
  EXPECT_TRUE(check_alternal(make_U(7)).passed);
}

// M D = (M odot U) B for random moulds M.
TEST(Compose, ExpansionTransfer) {
  std::mt19937_64 rng(73);
  const GeneratorFamily d = make_D_family(5);
  const GeneratorFamily b = make_B_family(2, 5);
  const Mould u = make_U(5);
  for (int i = 0; i < 4; ++i) {
    const Mould m = random_mould(ints, 5, rng);
    EXPECT_EQ(expand(m, d, 5), expand(odot(m, u), b, 5));
  }
}

TEST(Compose, PropertySuiteLength) {
  for (int bound : {3, 5}) {
    const auto r = property_suite(sigma_length(xy), length_suite_inputs(bound));
    EXPECT_EQ(r.size(), 7u);
    expect_all_pass(r);
  }
}

TEST(Compose, PropertySuiteLetterSum) {
  const auto r = property_suite(sigma_letter_sum(), letter_sum_suite_inputs(5));
  expect_all_pass(r);
}

TEST(Compose, GatedPropertiesReportNotApplicable) {
  // A sigma that is neither permutation invariant nor additive.
  SigmaMap first("first-letter", xy, ints, [](const Letters& w) { return Letter{w.front().value + 1}; });
  SuiteInputs in{make_U(4), 4, std::nullopt, std::nullopt, 5, 2};
  const auto r = property_suite(first, in);
  ASSERT_EQ(r.size(), 7u);
  EXPECT_FALSE(r[3].applicable);  // (iv)
  EXPECT_FALSE(r[4].applicable);  // (v)
  EXPECT_FALSE(r[5].applicable);  // (vi)
  EXPECT_FALSE(r[6].applicable);  // (vii)
  EXPECT_TRUE(r[0].passed);
  EXPECT_TRUE(r[1].passed);
  EXPECT_TRUE(r[2].passed);
  // Claimed but false additivity is caught by verification.
  first.claim_additive_under(inclusion);
  EXPECT_FALSE(first.verify_additive(inclusion, 3));
  EXPECT_FALSE(property_suite(first, in)[3].applicable);
}

TEST(Compose, LengthWithLengthFailsChainCompatibility) {
  // tau = sigma = length: tau(sigma(w)) is always 1, but tau(sigma(w1)..sigma(ws)) = s.
  SuiteInputs in = length_suite_inputs(4);
  in.tau = sigma_length(ints);
  EXPECT_FALSE(verify_chain_compatibility(*in.tau, sigma_length(xy), 4));
  EXPECT_FALSE(property_suite(sigma_length(xy), in)[6].applicable);
  EXPECT_TRUE(verify_chain_compatibility(sigma_letter_sum(), sigma_length(xy), 4));
}

TEST(Compose, SigmaFlags) {
  EXPECT_TRUE(sigma_length(xy).verify_permutation_invariant(5));
  EXPECT_TRUE(sigma_letter_sum().verify_additive(inclusion, 6));
  EXPECT_THROW(sigma_length(xy)(Letters{}), DomainError);
  SigmaMap onto_zero("bad", xy, ints, [](const Letters&) { return Letter{0}; });
  EXPECT_THROW(onto_zero(named("x")), DomainError);
}

TEST(Compose, BoundsAreEnforced) {
  const Mould u = make_U(4);
  EXPECT_THROW(sigma_compose(make_S_N(3), u, sigma_length(xy), 4), BoundError);
  EXPECT_THROW(sigma_compose(make_S_N(4), u, sigma_length(xy), 5), BoundError);
  EXPECT_THROW(sigma_compose(make_S_N(4), make_S_N(4), sigma_length(xy), 4), AlphabetMismatch);
  EXPECT_EQ(required_target_bound(sigma_length(xy), 4), 4);
  EXPECT_EQ(required_target_bound(sigma_letter_sum(), 4), 4);
}

TEST(Compose, LengthEquationSolutionIsUnique) {
  // The recursion determines every value from shorter words, so any other U gives another solution.
  const Mould u = make_U(6);
  const Mould s = solve_length_nabla_equation(u, 6);
  const auto len = [](Letter) { return Rational(1); };
  EXPECT_EQ(mould_nabla(len, s), mould_mul(u, s));
  EXPECT_EQ(s.empty_value(), 1);
}
