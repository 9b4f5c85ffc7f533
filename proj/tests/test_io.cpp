#include <gtest/gtest.h>

#include <random>

#include "mouldlab/bch.hpp"
#include "mouldlab/io.hpp"

using namespace mouldlab;

TEST(Io, SeriesTextRendering) {
  EXPECT_EQ(io::series_to_text(dynkin_log(2, 2)), "deg 1: + X + Y\ndeg 2: + 1/2 XY - 1/2 YX\n");
  EXPECT_EQ(io::series_to_text(NcSeries(2, 3)), "0\n");
  EXPECT_EQ(io::series_to_text(NcSeries::one(3, 2) + NcSeries::generator(3, 2, 2, Rational(-2))),
            "deg 0: + 1\ndeg 1: - 2 X3\n");
}

TEST(Io, SeriesJsonShape) {
  const auto j = io::series_to_json(dynkin_log(2, 2));
  EXPECT_EQ(j.at("generators"), 2);
  EXPECT_EQ(j.at("max_degree"), 2);
  ASSERT_EQ(j.at("terms").size(), 4u);
  EXPECT_EQ(j.at("terms")[2].at("word"), "X1X2");
  EXPECT_EQ(j.at("terms")[2].at("coeff"), "1/2");
  EXPECT_EQ(j.at("terms")[0].at("coeff"), "1");
}

TEST(Io, SeriesRoundTrip) {
  for (const NcSeries& p : {kimura_log(2, 5), direct_log(3, 4), kimura_product(2, 3), NcSeries(4, 2)}) {
    const std::string text = io::dump(io::series_to_json(p));
    EXPECT_EQ(io::series_from_json(io::json::parse(text)), p);
  }
}

TEST(Io, MouldRoundTrip) {
  std::mt19937_64 rng(83);
  for (const Mould& m : {make_T_N(6), make_S_N(5), make_U(5), make_S_Omega(3, 4), random_mould(omega_alphabet(2), 4, rng),
                         mould_zero(Alphabet::integers(), 3)}) {
    const std::string text = io::dump(io::mould_to_json(m));
    const Mould back = io::mould_from_json(io::json::parse(text));
    EXPECT_EQ(back, m);
    EXPECT_EQ(back.bound(), m.bound());
    EXPECT_EQ(io::dump(io::mould_to_json(back)), text);
  }
}

TEST(Io, MouldText) {
  EXPECT_EQ(io::mould_to_text(make_I(Alphabet::integers(), 2)), "(1) : 1\n(2) : 1\n");
  EXPECT_EQ(io::mould_to_text(make_E(omega_alphabet(2), 1)), "() : 1\nx : 1\ny : 1\n");
  const std::string t = io::mould_to_text(make_T_N(3));
  EXPECT_NE(t.find("(1 2) : -1/12\n"), std::string::npos);
}

TEST(Io, RejectsBadInput) {
  EXPECT_THROW(io::alphabet_from_json(io::json{{"kind", "other"}}), DomainError);
  auto j = io::mould_to_json(make_T_N(2));
  j["grading"]["kind"] = "length";
  EXPECT_THROW(io::mould_from_json(j), DomainError);
  auto s = io::series_to_json(direct_log(2, 2));
  s["terms"][0]["word"] = "X1X1X1";
  EXPECT_THROW(io::series_from_json(s), BoundError);
}
