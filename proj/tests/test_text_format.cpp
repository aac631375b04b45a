#include <gtest/gtest.h>

#include <random>

#include "bfnorm/text_format.hpp"
#include "fixtures.hpp"

using namespace bfnorm;

TEST(ParseAnf, QuadricMasks) {
  const Anf a = parse_anf("x1*x3 + x2*x4 + x5", 5);
  EXPECT_EQ(a.count(), 3u);
  EXPECT_TRUE(a.get(0b00101));
  EXPECT_TRUE(a.get(0b01010));
  EXPECT_TRUE(a.get(0b10000));
}

TEST(ParseAnf, CancellationAndConstants) {
  EXPECT_TRUE(parse_anf("x1 + x1", 1).is_zero());
  EXPECT_TRUE(parse_anf("0", 3).is_zero());
  EXPECT_TRUE(parse_anf("1 + 1", 3).is_zero());
  EXPECT_EQ(parse_anf("x2*x1", 2), parse_anf("x1 * x2", 2));
  EXPECT_EQ(parse_anf("x1*x1", 2), parse_anf("x1", 2));
  EXPECT_EQ(parse_anf("  x1\t+\nx2 ", 2).count(), 2u);
}

TEST(ParseAnf, Errors) {
  EXPECT_THROW(parse_anf("x9", 8), ParseError);
  try {
    parse_anf("x1 + x9", 8);
    FAIL();
  } catch (const ParseError& e) {
    EXPECT_EQ(e.position(), 5u);
  }
  EXPECT_THROW(parse_anf("", 3), ParseError);
  EXPECT_THROW(parse_anf("x1 +", 3), ParseError);
  EXPECT_THROW(parse_anf("x1 ** x2", 3), ParseError);
  EXPECT_THROW(parse_anf("y1", 3), ParseError);
  EXPECT_THROW(parse_anf("x0", 3), ParseError);
  EXPECT_THROW(parse_anf("x1 x2", 3), ParseError);
  EXPECT_THROW(parse_anf("x", 3), ParseError);
}

TEST(FormatAnf, CanonicalOrder) {
  EXPECT_EQ(format_anf(parse_anf("x5 + x2*x4 + x1*x3", 5)), "x1*x3 + x2*x4 + x5");
  EXPECT_EQ(format_anf(parse_anf("1 + x2*x3 + x1*x4 + x1*x2*x3", 4)), "x1*x2*x3 + x1*x4 + x2*x3 + 1");
  EXPECT_EQ(format_anf(Anf(3)), "0");
}

TEST(FormatAnf, RoundTripProperty) {
  std::mt19937_64 rng(5);
  for (int trial = 0; trial < 1000; ++trial) {
    const int m = 1 + trial % 10;
    Anf a(m);
    for (auto& w : a.words()) w = rng() & rng();
    a.clear_padding();
    const std::string text = format_anf(a);
    ASSERT_EQ(parse_anf(text, m), a);
    ASSERT_EQ(format_anf(parse_anf(text, m)), text);
  }
}

TEST(Hex, ProductOfTwo) {
  EXPECT_EQ(to_hex(bfnorm::testing::fn("x1*x2", 2)), "08");
  EXPECT_EQ(from_hex("08", 2), bfnorm::testing::fn("x1*x2", 2));
  EXPECT_EQ(to_hex(bfnorm::testing::fn("x1", 3)), "aa");
  EXPECT_EQ(to_hex(bfnorm::testing::fn("x4", 4)), "00ff");
}

TEST(Hex, RoundTripProperty) {
  std::mt19937_64 rng(6);
  for (int trial = 0; trial < 300; ++trial) {
    const int m = 1 + trial % 12;
    const BoolFun f = random_in_band(m, {0, m}, rng());
    ASSERT_EQ(from_hex(to_hex(f), m), f);
    if (m >= 3) ASSERT_EQ(infer_vars_from_hex(to_hex(f)), m);
  }
}

TEST(Hex, Errors) {
  EXPECT_THROW(from_hex("0", 2), ParseError);
  EXPECT_THROW(from_hex("0g", 3), ParseError);
  EXPECT_THROW(from_hex("f0", 2), ParseError);  // bits beyond 2^m
  EXPECT_THROW(from_hex("0000", 3), ParseError);
  EXPECT_THROW(infer_vars_from_hex("000000"), ParseError);
  EXPECT_EQ(from_hex("FF", 3), from_hex("ff", 3));
}

TEST(ParseFunction, HexPrefix) {
  EXPECT_EQ(parse_function("hex:08", 2, false), bfnorm::testing::fn("x1*x2", 2));
  EXPECT_EQ(parse_function("x1*x2", 2, false), bfnorm::testing::fn("x1*x2", 2));
  EXPECT_EQ(parse_function("08", 2, true), bfnorm::testing::fn("x1*x2", 2));
}
