#include "slitflow/numeric.hpp"

#include <gtest/gtest.h>

using namespace slitflow;

TEST(Interval, RationalEnclosureIsTight) {
  const Interval third = Interval::from_rational(Rational(1, 3));
  EXPECT_LE(third.lo() * 3, 1);
  EXPECT_GE(third.hi() * 3, 1);
  EXPECT_LT(third.width(), Real("1e-115"));
}

TEST(Interval, KnownConstants) {
  const Real pi_ref("3.14159265358979323846264338327950288419716939937510582097494459");
  EXPECT_LT(abs(Interval::pi().mid() - pi_ref), Real("1e-60"));
  EXPECT_LT(Interval::pi().width(), Real("1e-110"));
  const Interval r2 = sqrt(Interval(2L));
  EXPECT_TRUE(square(r2).contains(Real(2)));
}

TEST(Interval, ArithmeticEnclosesExactResults) {
  const Interval a = Interval::from_rational(Rational(2, 7));
  const Interval b = Interval::from_rational(Rational(-5, 11));
  const Rational exact = Rational(2, 7) * Rational(-5, 11) - Rational(2, 7) / Rational(-5, 11);
  const Interval got = a * b - a / b;
  EXPECT_TRUE(got.contains(Interval::from_rational(exact).mid()));
  EXPECT_TRUE(got.lo() <= Interval::from_rational(exact).lo());
  EXPECT_TRUE(got.hi() >= Interval::from_rational(exact).hi());
}

TEST(Interval, DivisionByZeroStraddlerThrows) {
  EXPECT_THROW(Interval(1L) / Interval(Real(-1), Real(1)), DomainError);
  EXPECT_THROW(log(Interval(Real(-1), Real(1))), DomainError);
}

TEST(Interval, MonotoneFunctionsRoundTrip) {
  const Interval x = Interval::from_rational(Rational(7, 5));
  EXPECT_TRUE(log(exp(x)).contains(x.mid()));
  EXPECT_TRUE(asinh(sinh(x)).contains(x.mid()));
  EXPECT_TRUE(abs(Interval(-3L)).contains(Real(3)));
}

TEST(Interval, LogOfHugeInteger) {
  const BigInt big = boost::multiprecision::pow(BigInt(2), 100000);
  const Interval l = log_of(big);
  const Interval expect = Interval(100000L) * Interval::log2();
  EXPECT_TRUE(abs(l - expect).hi() < Real("1e-100"));
}

TEST(Interval, ScopedDigitsRestores) {
  const unsigned before = working_digits();
  {
    ScopedDigits g(300);
    EXPECT_EQ(working_digits(), 300u);
    EXPECT_LT(Interval::from_rational(Rational(1, 3)).width(), Real("1e-290"));
  }
  EXPECT_EQ(working_digits(), before);
}

TEST(Interval, FormatEnclosure) {
  const std::string s = format_enclosure(Interval::from_rational(Rational(1, 4)), 6);
  EXPECT_EQ(s.substr(0, 4), "0.25");
  EXPECT_NE(s.find("±"), std::string::npos);
}

TEST(Trend, AcceptsShrinkingTail) {
  EXPECT_TRUE(trend_accepts({0.5, 0.2, 0.1, 0.05}, 0.0, 0.1));
  EXPECT_FALSE(trend_accepts({0.5, 0.05, 0.08, 0.06}, 0.0, 0.1));
  EXPECT_FALSE(trend_accepts({0.5, 0.3, 0.2}, 0.0, 0.1));
  EXPECT_TRUE(trend_accepts({9.0, 0.01, 0.01, 0.0}, 0.0, 0.1));
}

TEST(BitLength, Basics) {
  EXPECT_EQ(bit_length(BigInt(0)), 0u);
  EXPECT_EQ(bit_length(BigInt(1)), 1u);
  EXPECT_EQ(bit_length(BigInt(255)), 8u);
  EXPECT_EQ(bit_length(BigInt(256)), 9u);
}
