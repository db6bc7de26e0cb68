#include <gtest/gtest.h>

#include <limits>

#include "dwpf/scalar.hpp"
#include "support.hpp"

using namespace dwpf;
using testing_support::q;

TEST(ParseRational, FractionsAreCanonical) {
  Rational r = parse_rational("-6/4");
  EXPECT_EQ(r.get_num(), -3);
  EXPECT_EQ(r.get_den(), 2);
  EXPECT_EQ(format_rational(parse_rational("10/5")), "2");
  EXPECT_EQ(format_rational(parse_rational("+3/9")), "1/3");
}

TEST(ParseRational, DecimalsAreExact) {
  EXPECT_EQ(parse_rational("0.1"), Rational(1, 10));
  EXPECT_EQ(parse_rational("-1.25e-3"), Rational(-1, 800));
  EXPECT_EQ(parse_rational("2E3"), Rational(2000));
  EXPECT_EQ(parse_rational(".5"), Rational(1, 2));
  EXPECT_EQ(parse_rational("7."), Rational(7));
  EXPECT_EQ(parse_rational("-0"), Rational(0));
}

TEST(ParseRational, RejectsMalformed) {
  for (const char* bad : {"", "abc", "1/0", "1/", "/2", "1.2.3", "1e", "--1", "1/2/3", "0x10", "6/-4"}) {
    EXPECT_THROW(parse_rational(bad), Error) << bad;
  }
  try {
    parse_rational("3/0");
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::InvalidArgument);
  }
}

TEST(ParseComplex, RealAndImaginaryParts) {
  bool is_complex = true;
  EXPECT_EQ(parse_complex("1.5", &is_complex), Complex(1.5, 0.0));
  EXPECT_FALSE(is_complex);
  EXPECT_EQ(parse_complex("2-0.5i", &is_complex), Complex(2.0, -0.5));
  EXPECT_TRUE(is_complex);
  EXPECT_EQ(parse_complex("3i"), Complex(0.0, 3.0));
  EXPECT_EQ(parse_complex("-i"), Complex(0.0, -1.0));
  EXPECT_EQ(parse_complex("1e-1+1/4i"), Complex(0.1, 0.25));
}

TEST(Agrees, ExactIsEqualityFloatIsRelative) {
  EXPECT_TRUE(agrees(q("1/3"), q("2/6")));
  EXPECT_FALSE(agrees(q("1/3"), q("333333333/1000000000")));
  EXPECT_TRUE(agrees(Complex(1.0), Complex(1.0 + 1e-12)));
  EXPECT_FALSE(agrees(Complex(1.0), Complex(1.0 + 1e-6)));
  EXPECT_TRUE(agrees(Complex(0.0), Complex(0.0)));
}

TEST(ScalarTraits, FiniteAndMagnitude) {
  EXPECT_TRUE(is_finite(q("5/7")));
  EXPECT_FALSE(is_finite(Complex(std::numeric_limits<double>::infinity(), 0.0)));
  EXPECT_FALSE(is_finite(Complex(0.0, std::numeric_limits<double>::quiet_NaN())));
  EXPECT_DOUBLE_EQ(magnitude(q("-3/4")), 0.75);
  EXPECT_DOUBLE_EQ(magnitude(Complex(3.0, 4.0)), 5.0);
  EXPECT_EQ(from_rational<Complex>(q("1/4")), Complex(0.25, 0.0));
}

TEST(ErrorKind, NamesAreStable) {
  EXPECT_EQ(to_string(ErrorKind::CostGuard), "CostGuard");
  EXPECT_EQ(to_string(ErrorKind::NoConvergence), "NoConvergence");
  NoConvergence e("stuck", Complex(0.25, 0.0));
  EXPECT_EQ(e.kind(), ErrorKind::NoConvergence);
  EXPECT_EQ(e.g_reached(), Complex(0.25, 0.0));
}
