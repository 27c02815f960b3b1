#include <gtest/gtest.h>

#include <cmath>
#include <limits>

#include "eur/errors.hpp"
#include "eur/units.hpp"

using namespace eur;

TEST(Units, DefaultsAreNatural) {
  const UnitsSpec u;
  EXPECT_EQ(u.h(), 1.0);
  EXPECT_EQ(u.sx(), 1.0);
  EXPECT_EQ(u.sp(), 1.0);
  EXPECT_DOUBLE_EQ(u.cell(2.0, 3.0), 6.0);
}

TEST(Units, ScalesMustMultiplyToH) {
  const UnitsSpec u = UnitsSpec::with_scales(2.0, 4.0, 0.5);
  EXPECT_DOUBLE_EQ(u.cell(1.0, 1.0), 0.5);
  EXPECT_THROW(UnitsSpec::with_scales(2.0, 4.0, 1.0), DomainError);
  const UnitsSpec v = UnitsSpec::with_position_scale(3.0, 2.0);
  EXPECT_DOUBLE_EQ(v.sp(), 1.5);
  EXPECT_DOUBLE_EQ(UnitsSpec::natural(4.0).sx(), 2.0);
}

TEST(Units, MapExamples) {
  EXPECT_DOUBLE_EQ(map_to_t(3.0, 2.0).value(), 0.6);
  EXPECT_DOUBLE_EQ(map_to_t(-3.0, 2.0).value(), -0.6);
  EXPECT_EQ(map_to_t(0.0, 1.0).value(), 0.0);
  EXPECT_DOUBLE_EQ(map_from_t(0.6, 2.0), 3.0);
  EXPECT_DOUBLE_EQ(map_from_t(TCoordinate(-0.5), 1.0), -1.0);
}

TEST(Units, MapRejectsBadInput) {
  EXPECT_THROW(map_to_t(1.0, 0.0), DomainError);
  EXPECT_THROW(map_to_t(std::numeric_limits<double>::infinity(), 1.0), DomainError);
  EXPECT_THROW(map_from_t(1.0, 1.0), DomainError);
  EXPECT_THROW(TCoordinate(-1.0), DomainError);
}

TEST(Units, MapIsOddAndIncreasing) {
  double prev = -1.0;
  for (double r = -50.0; r <= 50.0; r += 0.37) {
    const double t = map_to_t(r, 1.7).value();
    EXPECT_GT(t, prev);
    EXPECT_DOUBLE_EQ(t, -map_to_t(-r, 1.7).value());
    prev = t;
  }
}

TEST(Units, RoundTrip) {
  for (double r = 1e-6; r < 1e4; r *= 1.3) {
    for (double s : {0.1, 1.0, 7.0}) {
      EXPECT_NEAR(map_from_t(map_to_t(r, s), s), r, 1e-10 * std::max(1.0, r));
      EXPECT_NEAR(map_from_t(map_to_t(-r, s), s), -r, 1e-10 * std::max(1.0, r));
    }
  }
}

TEST(Units, BinWidthConversions) {
  // t-bin [0.25, 0.5] maps to r in [1/3, 1].
  EXPECT_DOUBLE_EQ(delta_r_of_bin(1, 0.25, 1.0).value(), 2.0 / 3.0);
  EXPECT_TRUE(delta_r_of_bin(3, 0.25, 1.0).is_unbounded());
  EXPECT_TRUE(delta_r_of_bin(-4, 0.25, 1.0).is_unbounded());
  EXPECT_FALSE(delta_r_of_bin(0, 0.25, 1.0).is_unbounded());
  EXPECT_DOUBLE_EQ(delta_t_of_bin(0, 1.0, 1.0), 0.5);
  // r-bin [1, 2] maps to t in [1/2, 2/3].
  EXPECT_NEAR(delta_t_of_bin(1, 1.0, 1.0), 1.0 / 6.0, 1e-15);
}

TEST(Units, MaxTCell) {
  const double d = std::sqrt(2.0);
  EXPECT_NEAR(max_t_cell(d, d, UnitsSpec{}), 0.343145750508, 1e-12);
  EXPECT_LE(max_t_cell(d, d, UnitsSpec{}), effective_t_cell(2.0));
  EXPECT_DOUBLE_EQ(effective_t_cell(1.0), 0.5);
}
