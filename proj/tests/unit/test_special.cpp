#include <gtest/gtest.h>

#include <cmath>
#include <numbers>

#include "eur/special.hpp"

using namespace eur;

// Reference values from 30-digit evaluations.
TEST(Special, SineIntegral) {
  EXPECT_NEAR(special::sine_integral(0.5), 0.493107418043066689, 1e-15);
  EXPECT_NEAR(special::sine_integral(1.0), 0.946083070367183015, 1e-15);
  EXPECT_NEAR(special::sine_integral(5.0), 1.549931244944674137, 1e-14);
  EXPECT_NEAR(special::sine_integral(20.0), 1.548241701043439840, 1e-14);
  EXPECT_NEAR(special::sine_integral(-1.0), -0.946083070367183015, 1e-15);
}

TEST(Special, NormalCdf) {
  EXPECT_NEAR(special::normal_cdf(1.0), 0.841344746068542949, 1e-15);
  EXPECT_NEAR(special::normal_cdf(-3.0), 0.00134989803163009453, 1e-17);
  EXPECT_NEAR(special::normal_sf(3.0), 0.00134989803163009453, 1e-17);
}

TEST(Special, BesselK0) {
  EXPECT_NEAR(special::bessel_k0(1.0), 0.421024438240708333, 1e-15);
  EXPECT_NEAR(special::bessel_k0(0.01), 4.72124473016109494, 1e-13);
  EXPECT_NEAR(special::bessel_k0(10.0), 1.77800623161676518e-5, 1e-19);
  EXPECT_EQ(special::bessel_k0(800.0), 0.0);
}

TEST(Special, Sinc2IntegralIsOddAndSaturates) {
  EXPECT_NEAR(special::sinc2_integral(0.3), -special::sinc2_integral(-0.3), 1e-16);
  EXPECT_NEAR(special::sinc2_integral(1e6), std::numbers::pi / 2.0, 1e-5);
}
