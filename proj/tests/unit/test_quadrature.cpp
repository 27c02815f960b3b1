#include <gtest/gtest.h>

#include <cmath>
#include <limits>
#include <numbers>

#include "eur/errors.hpp"
#include "eur/quadrature.hpp"

using namespace eur;

TEST(Quadrature, Polynomial) {
  const auto r = quad::integrate([](double x) { return x * x; }, 0.0, 1.0);
  EXPECT_NEAR(r.value, 1.0 / 3.0, 1e-15);
  EXPECT_LE(r.error, 1e-12);
}

TEST(Quadrature, EndpointSingularity) {
  const auto r = quad::integrate([](double x) { return 1.0 / std::sqrt(x); }, 0.0, 1.0);
  EXPECT_NEAR(r.value, 2.0, 1e-9);
}

TEST(Quadrature, InfiniteRanges) {
  const double inf = std::numeric_limits<double>::infinity();
  EXPECT_NEAR(quad::integrate_upper([](double x) { return std::exp(-x); }, 0.0).value, 1.0, 1e-12);
  EXPECT_NEAR(quad::integrate_lower([](double x) { return std::exp(x); }, 0.0).value, 1.0, 1e-12);
  EXPECT_NEAR(quad::integrate_any([](double x) { return 1.0 / (1.0 + x * x); }, -inf, inf).value,
              std::numbers::pi, 1e-10);
}

TEST(Quadrature, FailureIsReported) {
  quad::Options o;
  o.max_intervals = 3;
  auto wild = [](double x) { return std::sin(1.0 / x); };
  EXPECT_THROW(quad::integrate(wild, 1e-6, 1.0, o), NumericError);
  o.throw_on_failure = false;
  EXPECT_NO_THROW(quad::integrate(wild, 1e-6, 1.0, o));
}
