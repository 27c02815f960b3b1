#include <gtest/gtest.h>

#include <cmath>
#include <limits>
#include <random>
#include <vector>

#include "eur/kernels.hpp"

using namespace eur;

namespace {

std::vector<double> random_probs(std::size_t n, std::uint64_t seed) {
  std::mt19937_64 gen(seed);
  std::exponential_distribution<double> e(1.0);
  std::vector<double> p(n);
  double s = 0.0;
  for (double& v : p) s += (v = e(gen));
  for (double& v : p) v /= s;
  if (n > 3) p[n / 2] = 0.0;
  return p;
}

}  // namespace

TEST(Kernels, ScalarReference) {
  const std::vector<double> p = {0.5, 0.25, 0.25, 0.0};
  EXPECT_NEAR(kernels::scalar::power_sum(p, 2.0), 0.375, 1e-16);
  EXPECT_NEAR(kernels::scalar::neg_plogp_sum(p), 1.5 * std::log(2.0), 1e-16);
  std::vector<double> out(4);
  kernels::scalar::scaled_pow(p, 2.0, 4.0, out);
  EXPECT_DOUBLE_EQ(out[0], 1.0);
  EXPECT_EQ(out[3], 0.0);
}

TEST(Kernels, BackendName) {
  const auto b = kernels::active_backend();
  EXPECT_TRUE(b == kernels::Backend::scalar || kernels::avx2_supported());
  EXPECT_FALSE(kernels::to_string(b).empty());
}

#if defined(EUR_HAVE_AVX2)

TEST(Kernels, Avx2MatchesScalar) {
  if (!kernels::avx2_supported()) GTEST_SKIP() << "CPU lacks AVX2/FMA";
  for (std::size_t n : {1u, 3u, 4u, 7u, 64u, 1001u}) {
    const std::vector<double> p = random_probs(n, 17 + n);
    for (double a : {0.5, 0.8125, 1.3, 2.0, 7.5}) {
      const double s = kernels::scalar::power_sum(p, a);
      EXPECT_NEAR(kernels::avx2::power_sum(p, a), s, 1e-14 * s) << n << " " << a;
    }
    const double h = kernels::scalar::neg_plogp_sum(p);
    EXPECT_NEAR(kernels::avx2::neg_plogp_sum(p), h, 1e-14 * std::max(h, 1e-300)) << n;
    std::vector<double> o1(n), o2(n);
    kernels::scalar::scaled_pow(p, 0.23, 1.7, o1);
    kernels::avx2::scaled_pow(p, 0.23, 1.7, o2);
    for (std::size_t i = 0; i < n; ++i) EXPECT_NEAR(o2[i], o1[i], 4e-16 * o1[i]);
  }
}

TEST(Kernels, Avx2LogExpAccuracy) {
  if (!kernels::avx2_supported()) GTEST_SKIP() << "CPU lacks AVX2/FMA";
  std::mt19937_64 gen(5);
  std::uniform_real_distribution<double> exponent(-300.0, 300.0);
  for (int i = 0; i < 2000; ++i) {
    double x[4], out[4];
    for (double& v : x) v = std::pow(10.0, exponent(gen));
    kernels::avx2::log4(x, out);
    for (int j = 0; j < 4; ++j) {
      const double ref = std::log(x[j]);
      EXPECT_NEAR(out[j], ref, 2.5e-16 * std::max(1.0, std::abs(ref)));
    }
    for (double& v : x) v = exponent(gen) * 2.3;
    kernels::avx2::exp4(x, out);
    for (int j = 0; j < 4; ++j) {
      const double ref = std::exp(x[j]);
      EXPECT_NEAR(out[j], ref, 4.5e-16 * ref);
    }
  }
}

TEST(Kernels, Avx2SpecialValues) {
  if (!kernels::avx2_supported()) GTEST_SKIP() << "CPU lacks AVX2/FMA";
  const double tiny = std::numeric_limits<double>::denorm_min();
  double x[4] = {tiny, 1.0, 4.9e-310, std::numeric_limits<double>::max()};
  double out[4];
  kernels::avx2::log4(x, out);
  for (int j = 0; j < 4; ++j) EXPECT_NEAR(out[j], std::log(x[j]), 1e-13 * std::abs(std::log(x[j])) + 1e-300);
  double e[4] = {-800.0, 709.78, 710.0, -745.0};
  kernels::avx2::exp4(e, out);
  EXPECT_EQ(out[0], 0.0);
  EXPECT_NEAR(out[1], std::exp(709.78), 1e-15 * std::exp(709.78));
  EXPECT_TRUE(std::isinf(out[2]));
  EXPECT_NEAR(out[3], std::exp(-745.0), std::exp(-745.0));
}

#endif
