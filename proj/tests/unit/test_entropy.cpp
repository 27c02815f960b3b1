#include <gtest/gtest.h>

#include <cmath>
#include <vector>

#include "eur/entropy.hpp"
#include "eur/errors.hpp"
#include "eur/states.hpp"

using namespace eur;

TEST(IndexPairs, Conjugacy) {
  const IndexPair p = conjugate_index(1.3);
  EXPECT_DOUBLE_EQ(p.beta(), 0.8125);
  EXPECT_FALSE(p.needs_swap());
  const IndexPair q = conjugate_index(0.8125);
  EXPECT_TRUE(q.needs_swap());
  EXPECT_DOUBLE_EQ(q.canonical().alpha(), 1.3);
  EXPECT_TRUE(conjugate_index(1.0).is_shannon());
  EXPECT_THROW(IndexPair(1.3, 0.9), DomainError);
}

TEST(IndexPairs, RejectsHalfAndBelow) {
  try {
    conjugate_index(0.5);
    FAIL();
  } catch (const DomainError& e) {
    EXPECT_NE(std::string(e.what()).find("1/alpha + 1/beta = 2"), std::string::npos);
  }
  EXPECT_THROW(conjugate_index(0.2), DomainError);
}

TEST(Entropy, SmallDistributions) {
  const std::vector<double> half = {0.5, 0.5};
  EXPECT_NEAR(tsallis(half, 2.0).value, 0.5, 1e-15);
  EXPECT_NEAR(shannon(half).value, std::log(2.0), 1e-15);
  EXPECT_NEAR(shannon(half, LogBase::bits).value, 1.0, 1e-15);
  EXPECT_NEAR(renyi(half, 1.3).value, std::log(2.0), 1e-15);
  EXPECT_NEAR(homogeneous_A(half, 2.0).value, 0.585786437626904951, 1e-15);
  const std::vector<double> point = {1.0, 0.0};
  EXPECT_EQ(shannon(point).value, 0.0);
  EXPECT_NEAR(tsallis(point, 1.3).value, 0.0, 1e-16);
}

TEST(Entropy, ShannonLimit) {
  const std::vector<double> p = {0.1, 0.2, 0.3, 0.4};
  const double s = shannon(p).value;
  EXPECT_NEAR(tsallis(p, 1.0 + 1e-7).value, s, 1e-6);
  EXPECT_NEAR(renyi(p, 1.0 - 1e-7).value, s, 1e-6);
  EXPECT_NEAR(homogeneous_A(p, 1.0 + 1e-7).value, s, 1e-6);
  EXPECT_DOUBLE_EQ(tsallis(p, 1.0 + 1e-9).value, s);
}

TEST(Entropy, RenyiIsNonIncreasingInIndex) {
  const std::vector<double> p = {0.05, 0.15, 0.3, 0.5};
  double prev = INFINITY;
  for (double q = 0.55; q < 5.0; q += 0.15) {
    const double r = renyi(p, q).value;
    EXPECT_LE(r, prev + 1e-15);
    prev = r;
  }
}

TEST(Entropy, BinnedGaussian) {
  BinningOptions o;
  o.tail_tol = 1e-15;
  const BinnedDistribution d = bin_r(StateModel::gaussian(1.0).position(), BinSpec::r_space(1.0), o);
  // 30-digit sums over normal CDF differences
  EXPECT_NEAR(shannon(d).value, 1.45895882841644093, 1e-12);
  EXPECT_NEAR(tsallis(d, 1.3).value, 1.14083799939046789, 1e-12);
  EXPECT_NEAR(renyi(d, 0.8125).value, 1.51246144545268931, 1e-12);
}

TEST(Entropy, TBinnedBits) {
  const BinnedDistribution d =
      bin_t(StateModel::gaussian(1.0).position(), 1.0, BinSpec::t_space(4));
  EXPECT_NEAR(shannon(d, LogBase::bits).value, 2.57910700508516035, 1e-13);
}

TEST(Entropy, RejectsLargeDeficit) {
  const BinnedDistribution d(0, {0.5, 0.4}, BinSpec::r_space(1.0), 0.1);
  EXPECT_THROW(shannon(d), DomainError);
}

TEST(Entropy, RejectsBadIndex) {
  const std::vector<double> p = {0.5, 0.5};
  EXPECT_THROW(tsallis(p, 0.0), DomainError);
  EXPECT_THROW(renyi(p, -1.0), DomainError);
}
