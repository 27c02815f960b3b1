#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>
#include <numeric>
#include <sstream>

#include "eur/errors.hpp"
#include "eur/quantizer.hpp"
#include "eur/states.hpp"

using namespace eur;

TEST(Quantizer, BinSpecValidation) {
  EXPECT_THROW(BinSpec::r_space(0.0), DomainError);
  EXPECT_THROW(BinSpec::t_space(0), DomainError);
  EXPECT_EQ(BinSpec::t_space_width(0.25).k_max, 4);
  EXPECT_THROW(BinSpec::t_space_width(0.3), DomainError);
}

TEST(Quantizer, GaussianRBins) {
  const BinnedDistribution d = bin_r(StateModel::gaussian(1.0).position(), BinSpec::r_space(1.0));
  EXPECT_NEAR(d.probability(0), 0.341344746068542949, 1e-15);
  EXPECT_NEAR(d.probability(-1), 0.341344746068542949, 1e-15);
  EXPECT_EQ(d.first_index(), -d.last_index() - 1);
  EXPECT_LE(d.tail_deficit(), 1e-10);
  EXPECT_NEAR(d.normalization() + d.tail_deficit(), 1.0, 1e-14);
}

TEST(Quantizer, OneSidedSupportHasNoEmptyBins) {
  Density::Parts p;
  p.pdf = [](double x) { return (x >= 0.0 && x < 1.0) ? 1.0 : 0.0; };
  p.mass = [](double a, double b) { return std::max(0.0, std::min(b, 1.0) - std::max(a, 0.0)); };
  p.upper_tail = [](double x) { return std::clamp(1.0 - x, 0.0, 1.0); };
  p.lower_tail = [](double x) { return std::clamp(x, 0.0, 1.0); };
  const BinnedDistribution d = bin_r(Density(p), BinSpec::r_space(0.25));
  EXPECT_EQ(d.first_index(), 0);
  EXPECT_EQ(d.size(), 4u);
  for (double q : d.probabilities()) EXPECT_DOUBLE_EQ(q, 0.25);
  EXPECT_EQ(d.tail_deficit(), 0.0);
}

TEST(Quantizer, TailTolerance) {
  BinningOptions o;
  o.tail_tol = 1e-3;
  EXPECT_THROW(bin_r(StateModel::gaussian(1.0).position(), BinSpec::r_space(1.0), o), DomainError);
  o.tail_tol = 1e-14;
  const BinnedDistribution d = bin_r(StateModel::gaussian(1.0).position(), BinSpec::r_space(0.5), o);
  EXPECT_LE(d.tail_deficit(), 1e-14);
}

TEST(Quantizer, TBinsOfGaussian) {
  // Edges r = k / (4 - |k|); values from 30-digit normal CDF differences.
  const BinnedDistribution d =
      bin_t(StateModel::gaussian(1.0).position(), 1.0, BinSpec::t_space(4));
  const double expect[] = {0.0013498980316300946, 0.15730535589982697, 0.2107860862503066,
                           0.13055865981823636,   0.13055865981823636, 0.2107860862503066,
                           0.15730535589982697,   0.0013498980316300946};
  ASSERT_EQ(d.size(), 8u);
  for (long k = -4; k < 4; ++k) EXPECT_NEAR(d.probability(k), expect[k + 4], 1e-15);
  EXPECT_NEAR(d.normalization(), 1.0, 1e-14);
}

TEST(Quantizer, ProbabilityIsInvariantUnderTheMap) {
  // p'_k over [k dt, (k+1) dt] equals the r-space mass of the pre-image.
  const StateModel s = StateModel::two_gaussian(0.4, 2.0, 0.7);
  const Density rho = s.position();
  const Density tr = transform_density(rho, 1.5);
  for (double t0 : {-0.9, -0.3, 0.0, 0.45}) {
    const double t1 = t0 + 0.1;
    const double r0 = map_from_t(t0, 1.5), r1 = map_from_t(t1, 1.5);
    EXPECT_NEAR(tr.mass(t0, t1), rho.mass(r0, r1), 1e-14);
    const double numeric = quad::integrate([&](double t) { return tr.pdf(t); }, t0, t1).value;
    EXPECT_NEAR(numeric, rho.mass(r0, r1), 1e-10);
  }
}

TEST(Quantizer, TBinnedSumsToOne) {
  for (const StateModel& s : {StateModel::box(2.0), StateModel::sqrt_cauchy(0.3),
                              StateModel::two_gaussian(0.5, 5.0, 0.5)}) {
    for (long km : {1L, 3L, 50L}) {
      EXPECT_NEAR(bin_t(s.momentum(), 1.0, BinSpec::t_space(km)).normalization(), 1.0, 1e-10);
      EXPECT_NEAR(bin_t(s.position(), 2.0, BinSpec::t_space(km)).normalization(), 1.0, 1e-10);
    }
  }
}

TEST(Quantizer, Subdivide) {
  const double p[] = {0.5, 0.5};
  const double w[] = {0.5, 0.5};
  const std::vector<double> out = subdivide(p, 1, w);
  ASSERT_EQ(out.size(), 3u);
  EXPECT_DOUBLE_EQ(out[0], 0.5);
  EXPECT_DOUBLE_EQ(out[1], 0.25);
  EXPECT_DOUBLE_EQ(out[2], 0.25);
  const double bad[] = {0.6, 0.6};
  EXPECT_THROW(subdivide(p, 0, bad), DomainError);
  const double single[] = {1.0};
  EXPECT_THROW(subdivide(p, 0, single), DomainError);
  EXPECT_THROW(subdivide(p, 2, w), DomainError);
}

TEST(Quantizer, DistributionValidation) {
  EXPECT_THROW(BinnedDistribution(0, {0.5, -0.1}, BinSpec::r_space(1.0)), DomainError);
  EXPECT_THROW(BinnedDistribution(-1, {0.5, 0.5}, BinSpec::t_space(1), 0.1), DomainError);
}

TEST(Quantizer, CsvLayout) {
  const BinnedDistribution d(-1, {0.25, 0.75}, BinSpec::r_space(0.5));
  std::ostringstream out;
  d.write_csv(out);
  EXPECT_EQ(out.str(), "index,lower_edge,upper_edge,probability\n-1,-0.5,0,0.25\n0,0,0.5,0.75\n");
}
