#include <gtest/gtest.h>

#include <cmath>
#include <numbers>
#include <sstream>

#include "eur/errors.hpp"
#include "eur/special.hpp"
#include "eur/states.hpp"

using namespace eur;

namespace {
constexpr double kPi = std::numbers::pi;
}

TEST(States, FamilyNames) {
  EXPECT_EQ(parse_family("two-gaussian"), Family::two_gaussian);
  EXPECT_EQ(to_string(Family::sqrt_cauchy), "sqrt-cauchy");
  EXPECT_THROW(parse_family("lorentzian"), DomainError);
  EXPECT_EQ(parameter_names(Family::two_gaussian).size(), 3u);
}

TEST(States, ParameterValidation) {
  EXPECT_THROW(StateModel::gaussian(0.0), DomainError);
  EXPECT_THROW(StateModel::box(-1.0), DomainError);
  EXPECT_THROW(StateModel::two_gaussian(1.0, 1.0, 1.5), DomainError);
  EXPECT_THROW(StateModel::sqrt_cauchy(0.0), DomainError);
  const double two[] = {1.0, 2.0};
  EXPECT_THROW(make_state(Family::gaussian, two), DomainError);
}

TEST(States, GaussianMomentumWidth) {
  // sigma_p = h / (4 pi sigma_x)
  EXPECT_NEAR(StateModel::gaussian(1.0).momentum_sigma(), 0.0795774715459477, 1e-15);
  const UnitsSpec u = UnitsSpec::natural(3.0);
  EXPECT_NEAR(StateModel::gaussian(0.5, u).momentum_sigma(), 3.0 / (2.0 * kPi), 1e-14);
  EXPECT_THROW(StateModel::box(1.0).momentum_sigma(), DomainError);
}

TEST(States, GaussianDensities) {
  const StateModel s = StateModel::gaussian(1.0);
  EXPECT_NEAR(position_density(s, 0.0), 1.0 / std::sqrt(2.0 * kPi), 1e-15);
  EXPECT_NEAR(s.position().mass(0.0, 1.0), 0.341344746068542949, 1e-15);
  const double sp = s.momentum_sigma();
  EXPECT_NEAR(momentum_density(s, 0.0), 1.0 / (std::sqrt(2.0 * kPi) * sp), 1e-12);
}

TEST(States, BoxMomentum) {
  const StateModel s = StateModel::box(1.0);
  // |psi~(0)|^2 = 2a/h
  EXPECT_NEAR(momentum_density(s, 0.0), 2.0, 1e-14);
  // (1/pi)[Si(2u) - sin^2 u / u] with u = 2 pi P a / h, here P = 0.5
  EXPECT_NEAR(s.momentum().mass(0.0, 0.5), 0.451411666790140313, 1e-13);
  EXPECT_NEAR(s.position().mass(-2.0, 0.5), 0.75, 1e-15);
}

TEST(States, SqrtCauchyMomentum) {
  const StateModel s = StateModel::sqrt_cauchy(1.0);
  // Direct oscillatory quadrature of the position amplitude gives the same.
  EXPECT_NEAR(momentum_density(s, 0.3), 0.0219409753802608488, 1e-15);
  EXPECT_NEAR(s.momentum().mass(-0.2, 0.7) + s.momentum().mass(0.7, 2.0),
              s.momentum().mass(-0.2, 2.0), 1e-10);
}

TEST(States, TwoGaussianMomentum) {
  const StateModel s = StateModel::two_gaussian(0.5, 3.0, 0.3);
  EXPECT_NEAR(momentum_density(s, 0.2), 0.291263216956931233, 1e-13);
  EXPECT_NEAR(s.position().mass(-INFINITY, INFINITY), 1.0, 1e-14);
}

TEST(States, ClosedFormMatchesNumericTransform) {
  const MomentumGrid grid{-1.5, 1.5, 13};
  for (const StateModel& s :
       {StateModel::gaussian(0.7), StateModel::box(0.8), StateModel::two_gaussian(0.4, 2.0, 0.6)}) {
    const SampledAmplitude a = fourier_transform(s, grid);
    for (std::size_t i = 0; i < a.grid.size(); ++i) {
      EXPECT_NEAR(std::abs(a.values[i] - s.momentum_amplitude(a.grid[i])), 0.0, 1e-8)
          << to_string(s.family()) << " p=" << a.grid[i];
    }
  }
}

TEST(States, SlowTailsExceedTruncationBudget) {
  FourierOptions o;
  o.max_window = 1e3;
  EXPECT_THROW(fourier_transform(StateModel::sqrt_cauchy(1.0), MomentumGrid{}, o),
               TruncationBudgetExceeded);
}

TEST(States, Parseval) {
  for (const StateModel& s :
       {StateModel::gaussian(1.0), StateModel::gaussian(0.2), StateModel::box(1.5),
        StateModel::two_gaussian(0.5, 4.0, 0.2), StateModel::sqrt_cauchy(0.4)}) {
    EXPECT_NEAR(momentum_norm(s), 1.0, 1e-8) << to_string(s.family());
  }
}

TEST(States, ParsevalWithOtherUnits) {
  const UnitsSpec u = UnitsSpec::with_scales(2.0, 0.5, 4.0);
  EXPECT_NEAR(momentum_norm(StateModel::box(1.0, u)), 1.0, 1e-8);
  EXPECT_NEAR(momentum_norm(StateModel::sqrt_cauchy(2.0, u)), 1.0, 1e-8);
}

TEST(States, TabulatedFromCsv) {
  std::ostringstream warn;
  const StateModel s = load_tabulated_csv(std::string(EUR_TEST_DATA) + "/gaussian_table.csv",
                                          UnitsSpec{}, &warn);
  EXPECT_EQ(s.family(), Family::tabulated);
  EXPECT_NEAR(s.raw_mass(), 1.0, 1e-3);
  EXPECT_NEAR(s.position().mass(-INFINITY, INFINITY), 1.0, 1e-12);
  // Close to the analytic gaussian it was sampled from.
  EXPECT_NEAR(s.position().mass(0.0, 1.0), 0.3413447, 1e-3);
  EXPECT_NEAR(s.momentum().mass(-INFINITY, INFINITY), 1.0, 1e-9);
}

TEST(States, TabulatedMomentumMatchesNumericTransform) {
  const StateModel s = StateModel::tabulated({-1.0, -0.2, 0.5, 1.0}, {0.0, 0.8, 0.6, 0.0});
  const SampledAmplitude a = fourier_transform(s, MomentumGrid{-3.0, 3.0, 7});
  for (std::size_t i = 0; i < a.grid.size(); ++i) {
    EXPECT_NEAR(std::abs(a.values[i] - s.momentum_amplitude(a.grid[i])), 0.0, 1e-9);
  }
}

TEST(States, CorruptedTableWarns) {
  std::ostringstream warn;
  const StateModel s = load_tabulated_csv(std::string(EUR_TEST_DATA) + "/corrupted_table.csv",
                                          UnitsSpec{}, &warn);
  EXPECT_GT(std::abs(s.raw_mass() - 1.0), 1e-6);
  EXPECT_NE(warn.str().find("warning"), std::string::npos);
}

TEST(States, TabulatedParseErrors) {
  std::istringstream bad("x,density\n0,1\nfoo,2\n");
  EXPECT_THROW(parse_tabulated_csv(bad), ParseError);
  std::istringstream one_col("x,density\n0\n");
  EXPECT_THROW(parse_tabulated_csv(one_col), ParseError);
  EXPECT_THROW(StateModel::tabulated({0.0, 0.0, 1.0}, {1.0, 1.0, 1.0}), DomainError);
  EXPECT_THROW(StateModel::tabulated({0.0, 1.0}, {-1.0, 1.0}), DomainError);
  EXPECT_THROW(load_tabulated_csv("/nonexistent/file.csv"), ParseError);
}
