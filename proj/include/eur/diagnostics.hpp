#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "eur/density.hpp"
#include "eur/quantizer.hpp"

namespace eur {

/// Bin average of a power versus power of the bin average.
struct JensenRatio {
  double lhs = 0.0;     // [(1/w) int rho]^index
  double rhs = 0.0;     // (1/w) int rho^index
  double ratio = 1.0;   // rhs / lhs
  double excess = 0.0;  // ratio - 1, computed without cancellation
  long bin = 0;
  double width = 0.0;
  Space space = Space::r;
};

/// Bin k is [k w, (k+1) w].
JensenRatio jensen_ratio_r(const Density& density, double index, long k, double width);
/// Same construction on the density of t = r / (|r| + s); the bin must lie in [-1, 1].
JensenRatio jensen_ratio_t(const Density& density, double s, double index, long k,
                           double width);

/// Second-order estimate 1 + index (index - 1) Var / (2 mean^2) of the ratio,
/// with mean and variance of the density over the bin.
double taylor_bias(const Density& density, double index, long k, double width);

struct SubdivisionCounterexample {
  std::size_t bin = 0;
  std::vector<double> weights;
  double before = 0.0;
  double after = 0.0;
};

struct SubdivisionVerdict {
  std::size_t trials = 0;
  std::size_t violations = 0;
  std::optional<SubdivisionCounterexample> first_violation;
  bool ok() const { return violations == 0; }
};

/// Splits a random bin into 2..4 parts with random weights, `trials` times,
/// and checks that sum p^index decreases (index > 1) or increases (index < 1).
/// Relative slack 1e-12.
SubdivisionVerdict subdivision_oracle(std::span<const double> probs, double index,
                                      std::size_t trials, std::uint64_t seed);

/// subdivision_oracle over `distributions` random normalized sequences of
/// 2..max_bins entries, one split each.
SubdivisionVerdict subdivision_sweep(std::size_t distributions, double index,
                                     std::uint64_t seed, std::size_t max_bins = 64);

struct TailMasses {
  long m = 0;
  double eps = 0.0;        // sum of p_k over |k| > m, including the unstored tail deficit
  double eps_alpha = 0.0;  // sum of p_k^index over stored bins with |k| > m
};

TailMasses tail_masses(const BinnedDistribution& dist, double index, long m);

struct Fig2Row {
  double delta_p = 0.0;
  double ratio_r = 1.0;
  double ratio_t = 1.0;
  double taylor = 1.0;
};

/// Jensen ratios in bin 0 of a momentum density for widths delta_p and the
/// matched t-widths delta_p / (sp + delta_p).
std::vector<Fig2Row> jensen_sweep(const Density& momentum, double sp, double index,
                                  std::span<const double> widths);

}  // namespace eur
