#pragma once

#include <cstddef>
#include <iosfwd>
#include <span>
#include <vector>

#include "eur/density.hpp"

namespace eur {

enum class Space { r, t };

/// Uniform binning with edges at origin + k * width.
///
/// In t-space the origin is 0 and k_max * width == 1, so the 2 k_max bins
/// tile (-1, 1) exactly.
struct BinSpec {
  double width = 1.0;
  double origin = 0.0;
  Space space = Space::r;
  long k_max = 0;

  static BinSpec r_space(double width, double origin = 0.0);
  /// t-space bins of width 1 / k_max.
  static BinSpec t_space(long k_max);
  /// t-space bins of the given width; throws unless 1 / width is an integer.
  static BinSpec t_space_width(double width);

  void validate() const;
};

/// Probabilities indexed by a contiguous range of signed bin indices.
class BinnedDistribution {
 public:
  BinnedDistribution(long first_index, std::vector<double> probabilities, BinSpec spec,
                     double tail_deficit = 0.0);

  long first_index() const { return first_; }
  long last_index() const { return first_ + static_cast<long>(probs_.size()) - 1; }
  std::size_t size() const { return probs_.size(); }
  bool contains(long k) const { return k >= first_ && k <= last_index(); }

  double probability(long k) const;
  std::span<const double> probabilities() const { return probs_; }
  const BinSpec& spec() const { return spec_; }
  double width() const { return spec_.width; }
  Space space() const { return spec_.space; }
  double tail_deficit() const { return tail_deficit_; }
  /// Sum of the stored probabilities.
  double normalization() const;

  double lower_edge(long k) const { return spec_.origin + static_cast<double>(k) * spec_.width; }
  double upper_edge(long k) const { return lower_edge(k + 1); }

  /// index,lower_edge,upper_edge,probability with a header row.
  void write_csv(std::ostream& out) const;

 private:
  long first_;
  std::vector<double> probs_;
  BinSpec spec_;
  double tail_deficit_;
};

struct BinningOptions {
  double tail_tol = 1e-10;
  std::size_t max_bins = std::size_t{1} << 22;
};

/// p_k = mass of [origin + k w, origin + (k+1) w) for the smallest index
/// range whose two outer tails each carry less than tail_tol / 2. Not
/// renormalized: the neglected mass is recorded as the tail deficit.
BinnedDistribution bin_r(const Density& density, const BinSpec& spec,
                         const BinningOptions& opt = {});

/// The density of t = r / (|r| + s): rho(r(t)) * s / (|t| - 1)^2 on (-1, 1).
/// Interval masses are taken over r-space pre-images.
Density transform_density(const Density& density, double s);

/// p'_k for k = -k_max .. k_max - 1, integrated over r-space pre-images of
/// the t-bins so the Jacobian singularity at |t| = 1 is never sampled.
BinnedDistribution bin_t(const Density& density, double s, const BinSpec& spec);

/// Replaces p_k by p_k * weights[0], ..., p_k * weights[n-1]. The result is
/// a plain probability sequence (bin geometry no longer applies).
std::vector<double> subdivide(std::span<const double> probs, std::size_t index,
                              std::span<const double> weights);
BinnedDistribution subdivide(const BinnedDistribution& dist, long k,
                             std::span<const double> weights);

}  // namespace eur
