#include "eur/quantizer.hpp"

#include <cmath>
#include <limits>
#include <numeric>
#include <ostream>
#include <string>

#include "eur/csv.hpp"
#include "eur/errors.hpp"
#include "eur/units.hpp"

namespace eur {

BinSpec BinSpec::r_space(double width, double origin) {
  BinSpec s;
  s.width = width;
  s.origin = origin;
  s.space = Space::r;
  s.validate();
  return s;
}

BinSpec BinSpec::t_space(long k_max) {
  BinSpec s;
  s.space = Space::t;
  s.k_max = k_max;
  s.width = 1.0 / static_cast<double>(k_max);
  s.validate();
  return s;
}

BinSpec BinSpec::t_space_width(double width) {
  if (!(width > 0.0) || width > 1.0) throw DomainError("t-space bin width must lie in (0, 1]");
  const double n = std::round(1.0 / width);
  if (std::abs(n * width - 1.0) > 1e-12) {
    throw DomainError("t-space bin width must divide 1 exactly (k_max * width == 1)");
  }
  return t_space(static_cast<long>(n));
}

void BinSpec::validate() const {
  if (!(width > 0.0) || !std::isfinite(width)) throw DomainError("bin width must be positive");
  if (space == Space::t) {
    if (k_max < 1) throw DomainError("t-space k_max must be a positive integer");
    if (std::abs(static_cast<double>(k_max) * width - 1.0) > 1e-12) {
      throw DomainError("t-space bins require k_max * width == 1");
    }
    if (origin != 0.0) throw DomainError("t-space bins are anchored at 0");
  }
}

BinnedDistribution::BinnedDistribution(long first_index, std::vector<double> probabilities,
                                       BinSpec spec, double tail_deficit)
    : first_(first_index), probs_(std::move(probabilities)), spec_(spec),
      tail_deficit_(tail_deficit) {
  for (double p : probs_) {
    if (!(p >= 0.0 && p <= 1.0 + 1e-12)) {
      throw DomainError("bin probability outside [0, 1]: " + std::to_string(p));
    }
  }
  if (spec_.space == Space::t && tail_deficit_ != 0.0) {
    throw DomainError("t-space distributions carry no tail deficit");
  }
}

double BinnedDistribution::probability(long k) const {
  if (!contains(k)) return 0.0;
  return probs_[static_cast<std::size_t>(k - first_)];
}

double BinnedDistribution::normalization() const {
  // Neumaier summation; large tables of tiny tail bins are common.
  double sum = 0.0, c = 0.0;
  for (double p : probs_) {
    const double t = sum + p;
    c += std::abs(sum) >= std::abs(p) ? (sum - t) + p : (p - t) + sum;
    sum = t;
  }
  return sum + c;
}

void BinnedDistribution::write_csv(std::ostream& out) const {
  CsvWriter w(out, {"index", "lower_edge", "upper_edge", "probability"});
  for (long k = first_; k <= last_index(); ++k) {
    w.row({std::to_string(k), format_number(lower_edge(k)), format_number(upper_edge(k)),
           format_number(probability(k))});
  }
}

namespace {

// Smallest m >= 0 with tail(origin +- m * width) <= budget.
long cover_count(const std::function<double(double)>& tail_at, double budget,
                 std::size_t max_bins) {
  if (tail_at(0.0) <= budget) return 0;
  long hi = 1;
  while (tail_at(static_cast<double>(hi)) > budget) {
    hi *= 2;
    if (static_cast<std::size_t>(hi) > max_bins) {
      throw NumericError("bin_r: more than " + std::to_string(max_bins) +
                         " bins needed to reach the tail tolerance");
    }
  }
  long lo = hi / 2;
  while (hi - lo > 1) {
    const long mid = lo + (hi - lo) / 2;
    (tail_at(static_cast<double>(mid)) > budget ? lo : hi) = mid;
  }
  return hi;
}

}  // namespace

BinnedDistribution bin_r(const Density& density, const BinSpec& spec, const BinningOptions& opt) {
  spec.validate();
  if (spec.space != Space::r) throw DomainError("bin_r: expected an r-space bin spec");
  if (!(opt.tail_tol > 0.0) || opt.tail_tol > 1e-6) {
    throw DomainError("bin_r: tail tolerance must lie in (0, 1e-6]");
  }
  const double w = spec.width;
  const double o = spec.origin;
  const double half = 0.5 * opt.tail_tol;
  const long m_hi = cover_count([&](double m) { return density.upper_tail(o + m * w); }, half,
                                opt.max_bins);
  const long m_lo = cover_count([&](double m) { return density.lower_tail(o - m * w); }, half,
                                opt.max_bins);
  // Symmetric index range when an even density is binned from the origin.
  const bool symmetric = density.even() && o == 0.0;
  const long top = symmetric ? std::max(m_hi, m_lo) : m_hi;
  const long bottom = symmetric ? std::max(m_hi, m_lo) : m_lo;
  const std::size_t n = static_cast<std::size_t>(top + bottom);
  if (n > opt.max_bins) throw NumericError("bin_r: bin budget exceeded");

  std::vector<double> probs(n);
  for (std::size_t i = 0; i < n; ++i) {
    const long k = -bottom + static_cast<long>(i);
    const double a = o + static_cast<double>(k) * w;
    probs[i] = std::max(0.0, density.mass(a, a + w));
  }
  const double deficit = density.upper_tail(o + static_cast<double>(top) * w) +
                         density.lower_tail(o - static_cast<double>(bottom) * w);
  return BinnedDistribution(-bottom, std::move(probs), spec, deficit);
}

Density transform_density(const Density& density, double s) {
  if (!(s > 0.0)) throw DomainError("transform_density: scale must be positive");
  Density::Parts p;
  p.pdf = [density, s](double t) {
    if (!(std::abs(t) < 1.0)) throw DomainError("transformed density: |t| must be < 1");
    const double om = 1.0 - std::abs(t);
    return density.pdf(map_from_t(t, s)) * s / (om * om);
  };
  auto to_r = [s](double t) {
    if (t <= -1.0) return -std::numeric_limits<double>::infinity();
    if (t >= 1.0) return std::numeric_limits<double>::infinity();
    return map_from_t(t, s);
  };
  p.mass = [density, to_r](double a, double b) { return density.mass(to_r(a), to_r(b)); };
  p.upper_tail = [density, to_r](double t) { return density.upper_tail(to_r(t)); };
  p.lower_tail = [density, to_r](double t) { return density.lower_tail(to_r(t)); };
  p.scale = density.scale() / (density.scale() + s);
  p.even = density.even();
  return Density(std::move(p));
}

BinnedDistribution bin_t(const Density& density, double s, const BinSpec& spec) {
  spec.validate();
  if (spec.space != Space::t) throw DomainError("bin_t: expected a t-space bin spec");
  if (!(s > 0.0)) throw DomainError("bin_t: scale must be positive");
  const long km = spec.k_max;
  // Edge k maps to r = s k dt / (1 - |k| dt) = s k / (k_max - |k|).
  auto edge = [&](long k) {
    if (k <= -km) return -std::numeric_limits<double>::infinity();
    if (k >= km) return std::numeric_limits<double>::infinity();
    return s * static_cast<double>(k) / static_cast<double>(km - std::labs(k));
  };
  std::vector<double> probs(static_cast<std::size_t>(2 * km));
  for (long k = -km; k < km; ++k) {
    probs[static_cast<std::size_t>(k + km)] = std::max(0.0, density.mass(edge(k), edge(k + 1)));
  }
  return BinnedDistribution(-km, std::move(probs), spec, 0.0);
}

std::vector<double> subdivide(std::span<const double> probs, std::size_t index,
                              std::span<const double> weights) {
  if (index >= probs.size()) throw DomainError("subdivide: bin index out of range");
  if (weights.size() < 2) throw DomainError("subdivide: need at least two parts");
  double total = 0.0;
  for (double w : weights) {
    if (!(w >= 0.0)) throw DomainError("subdivide: weights must be non-negative");
    total += w;
  }
  if (std::abs(total - 1.0) > 1e-12) throw DomainError("subdivide: weights must sum to 1");
  std::vector<double> out;
  out.reserve(probs.size() + weights.size() - 1);
  out.insert(out.end(), probs.begin(), probs.begin() + static_cast<std::ptrdiff_t>(index));
  for (double w : weights) out.push_back(probs[index] * w);
  out.insert(out.end(), probs.begin() + static_cast<std::ptrdiff_t>(index) + 1, probs.end());
  return out;
}

BinnedDistribution subdivide(const BinnedDistribution& dist, long k,
                             std::span<const double> weights) {
  if (!dist.contains(k)) throw DomainError("subdivide: bin index out of range");
  auto probs = subdivide(dist.probabilities(), static_cast<std::size_t>(k - dist.first_index()),
                         weights);
  BinSpec spec = dist.spec();
  spec.space = Space::r;  // geometry is no longer uniform; keep the sequence
  spec.origin = 0.0;
  return BinnedDistribution(dist.first_index(), std::move(probs), spec, dist.tail_deficit());
}

}  // namespace eur
