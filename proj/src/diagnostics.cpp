#include "eur/diagnostics.hpp"

#include <cmath>
#include <random>

#include "eur/errors.hpp"
#include "eur/kernels.hpp"

namespace eur {

namespace {

quad::Options bin_quadrature() {
  quad::Options o;
  o.abs_tol = 1e-300;
  o.rel_tol = 1e-12;
  o.max_intervals = 2000;
  o.throw_on_failure = false;
  return o;
}

// Moments of z = rho / c - 1 over [a, b], c the mean density, so that the
// excess ratio - 1 is assembled from quantities of order width^2.
struct BinMoments {
  double c = 0.0;
  double mu = 0.0;   // mean z
  double n1 = 0.0;   // mean of (1+z)^q - 1 - q z
  double var = 0.0;  // mean z^2 - mu^2
};

BinMoments bin_moments(const Density& rho, double q, double a, double b) {
  const double w = b - a;
  const double mass = rho.mass(a, b);
  if (!(mass > 0.0)) throw DomainError("Jensen ratio: bin carries no probability");
  BinMoments m;
  m.c = mass / w;
  const quad::Options o = bin_quadrature();
  const double c = m.c;
  auto z = [&](double x) { return rho.pdf(x) / c - 1.0; };
  m.mu = quad::integrate([&](double x) { return z(x); }, a, b, o).value / w;
  m.n1 = quad::integrate(
             [&](double x) {
               const double zx = z(x);
               if (zx <= -1.0) return -1.0 - q * zx;
               return std::expm1(q * std::log1p(zx)) - q * zx;
             },
             a, b, o)
             .value /
         w;
  const double z2 = quad::integrate(
                        [&](double x) {
                          const double zx = z(x);
                          return zx * zx;
                        },
                        a, b, o)
                        .value /
                    w;
  m.var = std::max(0.0, z2 - m.mu * m.mu);
  return m;
}

JensenRatio ratio_on(const Density& rho, double q, double a, double b) {
  if (!(q > 0.0)) throw DomainError("Jensen ratio: index must be positive");
  const BinMoments m = bin_moments(rho, q, a, b);
  const double base = 1.0 + m.mu;
  const double n2 = std::expm1(q * std::log1p(m.mu)) - q * m.mu;
  JensenRatio r;
  r.excess = (m.n1 - n2) / std::pow(base, q);
  r.ratio = 1.0 + r.excess;
  r.lhs = std::pow(m.c * base, q);
  r.rhs = r.lhs * r.ratio;
  r.width = b - a;
  return r;
}

}  // namespace

JensenRatio jensen_ratio_r(const Density& density, double index, long k, double width) {
  if (!(width > 0.0) || !std::isfinite(width)) {
    throw DomainError("jensen_ratio_r: width must be positive");
  }
  const double a = static_cast<double>(k) * width;
  JensenRatio r = ratio_on(density, index, a, a + width);
  r.bin = k;
  r.space = Space::r;
  return r;
}

JensenRatio jensen_ratio_t(const Density& density, double s, double index, long k,
                           double width) {
  if (!(width > 0.0) || width > 1.0) throw DomainError("jensen_ratio_t: width must lie in (0, 1]");
  const double a = static_cast<double>(k) * width;
  const double b = a + width;
  if (a < -1.0 - 1e-12 || b > 1.0 + 1e-12) {
    throw DomainError("jensen_ratio_t: bin leaves the interval [-1, 1]");
  }
  const Density t_density = transform_density(density, s);
  JensenRatio r = ratio_on(t_density, index, std::max(a, -1.0), std::min(b, 1.0));
  r.bin = k;
  r.width = width;
  r.space = Space::t;
  return r;
}

double taylor_bias(const Density& density, double index, long k, double width) {
  if (!(width > 0.0)) throw DomainError("taylor_bias: width must be positive");
  const double a = static_cast<double>(k) * width;
  const BinMoments m = bin_moments(density, index, a, a + width);
  const double base = 1.0 + m.mu;
  return 1.0 + 0.5 * index * (index - 1.0) * m.var / (base * base);
}

namespace {

std::vector<double> dirichlet(std::mt19937_64& gen, std::size_t n) {
  std::exponential_distribution<double> e(1.0);
  std::vector<double> w(n);
  double sum = 0.0;
  for (double& v : w) {
    v = e(gen);
    sum += v;
  }
  for (double& v : w) v /= sum;
  return w;
}

// Re-normalizes so the subdivide precondition holds to rounding.
void fix_sum(std::vector<double>& w) {
  double sum = 0.0;
  for (std::size_t i = 0; i + 1 < w.size(); ++i) sum += w[i];
  w.back() = std::max(0.0, 1.0 - sum);
}

bool violates(double index, double before, double after) {
  const double slack = 1e-12 * std::max(std::abs(before), std::abs(after));
  if (index > 1.0) return after > before + slack;
  if (index < 1.0) return after < before - slack;
  return false;
}

void one_trial(std::mt19937_64& gen, std::span<const double> probs, double index,
               SubdivisionVerdict& v) {
  std::uniform_int_distribution<std::size_t> pick_bin(0, probs.size() - 1);
  std::uniform_int_distribution<std::size_t> pick_parts(2, 4);
  const std::size_t bin = pick_bin(gen);
  std::vector<double> w = dirichlet(gen, pick_parts(gen));
  fix_sum(w);
  const double before = kernels::power_sum(probs, index);
  const std::vector<double> split = subdivide(probs, bin, w);
  const double after = kernels::power_sum(split, index);
  ++v.trials;
  if (violates(index, before, after)) {
    ++v.violations;
    if (!v.first_violation) v.first_violation = SubdivisionCounterexample{bin, w, before, after};
  }
}

}  // namespace

SubdivisionVerdict subdivision_oracle(std::span<const double> probs, double index,
                                      std::size_t trials, std::uint64_t seed) {
  if (probs.empty()) throw DomainError("subdivision_oracle: empty distribution");
  if (trials < 1) throw DomainError("subdivision_oracle: trials must be >= 1");
  std::mt19937_64 gen(seed);
  SubdivisionVerdict v;
  for (std::size_t i = 0; i < trials; ++i) one_trial(gen, probs, index, v);
  return v;
}

SubdivisionVerdict subdivision_sweep(std::size_t distributions, double index,
                                     std::uint64_t seed, std::size_t max_bins) {
  if (max_bins < 2) throw DomainError("subdivision_sweep: max_bins must be >= 2");
  std::mt19937_64 gen(seed);
  std::uniform_int_distribution<std::size_t> pick_size(2, max_bins);
  SubdivisionVerdict v;
  for (std::size_t i = 0; i < distributions; ++i) {
    const std::vector<double> p = dirichlet(gen, pick_size(gen));
    one_trial(gen, p, index, v);
  }
  return v;
}

TailMasses tail_masses(const BinnedDistribution& dist, double index, long m) {
  if (m < 0) throw DomainError("tail_masses: cutoff must be non-negative");
  TailMasses t;
  t.m = m;
  std::vector<double> tail;
  for (long k = dist.first_index(); k <= dist.last_index(); ++k) {
    if (std::labs(k) > m) tail.push_back(dist.probability(k));
  }
  double sum = 0.0, comp = 0.0;
  for (double p : tail) {
    const double y = sum + p;
    comp += std::abs(sum) >= std::abs(p) ? (sum - y) + p : (p - y) + sum;
    sum = y;
  }
  t.eps = sum + comp + dist.tail_deficit();
  t.eps_alpha = kernels::power_sum(tail, index);
  return t;
}

std::vector<Fig2Row> jensen_sweep(const Density& momentum, double sp, double index,
                                  std::span<const double> widths) {
  if (!(sp > 0.0)) throw DomainError("jensen_sweep: scale must be positive");
  std::vector<Fig2Row> rows;
  rows.reserve(widths.size());
  for (double dp : widths) {
    Fig2Row row;
    row.delta_p = dp;
    row.ratio_r = jensen_ratio_r(momentum, index, 0, dp).ratio;
    row.ratio_t = jensen_ratio_t(momentum, sp, index, 0, dp / (sp + dp)).ratio;
    row.taylor = taylor_bias(momentum, index, 0, dp);
    rows.push_back(row);
  }
  return rows;
}

}  // namespace eur
