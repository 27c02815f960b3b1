#include "eur/entropy.hpp"

#include <cmath>
#include <numbers>
#include <string>

#include "eur/errors.hpp"
#include "eur/kernels.hpp"

namespace eur {

IndexPair::IndexPair(double alpha, double beta) : alpha_(alpha), beta_(beta) {
  if (!(alpha > 0.5) || !(beta > 0.5) || !std::isfinite(alpha) || !std::isfinite(beta)) {
    throw DomainError("entropic indices must exceed 1/2");
  }
  if (std::abs(1.0 / alpha + 1.0 / beta - 2.0) > 1e-12) {
    throw DomainError("entropic indices must satisfy 1/alpha + 1/beta = 2");
  }
}

IndexPair IndexPair::canonical() const {
  return needs_swap() ? IndexPair(beta_, alpha_) : *this;
}

IndexPair conjugate_index(double alpha) {
  if (!(alpha > 0.5) || !std::isfinite(alpha)) {
    throw DomainError("conjugate_index: alpha must exceed 1/2 (1/alpha + 1/beta = 2)");
  }
  return IndexPair(alpha, alpha / (2.0 * alpha - 1.0));
}

std::string_view to_string(EntropyKind k) {
  switch (k) {
    case EntropyKind::shannon: return "shannon";
    case EntropyKind::renyi: return "renyi";
    case EntropyKind::tsallis: return "tsallis";
    case EntropyKind::homogeneous: return "homogeneous";
  }
  return "unknown";
}

namespace {

bool near_one(double q) { return std::abs(q - 1.0) < kShannonWindow; }

void require_index(double q) {
  if (!(q > 0.0) || !std::isfinite(q)) throw DomainError("entropy index must be positive");
}

const BinnedDistribution& require_normalized(const BinnedDistribution& d) {
  if (d.tail_deficit() > 1e-6) {
    throw DomainError("entropy: tail deficit " + std::to_string(d.tail_deficit()) +
                      " exceeds 1e-6");
  }
  return d;
}

}  // namespace

EntropyValue shannon(std::span<const double> p, LogBase base) {
  double v = kernels::neg_plogp_sum(p);
  if (base == LogBase::bits) v /= std::numbers::ln2;
  return {v, EntropyKind::shannon, 1.0, base};
}

EntropyValue tsallis(std::span<const double> p, double index) {
  require_index(index);
  if (near_one(index)) {
    return {shannon(p).value, EntropyKind::tsallis, index, LogBase::nats};
  }
  const double s = kernels::power_sum(p, index);
  return {(s - 1.0) / (1.0 - index), EntropyKind::tsallis, index, LogBase::nats};
}

EntropyValue renyi(std::span<const double> p, double index) {
  require_index(index);
  if (near_one(index)) {
    return {shannon(p).value, EntropyKind::renyi, index, LogBase::nats};
  }
  const double s = kernels::power_sum(p, index);
  return {std::log(s) / (1.0 - index), EntropyKind::renyi, index, LogBase::nats};
}

EntropyValue homogeneous_A(std::span<const double> p, double index) {
  require_index(index);
  if (near_one(index)) {
    return {shannon(p).value, EntropyKind::homogeneous, index, LogBase::nats};
  }
  const double s = kernels::power_sum(p, index);
  // 1 - s^(1/q) = -expm1(ln(s)/q) keeps precision for s close to 1.
  const double v = index / (index - 1.0) * -std::expm1(std::log(s) / index);
  return {v, EntropyKind::homogeneous, index, LogBase::nats};
}

EntropyValue tsallis(const BinnedDistribution& d, double index) {
  return tsallis(require_normalized(d).probabilities(), index);
}
EntropyValue shannon(const BinnedDistribution& d, LogBase base) {
  return shannon(require_normalized(d).probabilities(), base);
}
EntropyValue renyi(const BinnedDistribution& d, double index) {
  return renyi(require_normalized(d).probabilities(), index);
}
EntropyValue homogeneous_A(const BinnedDistribution& d, double index) {
  return homogeneous_A(require_normalized(d).probabilities(), index);
}

}  // namespace eur
