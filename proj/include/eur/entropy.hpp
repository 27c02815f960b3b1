#pragma once

#include <span>
#include <string_view>

#include "eur/quantizer.hpp"

namespace eur {

/// Conjugate entropic indices with 1/alpha + 1/beta = 2. By convention alpha
/// is the momentum-space index and beta the position-space index.
class IndexPair {
 public:
  /// Throws DomainError unless the pair satisfies the conjugacy relation.
  IndexPair(double alpha, double beta);

  double alpha() const { return alpha_; }
  double beta() const { return beta_; }
  /// The Shannon point alpha == beta == 1.
  bool is_shannon() const { return alpha_ == 1.0; }
  /// Same pair with the larger index first, and whether that swapped them.
  IndexPair canonical() const;
  bool needs_swap() const { return alpha_ < beta_; }

 private:
  double alpha_;
  double beta_;
};

/// beta = alpha / (2 alpha - 1); alpha must exceed 1/2.
IndexPair conjugate_index(double alpha);

enum class EntropyKind { shannon, renyi, tsallis, homogeneous };
enum class LogBase { nats, bits };

std::string_view to_string(EntropyKind k);

struct EntropyValue {
  double value = 0.0;
  EntropyKind kind = EntropyKind::shannon;
  double index = 1.0;
  LogBase base = LogBase::nats;
};

/// Indices closer to 1 than this fall back to the Shannon entropy.
inline constexpr double kShannonWindow = 1e-8;

/// (sum p^q - 1) / (1 - q).
EntropyValue tsallis(std::span<const double> p, double index);
/// -sum p ln p, optionally in bits.
EntropyValue shannon(std::span<const double> p, LogBase base = LogBase::nats);
/// ln(sum p^q) / (1 - q).
EntropyValue renyi(std::span<const double> p, double index);
/// q/(q-1) [1 - (sum p^q)^(1/q)].
EntropyValue homogeneous_A(std::span<const double> p, double index);

/// Overloads on binned distributions; the tail deficit must stay below 1e-6.
EntropyValue tsallis(const BinnedDistribution& d, double index);
EntropyValue shannon(const BinnedDistribution& d, LogBase base = LogBase::nats);
EntropyValue renyi(const BinnedDistribution& d, double index);
EntropyValue homogeneous_A(const BinnedDistribution& d, double index);

}  // namespace eur
