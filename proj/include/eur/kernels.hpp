#pragma once

#include <span>
#include <string_view>

// Data-parallel inner loops of the entropy and bound sweeps.
//
// Every kernel has a scalar reference implementation and, on x86-64 builds
// with EUR_HAVE_AVX2, an AVX2/FMA variant. The unqualified entry points pick
// the best variant supported by the running CPU; setting the environment
// variable EUR_FORCE_SCALAR=1 pins them to the scalar reference.
namespace eur::kernels {

enum class Backend { scalar, avx2 };

std::string_view to_string(Backend b);
bool avx2_supported();
Backend active_backend();

/// sum_i p_i^a over entries with p_i > 0 (zeros contribute nothing).
double power_sum(std::span<const double> p, double a);
/// -sum_i p_i ln p_i with 0 ln 0 = 0.
double neg_plogp_sum(std::span<const double> p);
/// out_i = coeff * x_i^e for x_i >= 0 (0^e = 0 for e > 0).
void scaled_pow(std::span<const double> x, double e, double coeff, std::span<double> out);

namespace scalar {
double power_sum(std::span<const double> p, double a);
double neg_plogp_sum(std::span<const double> p);
void scaled_pow(std::span<const double> x, double e, double coeff, std::span<double> out);
}  // namespace scalar

#if defined(EUR_HAVE_AVX2)
namespace avx2 {
double power_sum(std::span<const double> p, double a);
double neg_plogp_sum(std::span<const double> p);
void scaled_pow(std::span<const double> x, double e, double coeff, std::span<double> out);
// Lane-wise log/exp exposed for accuracy tests; n must be a multiple of 4.
void log4(const double* x, double* out);
void exp4(const double* x, double* out);
}  // namespace avx2
#endif

}  // namespace eur::kernels
