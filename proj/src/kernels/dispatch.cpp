#include <cstdlib>
#include <cstring>

#include "eur/kernels.hpp"

namespace eur::kernels {

std::string_view to_string(Backend b) { return b == Backend::avx2 ? "avx2" : "scalar"; }

bool avx2_supported() {
#if defined(EUR_HAVE_AVX2) && (defined(__GNUC__) || defined(__clang__))
  __builtin_cpu_init();
  return __builtin_cpu_supports("avx2") && __builtin_cpu_supports("fma");
#else
  return false;
#endif
}

Backend active_backend() {
  static const Backend chosen = [] {
    const char* force = std::getenv("EUR_FORCE_SCALAR");
    if (force != nullptr && std::strcmp(force, "0") != 0 && force[0] != '\0') {
      return Backend::scalar;
    }
    return avx2_supported() ? Backend::avx2 : Backend::scalar;
  }();
  return chosen;
}

double power_sum(std::span<const double> p, double a) {
#if defined(EUR_HAVE_AVX2)
  if (active_backend() == Backend::avx2) return avx2::power_sum(p, a);
#endif
  return scalar::power_sum(p, a);
}

double neg_plogp_sum(std::span<const double> p) {
#if defined(EUR_HAVE_AVX2)
  if (active_backend() == Backend::avx2) return avx2::neg_plogp_sum(p);
#endif
  return scalar::neg_plogp_sum(p);
}

void scaled_pow(std::span<const double> x, double e, double coeff, std::span<double> out) {
#if defined(EUR_HAVE_AVX2)
  if (active_backend() == Backend::avx2) return avx2::scaled_pow(x, e, coeff, out);
#endif
  scalar::scaled_pow(x, e, coeff, out);
}

}  // namespace eur::kernels
