#include "eur/special.hpp"

#include <cmath>
#include <complex>
#include <numbers>

#include "eur/errors.hpp"

namespace eur::special {

double normal_cdf(double z) { return 0.5 * std::erfc(-z / std::numbers::sqrt2); }

double normal_sf(double z) { return 0.5 * std::erfc(z / std::numbers::sqrt2); }

double sine_integral(double x) {
  if (x < 0.0) return -sine_integral(-x);
  if (x == 0.0) return 0.0;
  constexpr double eps = 1e-16;
  if (x < 2.0) {
    // Power series: sum (-1)^k x^(2k+1) / ((2k+1) (2k+1)!).
    double term = x;
    double sum = x;
    const double x2 = x * x;
    for (int k = 1; k < 60; ++k) {
      term *= -x2 / ((2.0 * k) * (2.0 * k + 1.0));
      const double add = term / (2.0 * k + 1.0);
      sum += add;
      if (std::abs(add) < eps * std::abs(sum)) break;
    }
    return sum;
  }
  // Modified Lentz evaluation of the continued fraction for E1(ix);
  // Si(x) = pi/2 + Im[e^{-ix} * CF].
  using cd = std::complex<double>;
  constexpr double tiny = 1e-300;
  cd b(1.0, x);
  cd c(1.0 / tiny, 0.0);
  cd d = 1.0 / b;
  cd h = d;
  for (int i = 2; i < 1000; ++i) {
    const double a = -static_cast<double>((i - 1) * (i - 1));
    b += 2.0;
    d = 1.0 / (a * d + b);
    c = b + a / c;
    const cd del = c * d;
    h *= del;
    if (std::abs(del.real() - 1.0) + std::abs(del.imag()) < eps) {
      h *= cd(std::cos(x), -std::sin(x));
      return std::numbers::pi / 2.0 + h.imag();
    }
  }
  throw NumericError("sine_integral: continued fraction failed to converge");
}

double sinc2_integral(double u) {
  if (u < 0.0) return -sinc2_integral(-u);
  if (u == 0.0) return 0.0;
  if (u < 1e-4) {
    // u - u^3/9 + 2u^5/225
    const double u2 = u * u;
    return u * (1.0 - u2 / 9.0 + 2.0 * u2 * u2 / 225.0);
  }
  const double s = std::sin(u);
  return sine_integral(2.0 * u) - s * s / u;
}

double bessel_k0(double x) {
  if (!(x > 0.0)) throw DomainError("bessel_k0: argument must be positive");
  if (x > 700.0) return 0.0;
  return std::cyl_bessel_k(0.0, x);
}

}  // namespace eur::special
