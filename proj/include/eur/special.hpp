#pragma once

namespace eur::special {

/// Standard normal CDF, accurate in both tails.
double normal_cdf(double z);
/// 1 - normal_cdf(z) without cancellation.
double normal_sf(double z);

/// Sine integral Si(x) = int_0^x sin(t)/t dt.
double sine_integral(double x);

/// int_0^u sin^2(v)/v^2 dv = Si(2u) - sin^2(u)/u, odd in u.
double sinc2_integral(double u);

/// Modified Bessel function K0(x), x > 0.
double bessel_k0(double x);

}  // namespace eur::special
