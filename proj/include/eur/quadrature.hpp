#pragma once

#include <cstddef>
#include <functional>

namespace eur::quad {

/// Tolerances for the adaptive Gauss-Kronrod integrator. Convergence is
/// declared when the error estimate falls below max(abs_tol, rel_tol*|I|).
struct Options {
  double abs_tol = 1e-11;
  double rel_tol = 1e-13;
  std::size_t max_intervals = 4000;
  /// When false, running out of intervals returns the current estimate.
  bool throw_on_failure = true;
};

struct Result {
  double value = 0.0;
  double error = 0.0;
  std::size_t evaluations = 0;
  std::size_t intervals = 0;
};

using Integrand = std::function<double(double)>;

/// Global adaptive 7/15-point Gauss-Kronrod quadrature over [a, b].
/// Throws NumericError (with the estimate and interval count) on failure.
Result integrate(const Integrand& f, double a, double b, const Options& opt = {});

/// Integral over [a, +inf) via x = a + u / (1 - u).
Result integrate_upper(const Integrand& f, double a, const Options& opt = {});

/// Integral over (-inf, b] via x = b - u / (1 - u).
Result integrate_lower(const Integrand& f, double b, const Options& opt = {});

/// Integral over [a, b] where either end may be infinite.
Result integrate_any(const Integrand& f, double a, double b, const Options& opt = {});

}  // namespace eur::quad
