#include "eur/quadrature.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <queue>
#include <sstream>
#include <vector>

#include "eur/errors.hpp"

namespace eur::quad {

namespace {

// Kronrod abscissae (positive half) and weights; every odd index is a Gauss node.
constexpr std::array<double, 8> kXk = {
    0.991455371120812639206854697526329, 0.949107912342758524526189684047851,
    0.864864423359769072789712788640926, 0.741531185599394439863864773280788,
    0.586087235467691130294144845693013, 0.405845151377397166906606412076961,
    0.207784955007898467600689403773245, 0.000000000000000000000000000000000};
constexpr std::array<double, 8> kWk = {
    0.022935322010529224963732008058970, 0.063092092629978553290700663189204,
    0.104790010322250183839876322541518, 0.140653259715525918745189590510238,
    0.169004726639267902826583426598550, 0.190350578064785409913256402421014,
    0.204432940075298892414161999234649, 0.209482141084727828012999174891714};
constexpr std::array<double, 4> kWg = {
    0.129484966168869693270611432679082, 0.279705391489276667901467771423780,
    0.381830050505118944950369775488975, 0.417959183673469387755102040816327};

struct Segment {
  double a, b, value, error;
  bool operator<(const Segment& o) const { return error < o.error; }
};

Segment gk15(const Integrand& f, double a, double b) {
  const double c = 0.5 * (a + b);
  const double h = 0.5 * (b - a);
  const double fc = f(c);
  double kron = fc * kWk[7];
  double gauss = fc * kWg[3];
  for (int j = 0; j < 7; ++j) {
    const double dx = h * kXk[j];
    const double fsum = f(c - dx) + f(c + dx);
    kron += kWk[j] * fsum;
    if (j % 2 == 1) gauss += kWg[j / 2] * fsum;
  }
  const double value = kron * h;
  // QUADPACK-style scaling of the raw |K - G| difference.
  double err = std::abs((kron - gauss) * h);
  if (err != 0.0) err = err * std::min(1.0, std::pow(200.0 * err / std::max(std::abs(value), 1e-300), 1.5));
  err = std::max(err, 50.0 * std::numeric_limits<double>::epsilon() * std::abs(value));
  return {a, b, value, err};
}

}  // namespace

Result integrate(const Integrand& f, double a, double b, const Options& opt) {
  if (!std::isfinite(a) || !std::isfinite(b)) {
    throw DomainError("integrate: limits must be finite (use integrate_any)");
  }
  if (a == b) return {};
  double sign = 1.0;
  if (b < a) {
    std::swap(a, b);
    sign = -1.0;
  }

  std::priority_queue<Segment> heap;
  Segment first = gk15(f, a, b);
  if (!std::isfinite(first.value)) {
    throw NumericError("integrate: non-finite integrand on [" + std::to_string(a) + ", " +
                       std::to_string(b) + "]");
  }
  heap.push(first);
  double total = first.value;
  double total_err = first.error;
  std::size_t evals = 15;

  auto converged = [&] {
    return total_err <= std::max(opt.abs_tol, opt.rel_tol * std::abs(total));
  };

  while (!converged()) {
    if (heap.size() >= opt.max_intervals) {
      if (!opt.throw_on_failure) break;
      std::ostringstream msg;
      msg.precision(6);
      msg << "integrate: no convergence on [" << a << ", " << b << "] after " << heap.size()
          << " intervals (estimate " << total << ", error " << total_err << ")";
      throw NumericError(msg.str());
    }
    Segment worst = heap.top();
    heap.pop();
    const double mid = 0.5 * (worst.a + worst.b);
    if (!(mid > worst.a && mid < worst.b)) {
      // Interval cannot be split further in double precision; accept as is.
      heap.push(worst);
      break;
    }
    Segment left = gk15(f, worst.a, mid);
    Segment right = gk15(f, mid, worst.b);
    evals += 30;
    if (!std::isfinite(left.value) || !std::isfinite(right.value)) {
      throw NumericError("integrate: non-finite integrand near " + std::to_string(mid));
    }
    total += left.value + right.value - worst.value;
    total_err += left.error + right.error - worst.error;
    heap.push(left);
    heap.push(right);
  }

  // Re-sum to shed accumulated update rounding.
  double sum = 0.0, err = 0.0;
  const std::size_t n = heap.size();
  while (!heap.empty()) {
    sum += heap.top().value;
    err += heap.top().error;
    heap.pop();
  }
  return {sign * sum, err, evals, n};
}

Result integrate_upper(const Integrand& f, double a, const Options& opt) {
  auto g = [&](double u) {
    const double om = 1.0 - u;
    const double x = a + u / om;
    if (!std::isfinite(x)) return 0.0;
    const double v = f(x);
    return v == 0.0 ? 0.0 : v / (om * om);
  };
  return integrate(g, 0.0, 1.0, opt);
}

Result integrate_lower(const Integrand& f, double b, const Options& opt) {
  auto g = [&](double u) {
    const double om = 1.0 - u;
    const double x = b - u / om;
    if (!std::isfinite(x)) return 0.0;
    const double v = f(x);
    return v == 0.0 ? 0.0 : v / (om * om);
  };
  return integrate(g, 0.0, 1.0, opt);
}

Result integrate_any(const Integrand& f, double a, double b, const Options& opt) {
  if (a > b) {
    Result r = integrate_any(f, b, a, opt);
    r.value = -r.value;
    return r;
  }
  const bool lo_inf = std::isinf(a);
  const bool hi_inf = std::isinf(b);
  if (!lo_inf && !hi_inf) return integrate(f, a, b, opt);
  if (!lo_inf) return integrate_upper(f, a, opt);
  if (!hi_inf) return integrate_lower(f, b, opt);
  Result lo = integrate_lower(f, 0.0, opt);
  Result hi = integrate_upper(f, 0.0, opt);
  return {lo.value + hi.value, lo.error + hi.error, lo.evaluations + hi.evaluations,
          lo.intervals + hi.intervals};
}

}  // namespace eur::quad
