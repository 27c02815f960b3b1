#include "eur/density.hpp"

#include <cmath>
#include <utility>

#include "eur/errors.hpp"

namespace eur {

Density::Density(Parts parts) : parts_(std::move(parts)) {
  if (!parts_.pdf) throw DomainError("Density: a pointwise density is required");
  if (!(parts_.scale > 0.0)) throw DomainError("Density: scale must be positive");
}

Density Density::from_pdf(PointFn pdf, double scale, bool even) {
  Parts p;
  p.pdf = std::move(pdf);
  p.scale = scale;
  p.even = even;
  return Density(std::move(p));
}

double Density::mass(double a, double b) const {
  if (std::isnan(a) || std::isnan(b)) throw DomainError("Density::mass: NaN limit");
  if (a >= b) return 0.0;
  if (parts_.mass) return parts_.mass(a, b);
  if (std::isinf(b) && b > 0) {
    if (std::isinf(a)) return 1.0;
    return upper_tail(a);
  }
  if (std::isinf(a) && a < 0) return lower_tail(b);
  return quad::integrate(parts_.pdf, a, b, quad_).value;
}

double Density::upper_tail(double x) const {
  if (parts_.upper_tail) return parts_.upper_tail(x);
  if (parts_.mass) return parts_.mass(x, INFINITY);
  if (parts_.even && parts_.lower_tail) return parts_.lower_tail(-x);
  return quad::integrate_upper(parts_.pdf, x, quad_).value;
}

double Density::lower_tail(double x) const {
  if (parts_.lower_tail) return parts_.lower_tail(x);
  if (parts_.mass) return parts_.mass(-INFINITY, x);
  if (parts_.even && parts_.upper_tail) return parts_.upper_tail(-x);
  return quad::integrate_lower(parts_.pdf, x, quad_).value;
}

}  // namespace eur
