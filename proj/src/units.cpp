#include "eur/units.hpp"

#include <cstdlib>
#include <limits>
#include <string>

#include "eur/errors.hpp"

namespace eur {

namespace {

void require_positive(double v, const char* what) {
  if (!(v > 0.0) || !std::isfinite(v)) {
    throw DomainError(std::string(what) + " must be positive and finite");
  }
}

}  // namespace

UnitsSpec UnitsSpec::natural(double h) {
  require_positive(h, "h");
  const double s = std::sqrt(h);
  return UnitsSpec(h, s, h / s);
}

UnitsSpec UnitsSpec::with_scales(double h, double sx, double sp) {
  require_positive(h, "h");
  require_positive(sx, "sx");
  require_positive(sp, "sp");
  if (std::abs(sx * sp - h) > 4.0 * std::numeric_limits<double>::epsilon() * h) {
    throw DomainError("scales must satisfy sx * sp == h");
  }
  return UnitsSpec(h, sx, sp);
}

UnitsSpec UnitsSpec::with_position_scale(double h, double sx) {
  require_positive(h, "h");
  require_positive(sx, "sx");
  return UnitsSpec(h, sx, h / sx);
}

TCoordinate::TCoordinate(double value) : value_(value) {
  if (!(std::abs(value) < 1.0)) {
    throw DomainError("t coordinate must lie in the open interval (-1, 1)");
  }
}

TCoordinate map_to_t(double r, double s) {
  if (!std::isfinite(r)) throw DomainError("map_to_t: coordinate must be finite");
  require_positive(s, "scale");
  return TCoordinate(r / (std::abs(r) + s));
}

double map_from_t(TCoordinate t, double s) {
  require_positive(s, "scale");
  const double v = t.value();
  return s * v / (1.0 - std::abs(v));
}

double map_from_t(double t, double s) {
  if (!(std::abs(t) < 1.0)) {
    throw DomainError("map_from_t: |t| >= 1 maps to infinity");
  }
  return map_from_t(TCoordinate(t), s);
}

RWidth delta_r_of_bin(long k, double delta_t, double s) {
  require_positive(s, "scale");
  if (!(delta_t > 0.0) || delta_t > 1.0) {
    throw DomainError("delta_r_of_bin: delta_t must lie in (0, 1]");
  }
  const double a = static_cast<double>(std::labs(k)) * delta_t;
  const double b = static_cast<double>(std::labs(k + 1)) * delta_t;
  constexpr double slack = 1e-12;
  if (a > 1.0 + slack || b > 1.0 + slack) {
    throw DomainError("delta_r_of_bin: bin lies outside (-1, 1)");
  }
  if (std::abs(1.0 - a) <= slack || std::abs(1.0 - b) <= slack) {
    return RWidth::unbounded();
  }
  return RWidth::finite(s * delta_t / ((1.0 - a) * (1.0 - b)));
}

double delta_t_of_bin(long k, double delta_r, double s) {
  require_positive(delta_r, "delta_r");
  require_positive(s, "scale");
  const double a = static_cast<double>(std::labs(k)) * delta_r;
  const double b = static_cast<double>(std::labs(k + 1)) * delta_r;
  return s * delta_r / ((s + a) * (s + b));
}

double max_t_cell(double delta_x, double delta_p, const UnitsSpec& units) {
  if (!(delta_x >= 0.0) || !(delta_p >= 0.0)) {
    throw DomainError("max_t_cell: widths must be non-negative");
  }
  return (delta_x / (units.sx() + delta_x)) * (delta_p / (units.sp() + delta_p));
}

}  // namespace eur
