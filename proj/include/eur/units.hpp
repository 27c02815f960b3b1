#pragma once

#include <cmath>

namespace eur {

/// Planck constant and the position/momentum scales of the compactifying map.
/// The scales always satisfy sx * sp == h.
class UnitsSpec {
 public:
  /// Natural units: h = 1, sx = sp = 1.
  UnitsSpec() = default;

  /// Symmetric split sx = sp = sqrt(h).
  static UnitsSpec natural(double h = 1.0);
  /// Explicit split; throws DomainError unless sx * sp == h to rounding.
  static UnitsSpec with_scales(double h, double sx, double sp);
  /// Fix sx and derive sp = h / sx.
  static UnitsSpec with_position_scale(double h, double sx);

  double h() const { return h_; }
  double sx() const { return sx_; }
  double sp() const { return sp_; }

  /// Dimensionless phase-space cell dx*dp/h.
  double cell(double dx, double dp) const { return dx * dp / h_; }

 private:
  UnitsSpec(double h, double sx, double sp) : h_(h), sx_(sx), sp_(sp) {}

  double h_ = 1.0;
  double sx_ = 1.0;
  double sp_ = 1.0;
};

/// A point of the compactified line, strictly inside (-1, 1).
class TCoordinate {
 public:
  explicit TCoordinate(double value);
  double value() const { return value_; }

 private:
  double value_;
};

/// Width of an r-space interval that may extend to infinity.
class RWidth {
 public:
  static RWidth finite(double w) { return RWidth(w); }
  static RWidth unbounded() { return RWidth(INFINITY); }

  bool is_unbounded() const { return std::isinf(value_); }
  /// +infinity when unbounded.
  double value() const { return value_; }

 private:
  explicit RWidth(double v) : value_(v) {}
  double value_;
};

/// t = r / (|r| + s). Odd, strictly increasing, onto (-1, 1).
TCoordinate map_to_t(double r, double s);

/// Inverse of map_to_t: r = s t / (1 - |t|).
double map_from_t(TCoordinate t, double s);
double map_from_t(double t, double s);

/// r-space width of the t-bin [k dt, (k+1) dt]. Unbounded for the outermost
/// bins touching t = +-1.
RWidth delta_r_of_bin(long k, double delta_t, double s);

/// t-space width of the r-bin [k dr, (k+1) dr].
double delta_t_of_bin(long k, double delta_r, double s);

/// Product of the widest t-bins (k = 0) for the given r-bin sizes:
/// [dx/(sx+dx)] * [dp/(sp+dp)].
double max_t_cell(double delta_x, double delta_p, const UnitsSpec& units);

/// Majorant of max_t_cell used by the saturating bounds: cell / (1 + cell).
inline double effective_t_cell(double cell) { return cell / (1.0 + cell); }

}  // namespace eur
