#pragma once

#include <cstddef>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "eur/bounds.hpp"
#include "eur/states.hpp"

namespace eur {

/// One axis of a parameter grid; `points` values from lo to hi inclusive.
struct ParamAxis {
  double lo = 1.0;
  double hi = 1.0;
  std::size_t points = 1;
  bool log = false;

  std::vector<double> values() const;
};

struct GapPoint {
  std::vector<double> params;
  double entropy_sum = 0.0;
  double bound = 0.0;
  double gap = 0.0;
  bool failed = false;
  std::string error;
};

struct GapSurface {
  Family family = Family::gaussian;
  BoundKind kind = BoundKind::shannon_bbm;
  std::vector<ParamAxis> axes;
  std::vector<GapPoint> points;  // row-major, last axis fastest
  std::optional<std::size_t> argmin;

  std::size_t failures() const;
  /// Points whose gap is below -1e-9.
  std::size_t violations() const;
  /// Header: the family's parameter names, then entropy_sum,bound,gap,status.
  void write_csv(std::ostream& out) const;
};

struct SearchOptions {
  UnitsSpec units{};
  ReportOptions report{};
  std::size_t max_points = 100000;
  /// Worker threads for grid scans; 0 picks the hardware concurrency.
  unsigned threads = 0;
};

/// Evaluates the gap at every grid point. Points that fail numerically are
/// recorded as failed.
GapSurface scan_gap(Family family, const std::vector<ParamAxis>& axes, const IndexPair& pair,
                    double dx, double dp, BoundKind kind, const SearchOptions& opt = {});

struct MinimizeOptions {
  UnitsSpec units{};
  ReportOptions report{};
  double initial_step = 0.25;  // simplex edge in transformed coordinates
  double x_tol = 1e-8;
  double f_tol = 1e-12;
};

struct MinimizeResult {
  std::vector<double> params;
  double gap = 0.0;
  double entropy_sum = 0.0;
  double bound = 0.0;
  std::size_t evaluations = 0;
  bool converged = false;
};

/// Nelder-Mead (coefficients 1, 2, 0.5, 0.5) over log-transformed positive
/// parameters and the logit of a mixture weight. Never uses more than
/// `budget` evaluations. Throws InequalityViolation when any evaluation gives
/// a gap below -1e-6, or the returned gap is below -1e-9.
MinimizeResult minimize_gap(Family family, const std::vector<double>& initial,
                            const IndexPair& pair, double dx, double dp, BoundKind kind,
                            std::size_t budget, const MinimizeOptions& opt = {});

}  // namespace eur
