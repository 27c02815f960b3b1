#pragma once

#include <functional>

#include "eur/quadrature.hpp"

namespace eur {

/// A normalized probability density on the real line, held by value.
///
/// Only the pointwise density is mandatory. Families that know their
/// interval masses or tails in closed form supply them; everything missing
/// falls back to adaptive quadrature of the pointwise density.
class Density {
 public:
  using PointFn = std::function<double(double)>;
  using MassFn = std::function<double(double, double)>;

  struct Parts {
    PointFn pdf;
    MassFn mass;         // mass of [a, b]; ends may be infinite
    PointFn upper_tail;  // mass of (x, +inf)
    PointFn lower_tail;  // mass of (-inf, x)
    double scale = 1.0;  // characteristic width, used to seed window searches
    bool even = false;
  };

  explicit Density(Parts parts);
  static Density from_pdf(PointFn pdf, double scale, bool even = false);

  double pdf(double x) const { return parts_.pdf(x); }
  double operator()(double x) const { return parts_.pdf(x); }

  double mass(double a, double b) const;
  double upper_tail(double x) const;
  double lower_tail(double x) const;
  /// Mass outside [-x, x].
  double outside(double x) const { return upper_tail(x) + lower_tail(-x); }

  double scale() const { return parts_.scale; }
  bool even() const { return parts_.even; }

  const quad::Options& quadrature() const { return quad_; }
  Density& with_quadrature(const quad::Options& opt) {
    quad_ = opt;
    return *this;
  }

 private:
  Parts parts_;
  quad::Options quad_{};
};

}  // namespace eur
