#include "eur/states.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <fstream>
#include <numbers>
#include <ostream>
#include <sstream>

#include "eur/errors.hpp"
#include "eur/quadrature.hpp"
#include "eur/special.hpp"

namespace eur {

namespace {

constexpr double kPi = std::numbers::pi;
using cd = std::complex<double>;

void require(bool ok, const char* msg) {
  if (!ok) throw DomainError(msg);
}

double normal_pdf(double x, double mu, double sigma) {
  const double z = (x - mu) / sigma;
  return std::exp(-0.5 * z * z) / (sigma * std::sqrt(2.0 * kPi));
}

// Mass of [a, b] under N(mu, sigma^2), taking the tail-accurate side.
double normal_mass(double a, double b, double mu, double sigma) {
  const double za = (a - mu) / sigma;
  const double zb = (b - mu) / sigma;
  if (za >= 0.0) return special::normal_sf(za) - special::normal_sf(zb);
  if (zb <= 0.0) return special::normal_cdf(zb) - special::normal_cdf(za);
  return 1.0 - special::normal_cdf(za) - special::normal_sf(zb);
}

Density normal_density(double sigma, double mu = 0.0) {
  Density::Parts p;
  p.pdf = [=](double x) { return normal_pdf(x, mu, sigma); };
  p.mass = [=](double a, double b) { return normal_mass(a, b, mu, sigma); };
  p.upper_tail = [=](double x) { return special::normal_sf((x - mu) / sigma); };
  p.lower_tail = [=](double x) { return special::normal_cdf((x - mu) / sigma); };
  p.scale = sigma;
  p.even = (mu == 0.0);
  return Density(std::move(p));
}

// The wave number 2 pi p / h.
double wave_number(double p, const UnitsSpec& u) { return 2.0 * kPi * p / u.h(); }

// Amplitude of a gaussian packet whose density has dispersion sigma.
double gaussian_amplitude(double x, double sigma) {
  return std::pow(2.0 * kPi * sigma * sigma, -0.25) * std::exp(-x * x / (4.0 * sigma * sigma));
}

// Closed-form momentum amplitude of the centred gaussian packet.
double gaussian_momentum_amplitude(double p, double sigma, const UnitsSpec& u) {
  const double k = wave_number(p, u);
  return std::pow(2.0 * kPi * sigma * sigma, -0.25) * 2.0 * sigma * std::sqrt(kPi) *
         std::exp(-k * k * sigma * sigma) / std::sqrt(u.h());
}

// Cumulative integral of the box momentum density from 0 to p (odd in p).
double box_momentum_cdf0(double p, double a, const UnitsSpec& u) {
  return special::sinc2_integral(wave_number(p, u) * a) / kPi;
}

// int_0^L (A + B y) exp(-i k y) dy, split as A*I0 + B*I1.
std::pair<cd, cd> segment_moments(double k, double L) {
  const double kl = k * L;
  if (std::abs(kl) < 0.5) {
    // Series in z = -i k L: I0 = L sum z^n/(n+1)!, I1 = L^2 sum z^n/((n+2) n!).
    const cd z(0.0, -kl);
    cd term(1.0, 0.0);  // z^n / n!
    cd s0(0.0, 0.0), s1(0.0, 0.0);
    for (int n = 0; n < 30; ++n) {
      s0 += term / static_cast<double>(n + 1);
      s1 += term / static_cast<double>(n + 2);
      term *= z / static_cast<double>(n + 1);
      if (std::abs(term) < 1e-18) break;
    }
    return {L * s0, L * L * s1};
  }
  const cd e = std::exp(cd(0.0, -kl));
  const cd I0 = (1.0 - e) / cd(0.0, k);
  const cd I1 = e * (cd(0.0, L / k) + 1.0 / (k * k)) - 1.0 / (k * k);
  return {I0, I1};
}

}  // namespace

struct StateModel::Table {
  std::vector<double> x;
  std::vector<double> amp;       // normalized amplitude at nodes
  std::vector<double> cum;       // cumulative position mass at nodes
  double raw_mass = 1.0;

  // Amplitude at x by linear interpolation; zero outside the table.
  double amplitude(double xv) const {
    if (xv < x.front() || xv > x.back()) return 0.0;
    auto it = std::upper_bound(x.begin(), x.end(), xv);
    std::size_t i = (it == x.begin()) ? 0 : static_cast<std::size_t>(it - x.begin()) - 1;
    if (i + 1 >= x.size()) i = x.size() - 2;
    const double L = x[i + 1] - x[i];
    const double w = (xv - x[i]) / L;
    return amp[i] * (1.0 - w) + amp[i + 1] * w;
  }

  // Position mass of (-inf, xv].
  double cdf(double xv) const {
    if (xv <= x.front()) return 0.0;
    if (xv >= x.back()) return 1.0;
    auto it = std::upper_bound(x.begin(), x.end(), xv);
    const std::size_t i = static_cast<std::size_t>(it - x.begin()) - 1;
    const double L = x[i + 1] - x[i];
    const double A = amp[i];
    const double B = (amp[i + 1] - amp[i]) / L;
    const double y = xv - x[i];
    return cum[i] + A * A * y + A * B * y * y + B * B * y * y * y / 3.0;
  }

  cd fourier(double k) const {
    cd sum(0.0, 0.0);
    for (std::size_t i = 0; i + 1 < x.size(); ++i) {
      const double L = x[i + 1] - x[i];
      const double A = amp[i];
      const double B = (amp[i + 1] - amp[i]) / L;
      if (A == 0.0 && B == 0.0) continue;
      const auto [I0, I1] = segment_moments(k, L);
      sum += std::exp(cd(0.0, -k * x[i])) * (A * I0 + B * I1);
    }
    return sum;
  }
};

std::string_view to_string(Family f) {
  switch (f) {
    case Family::gaussian: return "gaussian";
    case Family::box: return "box";
    case Family::two_gaussian: return "two-gaussian";
    case Family::sqrt_cauchy: return "sqrt-cauchy";
    case Family::tabulated: return "tabulated";
  }
  return "unknown";
}

Family parse_family(std::string_view name) {
  if (name == "gaussian") return Family::gaussian;
  if (name == "box") return Family::box;
  if (name == "two-gaussian") return Family::two_gaussian;
  if (name == "sqrt-cauchy") return Family::sqrt_cauchy;
  if (name == "tabulated") return Family::tabulated;
  throw DomainError("unknown state family: " + std::string(name));
}

std::vector<std::string> parameter_names(Family f) {
  switch (f) {
    case Family::gaussian: return {"sigma"};
    case Family::box: return {"a"};
    case Family::two_gaussian: return {"sigma", "separation", "weight"};
    case Family::sqrt_cauchy: return {"gamma"};
    case Family::tabulated: return {};
  }
  return {};
}

StateModel StateModel::gaussian(double sigma, const UnitsSpec& units) {
  require(sigma > 0.0 && std::isfinite(sigma), "gaussian: sigma must be positive");
  return StateModel(Family::gaussian, {sigma}, units);
}

StateModel StateModel::box(double half_width, const UnitsSpec& units) {
  require(half_width > 0.0 && std::isfinite(half_width), "box: half-width must be positive");
  return StateModel(Family::box, {half_width}, units);
}

StateModel StateModel::two_gaussian(double sigma, double separation, double weight,
                                    const UnitsSpec& units) {
  require(sigma > 0.0 && std::isfinite(sigma), "two-gaussian: sigma must be positive");
  require(separation >= 0.0 && std::isfinite(separation),
          "two-gaussian: separation must be non-negative");
  require(weight >= 0.0 && weight <= 1.0, "two-gaussian: weight must lie in [0, 1]");
  return StateModel(Family::two_gaussian, {sigma, separation, weight}, units);
}

StateModel StateModel::sqrt_cauchy(double gamma, const UnitsSpec& units) {
  require(gamma > 0.0 && std::isfinite(gamma), "sqrt-cauchy: gamma must be positive");
  return StateModel(Family::sqrt_cauchy, {gamma}, units);
}

StateModel StateModel::tabulated(std::vector<double> x, std::vector<double> density,
                                 const UnitsSpec& units) {
  if (x.size() != density.size() || x.size() < 2) {
    throw DomainError("tabulated: need at least two (x, density) samples");
  }
  for (std::size_t i = 0; i < x.size(); ++i) {
    if (!std::isfinite(x[i]) || !std::isfinite(density[i])) {
      throw DomainError("tabulated: non-finite sample at row " + std::to_string(i + 1));
    }
    if (density[i] < 0.0) {
      throw DomainError("tabulated: negative density at row " + std::to_string(i + 1));
    }
    if (i > 0 && !(x[i] > x[i - 1])) {
      throw DomainError("tabulated: coordinates must be strictly increasing");
    }
  }
  auto t = std::make_shared<Table>();
  t->x = std::move(x);
  t->amp.resize(density.size());
  std::transform(density.begin(), density.end(), t->amp.begin(),
                 [](double d) { return std::sqrt(d); });
  double total = 0.0;
  for (std::size_t i = 0; i + 1 < t->x.size(); ++i) {
    const double L = t->x[i + 1] - t->x[i];
    const double A = t->amp[i], C = t->amp[i + 1];
    total += L * (A * A + A * C + C * C) / 3.0;
  }
  if (!(total > 0.0)) throw DomainError("tabulated: density integrates to zero");
  const double scale = 1.0 / std::sqrt(total);
  for (double& a : t->amp) a *= scale;
  t->cum.assign(t->x.size(), 0.0);
  for (std::size_t i = 0; i + 1 < t->x.size(); ++i) {
    const double L = t->x[i + 1] - t->x[i];
    const double A = t->amp[i], C = t->amp[i + 1];
    t->cum[i + 1] = t->cum[i] + L * (A * A + A * C + C * C) / 3.0;
  }
  t->raw_mass = total;
  StateModel s(Family::tabulated, {}, units);
  s.table_ = std::move(t);
  return s;
}

double StateModel::raw_mass() const { return table_ ? table_->raw_mass : 1.0; }

StateModel make_state(Family f, std::span<const double> params, const UnitsSpec& units) {
  const auto need = parameter_names(f).size();
  if (f == Family::tabulated) throw DomainError("make_state: tabulated states come from data");
  if (params.size() != need) throw DomainError("make_state: wrong parameter count");
  switch (f) {
    case Family::gaussian: return StateModel::gaussian(params[0], units);
    case Family::box: return StateModel::box(params[0], units);
    case Family::two_gaussian:
      return StateModel::two_gaussian(params[0], params[1], params[2], units);
    case Family::sqrt_cauchy: return StateModel::sqrt_cauchy(params[0], units);
    case Family::tabulated: break;
  }
  throw DomainError("make_state: unsupported family");
}

namespace {

struct TwoGaussianShape {
  double sigma, d, wp, wm, norm2, overlap;
  explicit TwoGaussianShape(const std::vector<double>& p)
      : sigma(p[0]), d(p[1]), wp(std::sqrt(p[2])), wm(std::sqrt(1.0 - p[2])) {
    overlap = std::exp(-d * d / (8.0 * sigma * sigma));
    norm2 = 1.0 / (1.0 + 2.0 * wp * wm * overlap);
  }
};

}  // namespace

std::complex<double> StateModel::position_amplitude(double x) const {
  if (!std::isfinite(x)) throw DomainError("position_amplitude: non-finite coordinate");
  switch (family_) {
    case Family::gaussian: return gaussian_amplitude(x, params_[0]);
    case Family::box: {
      const double a = params_[0];
      return std::abs(x) <= a ? 1.0 / std::sqrt(2.0 * a) : 0.0;
    }
    case Family::two_gaussian: {
      const TwoGaussianShape s(params_);
      return std::sqrt(s.norm2) * (s.wp * gaussian_amplitude(x - 0.5 * s.d, s.sigma) +
                                   s.wm * gaussian_amplitude(x + 0.5 * s.d, s.sigma));
    }
    case Family::sqrt_cauchy: {
      const double g = params_[0];
      return std::sqrt(g / kPi) / std::sqrt(x * x + g * g);
    }
    case Family::tabulated: return table_->amplitude(x);
  }
  return 0.0;
}

std::complex<double> StateModel::momentum_amplitude(double p) const {
  if (!std::isfinite(p)) throw DomainError("momentum_amplitude: non-finite coordinate");
  const double k = wave_number(p, units_);
  const double rh = 1.0 / std::sqrt(units_.h());
  switch (family_) {
    case Family::gaussian: return gaussian_momentum_amplitude(p, params_[0], units_);
    case Family::box: {
      const double a = params_[0];
      const double u = k * a;
      const double sinc = std::abs(u) < 1e-8 ? 1.0 - u * u / 6.0 : std::sin(u) / u;
      return rh * std::sqrt(2.0 * a) * sinc;
    }
    case Family::two_gaussian: {
      const TwoGaussianShape s(params_);
      const double g = gaussian_momentum_amplitude(p, s.sigma, units_);
      const double th = 0.5 * k * s.d;
      return std::sqrt(s.norm2) * g *
             (s.wp * std::exp(cd(0.0, -th)) + s.wm * std::exp(cd(0.0, th)));
    }
    case Family::sqrt_cauchy: {
      const double g = params_[0];
      const double arg = std::abs(k) * g;
      if (arg == 0.0) return std::numeric_limits<double>::infinity();
      return rh * std::sqrt(g / kPi) * 2.0 * special::bessel_k0(arg);
    }
    case Family::tabulated: return rh * table_->fourier(k);
  }
  return 0.0;
}

double StateModel::momentum_sigma() const {
  if (family_ != Family::gaussian) throw DomainError("momentum_sigma: gaussian family only");
  return units_.h() / (4.0 * kPi * params_[0]);
}

std::vector<double> StateModel::position_breakpoints() const {
  switch (family_) {
    case Family::box: return {-params_[0], params_[0]};
    case Family::tabulated: return table_->x;
    default: return {};
  }
}

Density StateModel::position() const {
  switch (family_) {
    case Family::gaussian: return normal_density(params_[0]);
    case Family::box: {
      const double a = params_[0];
      Density::Parts p;
      p.pdf = [a](double x) { return std::abs(x) <= a ? 0.5 / a : 0.0; };
      p.mass = [a](double lo, double hi) {
        lo = std::clamp(lo, -a, a);
        hi = std::clamp(hi, -a, a);
        return hi > lo ? (hi - lo) / (2.0 * a) : 0.0;
      };
      p.scale = a;
      p.even = true;
      return Density(std::move(p));
    }
    case Family::two_gaussian: {
      const TwoGaussianShape s(params_);
      const double c_plus = s.norm2 * s.wp * s.wp;
      const double c_minus = s.norm2 * s.wm * s.wm;
      const double c_mid = 2.0 * s.norm2 * s.wp * s.wm * s.overlap;
      const double sg = s.sigma, h = 0.5 * s.d;
      Density::Parts p;
      p.pdf = [=](double x) {
        return c_plus * normal_pdf(x, h, sg) + c_minus * normal_pdf(x, -h, sg) +
               c_mid * normal_pdf(x, 0.0, sg);
      };
      p.mass = [=](double a, double b) {
        return c_plus * normal_mass(a, b, h, sg) + c_minus * normal_mass(a, b, -h, sg) +
               c_mid * normal_mass(a, b, 0.0, sg);
      };
      p.upper_tail = [=](double x) {
        return c_plus * special::normal_sf((x - h) / sg) +
               c_minus * special::normal_sf((x + h) / sg) + c_mid * special::normal_sf(x / sg);
      };
      p.lower_tail = [=](double x) {
        return c_plus * special::normal_cdf((x - h) / sg) +
               c_minus * special::normal_cdf((x + h) / sg) + c_mid * special::normal_cdf(x / sg);
      };
      p.scale = sg + h;
      p.even = (c_plus == c_minus);
      return Density(std::move(p));
    }
    case Family::sqrt_cauchy: {
      const double g = params_[0];
      auto upper = [g](double x) {
        return x > 0.0 ? std::atan(g / x) / kPi : 0.5 - std::atan(x / g) / kPi;
      };
      Density::Parts p;
      p.pdf = [g](double x) { return g / (kPi * (x * x + g * g)); };
      p.upper_tail = upper;
      p.lower_tail = [upper](double x) { return upper(-x); };
      p.mass = [upper](double a, double b) {
        if (a >= b) return 0.0;
        if (a >= 0.0) return upper(a) - upper(b);
        if (b <= 0.0) return upper(-b) - upper(-a);
        return 1.0 - upper(b) - upper(-a);
      };
      p.scale = g;
      p.even = true;
      return Density(std::move(p));
    }
    case Family::tabulated: {
      auto t = table_;
      Density::Parts p;
      p.pdf = [t](double x) {
        const double a = t->amplitude(x);
        return a * a;
      };
      p.mass = [t](double a, double b) { return a >= b ? 0.0 : t->cdf(b) - t->cdf(a); };
      p.upper_tail = [t](double x) { return 1.0 - t->cdf(x); };
      p.lower_tail = [t](double x) { return t->cdf(x); };
      p.scale = 0.5 * (t->x.back() - t->x.front());
      return Density(std::move(p));
    }
  }
  throw DomainError("position: unsupported family");
}

Density StateModel::momentum() const {
  const UnitsSpec u = units_;
  switch (family_) {
    case Family::gaussian: return normal_density(momentum_sigma());
    case Family::box: {
      const double a = params_[0];
      auto F = [a, u](double p) { return box_momentum_cdf0(p, a, u); };
      Density::Parts p;
      p.pdf = [a, u](double pv) {
        const double uu = wave_number(pv, u) * a;
        const double sinc = std::abs(uu) < 1e-8 ? 1.0 : std::sin(uu) / uu;
        return 2.0 * a / u.h() * sinc * sinc;
      };
      p.mass = [F](double lo, double hi) {
        if (lo >= hi) return 0.0;
        const double flo = std::isinf(lo) ? -0.5 : F(lo);
        const double fhi = std::isinf(hi) ? 0.5 : F(hi);
        return fhi - flo;
      };
      p.upper_tail = [F](double x) { return std::isinf(x) ? (x > 0 ? 0.0 : 1.0) : 0.5 - F(x); };
      p.lower_tail = [F](double x) { return std::isinf(x) ? (x > 0 ? 1.0 : 0.0) : 0.5 + F(x); };
      p.scale = u.h() / (2.0 * a);
      p.even = true;
      return Density(std::move(p));
    }
    case Family::two_gaussian: {
      const StateModel self = *this;
      Density::Parts p;
      p.pdf = [self](double pv) { return std::norm(self.momentum_amplitude(pv)); };
      p.scale = u.h() / (4.0 * kPi * params_[0]);
      p.even = true;
      return Density(std::move(p));
    }
    case Family::sqrt_cauchy: {
      const double g = params_[0];
      auto pdf = [g, u](double pv) {
        const double arg = std::abs(wave_number(pv, u)) * g;
        if (arg == 0.0) return std::numeric_limits<double>::infinity();
        const double k0 = special::bessel_k0(arg);
        return 4.0 * g / (kPi * u.h()) * k0 * k0;
      };
      // The density has a logarithmic singularity at p = 0; split there.
      auto upper = [pdf](double x) {
        quad::Options o;
        if (x >= 0.0) return quad::integrate_upper(pdf, x, o).value;
        return 0.5 + quad::integrate(pdf, x, 0.0, o).value;
      };
      Density::Parts p;
      p.pdf = pdf;
      p.upper_tail = upper;
      p.lower_tail = [upper](double x) { return upper(-x); };
      p.mass = [pdf, upper](double a, double b) {
        if (a >= b) return 0.0;
        if (std::isinf(b)) return upper(a);
        if (std::isinf(a)) return upper(-b);
        quad::Options o;
        if (a < 0.0 && b > 0.0) {
          return quad::integrate(pdf, a, 0.0, o).value + quad::integrate(pdf, 0.0, b, o).value;
        }
        return quad::integrate(pdf, a, b, o).value;
      };
      p.scale = u.h() / (2.0 * kPi * g);
      p.even = true;
      return Density(std::move(p));
    }
    case Family::tabulated: {
      const StateModel self = *this;
      auto pdf = [self](double pv) { return std::norm(self.momentum_amplitude(pv)); };
      const double scale = u.h() / (table_->x.back() - table_->x.front());
      quad::Options o;
      o.max_intervals = 20000;
      // Plancherel fixes the total momentum mass at exactly one.
      auto upper = [pdf, o](double x) {
        if (std::isinf(x)) return x > 0 ? 0.0 : 1.0;
        const double ax = std::abs(x);
        const double outside = 1.0 - quad::integrate(pdf, -ax, ax, o).value;
        const double half = 0.5 * std::max(outside, 0.0);
        return x >= 0.0 ? half : 1.0 - half;
      };
      Density::Parts p;
      p.pdf = pdf;
      p.upper_tail = upper;
      p.lower_tail = [upper](double x) { return upper(-x); };
      p.mass = [pdf, upper, o](double a, double b) {
        if (a >= b) return 0.0;
        if (std::isinf(b)) return upper(a);
        if (std::isinf(a)) return upper(-b);
        return quad::integrate(pdf, a, b, o).value;
      };
      p.scale = scale;
      p.even = true;
      return Density(std::move(p));
    }
  }
  throw DomainError("momentum: unsupported family");
}

double position_density(const StateModel& state, double x) {
  if (!std::isfinite(x)) throw DomainError("position_density: non-finite coordinate");
  return state.position().pdf(x);
}

double momentum_density(const StateModel& state, double p) {
  if (!std::isfinite(p)) throw DomainError("momentum_density: non-finite coordinate");
  return std::norm(state.momentum_amplitude(p));
}

double momentum_norm(const StateModel& state) {
  const UnitsSpec& u = state.units();
  const std::vector<double> par = state.parameters();
  double P = 0.0, tail = 0.0;
  std::size_t pieces = 400;
  switch (state.family()) {
    case Family::gaussian:
    case Family::two_gaussian:
      P = 40.0 * u.h() / (4.0 * kPi * par[0]);
      break;
    case Family::sqrt_cauchy:
      P = 40.0 * u.h() / (2.0 * kPi * par[0]);
      break;
    case Family::box: {
      // Core up to the N-th zero of the sinc; beyond it
      // int_X^inf sin^2 u / u^2 du = 1/(2X) - 1/(4X^3) + O(X^-5).
      const std::size_t N = 2000;
      P = static_cast<double>(N) * u.h() / (2.0 * par[0]);
      const double X = static_cast<double>(N) * kPi;
      tail = 2.0 / kPi * (0.5 / X - 0.25 / (X * X * X));
      pieces = 2 * N;
      break;
    }
    case Family::tabulated:
      throw DomainError("momentum_norm: no tail model for tabulated states");
  }
  quad::Options o;
  o.abs_tol = 1e-15;
  o.rel_tol = 1e-13;
  auto f = [&state](double p) { return std::norm(state.momentum_amplitude(p)); };
  double sum = 0.0, comp = 0.0;
  const double step = 2.0 * P / static_cast<double>(pieces);
  for (std::size_t i = 0; i < pieces; ++i) {
    const double a = -P + step * static_cast<double>(i);
    const double v = quad::integrate(f, a, a + step, o).value;
    const double y = sum + v;
    comp += std::abs(sum) >= std::abs(v) ? (sum - y) + v : (v - y) + sum;
    sum = y;
  }
  return sum + comp + tail;
}

double SampledAmplitude::norm() const {
  if (values.size() < 2) return 0.0;
  double s = 0.5 * (std::norm(values.front()) + std::norm(values.back()));
  for (std::size_t i = 1; i + 1 < values.size(); ++i) s += std::norm(values[i]);
  return s * spacing;
}

double position_window(const StateModel& state, const FourierOptions& opt) {
  const Density rho = state.position();
  const double limit = opt.max_window * rho.scale();
  double x = rho.scale();
  while (rho.outside(x) >= opt.tail_budget) {
    x *= 2.0;
    if (x > limit) {
      std::ostringstream msg;
      msg << "truncation budget exceeded: position mass outside [-" << limit << ", " << limit
          << "] is " << rho.outside(limit) << " > " << opt.tail_budget;
      throw TruncationBudgetExceeded(msg.str());
    }
  }
  // Tighten by bisection on [x/2, x].
  double lo = x / 2.0, hi = x;
  for (int i = 0; i < 40; ++i) {
    const double mid = 0.5 * (lo + hi);
    (rho.outside(mid) < opt.tail_budget ? hi : lo) = mid;
  }
  return hi;
}

SampledAmplitude fourier_transform(const StateModel& state, const MomentumGrid& request,
                                   const FourierOptions& opt) {
  if (request.count < 2) throw DomainError("fourier_transform: need at least two grid points");
  if (!std::isfinite(request.p_min) || !std::isfinite(request.p_max) ||
      !(request.p_max > request.p_min)) {
    throw DomainError("fourier_transform: invalid momentum grid");
  }
  const double X = position_window(state, opt);

  std::vector<double> edges{-X};
  for (double b : state.position_breakpoints()) {
    if (b > -X && b < X) edges.push_back(b);
  }
  edges.push_back(X);
  std::sort(edges.begin(), edges.end());
  edges.erase(std::unique(edges.begin(), edges.end()), edges.end());

  SampledAmplitude out;
  out.spacing = (request.p_max - request.p_min) / static_cast<double>(request.count - 1);
  out.grid.resize(request.count);
  out.values.resize(request.count);
  const double rh = 1.0 / std::sqrt(state.units().h());
  quad::Options qo;
  qo.abs_tol = opt.abs_tol;
  qo.max_intervals = 20000;
  for (std::size_t j = 0; j < request.count; ++j) {
    const double p = request.p_min + out.spacing * static_cast<double>(j);
    const double k = wave_number(p, state.units());
    double re = 0.0, im = 0.0;
    for (std::size_t s = 0; s + 1 < edges.size(); ++s) {
      re += quad::integrate(
                [&](double x) {
                  const cd a = state.position_amplitude(x);
                  return a.real() * std::cos(k * x) + a.imag() * std::sin(k * x);
                },
                edges[s], edges[s + 1], qo)
                .value;
      im += quad::integrate(
                [&](double x) {
                  const cd a = state.position_amplitude(x);
                  return a.imag() * std::cos(k * x) - a.real() * std::sin(k * x);
                },
                edges[s], edges[s + 1], qo)
                .value;
    }
    out.grid[j] = p;
    out.values[j] = rh * cd(re, im);
  }
  return out;
}

StateModel parse_tabulated_csv(std::istream& in, const UnitsSpec& units, std::ostream* warn) {
  std::string line;
  if (!std::getline(in, line)) throw ParseError("tabulated CSV: empty input");
  std::vector<double> xs, ds;
  std::size_t row = 1;
  while (std::getline(in, line)) {
    ++row;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.find_first_not_of(" \t") == std::string::npos) continue;
    std::istringstream ls(line);
    std::string a, b;
    if (!std::getline(ls, a, ',') || !std::getline(ls, b)) {
      throw ParseError("tabulated CSV: expected two columns at line " + std::to_string(row));
    }
    try {
      std::size_t used = 0;
      xs.push_back(std::stod(a, &used));
      ds.push_back(std::stod(b, &used));
    } catch (const std::exception&) {
      throw ParseError("tabulated CSV: unparsable number at line " + std::to_string(row));
    }
  }
  StateModel s = StateModel::tabulated(std::move(xs), std::move(ds), units);
  if (warn != nullptr && std::abs(1.0 - s.raw_mass()) > 1e-6) {
    *warn << "warning: tabulated density integrates to " << s.raw_mass()
          << "; renormalized to 1\n";
  }
  return s;
}

StateModel load_tabulated_csv(const std::string& path, const UnitsSpec& units,
                              std::ostream* warn) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open " + path);
  return parse_tabulated_csv(in, units, warn);
}

}  // namespace eur
