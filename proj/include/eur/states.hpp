#pragma once

#include <complex>
#include <cstddef>
#include <iosfwd>
#include <memory>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "eur/density.hpp"
#include "eur/units.hpp"

namespace eur {

enum class Family { gaussian, box, two_gaussian, sqrt_cauchy, tabulated };

std::string_view to_string(Family f);
/// Accepts "gaussian", "box", "two-gaussian", "sqrt-cauchy", "tabulated".
Family parse_family(std::string_view name);

/// Names of the continuous parameters of a family, in the order used by
/// make_state and StateModel::parameters. Empty for tabulated states.
std::vector<std::string> parameter_names(Family f);

/// A one-dimensional pure state with a real position amplitude.
///
/// Families and their parameters:
///  - gaussian(sigma): position density N(0, sigma^2)
///  - box(a): amplitude uniform on [-a, a]
///  - two_gaussian(sigma, separation, weight): superposition of gaussian
///    packets centred at +separation/2 (weight) and -separation/2 (1-weight)
///  - sqrt_cauchy(gamma): amplitude sqrt of a Cauchy density
///  - tabulated: piecewise-linear amplitude through sqrt of sampled densities
///
/// Momentum amplitudes use psi~(p) = h^{-1/2} int exp(-2 pi i p x / h) psi(x) dx.
class StateModel {
 public:
  static StateModel gaussian(double sigma, const UnitsSpec& units = {});
  static StateModel box(double half_width, const UnitsSpec& units = {});
  static StateModel two_gaussian(double sigma, double separation, double weight,
                                 const UnitsSpec& units = {});
  static StateModel sqrt_cauchy(double gamma, const UnitsSpec& units = {});
  /// Samples must be strictly increasing in x with non-negative densities.
  /// The amplitude is renormalized; `raw_mass` reports the mass before that.
  static StateModel tabulated(std::vector<double> x, std::vector<double> density,
                              const UnitsSpec& units = {});

  Family family() const { return family_; }
  const UnitsSpec& units() const { return units_; }
  std::vector<double> parameters() const { return params_; }
  /// Mass of the tabulated input before renormalization (1 for analytic families).
  double raw_mass() const;

  std::complex<double> position_amplitude(double x) const;
  /// Closed form for every family (the tabulated one is exact for its
  /// piecewise-linear interpolant).
  std::complex<double> momentum_amplitude(double p) const;

  Density position() const;
  Density momentum() const;

  /// Points where the position amplitude is not smooth (box edges, table nodes).
  std::vector<double> position_breakpoints() const;
  /// Gaussian-family only: standard deviation of the momentum density.
  double momentum_sigma() const;

  struct Table;

 private:
  StateModel(Family f, std::vector<double> params, const UnitsSpec& units)
      : family_(f), params_(std::move(params)), units_(units) {}

  Family family_;
  std::vector<double> params_;
  UnitsSpec units_;
  std::shared_ptr<const Table> table_;
};

/// Builds a state of an analytic family from its parameter vector.
StateModel make_state(Family f, std::span<const double> params, const UnitsSpec& units = {});

/// Reads a two-column CSV (coordinate, density) with a header row. Densities
/// are renormalized; a warning goes to `warn` when the deficit exceeds 1e-6.
StateModel load_tabulated_csv(const std::string& path, const UnitsSpec& units = {},
                              std::ostream* warn = nullptr);
StateModel parse_tabulated_csv(std::istream& in, const UnitsSpec& units = {},
                               std::ostream* warn = nullptr);

double position_density(const StateModel& state, double x);
double momentum_density(const StateModel& state, double p);

/// Numerical integral of |momentum amplitude|^2 over the real line, for
/// Parseval checks. The box family's slowly decaying tail beyond the
/// integrated core is added from its asymptotic expansion; the other
/// analytic families decay fast enough for the tail to be dropped.
/// Tabulated states are rejected.
double momentum_norm(const StateModel& state);

/// Uniformly sampled complex amplitude.
struct SampledAmplitude {
  std::vector<double> grid;
  std::vector<std::complex<double>> values;
  double spacing = 0.0;

  /// Trapezoidal sum of |values|^2 * spacing.
  double norm() const;
};

struct MomentumGrid {
  double p_min = -1.0;
  double p_max = 1.0;
  std::size_t count = 201;
};

struct FourierOptions {
  double tail_budget = 1e-22;  // position mass allowed outside the window (the amplitude
                               // truncation error scales roughly like its square root)
  double max_window = 1e6;     // in units of the position scale
  double abs_tol = 1e-11;
};

/// Direct numerical evaluation of the momentum amplitude on a grid by
/// composite adaptive quadrature over a symmetric position window.
/// Throws TruncationBudgetExceeded when no admissible window exists.
SampledAmplitude fourier_transform(const StateModel& state, const MomentumGrid& request,
                                   const FourierOptions& opt = {});

/// Smallest symmetric window [-X, X] with position mass outside below budget.
double position_window(const StateModel& state, const FourierOptions& opt = {});

}  // namespace eur
