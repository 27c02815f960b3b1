#include "eur/figures.hpp"

#include <algorithm>
#include <cmath>

#include "eur/bounds.hpp"
#include "eur/errors.hpp"
#include "eur/states.hpp"

namespace eur {

std::vector<double> log_grid(double lo, double hi, std::size_t n) {
  if (n < 2) throw DomainError("log_grid: resolution must be at least 2");
  if (!(lo > 0.0) || !(hi > lo)) throw DomainError("log_grid: need 0 < lo < hi");
  std::vector<double> v(n);
  const double step = std::log(hi / lo) / static_cast<double>(n - 1);
  for (std::size_t i = 0; i < n; ++i) v[i] = lo * std::exp(step * static_cast<double>(i));
  v.back() = hi;
  return v;
}

std::vector<double> linear_grid(double lo, double hi, std::size_t n) {
  if (n < 2) throw DomainError("linear_grid: resolution must be at least 2");
  if (!(hi > lo)) throw DomainError("linear_grid: need lo < hi");
  std::vector<double> v(n);
  for (std::size_t i = 0; i < n; ++i) {
    v[i] = lo + (hi - lo) * static_cast<double>(i) / static_cast<double>(n - 1);
  }
  v.back() = hi;
  return v;
}

const std::vector<std::string> kFig1Columns = {"cell",           "shannon_bbm",
                                               "renyi_bound",    "tsallis_orig",
                                               "asymptote_plus", "asymptote_minus"};
const std::vector<std::string> kFig2Columns = {"delta_p", "ratio_r", "ratio_t"};
const std::vector<std::string> kFig3Columns = {"cell",           "shannon_sat",
                                               "renyi_overlay",  "tsallis_sat",
                                               "asymptote_high", "asymptote_low"};

std::vector<Fig1Row> figure1(double alpha, std::span<const double> cells) {
  if (!(alpha > 1.0)) throw DomainError("figure1: alpha must exceed 1");
  const IndexPair pair = conjugate_index(alpha);
  std::vector<Fig1Row> rows;
  for (double c : cells) {
    rows.push_back({c, shannon_bbm(c), renyi_bound(pair, c),
                    evaluate_bound(BoundKind::tsallis_orig, pair, c).bound_value,
                    1.0 / (alpha - 1.0), 1.0 / (1.0 - alpha)});
  }
  return rows;
}

std::vector<Fig3Row> figure3(double alpha, std::span<const double> cells) {
  if (!(alpha > 1.0)) throw DomainError("figure3: alpha must exceed 1");
  const IndexPair pair = conjugate_index(alpha);
  const double low = tsallis_saturating_limit(pair);
  std::vector<Fig3Row> rows;
  for (double c : cells) {
    rows.push_back({c, shannon_saturating(c), renyi_bound(pair, effective_t_cell(c)),
                    tsallis_bound_saturating(pair, c), 1.0 / (alpha - 1.0), low});
  }
  return rows;
}

std::vector<Fig2Row> figure2(double alpha, std::span<const double> delta_p,
                             const UnitsSpec& units) {
  const StateModel state = StateModel::gaussian(units.sx(), units);
  return jensen_sweep(state.momentum(), units.sp(), alpha, delta_p);
}

double max_overlay_difference(const std::vector<Fig1Row>& rows) {
  double m = 0.0;
  for (const Fig1Row& r : rows) m = std::max(m, std::abs(r.renyi_bound - r.shannon_bbm));
  return m;
}

double max_overlay_difference(const std::vector<Fig3Row>& rows) {
  double m = 0.0;
  for (const Fig3Row& r : rows) m = std::max(m, std::abs(r.renyi_overlay - r.shannon_sat));
  return m;
}

Footnote3 footnote3(const UnitsSpec& units) {
  Footnote3 f;
  const double dx = std::sqrt(2.0) * units.sx();
  const double dp = std::sqrt(2.0) * units.sp();
  f.cell = units.cell(dx, dp);
  f.shannon_bbm = shannon_bbm(f.cell);
  f.shannon_sat = shannon_saturating(f.cell);

  const StateModel state = StateModel::gaussian(units.sx(), units);
  const BoundReport r = assemble_report(state, IndexPair(1.0, 1.0), dx, dp, BoundKind::shannon_sat);
  f.pure_state = {"pure-state",
                  "gaussian pure state with sigma_x = s_x; momentum density from the Fourier transform",
                  *r.entropy_x, *r.entropy_p, *r.entropy_sum};

  const Density unit_x = StateModel::gaussian(units.sx(), units).position();
  const Density unit_p = StateModel::gaussian(units.sp(), units).position();
  const double hx = shannon(bin_r(unit_x, BinSpec::r_space(dx))).value;
  const double hp = shannon(bin_r(unit_p, BinSpec::r_space(dp))).value;
  f.unit_density = {"unit-density",
                    "independent gaussian densities with dispersion s_x and s_p", hx, hp, hx + hp};
  return f;
}

}  // namespace eur
