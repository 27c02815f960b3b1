#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include "eur/diagnostics.hpp"
#include "eur/entropy.hpp"
#include "eur/units.hpp"

namespace eur {

/// n log-spaced points from lo to hi inclusive (n >= 2).
std::vector<double> log_grid(double lo, double hi, std::size_t n);
/// n evenly spaced points from lo to hi inclusive (n >= 2).
std::vector<double> linear_grid(double lo, double hi, std::size_t n);

struct Fig1Row {
  double cell, shannon_bbm, renyi_bound, tsallis_orig, asymptote_plus, asymptote_minus;
};
struct Fig3Row {
  double cell, shannon_sat, renyi_overlay, tsallis_sat, asymptote_high, asymptote_low;
};

/// Original bounds against the cell; alpha > 1.
std::vector<Fig1Row> figure1(double alpha, std::span<const double> cells);
/// Saturating bounds against the cell; the Renyi overlay is the Renyi bound
/// on the effective t-cell.
std::vector<Fig3Row> figure3(double alpha, std::span<const double> cells);
/// Jensen ratios for the momentum density of the unit-width gaussian pure
/// state, over widths delta_p (bin 0).
std::vector<Fig2Row> figure2(double alpha, std::span<const double> delta_p,
                             const UnitsSpec& units = {});

double max_overlay_difference(const std::vector<Fig1Row>& rows);
double max_overlay_difference(const std::vector<Fig3Row>& rows);

extern const std::vector<std::string> kFig1Columns;
extern const std::vector<std::string> kFig2Columns;
extern const std::vector<std::string> kFig3Columns;

/// Shannon entropies of a gaussian binned with dx = sqrt(2) sx and
/// dp = sqrt(2) sp (cell 2), under one reading of the example's states.
struct Footnote3Reading {
  std::string name;
  std::string description;
  double entropy_x = 0.0;
  double entropy_p = 0.0;
  double sum = 0.0;
};

struct Footnote3 {
  double cell = 2.0;
  double shannon_bbm = 0.0;
  double shannon_sat = 0.0;
  double reference_sum = 1.76;
  Footnote3Reading pure_state;     // sigma_x = 1, momentum density fixed by the transform
  Footnote3Reading unit_density;   // unit-dispersion gaussian densities in both spaces
};

Footnote3 footnote3(const UnitsSpec& units = {});

}  // namespace eur
