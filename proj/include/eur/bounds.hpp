#pragma once

#include <optional>
#include <span>
#include <string_view>

#include "eur/entropy.hpp"
#include "eur/states.hpp"

namespace eur {

enum class BoundKind {
  shannon_bbm,     // -ln(2 cell / e)
  shannon_sat,     // -ln((2/e) cell / (1 + cell))
  renyi,           // Renyi-entropy bound
  tsallis_orig,    // Tsallis bound on the raw cell, both eta regimes
  tsallis_sat,     // always-positive Tsallis bound on cell / (1 + cell)
  shannon_bits_t,  // Shannon bound in bits for t-space bins
};

std::string_view to_string(BoundKind k);
/// Accepts the hyphenated names: shannon-bbm, shannon-sat, renyi,
/// tsallis-orig, tsallis-sat, shannon-bits-t.
BoundKind parse_bound_kind(std::string_view name);

enum class Regime { eta_le_1, eta_gt_1 };
std::string_view to_string(Regime r);

struct BoundReport {
  BoundKind kind = BoundKind::shannon_bbm;
  IndexPair indices{1.0, 1.0};
  bool swapped = false;       // caller's alpha < 1; roles of x and p exchanged
  double cell = 0.0;          // dx dp / h, or dt_x dt_p for shannon-bits-t
  double eta = 1.0;
  Regime regime = Regime::eta_le_1;
  double bound_value = 0.0;
  std::optional<double> positivity_threshold;
  std::optional<double> entropy_sum;
  std::optional<double> gap;  // entropy_sum - bound_value
  std::optional<double> entropy_x;
  std::optional<double> entropy_p;
};

// Coefficients in closed form. All cells are dimensionless (dx dp / h).

/// (beta/alpha)^(1/(2 alpha)) (2 beta cell)^((alpha-1)/alpha); alpha >= 1.
double eta_original(const IndexPair& pair, double cell);
/// Cell at which eta_original == 1; alpha > 1.
double positivity_threshold(const IndexPair& pair);
/// Cell below which the Renyi bound is positive: (1/2) a^(1/(2(a-1))) b^(1/(2(b-1))).
double renyi_positivity_threshold(const IndexPair& pair);

double shannon_bbm(double cell);
double renyi_bound(const IndexPair& pair, double cell);
/// renyi_bound - shannon_bbm, independent of the cell.
double renyi_shannon_offset(const IndexPair& pair);

/// The eta <= 1 branch, [eta - 1]/(1 - alpha), evaluated for any cell.
double tsallis_bound_small_cell(const IndexPair& pair, double cell);
/// The eta > 1 branch, [(alpha/beta)^(1/(2alpha)) (2 beta cell)^((1-alpha)/alpha) - 1]/(alpha - 1).
double tsallis_bound_large_cell(const IndexPair& pair, double cell);
/// Regime-selected Tsallis bound on the raw cell.
BoundReport tsallis_bound_original(const IndexPair& pair, double cell);

/// eta on the t-space cell dt_x dt_p.
double eta_transformed(const IndexPair& pair, double t_cell);
/// eta_transformed for many t-cells at once (SIMD kernel).
void eta_transformed(const IndexPair& pair, std::span<const double> t_cells,
                     std::span<double> out);
/// (1 - eta') / (alpha - 1).
double tsallis_bound_transformed(const IndexPair& pair, double t_cell);
/// tsallis_bound_transformed on the effective t-cell cell / (1 + cell).
double tsallis_bound_saturating(const IndexPair& pair, double cell);
/// Large-cell limit of tsallis_bound_saturating:
/// [1 - (2a)^(-1/(2a)) (2b)^(1/(2b))] / (a - 1).
double tsallis_saturating_limit(const IndexPair& pair);

double shannon_saturating(double cell);
/// [ln(1/t_cell) + 1] / ln 2 - 1 bits.
double shannon_bits_transformed(double t_cell);
/// Information of the uniform t-space distribution: log2(1/t_cell) + 2 bits.
double uniform_information_bits(double t_cell);

/// Bound only (no state): fills kind, cell, eta, regime, threshold, value.
/// For shannon-bits-t the cell argument is the t-cell.
BoundReport evaluate_bound(BoundKind kind, const IndexPair& pair, double cell);

struct ReportOptions {
  double tail_tol = 1e-10;
};

/// Bins the state's position (width dx) and momentum (width dp) densities,
/// sums the entropies matching the bound kind, and fills the gap. For
/// shannon-bits-t both spaces are binned in t with the widest admissible
/// widths dt = 1/ceil((s + d)/d) not exceeding d/(s + d).
BoundReport assemble_report(const StateModel& state, const IndexPair& pair, double dx, double dp,
                            BoundKind kind, const ReportOptions& opt = {});

}  // namespace eur
