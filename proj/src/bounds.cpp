#include "eur/bounds.hpp"

#include <cmath>
#include <numbers>
#include <string>
#include <vector>

#include "eur/errors.hpp"
#include "eur/kernels.hpp"
#include "eur/quantizer.hpp"

namespace eur {

namespace {

constexpr double kE = std::numbers::e;

void require_cell(double cell, const char* what) {
  if (!(cell > 0.0) || !std::isfinite(cell)) {
    throw DomainError(std::string(what) + ": cell must be positive and finite");
  }
}

void require_t_cell(double t_cell, const char* what) {
  if (!(t_cell > 0.0) || t_cell > 1.0) {
    throw DomainError(std::string(what) + ": t-cell must lie in (0, 1]");
  }
}

bool near_shannon(const IndexPair& pair) {
  return std::abs(pair.alpha() - 1.0) < kShannonWindow;
}

// ln(beta/alpha) / (2 alpha): the cell-independent part of ln(eta).
double log_eta_prefactor(const IndexPair& pair) {
  return -std::log1p(2.0 * (pair.alpha() - 1.0)) / (2.0 * pair.alpha());
}

double log_eta(const IndexPair& pair, double cell) {
  const double a = pair.alpha();
  return log_eta_prefactor(pair) + (a - 1.0) / a * std::log(2.0 * pair.beta() * cell);
}

// ln(a)/(1-a), continuous through a = 1 where it equals -1.
double log_ratio(double a) {
  if (a == 1.0) return -1.0;
  return std::log1p(a - 1.0) / (1.0 - a);
}

}  // namespace

std::string_view to_string(BoundKind k) {
  switch (k) {
    case BoundKind::shannon_bbm: return "shannon-bbm";
    case BoundKind::shannon_sat: return "shannon-sat";
    case BoundKind::renyi: return "renyi";
    case BoundKind::tsallis_orig: return "tsallis-orig";
    case BoundKind::tsallis_sat: return "tsallis-sat";
    case BoundKind::shannon_bits_t: return "shannon-bits-t";
  }
  return "unknown";
}

BoundKind parse_bound_kind(std::string_view name) {
  for (BoundKind k : {BoundKind::shannon_bbm, BoundKind::shannon_sat, BoundKind::renyi,
                      BoundKind::tsallis_orig, BoundKind::tsallis_sat, BoundKind::shannon_bits_t}) {
    if (to_string(k) == name) return k;
  }
  throw DomainError("unknown bound kind: " + std::string(name));
}

std::string_view to_string(Regime r) { return r == Regime::eta_le_1 ? "eta_le_1" : "eta_gt_1"; }

double eta_original(const IndexPair& pair, double cell) {
  require_cell(cell, "eta_original");
  if (pair.alpha() < 1.0) throw DomainError("eta_original: expects alpha >= 1 (swap the roles)");
  return std::exp(log_eta(pair, cell));
}

double positivity_threshold(const IndexPair& pair) {
  const double a = pair.alpha(), b = pair.beta();
  if (!(a > 1.0)) {
    throw DomainError("positivity_threshold: alpha must exceed 1 (Shannon threshold is e/2)");
  }
  return std::exp(std::log1p(2.0 * (a - 1.0)) / (2.0 * (a - 1.0))) / (2.0 * b);
}

double renyi_positivity_threshold(const IndexPair& pair) {
  return 0.5 * std::exp(-0.5 * (log_ratio(pair.alpha()) + log_ratio(pair.beta())));
}

double shannon_bbm(double cell) {
  require_cell(cell, "shannon_bbm");
  return 1.0 - std::log(2.0 * cell);
}

double renyi_bound(const IndexPair& pair, double cell) {
  require_cell(cell, "renyi_bound");
  return -0.5 * (log_ratio(pair.alpha()) + log_ratio(pair.beta())) - std::log(2.0 * cell);
}

double renyi_shannon_offset(const IndexPair& pair) {
  return -0.5 * (log_ratio(pair.alpha()) + log_ratio(pair.beta())) - 1.0;
}

double tsallis_bound_small_cell(const IndexPair& pair, double cell) {
  require_cell(cell, "tsallis_bound");
  const IndexPair c = pair.canonical();
  if (near_shannon(c)) return shannon_bbm(cell);
  return std::expm1(log_eta(c, cell)) / (1.0 - c.alpha());
}

double tsallis_bound_large_cell(const IndexPair& pair, double cell) {
  require_cell(cell, "tsallis_bound");
  const IndexPair c = pair.canonical();
  if (near_shannon(c)) return shannon_bbm(cell);
  return std::expm1(-log_eta(c, cell)) / (c.alpha() - 1.0);
}

BoundReport tsallis_bound_original(const IndexPair& pair, double cell) {
  return evaluate_bound(BoundKind::tsallis_orig, pair, cell);
}

double eta_transformed(const IndexPair& pair, double t_cell) {
  require_t_cell(t_cell, "eta_transformed");
  if (pair.alpha() < 1.0) throw DomainError("eta_transformed: expects alpha >= 1");
  return std::exp(log_eta(pair, t_cell));
}

void eta_transformed(const IndexPair& pair, std::span<const double> t_cells,
                     std::span<double> out) {
  if (pair.alpha() < 1.0) throw DomainError("eta_transformed: expects alpha >= 1");
  if (out.size() < t_cells.size()) throw DomainError("eta_transformed: output too small");
  for (double t : t_cells) require_t_cell(t, "eta_transformed");
  const double a = pair.alpha();
  const double e = (a - 1.0) / a;
  // eta' = [(beta/alpha)^(1/(2a)) (2 beta)^e] * t^e
  const double coeff = std::exp(log_eta_prefactor(pair) + e * std::log(2.0 * pair.beta()));
  kernels::scaled_pow(t_cells, e, coeff, out);
}

double tsallis_bound_transformed(const IndexPair& pair, double t_cell) {
  require_t_cell(t_cell, "tsallis_bound_transformed");
  const IndexPair c = pair.canonical();
  if (near_shannon(c)) return 1.0 - std::log(2.0 * t_cell);
  return -std::expm1(log_eta(c, t_cell)) / (c.alpha() - 1.0);
}

double tsallis_bound_saturating(const IndexPair& pair, double cell) {
  require_cell(cell, "tsallis_bound_saturating");
  return tsallis_bound_transformed(pair, effective_t_cell(cell));
}

double tsallis_saturating_limit(const IndexPair& pair) {
  const IndexPair c = pair.canonical();
  if (near_shannon(c)) return 1.0 - std::numbers::ln2;
  const double a = c.alpha(), b = c.beta();
  const double log_factor = -std::log(2.0 * a) / (2.0 * a) + std::log(2.0 * b) / (2.0 * b);
  return -std::expm1(log_factor) / (a - 1.0);
}

double shannon_saturating(double cell) {
  require_cell(cell, "shannon_saturating");
  // -ln((2/e) c/(1+c)) = 1 - ln 2 + ln(1 + 1/c)
  return 1.0 - std::numbers::ln2 + std::log1p(1.0 / cell);
}

double shannon_bits_transformed(double t_cell) {
  require_t_cell(t_cell, "shannon_bits_transformed");
  return (std::log(1.0 / t_cell) + 1.0) / std::numbers::ln2 - 1.0;
}

double uniform_information_bits(double t_cell) {
  require_t_cell(t_cell, "uniform_information_bits");
  return std::log2(1.0 / t_cell) + 2.0;
}

BoundReport evaluate_bound(BoundKind kind, const IndexPair& pair, double cell) {
  BoundReport r;
  r.kind = kind;
  r.indices = pair;
  r.swapped = pair.needs_swap();
  r.cell = cell;
  const IndexPair c = pair.canonical();
  const bool shannon_pair = near_shannon(c);
  switch (kind) {
    case BoundKind::shannon_bbm:
      r.bound_value = shannon_bbm(cell);
      r.positivity_threshold = kE / 2.0;
      break;
    case BoundKind::shannon_sat:
      r.bound_value = shannon_saturating(cell);
      break;
    case BoundKind::renyi:
      r.bound_value = renyi_bound(c, cell);
      r.positivity_threshold = renyi_positivity_threshold(c);
      if (!shannon_pair) r.eta = eta_original(c, cell);
      break;
    case BoundKind::tsallis_orig:
      require_cell(cell, "tsallis_bound_original");
      if (shannon_pair) {
        r.bound_value = shannon_bbm(cell);
        r.positivity_threshold = kE / 2.0;
      } else {
        r.eta = eta_original(c, cell);
        r.bound_value = r.eta <= 1.0 ? tsallis_bound_small_cell(c, cell)
                                     : tsallis_bound_large_cell(c, cell);
        r.positivity_threshold = positivity_threshold(c);
      }
      break;
    case BoundKind::tsallis_sat:
      require_cell(cell, "tsallis_bound_saturating");
      if (!shannon_pair) r.eta = eta_transformed(c, effective_t_cell(cell));
      r.bound_value = tsallis_bound_saturating(c, cell);
      break;
    case BoundKind::shannon_bits_t:
      r.bound_value = shannon_bits_transformed(cell);
      break;
  }
  r.regime = r.eta <= 1.0 ? Regime::eta_le_1 : Regime::eta_gt_1;
  return r;
}

namespace {

// Widest t-bin width of the form 1/k not exceeding d/(s + d).
long t_bins_for(double d, double s) {
  const double widest = d / (s + d);
  return static_cast<long>(std::ceil(1.0 / widest - 1e-12));
}

}  // namespace

BoundReport assemble_report(const StateModel& state, const IndexPair& pair, double dx, double dp,
                            BoundKind kind, const ReportOptions& opt) {
  if (!(dx > 0.0) || !(dp > 0.0)) throw DomainError("assemble_report: widths must be positive");
  const UnitsSpec& u = state.units();
  const Density rho_x = state.position();
  const Density rho_p = state.momentum();

  if (kind == BoundKind::shannon_bits_t) {
    const BinSpec sx = BinSpec::t_space(t_bins_for(dx, u.sx()));
    const BinSpec sp = BinSpec::t_space(t_bins_for(dp, u.sp()));
    const BinnedDistribution tx = bin_t(rho_x, u.sx(), sx);
    const BinnedDistribution tp = bin_t(rho_p, u.sp(), sp);
    BoundReport r = evaluate_bound(kind, pair, sx.width * sp.width);
    r.entropy_x = shannon(tx, LogBase::bits).value;
    r.entropy_p = shannon(tp, LogBase::bits).value;
    r.entropy_sum = *r.entropy_x + *r.entropy_p;
    r.gap = *r.entropy_sum - r.bound_value;
    return r;
  }

  BinningOptions bo;
  bo.tail_tol = opt.tail_tol;
  const BinnedDistribution bx = bin_r(rho_x, BinSpec::r_space(dx), bo);
  const BinnedDistribution bp = bin_r(rho_p, BinSpec::r_space(dp), bo);

  BoundReport r = evaluate_bound(kind, pair, u.cell(dx, dp));
  switch (kind) {
    case BoundKind::shannon_bbm:
    case BoundKind::shannon_sat:
      r.entropy_p = shannon(bp).value;
      r.entropy_x = shannon(bx).value;
      break;
    case BoundKind::renyi:
      r.entropy_p = renyi(bp, pair.alpha()).value;
      r.entropy_x = renyi(bx, pair.beta()).value;
      break;
    case BoundKind::tsallis_orig:
    case BoundKind::tsallis_sat:
      r.entropy_p = tsallis(bp, pair.alpha()).value;
      r.entropy_x = tsallis(bx, pair.beta()).value;
      break;
    case BoundKind::shannon_bits_t: break;
  }
  r.entropy_sum = *r.entropy_p + *r.entropy_x;
  r.gap = *r.entropy_sum - r.bound_value;
  return r;
}

}  // namespace eur
