#include "eur/acceptance.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <functional>
#include <numbers>
#include <sstream>

#include "eur/bounds.hpp"
#include "eur/csv.hpp"
#include "eur/diagnostics.hpp"
#include "eur/errors.hpp"
#include "eur/figures.hpp"
#include "eur/quantizer.hpp"
#include "eur/states.hpp"

namespace eur::verify {

namespace {

struct Outcome {
  bool passed = true;
  std::ostringstream detail;

  void require(bool cond, const std::string& what) {
    if (!cond) {
      passed = false;
      detail << "FAILED " << what << "; ";
    }
  }
  void note(const std::string& k, double v) { detail << k << '=' << format_number(v) << "; "; }
};

using CheckFn = std::function<void(Outcome&, const Options&)>;

struct Check {
  std::string id;
  int criterion;
  CheckFn run;
};

void shannon_bbm_anchor(Outcome& o, const Options&) {
  const double v = shannon_bbm(2.0);
  o.note("shannon_bbm(2)", v);
  o.require(std::abs(v - (-0.386294)) <= 1e-4, "|value + 0.386294| <= 1e-4");
}

void shannon_sat_anchor(Outcome& o, const Options&) {
  const double v = shannon_saturating(2.0);
  o.note("shannon_saturating(2)", v);
  o.require(std::abs(v - 0.712306) <= 1e-4, "|value - 0.712306| <= 1e-4");
  std::size_t bad = 0;
  for (double c : log_grid(1e-4, 1e6, 200)) {
    if (!(shannon_saturating(c) > shannon_bbm(c))) ++bad;
  }
  o.note("cells_not_improved", static_cast<double>(bad));
  o.require(bad == 0, "saturating > bbm on 200 cells");
}

void hirschman_asymptote(Outcome& o, const Options&) {
  const double d = std::abs(shannon_saturating(1e8) - (1.0 - std::numbers::ln2));
  o.note("deviation", d);
  o.require(d < 1e-6, "deviation < 1e-6");
}

void bits_interval(Outcome& o, const Options&) {
  const double c = 3.0 - 1.0 / std::numbers::ln2;
  double worst = 0.0;
  for (double t : log_grid(1e-6, 1.0, 50)) {
    const double d = uniform_information_bits(t) - shannon_bits_transformed(t);
    worst = std::max(worst, std::abs(d - c));
  }
  o.note("constant", c);
  o.note("max_deviation", worst);
  o.require(worst <= 1e-9, "difference within 1e-9 of 3 - 1/ln 2");
  o.require(std::abs(c - 1.557305) < 5e-7, "constant rounds to 1.557305");
}

void tsallis_shannon_limit(Outcome& o, const Options&) {
  const IndexPair pair = conjugate_index(1.0 + 1e-6);
  double sat = 0.0, orig = 0.0;
  for (double c : log_grid(1e-3, 1e3, 50)) {
    sat = std::max(sat, std::abs(tsallis_bound_saturating(pair, c) - shannon_saturating(c)));
    orig = std::max(orig, std::abs(evaluate_bound(BoundKind::tsallis_orig, pair, c).bound_value -
                                   shannon_bbm(c)));
  }
  o.note("max_sat_deviation", sat);
  o.note("max_orig_deviation", orig);
  o.require(sat < 1e-4, "saturating pair within 1e-4");
  o.require(orig < 1e-4, "original pair within 1e-4");
}

void fig1_asymptotes(Outcome& o, const Options&) {
  const IndexPair pair = conjugate_index(1.3);
  const double lo = evaluate_bound(BoundKind::tsallis_orig, pair, 1e-6).bound_value;
  const double hi = evaluate_bound(BoundKind::tsallis_orig, pair, 1e6).bound_value;
  o.note("tsallis_orig(1e-6)", lo);
  o.note("tsallis_orig(1e6)", hi);
  o.require(std::abs(lo - 1.0 / 0.3) <= 1e-2, "small-cell value near 1/(alpha-1)");
  o.require(std::abs(hi + 1.0 / 0.3) <= 1e-2, "large-cell value near 1/(1-alpha)");
  // Cells at which the branches do come within 1e-2 of their limits:
  // eta <= 0.003 and 1/eta <= 0.003, with eta proportional to cell^((a-1)/a).
  const double e = 0.3 / 1.3;
  const double eta1 = eta_original(pair, 1.0);
  o.note("cell_needed_small", std::pow(0.003 / eta1, 1.0 / e));
  o.note("cell_needed_large", std::pow(1.0 / (0.003 * eta1), 1.0 / e));
}

void fig3_asymptote(Outcome& o, const Options&) {
  const double v = tsallis_bound_saturating(conjugate_index(1.3), 1e8);
  o.note("tsallis_sat(1.3, 1e8)", v);
  o.require(std::abs(v - 0.221370) <= 1e-3, "|value - 0.221370| <= 1e-3");
  double lowest = INFINITY;
  for (double a : linear_grid(1.0 + 3.0 / 100.0, 4.0, 100)) {
    lowest = std::min(lowest, tsallis_bound_saturating(conjugate_index(a), 1e8));
  }
  o.note("min_over_alpha", lowest);
  o.require(lowest > 0.0, "positive for all alpha in (1, 4]");
}

void regime_continuity(Outcome& o, const Options&) {
  double worst = 0.0;
  for (double a : {1.1, 1.3, 2.0, 3.0}) {
    const IndexPair pair = conjugate_index(a);
    const double c = positivity_threshold(pair);
    worst = std::max(worst, std::abs(tsallis_bound_small_cell(pair, c) -
                                     tsallis_bound_large_cell(pair, c)));
  }
  const double th = positivity_threshold(conjugate_index(1.3));
  o.note("max_branch_mismatch", worst);
  o.note("threshold(1.3)", th);
  o.require(worst < 1e-9, "branches agree at the threshold");
  o.require(std::abs(th - 1.34695) <= 1e-4, "threshold(1.3) = 1.34695 +- 1e-4");
}

void renyi_overlay(Outcome& o, const Options&) {
  const IndexPair pair = conjugate_index(1.3);
  const std::vector<double> cells = log_grid(1e-6, 1e6, 200);
  double lo = INFINITY, hi = -INFINITY;
  for (double c : cells) {
    const double d = renyi_bound(pair, c) - shannon_bbm(c);
    lo = std::min(lo, d);
    hi = std::max(hi, d);
  }
  const double f1 = max_overlay_difference(figure1(1.3, cells));
  const double f3 = max_overlay_difference(figure3(1.3, cells));
  o.note("offset", lo);
  o.note("spread", hi - lo);
  o.note("fig1_max_difference", f1);
  o.note("fig3_max_difference", f3);
  o.require(hi - lo <= 1e-12, "offset constant within 1e-12");
  o.require(std::abs(lo + 0.00909) <= 1e-4, "offset = -0.00909 +- 1e-4");
  o.require(f1 < 0.01 && f3 < 0.01, "overlays within 0.01");
}

void eta_transformed_check(Outcome& o, const Options&) {
  const std::size_t n = 200;
  std::vector<double> t(n), out(n);
  for (std::size_t j = 0; j < n; ++j) t[j] = static_cast<double>(j + 1) / static_cast<double>(n);
  double worst = 0.0, identity = 0.0;
  for (std::size_t i = 1; i <= n; ++i) {
    const double a = 1.0 + 3.0 * static_cast<double>(i) / static_cast<double>(n);
    const IndexPair pair = conjugate_index(a);
    eta_transformed(pair, t, out);
    worst = std::max(worst, *std::max_element(out.begin(), out.end()));
    const double b = pair.beta();
    const double closed = std::pow(2.0 * a, -1.0 / (2.0 * a)) * std::pow(2.0 * b, 1.0 / (2.0 * b));
    identity = std::max(identity, std::abs(eta_original(pair, 1.0) - closed));
  }
  o.note("max_eta_prime", worst);
  o.note("identity_deviation", identity);
  o.require(worst <= 1.0 + 1e-12, "eta' <= 1 + 1e-12 on the grid");
  o.require(identity <= 1e-12, "eta(alpha, 1) identity within 1e-12");
}

void end_to_end(Outcome& o, const Options&) {
  const auto start = std::chrono::steady_clock::now();
  const BoundKind kinds[] = {BoundKind::shannon_bbm, BoundKind::shannon_sat, BoundKind::renyi,
                             BoundKind::tsallis_orig, BoundKind::tsallis_sat};
  double worst = INFINITY;
  std::size_t reports = 0;
  for (double sigma : log_grid(0.25, 4.0, 20)) {
    const StateModel state = StateModel::gaussian(sigma);
    for (double cell : {0.5, 2.0, 10.0}) {
      const double d = std::sqrt(cell);
      for (double a : {1.3, 2.0}) {
        const IndexPair pair = conjugate_index(a);
        for (BoundKind k : kinds) {
          worst = std::min(worst, *assemble_report(state, pair, d, d, k).gap);
          ++reports;
        }
      }
    }
  }
  const double secs =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  o.note("reports", static_cast<double>(reports));
  o.note("min_gap", worst);
  o.note("seconds", secs);
  o.require(worst >= -1e-9, "every gap >= -1e-9");
  o.require(secs < 60.0, "runtime under 60 s");
}

void jensen_ordering(Outcome& o, const Options&) {
  const std::vector<Fig2Row> rows = figure2(1.3, linear_grid(0.1, 5.0, 50));
  std::size_t not_increasing = 0, misordered = 0;
  for (std::size_t i = 0; i < rows.size(); ++i) {
    if (i > 0 && !(rows[i].ratio_r > rows[i - 1].ratio_r)) ++not_increasing;
    if (rows[i].ratio_t > rows[i].ratio_r) ++misordered;
  }
  o.note("ratio_r_first", rows.front().ratio_r);
  o.note("ratio_r_last", rows.back().ratio_r);
  o.note("ratio_t_last", rows.back().ratio_t);
  o.require(not_increasing == 0, "ratio_r strictly increasing");
  o.require(misordered == 0, "ratio_t <= ratio_r pointwise");
}

void subdivision(Outcome& o, const Options& opt) {
  std::size_t total = 0;
  for (double a : {0.8125, 1.3, 2.0}) {
    const SubdivisionVerdict v = subdivision_sweep(1000, a, opt.seed);
    total += v.violations;
    if (v.first_violation) {
      o.detail << "alpha=" << a << " counterexample bin " << v.first_violation->bin << "; ";
    }
  }
  o.note("seed", static_cast<double>(opt.seed));
  o.note("violations", static_cast<double>(total));
  o.require(total == 0, "no monotonicity violations");
}

void hygiene(Outcome& o, const Options&) {
  const std::vector<StateModel> states = {
      StateModel::gaussian(1.0), StateModel::gaussian(0.3), StateModel::box(1.0),
      StateModel::two_gaussian(0.5, 3.0, 0.3), StateModel::sqrt_cauchy(0.7)};
  double parseval = 0.0, tsum = 0.0;
  for (const StateModel& s : states) {
    parseval = std::max(parseval, std::abs(momentum_norm(s) - 1.0));
    for (long km : {4L, 16L, 64L}) {
      const BinSpec spec = BinSpec::t_space(km);
      tsum = std::max(tsum, std::abs(bin_t(s.position(), 1.0, spec).normalization() - 1.0));
      tsum = std::max(tsum, std::abs(bin_t(s.momentum(), 1.0, spec).normalization() - 1.0));
    }
  }
  double trip = 0.0;
  for (double r : log_grid(1e-6, 1e4, 200)) {
    for (double sgn : {-1.0, 1.0}) {
      const double x = sgn * r;
      trip = std::max(trip, std::abs(map_from_t(map_to_t(x, 1.0), 1.0) - x) / std::max(1.0, r));
    }
  }
  for (double t : linear_grid(-0.999, 0.999, 401)) {
    trip = std::max(trip, std::abs(map_to_t(map_from_t(t, 2.0), 2.0).value() - t));
  }
  o.note("max_parseval_deviation", parseval);
  o.note("max_t_normalization_deviation", tsum);
  o.note("max_round_trip_deviation", trip);
  o.require(parseval <= 1e-8, "Parseval within 1e-8");
  o.require(tsum <= 1e-10, "t-binned sums within 1e-10");
  o.require(trip <= 1e-10, "round trip within 1e-10");
}

void footnote3_check(Outcome& o, const Options&) {
  const Footnote3 f = footnote3();
  o.note("shannon_bbm", f.shannon_bbm);
  o.note("shannon_sat", f.shannon_sat);
  o.note("sum_pure_state", f.pure_state.sum);
  o.note("sum_unit_density", f.unit_density.sum);
  o.note("reference_sum", f.reference_sum);
  o.require(f.shannon_sat > f.shannon_bbm, "saturating bound is the stronger one");
  o.require(f.pure_state.sum >= f.shannon_sat, "pure-state sum >= saturating bound");
  o.require(f.unit_density.sum >= f.shannon_sat, "unit-density sum >= saturating bound");
}

void tabulated_normalization(Outcome& o, const Options& opt) {
  const StateModel s = load_tabulated_csv(*opt.tabulated_path);
  o.note("raw_mass", s.raw_mass());
  o.require(std::abs(s.raw_mass() - 1.0) <= 1e-6, "tabulated density integrates to 1 within 1e-6");
}

const std::vector<Check>& registry() {
  static const std::vector<Check> checks = {
      {"shannon-bbm-anchor", 1, shannon_bbm_anchor},
      {"shannon-sat-anchor", 2, shannon_sat_anchor},
      {"hirschman-asymptote", 3, hirschman_asymptote},
      {"bits-interval", 4, bits_interval},
      {"tsallis-shannon-limit", 5, tsallis_shannon_limit},
      {"fig1-asymptotes", 6, fig1_asymptotes},
      {"fig3-asymptote", 7, fig3_asymptote},
      {"regime-continuity", 8, regime_continuity},
      {"renyi-overlay", 9, renyi_overlay},
      {"eta-transformed", 10, eta_transformed_check},
      {"end-to-end", 11, end_to_end},
      {"jensen-ordering", 12, jensen_ordering},
      {"subdivision", 13, subdivision},
      {"hygiene", 14, hygiene},
      {"footnote3", 15, footnote3_check},
  };
  return checks;
}

CheckResult run_one(const Check& c, const Options& opt) {
  CheckResult r;
  r.id = c.id;
  r.criterion = c.criterion;
  Outcome o;
  const auto start = std::chrono::steady_clock::now();
  try {
    c.run(o, opt);
  } catch (const std::exception& e) {
    o.passed = false;
    o.detail << "error: " << e.what();
  }
  r.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  r.passed = o.passed;
  r.detail = o.detail.str();
  while (!r.detail.empty() && (r.detail.back() == ' ' || r.detail.back() == ';')) {
    r.detail.pop_back();
  }
  return r;
}

}  // namespace

std::vector<std::string> check_ids() {
  std::vector<std::string> ids;
  for (const Check& c : registry()) ids.push_back(c.id);
  return ids;
}

std::vector<CheckResult> run_checks(const Options& opt) {
  const Check tab{"tabulated-normalization", 0, tabulated_normalization};
  for (const std::string& id : opt.only) {
    const auto& reg = registry();
    const bool known = id == tab.id || std::any_of(reg.begin(), reg.end(),
                                                   [&](const Check& c) { return c.id == id; });
    if (!known) throw DomainError("unknown check id: " + id);
  }
  auto selected = [&](const std::string& id) {
    return opt.only.empty() || std::find(opt.only.begin(), opt.only.end(), id) != opt.only.end();
  };
  std::vector<CheckResult> out;
  for (const Check& c : registry()) {
    if (selected(c.id)) out.push_back(run_one(c, opt));
  }
  if (opt.tabulated_path && selected(tab.id)) out.push_back(run_one(tab, opt));
  return out;
}

}  // namespace eur::verify
