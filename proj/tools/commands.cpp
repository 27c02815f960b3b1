#include <cmath>
#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include "cli.hpp"
#include "eur/acceptance.hpp"
#include "eur/bounds.hpp"
#include "eur/csv.hpp"
#include "eur/diagnostics.hpp"
#include "eur/errors.hpp"
#include "eur/figures.hpp"
#include "eur/search.hpp"
#include "eur/states.hpp"

namespace eur::cli {

using nlohmann::json;

namespace {

class UsageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// ---- configuration ---------------------------------------------------------

template <class T>
void fill(std::optional<T>& slot, const json& j, const char* key) {
  if (!slot && j.contains(key)) slot = j.at(key).get<T>();
}

template <class T>
void fill(std::vector<T>& slot, const json& j, const char* key) {
  if (slot.empty() && j.contains(key)) slot = j.at(key).get<std::vector<T>>();
}

// Values already set from flags are kept.
void merge_config_file(RunConfig& c, const std::string& path) {
  std::ifstream in(path);
  if (!in) throw UsageError("cannot open config file " + path);
  json j;
  try {
    in >> j;
  } catch (const json::exception& e) {
    throw UsageError("config file " + path + ": " + e.what());
  }
  if (!j.is_object()) throw UsageError("config file " + path + ": expected a JSON object");
  try {
    fill(c.alpha, j, "alpha");
    fill(c.cell, j, "cell");
    fill(c.dx, j, "dx");
    fill(c.dp, j, "dp");
    fill(c.h, j, "h");
    fill(c.sx, j, "sx");
    fill(c.sp, j, "sp");
    fill(c.family, j, "family");
    fill(c.params, j, "params");
    fill(c.tabulated, j, "tabulated");
    fill(c.kind, j, "kind");
    fill(c.out, j, "out");
    fill(c.format, j, "format");
    fill(c.seed, j, "seed");
    fill(c.tail_tol, j, "tail_tol");
    fill(c.figure, j, "figure");
    fill(c.lo, j, "lo");
    fill(c.hi, j, "hi");
    fill(c.resolution, j, "resolution");
    fill(c.bin, j, "bin");
    fill(c.space, j, "space");
    fill(c.bins_out, j, "bins_out");
    fill(c.budget, j, "budget");
    fill(c.scan_lo, j, "scan_lo");
    fill(c.scan_hi, j, "scan_hi");
    fill(c.interpretation, j, "interpretation");
    fill(c.only, j, "only");
  } catch (const json::exception& e) {
    throw UsageError("config file " + path + ": " + e.what());
  }
}

template <class T>
void put(json& j, const char* key, const std::optional<T>& v) {
  if (v) j[key] = *v;
}

json config_json(const RunConfig& c) {
  json j = json::object();
  put(j, "alpha", c.alpha);
  put(j, "cell", c.cell);
  put(j, "dx", c.dx);
  put(j, "dp", c.dp);
  put(j, "h", c.h);
  put(j, "sx", c.sx);
  put(j, "sp", c.sp);
  put(j, "family", c.family);
  if (!c.params.empty()) j["params"] = c.params;
  put(j, "tabulated", c.tabulated);
  put(j, "kind", c.kind);
  put(j, "out", c.out);
  put(j, "format", c.format);
  put(j, "seed", c.seed);
  put(j, "tail_tol", c.tail_tol);
  put(j, "figure", c.figure);
  put(j, "lo", c.lo);
  put(j, "hi", c.hi);
  put(j, "resolution", c.resolution);
  put(j, "bin", c.bin);
  put(j, "space", c.space);
  put(j, "bins_out", c.bins_out);
  put(j, "budget", c.budget);
  if (!c.scan_lo.empty()) j["scan_lo"] = c.scan_lo;
  if (!c.scan_hi.empty()) j["scan_hi"] = c.scan_hi;
  put(j, "interpretation", c.interpretation);
  if (!c.only.empty()) j["only"] = c.only;
  return j;
}

bool want_json(const RunConfig& c) { return c.format && *c.format == "json"; }

UnitsSpec units_of(const RunConfig& c) {
  const double h = c.h.value_or(1.0);
  if (c.sx && c.sp) return UnitsSpec::with_scales(h, *c.sx, *c.sp);
  if (c.sx) return UnitsSpec::with_position_scale(h, *c.sx);
  if (c.sp) return UnitsSpec::with_position_scale(h, h / *c.sp);
  return UnitsSpec::natural(h);
}

IndexPair pair_of(const RunConfig& c, double fallback) {
  const double a = c.alpha.value_or(fallback);
  try {
    return conjugate_index(a);
  } catch (const DomainError& e) {
    throw UsageError(std::string("invalid --alpha: ") + e.what());
  }
}

std::vector<double> default_params(Family f, const UnitsSpec& u) {
  switch (f) {
    case Family::gaussian: return {u.sx()};
    case Family::box: return {u.sx()};
    case Family::two_gaussian: return {0.5 * u.sx(), 3.0 * u.sx(), 0.5};
    case Family::sqrt_cauchy: return {u.sx()};
    case Family::tabulated: break;
  }
  return {};
}

bool has_state(const RunConfig& c) { return c.family || c.tabulated; }

StateModel state_of(const RunConfig& c, const UnitsSpec& u, std::ostream& err) {
  if (c.tabulated) return load_tabulated_csv(*c.tabulated, u, &err);
  Family f;
  try {
    f = parse_family(c.family.value_or("gaussian"));
  } catch (const DomainError& e) {
    throw UsageError(e.what());
  }
  if (f == Family::tabulated) throw UsageError("--family tabulated needs --tabulated <file>");
  const std::vector<double> p = c.params.empty() ? default_params(f, u) : c.params;
  return make_state(f, p, u);
}

// Bin widths from --dx/--dp, or dx = sx sqrt(cell), dp = sp sqrt(cell).
std::pair<double, double> widths_of(const RunConfig& c, const UnitsSpec& u,
                                    std::optional<double> default_cell) {
  if (c.dx && c.dp) return {*c.dx, *c.dp};
  if (c.dx || c.dp) throw UsageError("--dx and --dp must be given together");
  const std::optional<double> cell = c.cell ? c.cell : default_cell;
  if (!cell) throw UsageError("give --cell or both --dx and --dp");
  if (!(*cell > 0.0)) throw UsageError("--cell must be positive");
  const double r = std::sqrt(*cell * u.h() / (u.sx() * u.sp()));
  return {u.sx() * r, u.sp() * r};
}

std::string opt_num(const std::optional<double>& v) { return v ? format_number(*v) : ""; }

json opt_json(const std::optional<double>& v) { return v ? json(*v) : json(nullptr); }

void emit(const RunConfig& c, const std::string& text, std::ostream& out) {
  if (!c.out) {
    out << text;
    return;
  }
  std::ofstream f(*c.out, std::ios::binary);
  if (!f) throw std::runtime_error("cannot open output file " + *c.out);
  f << text;
  f.flush();
  if (!f) throw std::runtime_error("write failed for output file " + *c.out);
}

json summary(const RunConfig& c, json results, json checks) {
  json j;
  j["command"] = c.command;
  j["config"] = config_json(c);
  j["results"] = std::move(results);
  j["checks"] = std::move(checks);
  return j;
}

ReportOptions report_of(const RunConfig& c) {
  ReportOptions r;
  if (c.tail_tol) {
    if (!(*c.tail_tol > 0.0) || *c.tail_tol > 1e-6) throw UsageError("--tail-tol must lie in (0, 1e-6]");
    r.tail_tol = *c.tail_tol;
  }
  return r;
}

json check_json(const std::string& id, bool passed, const std::string& detail = "") {
  return json{{"id", id}, {"passed", passed}, {"detail", detail}};
}

bool all_passed(const json& checks) {
  for (const json& c : checks) {
    if (!c.at("passed").get<bool>()) return false;
  }
  return true;
}

// ---- bound -----------------------------------------------------------------

const std::vector<BoundKind> kAllKinds = {BoundKind::shannon_bbm, BoundKind::shannon_sat,
                                          BoundKind::renyi,       BoundKind::tsallis_orig,
                                          BoundKind::tsallis_sat, BoundKind::shannon_bits_t};

std::vector<BoundKind> kinds_of(const RunConfig& c) {
  const std::string k = c.kind.value_or("all");
  if (k == "all") return kAllKinds;
  std::vector<BoundKind> out;
  std::stringstream ss(k);
  std::string item;
  while (std::getline(ss, item, ',')) {
    try {
      out.push_back(parse_bound_kind(item));
    } catch (const DomainError& e) {
      throw UsageError(e.what());
    }
  }
  return out;
}

int cmd_bound(const RunConfig& c, std::ostream& out, std::ostream& err) {
  const UnitsSpec u = units_of(c);
  const IndexPair pair = pair_of(c, 1.3);
  std::vector<BoundReport> reports;
  if (has_state(c)) {
    const StateModel state = state_of(c, u, err);
    const auto [dx, dp] = widths_of(c, u, std::nullopt);
    for (BoundKind k : kinds_of(c)) reports.push_back(assemble_report(state, pair, dx, dp, k, report_of(c)));
  } else {
    double cell, t_cell;
    if (c.dx && c.dp) {
      cell = u.cell(*c.dx, *c.dp);
      t_cell = max_t_cell(*c.dx, *c.dp, u);
    } else if (c.cell) {
      cell = *c.cell;
      t_cell = effective_t_cell(cell);
    } else {
      throw UsageError("bound: give --cell or both --dx and --dp");
    }
    for (BoundKind k : kinds_of(c)) {
      reports.push_back(evaluate_bound(k, pair, k == BoundKind::shannon_bits_t ? t_cell : cell));
    }
  }

  std::ostringstream text;
  if (want_json(c)) {
    json rows = json::array();
    json checks = json::array();
    for (const BoundReport& r : reports) {
      rows.push_back({{"kind", to_string(r.kind)},
                      {"alpha", r.indices.alpha()},
                      {"beta", r.indices.beta()},
                      {"swapped", r.swapped},
                      {"cell", r.cell},
                      {"eta", r.eta},
                      {"regime", to_string(r.regime)},
                      {"bound", r.bound_value},
                      {"positivity_threshold", opt_json(r.positivity_threshold)},
                      {"entropy_x", opt_json(r.entropy_x)},
                      {"entropy_p", opt_json(r.entropy_p)},
                      {"entropy_sum", opt_json(r.entropy_sum)},
                      {"gap", opt_json(r.gap)}});
      if (r.gap && r.kind != BoundKind::shannon_bits_t) {
        checks.push_back(check_json(std::string("gap-nonnegative:") + std::string(to_string(r.kind)),
                                    *r.gap >= -1e-9, format_number(*r.gap)));
      }
    }
    text << summary(c, rows, checks).dump(2) << '\n';
  } else {
    CsvWriter w(text, {"kind", "alpha", "beta", "swapped", "cell", "eta", "regime", "bound",
                       "positivity_threshold", "entropy_x", "entropy_p", "entropy_sum", "gap"});
    for (const BoundReport& r : reports) {
      w.row({std::string(to_string(r.kind)), format_number(r.indices.alpha()),
             format_number(r.indices.beta()), r.swapped ? "true" : "false",
             format_number(r.cell), format_number(r.eta), std::string(to_string(r.regime)),
             format_number(r.bound_value), opt_num(r.positivity_threshold), opt_num(r.entropy_x),
             opt_num(r.entropy_p), opt_num(r.entropy_sum), opt_num(r.gap)});
    }
  }
  emit(c, text.str(), out);
  return 0;
}

// ---- entropy ---------------------------------------------------------------

long t_bins_for(double d, double s) { return static_cast<long>(std::ceil((s + d) / d - 1e-12)); }

void write_bins(const std::string& path, const BinnedDistribution& d) {
  std::ofstream f(path, std::ios::binary);
  if (!f) throw std::runtime_error("cannot open output file " + path);
  d.write_csv(f);
  if (!f) throw std::runtime_error("write failed for output file " + path);
}

int cmd_entropy(const RunConfig& c, std::ostream& out, std::ostream& err) {
  const UnitsSpec u = units_of(c);
  const IndexPair pair = pair_of(c, 1.3);
  const StateModel state = state_of(c, u, err);
  const auto [dx, dp] = widths_of(c, u, std::nullopt);
  const std::string space = c.space.value_or("r");
  if (space != "r" && space != "t") throw UsageError("--space must be r or t");

  auto binned = [&](const Density& rho, double d, double s) {
    if (space == "t") return bin_t(rho, s, BinSpec::t_space(t_bins_for(d, s)));
    BinningOptions bo;
    bo.tail_tol = report_of(c).tail_tol;
    return bin_r(rho, BinSpec::r_space(d), bo);
  };
  const BinnedDistribution bx = binned(state.position(), dx, u.sx());
  const BinnedDistribution bp = binned(state.momentum(), dp, u.sp());
  if (c.bins_out) {
    write_bins(*c.bins_out + "_x.csv", bx);
    write_bins(*c.bins_out + "_p.csv", bp);
  }

  struct Row {
    std::string variable;
    std::string kind;
    double index, width, value;
  };
  std::vector<Row> rows;
  auto add = [&](const std::string& var, const BinnedDistribution& d, double q) {
    rows.push_back({var, "shannon", 1.0, d.width(), shannon(d).value});
    rows.push_back({var, "shannon_bits", 1.0, d.width(), shannon(d, LogBase::bits).value});
    rows.push_back({var, "renyi", q, d.width(), renyi(d, q).value});
    rows.push_back({var, "tsallis", q, d.width(), tsallis(d, q).value});
    rows.push_back({var, "homogeneous", q, d.width(), homogeneous_A(d, q).value});
  };
  add("x", bx, pair.beta());
  add("p", bp, pair.alpha());

  std::ostringstream text;
  if (want_json(c)) {
    json rs = json::array();
    for (const Row& r : rows) {
      rs.push_back({{"variable", r.variable},
                    {"space", space},
                    {"kind", r.kind},
                    {"index", r.index},
                    {"width", r.width},
                    {"value", r.value}});
    }
    json checks = json::array();
    checks.push_back(check_json("tail-deficit-x", bx.tail_deficit() <= 1e-6,
                                format_number(bx.tail_deficit())));
    checks.push_back(check_json("tail-deficit-p", bp.tail_deficit() <= 1e-6,
                                format_number(bp.tail_deficit())));
    text << summary(c, rs, checks).dump(2) << '\n';
  } else {
    CsvWriter w(text, {"variable", "space", "kind", "index", "width", "value"});
    for (const Row& r : rows) {
      w.row({r.variable, space, r.kind, format_number(r.index), format_number(r.width),
             format_number(r.value)});
    }
  }
  emit(c, text.str(), out);
  return 0;
}

// ---- figure ----------------------------------------------------------------

int cmd_figure(const RunConfig& c, std::ostream& out, std::ostream&) {
  const int id = c.figure.value_or(0);
  if (id < 1 || id > 3) throw UsageError("figure: --id must be 1, 2 or 3");
  const double alpha = c.alpha.value_or(1.3);
  if (!(alpha > 1.0)) throw UsageError("figure: --alpha must exceed 1");
  const int res = c.resolution.value_or(id == 2 ? 50 : 121);
  if (res < 2) throw UsageError("--resolution must be at least 2");
  const UnitsSpec u = units_of(c);

  std::vector<std::string> header;
  std::vector<std::vector<double>> rows;
  json checks = json::array();
  if (id == 2) {
    const double lo = c.lo.value_or(0.1) * u.sp();
    const double hi = c.hi.value_or(5.0) * u.sp();
    header = kFig2Columns;
    const std::vector<Fig2Row> f = figure2(alpha, linear_grid(lo, hi, static_cast<std::size_t>(res)), u);
    bool increasing = true, ordered = true;
    for (std::size_t i = 0; i < f.size(); ++i) {
      rows.push_back({f[i].delta_p, f[i].ratio_r, f[i].ratio_t});
      if (i > 0 && !(f[i].ratio_r > f[i - 1].ratio_r)) increasing = false;
      if (f[i].ratio_t > f[i].ratio_r) ordered = false;
    }
    checks.push_back(check_json("ratio-r-increasing", increasing));
    checks.push_back(check_json("ratio-t-below-ratio-r", ordered));
  } else {
    const std::vector<double> cells =
        log_grid(c.lo.value_or(1e-6), c.hi.value_or(1e6), static_cast<std::size_t>(res));
    if (id == 1) {
      header = kFig1Columns;
      const std::vector<Fig1Row> f = figure1(alpha, cells);
      bool inside = true;
      for (const Fig1Row& r : f) {
        rows.push_back({r.cell, r.shannon_bbm, r.renyi_bound, r.tsallis_orig, r.asymptote_plus,
                        r.asymptote_minus});
        if (!(r.tsallis_orig < r.asymptote_plus && r.tsallis_orig > r.asymptote_minus)) inside = false;
      }
      const double d = max_overlay_difference(f);
      checks.push_back(check_json("tsallis-between-asymptotes", inside));
      checks.push_back(check_json("renyi-shannon-overlay", d < 0.01, format_number(d)));
    } else {
      header = kFig3Columns;
      const std::vector<Fig3Row> f = figure3(alpha, cells);
      bool inside = true;
      for (const Fig3Row& r : f) {
        rows.push_back({r.cell, r.shannon_sat, r.renyi_overlay, r.tsallis_sat, r.asymptote_high,
                        r.asymptote_low});
        if (!(r.tsallis_sat < r.asymptote_high && r.tsallis_sat > r.asymptote_low)) inside = false;
      }
      const double d = max_overlay_difference(f);
      checks.push_back(check_json("tsallis-sat-between-limits", inside));
      checks.push_back(check_json("renyi-shannon-overlay", d < 0.01, format_number(d)));
    }
  }

  std::ostringstream text;
  if (want_json(c)) {
    json rs = json::array();
    for (const auto& r : rows) {
      json o;
      for (std::size_t i = 0; i < header.size(); ++i) o[header[i]] = r[i];
      rs.push_back(o);
    }
    text << summary(c, json{{"figure", id}, {"rows", rs}}, checks).dump(2) << '\n';
  } else {
    CsvWriter w(text, header);
    for (const auto& r : rows) w.row(r);
  }
  emit(c, text.str(), out);
  return 0;
}

// ---- jensen ----------------------------------------------------------------

int cmd_jensen(const RunConfig& c, std::ostream& out, std::ostream& err) {
  const UnitsSpec u = units_of(c);
  const double alpha = c.alpha.value_or(1.3);
  if (!(alpha > 0.0)) throw UsageError("jensen: --alpha must be positive");
  const StateModel state = state_of(c, u, err);
  const long k = c.bin.value_or(0);
  const int res = c.resolution.value_or(50);
  if (res < 2) throw UsageError("--resolution must be at least 2");
  const std::vector<double> widths = linear_grid(c.lo.value_or(0.1) * u.sp(),
                                                 c.hi.value_or(5.0) * u.sp(),
                                                 static_cast<std::size_t>(res));
  const Density rho = state.momentum();

  std::vector<std::vector<double>> rows;
  bool direction = true;
  for (double w : widths) {
    const double dt = w / (u.sp() + w);
    const double rr = jensen_ratio_r(rho, alpha, k, w).ratio;
    double rt = NAN;
    if (std::abs(static_cast<double>(k)) * dt < 1.0 && std::abs(static_cast<double>(k + 1)) * dt <= 1.0) {
      rt = jensen_ratio_t(rho, u.sp(), alpha, k, dt).ratio;
    }
    const double tb = taylor_bias(rho, alpha, k, w);
    rows.push_back({w, rr, rt, tb});
    for (double r : {rr, rt}) {
      if (std::isnan(r)) continue;
      if (alpha > 1.0 && r < 1.0 - 1e-10) direction = false;
      if (alpha < 1.0 && r > 1.0 + 1e-10) direction = false;
    }
  }

  std::ostringstream text;
  const std::vector<std::string> header = {"width", "ratio_r", "ratio_t", "taylor_estimate"};
  if (want_json(c)) {
    json rs = json::array();
    for (const auto& r : rows) {
      const json rt = std::isnan(r[2]) ? json(nullptr) : json(r[2]);
      rs.push_back({{"width", r[0]}, {"ratio_r", r[1]}, {"ratio_t", rt}, {"taylor_estimate", r[3]}});
    }
    text << summary(c, rs, json::array({check_json("jensen-direction", direction)})).dump(2)
         << '\n';
  } else {
    CsvWriter w(text, header);
    for (const auto& r : rows) w.row(r);
  }
  emit(c, text.str(), out);
  return direction ? 0 : 1;
}

// ---- saturate --------------------------------------------------------------

int cmd_saturate(const RunConfig& c, std::ostream& out, std::ostream&) {
  const UnitsSpec u = units_of(c);
  const IndexPair pair = pair_of(c, 1.3);
  Family f;
  try {
    f = parse_family(c.family.value_or("gaussian"));
  } catch (const DomainError& e) {
    throw UsageError(e.what());
  }
  if (f == Family::tabulated) throw UsageError("saturate: tabulated states have no parameters");
  BoundKind kind;
  try {
    kind = parse_bound_kind(c.kind.value_or("tsallis-sat"));
  } catch (const DomainError& e) {
    throw UsageError(e.what());
  }
  const auto [dx, dp] = widths_of(c, u, 2.0);
  const std::vector<double> init = c.params.empty() ? default_params(f, u) : c.params;
  const int budget = c.budget.value_or(200);
  if (budget < 10) throw UsageError("--budget must be at least 10");
  const std::size_t dims = parameter_names(f).size();

  std::optional<GapSurface> surface;
  if (!c.scan_lo.empty() || !c.scan_hi.empty()) {
    if (c.scan_lo.size() != dims || c.scan_hi.size() != dims) {
      throw UsageError("--scan-lo and --scan-hi need one value per family parameter");
    }
    const int res = c.resolution.value_or(9);
    if (res < 1) throw UsageError("--resolution must be positive");
    std::vector<ParamAxis> axes;
    for (std::size_t i = 0; i < dims; ++i) {
      const bool weight = f == Family::two_gaussian && i == 2;
      axes.push_back({c.scan_lo[i], c.scan_hi[i], static_cast<std::size_t>(res),
                      !weight && c.scan_lo[i] > 0.0});
    }
    SearchOptions so;
    so.units = u;
    so.report = report_of(c);
    surface = scan_gap(f, axes, pair, dx, dp, kind, so);
  }
  MinimizeOptions mo;
  mo.units = u;
  mo.report = report_of(c);
  const MinimizeResult best =
      minimize_gap(f, init, pair, dx, dp, kind, static_cast<std::size_t>(budget), mo);

  json checks = json::array();
  checks.push_back(check_json("min-gap-nonnegative", best.gap >= -1e-9, format_number(best.gap)));
  if (surface && surface->argmin) {
    const double scan_min = surface->points[*surface->argmin].gap;
    checks.push_back(check_json("minimize-not-above-scan", best.gap <= scan_min + 1e-9,
                                format_number(best.gap - scan_min)));
    checks.push_back(check_json("scan-gaps-nonnegative", surface->violations() == 0,
                                std::to_string(surface->violations())));
  }

  std::ostringstream text;
  const std::vector<std::string> names = parameter_names(f);
  if (want_json(c)) {
    json params = json::object();
    for (std::size_t i = 0; i < dims; ++i) params[names[i]] = best.params[i];
    json results{{"family", to_string(f)},
                 {"kind", to_string(kind)},
                 {"dx", dx},
                 {"dp", dp},
                 {"cell", u.cell(dx, dp)},
                 {"minimum",
                  {{"params", params},
                   {"gap", best.gap},
                   {"entropy_sum", best.entropy_sum},
                   {"bound", best.bound},
                   {"evaluations", best.evaluations},
                   {"converged", best.converged}}}};
    if (surface) {
      json s{{"points", surface->points.size()}, {"failures", surface->failures()}};
      if (surface->argmin) {
        const GapPoint& g = surface->points[*surface->argmin];
        json p = json::object();
        for (std::size_t i = 0; i < dims; ++i) p[names[i]] = g.params[i];
        s["argmin"] = {{"params", p}, {"gap", g.gap}};
      }
      results["scan"] = s;
    }
    text << summary(c, results, checks).dump(2) << '\n';
  } else if (surface) {
    surface->write_csv(text);
  } else {
    std::vector<std::string> header = names;
    for (const char* h : {"entropy_sum", "bound", "gap", "evaluations", "converged"}) {
      header.emplace_back(h);
    }
    CsvWriter w(text, header);
    std::vector<std::string> row;
    for (double v : best.params) row.push_back(format_number(v));
    row.push_back(format_number(best.entropy_sum));
    row.push_back(format_number(best.bound));
    row.push_back(format_number(best.gap));
    row.push_back(std::to_string(best.evaluations));
    row.emplace_back(best.converged ? "true" : "false");
    w.row(row);
  }
  emit(c, text.str(), out);
  return all_passed(checks) ? 0 : 1;
}

// ---- example-footnote3 -----------------------------------------------------

int cmd_footnote3(const RunConfig& c, std::ostream& out, std::ostream&) {
  const std::string which = c.interpretation.value_or("both");
  if (which != "both" && which != "pure-state" && which != "unit-density") {
    throw UsageError("--interpretation must be both, pure-state or unit-density");
  }
  const Footnote3 f = footnote3(units_of(c));
  std::vector<const Footnote3Reading*> readings;
  if (which != "unit-density") readings.push_back(&f.pure_state);
  if (which != "pure-state") readings.push_back(&f.unit_density);

  json checks = json::array();
  checks.push_back(check_json("saturating-bound-stronger", f.shannon_sat > f.shannon_bbm));
  for (const Footnote3Reading* r : readings) {
    checks.push_back(check_json("sum-above-saturating-bound:" + r->name, r->sum >= f.shannon_sat,
                                format_number(r->sum)));
  }

  std::ostringstream text;
  if (want_json(c)) {
    json rs = json::array();
    for (const Footnote3Reading* r : readings) {
      rs.push_back({{"interpretation", r->name},
                    {"description", r->description},
                    {"entropy_x", r->entropy_x},
                    {"entropy_p", r->entropy_p},
                    {"entropy_sum", r->sum}});
    }
    json results{{"cell", f.cell},
                 {"shannon_bbm", f.shannon_bbm},
                 {"shannon_sat", f.shannon_sat},
                 {"reference_sum", f.reference_sum},
                 {"interpretations", rs}};
    text << summary(c, results, checks).dump(2) << '\n';
  } else {
    text << "cell dx*dp/h = " << format_number(f.cell) << " (dx/sx = dp/sp = sqrt 2)\n";
    text << "bounds: shannon_bbm = " << format_number(f.shannon_bbm)
         << ", shannon_sat = " << format_number(f.shannon_sat) << '\n';
    text << "stronger bound: shannon_sat ("
         << (f.shannon_sat > f.shannon_bbm ? "holds" : "DOES NOT HOLD") << ")\n";
    for (const Footnote3Reading* r : readings) {
      text << "[" << r->name << "] " << r->description << '\n';
      text << "  S_x = " << format_number(r->entropy_x) << ", S_p = " << format_number(r->entropy_p)
           << ", sum = " << format_number(r->sum) << " ("
           << (r->sum >= f.shannon_sat ? ">=" : "<") << " shannon_sat)\n";
    }
    text << "reference sum: " << format_number(f.reference_sum)
         << " (not asserted; depends on the value of h, state consistency and bin alignment)\n";
  }
  emit(c, text.str(), out);
  return all_passed(checks) ? 0 : 1;
}

// ---- verify ----------------------------------------------------------------

int cmd_verify(const RunConfig& c, std::ostream& out, std::ostream&) {
  verify::Options opt;
  if (c.seed) opt.seed = *c.seed;
  opt.only = c.only;
  opt.tabulated_path = c.tabulated;
  std::vector<verify::CheckResult> results;
  try {
    results = verify::run_checks(opt);
  } catch (const DomainError& e) {
    throw UsageError(e.what());
  }
  std::size_t passed = 0;
  for (const auto& r : results) passed += r.passed ? 1 : 0;

  std::ostringstream text;
  if (want_json(c)) {
    json checks = json::array();
    for (const auto& r : results) {
      checks.push_back({{"id", r.id},
                        {"criterion", r.criterion},
                        {"passed", r.passed},
                        {"detail", r.detail},
                        {"seconds", r.seconds}});
    }
    json res{{"total", results.size()}, {"passed", passed}, {"seed", opt.seed}};
    text << summary(c, res, checks).dump(2) << '\n';
  } else {
    for (const auto& r : results) {
      text << (r.passed ? "PASS " : "FAIL ") << r.id << ": " << r.detail << '\n';
    }
    text << passed << '/' << results.size() << " checks passed\n";
  }
  emit(c, text.str(), out);
  return passed == results.size() ? 0 : 1;
}

// ---- command line ----------------------------------------------------------

void add_common(CLI::App* sub, RunConfig& c, std::string& config_path) {
  sub->add_option("--alpha", c.alpha, "Momentum-space index (beta = alpha/(2 alpha - 1))");
  sub->add_option("--cell", c.cell, "Phase-space cell dx*dp/h");
  sub->add_option("--dx", c.dx, "Position bin width");
  sub->add_option("--dp", c.dp, "Momentum bin width");
  sub->add_option("--h", c.h, "Planck constant (default 1)");
  sub->add_option("--sx", c.sx, "Position scale of the compactifying map");
  sub->add_option("--sp", c.sp, "Momentum scale of the compactifying map");
  sub->add_option("--family", c.family, "gaussian, box, two-gaussian, sqrt-cauchy");
  sub->add_option("--param", c.params, "Family parameters in order (repeat or comma-separate)")
      ->delimiter(',');
  sub->add_option("--tabulated", c.tabulated, "Two-column CSV of a tabulated position density");
  sub->add_option("--out", c.out, "Output file (default stdout)");
  sub->add_option("--format", c.format, "csv or json")->check(CLI::IsMember({"csv", "json"}));
  sub->add_option("--seed", c.seed, "Seed for randomized checks");
  sub->add_option("--tail-tol", c.tail_tol, "Mass allowed outside the binned range (default 1e-10)");
  sub->add_option("--config", config_path, "JSON config file; flags win on conflict");
}

}  // namespace

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Entropic uncertainty bounds: entropies, bounds, figures and checks", "eur"};
  app.set_help_flag("--help", "Print this help message and exit");
  app.require_subcommand(1);
  RunConfig c;
  std::string config_path;

  auto* bound = app.add_subcommand("bound", "Evaluate bounds (and gaps for a state)");
  add_common(bound, c, config_path);
  bound->add_option("--kind", c.kind, "Bound kind(s), comma-separated, or all");

  auto* entropy = app.add_subcommand("entropy", "Entropies of a binned state");
  add_common(entropy, c, config_path);
  entropy->add_option("--space", c.space, "r (default) or t");
  entropy->add_option("--bins-out", c.bins_out, "Write PREFIX_x.csv and PREFIX_p.csv");

  auto* figure = app.add_subcommand("figure", "Figure data as CSV");
  add_common(figure, c, config_path);
  figure->add_option("--id,--figure", c.figure, "Figure 1, 2 or 3");
  figure->add_option("--lo", c.lo, "Sweep start (cell, or delta_p / sp for figure 2)");
  figure->add_option("--hi", c.hi, "Sweep end");
  figure->add_option("--resolution", c.resolution, "Number of sweep points");

  auto* jensen = app.add_subcommand("jensen", "Jensen-bias sweep on the momentum density");
  add_common(jensen, c, config_path);
  jensen->add_option("--bin", c.bin, "Bin index k (default 0)");
  jensen->add_option("--lo", c.lo, "Smallest width / sp");
  jensen->add_option("--hi", c.hi, "Largest width / sp");
  jensen->add_option("--resolution", c.resolution, "Number of widths");

  auto* saturate = app.add_subcommand("saturate", "Scan and minimize the gap over a family");
  add_common(saturate, c, config_path);
  saturate->add_option("--kind", c.kind, "Bound kind (default tsallis-sat)");
  saturate->add_option("--budget", c.budget, "Evaluation budget for the simplex search");
  saturate->add_option("--scan-lo", c.scan_lo, "Grid lower ends, one per parameter")->delimiter(',');
  saturate->add_option("--scan-hi", c.scan_hi, "Grid upper ends, one per parameter")->delimiter(',');
  saturate->add_option("--resolution", c.resolution, "Grid points per axis");

  auto* fn3 = app.add_subcommand("example-footnote3", "Gaussian worked example at cell 2");
  add_common(fn3, c, config_path);
  fn3->add_option("--interpretation", c.interpretation, "both, pure-state or unit-density");

  auto* verify = app.add_subcommand("verify", "Run the acceptance checks");
  add_common(verify, c, config_path);
  verify->add_option("--only", c.only, "Check ids to run (repeat or comma-separate)")
      ->delimiter(',');

  std::vector<std::string> args;
  for (int i = argc - 1; i > 0; --i) args.emplace_back(argv[i]);
  try {
    app.parse(args);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return 0;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return 0;
  } catch (const CLI::ParseError& e) {
    err << "usage error: " << e.what() << '\n';
    return 2;
  }

  try {
    if (!config_path.empty()) merge_config_file(c, config_path);
    if (c.format && *c.format != "csv" && *c.format != "json") {
      throw UsageError("--format must be csv or json");
    }
    c.command = app.get_subcommands().front()->get_name();
    if (c.command == "bound") return cmd_bound(c, out, err);
    if (c.command == "entropy") return cmd_entropy(c, out, err);
    if (c.command == "figure") return cmd_figure(c, out, err);
    if (c.command == "jensen") return cmd_jensen(c, out, err);
    if (c.command == "saturate") return cmd_saturate(c, out, err);
    if (c.command == "example-footnote3") return cmd_footnote3(c, out, err);
    return cmd_verify(c, out, err);
  } catch (const UsageError& e) {
    err << "usage error: " << e.what() << '\n';
    return 2;
  } catch (const DomainError& e) {
    err << "usage error: " << e.what() << '\n';
    return 2;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return 1;
  }
}

}  // namespace eur::cli
