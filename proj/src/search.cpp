#include "eur/search.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <ostream>
#include <thread>

#include "eur/csv.hpp"
#include "eur/errors.hpp"

namespace eur {

std::vector<double> ParamAxis::values() const {
  if (points == 0) throw DomainError("ParamAxis: at least one point required");
  if (!std::isfinite(lo) || !std::isfinite(hi) || lo > hi) {
    throw DomainError("ParamAxis: range must be finite with lo <= hi");
  }
  if (log && !(lo > 0.0)) throw DomainError("ParamAxis: log axis needs lo > 0");
  std::vector<double> v(points);
  if (points == 1) {
    v[0] = lo;
    return v;
  }
  const double n = static_cast<double>(points - 1);
  for (std::size_t i = 0; i < points; ++i) {
    const double f = static_cast<double>(i) / n;
    v[i] = log ? lo * std::pow(hi / lo, f) : lo + (hi - lo) * f;
  }
  v.back() = hi;
  return v;
}

std::size_t GapSurface::failures() const {
  return static_cast<std::size_t>(
      std::count_if(points.begin(), points.end(), [](const GapPoint& p) { return p.failed; }));
}

std::size_t GapSurface::violations() const {
  return static_cast<std::size_t>(std::count_if(points.begin(), points.end(), [](const GapPoint& p) {
    return !p.failed && p.gap < -1e-9;
  }));
}

void GapSurface::write_csv(std::ostream& out) const {
  std::vector<std::string> header = parameter_names(family);
  for (const char* c : {"entropy_sum", "bound", "gap", "status"}) header.emplace_back(c);
  CsvWriter w(out, header);
  for (const GapPoint& p : points) {
    std::vector<std::string> row;
    for (double v : p.params) row.push_back(format_number(v));
    if (p.failed) {
      row.insert(row.end(), {"", "", "", "failed"});
    } else {
      row.push_back(format_number(p.entropy_sum));
      row.push_back(format_number(p.bound));
      row.push_back(format_number(p.gap));
      row.emplace_back("ok");
    }
    w.row(row);
  }
}

namespace {

GapPoint evaluate_point(Family family, const std::vector<double>& params, const IndexPair& pair,
                        double dx, double dp, BoundKind kind, const UnitsSpec& units,
                        const ReportOptions& ro) {
  GapPoint g;
  g.params = params;
  try {
    const StateModel state = make_state(family, params, units);
    const BoundReport r = assemble_report(state, pair, dx, dp, kind, ro);
    g.entropy_sum = *r.entropy_sum;
    g.bound = r.bound_value;
    g.gap = *r.gap;
  } catch (const std::exception& e) {
    g.failed = true;
    g.error = e.what();
  }
  return g;
}

}  // namespace

GapSurface scan_gap(Family family, const std::vector<ParamAxis>& axes, const IndexPair& pair,
                    double dx, double dp, BoundKind kind, const SearchOptions& opt) {
  if (family == Family::tabulated) throw DomainError("scan_gap: tabulated states have no parameters");
  const std::size_t dims = parameter_names(family).size();
  if (axes.size() != dims) {
    throw DomainError("scan_gap: expected " + std::to_string(dims) + " parameter axes");
  }
  std::vector<std::vector<double>> grids;
  std::size_t total = 1;
  for (const ParamAxis& a : axes) {
    grids.push_back(a.values());
    total *= grids.back().size();
  }
  if (total > opt.max_points) throw DomainError("scan_gap: grid exceeds the configured maximum");

  GapSurface s;
  s.family = family;
  s.kind = kind;
  s.axes = axes;
  s.points.resize(total);

  auto params_at = [&](std::size_t flat) {
    std::vector<double> p(dims);
    for (std::size_t d = dims; d-- > 0;) {
      p[d] = grids[d][flat % grids[d].size()];
      flat /= grids[d].size();
    }
    return p;
  };
  auto work = [&](std::size_t begin, std::size_t step) {
    for (std::size_t i = begin; i < total; i += step) {
      s.points[i] = evaluate_point(family, params_at(i), pair, dx, dp, kind, opt.units, opt.report);
    }
  };

  unsigned threads = opt.threads ? opt.threads : std::max(1u, std::thread::hardware_concurrency());
  threads = static_cast<unsigned>(std::min<std::size_t>(threads, total));
  if (threads <= 1) {
    work(0, 1);
  } else {
    std::vector<std::thread> pool;
    for (unsigned t = 0; t < threads; ++t) pool.emplace_back(work, t, threads);
    for (std::thread& t : pool) t.join();
  }

  for (std::size_t i = 0; i < total; ++i) {
    if (s.points[i].failed) continue;
    if (!s.argmin || s.points[i].gap < s.points[*s.argmin].gap) s.argmin = i;
  }
  return s;
}

namespace {

// Maps family parameters to unconstrained coordinates and back.
struct Transform {
  Family family;

  bool is_weight(std::size_t i) const { return family == Family::two_gaussian && i == 2; }

  std::vector<double> to_u(const std::vector<double>& p) const {
    std::vector<double> u(p.size());
    for (std::size_t i = 0; i < p.size(); ++i) {
      if (is_weight(i)) {
        if (!(p[i] > 0.0 && p[i] < 1.0)) throw DomainError("minimize_gap: weight must lie in (0, 1)");
        u[i] = std::log(p[i] / (1.0 - p[i]));
      } else {
        if (!(p[i] > 0.0)) throw DomainError("minimize_gap: parameters must be positive");
        u[i] = std::log(p[i]);
      }
    }
    return u;
  }

  std::vector<double> to_p(const std::vector<double>& u) const {
    std::vector<double> p(u.size());
    for (std::size_t i = 0; i < u.size(); ++i) {
      p[i] = is_weight(i) ? 1.0 / (1.0 + std::exp(-u[i])) : std::exp(u[i]);
    }
    return p;
  }
};

struct Vertex {
  std::vector<double> u;
  double f = std::numeric_limits<double>::infinity();
};

}  // namespace

MinimizeResult minimize_gap(Family family, const std::vector<double>& initial,
                            const IndexPair& pair, double dx, double dp, BoundKind kind,
                            std::size_t budget, const MinimizeOptions& opt) {
  if (budget < 10) throw DomainError("minimize_gap: budget must be at least 10");
  if (family == Family::tabulated) throw DomainError("minimize_gap: tabulated states have no parameters");
  const std::size_t n = parameter_names(family).size();
  if (initial.size() != n) {
    throw DomainError("minimize_gap: expected " + std::to_string(n) + " initial parameters");
  }
  const Transform tr{family};

  MinimizeResult best;
  best.gap = std::numeric_limits<double>::infinity();
  std::size_t evals = 0;

  auto objective = [&](const std::vector<double>& u) {
    ++evals;
    const std::vector<double> p = tr.to_p(u);
    const GapPoint g = evaluate_point(family, p, pair, dx, dp, kind, opt.units, opt.report);
    if (g.failed) return std::numeric_limits<double>::infinity();
    if (g.gap < -1e-6) {
      throw InequalityViolation("inequality violation suspected: gap " + format_number(g.gap) +
                                " for " + std::string(to_string(kind)));
    }
    if (g.gap < best.gap) {
      best.params = p;
      best.gap = g.gap;
      best.entropy_sum = g.entropy_sum;
      best.bound = g.bound;
    }
    return g.gap;
  };

  std::vector<Vertex> simplex(n + 1);
  simplex[0].u = tr.to_u(initial);
  for (std::size_t i = 1; i <= n; ++i) {
    simplex[i].u = simplex[0].u;
    simplex[i].u[i - 1] += opt.initial_step;
  }
  for (Vertex& v : simplex) {
    if (evals >= budget) break;
    v.f = objective(v.u);
  }

  auto combine = [&](const std::vector<double>& c, const std::vector<double>& w, double coef) {
    std::vector<double> r(n);
    for (std::size_t i = 0; i < n; ++i) r[i] = c[i] + coef * (w[i] - c[i]);
    return r;
  };

  bool converged = false;
  while (evals < budget) {
    std::stable_sort(simplex.begin(), simplex.end(),
                     [](const Vertex& a, const Vertex& b) { return a.f < b.f; });
    double size = 0.0;
    for (std::size_t i = 1; i <= n; ++i) {
      for (std::size_t j = 0; j < n; ++j) {
        size = std::max(size, std::abs(simplex[i].u[j] - simplex[0].u[j]));
      }
    }
    if (std::isfinite(simplex[n].f) && simplex[n].f - simplex[0].f <= opt.f_tol &&
        size <= opt.x_tol) {
      converged = true;
      break;
    }

    std::vector<double> centroid(n, 0.0);
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t j = 0; j < n; ++j) centroid[j] += simplex[i].u[j] / static_cast<double>(n);
    }
    Vertex& worst = simplex[n];

    Vertex refl{combine(centroid, worst.u, -1.0), 0.0};
    refl.f = objective(refl.u);
    if (refl.f < simplex[0].f) {
      if (evals >= budget) {
        worst = refl;
        break;
      }
      Vertex exp{combine(centroid, worst.u, -2.0), 0.0};
      exp.f = objective(exp.u);
      worst = exp.f < refl.f ? exp : refl;
      continue;
    }
    if (refl.f < simplex[n - 1].f) {
      worst = refl;
      continue;
    }
    if (evals >= budget) break;
    const bool outside = refl.f < worst.f;
    Vertex con{combine(centroid, outside ? refl.u : worst.u, 0.5), 0.0};
    con.f = objective(con.u);
    if (con.f < std::min(refl.f, worst.f)) {
      worst = con;
      continue;
    }
    for (std::size_t i = 1; i <= n && evals < budget; ++i) {
      simplex[i].u = combine(simplex[0].u, simplex[i].u, 0.5);
      simplex[i].f = objective(simplex[i].u);
    }
  }

  if (!std::isfinite(best.gap)) throw NumericError("minimize_gap: every evaluation failed");
  if (best.gap < -1e-9) {
    throw InequalityViolation("inequality violation suspected: best gap " + format_number(best.gap));
  }
  best.evaluations = evals;
  best.converged = converged;
  return best;
}

}  // namespace eur
