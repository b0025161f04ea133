#include "dqw/cli/commands.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <functional>
#include <iostream>
#include <json.hpp>
#include <numbers>
#include <sstream>

#include "dqw/discord.hpp"
#include "dqw/measures.hpp"
#include "dqw/parallel.hpp"
#include "dqw/propagator.hpp"
#include "dqw/spectral_oracle.hpp"
#include "dqw/version.hpp"
#include "dqw/wigner.hpp"
#include "dqw/window.hpp"

namespace dqw::cli {

namespace {

using json = nlohmann::ordered_json;

struct Point {
  SimParams params;
  Window window;
};

Point make_point(const RunConfig& cfg, double omega, double diss, double t) {
  Point pt;
  pt.params.omega = omega;
  pt.params.diss = diss;
  pt.params.time = t;
  pt.params.validate();
  if (cfg.window > 0) {
    pt.window = Window::fixed(cfg.window, series_cutoff(pt.params.t_d(), cfg.tol), cfg.tol);
    pt.window.tail_bound = out_of_window_mass(pt.params.t_omega(), pt.params.t_d(), cfg.window);
  } else {
    pt.window = select_window(pt.params, cfg.tol);
  }
  return pt;
}

std::vector<Point> make_points(const RunConfig& cfg) {
  std::vector<Point> pts;
  for (double t : cfg.times) pts.push_back(make_point(cfg, cfg.omega, cfg.diss, t));
  return pts;
}

std::string fmt(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

void write_csv_header(std::ostream& o, const RunConfig& cfg) {
  o << "# dqw version: " << kVersion << "\n";
  std::istringstream in(dump_config(cfg));
  std::string line;
  while (std::getline(in, line)) o << "# " << line << "\n";
}

json config_json(const RunConfig& cfg) {
  json c = json::object();
  std::istringstream in(dump_config(cfg));
  std::string line;
  while (std::getline(in, line)) {
    const auto eq = line.find(" = ");
    c[line.substr(0, eq)] = line.substr(eq + 3);
  }
  return c;
}

json window_json(const Point& pt) {
  return json{{"t", pt.params.time},
              {"t_omega", pt.params.t_omega()},
              {"t_d", pt.params.t_d()},
              {"radius", pt.window.radius},
              {"cutoff_i", pt.window.cutoff_i},
              {"cutoff_j", pt.window.cutoff_j},
              {"tail_bound", pt.window.tail_bound}};
}

json base_meta(const RunConfig& cfg) {
  return json{{"version", kVersion}, {"config", config_json(cfg)}};
}

std::vector<int> int_range(int lo, int hi) {
  std::vector<int> v;
  for (int i = lo; i <= hi; ++i) v.push_back(i);
  return v;
}

// Runs body with the configured worker count and restores the previous one.
template <class F>
auto with_threads(const RunConfig& cfg, F&& body) {
  const int previous = num_threads();
  set_num_threads(cfg.threads);
  struct Restore {
    int n;
    ~Restore() { set_num_threads(n); }
  } restore{previous};
  return body();
}

int max_radius(const std::vector<Point>& pts) {
  int r = 0;
  for (const auto& p : pts) r = std::max(r, p.window.radius);
  return r;
}

}  // namespace

std::string half_int_text(int twice) {
  if ((twice & 1) == 0) return std::to_string(twice / 2);
  return std::to_string(twice) + "/2";
}

int cmd_evolve(const RunConfig& cfg, std::ostream& out) {
  const auto pts = make_points(cfg);
  const int R = cfg.s_max > 0 ? cfg.s_max : max_radius(pts);
  const int S = 2 * R + 1;
  std::vector<double> grid(pts.size() * static_cast<std::size_t>(S) * S, 0.0);
  std::vector<double> traces(pts.size());
  std::vector<DensityMatrix> kept;
  for (std::size_t i = 0; i < pts.size(); ++i) {
    const DensityMatrix rho = evolve_analytic(pts[i].params, pts[i].window);
    traces[i] = rho.trace().real();
    const int r = std::min(R, rho.radius());
    for (int s1 = -r; s1 <= r; ++s1)
      for (int s2 = -r; s2 <= r; ++s2)
        grid[(i * S + static_cast<std::size_t>(s1 + R)) * S + static_cast<std::size_t>(s2 + R)] =
            std::max(rho(s1, s2, s1, s2).real(), 0.0);
    if (cfg.full) kept.push_back(rho);
  }
  if (cfg.resolved_format() == "csv") {
    write_csv_header(out, cfg);
    out << "t,s1,s2,probability\n";
    for (std::size_t i = 0; i < pts.size(); ++i)
      for (int s1 = -R; s1 <= R; ++s1)
        for (int s2 = -R; s2 <= R; ++s2)
          out << fmt(pts[i].params.time) << "," << s1 << "," << s2 << ","
              << fmt(grid[(i * S + static_cast<std::size_t>(s1 + R)) * S + static_cast<std::size_t>(s2 + R)]) << "\n";
  } else {
    json doc;
    doc["meta"] = base_meta(cfg);
    doc["meta"]["quantity"] = "probability";
    json windows = json::array();
    for (std::size_t i = 0; i < pts.size(); ++i) {
      json w = window_json(pts[i]);
      w["trace"] = traces[i];
      windows.push_back(w);
    }
    doc["meta"]["windows"] = windows;
    doc["shape"] = {pts.size(), S, S};
    doc["index"] = {{"t", cfg.times}, {"s1", int_range(-R, R)}, {"s2", int_range(-R, R)}};
    doc["data"] = grid;
    out << doc.dump() << "\n";
  }
  if (cfg.full) {
    if (cfg.out.empty()) throw UsageError("full matrix output needs --out");
    const DensityMatrix& rho = kept.front();
    const int r = rho.radius();
    json doc;
    doc["meta"] = base_meta(cfg);
    doc["meta"]["quantity"] = "density_matrix";
    doc["meta"]["windows"] = json::array({window_json(pts.front())});
    const int n = rho.size();
    doc["shape"] = {n, n, n, n};
    const auto idx = int_range(-r, r);
    doc["index"] = {{"s1", idx}, {"s2", idx}, {"s1p", idx}, {"s2p", idx}};
    json data = json::array();
    for (const cplx& v : rho.data()) data.push_back({v.real(), v.imag()});
    doc["data"] = std::move(data);
    std::ofstream f(cfg.out + ".rho.json");
    if (!f) throw std::runtime_error("cannot write " + cfg.out + ".rho.json");
    f << doc.dump() << "\n";
  }
  return 0;
}

namespace {

const std::vector<std::string> kMeasureColumns = {"t_omega", "t_d", "purity2", "purity1_sq", "delta_purity",
                                                  "entropy", "entropy_independent", "c_re", "mirror_t1", "mirror_total"};

std::vector<double> record_values(const MeasureRecord& r) {
  return {r.t_omega, r.t_d, r.purity2, r.purity1_sq, r.delta_purity, r.entropy, r.entropy_independent, r.c_re,
          r.mirror_t1, r.mirror_total};
}

EntropyOptions entropy_options(const RunConfig& cfg) {
  EntropyOptions o;
  o.tol = std::max(cfg.tol, 1e-12);
  return o;
}

void write_table(std::ostream& out, const RunConfig& cfg, const std::vector<std::string>& columns,
                 const std::vector<std::vector<double>>& rows, const json& extra_meta) {
  if (cfg.resolved_format() == "csv") {
    write_csv_header(out, cfg);
    for (std::size_t c = 0; c < columns.size(); ++c) out << (c ? "," : "") << columns[c];
    out << "\n";
    for (const auto& row : rows) {
      for (std::size_t c = 0; c < row.size(); ++c) out << (c ? "," : "") << fmt(row[c]);
      out << "\n";
    }
  } else {
    json doc;
    doc["meta"] = base_meta(cfg);
    for (auto it = extra_meta.begin(); it != extra_meta.end(); ++it) doc["meta"][it.key()] = it.value();
    doc["shape"] = {rows.size(), columns.size()};
    std::vector<int> row_index = int_range(0, static_cast<int>(rows.size()) - 1);
    doc["index"] = {{"row", row_index}, {"column", columns}};
    json data = json::array();
    for (const auto& row : rows)
      for (double v : row) data.push_back(v);
    doc["data"] = std::move(data);
    out << doc.dump() << "\n";
  }
}

}  // namespace

int cmd_measures(const RunConfig& cfg, std::ostream& out) {
  const auto pts = make_points(cfg);
  std::vector<std::vector<double>> rows;
  json windows = json::array();
  for (const auto& pt : pts) {
    const DensityMatrix rho = evolve_analytic(pt.params, pt.window);
    rows.push_back(record_values(compute_measures(rho, pt.params, entropy_options(cfg))));
    windows.push_back(window_json(pt));
  }
  write_table(out, cfg, kMeasureColumns, rows, json{{"windows", windows}});
  return 0;
}

int cmd_gqd(const RunConfig& cfg, std::ostream& out) {
  const auto pts = make_points(cfg);
  const int smax = cfg.s_max > 0 ? cfg.s_max : max_radius(pts);
  std::vector<std::string> cols = {"t_omega", "t_d", "gqd_total", "gqd_weighted"};
  for (int s = 1; s <= smax; ++s) cols.push_back("gqd_s" + std::to_string(s));
  std::vector<std::vector<double>> rows;
  json windows = json::array();
  for (const auto& pt : pts) {
    const DensityMatrix rho = evolve_analytic(pt.params, pt.window);
    const GqdBreakdown g = gqd_breakdown(rho);
    std::vector<double> row = {pt.params.t_omega(), pt.params.t_d(), g.total, g.total_weighted};
    for (int s = 1; s <= smax; ++s)
      row.push_back(s <= static_cast<int>(g.per_block.size()) ? g.per_block[static_cast<std::size_t>(s - 1)] : 0.0);
    rows.push_back(std::move(row));
    windows.push_back(window_json(pt));
  }
  write_table(out, cfg, cols, rows, json{{"windows", windows}});
  return 0;
}

int cmd_wigner(const RunConfig& cfg, std::ostream& out) {
  if (cfg.resolved_format() != "json") throw UsageError("wigner output is JSON only");
  const auto pts = make_points(cfg);
  const int R = max_radius(pts);
  const int X = 4 * R + 1;
  const int M = cfg.k_points;
  std::vector<double> data;
  json per_time = json::array();
  for (const auto& pt : pts) {
    const DensityMatrix rho = evolve_analytic(pt.params, pt.window);
    const WignerGrid g = wigner_grid_from_rho(rho, M);
    const WignerMarginals marg = wigner_marginals(g);
    json info = window_json(pt);
    info["normalization"] = marg.normalization;
    info["negative_volume"] = negative_volume(g);
    const int r = g.extent;
    if (cfg.delta_k) {
      const double k1 = 0.5 * *cfg.delta_k, k2 = -0.5 * *cfg.delta_k;
      const std::vector<double> slice = wigner_slice_from_rho(rho, k1, k2);
      const int xr = 4 * r + 1;
      std::size_t negatives = 0;
      for (int i1 = 0; i1 < X; ++i1)
        for (int i2 = 0; i2 < X; ++i2) {
          const int a = i1 - 2 * R + 2 * r, b = i2 - 2 * R + 2 * r;
          const double v = (a >= 0 && a < xr && b >= 0 && b < xr) ? slice[static_cast<std::size_t>(a) * xr + b] : 0.0;
          if (v < -1e-12) ++negatives;
          data.push_back(v);
        }
      info["k1"] = k1;
      info["k2"] = k2;
      info["negative_cells"] = negatives;
    } else {
      info["negative_cells"] = negative_cells(g, 1e-12);
      for (int x1 = -2 * R; x1 <= 2 * R; ++x1)
        for (int x2 = -2 * R; x2 <= 2 * R; ++x2)
          for (int j1 = 0; j1 < M; ++j1)
            for (int j2 = 0; j2 < M; ++j2)
              data.push_back(std::abs(x1) <= 2 * r && std::abs(x2) <= 2 * r ? g.at({x1}, {x2}, j1, j2) : 0.0);
    }
    per_time.push_back(info);
  }
  json doc;
  doc["meta"] = base_meta(cfg);
  doc["meta"]["quantity"] = "wigner";
  doc["meta"]["times"] = per_time;
  std::vector<std::string> xs;
  for (int x = -2 * R; x <= 2 * R; ++x) xs.push_back(half_int_text(x));
  if (cfg.delta_k) {
    doc["shape"] = {pts.size(), X, X};
    doc["index"] = {{"t", cfg.times}, {"x1", xs}, {"x2", xs}};
  } else {
    std::vector<double> ks;
    const double h = 2.0 * std::numbers::pi / M;
    for (int j = 0; j < M; ++j) ks.push_back(-std::numbers::pi + (j + 0.5) * h);
    doc["shape"] = {pts.size(), X, X, M, M};
    doc["index"] = {{"t", cfg.times}, {"x1", xs}, {"x2", xs}, {"k1", ks}, {"k2", ks}};
  }
  doc["data"] = std::move(data);
  out << doc.dump() << "\n";
  return 0;
}

int cmd_sweep(const RunConfig& cfg, std::ostream& out) {
  std::vector<double> diss_values;
  if (cfg.r_d.empty()) diss_values.push_back(cfg.diss);
  else
    for (double r : cfg.r_d) diss_values.push_back(0.5 * r * cfg.omega);
  std::vector<Point> jobs;
  for (double d : diss_values)
    for (double t : cfg.times) jobs.push_back(make_point(cfg, cfg.omega, d, t));
  std::vector<std::vector<double>> rows(jobs.size());
  const EntropyOptions opt = entropy_options(cfg);
  parallel_for(0, static_cast<std::ptrdiff_t>(jobs.size()), [&](std::ptrdiff_t i) {
    const Point& pt = jobs[static_cast<std::size_t>(i)];
    const DensityMatrix rho = evolve_analytic(pt.params, pt.window);
    std::vector<double> row = {pt.params.diss, pt.params.time};
    for (double v : record_values(compute_measures(rho, pt.params, opt))) row.push_back(v);
    const GqdBreakdown g = gqd_breakdown(rho);
    row.push_back(g.total);
    row.push_back(g.total_weighted);
    rows[static_cast<std::size_t>(i)] = std::move(row);
  });
  std::vector<std::string> cols = {"diss", "t"};
  cols.insert(cols.end(), kMeasureColumns.begin(), kMeasureColumns.end());
  cols.push_back("gqd_total");
  cols.push_back("gqd_weighted");
  write_table(out, cfg, cols, rows, json::object());
  return 0;
}

namespace {

struct Check {
  std::string name;
  double measured;
  double bound;
  bool pass;
};

std::vector<Check> validate_point(const RunConfig& cfg, const Point& pt) {
  std::vector<Check> out;
  const std::string tag = "(t_omega=" + fmt(pt.params.t_omega()) + ", t_d=" + fmt(pt.params.t_d()) +
                          ", W=" + std::to_string(pt.window.radius) + ") ";
  auto add = [&](const std::string& name, double measured, double bound) {
    out.push_back({tag + name, measured, bound, measured <= bound});
  };
  const DensityMatrix rho = evolve_analytic(pt.params, pt.window);
  const int R = rho.radius();

  add("trace", std::abs(rho.trace().real() - 1.0), std::max(1e-8, cfg.tol));

  double herm = 0.0, exch = 0.0;
  for (int a = -R; a <= R; ++a)
    for (int b = -R; b <= R; ++b)
      for (int c = -R; c <= R; ++c)
        for (int d = -R; d <= R; ++d) {
          herm = std::max(herm, std::abs(rho(a, b, c, d) - std::conj(rho(c, d, a, b))));
          exch = std::max(exch, std::abs(rho(a, b, c, d) - rho(b, a, d, c)));
        }
  add("hermiticity", herm, 0.0);
  add("exchange symmetry", exch, 0.0);

  const int ro = std::min(3, R);
  int M = std::max(24, min_quadrature_points(pt.params, ro));
  M += M & 1;
  if (M <= 48) {
    const DensityMatrix orc = oracle_matrix(Window::fixed(ro, 0), pt.params, M);
    double dev = 0.0;
    for (int a = -ro; a <= ro; ++a)
      for (int b = -ro; b <= ro; ++b)
        for (int c = -ro; c <= ro; ++c)
          for (int d = -ro; d <= ro; ++d) dev = std::max(dev, std::abs(rho(a, b, c, d) - orc(a, b, c, d)));
    add("oracle equivalence |s|<=" + std::to_string(ro), dev, 1e-6);
  }

  double mom = 0.0;
  const double target = 1.0 / (4.0 * std::numbers::pi * std::numbers::pi);
  for (int i = 0; i < 8; ++i)
    for (int j = 0; j < 8; ++j) {
      const double k1 = -std::numbers::pi + (i + 0.5) * std::numbers::pi / 4.0;
      const double k2 = -std::numbers::pi + (j + 0.5) * std::numbers::pi / 4.0;
      mom = std::max(mom, std::abs(momentum_diagonal(rho, k1, k2) - target));
    }
  add("momentum diagonal", mom, 1e-6);

  const std::vector<double> ev = density_eigenvalues(rho);
  add("positivity (-min eigenvalue)", std::max(0.0, -ev.front()), 1e-8);

  const double pm = purity_matrix(rho);
  if (pt.params.t_d() == 0.0) add("purity = 1", std::abs(pm - 1.0), 1e-8);
  else if (pt.params.t_d() <= 3.0) add("purity series vs matrix", std::abs(pm - purity_series(pt.params.t_d())), 1e-6);
  return out;
}

}  // namespace

int cmd_validate(const RunConfig& cfg, std::ostream& out) {
  std::vector<Point> pts;
  if (cfg.suite == "desk") {
    const std::pair<double, double> desk[] = {{1.0, 0.5}, {1.0, 1.0}, {0.0, 2.0}, {2.0, 0.0}, {0.5, 2.0}};
    for (const auto& [to, td] : desk) {
      const SimParams p = SimParams::from_dimensionless(to, td);
      pts.push_back(make_point(cfg, p.omega, p.diss, p.time));
    }
  } else if (!cfg.r_d.empty()) {
    for (double r : cfg.r_d)
      for (double t : cfg.times) pts.push_back(make_point(cfg, cfg.omega, 0.5 * r * cfg.omega, t));
  } else {
    pts = make_points(cfg);
  }
  std::vector<Check> checks;
  for (const auto& pt : pts) {
    auto c = validate_point(cfg, pt);
    checks.insert(checks.end(), c.begin(), c.end());
  }
  write_csv_header(out, cfg);
  std::size_t failed = 0;
  for (const auto& c : checks) {
    char line[256];
    std::snprintf(line, sizeof line, "%-4s %-62s measured %.3e  bound %.1e\n", c.pass ? "PASS" : "FAIL", c.name.c_str(),
                  c.measured, c.bound);
    out << line;
    if (!c.pass) ++failed;
  }
  out << (failed == 0 ? "all checks passed" : std::to_string(failed) + " check(s) failed") << "\n";
  return failed == 0 ? 0 : 1;
}

int run_command(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
  try {
    cfg.validate();
    return with_threads(cfg, [&] {
      std::ofstream file;
      std::ostream* dest = &out;
      if (!cfg.out.empty()) {
        file.open(cfg.out);
        if (!file) throw std::runtime_error("cannot open output file " + cfg.out);
        dest = &file;
      }
      const std::string& c = cfg.command;
      if (c == "evolve") return cmd_evolve(cfg, *dest);
      if (c == "measures") return cmd_measures(cfg, *dest);
      if (c == "gqd") return cmd_gqd(cfg, *dest);
      if (c == "wigner") return cmd_wigner(cfg, *dest);
      if (c == "sweep") return cmd_sweep(cfg, *dest);
      return cmd_validate(cfg, *dest);
    });
  } catch (const UsageError& e) {
    err << "usage error: " << e.what() << "\n";
    return 2;
  } catch (const ResourceError& e) {
    err << "resource limit: " << e.what() << "\n";
    return 3;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return 1;
  }
}

}  // namespace dqw::cli
