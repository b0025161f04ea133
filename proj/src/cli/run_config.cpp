#include "dqw/cli/run_config.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <sstream>

namespace dqw::cli {

namespace {

std::string_view trim(std::string_view s) {
  const auto b = s.find_first_not_of(" \t\r\n");
  if (b == std::string_view::npos) return {};
  const auto e = s.find_last_not_of(" \t\r\n");
  return s.substr(b, e - b + 1);
}

double parse_real(std::string_view text, std::string_view what) {
  const std::string s(trim(text));
  try {
    std::size_t used = 0;
    const double v = std::stod(s, &used);
    if (used != s.size() || !std::isfinite(v)) throw std::invalid_argument(s);
    return v;
  } catch (const std::exception&) {
    throw UsageError("invalid number for " + std::string(what) + ": '" + s + "'");
  }
}

int parse_int(std::string_view text, std::string_view what) {
  const std::string_view s = trim(text);
  int v = 0;
  const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc() || ptr != s.data() + s.size())
    throw UsageError("invalid integer for " + std::string(what) + ": '" + std::string(s) + "'");
  return v;
}

bool parse_bool(std::string_view text, std::string_view what) {
  const std::string_view s = trim(text);
  if (s == "true" || s == "1" || s == "yes") return true;
  if (s == "false" || s == "0" || s == "no") return false;
  throw UsageError("invalid boolean for " + std::string(what) + ": '" + std::string(s) + "'");
}

std::string fmt_real(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

std::string fmt_list(const std::vector<double>& v) {
  std::string s;
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (i) s += ",";
    s += fmt_real(v[i]);
  }
  return s;
}

constexpr const char* kCommands[] = {"evolve", "measures", "gqd", "wigner", "sweep", "validate"};

}  // namespace

void RunConfig::validate() const {
  if (std::find(std::begin(kCommands), std::end(kCommands), command) == std::end(kCommands))
    throw UsageError("unknown command '" + command + "'");
  if (!(omega >= 0.0) || !(diss >= 0.0)) throw UsageError("omega and diss must be >= 0");
  if (times.empty()) throw UsageError("at least one time point is required");
  for (std::size_t i = 0; i < times.size(); ++i) {
    if (!(times[i] >= 0.0)) throw UsageError("times must be >= 0");
    if (i > 0 && times[i] < times[i - 1]) throw UsageError("times must be sorted");
  }
  if (!(tol > 0.0 && tol <= 1e-2)) throw UsageError("tol must lie in (0, 1e-2]");
  if (window < 0) throw UsageError("window must be >= 0");
  if (threads < 0) throw UsageError("threads must be >= 0");
  if (s_max < 0) throw UsageError("s-max must be >= 0");
  if (k_points < 2) throw UsageError("k-points must be >= 2");
  if (!format.empty() && format != "csv" && format != "json") throw UsageError("format must be csv or json");
  for (double r : r_d)
    if (!(r >= 0.0)) throw UsageError("r-d values must be >= 0");
  if (command == "sweep" && !r_d.empty() && !(omega > 0.0)) throw UsageError("r-d sweep requires omega > 0");
  if (full && times.size() != 1) throw UsageError("full matrix output needs exactly one time point");
}

std::string RunConfig::resolved_format() const {
  if (!format.empty()) return format;
  return (command == "evolve" || command == "wigner") ? "json" : "csv";
}

std::vector<double> parse_list(std::string_view text) {
  std::vector<double> out;
  std::string_view rest = text;
  while (true) {
    const auto comma = rest.find(',');
    const std::string_view item = trim(rest.substr(0, comma));
    if (item.empty()) throw UsageError("empty entry in list '" + std::string(text) + "'");
    out.push_back(parse_real(item, "list"));
    if (comma == std::string_view::npos) break;
    rest = rest.substr(comma + 1);
  }
  return out;
}

std::vector<double> parse_time_range(std::string_view text) {
  std::vector<std::string_view> parts;
  std::string_view rest = text;
  while (true) {
    const auto c = rest.find(':');
    parts.push_back(rest.substr(0, c));
    if (c == std::string_view::npos) break;
    rest = rest.substr(c + 1);
  }
  if (parts.size() != 3) throw UsageError("time range must be start:stop:step");
  const double start = parse_real(parts[0], "t-range start");
  const double stop = parse_real(parts[1], "t-range stop");
  const double step = parse_real(parts[2], "t-range step");
  if (!(step > 0.0) || stop < start) throw UsageError("time range needs step > 0 and stop >= start");
  const long n = std::lround(std::floor((stop - start) / step + 1e-9));
  if (n > 100000) throw UsageError("time range has too many points");
  std::vector<double> out;
  for (long i = 0; i <= n; ++i) out.push_back(start + static_cast<double>(i) * step);
  return out;
}

void apply_setting(RunConfig& cfg, std::string_view key, std::string_view value) {
  const std::string k(trim(key));
  if (k == "command") cfg.command = std::string(trim(value));
  else if (k == "omega") cfg.omega = parse_real(value, k);
  else if (k == "diss") cfg.diss = parse_real(value, k);
  else if (k == "t") cfg.times = parse_list(value);
  else if (k == "t-range") cfg.times = parse_time_range(value);
  else if (k == "tol") cfg.tol = parse_real(value, k);
  else if (k == "window") cfg.window = parse_int(value, k);
  else if (k == "format") cfg.format = std::string(trim(value));
  else if (k == "out") cfg.out = std::string(trim(value));
  else if (k == "threads") cfg.threads = parse_int(value, k);
  else if (k == "s-max") cfg.s_max = parse_int(value, k);
  else if (k == "k-points") cfg.k_points = parse_int(value, k);
  else if (k == "delta-k") {
    if (trim(value) == "none") cfg.delta_k.reset();
    else cfg.delta_k = parse_real(value, k);
  } else if (k == "r-d") {
    if (trim(value) == "none") cfg.r_d.clear();
    else cfg.r_d = parse_list(value);
  } else if (k == "full") cfg.full = parse_bool(value, k);
  else if (k == "suite") {
    const std::string v(trim(value));
    if (v != "desk" && v != "point") throw UsageError("suite must be desk or point");
    cfg.suite = v;
  }
  else throw UsageError("unknown configuration key '" + k + "'");
}

bool is_point_key(std::string_view key) {
  const std::string_view k = trim(key);
  return k == "omega" || k == "diss" || k == "t" || k == "t-range" || k == "r-d";
}

RunConfig parse_config_text(std::string_view text, RunConfig base) {
  std::istringstream in{std::string(text)};
  std::string line;
  int lineno = 0;
  bool point = false, suite = false;
  while (std::getline(in, line)) {
    ++lineno;
    const std::string_view l = trim(line);
    if (l.empty() || l.front() == '#') continue;
    const auto eq = l.find('=');
    if (eq == std::string_view::npos)
      throw UsageError("config line " + std::to_string(lineno) + " lacks '=': " + std::string(l));
    const std::string_view key = trim(l.substr(0, eq));
    apply_setting(base, key, l.substr(eq + 1));
    point = point || is_point_key(key);
    suite = suite || key == "suite";
  }
  if (point && !suite) base.suite = "point";
  return base;
}

std::string dump_config(const RunConfig& cfg) {
  std::ostringstream o;
  o << "command = " << cfg.command << "\n";
  o << "omega = " << fmt_real(cfg.omega) << "\n";
  o << "diss = " << fmt_real(cfg.diss) << "\n";
  o << "t = " << fmt_list(cfg.times) << "\n";
  o << "tol = " << fmt_real(cfg.tol) << "\n";
  o << "window = " << cfg.window << "\n";
  o << "format = " << cfg.resolved_format() << "\n";
  o << "s-max = " << cfg.s_max << "\n";
  o << "k-points = " << cfg.k_points << "\n";
  o << "delta-k = " << (cfg.delta_k ? fmt_real(*cfg.delta_k) : std::string("none")) << "\n";
  o << "r-d = " << (cfg.r_d.empty() ? std::string("none") : fmt_list(cfg.r_d)) << "\n";
  o << "full = " << (cfg.full ? "true" : "false") << "\n";
  o << "suite = " << cfg.suite << "\n";
  return o.str();
}

RunConfig config_from_csv_header(std::string_view csv) {
  std::istringstream in{std::string(csv)};
  std::string line, body;
  while (std::getline(in, line)) {
    if (line.rfind("# ", 0) != 0) break;
    const std::string_view l = std::string_view(line).substr(2);
    if (l.find('=') != std::string_view::npos) body += std::string(l) + "\n";
  }
  return parse_config_text(body);
}

}  // namespace dqw::cli
