#include "cojump/io.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <iomanip>
#include <limits>
#include <sstream>

#include <json.hpp>

#include "cojump/distributions.hpp"

namespace cojump {

using nlohmann::json;

namespace {

std::string_view trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t\r\n");
  if (first == std::string_view::npos) return {};
  const auto last = s.find_last_not_of(" \t\r\n");
  return s.substr(first, last - first + 1);
}

bool parse_double(std::string_view s, double& out) {
  s = trim(s);
  if (s.empty()) return false;
  if (s.front() == '+') s.remove_prefix(1);
  const auto res = std::from_chars(s.data(), s.data() + s.size(), out);
  return res.ec == std::errc() && res.ptr == s.data() + s.size();
}

int parse_int(std::string_view s) {
  int v = 0;
  const auto res = std::from_chars(s.data(), s.data() + s.size(), v);
  if (res.ec != std::errc() || res.ptr != s.data() + s.size()) {
    throw std::invalid_argument("bad integer field '" + std::string(s) + "'");
  }
  return v;
}

// HH:MM:SS(.fff) with an optional trailing Z or +hh:mm / -hh:mm.
double parse_clock(std::string_view s) {
  if (!s.empty() && (s.back() == 'Z' || s.back() == 'z')) s.remove_suffix(1);
  const auto sign = s.find_first_of("+-");
  if (sign != std::string_view::npos) s = s.substr(0, sign);
  if (s.size() < 8 || s[2] != ':' || s[5] != ':') {
    throw std::invalid_argument("bad time of day '" + std::string(s) + "'");
  }
  const int hh = parse_int(s.substr(0, 2));
  const int mm = parse_int(s.substr(3, 2));
  double ss = 0.0;
  if (!parse_double(s.substr(6), ss)) {
    throw std::invalid_argument("bad seconds field '" + std::string(s) + "'");
  }
  if (hh > 24 || mm > 59 || ss < 0.0 || ss >= 61.0) {
    throw std::invalid_argument("time of day out of range '" + std::string(s) + "'");
  }
  return 3600.0 * hh + 60.0 * mm + ss;
}

json jump_list(const std::vector<JumpRecord>& jumps) {
  json arr = json::array();
  for (const JumpRecord& j : jumps) {
    arr.push_back({{"time", j.time}, {"index", j.index}, {"size", j.size}});
  }
  return arr;
}

json optional_number(const std::optional<double>& v) {
  return v ? json(*v) : json(nullptr);
}

json config_object(const AnalysisConfig& cfg) {
  json j;
  j["h_inv"] = cfg.h_inv;
  j["j_max"] = cfg.spectral.j_max;
  j["j_max_pilot"] = cfg.spectral.j_max_pilot;
  j["r_inv"] = cfg.spot.r_inv;
  j["r_inv_pilot"] = cfg.spot.r_inv_pilot;
  j["threshold"] = cfg.spot.threshold == ThresholdMode::global ? "global" : "adaptive";
  j["trunc_const"] = optional_number(cfg.spot.trunc_const);
  j["tau"] = cfg.spot.tau;
  j["min_jump"] = cfg.spot.a_min_jump;
  j["pilot_floor_fraction"] = cfg.spot.pilot_floor_fraction;
  j["exclude_edges"] = cfg.jumps.exclude_edges;
  j["group_gap"] = cfg.jumps.gap(cfg.spot);
  j["level"] = cfg.test.level;
  j["variant"] = to_string(cfg.test.variant);
  j["normalization"] = to_string(cfg.test.normalization);
  if (cfg.time_range) {
    j["time_range"] = {cfg.time_range->first, cfg.time_range->second};
  } else {
    j["time_range"] = nullptr;
  }
  return j;
}

json scenario_object(const ScenarioConfig& c) {
  return {{"n", c.n},
          {"lambda", c.lambda},
          {"H", c.H},
          {"eta", c.eta},
          {"gamma", c.gamma},
          {"model", to_string(c.model)},
          {"rho", c.rho},
          {"half_jump_thinning", c.half_jump_thinning},
          {"seed", c.seed},
          {"mean_reversion", c.mean_reversion},
          {"vol_of_vol", c.vol_of_vol},
          {"vol_jump_rate", c.vol_jump_rate},
          {"c0", c.c0},
          {"x0", c.x0},
          {"noise_variance_override", optional_number(c.noise_variance_override)}};
}

json event_object(const JumpEvent& e) {
  return {{"first_bin", e.first_bin},   {"last_bin", e.last_bin},
          {"time", e.time},             {"zeta_value", e.zeta_value},
          {"threshold", e.threshold_used}, {"grouped", e.grouped}};
}

json report_object(const CoJumpReport& r) {
  json j;
  j["variant"] = to_string(r.variant);
  j["normalization"] = to_string(r.normalization);
  j["level"] = r.level;
  j["n_jumps"] = r.n_jumps;
  j["decided"] = r.decided;
  j["statistic"] = r.statistic;
  j["dof"] = r.dof;
  j["p_value"] = r.p_value;
  j["critical_value"] = r.critical_value;
  j["reject"] = r.reject;
  j["normalization_factor"] = r.normalization_factor;
  json rows = json::array();
  for (const PerJumpResult& p : r.per_jump) {
    rows.push_back({{"event", event_object(p.event)},
                    {"available", p.available},
                    {"c_right", p.c_right},
                    {"c_left", p.c_left},
                    {"fisher_right", p.fisher_right},
                    {"fisher_left", p.fisher_left},
                    {"window_right", p.window_right},
                    {"window_left", p.window_left},
                    {"g", p.g_value},
                    {"statistic", p.statistic},
                    {"p_value", p.p_value},
                    {"reject", p.reject}});
  }
  j["per_jump"] = rows;
  j["warnings"] = r.warnings;
  return j;
}

std::string dump(const json& j) { return j.dump(2) + "\n"; }

void set_precision(std::ostream& out) {
  out << std::setprecision(std::numeric_limits<double>::max_digits10);
}

}  // namespace

double parse_timestamp(std::string_view text) {
  const std::string_view s = trim(text);
  double v = 0.0;
  if (parse_double(s, v)) {
    if (!std::isfinite(v)) throw std::invalid_argument("non-finite timestamp");
    return v;
  }
  const auto sep = s.find_first_of("Tt ");
  if (sep != std::string_view::npos) {
    const std::string_view date = s.substr(0, sep);
    if (date.size() != 10 || date[4] != '-' || date[7] != '-') {
      throw std::invalid_argument("bad date '" + std::string(date) + "'");
    }
    return parse_clock(trim(s.substr(sep + 1)));
  }
  return parse_clock(s);
}

TickSeries read_ticks_csv(std::istream& in, const std::string& source) {
  std::string line;
  std::size_t line_no = 0;
  auto fail = [&](const std::string& what) {
    throw DataError(source + ":" + std::to_string(line_no) + ": " + what);
  };
  bool header_seen = false;
  std::vector<double> ts;
  std::vector<double> px;
  while (std::getline(in, line)) {
    ++line_no;
    const std::string_view row = trim(line);
    if (row.empty() || row.front() == '#') continue;
    const auto comma = row.find(',');
    if (comma == std::string_view::npos || row.find(',', comma + 1) != std::string_view::npos) {
      fail("expected two comma-separated fields");
    }
    const std::string_view a = trim(row.substr(0, comma));
    const std::string_view b = trim(row.substr(comma + 1));
    if (!header_seen) {
      if (a != "timestamp" || b != "price") fail("expected header 'timestamp,price'");
      header_seen = true;
      continue;
    }
    double t = 0.0;
    try {
      t = parse_timestamp(a);
    } catch (const std::invalid_argument& e) {
      fail(e.what());
    }
    double p = 0.0;
    if (!parse_double(b, p)) fail("bad price '" + std::string(b) + "'");
    if (!(p > 0.0) || !std::isfinite(p)) fail("price must be positive and finite");
    if (!ts.empty() && t < ts.back()) fail("timestamps must be non-decreasing");
    ts.push_back(t);
    px.push_back(p);
  }
  if (!header_seen) throw DataError(source + ": empty input, expected header 'timestamp,price'");
  if (ts.size() < 2) throw DataError(source + ": need at least two ticks");
  try {
    return TickSeries(std::move(ts), std::move(px));
  } catch (const std::invalid_argument& e) {
    throw DataError(source + ": " + e.what());
  }
}

TickSeries read_ticks_csv(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw DataError("cannot open '" + path.string() + "'");
  return read_ticks_csv(in, path.string());
}

void write_ticks_csv(std::ostream& out, const NoisyPath& path) {
  set_precision(out);
  out << "timestamp,price\n";
  const double n = static_cast<double>(path.n());
  for (std::size_t i = 0; i <= path.n(); ++i) {
    out << 34200.0 + 23400.0 * static_cast<double>(i) / n << ',' << std::exp(path[i]) << '\n';
  }
}

void write_ticks_csv(const std::filesystem::path& path, const NoisyPath& path_data) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write '" + path.string() + "'");
  write_ticks_csv(out, path_data);
}

void write_spot_csv(std::ostream& out, const SpotVolPath& spot, double level) {
  set_precision(out);
  const double z = normal_quantile(0.5 * (1.0 + level));
  out << "bin,time,c_right,c_left,combined,ci_low,ci_high,truncated\n";
  auto field = [&](bool ok, double v) {
    if (ok) out << v;
  };
  for (std::size_t k = 0; k < spot.anchors.size(); ++k) {
    const SpotEstimate& a = spot.anchors[k];
    const auto c = a.combined();
    const auto se = a.combined_se();
    out << k << ',' << spot.time(k) << ',';
    field(a.right.available, a.right.c);
    out << ',';
    field(a.left.available, a.left.c);
    out << ',';
    field(c.has_value(), c.value_or(0.0));
    out << ',';
    field(c && se, c.value_or(0.0) - z * se.value_or(0.0));
    out << ',';
    field(c && se, c.value_or(0.0) + z * se.value_or(0.0));
    out << ',' << (spot.bins[k].truncated ? 1 : 0) << '\n';
  }
}

void write_pairs_csv(std::ostream& out, std::string_view x_name, std::string_view y_name,
                     const std::vector<std::pair<double, double>>& rows) {
  set_precision(out);
  out << x_name << ',' << y_name << '\n';
  for (const auto& [x, y] : rows) out << x << ',' << y << '\n';
}

void write_mc_records_csv(std::ostream& out, const MCReport& report) {
  set_precision(out);
  out << "run,seed,realized,detected,matched,false_detections,included,decided,statistic,dof,"
         "p_value,pit,reject_05,reject_10\n";
  for (const MCRecord& r : report.records) {
    out << r.run << ',' << r.seed << ',' << r.realized << ',' << r.detected << ',' << r.matched
        << ',' << r.false_detections << ',' << r.included << ',' << r.decided << ','
        << r.statistic << ',' << r.dof << ',' << r.p_value << ',' << r.pit << ','
        << r.reject_05 << ',' << r.reject_10 << '\n';
  }
}

void write_size_power_csv(std::ostream& out, const std::vector<SizePowerRow>& rows) {
  set_precision(out);
  out << "scenario,level,rate,included\n";
  for (const SizePowerRow& r : rows) {
    out << r.scenario << ',' << r.level << ',' << r.rate << ',' << r.included << '\n';
  }
}

std::string config_json(const AnalysisConfig& cfg) { return dump(config_object(cfg)); }

std::string scenario_json(const ScenarioConfig& cfg) { return dump(scenario_object(cfg)); }

std::string estimate_json(const Analysis& a, const AnalysisConfig& cfg) {
  std::size_t truncated = 0;
  for (const BinStage& b : a.spot.bins) truncated += b.truncated ? 1 : 0;
  json j;
  j["schema_version"] = kSchemaVersion;
  j["n"] = a.spot.grid.n();
  j["eta_hat"] = a.spot.eta_hat;
  j["integrated_variance"] = a.integrated_variance;
  j["truncated_bins"] = truncated;
  json events = json::array();
  for (const JumpEvent& e : a.events) events.push_back(event_object(e));
  j["jumps"] = events;
  j["config"] = config_object(cfg);
  return dump(j);
}

std::string report_json(const CoJumpReport& report, const AnalysisConfig& cfg) {
  json j = report_object(report);
  j["schema_version"] = kSchemaVersion;
  j["config"] = config_object(cfg);
  return dump(j);
}

std::string mc_report_json(const MCReport& report, bool include_runtime) {
  json j;
  j["schema_version"] = kSchemaVersion;
  j["scenario"] = report.scenario;
  j["simulation"] = scenario_object(report.sim);
  j["config"] = config_object(report.analysis);
  j["runs"] = report.options.runs;
  j["base_seed"] = report.options.base_seed;
  j["filter"] = to_string(report.options.filter);
  const MCAggregate& a = report.aggregate;
  json agg;
  agg["included"] = a.included;
  agg["rejection_05"] = a.rejection_05;
  agg["rejection_10"] = a.rejection_10;
  agg["ks_distance"] = a.ks_distance;
  agg["detection_rate"] = a.detection_rate;
  agg["mean_false_detections"] = a.mean_false_detections;
  agg["total_realized"] = a.total_realized;
  json q = json::array();
  for (const auto& [p, v] : a.quantiles) q.push_back({{"p", p}, {"value", v}});
  agg["quantiles"] = q;
  json curve = json::array();
  for (const auto& [l, r] : a.rejection_curve) curve.push_back({{"level", l}, {"rate", r}});
  agg["rejection_curve"] = curve;
  j["aggregate"] = agg;
  json recs = json::array();
  for (const MCRecord& r : report.records) {
    recs.push_back({{"run", r.run},
                    {"seed", r.seed},
                    {"realized", r.realized},
                    {"detected", r.detected},
                    {"matched", r.matched},
                    {"false_detections", r.false_detections},
                    {"included", r.included},
                    {"decided", r.decided},
                    {"statistic", r.statistic},
                    {"dof", r.dof},
                    {"p_value", r.p_value},
                    {"pit", r.pit},
                    {"reject_05", r.reject_05},
                    {"reject_10", r.reject_10}});
  }
  j["records"] = recs;
  if (include_runtime) j["runtime_seconds"] = report.runtime_seconds;
  return dump(j);
}

std::string ground_truth_json(const SimulatedPath& path, const ScenarioConfig& cfg) {
  json j;
  j["schema_version"] = kSchemaVersion;
  j["simulation"] = scenario_object(cfg);
  j["n"] = path.y.n();
  j["noise_variance"] = path.noise_variance;
  j["price_jumps"] = jump_list(path.price_jumps);
  j["vol_jumps"] = jump_list(path.vol_jumps);
  double qv = 0.0;
  for (std::size_t i = 1; i < path.c_path.size(); ++i) {
    qv += 0.5 * (path.c_path[i - 1] + path.c_path[i]) / static_cast<double>(path.y.n());
  }
  j["integrated_variance"] = qv;
  return dump(j);
}

std::string report_summary(const CoJumpReport& r) {
  std::ostringstream os;
  os << "test: " << to_string(r.variant) << " (normalization " << to_string(r.normalization)
     << ", level " << r.level << ")\n";
  if (!r.decided) {
    os << "no jumps: nothing to test\n";
  } else {
    os << "jumps tested: " << r.n_jumps << "\n"
       << "statistic: " << r.statistic << "  dof: " << r.dof << "\n"
       << "p-value: " << r.p_value << "\n"
       << "decision: " << (r.reject ? "reject" : "do not reject")
       << " no-common-jump hypothesis\n";
    for (const PerJumpResult& p : r.per_jump) {
      os << "  jump at t=" << p.event.time << " bins " << p.event.first_bin << "-"
         << p.event.last_bin << ": c_left=" << p.c_left << " c_right=" << p.c_right;
      if (p.available) os << " stat=" << p.statistic << " p=" << p.p_value;
      os << "\n";
    }
  }
  for (const std::string& w : r.warnings) os << "warning: " << w << "\n";
  return os.str();
}

void write_text(const std::filesystem::path& path, std::string_view text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write '" + path.string() + "'");
  out << text;
}

}  // namespace cojump
