#include "cojump/montecarlo.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <exception>
#include <mutex>
#include <numbers>
#include <stdexcept>
#include <thread>

#include "cojump/distributions.hpp"
#include "cojump/random.hpp"

namespace cojump {

std::string_view to_string(RunFilter f) {
  switch (f) {
    case RunFilter::all: return "all";
    case RunFilter::realized_one: return "realized_one";
    case RunFilter::realized_detected_one: return "realized_detected_one";
  }
  return "?";
}

RunFilter parse_run_filter(std::string_view s) {
  if (s == "all") return RunFilter::all;
  if (s == "realized_one") return RunFilter::realized_one;
  if (s == "realized_detected_one") return RunFilter::realized_detected_one;
  throw std::invalid_argument("unknown run filter '" + std::string(s) + "'");
}

namespace {

bool passes(RunFilter f, std::size_t realized, std::size_t detected) {
  switch (f) {
    case RunFilter::all: return true;
    case RunFilter::realized_one: return realized == 1;
    case RunFilter::realized_detected_one: return realized == 1 && detected == 1;
  }
  return false;
}

}  // namespace

MCRecord run_once(const ScenarioConfig& sim, const AnalysisConfig& analysis,
                  const MCOptions& opts, std::size_t run) {
  ScenarioConfig cfg = sim;
  cfg.seed = derive_seed(opts.base_seed, run);
  const SimulatedPath path = simulate(cfg);
  const Analysis a = analyze(path.y, analysis);
  const BinGrid& grid = a.spot.grid;

  MCRecord rec;
  rec.run = run;
  rec.seed = cfg.seed;
  rec.realized = path.price_jumps.size();
  rec.detected = a.events.size();
  std::vector<bool> event_hit(a.events.size(), false);
  for (const JumpRecord& j : path.price_jumps) {
    const std::size_t bin = grid.bin_of_return(j.index);
    bool found = false;
    for (std::size_t e = 0; e < a.events.size(); ++e) {
      if (bin >= a.events[e].first_bin && bin <= a.events[e].last_bin) {
        event_hit[e] = true;
        found = true;
      }
    }
    if (found) ++rec.matched;
  }
  rec.false_detections =
      static_cast<std::size_t>(std::count(event_hit.begin(), event_hit.end(), false));

  const CoJumpReport& r = a.report;
  rec.decided = r.decided;
  rec.statistic = r.statistic;
  rec.dof = r.dof;
  rec.p_value = r.p_value;
  if (r.decided) {
    if (r.variant == TestVariant::naive) {
      rec.pit = normal_cdf(r.statistic);
    } else if (r.variant == TestVariant::chi2) {
      rec.pit = chi2_cdf(r.statistic, static_cast<double>(r.dof));
    } else {
      rec.pit = 1.0 - r.p_value;
    }
  }
  rec.reject_05 = r.decided && r.p_value < 0.05;
  rec.reject_10 = r.decided && r.p_value < 0.10;
  rec.included = r.decided && passes(opts.filter, rec.realized, rec.detected);
  return rec;
}

double ks_uniform(std::vector<double> u) {
  if (u.empty()) return 0.0;
  std::sort(u.begin(), u.end());
  const double m = static_cast<double>(u.size());
  double d = 0.0;
  for (std::size_t i = 0; i < u.size(); ++i) {
    const double x = std::clamp(u[i], 0.0, 1.0);
    d = std::max(d, std::max(static_cast<double>(i + 1) / m - x, x - static_cast<double>(i) / m));
  }
  return d;
}

double empirical_quantile(std::vector<double> values, double p) {
  if (values.empty()) throw std::invalid_argument("empirical_quantile: no values");
  if (!(p >= 0.0 && p <= 1.0)) throw std::invalid_argument("empirical_quantile: p outside [0,1]");
  std::sort(values.begin(), values.end());
  const double pos = p * static_cast<double>(values.size() - 1);
  const auto lo = static_cast<std::size_t>(std::floor(pos));
  const std::size_t hi = std::min(lo + 1, values.size() - 1);
  return values[lo] + (pos - static_cast<double>(lo)) * (values[hi] - values[lo]);
}

MCAggregate aggregate(std::span<const MCRecord> records, TestVariant variant,
                      std::span<const double> levels) {
  (void)variant;
  MCAggregate agg;
  std::vector<double> pits;
  std::vector<double> stats;
  std::vector<double> pvals;
  std::size_t matched = 0;
  std::size_t false_det = 0;
  for (const MCRecord& r : records) {
    agg.total_realized += r.realized;
    matched += r.matched;
    false_det += r.false_detections;
    if (!r.included) continue;
    ++agg.included;
    pits.push_back(r.pit);
    stats.push_back(r.statistic);
    pvals.push_back(r.p_value);
    agg.rejection_05 += r.reject_05 ? 1.0 : 0.0;
    agg.rejection_10 += r.reject_10 ? 1.0 : 0.0;
  }
  if (agg.total_realized > 0) {
    agg.detection_rate =
        static_cast<double>(matched) / static_cast<double>(agg.total_realized);
  }
  if (!records.empty()) {
    agg.mean_false_detections =
        static_cast<double>(false_det) / static_cast<double>(records.size());
  }
  if (agg.included == 0) return agg;
  const double m = static_cast<double>(agg.included);
  agg.rejection_05 /= m;
  agg.rejection_10 /= m;
  agg.ks_distance = ks_uniform(pits);
  for (double p : {0.9, 0.95, 0.99}) agg.quantiles.emplace_back(p, empirical_quantile(stats, p));
  for (double level : levels) {
    const auto hits = std::count_if(pvals.begin(), pvals.end(),
                                    [level](double p) { return p < level; });
    agg.rejection_curve.emplace_back(level, static_cast<double>(hits) / m);
  }
  return agg;
}

MCReport run_scenario(const std::string& id, const ScenarioConfig& sim,
                      const AnalysisConfig& analysis, const MCOptions& opts) {
  if (opts.runs < 1) throw std::invalid_argument("monte carlo: runs must be >= 1");
  sim.validate();
  analysis.validate(sim.n);
  const auto start = std::chrono::steady_clock::now();

  MCReport report{id, sim, analysis, opts, std::vector<MCRecord>(opts.runs), {}, 0.0};
  std::atomic<std::size_t> next{0};
  std::exception_ptr failure;
  std::mutex failure_mutex;
  auto worker = [&] {
    for (std::size_t r = next++; r < opts.runs; r = next++) {
      try {
        report.records[r] = run_once(sim, analysis, opts, r);
      } catch (...) {
        std::lock_guard lock(failure_mutex);
        if (!failure) failure = std::current_exception();
        next = opts.runs;
      }
    }
  };
  const std::size_t n_threads = std::clamp<std::size_t>(opts.threads, 1, opts.runs);
  if (n_threads == 1) {
    worker();
  } else {
    std::vector<std::jthread> pool;
    for (std::size_t t = 0; t < n_threads; ++t) pool.emplace_back(worker);
  }
  if (failure) std::rethrow_exception(failure);

  report.aggregate = aggregate(report.records, analysis.test.variant, opts.levels);
  report.runtime_seconds =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  return report;
}

MCReport run_scenario(const Scenario& scenario, const TestConfig& test, const MCOptions& opts) {
  AnalysisConfig analysis = analysis_config(scenario.est);
  analysis.test = test;
  return run_scenario(scenario.id, scenario.sim, analysis, opts);
}

std::vector<SizePowerRow> size_power_table(std::span<const MCReport> reports,
                                           std::span<const double> levels) {
  std::vector<SizePowerRow> rows;
  for (const MCReport& rep : reports) {
    std::size_t included = 0;
    for (const MCRecord& r : rep.records) included += r.included ? 1 : 0;
    for (double level : levels) {
      std::size_t hits = 0;
      for (const MCRecord& r : rep.records) {
        if (r.included && r.p_value < level) ++hits;
      }
      const double rate =
          included == 0 ? 0.0 : static_cast<double>(hits) / static_cast<double>(included);
      rows.push_back({rep.scenario, level, rate, included});
    }
  }
  return rows;
}

std::vector<std::pair<double, double>> histogram(std::span<const double> values,
                                                 std::size_t bins, double lo, double hi) {
  if (bins == 0 || !(hi > lo)) throw std::invalid_argument("histogram: need bins > 0 and hi > lo");
  const double width = (hi - lo) / static_cast<double>(bins);
  std::vector<std::pair<double, double>> out(bins);
  for (std::size_t b = 0; b < bins; ++b) {
    out[b] = {lo + (static_cast<double>(b) + 0.5) * width, 0.0};
  }
  for (double v : values) {
    if (v < lo || v > hi) continue;
    auto b = static_cast<std::size_t>((v - lo) / width);
    out[std::min(b, bins - 1)].second += 1.0;
  }
  return out;
}

double silverman_bandwidth(std::span<const double> values) {
  if (values.size() < 2) throw std::invalid_argument("silverman_bandwidth: need >= 2 values");
  const double m = static_cast<double>(values.size());
  double mean = 0.0;
  for (double v : values) mean += v;
  mean /= m;
  double ss = 0.0;
  for (double v : values) ss += (v - mean) * (v - mean);
  const double sd = std::sqrt(ss / (m - 1.0));
  std::vector<double> copy(values.begin(), values.end());
  const double iqr = empirical_quantile(copy, 0.75) - empirical_quantile(copy, 0.25);
  double spread = sd;
  if (iqr > 0.0) spread = std::min(sd, iqr / 1.34);
  return 0.9 * spread * std::pow(m, -0.2);
}

std::vector<std::pair<double, double>> gaussian_kde(std::span<const double> values,
                                                    std::span<const double> points,
                                                    double bandwidth) {
  if (!(bandwidth > 0.0)) throw std::invalid_argument("gaussian_kde: bandwidth must be > 0");
  const double norm = 1.0 / (static_cast<double>(values.size()) * bandwidth *
                             std::sqrt(2.0 * std::numbers::pi));
  std::vector<std::pair<double, double>> out;
  out.reserve(points.size());
  for (double x : points) {
    double s = 0.0;
    for (double v : values) {
      const double z = (x - v) / bandwidth;
      s += std::exp(-0.5 * z * z);
    }
    out.emplace_back(x, values.empty() ? 0.0 : s * norm);
  }
  return out;
}

std::vector<double> included_statistics(const MCReport& report) {
  std::vector<double> out;
  for (const MCRecord& r : report.records) {
    if (r.included) out.push_back(r.statistic);
  }
  return out;
}

}  // namespace cojump
