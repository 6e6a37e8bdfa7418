#include <gtest/gtest.h>

#include <cmath>

#include "cojump/distributions.hpp"
#include "cojump/io.hpp"
#include "cojump/montecarlo.hpp"
#include "cojump/random.hpp"

using namespace cojump;

namespace {

MCReport small_report(const char* id, std::size_t runs, std::size_t threads) {
  MCOptions o;
  o.runs = runs;
  o.threads = threads;
  o.base_seed = 2024;
  o.filter = RunFilter::all;
  return run_scenario(table1_scenario(id), TestConfig{}, o);
}

std::vector<MCRecord> records_with_p(const std::vector<double>& p) {
  std::vector<MCRecord> out(p.size());
  for (std::size_t i = 0; i < p.size(); ++i) {
    out[i].included = out[i].decided = true;
    out[i].p_value = p[i];
    out[i].pit = 1.0 - p[i];
    out[i].reject_05 = p[i] < 0.05;
    out[i].reject_10 = p[i] < 0.10;
  }
  return out;
}

}  // namespace

TEST(RunFilter, Parse) {
  for (RunFilter f : {RunFilter::all, RunFilter::realized_one, RunFilter::realized_detected_one}) {
    EXPECT_EQ(parse_run_filter(to_string(f)), f);
  }
  EXPECT_THROW(parse_run_filter("some"), std::invalid_argument);
}

TEST(Quantiles, Type7) {
  EXPECT_DOUBLE_EQ(empirical_quantile({1, 2, 3, 4}, 0.5), 2.5);
  EXPECT_DOUBLE_EQ(empirical_quantile({4, 1, 3, 2}, 0.0), 1.0);
  EXPECT_DOUBLE_EQ(empirical_quantile({1, 2, 3, 4}, 1.0), 4.0);
  EXPECT_NEAR(empirical_quantile({1, 2, 3, 4, 5}, 0.9), 4.6, 1e-15);
}

TEST(KolmogorovSmirnov, Values) {
  EXPECT_NEAR(ks_uniform({0.5}), 0.5, 1e-15);
  EXPECT_NEAR(ks_uniform({0.1, 0.2}), 0.8, 1e-15);
  std::vector<double> grid;
  for (int i = 0; i < 1000; ++i) grid.push_back((i + 0.5) / 1000.0);
  EXPECT_NEAR(ks_uniform(grid), 0.0005, 1e-12);
}

TEST(Aggregate, DegenerateAndUniform) {
  const std::vector<double> levels{0.01, 0.05, 0.1};
  const auto ones = records_with_p(std::vector<double>(50, 1.0));
  const MCAggregate a = aggregate(ones, TestVariant::chi2, levels);
  EXPECT_EQ(a.included, 50u);
  for (const auto& [lvl, rate] : a.rejection_curve) EXPECT_EQ(rate, 0.0);

  std::vector<double> p;
  for (int i = 0; i < 1000; ++i) p.push_back((i + 0.5) / 1000.0);
  const MCAggregate u = aggregate(records_with_p(p), TestVariant::chi2, levels);
  for (const auto& [lvl, rate] : u.rejection_curve) EXPECT_NEAR(rate, lvl, 1e-12);
  EXPECT_NEAR(u.rejection_05, 0.05, 1e-12);
  EXPECT_NEAR(u.ks_distance, 0.0005, 1e-12);

  MCReport rep;
  rep.scenario = "x";
  rep.records = records_with_p(p);
  rep.records.front().included = false;
  const std::vector<MCReport> reps{rep};
  const auto rows = size_power_table(reps, levels);
  ASSERT_EQ(rows.size(), 3u);
  EXPECT_EQ(rows[0].included, 999u);
  EXPECT_NEAR(rows[1].rate, 49.0 / 999.0, 1e-12);
}

TEST(Histogram, CountsAndEdges) {
  const std::vector<double> v{0.0, 0.1, 0.5, 0.99, 1.0, 1.5, -0.1};
  const auto h = histogram(v, 2, 0.0, 1.0);
  ASSERT_EQ(h.size(), 2u);
  EXPECT_DOUBLE_EQ(h[0].first, 0.25);
  EXPECT_EQ(h[0].second, 2.0);
  EXPECT_EQ(h[1].second, 3.0);
  EXPECT_THROW(histogram(v, 0, 0.0, 1.0), std::invalid_argument);
}

TEST(Kde, IntegratesToOneAndMatchesNormal) {
  RandomStream rng(1, 0);
  std::vector<double> v(4000);
  for (double& x : v) x = rng.normal();
  const double bw = silverman_bandwidth(v);
  EXPECT_GT(bw, 0.1);
  EXPECT_LT(bw, 0.3);
  std::vector<double> pts;
  for (int i = -600; i <= 600; ++i) pts.push_back(i / 100.0);
  const auto d = gaussian_kde(v, pts, bw);
  double mass = 0.0;
  for (const auto& [x, f] : d) mass += f * 0.01;
  EXPECT_NEAR(mass, 1.0, 1e-3);
  EXPECT_NEAR(d[600].second, 1.0 / std::sqrt(2 * M_PI), 0.03);
  EXPECT_THROW(gaussian_kde(v, pts, 0.0), std::invalid_argument);
}

TEST(RunScenario, ReproducibleAndThreadIndependent) {
  const MCReport a = small_report("VIII", 12, 1);
  const MCReport b = small_report("VIII", 12, 1);
  const MCReport c = small_report("VIII", 12, 3);
  EXPECT_EQ(mc_report_json(a), mc_report_json(b));
  EXPECT_EQ(mc_report_json(a), mc_report_json(c));
  for (std::size_t i = 0; i < a.records.size(); ++i) {
    EXPECT_EQ(a.records[i].seed, derive_seed(2024, i));
    EXPECT_EQ(a.records[i].statistic, c.records[i].statistic);
  }
}

TEST(RunScenario, RecordsAreConsistent) {
  const MCReport r = small_report("II", 20, 1);
  ASSERT_EQ(r.records.size(), 20u);
  for (const MCRecord& rec : r.records) {
    EXPECT_LE(rec.matched, rec.realized);
    EXPECT_LE(rec.false_detections, rec.detected);
    EXPECT_EQ(rec.included, rec.decided);
    if (rec.decided) {
      EXPECT_EQ(rec.reject_05, rec.p_value < 0.05);
      EXPECT_NEAR(rec.pit, chi2_cdf(rec.statistic, static_cast<double>(rec.dof)), 1e-12);
    }
  }
  MCOptions bad;
  bad.runs = 0;
  EXPECT_THROW(run_scenario(table1_scenario("II"), TestConfig{}, bad), std::invalid_argument);
}

TEST(RunScenario, FilterRealizedOne) {
  MCOptions o;
  o.runs = 20;
  o.filter = RunFilter::realized_one;
  const MCReport r = run_scenario(table1_scenario("II"), TestConfig{}, o);
  for (const MCRecord& rec : r.records) {
    if (rec.included) EXPECT_EQ(rec.realized, 1u);
  }
}
