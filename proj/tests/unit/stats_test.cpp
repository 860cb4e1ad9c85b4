#include "lexalign/stats.hpp"

#include <cmath>
#include <fstream>
#include <numeric>
#include <random>

#include <gtest/gtest.h>
#include <json.hpp>

#include "fixtures.hpp"
#include "lexalign/distributions.hpp"
#include "lexalign/error.hpp"

namespace lexalign::stats {
namespace {

using nlohmann::json;

const json& reference() {
  static const json j = [] {
    std::ifstream in(testing::data_path("stats_reference.json"));
    return json::parse(in);
  }();
  return j;
}

StudyRecord record(Condition c, std::optional<double> er, double rapport) {
  StudyRecord r;
  r.condition = c;
  r.rapport = rapport;
  r.alignment.er_student = er;
  return r;
}

double mean(const std::vector<double>& v) {
  return std::accumulate(v.begin(), v.end(), 0.0) / static_cast<double>(v.size());
}

// --- reference fixtures ----------------------------------------------------

TEST(StatsReference, Anova) {
  ASSERT_GE(reference()["anova"].size(), 20u);
  for (const auto& fx : reference()["anova"]) {
    const auto groups = fx["groups"].get<std::vector<std::vector<double>>>();
    const auto res = anova_oneway(groups);
    EXPECT_NEAR(res.f, fx["f"].get<double>(), 1e-6 * std::max(1.0, fx["f"].get<double>()));
    EXPECT_NEAR(res.p, fx["p"].get<double>(), 1e-6);
  }
}

TEST(StatsReference, Pearson) {
  ASSERT_GE(reference()["pearson"].size(), 20u);
  for (const auto& fx : reference()["pearson"]) {
    const auto x = fx["x"].get<std::vector<double>>();
    const auto y = fx["y"].get<std::vector<double>>();
    const auto res = pearson(x, y);
    EXPECT_NEAR(res.r, fx["r"].get<double>(), 1e-6);
    EXPECT_NEAR(res.p, fx["p"].get<double>(), 1e-6);
    EXPECT_EQ(res.n, x.size());
  }
}

TEST(StatsReference, Fisher) {
  ASSERT_GE(reference()["fisher"].size(), 20u);
  for (const auto& fx : reference()["fisher"]) {
    const auto res = fisher_compare(fx["r1"], fx["n1"], fx["r2"], fx["n2"]);
    EXPECT_NEAR(res.z, fx["z"].get<double>(), 1e-6);
    EXPECT_NEAR(res.p, fx["p"].get<double>(), 1e-6);
  }
}

TEST(StatsReference, Interaction) {
  ASSERT_GE(reference()["interaction"].size(), 20u);
  for (const auto& fx : reference()["interaction"]) {
    const auto hhr = fx["hhr"].get<std::vector<int>>();
    const auto a = fx["measure"].get<std::vector<double>>();
    const auto r = fx["rapport"].get<std::vector<double>>();
    std::vector<StudyRecord> records;
    for (std::size_t i = 0; i < hhr.size(); ++i) {
      records.push_back(record(hhr[i] ? Condition::hhr : Condition::hr, a[i], r[i]));
    }
    const auto res = ols_interaction(records, MeasureKind::er_student);
    const auto beta = fx["beta"].get<std::vector<double>>();
    const auto se = fx["std_err"].get<std::vector<double>>();
    const auto p = fx["p"].get<std::vector<double>>();
    for (int k = 0; k < 4; ++k) {
      EXPECT_NEAR(res.beta[k], beta[k], 1e-6);
      EXPECT_NEAR(res.std_err[k], se[k], 1e-6);
      EXPECT_NEAR(res.p[k], p[k], 1e-6);
    }
  }
}

TEST(StatsReference, Cronbach) {
  ASSERT_GE(reference()["cronbach"].size(), 20u);
  for (const auto& fx : reference()["cronbach"]) {
    const auto items = fx["items"].get<LikertMatrix>();
    std::vector<std::size_t> all(items.front().size());
    std::iota(all.begin(), all.end(), 0);
    const auto res = cronbach_alpha(items, all);
    EXPECT_NEAR(res.alpha, fx["alpha"].get<double>(), 1e-9);
    EXPECT_EQ(res.k, all.size());
    EXPECT_EQ(res.n, items.size());
  }
}

// --- anchors ---------------------------------------------------------------

TEST(StatsAnchor, AnovaByHand) {
  const std::vector<std::vector<double>> g = {{1, 2}, {3, 4}};
  const auto res = anova_oneway(g);
  EXPECT_NEAR(res.f, 8.0, 1e-12);
  EXPECT_EQ(res.df_between, 1);
  EXPECT_EQ(res.df_within, 2);
  // P(F(1,2) >= 8) = 1 - sqrt(8/10)
  EXPECT_NEAR(res.p, 1.0 - std::sqrt(0.8), 1e-12);
}

TEST(StatsAnchor, AnovaIdenticalGroups) {
  const std::vector<std::vector<double>> g = {{1, 2, 3}, {1, 2, 3}};
  const auto res = anova_oneway(g);
  EXPECT_EQ(res.f, 0.0);
  EXPECT_EQ(res.p, 1.0);
  const std::vector<std::vector<double>> c = {{5, 5}, {5, 5, 5}};
  EXPECT_EQ(anova_oneway(c).f, 0.0);
}

TEST(StatsAnchor, AnovaDf) {
  const std::vector<std::vector<double>> g = {std::vector<double>(12, 1.0), std::vector<double>(26, 2.0)};
  auto h = g;
  h[0][0] = 1.5;
  EXPECT_EQ(anova_oneway(h).df_within, 36);
  EXPECT_EQ(anova_oneway(h).df_between, 1);
}

TEST(StatsAnchor, AnovaErrors) {
  const std::vector<std::vector<double>> one = {{1, 2}};
  EXPECT_THROW(anova_oneway(one), ValidationError);
  const std::vector<std::vector<double>> empty = {{1, 2}, {}};
  EXPECT_THROW(anova_oneway(empty), ValidationError);
  const std::vector<std::vector<double>> tight = {{1}, {2}};
  EXPECT_THROW(anova_oneway(tight), ValidationError);
}

TEST(StatsAnchor, PearsonPerfect) {
  const std::vector<double> x = {1, 2, 3, 4, 5};
  const std::vector<double> neg = {-1, -2, -3, -4, -5};
  EXPECT_NEAR(pearson(x, x).r, 1.0, 1e-12);
  EXPECT_EQ(pearson(x, x).p, 0.0);
  EXPECT_NEAR(pearson(x, neg).r, -1.0, 1e-12);
}

TEST(StatsAnchor, PearsonAnscombe) {
  const std::vector<double> x = {10, 8, 13, 9, 11, 14, 6, 4, 12, 7, 5};
  const std::vector<double> y = {8.04, 6.95, 7.58, 8.81, 8.33, 9.96, 7.24, 4.26, 10.84, 4.82, 5.68};
  EXPECT_NEAR(pearson(x, y).r, 0.816, 5e-4);
}

TEST(StatsAnchor, PearsonErrors) {
  const std::vector<double> x = {1, 2, 3};
  const std::vector<double> flat = {2, 2, 2};
  EXPECT_THROW(pearson(x, flat), UndefinedResult);
  const std::vector<double> two = {1, 2};
  EXPECT_THROW(pearson(two, two), ValidationError);
  const std::vector<double> four = {1, 2, 3, 4};
  EXPECT_THROW(pearson(x, four), ValidationError);
}

TEST(StatsAnchor, Fisher) {
  const auto same = fisher_compare(0.3, 20, 0.3, 20);
  EXPECT_EQ(same.z, 0.0);
  EXPECT_NEAR(same.p, 1.0, 1e-15);
  const auto f = fisher_compare(0.5, 40, 0.2, 40);
  EXPECT_NEAR(f.z, 1.491, 5e-4);
  EXPECT_GT(fisher_compare(-0.145, 12, -0.406, 26).p, 0.05);
  EXPECT_THROW(fisher_compare(1.0, 10, 0.2, 10), ValidationError);
  EXPECT_THROW(fisher_compare(0.1, 3, 0.2, 10), ValidationError);
}

TEST(StatsAnchor, NoiselessRecovery) {
  std::vector<StudyRecord> records;
  std::mt19937_64 rng(8);
  std::uniform_real_distribution<double> u(0.0, 0.6);
  for (int i = 0; i < 38; ++i) {
    const bool h = i >= 12;
    const double a = u(rng);
    records.push_back(record(h ? Condition::hhr : Condition::hr, a, 1 + 0.5 * h + 2 * a - 1 * h * a));
  }
  const auto res = ols_interaction(records, MeasureKind::er_student);
  EXPECT_NEAR(res.beta[0], 1.0, 1e-9);
  EXPECT_NEAR(res.beta[1], 0.5, 1e-9);
  EXPECT_NEAR(res.beta[2], 2.0, 1e-9);
  EXPECT_NEAR(res.beta[3], -1.0, 1e-9);
  EXPECT_EQ(res.n, 38u);
}

TEST(StatsAnchor, SingularDesigns) {
  std::vector<StudyRecord> same_a;
  std::vector<StudyRecord> one_condition;
  for (int i = 0; i < 10; ++i) {
    same_a.push_back(record(i % 2 ? Condition::hhr : Condition::hr, 0.3, 1.0 + i));
    one_condition.push_back(record(Condition::hr, 0.1 * i, 1.0 + i));
  }
  EXPECT_THROW(ols_interaction(same_a, MeasureKind::er_student), SingularDesign);
  EXPECT_THROW(ols_interaction(one_condition, MeasureKind::er_student), SingularDesign);
}

TEST(StatsAnchor, RegressionDropsUndefined) {
  std::vector<StudyRecord> records;
  for (int i = 0; i < 12; ++i) {
    records.push_back(record(i % 2 ? Condition::hhr : Condition::hr, 0.05 * i + 0.01 * (i % 3), 2.0 + 0.1 * i));
  }
  records.push_back(record(Condition::hr, std::nullopt, 3.0));
  const auto res = ols_interaction(records, MeasureKind::er_student);
  EXPECT_EQ(res.n, 12u);
  EXPECT_EQ(res.dropped, 1u);
  records.resize(4);
  EXPECT_THROW(ols_interaction(records, MeasureKind::er_student), ValidationError);
}

TEST(StatsAnchor, Cronbach) {
  const LikertMatrix same = {{1, 1, 1}, {3, 3, 3}, {6, 6, 6}, {2, 2, 2}};
  const std::vector<std::size_t> all = {0, 1, 2};
  EXPECT_NEAR(cronbach_alpha(same, all).alpha, 1.0, 1e-12);
  const LikertMatrix flat = {{1, 2}, {2, 1}};
  const std::vector<std::size_t> two = {0, 1};
  EXPECT_THROW(cronbach_alpha(flat, two), UndefinedResult);
  const std::vector<std::size_t> one = {0};
  EXPECT_THROW(cronbach_alpha(same, one), ValidationError);
}

TEST(StatsAnchor, RapportScore) {
  const LikertMatrix m = {std::vector<int>(12, 4), {6, 6, 6, 6, 6, 6, 1, 1, 1, 1, 1, 1}};
  std::vector<std::size_t> all(12);
  std::iota(all.begin(), all.end(), 0);
  const auto s = score_rapport(m, all);
  EXPECT_EQ(s[0], 4.0);
  EXPECT_EQ(s[1], 3.5);
  const LikertMatrix bad = {{0, 3}};
  const std::vector<std::size_t> two = {0, 1};
  EXPECT_THROW(score_rapport(bad, two), ValidationError);
  const std::vector<std::size_t> none;
  EXPECT_THROW(score_rapport(m, none), ValidationError);
  const std::vector<std::size_t> outside = {12};
  EXPECT_THROW(score_rapport(m, outside), ValidationError);
  const auto d = default_rapport_items();
  ASSERT_EQ(d.size(), 12u);
  EXPECT_EQ(d.front(), 3u);
  EXPECT_EQ(d.back(), 14u);
}

TEST(StatsAnchor, RapportScoreRandom) {
  std::mt19937_64 rng(12);
  LikertMatrix m(26, std::vector<int>(15));
  for (auto& row : m) {
    for (auto& v : row) v = static_cast<int>(1 + rng() % 6);
  }
  const auto sel = default_rapport_items();
  const auto s = score_rapport(m, sel);
  for (std::size_t r = 0; r < m.size(); ++r) {
    int sum = 0;
    for (int c = 3; c < 15; ++c) sum += m[r][c];
    EXPECT_DOUBLE_EQ(s[r], sum / 12.0);
  }
}

// --- properties ------------------------------------------------------------

TEST(StatsProperty, TwoGroupAnovaIsSquaredT) {
  std::mt19937_64 rng(31);
  std::normal_distribution<double> nd;
  for (int iter = 0; iter < 100; ++iter) {
    std::vector<double> a(2 + rng() % 15), b(2 + rng() % 15);
    for (auto& v : a) v = nd(rng);
    for (auto& v : b) v = nd(rng) + 0.5;
    const double ma = mean(a), mb = mean(b);
    double ss = 0;
    for (double v : a) ss += (v - ma) * (v - ma);
    for (double v : b) ss += (v - mb) * (v - mb);
    const double df = static_cast<double>(a.size() + b.size() - 2);
    const double sp2 = ss / df;
    const double t = (ma - mb) / std::sqrt(sp2 * (1.0 / a.size() + 1.0 / b.size()));
    const std::vector<std::vector<double>> g = {a, b};
    const auto res = anova_oneway(g);
    EXPECT_NEAR(res.f, t * t, 1e-9 * std::max(1.0, t * t));
    EXPECT_NEAR(res.p, t_two_tailed(t, df), 1e-10);
  }
}

TEST(StatsProperty, PearsonInvariance) {
  std::mt19937_64 rng(32);
  std::normal_distribution<double> nd;
  for (int iter = 0; iter < 100; ++iter) {
    std::vector<double> x(3 + rng() % 30), y(x.size());
    for (std::size_t i = 0; i < x.size(); ++i) {
      x[i] = nd(rng);
      y[i] = 0.4 * x[i] + nd(rng);
    }
    const auto base = pearson(x, y);
    EXPECT_NEAR(pearson(y, x).r, base.r, 1e-12);
    std::vector<double> z = x;
    for (auto& v : z) v = 3.0 * v + 7.0;
    EXPECT_NEAR(pearson(z, y).r, base.r, 1e-10);
    EXPECT_GE(base.p, 0.0);
    EXPECT_LE(base.p, 1.0);
  }
}

TEST(StatsProperty, FisherAntisymmetry) {
  std::mt19937_64 rng(33);
  std::uniform_real_distribution<double> r(-0.99, 0.99);
  for (int iter = 0; iter < 200; ++iter) {
    const double r1 = r(rng), r2 = r(rng);
    const std::size_t n1 = 4 + rng() % 50, n2 = 4 + rng() % 50;
    const auto a = fisher_compare(r1, n1, r2, n2);
    const auto b = fisher_compare(r2, n2, r1, n1);
    EXPECT_DOUBLE_EQ(a.z, -b.z);
    EXPECT_DOUBLE_EQ(a.p, b.p);
    EXPECT_GE(a.p, 0.0);
    EXPECT_LE(a.p, 1.0);
  }
}

// Within the full interaction model each condition gets its own line, so
// beta2 is the HR-only slope and beta2 + beta3 the HHR-only slope.
TEST(StatsProperty, InteractionMatchesPerConditionSlopes) {
  std::mt19937_64 rng(34);
  std::normal_distribution<double> nd;
  std::uniform_real_distribution<double> u(0.0, 0.6);
  auto slope = [](const std::vector<double>& x, const std::vector<double>& y) {
    const double mx = mean(x), my = mean(y);
    double sxy = 0, sxx = 0;
    for (std::size_t i = 0; i < x.size(); ++i) {
      sxy += (x[i] - mx) * (y[i] - my);
      sxx += (x[i] - mx) * (x[i] - mx);
    }
    return sxy / sxx;
  };
  for (int iter = 0; iter < 50; ++iter) {
    std::vector<StudyRecord> records;
    std::vector<double> xh, yh, xr, yr;
    for (int i = 0; i < 30; ++i) {
      const bool h = i % 3 != 0;
      const double a = u(rng);
      const double y = 4 + nd(rng) * 0.5 + a;
      records.push_back(record(h ? Condition::hhr : Condition::hr, a, y));
      (h ? xh : xr).push_back(a);
      (h ? yh : yr).push_back(y);
    }
    const auto res = ols_interaction(records, MeasureKind::er_student);
    EXPECT_NEAR(res.beta[2], slope(xr, yr), 1e-9);
    EXPECT_NEAR(res.beta[2] + res.beta[3], slope(xh, yh), 1e-9);
    for (int k = 0; k < 4; ++k) {
      EXPECT_GE(res.p[k], 0.0);
      EXPECT_LE(res.p[k], 1.0);
    }
  }
}

TEST(StatsProperty, NormalEquations) {
  std::mt19937_64 rng(35);
  std::normal_distribution<double> nd;
  for (int iter = 0; iter < 50; ++iter) {
    const int n = 8 + static_cast<int>(rng() % 30);
    Eigen::MatrixXd x(n, 3);
    Eigen::VectorXd y(n);
    for (int i = 0; i < n; ++i) {
      x(i, 0) = 1.0;
      x(i, 1) = nd(rng);
      x(i, 2) = nd(rng);
      y[i] = nd(rng);
    }
    const auto res = ols(x, y);
    const Eigen::VectorXd resid = y - x * res.beta;
    EXPECT_LT((x.transpose() * resid).cwiseAbs().maxCoeff(), 1e-9);
  }
}

}  // namespace
}  // namespace lexalign::stats
