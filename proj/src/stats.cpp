#include "lexalign/stats.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <string>

#include "lexalign/distributions.hpp"
#include "lexalign/error.hpp"

namespace lexalign::stats {
namespace {

void check_selection(const LikertMatrix& items,
                     std::span<const std::size_t> selection) {
  if (selection.empty()) throw ValidationError("empty item selection");
  for (std::size_t r = 0; r < items.size(); ++r) {
    for (std::size_t c : selection) {
      if (c >= items[r].size()) {
        throw ValidationError("item " + std::to_string(c + 1) +
                              " missing for respondent " + std::to_string(r + 1));
      }
      const int v = items[r][c];
      if (v < 1 || v > 6) {
        throw ValidationError("response " + std::to_string(v) + " of respondent " +
                              std::to_string(r + 1) + " outside 1..6");
      }
    }
  }
}

double mean(std::span<const double> v) {
  return std::accumulate(v.begin(), v.end(), 0.0) / static_cast<double>(v.size());
}

double sum_sq_dev(std::span<const double> v, double m) {
  double s = 0.0;
  for (double x : v) s += (x - m) * (x - m);
  return s;
}

bool constant(std::span<const double> v) {
  return std::all_of(v.begin(), v.end(), [&](double x) { return x == v.front(); });
}

double sample_variance(const std::vector<double>& v) {
  return sum_sq_dev(v, mean(v)) / static_cast<double>(v.size() - 1);
}

}  // namespace

std::vector<std::size_t> default_rapport_items() {
  std::vector<std::size_t> out(12);
  std::iota(out.begin(), out.end(), std::size_t{3});
  return out;
}

std::vector<double> score_rapport(const LikertMatrix& items,
                                  std::span<const std::size_t> selection) {
  check_selection(items, selection);
  std::vector<double> out;
  out.reserve(items.size());
  for (const auto& row : items) {
    double s = 0.0;
    for (std::size_t c : selection) s += row[c];
    out.push_back(s / static_cast<double>(selection.size()));
  }
  return out;
}

ReliabilityResult cronbach_alpha(const LikertMatrix& items,
                                 std::span<const std::size_t> selection) {
  check_selection(items, selection);
  const std::size_t k = selection.size();
  const std::size_t n = items.size();
  if (k < 2) throw ValidationError("Cronbach's alpha needs at least 2 items");
  if (n < 2) throw ValidationError("Cronbach's alpha needs at least 2 respondents");

  double item_var_sum = 0.0;
  std::vector<double> column(n);
  std::vector<double> totals(n, 0.0);
  for (std::size_t c : selection) {
    for (std::size_t r = 0; r < n; ++r) {
      column[r] = items[r][c];
      totals[r] += items[r][c];
    }
    item_var_sum += sample_variance(column);
  }
  if (constant(totals)) {
    throw UndefinedResult("Cronbach's alpha undefined: total scores are constant");
  }
  const double total_var = sample_variance(totals);
  const double kk = static_cast<double>(k);
  return {kk / (kk - 1.0) * (1.0 - item_var_sum / total_var), k, n};
}

AnovaResult anova_oneway(std::span<const std::vector<double>> groups) {
  if (groups.size() < 2) throw ValidationError("ANOVA needs at least 2 groups");
  std::size_t total_n = 0;
  double grand_sum = 0.0;
  std::vector<double> all;
  for (const auto& g : groups) {
    if (g.empty()) throw ValidationError("ANOVA group is empty");
    total_n += g.size();
    grand_sum += std::accumulate(g.begin(), g.end(), 0.0);
    all.insert(all.end(), g.begin(), g.end());
  }
  const auto k = static_cast<int>(groups.size());
  if (total_n <= groups.size()) {
    throw ValidationError("ANOVA needs more observations than groups");
  }

  AnovaResult res;
  res.df_between = k - 1;
  res.df_within = static_cast<int>(total_n) - k;
  if (constant(all)) return res;  // F = 0, p = 1

  const double grand_mean = grand_sum / static_cast<double>(total_n);
  double ssb = 0.0;
  double ssw = 0.0;
  bool within_constant = true;
  for (const auto& g : groups) {
    const double m = mean(g);
    ssb += static_cast<double>(g.size()) * (m - grand_mean) * (m - grand_mean);
    ssw += sum_sq_dev(g, m);
    within_constant = within_constant && constant(g);
  }
  if (within_constant) {
    res.f = std::numeric_limits<double>::infinity();
    res.p = 0.0;
    return res;
  }
  res.f = (ssb / res.df_between) / (ssw / res.df_within);
  res.p = f_upper_tail(res.f, res.df_between, res.df_within);
  return res;
}

CorrelationResult pearson(std::span<const double> x, std::span<const double> y) {
  if (x.size() != y.size()) {
    throw ValidationError("pearson: samples differ in length");
  }
  const std::size_t n = x.size();
  if (n < 3) throw ValidationError("pearson: need n >= 3");
  if (constant(x) || constant(y)) {
    throw UndefinedResult("pearson: a sample has zero variance");
  }
  const double mx = mean(x);
  const double my = mean(y);
  double sxx = 0.0;
  double syy = 0.0;
  double sxy = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    const double dx = x[i] - mx;
    const double dy = y[i] - my;
    sxx += dx * dx;
    syy += dy * dy;
    sxy += dx * dy;
  }
  CorrelationResult res;
  res.n = n;
  res.r = std::clamp(sxy / std::sqrt(sxx * syy), -1.0, 1.0);
  if (std::fabs(res.r) == 1.0) {
    res.p = 0.0;
    return res;
  }
  const double df = static_cast<double>(n - 2);
  const double t = res.r * std::sqrt(df / (1.0 - res.r * res.r));
  res.p = t_two_tailed(t, df);
  return res;
}

FisherComparison fisher_compare(double r1, std::size_t n1, double r2,
                                std::size_t n2) {
  if (!(std::fabs(r1) < 1.0) || !(std::fabs(r2) < 1.0)) {
    throw UndefinedResult("Fisher transform is infinite for |r| >= 1");
  }
  if (n1 <= 3 || n2 <= 3) {
    throw ValidationError("Fisher comparison needs n > 3 in both groups");
  }
  const double se = std::sqrt(1.0 / static_cast<double>(n1 - 3) +
                              1.0 / static_cast<double>(n2 - 3));
  FisherComparison res;
  res.r1 = r1;
  res.n1 = n1;
  res.r2 = r2;
  res.n2 = n2;
  res.z = (std::atanh(r1) - std::atanh(r2)) / se;
  res.p = normal_two_tailed(res.z);
  return res;
}

RegressionResult ols(const Eigen::MatrixXd& x, const Eigen::VectorXd& y) {
  const auto n = x.rows();
  const auto p = x.cols();
  if (y.size() != n) throw ValidationError("ols: response length mismatch");
  if (n <= p) {
    throw ValidationError("ols: need more observations (" + std::to_string(n) +
                          ") than coefficients (" + std::to_string(p) + ")");
  }
  const Eigen::ColPivHouseholderQR<Eigen::MatrixXd> qr(x);
  if (qr.rank() < p) {
    throw SingularDesign("design matrix has rank " + std::to_string(qr.rank()) +
                         " < " + std::to_string(p));
  }
  RegressionResult res;
  res.n = static_cast<std::size_t>(n);
  res.beta = qr.solve(y);
  const Eigen::VectorXd resid = y - x * res.beta;
  const double df = static_cast<double>(n - p);
  const double sigma2 = resid.squaredNorm() / df;
  const Eigen::MatrixXd xtx_inv =
      (x.transpose() * x).ldlt().solve(Eigen::MatrixXd::Identity(p, p));
  res.std_err = (sigma2 * xtx_inv.diagonal().array()).sqrt().matrix();
  res.t.resize(p);
  res.p.resize(p);
  for (Eigen::Index j = 0; j < p; ++j) {
    if (res.std_err[j] == 0.0) {
      res.t[j] = res.beta[j] == 0.0 ? 0.0
                                    : std::copysign(
                                          std::numeric_limits<double>::infinity(),
                                          res.beta[j]);
      res.p[j] = res.beta[j] == 0.0 ? 1.0 : 0.0;
    } else {
      res.t[j] = res.beta[j] / res.std_err[j];
      res.p[j] = t_two_tailed(res.t[j], df);
    }
  }
  return res;
}

RegressionResult ols_interaction(std::span<const StudyRecord> records,
                                 MeasureKind measure) {
  std::vector<const StudyRecord*> usable;
  for (const auto& r : records) {
    if (r.alignment.get(measure)) usable.push_back(&r);
  }
  const std::size_t dropped = records.size() - usable.size();
  if (usable.size() < 5) {
    throw ValidationError("interaction regression needs >= 5 records, have " +
                          std::to_string(usable.size()));
  }
  const auto n = static_cast<Eigen::Index>(usable.size());
  Eigen::MatrixXd x(n, 4);
  Eigen::VectorXd y(n);
  for (Eigen::Index i = 0; i < n; ++i) {
    const auto& r = *usable[static_cast<std::size_t>(i)];
    const double hhr = r.hhr();
    const double a = *r.alignment.get(measure);
    x(i, 0) = 1.0;
    x(i, 1) = hhr;
    x(i, 2) = a;
    x(i, 3) = hhr * a;
    y(i) = r.rapport;
  }
  auto res = ols(x, y);
  res.dropped = dropped;
  return res;
}

}  // namespace lexalign::stats
