#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include <Eigen/Dense>

#include "lexalign/study.hpp"

namespace lexalign::stats {

struct AnovaResult {
  double f = 0.0;
  double p = 1.0;
  int df_between = 0;
  int df_within = 0;
};

struct CorrelationResult {
  double r = 0.0;
  double p = 1.0;
  std::size_t n = 0;
};

struct FisherComparison {
  double z = 0.0;
  double p = 1.0;
  double r1 = 0.0;
  std::size_t n1 = 0;
  double r2 = 0.0;
  std::size_t n2 = 0;
};

struct RegressionResult {
  Eigen::VectorXd beta;     ///< intercept first
  Eigen::VectorXd std_err;
  Eigen::VectorXd t;
  Eigen::VectorXd p;        ///< two-tailed, n - columns df
  std::size_t n = 0;
  std::size_t dropped = 0;  ///< records without a value for the measure
};

struct ReliabilityResult {
  double alpha = 0.0;
  std::size_t k = 0;
  std::size_t n = 0;
};

/// Mean of the selected items per respondent. Responses must be in 1..6.
std::vector<double> score_rapport(const LikertMatrix& items,
                                  std::span<const std::size_t> selection);

/// The 12 positivity/attention/coordination items of the 15-item survey,
/// assuming the 3 general items come first.
std::vector<std::size_t> default_rapport_items();

/// Cronbach's alpha with n - 1 sample variances. Needs >= 2 items,
/// >= 2 respondents and non-constant total scores.
ReliabilityResult cronbach_alpha(const LikertMatrix& items,
                                 std::span<const std::size_t> selection);

/// One-way ANOVA. Constant data gives F = 0, p = 1.
AnovaResult anova_oneway(std::span<const std::vector<double>> groups);

/// Pearson's r with a two-tailed t-test on n - 2 df.
CorrelationResult pearson(std::span<const double> x, std::span<const double> y);

/// Two-tailed z-test for the difference of two independent correlations.
FisherComparison fisher_compare(double r1, std::size_t n1, double r2,
                                std::size_t n2);

/// Least squares with per-coefficient t-tests. `x` must include any
/// intercept column. Throws SingularDesign without full column rank.
RegressionResult ols(const Eigen::MatrixXd& x, const Eigen::VectorXd& y);

/// rapport = b0 + b1 * HHR + b2 * A + b3 * HHR * A over the records with a
/// defined value of `measure`.
RegressionResult ols_interaction(std::span<const StudyRecord> records,
                                 MeasureKind measure);

}  // namespace lexalign::stats
