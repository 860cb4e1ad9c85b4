#pragma once

#include <cstddef>
#include <istream>
#include <optional>
#include <ostream>
#include <span>
#include <string>
#include <vector>

#include <json.hpp>

#include "lexalign/metrics.hpp"
#include "lexalign/stats.hpp"
#include "lexalign/study.hpp"

namespace lexalign {

enum class ReportFormat { text, csv, json };

ReportFormat parse_report_format(std::string_view name);

/// ".594", "-.315", "1.300": three decimals, no leading zero below 1.
std::string report_decimal(double value, int places = 3);
/// "**" below .01, "*" below .05, else "".
std::string stars(double p);

// ---------------------------------------------------------------------------
// Per-dialogue metrics tables

/// Metrics of one analysed dialogue. An empty input has no metrics.
struct DialogueMetrics {
  std::string dialogue;  ///< `<conversation_id>__<A>__<B>` or the file stem
  std::optional<AlignmentMetrics> metrics;
};

/// One (dialogue, speaker) row as read back from a metrics CSV.
struct MetricsRow {
  std::string dialogue;
  std::string speaker;
  std::string partner;
  std::size_t tokens = 0;
  std::size_t expressions = 0;
  std::optional<double> mean_expression_length;
  std::optional<double> ie;
  std::optional<double> er;
  std::optional<double> ee;
  std::optional<double> ied;
  std::optional<double> partner_er;
  std::optional<double> partner_ee;
};

void write_metrics(std::ostream& out, std::span<const DialogueMetrics> rows,
                   ReportFormat format);

/// Full-precision rows, as read_metrics_csv would return them.
std::vector<MetricsRow> to_rows(std::span<const DialogueMetrics> rows);

/// Reads the CSV produced by write_metrics(..., csv). Exact-fraction columns
/// take precedence over the rounded decimals.
std::vector<MetricsRow> read_metrics_csv(std::istream& in);

// ---------------------------------------------------------------------------
// Study analysis

struct JoinResult {
  std::vector<StudyRecord> records;
  std::vector<std::string> failures;
};

/// Attaches each participant's dialogue with the agent. The agent dialogue
/// is the one whose partner is not itself a study participant; zero or
/// several candidates are reported as failures and the participant skipped.
/// With item-level metadata, rapport is the mean of `items`.
JoinResult join_study(const StudyMetadata& meta, std::span<const MetricsRow> rows,
                      std::span<const std::size_t> items);

struct Summary {
  std::size_t n = 0;
  std::optional<double> mean;
  std::optional<double> sd;  ///< n - 1 denominator
};

struct DescriptiveRow {
  std::string label;
  Summary hr;
  Summary hhr;
  std::optional<stats::AnovaResult> anova;
  std::string reason;  ///< why `anova` is absent
};

struct InteractionCell {
  MeasureKind measure;
  std::optional<stats::RegressionResult> fit;
  std::string reason;
};

struct PooledCell {
  MeasureKind measure;
  std::optional<stats::CorrelationResult> r;
  std::size_t dropped = 0;
  std::string reason;
};

struct ConditionCell {
  MeasureKind measure;
  std::optional<stats::CorrelationResult> hr;
  std::optional<stats::CorrelationResult> hhr;
  std::optional<stats::FisherComparison> fisher;
  std::string reason;
};

struct ReliabilityCell {
  std::string label;
  std::optional<stats::ReliabilityResult> result;
  std::string reason;
};

/// The four study tables: descriptives with ANOVA across conditions,
/// interaction coefficients, pooled correlations, and per-condition
/// correlations with Fisher comparisons.
struct StudyReport {
  std::string agent = "agent";
  std::size_t n_hr = 0;
  std::size_t n_hhr = 0;
  std::vector<DescriptiveRow> descriptives;
  std::vector<InteractionCell> interaction;
  std::vector<PooledCell> pooled;
  std::vector<ConditionCell> by_condition;
  std::vector<ReliabilityCell> reliability;
  std::vector<std::string> join_failures;
};

StudyReport analyze_study(std::span<const StudyRecord> records);

/// Adds Cronbach's alpha for the selected items and for the remaining ones.
void add_reliability(StudyReport& report, const LikertMatrix& items,
                     std::span<const std::size_t> selection);

void write_study_report(std::ostream& out, const StudyReport& report,
                        ReportFormat format);

nlohmann::ordered_json study_report_to_json(const StudyReport& report);

}  // namespace lexalign
