#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

#include "lexalign/report.hpp"
#include "lexalign/transcript.hpp"

namespace lexalign::cli {

enum ExitCode : int { kOk = 0, kValidation = 1, kInternal = 2 };

struct RunConfig {
  std::vector<std::filesystem::path> inputs;
  /// Transcript format; inferred from each file's extension when unset.
  std::optional<TranscriptFormat> format;
  std::optional<std::filesystem::path> out_dir;
  ReportFormat report = ReportFormat::text;
  bool audit = false;
  std::string items = "4-15";  ///< 1-based rapport item selection
  std::optional<std::filesystem::path> metadata;
  std::uint64_t seed = 20240917;
};

/// Writes one transcript per dyad as `<conversation_id>__<A>__<B>.<ext>`
/// into the output directory (default: current directory).
int cmd_split(const RunConfig& cfg, std::ostream& out, std::ostream& err);

/// One metrics row per speaker per dialogue. With --out, also writes
/// metrics.csv and, with --audit, `<dialogue>.lexicon.json`.
int cmd_analyze(const RunConfig& cfg, std::ostream& out, std::ostream& err);

/// Joins metrics CSVs with the study metadata and prints the study tables.
int cmd_stats(const RunConfig& cfg, std::ostream& out, std::ostream& err);

/// Splits and analyses transcripts, then runs the study statistics.
int cmd_report(const RunConfig& cfg, std::ostream& out, std::ostream& err);

/// Metrics for every dialogue in the given transcript files, split into
/// dyads first when `split` is set. Ordered by dialogue name.
std::vector<DialogueMetrics> analyze_files(const RunConfig& cfg, bool split,
                                           std::ostream& err);

}  // namespace lexalign::cli
