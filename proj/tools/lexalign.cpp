// lexalign: shared-expression alignment measures for dialogue transcripts.

#include <iostream>

#include <CLI11.hpp>

#include "lexalign/cli.hpp"
#include "lexalign/error.hpp"

namespace {

using lexalign::cli::RunConfig;

void add_inputs(CLI::App* cmd, RunConfig& cfg, const char* what) {
  cmd->add_option("inputs", cfg.inputs, what)->required()->check(CLI::ExistingFile);
}

void add_format(CLI::App* cmd, std::string& format) {
  cmd->add_option("--format", format, "Transcript format (default: by file extension)")
      ->check(CLI::IsMember({"jsonl", "csv"}));
}

void add_report(CLI::App* cmd, std::string& report) {
  cmd->add_option("--report", report, "Output format")
      ->check(CLI::IsMember({"text", "csv", "json"}));
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Lexical alignment through shared expressions in dyadic dialogue"};
  app.require_subcommand(1);
  app.set_version_flag("--version", "lexalign 0.1.0");

  RunConfig cfg;
  std::string format;
  std::string report = "text";
  std::string out_dir;

  auto* split = app.add_subcommand("split", "Split transcripts into one file per dyad");
  add_inputs(split, cfg, "Transcript files");
  add_format(split, format);
  split->add_option("--out", out_dir, "Output directory (default: .)");

  auto* analyze = app.add_subcommand("analyze", "Compute IE, ER, EE and IED per dialogue");
  add_inputs(analyze, cfg, "Dyadic dialogue files");
  add_format(analyze, format);
  add_report(analyze, report);
  analyze->add_option("--out", out_dir, "Also write metrics.csv (and audits) here");
  analyze->add_flag("--audit", cfg.audit, "Write <dialogue>.lexicon.json next to metrics.csv");

  auto* stats = app.add_subcommand("stats", "Study statistics from metrics CSV and metadata");
  add_inputs(stats, cfg, "Metrics CSV files written by analyze");
  add_report(stats, report);
  stats->add_option("--items", cfg.items, "Rapport items to average, 1-based (e.g. 4-15)");

  auto* full = app.add_subcommand("report", "split + analyze + stats in one pass");
  add_inputs(full, cfg, "Transcript files");
  add_format(full, format);
  add_report(full, report);
  full->add_option("--out", out_dir, "Also write metrics.csv (and audits) here");
  full->add_flag("--audit", cfg.audit, "Write <dialogue>.lexicon.json next to metrics.csv");
  full->add_option("--items", cfg.items, "Rapport items to average, 1-based (e.g. 4-15)");

  std::string meta;
  for (auto* cmd : {stats, full}) {
    cmd->add_option("--meta", meta, "Study metadata CSV")->required()->check(CLI::ExistingFile);
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : lexalign::cli::kValidation;
  }

  try {
    if (!format.empty()) cfg.format = lexalign::parse_format(format);
    cfg.report = lexalign::parse_report_format(report);
  } catch (const lexalign::ValidationError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return lexalign::cli::kValidation;
  }
  if (!out_dir.empty()) cfg.out_dir = out_dir;
  if (!meta.empty()) cfg.metadata = meta;

  if (*split) return lexalign::cli::cmd_split(cfg, std::cout, std::cerr);
  if (*analyze) return lexalign::cli::cmd_analyze(cfg, std::cout, std::cerr);
  if (*stats) return lexalign::cli::cmd_stats(cfg, std::cout, std::cerr);
  return lexalign::cli::cmd_report(cfg, std::cout, std::cerr);
}
