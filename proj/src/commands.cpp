#include "lexalign/cli.hpp"

#include <algorithm>
#include <fstream>
#include <functional>
#include <map>

#include <fmt/core.h>

#include "lexalign/error.hpp"
#include "lexalign/lexicon.hpp"
#include "lexalign/metrics.hpp"
#include "lexalign/study.hpp"

namespace lexalign::cli {
namespace fs = std::filesystem;

namespace {

/// A failure already phrased with its file name.
class FileError : public ValidationError {
 public:
  using ValidationError::ValidationError;
};

int guarded(std::ostream& err, const std::function<int()>& body) {
  try {
    return body();
  } catch (const ValidationError& e) {
    err << "error: " << e.what() << '\n';
  } catch (const std::exception& e) {
    err << "internal error: " << e.what() << '\n';
    return kInternal;
  } catch (...) {
    err << "internal error\n";
    return kInternal;
  }
  return kValidation;
}

template <typename Fn>
auto with_file(const fs::path& path, Fn&& fn) {
  try {
    return fn();
  } catch (const ParseError& e) {
    throw FileError(fmt::format("{}:{}: {}", path.string(), e.line(), e.detail()));
  } catch (const FileError&) {
    throw;
  } catch (const ValidationError& e) {
    throw FileError(fmt::format("{}: {}", path.string(), e.what()));
  }
}

std::ifstream open_input(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw FileError(fmt::format("{}: cannot open for reading", path.string()));
  return in;
}

std::ofstream open_output(const fs::path& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw FileError(fmt::format("{}: cannot open for writing", path.string()));
  return out;
}

fs::path output_dir(const RunConfig& cfg) {
  const fs::path dir = cfg.out_dir.value_or(fs::path("."));
  std::error_code ec;
  fs::create_directories(dir, ec);
  if (ec) throw FileError(fmt::format("{}: {}", dir.string(), ec.message()));
  return dir;
}

TranscriptFormat input_format(const RunConfig& cfg, const fs::path& path) {
  if (cfg.format) return *cfg.format;
  return path.extension() == ".csv" ? TranscriptFormat::csv : TranscriptFormat::jsonl;
}

std::vector<Transcript> read_transcripts(const RunConfig& cfg, const fs::path& path) {
  auto in = open_input(path);
  return with_file(path, [&] { return parse_transcripts(in, input_format(cfg, path)); });
}

void require_inputs(const RunConfig& cfg) {
  if (cfg.inputs.empty()) throw ValidationError("no input files");
}

std::vector<MetricsRow> read_metrics(const RunConfig& cfg) {
  std::vector<MetricsRow> rows;
  for (const auto& path : cfg.inputs) {
    auto in = open_input(path);
    auto part = with_file(path, [&] { return read_metrics_csv(in); });
    rows.insert(rows.end(), part.begin(), part.end());
  }
  return rows;
}

StudyMetadata read_study_metadata(const RunConfig& cfg) {
  if (!cfg.metadata) throw ValidationError("study metadata is required (--meta FILE)");
  auto in = open_input(*cfg.metadata);
  return with_file(*cfg.metadata, [&] { return parse_metadata(in); });
}

int run_study(const RunConfig& cfg, std::span<const MetricsRow> rows, std::ostream& out,
              std::ostream& err) {
  const auto meta = read_study_metadata(cfg);
  const auto selection = parse_item_list(cfg.items);
  auto join = join_study(meta, rows, selection);
  for (const auto& f : join.failures) err << "warning: " << f << '\n';
  if (join.records.empty()) {
    throw ValidationError("no participant could be joined with a dialogue");
  }
  auto report = analyze_study(join.records);
  report.join_failures = std::move(join.failures);
  if (meta.has_items()) add_reliability(report, meta.items(), selection);
  write_study_report(out, report, cfg.report);
  return kOk;
}

void write_metrics_file(const RunConfig& cfg, std::span<const DialogueMetrics> rows) {
  if (!cfg.out_dir) return;
  auto file = open_output(output_dir(cfg) / "metrics.csv");
  write_metrics(file, rows, ReportFormat::csv);
}

}  // namespace

std::vector<DialogueMetrics> analyze_files(const RunConfig& cfg, bool split,
                                           std::ostream& err) {
  if (cfg.audit && !cfg.out_dir) throw ValidationError("--audit needs --out DIR");
  std::vector<DialogueMetrics> rows;
  for (const auto& path : cfg.inputs) {
    const auto transcripts = read_transcripts(cfg, path);
    if (transcripts.empty()) {
      err << "warning: " << path.string() << ": no utterances\n";
      rows.push_back({path.stem().string(), std::nullopt});
      continue;
    }
    for (const auto& t : transcripts) {
      std::vector<Dialogue> dialogues;
      if (split) {
        dialogues = split_dyadic(t);
      } else {
        dialogues.push_back(with_file(path, [&] { return as_dialogue(t); }));
      }
      for (const auto& d : dialogues) {
        const auto lexicon = with_file(path, [&] { return build_lexicon(d); });
        if (cfg.audit) {
          auto file = open_output(output_dir(cfg) / (d.name() + ".lexicon.json"));
          file << lexicon_to_json(lexicon).dump(2) << '\n';
        }
        rows.push_back({d.name(), compute_metrics(lexicon)});
      }
    }
  }
  std::stable_sort(rows.begin(), rows.end(),
                   [](const auto& a, const auto& b) { return a.dialogue < b.dialogue; });
  return rows;
}

int cmd_split(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
  return guarded(err, [&] {
    require_inputs(cfg);
    const auto dir = output_dir(cfg);
    for (const auto& path : cfg.inputs) {
      const auto transcripts = read_transcripts(cfg, path);
      const auto format = input_format(cfg, path);
      std::size_t written = 0;
      for (const auto& t : transcripts) {
        for (const auto& d : split_dyadic(t)) {
          const auto target =
              dir / (d.name() + "." + std::string(format_extension(format)));
          auto file = open_output(target);
          write_transcript(file, d.conversation_id, d.utterances, format);
          out << target.string() << '\n';
          ++written;
        }
      }
      if (written == 0) err << "warning: " << path.string() << ": no utterances, nothing written\n";
    }
    return kOk;
  });
}

int cmd_analyze(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
  return guarded(err, [&] {
    require_inputs(cfg);
    const auto rows = analyze_files(cfg, false, err);
    write_metrics_file(cfg, rows);
    write_metrics(out, rows, cfg.report);
    return kOk;
  });
}

int cmd_stats(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
  return guarded(err, [&] {
    require_inputs(cfg);
    const auto rows = read_metrics(cfg);
    return run_study(cfg, rows, out, err);
  });
}

int cmd_report(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
  return guarded(err, [&] {
    require_inputs(cfg);
    const auto dialogues = analyze_files(cfg, true, err);
    write_metrics_file(cfg, dialogues);
    const auto rows = to_rows(dialogues);
    return run_study(cfg, rows, out, err);
  });
}

}  // namespace lexalign::cli
