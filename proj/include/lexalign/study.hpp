#pragma once

#include <array>
#include <cstddef>
#include <istream>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace lexalign {

enum class Condition { hr = 0, hhr = 1 };

std::string_view condition_name(Condition c);  // "HR" / "HHR"
Condition parse_condition(std::string_view text);

/// The five alignment measures analysed against rapport.
enum class MeasureKind { er_student, ee_student, er_agent, ee_agent, ied };

inline constexpr std::array<MeasureKind, 5> kAllMeasures = {
    MeasureKind::er_student, MeasureKind::ee_student, MeasureKind::er_agent,
    MeasureKind::ee_agent, MeasureKind::ied};

/// Column label; `agent` substitutes the partner's name ("ER_Emma").
std::string measure_label(MeasureKind kind, std::string_view agent = "agent");

/// A participant's view of their dialogue with the agent. Values are
/// absent where the underlying fraction had a zero denominator.
struct ParticipantAlignment {
  std::string dialogue;
  std::string agent;
  std::optional<double> ie_student;
  std::optional<double> er_student;
  std::optional<double> ee_student;
  std::optional<double> er_agent;
  std::optional<double> ee_agent;
  std::optional<double> ied;
  std::size_t expression_count = 0;
  std::optional<double> mean_expression_length;

  std::optional<double> get(MeasureKind kind) const;
};

struct StudyRecord {
  std::string participant;
  Condition condition = Condition::hr;
  double rapport = 0.0;  ///< in [1, 6]
  ParticipantAlignment alignment;

  int hhr() const { return condition == Condition::hhr ? 1 : 0; }
};

/// Likert responses, one row per respondent.
using LikertMatrix = std::vector<std::vector<int>>;

/// One row of the study metadata file, before alignment is joined in.
struct ParticipantInfo {
  std::string participant;
  Condition condition = Condition::hr;
  std::optional<double> rapport;  ///< given directly
  std::vector<int> items;         ///< or as Likert items
  std::size_t line = 0;
};

struct StudyMetadata {
  std::vector<ParticipantInfo> participants;
  std::vector<std::string> item_columns;  ///< empty for the rapport layout

  bool has_items() const { return !item_columns.empty(); }
  LikertMatrix items() const;
};

/// Reads `participant,condition,rapport` or `participant,condition,item1..`.
/// Conditions are HR or HHR; rapport must lie in [1, 6] and items in 1..6.
StudyMetadata parse_metadata(std::istream& in);

/// Parses a 1-based item list such as "4-15" or "1,2,5-7" into sorted,
/// de-duplicated 0-based column indices.
std::vector<std::size_t> parse_item_list(std::string_view text);

}  // namespace lexalign
