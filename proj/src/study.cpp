#include "lexalign/study.hpp"

#include <algorithm>
#include <charconv>
#include <set>

#include "lexalign/csv.hpp"
#include "lexalign/error.hpp"

namespace lexalign {
namespace {

std::string trim(std::string_view s) {
  const auto b = s.find_first_not_of(" \t");
  if (b == std::string_view::npos) return {};
  const auto e = s.find_last_not_of(" \t");
  return std::string(s.substr(b, e - b + 1));
}

bool is_item_column(std::string_view name) {
  if (name.size() <= 4 || name.substr(0, 4) != "item") return false;
  return std::all_of(name.begin() + 4, name.end(),
                     [](char c) { return c >= '0' && c <= '9'; });
}

template <typename T>
bool parse_number(std::string_view s, T& out) {
  const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), out);
  return ec == std::errc() && ptr == s.data() + s.size();
}

}  // namespace

std::string_view condition_name(Condition c) {
  return c == Condition::hhr ? "HHR" : "HR";
}

Condition parse_condition(std::string_view text) {
  if (text == "HR" || text == "H-R") return Condition::hr;
  if (text == "HHR" || text == "H-H-R") return Condition::hhr;
  throw ValidationError("unknown condition '" + std::string(text) +
                        "' (expected HR or HHR)");
}

std::string measure_label(MeasureKind kind, std::string_view agent) {
  const std::string a(agent);
  switch (kind) {
    case MeasureKind::er_student:
      return "ER_student";
    case MeasureKind::ee_student:
      return "EE_student";
    case MeasureKind::er_agent:
      return "ER_" + a;
    case MeasureKind::ee_agent:
      return "EE_" + a;
    case MeasureKind::ied:
      return "IED";
  }
  return "?";
}

std::optional<double> ParticipantAlignment::get(MeasureKind kind) const {
  switch (kind) {
    case MeasureKind::er_student:
      return er_student;
    case MeasureKind::ee_student:
      return ee_student;
    case MeasureKind::er_agent:
      return er_agent;
    case MeasureKind::ee_agent:
      return ee_agent;
    case MeasureKind::ied:
      return ied;
  }
  return std::nullopt;
}

LikertMatrix StudyMetadata::items() const {
  LikertMatrix out;
  out.reserve(participants.size());
  for (const auto& p : participants) out.push_back(p.items);
  return out;
}

StudyMetadata parse_metadata(std::istream& in) {
  csv::Reader reader(in);
  StudyMetadata meta;
  const auto header = reader.next();
  if (!header) return meta;
  const auto& cols = header->fields;
  if (cols.size() < 3 || trim(cols[0]) != "participant" ||
      trim(cols[1]) != "condition") {
    throw ParseError(header->line,
                     "metadata header must start with participant,condition");
  }
  const bool direct = cols.size() == 3 && trim(cols[2]) == "rapport";
  if (!direct) {
    for (std::size_t c = 2; c < cols.size(); ++c) {
      if (!is_item_column(trim(cols[c]))) {
        throw ParseError(header->line, "unexpected metadata column '" + cols[c] +
                                           "' (expected rapport or itemN)");
      }
      meta.item_columns.push_back(trim(cols[c]));
    }
  }

  std::set<std::string> seen;
  while (auto rec = reader.next()) {
    if (rec->fields.size() != cols.size()) {
      throw ParseError(rec->line, "expected " + std::to_string(cols.size()) +
                                      " fields, got " +
                                      std::to_string(rec->fields.size()));
    }
    ParticipantInfo info;
    info.line = rec->line;
    info.participant = trim(rec->fields[0]);
    if (info.participant.empty()) throw ParseError(rec->line, "empty participant");
    if (!seen.insert(info.participant).second) {
      throw ParseError(rec->line, "duplicate participant '" + info.participant + "'");
    }
    try {
      info.condition = parse_condition(trim(rec->fields[1]));
    } catch (const ValidationError& e) {
      throw ParseError(rec->line, e.what());
    }
    if (direct) {
      double r = 0.0;
      if (!parse_number(trim(rec->fields[2]), r)) {
        throw ParseError(rec->line, "rapport is not a number: '" + rec->fields[2] + "'");
      }
      if (!(r >= 1.0 && r <= 6.0)) {
        throw ParseError(rec->line, "rapport " + trim(rec->fields[2]) +
                                        " outside [1, 6]");
      }
      info.rapport = r;
    } else {
      for (std::size_t c = 2; c < cols.size(); ++c) {
        int v = 0;
        if (!parse_number(trim(rec->fields[c]), v) || v < 1 || v > 6) {
          throw ParseError(rec->line, cols[c] + " must be an integer in 1..6, got '" +
                                          rec->fields[c] + "'");
        }
        info.items.push_back(v);
      }
    }
    meta.participants.push_back(std::move(info));
  }
  return meta;
}

std::vector<std::size_t> parse_item_list(std::string_view text) {
  std::set<std::size_t> out;
  auto bad = [&]() {
    return ValidationError("bad item list '" + std::string(text) +
                           "' (expected e.g. 4-15 or 1,2,5-7)");
  };
  std::size_t pos = 0;
  while (pos <= text.size()) {
    const auto comma = text.find(',', pos);
    const auto part = trim(text.substr(
        pos, comma == std::string_view::npos ? std::string_view::npos : comma - pos));
    const auto dash = part.find('-');
    std::size_t lo = 0;
    std::size_t hi = 0;
    if (dash == std::string::npos) {
      if (!parse_number(std::string_view(part), lo)) throw bad();
      hi = lo;
    } else {
      if (!parse_number(std::string_view(part).substr(0, dash), lo) ||
          !parse_number(std::string_view(part).substr(dash + 1), hi)) {
        throw bad();
      }
    }
    if (lo == 0 || hi < lo) throw bad();
    for (std::size_t i = lo; i <= hi; ++i) out.insert(i - 1);
    if (comma == std::string_view::npos) break;
    pos = comma + 1;
  }
  return {out.begin(), out.end()};
}

}  // namespace lexalign
