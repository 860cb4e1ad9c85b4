#include "lexalign/transcript.hpp"

#include <algorithm>
#include <map>
#include <optional>
#include <string>

#include <json.hpp>

#include "lexalign/csv.hpp"
#include "lexalign/error.hpp"

namespace lexalign {
namespace {

using nlohmann::json;

struct RawRecord {
  std::string conversation_id;
  std::size_t turn;
  std::string speaker;
  std::string responder;
  std::string text;
  std::size_t line;
};

std::string require_string(const json& obj, const char* key, std::size_t line) {
  const auto it = obj.find(key);
  if (it == obj.end()) {
    throw ParseError(line, std::string("missing field '") + key + "'");
  }
  if (!it->is_string()) {
    throw ParseError(line, std::string("field '") + key + "' must be a string");
  }
  return it->get<std::string>();
}

std::size_t require_turn(const json& obj, std::size_t line) {
  const auto it = obj.find("turn");
  if (it == obj.end()) throw ParseError(line, "missing field 'turn'");
  if (it->is_number_unsigned()) return it->get<std::size_t>();
  if (it->is_number_integer()) {
    throw ParseError(line, "field 'turn' must be non-negative");
  }
  throw ParseError(line, "field 'turn' must be an integer");
}

std::size_t parse_turn_text(const std::string& s, std::size_t line) {
  if (s.empty() || !std::all_of(s.begin(), s.end(),
                                [](char c) { return c >= '0' && c <= '9'; })) {
    throw ParseError(line, "field 'turn' must be a non-negative integer, got '" +
                               s + "'");
  }
  try {
    return static_cast<std::size_t>(std::stoull(s));
  } catch (const std::out_of_range&) {
    throw ParseError(line, "field 'turn' out of range");
  }
}

std::vector<RawRecord> read_jsonl(std::istream& in) {
  std::vector<RawRecord> out;
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.find_first_not_of(" \t") == std::string::npos) continue;
    json obj;
    try {
      obj = json::parse(line);
    } catch (const json::parse_error& e) {
      throw ParseError(lineno, std::string("invalid JSON: ") + e.what());
    }
    if (!obj.is_object()) throw ParseError(lineno, "record is not an object");
    RawRecord r;
    r.line = lineno;
    r.conversation_id = require_string(obj, "conversation_id", lineno);
    r.turn = require_turn(obj, lineno);
    r.speaker = require_string(obj, "speaker", lineno);
    r.responder = require_string(obj, "responder", lineno);
    r.text = require_string(obj, "text", lineno);
    out.push_back(std::move(r));
  }
  return out;
}

std::vector<RawRecord> read_csv(std::istream& in) {
  static const std::array<std::string, 5> kColumns = {
      "conversation_id", "turn", "speaker", "responder", "text"};
  std::vector<RawRecord> out;
  csv::Reader reader(in);
  auto header = reader.next();
  if (!header) return out;
  std::array<std::size_t, 5> index{};
  for (std::size_t c = 0; c < kColumns.size(); ++c) {
    const auto& f = header->fields;
    const auto it = std::find(f.begin(), f.end(), kColumns[c]);
    if (it == f.end()) {
      throw ParseError(header->line, "header lacks column '" + kColumns[c] + "'");
    }
    index[c] = static_cast<std::size_t>(it - f.begin());
  }
  while (auto rec = reader.next()) {
    if (rec->fields.size() != header->fields.size()) {
      throw ParseError(rec->line, "expected " +
                                      std::to_string(header->fields.size()) +
                                      " fields, got " +
                                      std::to_string(rec->fields.size()));
    }
    RawRecord r;
    r.line = rec->line;
    r.conversation_id = rec->fields[index[0]];
    r.turn = parse_turn_text(rec->fields[index[1]], rec->line);
    r.speaker = rec->fields[index[2]];
    r.responder = rec->fields[index[3]];
    r.text = rec->fields[index[4]];
    out.push_back(std::move(r));
  }
  return out;
}

}  // namespace

TranscriptFormat parse_format(std::string_view name) {
  if (name == "jsonl") return TranscriptFormat::jsonl;
  if (name == "csv") return TranscriptFormat::csv;
  throw ValidationError("unknown transcript format '" + std::string(name) +
                        "' (expected jsonl or csv)");
}

std::string_view format_name(TranscriptFormat format) {
  return format == TranscriptFormat::jsonl ? "jsonl" : "csv";
}

std::string_view format_extension(TranscriptFormat format) {
  return format_name(format);
}

std::string Dialogue::name() const {
  return conversation_id + "__" + pair[0] + "__" + pair[1];
}

std::vector<Transcript> parse_transcripts(std::istream& in,
                                          TranscriptFormat format) {
  const auto records =
      format == TranscriptFormat::jsonl ? read_jsonl(in) : read_csv(in);

  std::vector<Transcript> out;
  std::map<std::string, std::size_t> slot;
  for (const auto& r : records) {
    if (r.speaker.empty()) throw ParseError(r.line, "empty speaker");
    if (r.responder.empty()) throw ParseError(r.line, "empty responder");
    if (r.speaker == r.responder) {
      throw ParseError(r.line, "speaker and responder are both '" + r.speaker +
                                   "'");
    }
    auto [it, inserted] = slot.try_emplace(r.conversation_id, out.size());
    if (inserted) {
      out.emplace_back();
      out.back().conversation_id = r.conversation_id;
    }
    Transcript& t = out[it->second];
    if (!t.utterances.empty() && r.turn <= t.utterances.back().turn_index) {
      throw ParseError(r.line, "turn " + std::to_string(r.turn) +
                                   " does not follow turn " +
                                   std::to_string(t.utterances.back().turn_index));
    }
    Utterance u;
    u.turn_index = r.turn;
    u.speaker = r.speaker;
    u.responder = r.responder;
    u.text = r.text;
    u.tokens = tokenize(r.text);
    t.participants.insert(u.speaker);
    t.participants.insert(u.responder);
    t.utterances.push_back(std::move(u));
  }
  return out;
}

Transcript parse_transcript(std::istream& in, TranscriptFormat format) {
  auto all = parse_transcripts(in, format);
  if (all.empty()) return {};
  if (all.size() > 1) {
    throw ValidationError("stream mixes conversation ids '" +
                          all[0].conversation_id + "' and '" +
                          all[1].conversation_id + "'");
  }
  return std::move(all.front());
}

std::vector<Dialogue> split_dyadic(const Transcript& transcript) {
  std::map<std::array<std::string, 2>, Dialogue> by_pair;
  for (const auto& u : transcript.utterances) {
    std::array<std::string, 2> key = {u.speaker, u.responder};
    if (key[1] < key[0]) std::swap(key[0], key[1]);
    auto [it, inserted] = by_pair.try_emplace(key);
    if (inserted) {
      it->second.conversation_id = transcript.conversation_id;
      it->second.pair = key;
    }
    it->second.utterances.push_back(u);
  }
  std::vector<Dialogue> out;
  out.reserve(by_pair.size());
  for (auto& [key, d] : by_pair) out.push_back(std::move(d));
  return out;
}

Dialogue as_dialogue(const Transcript& transcript) {
  if (transcript.participants.size() != 2) {
    throw ContractViolation(
        "conversation '" + transcript.conversation_id + "' has " +
        std::to_string(transcript.participants.size()) +
        " participants; a dyadic dialogue needs exactly 2");
  }
  Dialogue d;
  d.conversation_id = transcript.conversation_id;
  d.pair = {*transcript.participants.begin(), *transcript.participants.rbegin()};
  d.utterances = transcript.utterances;
  return d;
}

void write_transcript(std::ostream& out, std::string_view conversation_id,
                      std::span<const Utterance> utterances,
                      TranscriptFormat format) {
  if (format == TranscriptFormat::jsonl) {
    for (const auto& u : utterances) {
      nlohmann::ordered_json obj;
      obj["conversation_id"] = conversation_id;
      obj["turn"] = u.turn_index;
      obj["speaker"] = u.speaker;
      obj["responder"] = u.responder;
      obj["text"] = u.text;
      out << obj.dump() << '\n';
    }
    return;
  }
  csv::write_row(out, {"conversation_id", "turn", "speaker", "responder", "text"});
  for (const auto& u : utterances) {
    csv::write_row(out, {std::string(conversation_id),
                         std::to_string(u.turn_index), u.speaker, u.responder,
                         u.text});
  }
}

}  // namespace lexalign
