#pragma once

#include <array>
#include <cstddef>
#include <istream>
#include <ostream>
#include <set>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "lexalign/tokenizer.hpp"

namespace lexalign {

enum class TranscriptFormat { jsonl, csv };

/// Parses "jsonl" or "csv"; throws ValidationError otherwise.
TranscriptFormat parse_format(std::string_view name);
std::string_view format_name(TranscriptFormat format);
/// File extension without the dot ("jsonl", "csv").
std::string_view format_extension(TranscriptFormat format);

struct Utterance {
  std::size_t turn_index = 0;
  std::string speaker;
  std::string responder;
  std::string text;
  std::vector<Token> tokens;
};

struct Transcript {
  std::string conversation_id;
  std::vector<Utterance> utterances;  ///< strictly increasing turn_index
  std::set<std::string> participants;
};

/// Utterances exchanged by exactly two participants, in original order and
/// with original turn indices. `pair` is sorted.
struct Dialogue {
  std::string conversation_id;
  std::array<std::string, 2> pair;
  std::vector<Utterance> utterances;

  /// `<conversation_id>__<A>__<B>`
  std::string name() const;
};

/// Reads all conversations in a stream, grouped by conversation_id in order
/// of first appearance. Throws ParseError naming the offending line for a
/// missing or mistyped field, speaker == responder, or a turn index that
/// does not strictly increase within its conversation.
std::vector<Transcript> parse_transcripts(std::istream& in,
                                          TranscriptFormat format);

/// Single-conversation variant. An empty stream yields an empty transcript;
/// a stream mixing conversation ids is a ParseError.
Transcript parse_transcript(std::istream& in, TranscriptFormat format);

/// One dialogue per unordered participant pair that has at least one
/// utterance, ordered by pair. Every utterance lands in exactly one dialogue.
std::vector<Dialogue> split_dyadic(const Transcript& transcript);

/// Views a two-party transcript as a dialogue. Throws ContractViolation if
/// the transcript has other than two participants.
Dialogue as_dialogue(const Transcript& transcript);

/// Writes utterances in canonical form: JSONL with fields in schema order,
/// or CSV with the schema header.
void write_transcript(std::ostream& out, std::string_view conversation_id,
                      std::span<const Utterance> utterances,
                      TranscriptFormat format);

}  // namespace lexalign
