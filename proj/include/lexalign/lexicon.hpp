#pragma once

#include <array>
#include <cstddef>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

#include "lexalign/transcript.hpp"

namespace lexalign {

/// How an occurrence relates to the life cycle of its expression.
///  - initiation: produced by the initiator before the partner ever used it;
///  - establishment: the partner's first production, which makes it shared;
///  - reuse: any production after establishment, by either speaker.
enum class Role { initiation, establishment, reuse };

std::string_view role_name(Role role);

/// One occurrence of an expression's token sequence in the dialogue.
struct Instance {
  std::size_t turn = 0;  ///< turn_index of the utterance
  std::string speaker;
  std::size_t begin = 0;  ///< token offsets within the utterance, [begin, end)
  std::size_t end = 0;
  Role role = Role::initiation;
  /// Not strictly inside an occurrence of a longer shared sequence.
  bool free = false;
  /// Selected by the greedy cover and therefore counted in token totals.
  bool counted = false;

  friend bool operator==(const Instance&, const Instance&) = default;
};

struct SharedExpression {
  std::vector<std::string> sequence;  ///< normalized token forms
  std::string initiator;
  std::size_t established_at = 0;  ///< turn of the partner's first production
  std::vector<Instance> instances;  ///< every occurrence, in dialogue order

  std::size_t length() const { return sequence.size(); }
  /// Space-joined normalized sequence, e.g. "hours ?".
  std::string text() const;

  friend bool operator==(const SharedExpression&,
                         const SharedExpression&) = default;
};

/// A span picked by the greedy leftmost-longest cover of an utterance.
struct AttributedSpan {
  std::size_t turn = 0;
  std::string speaker;
  std::size_t begin = 0;
  std::size_t end = 0;
  std::vector<std::string> sequence;
  Role role = Role::reuse;  ///< establishment or reuse

  friend bool operator==(const AttributedSpan&, const AttributedSpan&) = default;
};

struct SpeakerTally {
  std::string speaker;
  std::size_t tokens = 0;                ///< everything the speaker said
  std::size_t establishment_tokens = 0;  ///< in spans that establish
  std::size_t expression_tokens = 0;     ///< in spans that establish or reuse

  friend bool operator==(const SpeakerTally&, const SpeakerTally&) = default;
};

struct ExpressionLexicon {
  std::string conversation_id;
  std::array<std::string, 2> speakers;
  /// Ordered by first occurrence (turn, offset); longer first on ties.
  std::vector<SharedExpression> expressions;
  std::array<SpeakerTally, 2> tallies;
  std::vector<AttributedSpan> attributed;  ///< in dialogue order

  /// Throws ContractViolation for a speaker outside the pair.
  const SpeakerTally& tally(std::string_view speaker) const;
  const SharedExpression* find(std::string_view text) const;

  friend bool operator==(const ExpressionLexicon&,
                         const ExpressionLexicon&) = default;
};

/// Throws ContractViolation unless every utterance is exchanged between the
/// two members of `dialogue.pair`.
void check_dyadic(const Dialogue& dialogue);

/// Builds the shared-expression lexicon of a dyadic dialogue.
///
/// Utterances are consumed in order. Each utterance is covered greedily,
/// leftmost-longest, by spans that the partner produced in an earlier turn
/// and that are not punctuation-only; the spans' tokens are attributed to
/// the speaker as establishment (the speaker never produced the sequence
/// before) or reuse. Once the dialogue is consumed, every sequence produced
/// by both speakers that has at least one free occurrence becomes an
/// expression; its initiator is whoever produced it first.
ExpressionLexicon build_lexicon(const Dialogue& dialogue);

/// Audit trail: expressions with instances, tallies, and attributed spans.
nlohmann::ordered_json lexicon_to_json(const ExpressionLexicon& lexicon);

}  // namespace lexalign
