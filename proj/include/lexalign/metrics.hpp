#pragma once

#include <array>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>

#include <boost/rational.hpp>
#include <json.hpp>

#include "lexalign/lexicon.hpp"

namespace lexalign {

using Fraction = boost::rational<std::int64_t>;

/// Absent means "not measurable" (zero denominator), which is distinct
/// from a measured zero.
using Measure = std::optional<Fraction>;

struct SpeakerMetrics {
  std::string speaker;
  std::size_t tokens = 0;
  std::size_t initiated = 0;
  Measure ie;  ///< initiated expressions / all expressions
  Measure er;  ///< establishment-or-reuse tokens / tokens
  Measure ee;  ///< establishment tokens / tokens

  friend bool operator==(const SpeakerMetrics&, const SpeakerMetrics&) = default;
};

struct AlignmentMetrics {
  std::string conversation_id;
  std::array<SpeakerMetrics, 2> speakers;
  Measure ied;
  std::size_t expression_count = 0;
  Measure mean_expression_length;

  const SpeakerMetrics& speaker(std::string_view id) const;
  const SpeakerMetrics& partner_of(std::string_view id) const;

  friend bool operator==(const AlignmentMetrics&,
                         const AlignmentMetrics&) = default;
};

Measure compute_ie(const ExpressionLexicon& lexicon, std::string_view speaker);
Measure compute_er(const ExpressionLexicon& lexicon, std::string_view speaker);
Measure compute_ee(const ExpressionLexicon& lexicon, std::string_view speaker);
Measure compute_ied(const ExpressionLexicon& lexicon);
AlignmentMetrics compute_metrics(const ExpressionLexicon& lexicon);

double to_double(const Fraction& f);
std::optional<double> to_double(const Measure& m);

/// "4/33"; integers print without a denominator ("1").
std::string format_exact(const Fraction& f);
/// Parses "4/33", "1", or a decimal such as "0.121" (converted exactly).
Fraction parse_exact(std::string_view text);

nlohmann::ordered_json metrics_to_json(const AlignmentMetrics& metrics);

}  // namespace lexalign
