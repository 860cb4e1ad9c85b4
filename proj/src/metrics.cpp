#include "lexalign/metrics.hpp"

#include <charconv>
#include <cstdlib>

#include "lexalign/error.hpp"

namespace lexalign {
namespace {

Measure ratio(std::size_t num, std::size_t den) {
  if (den == 0) return std::nullopt;
  return Fraction(static_cast<std::int64_t>(num), static_cast<std::int64_t>(den));
}

void require_member(const ExpressionLexicon& lex, std::string_view speaker) {
  (void)lex.tally(speaker);
}

std::int64_t parse_int(std::string_view s) {
  std::int64_t v = 0;
  const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc() || ptr != s.data() + s.size()) {
    throw ValidationError("not an integer: '" + std::string(s) + "'");
  }
  return v;
}

}  // namespace

const SpeakerMetrics& AlignmentMetrics::speaker(std::string_view id) const {
  for (const auto& s : speakers) {
    if (s.speaker == id) return s;
  }
  throw ContractViolation("speaker '" + std::string(id) + "' is not part of '" +
                          conversation_id + "'");
}

const SpeakerMetrics& AlignmentMetrics::partner_of(std::string_view id) const {
  const auto& self = speaker(id);
  return &self == &speakers[0] ? speakers[1] : speakers[0];
}

Measure compute_ie(const ExpressionLexicon& lexicon, std::string_view speaker) {
  require_member(lexicon, speaker);
  std::size_t initiated = 0;
  for (const auto& e : lexicon.expressions) {
    if (e.initiator == speaker) ++initiated;
  }
  return ratio(initiated, lexicon.expressions.size());
}

Measure compute_er(const ExpressionLexicon& lexicon, std::string_view speaker) {
  const auto& t = lexicon.tally(speaker);
  return ratio(t.expression_tokens, t.tokens);
}

Measure compute_ee(const ExpressionLexicon& lexicon, std::string_view speaker) {
  const auto& t = lexicon.tally(speaker);
  return ratio(t.establishment_tokens, t.tokens);
}

Measure compute_ied(const ExpressionLexicon& lexicon) {
  const auto a = compute_ie(lexicon, lexicon.speakers[0]);
  const auto b = compute_ie(lexicon, lexicon.speakers[1]);
  if (!a || !b) return std::nullopt;
  return abs(*a - *b);
}

AlignmentMetrics compute_metrics(const ExpressionLexicon& lexicon) {
  AlignmentMetrics m;
  m.conversation_id = lexicon.conversation_id;
  for (std::size_t s = 0; s < 2; ++s) {
    const auto& id = lexicon.speakers[s];
    auto& out = m.speakers[s];
    out.speaker = id;
    out.tokens = lexicon.tally(id).tokens;
    for (const auto& e : lexicon.expressions) {
      if (e.initiator == id) ++out.initiated;
    }
    out.ie = compute_ie(lexicon, id);
    out.er = compute_er(lexicon, id);
    out.ee = compute_ee(lexicon, id);
  }
  m.ied = compute_ied(lexicon);
  m.expression_count = lexicon.expressions.size();
  std::size_t total_length = 0;
  for (const auto& e : lexicon.expressions) total_length += e.length();
  m.mean_expression_length = ratio(total_length, m.expression_count);
  return m;
}

double to_double(const Fraction& f) {
  return static_cast<double>(f.numerator()) /
         static_cast<double>(f.denominator());
}

std::optional<double> to_double(const Measure& m) {
  if (!m) return std::nullopt;
  return to_double(*m);
}

std::string format_exact(const Fraction& f) {
  if (f.denominator() == 1) return std::to_string(f.numerator());
  return std::to_string(f.numerator()) + "/" + std::to_string(f.denominator());
}

Fraction parse_exact(std::string_view text) {
  if (const auto slash = text.find('/'); slash != std::string_view::npos) {
    const auto den = parse_int(text.substr(slash + 1));
    if (den == 0) throw ValidationError("zero denominator in '" + std::string(text) + "'");
    return Fraction(parse_int(text.substr(0, slash)), den);
  }
  if (const auto dot = text.find('.'); dot != std::string_view::npos) {
    const auto frac = text.substr(dot + 1);
    if (frac.size() > 15) {
      throw ValidationError("too many decimals in '" + std::string(text) + "'");
    }
    std::int64_t scale = 1;
    for (std::size_t i = 0; i < frac.size(); ++i) scale *= 10;
    auto whole_part = text.substr(0, dot);
    const bool negative = !whole_part.empty() && whole_part.front() == '-';
    if (negative) whole_part.remove_prefix(1);
    const std::int64_t whole = whole_part.empty() ? 0 : parse_int(whole_part);
    const std::int64_t part = frac.empty() ? 0 : parse_int(frac);
    Fraction f(whole * scale + part, scale);
    return negative ? -f : f;
  }
  return Fraction(parse_int(text));
}

nlohmann::ordered_json metrics_to_json(const AlignmentMetrics& metrics) {
  using nlohmann::ordered_json;
  auto measure = [](const Measure& m) -> ordered_json {
    if (!m) return nullptr;
    return {{"value", to_double(*m)}, {"exact", format_exact(*m)}};
  };
  ordered_json out;
  out["conversation_id"] = metrics.conversation_id;
  ordered_json speakers = ordered_json::array();
  for (const auto& s : metrics.speakers) {
    speakers.push_back({{"speaker", s.speaker},
                        {"tokens", s.tokens},
                        {"initiated", s.initiated},
                        {"ie", measure(s.ie)},
                        {"er", measure(s.er)},
                        {"ee", measure(s.ee)}});
  }
  out["speakers"] = std::move(speakers);
  out["ied"] = measure(metrics.ied);
  out["expression_count"] = metrics.expression_count;
  out["mean_expression_length"] = measure(metrics.mean_expression_length);
  return out;
}

}  // namespace lexalign
