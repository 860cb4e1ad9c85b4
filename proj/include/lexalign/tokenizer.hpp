#pragma once

#include <string>
#include <string_view>
#include <vector>

namespace lexalign {

/// Atom of expression matching: one word, clitic suffix, or punctuation run.
struct Token {
  std::string surface;     ///< text as written in the transcript
  std::string normalized;  ///< case-folded form used for matching
  bool is_punctuation = false;

  friend bool operator==(const Token&, const Token&) = default;
};

/// Splits a raw utterance into tokens.
///
/// Rules, in order of precedence:
///  - whitespace separates tokens and is discarded;
///  - letters and digits form words; a hyphen between two word characters
///    stays inside the word ("three-fortieths"), as do '.', ',' and '/'
///    between two digits ("2.75", "3/4");
///  - an apostrophe between two word characters splits a contraction into
///    a stem and an apostrophe-prefixed suffix ("That's" -> "That", "'s");
///  - every other character is punctuation; a run of the same punctuation
///    character is one token ("..."), different characters are separate.
///
/// Typographic apostrophes (U+2018, U+2019, U+02BC) are folded to ASCII in
/// the normalized form only; surfaces keep the original bytes.
std::vector<Token> tokenize(std::string_view text);

/// Lowercases UTF-8 text and folds apostrophe variants. Idempotent.
std::string normalize(std::string_view text);

/// True iff `text` contains no letter or digit.
bool is_punctuation_text(std::string_view text);

}  // namespace lexalign
