#pragma once

#include <cstddef>
#include <cstdint>
#include <map>
#include <span>
#include <vector>

namespace lexalign {

using TokenId = std::uint32_t;

/// Generalized suffix automaton over token-id strings. Recognizes exactly
/// the contiguous substrings of the strings added so far; strings are kept
/// separate, so no match crosses a string boundary.
class SuffixAutomaton {
 public:
  SuffixAutomaton();

  void add(std::span<const TokenId> text);

  /// Length of the longest prefix of `query` that occurs in some added string.
  std::size_t longest_prefix(std::span<const TokenId> query) const;

  bool contains(std::span<const TokenId> query) const {
    return longest_prefix(query) == query.size();
  }

  std::size_t state_count() const { return states_.size(); }

 private:
  struct State {
    std::size_t len = 0;
    int link = -1;
    std::map<TokenId, int> next;
  };

  int extend(int last, TokenId c);
  int clone(int p, int q, TokenId c);

  std::vector<State> states_;
};

}  // namespace lexalign
