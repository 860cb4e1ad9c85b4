#include "lexalign/suffix_automaton.hpp"

namespace lexalign {

SuffixAutomaton::SuffixAutomaton() { states_.emplace_back(); }

void SuffixAutomaton::add(std::span<const TokenId> text) {
  int last = 0;
  for (TokenId c : text) last = extend(last, c);
}

std::size_t SuffixAutomaton::longest_prefix(
    std::span<const TokenId> query) const {
  int v = 0;
  std::size_t n = 0;
  for (TokenId c : query) {
    const auto& next = states_[v].next;
    const auto it = next.find(c);
    if (it == next.end()) break;
    v = it->second;
    ++n;
  }
  return n;
}

// Splits q so that the state reached from p on c has length len(p) + 1.
int SuffixAutomaton::clone(int p, int q, TokenId c) {
  const int cl = static_cast<int>(states_.size());
  State copy = states_[q];
  copy.len = states_[p].len + 1;
  states_.push_back(std::move(copy));
  states_[q].link = cl;
  while (p != -1) {
    auto it = states_[p].next.find(c);
    if (it == states_[p].next.end() || it->second != q) break;
    it->second = cl;
    p = states_[p].link;
  }
  return cl;
}

int SuffixAutomaton::extend(int last, TokenId c) {
  // The transition may already exist when a new string repeats material
  // from an earlier one.
  if (const auto it = states_[last].next.find(c); it != states_[last].next.end()) {
    const int q = it->second;
    if (states_[last].len + 1 == states_[q].len) return q;
    return clone(last, q, c);
  }

  const int cur = static_cast<int>(states_.size());
  states_.emplace_back();
  states_[cur].len = states_[last].len + 1;

  int p = last;
  while (p != -1 && !states_[p].next.contains(c)) {
    states_[p].next[c] = cur;
    p = states_[p].link;
  }
  if (p == -1) {
    states_[cur].link = 0;
  } else {
    const int q = states_[p].next[c];
    if (states_[p].len + 1 == states_[q].len) {
      states_[cur].link = q;
    } else {
      const int cl = clone(p, q, c);
      states_[cur].link = cl;
    }
  }
  return cur;
}

}  // namespace lexalign
