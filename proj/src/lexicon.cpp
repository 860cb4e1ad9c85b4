#include "lexalign/lexicon.hpp"

#include <algorithm>
#include <numeric>
#include <set>
#include <span>
#include <tuple>
#include <unordered_map>

#include "lexalign/error.hpp"
#include "lexalign/suffix_automaton.hpp"

namespace lexalign {
namespace {

using Ids = std::vector<TokenId>;

struct IdsHash {
  std::size_t operator()(const Ids& v) const noexcept {
    std::size_t h = 1469598103934665603ull;
    for (TokenId id : v) h = (h ^ id) * 1099511628211ull;
    return h;
  }
};

struct Vocabulary {
  std::unordered_map<std::string, TokenId> ids;
  std::vector<std::string> forms;
  std::vector<bool> punctuation;

  TokenId intern(const Token& t) {
    auto [it, inserted] = ids.try_emplace(t.normalized, TokenId(forms.size()));
    if (inserted) {
      forms.push_back(t.normalized);
      punctuation.push_back(t.is_punctuation);
    }
    return it->second;
  }

  std::vector<std::string> spell(std::span<const TokenId> s) const {
    std::vector<std::string> out;
    out.reserve(s.size());
    for (TokenId id : s) out.push_back(forms[id]);
    return out;
  }

  bool has_word(std::span<const TokenId> s) const {
    return std::any_of(s.begin(), s.end(),
                       [&](TokenId id) { return !punctuation[id]; });
  }
};

// True if `s` occurs in `u` starting strictly before `before`.
bool occurs_before(std::span<const TokenId> u, std::span<const TokenId> s,
                   std::size_t before) {
  for (std::size_t a = 0; a < before && a + s.size() <= u.size(); ++a) {
    if (std::equal(s.begin(), s.end(), u.begin() + a)) return true;
  }
  return false;
}

struct Draft {
  Ids ids;
  std::vector<Instance> instances;
};

}  // namespace

std::string_view role_name(Role role) {
  switch (role) {
    case Role::initiation:
      return "initiation";
    case Role::establishment:
      return "establishment";
    case Role::reuse:
      return "reuse";
  }
  return "?";
}

std::string SharedExpression::text() const {
  std::string out;
  for (const auto& t : sequence) {
    if (!out.empty()) out.push_back(' ');
    out += t;
  }
  return out;
}

const SpeakerTally& ExpressionLexicon::tally(std::string_view speaker) const {
  for (const auto& t : tallies) {
    if (t.speaker == speaker) return t;
  }
  throw ContractViolation("speaker '" + std::string(speaker) +
                          "' is not part of dialogue '" + conversation_id + "'");
}

const SharedExpression* ExpressionLexicon::find(std::string_view text) const {
  for (const auto& e : expressions) {
    if (e.text() == text) return &e;
  }
  return nullptr;
}

void check_dyadic(const Dialogue& dialogue) {
  const auto& [a, b] = dialogue.pair;
  if (a.empty() || b.empty() || a == b) {
    throw ContractViolation("dialogue '" + dialogue.conversation_id +
                            "' needs two distinct participants");
  }
  for (const auto& u : dialogue.utterances) {
    const bool ok = (u.speaker == a && u.responder == b) ||
                    (u.speaker == b && u.responder == a);
    if (!ok) {
      throw ContractViolation("turn " + std::to_string(u.turn_index) + " (" +
                              u.speaker + " -> " + u.responder +
                              ") is outside dialogue pair {" + a + ", " + b +
                              "}");
    }
  }
}

ExpressionLexicon build_lexicon(const Dialogue& dialogue) {
  check_dyadic(dialogue);

  ExpressionLexicon lex;
  lex.conversation_id = dialogue.conversation_id;
  lex.speakers = dialogue.pair;
  lex.tallies[0].speaker = dialogue.pair[0];
  lex.tallies[1].speaker = dialogue.pair[1];

  Vocabulary vocab;
  const auto& utts = dialogue.utterances;
  std::vector<Ids> text(utts.size());
  std::vector<int> who(utts.size());
  for (std::size_t k = 0; k < utts.size(); ++k) {
    who[k] = utts[k].speaker == dialogue.pair[0] ? 0 : 1;
    for (const auto& t : utts[k].tokens) text[k].push_back(vocab.intern(t));
  }

  // Online pass: greedy cover against what the partner has said so far.
  std::array<SuffixAutomaton, 2> said;
  std::set<std::tuple<std::size_t, std::size_t, std::size_t>> counted;
  for (std::size_t k = 0; k < utts.size(); ++k) {
    const int self = who[k];
    const std::span<const TokenId> u = text[k];
    auto& tally = lex.tallies[self];
    std::size_t i = 0;
    while (i < u.size()) {
      const std::size_t len = said[1 - self].longest_prefix(u.subspan(i));
      const auto span = u.subspan(i, len);
      if (len == 0 || !vocab.has_word(span)) {
        ++i;
        continue;
      }
      const bool seen = said[self].contains(span) || occurs_before(u, span, i);
      const Role role = seen ? Role::reuse : Role::establishment;
      tally.expression_tokens += len;
      if (role == Role::establishment) tally.establishment_tokens += len;
      lex.attributed.push_back({utts[k].turn_index, utts[k].speaker, i, i + len,
                                vocab.spell(span), role});
      counted.emplace(k, i, i + len);
      i += len;
    }
    tally.tokens += u.size();
    said[self].add(u);
  }

  // Offline pass. reach[k][i] is the longest sequence starting at token i of
  // utterance k that the partner also produced somewhere in the dialogue.
  // Every substring of such a sequence is shared too, so an occurrence
  // [i, i + n) is enclosed by a longer shared occurrence iff it extends by
  // one token on either side.
  std::vector<std::vector<std::size_t>> reach(utts.size());
  std::unordered_map<Ids, std::size_t, IdsHash> index;
  std::vector<Draft> drafts;
  for (std::size_t k = 0; k < utts.size(); ++k) {
    const std::span<const TokenId> u = text[k];
    reach[k].resize(u.size());
    for (std::size_t i = 0; i < u.size(); ++i) {
      reach[k][i] = said[1 - who[k]].longest_prefix(u.subspan(i));
    }
    for (std::size_t i = 0; i < u.size(); ++i) {
      const std::size_t n = reach[k][i];
      if (n == 0 || (i > 0 && reach[k][i - 1] > n)) continue;
      const auto span = u.subspan(i, n);
      if (!vocab.has_word(span)) continue;
      Ids key(span.begin(), span.end());
      if (index.try_emplace(key, drafts.size()).second) {
        drafts.push_back({std::move(key), {}});
      }
    }
  }

  std::size_t longest = 0;
  for (const auto& d : drafts) longest = std::max(longest, d.ids.size());

  for (std::size_t k = 0; k < utts.size(); ++k) {
    const auto& u = text[k];
    for (std::size_t i = 0; i < u.size(); ++i) {
      Ids key;
      for (std::size_t n = 1; n <= longest && i + n <= u.size(); ++n) {
        key.push_back(u[i + n - 1]);
        const auto it = index.find(key);
        if (it == index.end()) continue;
        const bool enclosed =
            reach[k][i] > n || (i > 0 && reach[k][i - 1] > n);
        Instance inst;
        inst.turn = utts[k].turn_index;
        inst.speaker = utts[k].speaker;
        inst.begin = i;
        inst.end = i + n;
        inst.free = !enclosed;
        inst.counted = counted.contains({k, i, i + n});
        drafts[it->second].instances.push_back(std::move(inst));
      }
    }
  }

  for (auto& d : drafts) {
    SharedExpression e;
    e.sequence = vocab.spell(d.ids);
    e.instances = std::move(d.instances);
    e.initiator = e.instances.front().speaker;
    bool established = false;
    for (auto& inst : e.instances) {
      if (established) {
        inst.role = Role::reuse;
      } else if (inst.speaker != e.initiator) {
        inst.role = Role::establishment;
        e.established_at = inst.turn;
        established = true;
      } else {
        inst.role = Role::initiation;
      }
    }
    lex.expressions.push_back(std::move(e));
  }

  std::sort(lex.expressions.begin(), lex.expressions.end(),
            [](const SharedExpression& x, const SharedExpression& y) {
              const auto& a = x.instances.front();
              const auto& b = y.instances.front();
              return std::tuple(a.turn, a.begin, y.length(), x.sequence) <
                     std::tuple(b.turn, b.begin, x.length(), y.sequence);
            });
  return lex;
}

nlohmann::ordered_json lexicon_to_json(const ExpressionLexicon& lexicon) {
  using nlohmann::ordered_json;
  ordered_json out;
  out["conversation_id"] = lexicon.conversation_id;
  out["speakers"] = lexicon.speakers;
  ordered_json tallies = ordered_json::array();
  for (const auto& t : lexicon.tallies) {
    tallies.push_back({{"speaker", t.speaker},
                       {"tokens", t.tokens},
                       {"establishment_tokens", t.establishment_tokens},
                       {"expression_tokens", t.expression_tokens}});
  }
  out["tallies"] = std::move(tallies);
  ordered_json exprs = ordered_json::array();
  for (const auto& e : lexicon.expressions) {
    ordered_json je;
    je["sequence"] = e.sequence;
    je["initiator"] = e.initiator;
    je["established_at"] = e.established_at;
    ordered_json insts = ordered_json::array();
    for (const auto& i : e.instances) {
      insts.push_back({{"turn", i.turn},
                       {"speaker", i.speaker},
                       {"begin", i.begin},
                       {"end", i.end},
                       {"role", role_name(i.role)},
                       {"free", i.free},
                       {"counted", i.counted}});
    }
    je["instances"] = std::move(insts);
    exprs.push_back(std::move(je));
  }
  out["expressions"] = std::move(exprs);
  ordered_json spans = ordered_json::array();
  for (const auto& s : lexicon.attributed) {
    spans.push_back({{"turn", s.turn},
                     {"speaker", s.speaker},
                     {"begin", s.begin},
                     {"end", s.end},
                     {"sequence", s.sequence},
                     {"role", role_name(s.role)}});
  }
  out["attributed"] = std::move(spans);
  return out;
}

}  // namespace lexalign
