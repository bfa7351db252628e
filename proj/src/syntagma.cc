// Copyright 2026 The termspace Authors. All Rights Reserved.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "termspace/syntagma.h"

#include <algorithm>
#include <string>
#include <unordered_map>

namespace termspace {

std::vector<RelationEdge> SentenceParse::edges() const {
  std::vector<RelationEdge> all;
  for (const Syntagma &s : syntagmas) all.insert(all.end(), s.edges.begin(), s.edges.end());
  std::sort(all.begin(), all.end(), [](const RelationEdge &a, const RelationEdge &b) {
    return std::tie(a.dependent, a.head) < std::tie(b.dependent, b.head);
  });
  return all;
}

DeterminantKey FormDeterminant(const AnalyzedToken &first, const AnalyzedToken &second,
                               const std::vector<const AnalyzedToken *> &between) {
  return FormDeterminant(first.analysis(), second.analysis(), between);
}

namespace {

// Links between tokens a < b allowed by the lexicon, in correlator order.
std::vector<RelationEdge> Links(const std::vector<AnalyzedToken> &tokens, size_t a, size_t b,
                                const Lexicon &lexicon) {
  if (a > b) std::swap(a, b);
  const MorphAnalysis &first = tokens[a].analysis();
  const MorphAnalysis &second = tokens[b].analysis();
  auto ids = lexicon.LookupDeterminant(
      FormDeterminant(first, second, FunctionWordsBetween(tokens, a, b)));
  std::vector<RelationEdge> links;
  for (const CorrelatorMatch &m :
       lexicon.MatchCorrelators(ids, first.sem_attrs, second.sem_attrs)) {
    bool head_first = m.head_position == HeadPosition::kFirst;
    links.push_back({head_first ? a : b, head_first ? b : a, m.relation_name, m.correlator_id});
  }
  return links;
}

struct State {
  std::vector<Syntagma> syntagmas;
  long current = -1;  // index into syntagmas, -1 before the first word
  size_t step = 0;    // next word of the placement order

  std::string Fingerprint() const {
    std::string f = std::to_string(step) + "|" + std::to_string(current);
    for (const Syntagma &s : syntagmas) {
      f += "|";
      for (size_t m : s.members) f += std::to_string(m) + ",";
      f += "/" + std::to_string(s.main) + "/" + std::to_string(s.last) + "/";
      for (const RelationEdge &e : s.edges) {
        f += std::to_string(e.head) + ">" + std::to_string(e.dependent) + ":" +
             e.correlator_id + ";";
      }
    }
    return f;
  }
};

// A move from one state: attach/merge through `edge`, or open a syntagma.
struct Move {
  enum Kind { kOpen, kAttach, kMerge } kind;
  RelationEdge edge;
  size_t a = 0;  // merge: syntagma indices a < b
  size_t b = 0;
};

class Search {
 public:
  Search(const std::vector<AnalyzedToken> &tokens, const Lexicon &lexicon,
         std::vector<size_t> order, std::optional<CoreRelation> core, size_t right_count,
         const ParseOptions &options)
      : tokens_(tokens),
        lexicon_(lexicon),
        order_(std::move(order)),
        core_(std::move(core)),
        right_count_(right_count),
        options_(options) {}

  State Run(State start) { return Best(std::move(start)); }

  size_t branches() const { return branches_; }
  bool truncated() const { return truncated_; }

 private:
  std::vector<size_t> Targets(const Syntagma &s) const {
    if (s.main == s.last) return {s.main};
    return {s.main, s.last};
  }

  std::vector<Move> Moves(const State &st) const {
    std::vector<Move> moves;
    if (st.step < order_.size()) {
      size_t w = order_[st.step];
      if (st.current >= 0) {
        for (size_t t : Targets(st.syntagmas[st.current])) {
          for (RelationEdge &e : Links(tokens_, t, w, lexicon_)) {
            moves.push_back({Move::kAttach, std::move(e)});
          }
        }
      }
      if (moves.empty()) moves.push_back({Move::kOpen, {}});
      return moves;
    }
    for (size_t a = 0; a < st.syntagmas.size(); ++a) {
      for (size_t b = a + 1; b < st.syntagmas.size(); ++b) {
        for (size_t ta : Targets(st.syntagmas[a])) {
          for (size_t tb : Targets(st.syntagmas[b])) {
            for (RelationEdge &e : Links(tokens_, ta, tb, lexicon_)) {
              moves.push_back({Move::kMerge, std::move(e), a, b});
            }
          }
        }
      }
    }
    return moves;
  }

  State Apply(const State &st, const Move &move) const {
    State next = st;
    if (move.kind == Move::kMerge) {
      Syntagma &a = next.syntagmas[move.a];
      Syntagma &b = next.syntagmas[move.b];
      bool head_in_a = std::binary_search(a.members.begin(), a.members.end(), move.edge.head);
      Syntagma merged;
      merged.members = a.members;
      merged.members.insert(merged.members.end(), b.members.begin(), b.members.end());
      std::sort(merged.members.begin(), merged.members.end());
      merged.edges = a.edges;
      merged.edges.insert(merged.edges.end(), b.edges.begin(), b.edges.end());
      merged.edges.push_back(move.edge);
      merged.main = head_in_a ? a.main : b.main;
      merged.last = b.last;
      next.syntagmas[move.a] = std::move(merged);
      next.syntagmas.erase(next.syntagmas.begin() + move.b);
      return next;
    }

    size_t w = order_[next.step];
    if (move.kind == Move::kOpen) {
      Syntagma s;
      s.members = {w};
      s.main = s.last = w;
      next.syntagmas.push_back(std::move(s));
      next.current = static_cast<long>(next.syntagmas.size()) - 1;
    } else {
      Syntagma &s = next.syntagmas[next.current];
      if (s.edges.empty()) s.main = move.edge.head;
      s.members.insert(std::upper_bound(s.members.begin(), s.members.end(), w), w);
      s.edges.push_back(move.edge);
      s.last = w;
    }
    ++next.step;
    EnterLeftPass(&next);
    return next;
  }

  // The left pass resumes from the core syntagma with its left member as
  // the most recent word.
  void EnterLeftPass(State *st) const {
    if (core_ && st->step == right_count_) {
      st->current = 0;
      st->syntagmas[0].last = core_->left;
    }
  }

  State Best(State st) {
    std::string key = st.Fingerprint();
    if (auto it = memo_.find(key); it != memo_.end()) return it->second;

    std::vector<Move> moves = Moves(st);
    State best;
    bool found = false;
    if (moves.empty()) {
      best = st;
      found = true;
    }
    for (size_t i = 0; i < moves.size(); ++i) {
      if (i > 0) {
        if (branches_ >= options_.max_branches) {
          truncated_ = true;
          break;
        }
      }
      ++branches_;
      State result = Best(Apply(st, moves[i]));
      if (!found || result.syntagmas.size() < best.syntagmas.size()) {
        best = std::move(result);
        found = true;
      }
      if (best.syntagmas.size() <= 1) break;
    }
    memo_.emplace(std::move(key), best);
    return best;
  }

  const std::vector<AnalyzedToken> &tokens_;
  const Lexicon &lexicon_;
  std::vector<size_t> order_;
  std::optional<CoreRelation> core_;
  size_t right_count_;
  const ParseOptions &options_;
  std::unordered_map<std::string, State> memo_;
  size_t branches_ = 0;
  bool truncated_ = false;
};

}  // namespace

std::optional<CoreRelation> FindCore(const std::vector<AnalyzedToken> &tokens,
                                     const Lexicon &lexicon) {
  std::vector<size_t> content;
  for (size_t i = 0; i < tokens.size(); ++i) {
    if (tokens[i].is_content()) content.push_back(i);
  }
  for (size_t k = 0; k + 1 < content.size(); ++k) {
    size_t a = content[k];
    size_t b = content[k + 1];
    if (b - a - 1 > 4) continue;
    bool window = true;
    for (size_t j = a + 1; j < b; ++j) {
      if (tokens[j].token.kind != TokenKind::kWord) window = false;
    }
    if (!window) continue;
    for (RelationEdge &e : Links(tokens, a, b, lexicon)) {
      if (e.relation_name == kPredicativeRelation) return CoreRelation{a, b, std::move(e)};
    }
  }
  return std::nullopt;
}

SentenceParse ParseTokens(std::vector<AnalyzedToken> tokens, const Lexicon &lexicon,
                          const ParseOptions &options) {
  SentenceParse parse;
  std::vector<size_t> content;
  for (size_t i = 0; i < tokens.size(); ++i) {
    if (tokens[i].is_content()) {
      if (!tokens[i].selected) {
        if (tokens[i].candidates.empty()) {
          tokens[i].candidates.push_back(FallbackAnalysis(tokens[i].token.surface, lexicon));
        }
        tokens[i].selected = 0;
      }
      content.push_back(i);
    }
  }

  std::optional<CoreRelation> core = FindCore(tokens, lexicon);
  std::vector<size_t> order;
  size_t right_count = 0;
  State start;
  if (core) {
    for (size_t i : content) {
      if (i > core->right) order.push_back(i);
    }
    right_count = order.size();
    for (auto it = content.rbegin(); it != content.rend(); ++it) {
      if (*it < core->left) order.push_back(*it);
    }
    Syntagma s;
    s.members = {core->left, core->right};
    s.edges = {core->edge};
    s.main = core->edge.head;
    s.last = core->right;
    start.syntagmas.push_back(std::move(s));
    start.current = 0;
  } else {
    order = content;
  }

  Search search(tokens, lexicon, std::move(order), core, right_count, options);
  if (core && right_count == 0) start.syntagmas[0].last = core->left;
  State best = search.Run(std::move(start));

  parse.tokens = std::move(tokens);
  parse.syntagmas = std::move(best.syntagmas);
  parse.unlinked_count = parse.syntagmas.size();
  parse.branches = search.branches();
  parse.truncated = search.truncated();
  return parse;
}

SentenceParse ParseSentence(const Sentence &sentence, const Lexicon &lexicon,
                            const ParseOptions &options) {
  std::vector<AnalyzedToken> tokens = AnalyzeTokens(sentence.tokens, lexicon);
  Disambiguate(&tokens, lexicon);
  SentenceParse parse = ParseTokens(std::move(tokens), lexicon, options);
  parse.document_id = sentence.document_id;
  parse.sentence_index = sentence.index;
  return parse;
}

}  // namespace termspace
