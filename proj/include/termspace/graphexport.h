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

#ifndef TERMSPACE_GRAPHEXPORT_H_
#define TERMSPACE_GRAPHEXPORT_H_

#include <optional>
#include <string>
#include <vector>

#include "json.hpp"
#include "termspace/embeddings.h"
#include "termspace/lexicon.h"

namespace termspace {

struct MapNode {
  std::string id;     // term key
  std::string label;  // key with '_' shown as spaces
  std::optional<std::string> pos;
  std::optional<size_t> frequency;
};

struct MapEdge {
  std::string source;  // source < target
  std::string target;
  std::optional<double> weight;  // absent for hand-added edges
  std::optional<std::string> relation;
};

struct MapParams {
  std::string model_id;
  std::vector<std::string> seeds;
  size_t topn = 10;
  double threshold = 0.55;
  int depth = 1;
};

struct SemanticMap {
  std::string id;  // assigned when stored
  MapParams params;
  std::vector<MapNode> nodes;
  std::vector<MapEdge> edges;  // sorted by (source, target)
};

inline constexpr int kMaxMapDepth = 3;

// Breadth-first expansion: the seeds, then for each level up to `depth`
// the topn neighbors of every node added at the previous level. Every pair
// of nodes whose cosine reaches the threshold becomes an edge. Throws
// UnknownTermError for unknown seeds and kInvalidArgument for a bad depth
// or threshold.
SemanticMap BuildMap(const TermVectorModel &model, const MapParams &params);

// Term keys of a text found by the annotation pipeline, in order of first
// occurrence, restricted to the model vocabulary.
std::vector<std::string> DocumentTerms(const std::string &text, const Lexicon &lexicon,
                                       const TermVectorModel &model);

// Map over the terms of a text, without expansion.
SemanticMap BuildDocumentMap(const TermVectorModel &model, const std::string &model_id,
                             const std::string &text, const Lexicon &lexicon, double threshold);

nlohmann::ordered_json MapToJson(const SemanticMap &map);
SemanticMap MapFromJson(const nlohmann::json &j);

std::string NodeLabel(const std::string &key);

}  // namespace termspace

#endif  // TERMSPACE_GRAPHEXPORT_H_
