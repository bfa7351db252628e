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

#include "termspace/graphexport.h"

#include <algorithm>
#include <cmath>
#include <set>

#include "termspace/error.h"
#include "termspace/termex.h"
#include "termspace/vectorstore.h"

namespace termspace {

using json = nlohmann::json;
using ordered_json = nlohmann::ordered_json;

std::string NodeLabel(const std::string &key) {
  std::string label = key;
  std::replace(label.begin(), label.end(), '_', ' ');
  return label;
}

namespace {

MapNode MakeNode(const TermVectorModel &model, size_t id) {
  const VocabWord &w = model.vocabulary[id];
  MapNode node{w.key, NodeLabel(w.key), std::nullopt, std::nullopt};
  if (model.has_metadata) {
    if (w.head_pos) node.pos = std::string(PosName(*w.head_pos));
    node.frequency = w.frequency;
  }
  return node;
}

void AddEdges(const TermVectorModel &model, const std::vector<size_t> &ids, double threshold,
              SemanticMap *map) {
  for (size_t i = 0; i < ids.size(); ++i) {
    for (size_t j = i + 1; j < ids.size(); ++j) {
      double w = Cosine(model.vector(ids[i]), model.vector(ids[j]));
      if (w < threshold) continue;
      const std::string &a = model.vocabulary[ids[i]].key;
      const std::string &b = model.vocabulary[ids[j]].key;
      map->edges.push_back({std::min(a, b), std::max(a, b), w, std::nullopt});
    }
  }
  std::sort(map->edges.begin(), map->edges.end(), [](const MapEdge &x, const MapEdge &y) {
    return std::tie(x.source, x.target) < std::tie(y.source, y.target);
  });
}

void CheckParams(const MapParams &params) {
  if (params.depth < 0 || params.depth > kMaxMapDepth) {
    throw Error(ErrorKind::kInvalidArgument,
                "depth must be between 0 and " + std::to_string(kMaxMapDepth));
  }
  if (!std::isfinite(params.threshold)) {
    throw Error(ErrorKind::kInvalidArgument, "threshold must be a finite number");
  }
}

}  // namespace

SemanticMap BuildMap(const TermVectorModel &model, const MapParams &params) {
  CheckParams(params);
  SemanticMap map;
  map.params = params;
  std::vector<size_t> ids;
  std::set<size_t> seen;
  std::vector<size_t> frontier;
  for (const std::string &seed : params.seeds) {
    auto id = model.vocabulary.Find(seed);
    if (!id) throw UnknownTermError(seed);
    if (seen.insert(*id).second) {
      ids.push_back(*id);
      frontier.push_back(*id);
    }
  }
  for (int level = 1; level <= params.depth; ++level) {
    std::vector<size_t> next;
    for (size_t id : frontier) {
      for (const Neighbor &n : Neighbors(model, model.vocabulary[id].key, params.topn)) {
        size_t nid = *model.vocabulary.Find(n.key);
        if (seen.insert(nid).second) {
          ids.push_back(nid);
          next.push_back(nid);
        }
      }
    }
    frontier = std::move(next);
  }
  for (size_t id : ids) map.nodes.push_back(MakeNode(model, id));
  AddEdges(model, ids, params.threshold, &map);
  return map;
}

std::vector<std::string> DocumentTerms(const std::string &text, const Lexicon &lexicon,
                                       const TermVectorModel &model) {
  Document doc{"document", "inline", text};
  auto is_abbreviation = [&](std::string_view w) { return lexicon.IsAbbreviation(w); };
  std::vector<std::string> keys;
  std::set<std::string> seen;
  for (const Sentence &s : SplitDocument(doc, is_abbreviation)) {
    AnnotatedSentence a = AnnotateSentence(s, lexicon);
    for (const TermCandidate &c : a.terms) {
      if (model.vocabulary.Find(c.term.key) && seen.insert(c.term.key).second) {
        keys.push_back(c.term.key);
      }
    }
  }
  return keys;
}

SemanticMap BuildDocumentMap(const TermVectorModel &model, const std::string &model_id,
                             const std::string &text, const Lexicon &lexicon, double threshold) {
  MapParams params;
  params.model_id = model_id;
  params.seeds = DocumentTerms(text, lexicon, model);
  params.depth = 0;
  params.topn = 0;
  params.threshold = threshold;
  return BuildMap(model, params);
}

ordered_json MapToJson(const SemanticMap &map) {
  ordered_json nodes = ordered_json::array();
  for (const MapNode &n : map.nodes) {
    ordered_json node = {{"id", n.id}, {"label", n.label}};
    if (n.pos) node["pos"] = *n.pos;
    if (n.frequency) node["freq"] = *n.frequency;
    nodes.push_back(std::move(node));
  }
  ordered_json edges = ordered_json::array();
  for (const MapEdge &e : map.edges) {
    ordered_json edge = {{"source", e.source}, {"target", e.target}};
    edge["weight"] = e.weight ? ordered_json(*e.weight) : ordered_json(nullptr);
    if (e.relation) edge["relation"] = *e.relation;
    edges.push_back(std::move(edge));
  }
  ordered_json j;
  j["schema"] = 1;
  if (!map.id.empty()) j["id"] = map.id;
  j["params"] = {{"model", map.params.model_id},
                 {"seeds", map.params.seeds},
                 {"topn", map.params.topn},
                 {"threshold", map.params.threshold},
                 {"depth", map.params.depth}};
  j["nodes"] = std::move(nodes);
  j["edges"] = std::move(edges);
  return j;
}

SemanticMap MapFromJson(const json &j) {
  SemanticMap map;
  try {
    if (j.value("schema", 0) != 1) {
      throw Error(ErrorKind::kParse, "unsupported map schema");
    }
    map.id = j.value("id", "");
    const json &p = j.at("params");
    map.params.model_id = p.value("model", "");
    map.params.seeds = p.value("seeds", std::vector<std::string>{});
    map.params.topn = p.value("topn", size_t{0});
    map.params.threshold = p.value("threshold", 0.0);
    map.params.depth = p.value("depth", 0);
    for (const json &n : j.at("nodes")) {
      MapNode node;
      node.id = n.at("id").get<std::string>();
      node.label = n.value("label", NodeLabel(node.id));
      if (n.contains("pos")) node.pos = n["pos"].get<std::string>();
      if (n.contains("freq")) node.frequency = n["freq"].get<size_t>();
      map.nodes.push_back(std::move(node));
    }
    for (const json &e : j.at("edges")) {
      MapEdge edge;
      edge.source = e.at("source").get<std::string>();
      edge.target = e.at("target").get<std::string>();
      if (e.contains("weight") && !e["weight"].is_null()) edge.weight = e["weight"].get<double>();
      if (e.contains("relation")) edge.relation = e["relation"].get<std::string>();
      map.edges.push_back(std::move(edge));
    }
  } catch (const json::exception &e) {
    throw Error(ErrorKind::kParse, std::string("malformed map JSON: ") + e.what());
  }
  return map;
}

}  // namespace termspace
