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

#include <cmath>
#include <random>
#include <set>

#include "termspace/vectorstore.h"
#include "test_util.h"

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

namespace termspace {
namespace {

using testing::Fixture;
using testing::FixtureLexicon;
using testing::ThrownKind;

const TermVectorModel &Six() {
  static const TermVectorModel model = LoadModel(Fixture("model/six"));
  return model;
}

using EdgeKey = std::tuple<std::string, std::string>;

std::map<EdgeKey, double> Edges(const SemanticMap &map) {
  std::map<EdgeKey, double> out;
  for (const MapEdge &e : map.edges) out[{e.source, e.target}] = e.weight.value_or(NAN);
  return out;
}

std::set<std::string> Nodes(const SemanticMap &map) {
  std::set<std::string> out;
  for (const MapNode &n : map.nodes) out.insert(n.id);
  return out;
}

double PlainCosine(const TermVectorModel &m, const std::string &a, const std::string &b) {
  auto x = m.vector(*m.vocabulary.Find(a));
  auto y = m.vector(*m.vocabulary.Find(b));
  double dot = 0, nx = 0, ny = 0;
  for (size_t d = 0; d < x.size(); ++d) {
    dot += double(x[d]) * y[d];
    nx += double(x[d]) * x[d];
    ny += double(y[d]) * y[d];
  }
  return dot / std::sqrt(nx * ny);
}

// Checks the structural invariants and that every pair is an edge exactly
// when its cosine reaches the threshold.
void CheckMap(const TermVectorModel &m, const SemanticMap &map) {
  std::set<std::string> nodes = Nodes(map);
  CHECK(nodes.size() == map.nodes.size());
  auto edges = Edges(map);
  CHECK(edges.size() == map.edges.size());
  for (const MapEdge &e : map.edges) {
    CHECK(e.source < e.target);
    CHECK(nodes.count(e.source));
    CHECK(nodes.count(e.target));
    REQUIRE(e.weight);
    CHECK(*e.weight >= map.params.threshold);
    CHECK(std::abs(*e.weight - Similarity(m, e.source, e.target)) <= 1e-6);
  }
  for (const std::string &a : nodes) {
    for (const std::string &b : nodes) {
      if (a >= b) continue;
      bool want = PlainCosine(m, a, b) >= map.params.threshold;
      CHECK_MESSAGE(edges.count({a, b}) == (want ? 1u : 0u), a, " ", b);
    }
  }
}

TEST_CASE("hand-computed map") {
  MapParams p;
  p.model_id = "six";
  p.seeds = {"text"};
  p.topn = 2;
  p.threshold = 0.5;
  p.depth = 1;
  SemanticMap map = BuildMap(Six(), p);
  CHECK(Nodes(map) == std::set<std::string>{"text", "document", "analysis_of_text"});
  CHECK(map.nodes[0].id == "text");
  CHECK(map.nodes[0].pos == "noun");
  CHECK(map.nodes[0].frequency == 9u);
  auto edges = Edges(map);
  REQUIRE(edges.size() == 3);
  CHECK(edges[{"analysis_of_text", "document"}] == doctest::Approx(0.78088).epsilon(1e-5));
  CHECK(edges[{"analysis_of_text", "text"}] == doctest::Approx(0.70711).epsilon(1e-5));
  CHECK(edges[{"document", "text"}] == doctest::Approx(0.99388).epsilon(1e-5));
  CheckMap(Six(), map);

  p.threshold = 0.75;
  edges = Edges(BuildMap(Six(), p));
  CHECK(edges.size() == 2);
  CHECK_FALSE(edges.count({"analysis_of_text", "text"}));
}

TEST_CASE("threshold above one and depth zero") {
  MapParams p;
  p.seeds = {"text", "parser"};
  p.topn = 5;
  p.depth = 2;
  p.threshold = 1.01;
  SemanticMap map = BuildMap(Six(), p);
  CHECK(map.nodes.size() == 6);
  CHECK(map.edges.empty());

  p.depth = 0;
  p.threshold = -1.0;
  map = BuildMap(Six(), p);
  CHECK(Nodes(map) == std::set<std::string>{"text", "parser"});
  CHECK(map.edges.size() == 1);
}

TEST_CASE("random maps keep their invariants") {
  std::mt19937 rng(12);
  std::normal_distribution<float> dist;
  std::string text = "60 5\n";
  for (int i = 0; i < 60; ++i) {
    text += "t" + std::to_string(i);
    for (int d = 0; d < 5; ++d) text += " " + FormatFloat(dist(rng));
    text += "\n";
  }
  TermVectorModel m = ParseVectors(text, "random");
  for (int trial = 0; trial < 60; ++trial) {
    MapParams p;
    size_t seeds = 1 + rng() % 3;
    for (size_t s = 0; s < seeds; ++s) p.seeds.push_back("t" + std::to_string(rng() % 60));
    p.topn = rng() % 4;
    p.depth = rng() % 4;
    p.threshold = std::uniform_real_distribution<double>(-0.5, 1.0)(rng);
    SemanticMap map = BuildMap(m, p);
    CheckMap(m, map);
    size_t bound = 0, level = 1;
    for (int d = 0; d <= p.depth; ++d, level *= p.topn) bound += level;
    std::set<std::string> distinct(p.seeds.begin(), p.seeds.end());
    CHECK(map.nodes.size() <= distinct.size() * bound);
    CHECK(MapToJson(BuildMap(m, p)).dump() == MapToJson(map).dump());
  }
}

TEST_CASE("parameter errors") {
  MapParams p;
  p.seeds = {"text", "nowhere"};
  CHECK(ThrownKind([&] { BuildMap(Six(), p); }) == ErrorKind::kUnknownTerm);
  p.seeds = {"text"};
  p.depth = 4;
  CHECK(ThrownKind([&] { BuildMap(Six(), p); }) == ErrorKind::kInvalidArgument);
  p.depth = -1;
  CHECK(ThrownKind([&] { BuildMap(Six(), p); }) == ErrorKind::kInvalidArgument);
  p.depth = 1;
  p.threshold = NAN;
  CHECK(ThrownKind([&] { BuildMap(Six(), p); }) == ErrorKind::kInvalidArgument);
}

TermVectorModel DocumentModel() {
  return ParseVectors(
      "5 2\n"
      "service 1 0\n"
      "text 0.6 0.8\n"
      "document -1 0.1\n"
      "text_and_document 0 1\n"
      "zebra 1 1\n",
      "doc");
}

TEST_CASE("document map covers exactly the document terms") {
  TermVectorModel m = DocumentModel();
  const std::string text = "The service contains texts and documents.";
  std::vector<std::string> terms = DocumentTerms(text, FixtureLexicon(), m);
  CHECK(std::set<std::string>(terms.begin(), terms.end()) ==
        std::set<std::string>{"service", "text", "document", "text_and_document"});
  SemanticMap map = BuildDocumentMap(m, "doc", text, FixtureLexicon(), 0.0);
  CHECK(map.params.seeds == terms);
  CHECK(Nodes(map) == std::set<std::string>(terms.begin(), terms.end()));
  CheckMap(m, map);
  // Threshold 0: every pair except those with a negative cosine.
  std::set<EdgeKey> want;
  for (const std::string &a : terms) {
    for (const std::string &b : terms) {
      if (a < b && PlainCosine(m, a, b) >= 0) want.insert({a, b});
    }
  }
  std::set<EdgeKey> got;
  for (const auto &[k, w] : Edges(map)) got.insert(k);
  CHECK(got == want);
  CHECK(got.size() == 4);  // document is opposite to service and to text
  CHECK_FALSE(got.count({"document", "service"}));
}

TEST_CASE("document without model terms gives an empty map") {
  SemanticMap map =
      BuildDocumentMap(DocumentModel(), "doc", "Linguists use statistical models.", FixtureLexicon(), 0.5);
  CHECK(map.nodes.empty());
  CHECK(map.edges.empty());
  CHECK(BuildDocumentMap(DocumentModel(), "doc", "", FixtureLexicon(), 0.5).nodes.empty());
}

TEST_CASE("json round trip") {
  MapParams p;
  p.model_id = "six";
  p.seeds = {"analysis_of_text"};
  p.topn = 3;
  p.threshold = 0.3;
  SemanticMap map = BuildMap(Six(), p);
  map.id = "map-4";
  map.edges.push_back({"build", "nlp", std::nullopt, std::string("uses")});
  nlohmann::ordered_json j = MapToJson(map);
  CHECK(j["schema"] == 1);
  CHECK(j["nodes"][0]["label"] == "analysis of text");
  CHECK(j["edges"].back()["weight"].is_null());
  CHECK(j["edges"].back()["relation"] == "uses");
  SemanticMap back = MapFromJson(nlohmann::json::parse(j.dump()));
  CHECK(MapToJson(back).dump() == j.dump());

  nlohmann::json bad = nlohmann::json::parse(j.dump());
  bad["schema"] = 2;
  CHECK(ThrownKind([&] { MapFromJson(bad); }) == ErrorKind::kParse);
  bad["schema"] = 1;
  bad.erase("nodes");
  CHECK(ThrownKind([&] { MapFromJson(bad); }) == ErrorKind::kParse);
}

TEST_CASE("bare models have no node metadata") {
  TermVectorModel m = LoadModel(Fixture("model/four.txt"));
  MapParams p;
  p.seeds = {"alpha"};
  p.topn = 3;
  SemanticMap map = BuildMap(m, p);
  CHECK(map.nodes.size() == 4);
  CHECK_FALSE(map.nodes[0].pos);
  CHECK_FALSE(MapToJson(map)["nodes"][0].contains("freq"));
}

}  // namespace
}  // namespace termspace
