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

#include "termspace/workspace.h"

#include <algorithm>
#include <fstream>
#include <mutex>
#include <sstream>

#include "termspace/error.h"
#include "termspace/termex.h"
#include "termspace/vectorstore.h"

namespace termspace {

namespace fs = std::filesystem;
using json = nlohmann::json;
using ordered_json = nlohmann::ordered_json;

namespace {

std::string ReadAll(const fs::path &file) {
  std::ifstream in(file, std::ios::binary);
  if (!in) throw Error(ErrorKind::kIo, "cannot read " + file.string());
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void WriteAll(const fs::path &file, const std::string &text) {
  std::ofstream out(file, std::ios::binary | std::ios::trunc);
  out << text;
  if (!out) throw Error(ErrorKind::kIo, "cannot write " + file.string());
}

[[noreturn]] void InvalidEdit(const std::string &message) {
  throw Error(ErrorKind::kValidation, message, "invalid_edit");
}

std::pair<std::string, std::string> Canonical(const std::string &a, const std::string &b) {
  return a < b ? std::make_pair(a, b) : std::make_pair(b, a);
}

auto FindEdge(SemanticMap &map, const std::string &a, const std::string &b) {
  auto [s, t] = Canonical(a, b);
  return std::find_if(map.edges.begin(), map.edges.end(),
                      [&](const MapEdge &e) { return e.source == s && e.target == t; });
}

}  // namespace

MapEdit EditFromJson(const json &j) {
  if (!j.is_object()) InvalidEdit("edit must be a JSON object");
  MapEdit e;
  try {
    e.action = j.at("action").get<std::string>();
    e.source = j.at("source").get<std::string>();
    e.target = j.at("target").get<std::string>();
    if (j.contains("relation_label") && !j["relation_label"].is_null()) {
      e.relation_label = j["relation_label"].get<std::string>();
    }
    e.author = j.value("author", "anonymous");
    e.timestamp = j.value("timestamp", "");
    e.seq = j.value("seq", size_t{0});
  } catch (const json::exception &ex) {
    InvalidEdit(std::string("malformed edit: ") + ex.what());
  }
  return e;
}

ordered_json EditToJson(const MapEdit &edit) {
  ordered_json j = {{"seq", edit.seq},
                    {"action", edit.action},
                    {"source", edit.source},
                    {"target", edit.target}};
  if (edit.relation_label) j["relation_label"] = *edit.relation_label;
  j["author"] = edit.author;
  j["timestamp"] = edit.timestamp;
  return j;
}

void CheckEdit(const SemanticMap &map, const MapEdit &edit) {
  SemanticMap &m = const_cast<SemanticMap &>(map);
  bool exists = FindEdge(m, edit.source, edit.target) != m.edges.end();
  if (edit.action == "delete") {
    if (!exists) InvalidEdit("no edge " + edit.source + " -- " + edit.target + " to delete");
  } else if (edit.action == "relabel") {
    if (!exists) InvalidEdit("no edge " + edit.source + " -- " + edit.target + " to relabel");
    if (!edit.relation_label || edit.relation_label->empty()) {
      InvalidEdit("relabel needs a non-empty relation_label");
    }
  } else if (edit.action == "add") {
    if (edit.source == edit.target) InvalidEdit("an edge needs two distinct nodes");
    if (!edit.relation_label || edit.relation_label->empty()) {
      InvalidEdit("add needs a non-empty relation_label");
    }
    for (const std::string &node : {edit.source, edit.target}) {
      bool known = std::any_of(map.nodes.begin(), map.nodes.end(),
                               [&](const MapNode &n) { return n.id == node; });
      if (!known) InvalidEdit("map has no node '" + node + "'");
    }
    if (exists) InvalidEdit("edge " + edit.source + " -- " + edit.target + " already exists");
  } else {
    InvalidEdit("unknown edit action '" + edit.action + "'");
  }
}

void ApplyEdit(SemanticMap *map, const MapEdit &edit) {
  auto it = FindEdge(*map, edit.source, edit.target);
  if (edit.action == "delete") {
    if (it != map->edges.end()) map->edges.erase(it);
  } else if (edit.action == "relabel") {
    if (it != map->edges.end()) it->relation = edit.relation_label;
  } else if (edit.action == "add") {
    if (it != map->edges.end()) return;
    auto [s, t] = Canonical(edit.source, edit.target);
    map->edges.push_back({s, t, std::nullopt, edit.relation_label});
  }
}

SemanticMap FoldEdits(SemanticMap map, const std::vector<MapEdit> &edits) {
  for (const MapEdit &e : edits) ApplyEdit(&map, e);
  return map;
}

ordered_json ModelSummary(const std::string &id, const TermVectorModel &model) {
  return {{"id", id},
          {"vocab_size", model.vocabulary.size()},
          {"dim", model.dim()},
          {"filters_disabled", !model.has_metadata},
          {"algorithm", model.has_metadata ? ordered_json(AlgorithmName(model.config.algorithm))
                                           : ordered_json(nullptr)}};
}

Workspace::Workspace(fs::path root) : root_(std::move(root)), corpora_(root_ / "corpora") {
  std::error_code ec;
  for (const char *sub : {"corpora", "annotated", "models", "maps"}) {
    fs::create_directories(root_ / sub, ec);
    if (ec) throw Error(ErrorKind::kIo, "cannot create " + (root_ / sub).string());
  }
  size_t max_id = 0;
  for (const auto &entry : fs::directory_iterator(root_ / "maps", ec)) {
    std::string name = entry.path().filename().string();
    if (name.rfind("map-", 0) == 0) {
      try {
        max_id = std::max<size_t>(max_id, std::stoul(name.substr(4)));
      } catch (const std::exception &) {
      }
    }
  }
  next_map_ = max_id + 1;
}

json Workspace::Annotate(const std::string &corpus_id, const Lexicon &lexicon,
                         const Progress &progress) const {
  Corpus corpus = corpora_.Load(corpus_id);
  AnnotatedCorpus annotated = AnnotateCorpus(corpus, lexicon, progress);
  SaveAnnotated(annotated, root_ / "annotated" / corpus_id);
  corpora_.SetStatus(corpus_id, "annotated");
  return AnnotatedSummary(corpus_id);
}

bool Workspace::HasAnnotated(const std::string &id) const {
  std::error_code ec;
  return IsValidId(id) && fs::exists(root_ / "annotated" / id / "meta.json", ec);
}

json Workspace::AnnotatedSummary(const std::string &id) const {
  if (!HasAnnotated(id)) {
    throw Error(ErrorKind::kNotFound, "annotated corpus '" + id + "' not found");
  }
  return json::parse(ReadAll(root_ / "annotated" / id / "meta.json"));
}

ordered_json Workspace::TrainModel(const std::string &annotated_id, const std::string &model_id,
                           const TrainingConfig &config, const Progress &progress) {
  CheckId(model_id, "model");
  try {
    config.Validate();
  } catch (const Error &e) {
    throw Error(ErrorKind::kInvalidArgument, e.what(), "invalid_config");
  }
  if (!HasAnnotated(annotated_id)) {
    throw Error(ErrorKind::kNotFound, "annotated corpus '" + annotated_id + "' not found");
  }
  fs::path dir = root_ / "models" / model_id;
  std::error_code ec;
  if (!fs::create_directory(dir, ec)) {
    if (ec) throw Error(ErrorKind::kIo, "cannot create " + dir.string());
    throw Error(ErrorKind::kDuplicate, "model '" + model_id + "' already exists");
  }
  try {
    fs::path source = root_ / "annotated" / annotated_id;
    TermStream stream = LoadTermStream(source / "stream.txt");
    std::map<std::string, PartOfSpeech> pos;
    for (const VocabEntry &v : LoadVocabulary(source / "vocab.tsv")) pos[v.key] = v.head_pos;
    TermVectorModel model = Train(stream, config, nullptr, progress);
    std::vector<VocabWord> words = model.vocabulary.words();
    for (VocabWord &w : words) {
      if (auto it = pos.find(w.key); it != pos.end()) w.head_pos = it->second;
    }
    model.vocabulary = Vocabulary(std::move(words));
    SaveModel(model, dir);
    auto shared = std::make_shared<const TermVectorModel>(std::move(model));
    std::unique_lock lock(models_mutex_);
    models_[model_id] = shared;
    return ModelSummary(model_id, *shared);
  } catch (...) {
    fs::remove_all(dir, ec);
    throw;
  }
}

ordered_json Workspace::ImportModel(const std::string &model_id, const std::string &vectors_text) {
  CheckId(model_id, "model");
  TermVectorModel model = ParseVectors(vectors_text, "import:" + model_id);
  fs::path dir = root_ / "models" / model_id;
  std::error_code ec;
  if (!fs::create_directory(dir, ec)) {
    if (ec) throw Error(ErrorKind::kIo, "cannot create " + dir.string());
    throw Error(ErrorKind::kDuplicate, "model '" + model_id + "' already exists");
  }
  WriteAll(dir / "vectors.txt", vectors_text);
  auto shared = std::make_shared<const TermVectorModel>(std::move(model));
  std::unique_lock lock(models_mutex_);
  models_[model_id] = shared;
  return ModelSummary(model_id, *shared);
}

bool Workspace::HasModel(const std::string &model_id) const {
  std::error_code ec;
  return IsValidId(model_id) && fs::exists(root_ / "models" / model_id / "vectors.txt", ec);
}

std::shared_ptr<const TermVectorModel> Workspace::Model(const std::string &model_id) {
  {
    std::shared_lock lock(models_mutex_);
    auto it = models_.find(model_id);
    if (it != models_.end()) return it->second;
  }
  if (!HasModel(model_id)) throw Error(ErrorKind::kNotFound, "model '" + model_id + "' not found");
  auto model = std::make_shared<const TermVectorModel>(LoadModel(root_ / "models" / model_id));
  std::unique_lock lock(models_mutex_);
  auto [it, inserted] = models_.emplace(model_id, model);
  return it->second;
}

std::vector<ordered_json> Workspace::ListModels() {
  std::vector<std::string> ids;
  std::error_code ec;
  for (const auto &entry : fs::directory_iterator(root_ / "models", ec)) {
    std::string id = entry.path().filename().string();
    if (HasModel(id)) ids.push_back(id);
  }
  std::sort(ids.begin(), ids.end());
  std::vector<ordered_json> result;
  for (const std::string &id : ids) result.push_back(ModelSummary(id, *Model(id)));
  return result;
}

ordered_json Workspace::ModelInfo(const std::string &model_id) {
  return ModelSummary(model_id, *Model(model_id));
}

fs::path Workspace::MapDir(const std::string &map_id) const {
  std::error_code ec;
  if (!IsValidId(map_id) || !fs::exists(root_ / "maps" / map_id / "map.json", ec)) {
    throw Error(ErrorKind::kNotFound, "map '" + map_id + "' not found");
  }
  return root_ / "maps" / map_id;
}

std::mutex &Workspace::MapLock(const std::string &map_id) {
  std::lock_guard lock(maps_mutex_);
  auto &slot = map_locks_[map_id];
  if (!slot) slot = std::make_unique<std::mutex>();
  return *slot;
}

SemanticMap Workspace::StoreMap(SemanticMap map) {
  std::error_code ec;
  while (true) {
    std::string id = "map-" + std::to_string(next_map_++);
    fs::path dir = root_ / "maps" / id;
    if (!fs::create_directory(dir, ec)) {
      if (ec) throw Error(ErrorKind::kIo, "cannot create " + dir.string());
      continue;
    }
    map.id = id;
    WriteAll(dir / "edits.jsonl", "");
    WriteAll(dir / "map.json", MapToJson(map).dump() + "\n");
    return map;
  }
}

SemanticMap Workspace::StoredMap(const std::string &map_id) const {
  fs::path dir = MapDir(map_id);
  try {
    return MapFromJson(json::parse(ReadAll(dir / "map.json")));
  } catch (const json::exception &e) {
    throw Error(ErrorKind::kParse, "corrupt map '" + map_id + "': " + e.what());
  }
}

std::vector<MapEdit> Workspace::Edits(const std::string &map_id) const {
  fs::path dir = MapDir(map_id);
  std::vector<MapEdit> edits;
  std::istringstream in(ReadAll(dir / "edits.jsonl"));
  std::string line;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    edits.push_back(EditFromJson(json::parse(line)));
  }
  return edits;
}

MapEdit Workspace::AppendEdit(const std::string &map_id, MapEdit edit) {
  fs::path dir = MapDir(map_id);
  std::lock_guard lock(MapLock(map_id));
  std::vector<MapEdit> edits = Edits(map_id);
  SemanticMap folded = FoldEdits(StoredMap(map_id), edits);
  CheckEdit(folded, edit);
  edit.seq = edits.size() + 1;
  edit.timestamp = NowIso8601();
  if (edit.author.empty()) edit.author = "anonymous";
  std::ofstream out(dir / "edits.jsonl", std::ios::binary | std::ios::app);
  out << EditToJson(edit).dump() << "\n";
  if (!out) throw Error(ErrorKind::kIo, "cannot append edit to map '" + map_id + "'");
  return edit;
}

SemanticMap Workspace::FoldedMap(const std::string &map_id) const {
  return FoldEdits(StoredMap(map_id), Edits(map_id));
}

}  // namespace termspace
