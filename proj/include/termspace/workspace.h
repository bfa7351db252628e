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

#ifndef TERMSPACE_WORKSPACE_H_
#define TERMSPACE_WORKSPACE_H_

#include <atomic>
#include <filesystem>
#include <functional>
#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <shared_mutex>
#include <string>
#include <vector>

#include "json.hpp"
#include "termspace/embeddings.h"
#include "termspace/graphexport.h"
#include "termspace/lexicon.h"
#include "termspace/textcore.h"

namespace termspace {

// A hand edit of a stored map.
struct MapEdit {
  size_t seq = 0;
  std::string action;  // "relabel", "delete" or "add"
  std::string source;
  std::string target;
  std::optional<std::string> relation_label;
  std::string author;
  std::string timestamp;
};

MapEdit EditFromJson(const nlohmann::json &j);
nlohmann::ordered_json EditToJson(const MapEdit &edit);

// Throws Error(kValidation, code "invalid_edit") if the edit does not apply
// to `map`: unknown action, deleting or relabelling a missing edge, adding
// an existing edge or one with an unknown node.
void CheckEdit(const SemanticMap &map, const MapEdit &edit);

// Applies one edit. Endpoints are compared in canonical order.
void ApplyEdit(SemanticMap *map, const MapEdit &edit);
SemanticMap FoldEdits(SemanticMap map, const std::vector<MapEdit> &edits);

using Progress = std::function<void(double)>;

// Data directory shared by the CLI and the service:
//   corpora/<id>/    ingested documents
//   annotated/<id>/  annotation output for corpus <id>
//   models/<id>/     vectors.txt and optional meta.json
//   maps/<id>/       map.json and edits.jsonl
class Workspace {
 public:
  explicit Workspace(std::filesystem::path root);

  const std::filesystem::path &root() const { return root_; }
  const CorpusStore &corpora() const { return corpora_; }

  // Annotates a corpus and stores the result under annotated/<corpus id>.
  // Returns the annotation summary (meta.json).
  nlohmann::json Annotate(const std::string &corpus_id, const Lexicon &lexicon,
                          const Progress &progress = nullptr) const;
  bool HasAnnotated(const std::string &id) const;
  nlohmann::json AnnotatedSummary(const std::string &id) const;

  // Trains on annotated/<annotated_id> and stores models/<model_id>.
  // Throws kDuplicate if the model exists.
  nlohmann::ordered_json TrainModel(const std::string &annotated_id, const std::string &model_id,
                            const TrainingConfig &config, const Progress &progress = nullptr);

  // Registers a bare vectors file (no metadata) as models/<model_id>.
  nlohmann::ordered_json ImportModel(const std::string &model_id, const std::string &vectors_text);

  // Loaded models are cached; the returned pointer stays valid.
  std::shared_ptr<const TermVectorModel> Model(const std::string &model_id);
  bool HasModel(const std::string &model_id) const;
  std::vector<nlohmann::ordered_json> ListModels();
  nlohmann::ordered_json ModelInfo(const std::string &model_id);

  // Stores a map under a fresh id ("map-N"), which is written into it.
  SemanticMap StoreMap(SemanticMap map);
  SemanticMap StoredMap(const std::string &map_id) const;
  std::vector<MapEdit> Edits(const std::string &map_id) const;
  // Validates the edit against the folded map, then appends it.
  MapEdit AppendEdit(const std::string &map_id, MapEdit edit);
  SemanticMap FoldedMap(const std::string &map_id) const;

 private:
  std::filesystem::path MapDir(const std::string &map_id) const;
  std::mutex &MapLock(const std::string &map_id);

  std::filesystem::path root_;
  CorpusStore corpora_;

  mutable std::shared_mutex models_mutex_;
  std::map<std::string, std::shared_ptr<const TermVectorModel>> models_;

  std::mutex maps_mutex_;
  std::map<std::string, std::unique_ptr<std::mutex>> map_locks_;
  std::atomic<size_t> next_map_ = 1;
};

nlohmann::ordered_json ModelSummary(const std::string &id, const TermVectorModel &model);

}  // namespace termspace

#endif  // TERMSPACE_WORKSPACE_H_
