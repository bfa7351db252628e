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

#include "termspace/service.h"

#include <charconv>
#include <fstream>
#include <sstream>

#include "httplib.h"
#include "termspace/graphexport.h"

namespace termspace {

namespace fs = std::filesystem;
using json = nlohmann::json;
using ordered_json = nlohmann::ordered_json;

namespace {

[[noreturn]] void BadRequest(const std::string &message) {
  throw Error(ErrorKind::kInvalidArgument, message);
}

ordered_json NeighborList(const std::vector<Neighbor> &neighbors) {
  ordered_json list = ordered_json::array();
  for (const Neighbor &n : neighbors) {
    list.push_back({{"term", n.key}, {"similarity", n.similarity}});
  }
  return list;
}

std::vector<std::string> SplitPath(const std::string &path) {
  std::vector<std::string> parts;
  std::string part;
  std::istringstream in(path);
  while (std::getline(in, part, '/')) {
    if (!part.empty()) parts.push_back(part);
  }
  return parts;
}

std::vector<std::string> SplitCsv(const std::string &text) {
  std::vector<std::string> items;
  std::string item;
  std::istringstream in(text);
  while (std::getline(in, item, ',')) {
    if (!item.empty()) items.push_back(item);
  }
  return items;
}

const std::string &Param(const ApiRequest &request, const std::string &name) {
  auto it = request.params.find(name);
  if (it == request.params.end() || it->second.empty()) {
    BadRequest("missing parameter '" + name + "'");
  }
  return it->second;
}

std::string OptionalParam(const ApiRequest &request, const std::string &name) {
  auto it = request.params.find(name);
  return it == request.params.end() ? "" : it->second;
}

template <typename T>
T ParseNumber(const std::string &text, const std::string &name) {
  T value{};
  auto [end, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
  if (ec != std::errc() || end != text.data() + text.size()) {
    BadRequest("parameter '" + name + "' is not a valid number: '" + text + "'");
  }
  return value;
}

template <typename T>
T NumberParam(const ApiRequest &request, const std::string &name, T fallback) {
  std::string text = OptionalParam(request, name);
  return text.empty() ? fallback : ParseNumber<T>(text, name);
}

json ParseBody(const ApiRequest &request) {
  try {
    json body = json::parse(request.body.empty() ? std::string("{}") : request.body);
    if (!body.is_object()) BadRequest("request body must be a JSON object");
    return body;
  } catch (const json::parse_error &e) {
    BadRequest(std::string("malformed JSON body: ") + e.what());
  }
}

// Reads a typed field of a request body; type mismatches are bad requests.
template <typename T>
T Field(const json &body, const std::string &name, std::optional<T> fallback = std::nullopt) {
  auto it = body.find(name);
  if (it == body.end() || it->is_null()) {
    if (fallback) return *fallback;
    BadRequest("missing field '" + name + "'");
  }
  try {
    return it->get<T>();
  } catch (const json::exception &) {
    BadRequest("field '" + name + "' has the wrong type");
  }
}

std::string ReadFile(const fs::path &file) {
  std::ifstream in(file, std::ios::binary);
  if (!in) throw Error(ErrorKind::kIo, "cannot read " + file.string());
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

}  // namespace

ordered_json SimilarityJson(const TermVectorModel &model, const std::string &a,
                            const std::string &b) {
  return {{"a", a}, {"b", b}, {"similarity", Similarity(model, a, b)}};
}

ordered_json NeighborsJson(const TermVectorModel &model, const std::string &term, size_t topn,
                           const QueryFilter &filter) {
  return {{"term", term}, {"neighbors", NeighborList(Neighbors(model, term, topn, filter))}};
}

ordered_json AnalogyJson(const TermVectorModel &model, const std::string &y, const std::string &a,
                         const std::string &b, size_t topn) {
  return {{"y", y}, {"a", a}, {"b", b}, {"results", NeighborList(Analogy(model, y, a, b, topn))}};
}

ordered_json CentroidJson(const TermVectorModel &model, const std::vector<std::string> &terms,
                          size_t topn) {
  CentroidResult result = Centroid(model, terms, topn);
  return {{"terms", terms}, {"vector", result.vector}, {"neighbors", NeighborList(result.neighbors)}};
}

TrainingConfig ParseTrainingConfig(const json &j) {
  auto fail = [](const std::string &message) -> void {
    throw Error(ErrorKind::kInvalidArgument, message, "invalid_config");
  };
  if (j.is_null()) return TrainingConfig();
  if (!j.is_object()) fail("config must be a JSON object");
  static const std::set<std::string> kKeys = {"algorithm", "dim",       "window",     "negatives",
                                              "epochs",    "learning_rate", "min_count", "seed",
                                              "subsample", "minn",      "maxn"};
  for (const auto &[key, value] : j.items()) {
    if (!kKeys.count(key)) fail("unknown config key '" + key + "'");
    if (key == "algorithm") {
      if (!value.is_string() || !ParseAlgorithm(value.get<std::string>())) {
        fail("algorithm must be \"sgns\" or \"cbow\"");
      }
    } else if (key == "learning_rate" || key == "subsample") {
      if (!value.is_number()) fail("config key '" + key + "' must be a number");
    } else if (!value.is_number_integer()) {
      fail("config key '" + key + "' must be an integer");
    }
  }
  TrainingConfig config = ConfigFromJson(j);
  try {
    config.Validate();
  } catch (const Error &e) {
    fail(e.what());
  }
  return config;
}

QueryFilter MakeFilter(const std::string &pos, const std::string &min_freq) {
  QueryFilter filter;
  if (!pos.empty()) {
    filter.pos = ParsePos(pos);
    if (!filter.pos) BadRequest("unknown part of speech '" + pos + "'");
  }
  if (!min_freq.empty()) filter.min_frequency = ParseNumber<size_t>(min_freq, "min_freq");
  return filter;
}

ordered_json ErrorJson(const Error &error) {
  ordered_json body = {{"code", std::string(error.code())}, {"message", error.what()}};
  if (auto *unknown = dynamic_cast<const UnknownTermError *>(&error)) {
    body["term"] = unknown->term();
  }
  return {{"error", body}};
}

ordered_json JobJson(const Job &job) {
  ordered_json j = {{"id", job.id},
                    {"kind", job.kind},
                    {"status", job.status},
                    {"progress", job.progress},
                    {"target", job.target}};
  if (job.result_id) j["result_id"] = *job.result_id;
  if (job.error) j["error"] = *job.error;
  return j;
}

JobManager::JobManager() : worker_([this] { Run(); }) {}

JobManager::~JobManager() {
  {
    std::lock_guard lock(mutex_);
    stopping_ = true;
  }
  changed_.notify_all();
  worker_.join();
}

Job JobManager::Submit(const std::string &kind, const std::string &target, Work work) {
  std::lock_guard lock(mutex_);
  for (const auto &[id, job] : jobs_) {
    if (job.target == target && job.kind == kind &&
        (job.status == "queued" || job.status == "running")) {
      throw Error(ErrorKind::kConflict, "job " + id + " is already working on '" + target + "'");
    }
  }
  Job job;
  job.id = "job-" + std::to_string(next_id_++);
  job.kind = kind;
  job.status = "queued";
  job.target = target;
  jobs_[job.id] = job;
  queue_.emplace_back(job.id, std::move(work));
  changed_.notify_all();
  return job;
}

std::optional<Job> JobManager::Get(const std::string &id) const {
  std::lock_guard lock(mutex_);
  auto it = jobs_.find(id);
  if (it == jobs_.end()) return std::nullopt;
  return it->second;
}

Job JobManager::Wait(const std::string &id) const {
  std::unique_lock lock(mutex_);
  auto it = jobs_.find(id);
  if (it == jobs_.end()) throw Error(ErrorKind::kNotFound, "job '" + id + "' not found");
  changed_.wait(lock, [&] { return it->second.status == "done" || it->second.status == "failed"; });
  return it->second;
}

void JobManager::Run() {
  std::unique_lock lock(mutex_);
  while (true) {
    changed_.wait(lock, [&] { return stopping_ || !queue_.empty(); });
    if (stopping_) return;
    auto [id, work] = std::move(queue_.front());
    queue_.pop_front();
    jobs_[id].status = "running";
    lock.unlock();

    auto progress = [this, id = id](double fraction) {
      std::lock_guard guard(mutex_);
      jobs_[id].progress = std::clamp(fraction, 0.0, 1.0);
    };
    std::optional<std::string> result, error;
    try {
      result = work(progress);
    } catch (const std::exception &e) {
      error = e.what();
    }

    lock.lock();
    Job &job = jobs_[id];
    if (result) {
      job.status = "done";
      job.progress = 1.0;
      job.result_id = result;
    } else {
      job.status = "failed";
      job.error = error;
    }
    changed_.notify_all();
  }
}

Service::Service(ServiceOptions options)
    : options_(std::move(options)), workspace_(options_.data_dir) {
  if (options_.lexicon_dir) lexicon_ = LoadLexicon(*options_.lexicon_dir);
}

const Lexicon &Service::RequireLexicon() const {
  if (!lexicon_) {
    throw Error(ErrorKind::kInvalidArgument, "the service was started without a lexicon");
  }
  return *lexicon_;
}

ApiResponse Service::Handle(const ApiRequest &request) {
  ApiResponse response;
  try {
    ordered_json body = Dispatch(request, &response.status);
    response.body = body.dump();
  } catch (const Error &e) {
    response.status = HttpStatus(e.kind());
    response.body = ErrorJson(e).dump();
  } catch (const std::exception &e) {
    response.status = 500;
    response.body = ordered_json{{"error", {{"code", "internal"}, {"message", e.what()}}}}.dump();
  }
  return response;
}

ordered_json Service::Dispatch(const ApiRequest &request, int *status) {
  std::vector<std::string> p = SplitPath(request.path);
  if (p.size() < 3 || p[0] != "api" || p[1] != "v1") {
    throw Error(ErrorKind::kNotFound, "no route for " + request.path);
  }
  p.erase(p.begin(), p.begin() + 2);
  const std::string &m = request.method;
  const size_t n = p.size();
  *status = 200;

  if (p[0] == "corpora") {
    if (n == 1 && m == "GET") {
      ordered_json list = ordered_json::array();
      for (const std::string &id : workspace_.corpora().List()) {
        json manifest = json::parse(workspace_.corpora().Manifest(id));
        list.push_back({{"id", id},
                        {"status", manifest.value("status", "")},
                        {"document_count", manifest["documents"].size()}});
      }
      return {{"corpora", list}};
    }
    if (n == 1 && m == "POST") {
      *status = 201;
      return PostCorpus(request);
    }
    if (n == 2 && m == "GET") {
      CheckId(p[1], "corpus");
      if (!workspace_.corpora().Exists(p[1])) {
        throw Error(ErrorKind::kNotFound, "corpus '" + p[1] + "' not found");
      }
      return ordered_json::parse(workspace_.corpora().Manifest(p[1]));
    }
    if (n == 3 && p[2] == "annotate" && m == "POST") {
      *status = 202;
      return PostAnnotate(p[1]);
    }
  } else if (p[0] == "annotated" && n == 2 && m == "GET") {
    return workspace_.AnnotatedSummary(p[1]);
  } else if (p[0] == "jobs" && n == 2 && m == "GET") {
    std::optional<Job> job = jobs_.Get(p[1]);
    if (!job) throw Error(ErrorKind::kNotFound, "job '" + p[1] + "' not found");
    return JobJson(*job);
  } else if (p[0] == "models") {
    if (n == 1 && m == "GET") {
      ordered_json list = ordered_json::array();
      for (ordered_json &summary : workspace_.ListModels()) list.push_back(std::move(summary));
      return {{"models", list}};
    }
    if (n == 2 && p[1] == "train" && m == "POST") {
      *status = 202;
      return PostTrain(ParseBody(request));
    }
    if (n == 2 && p[1] == "import" && m == "POST") {
      *status = 201;
      return PostImport(ParseBody(request));
    }
    if (n == 2 && m == "GET") return workspace_.ModelInfo(p[1]);
    if (n == 3) {
      const std::string &id = p[1];
      const std::string &op = p[2];
      if (m == "GET" && op == "similarity") {
        const std::string &a = Param(request, "a");
        const std::string &b = Param(request, "b");
        return SimilarityJson(*workspace_.Model(id), a, b);
      }
      if (m == "GET" && op == "neighbors") {
        const std::string &term = Param(request, "term");
        size_t topn = NumberParam<size_t>(request, "topn", 10);
        QueryFilter filter =
            MakeFilter(OptionalParam(request, "pos"), OptionalParam(request, "min_freq"));
        return NeighborsJson(*workspace_.Model(id), term, topn, filter);
      }
      if (m == "GET" && op == "analogy") {
        const std::string &y = Param(request, "y");
        const std::string &a = Param(request, "a");
        const std::string &b = Param(request, "b");
        size_t topn = NumberParam<size_t>(request, "topn", 10);
        return AnalogyJson(*workspace_.Model(id), y, a, b, topn);
      }
      if (m == "POST" && op == "centroid") {
        json body = ParseBody(request);
        std::string key = body.contains("positive") ? "positive" : "terms";
        auto terms = Field<std::vector<std::string>>(body, key);
        if (terms.empty()) BadRequest("centroid needs at least one term");
        size_t topn = Field<size_t>(body, "topn", size_t{10});
        return CentroidJson(*workspace_.Model(id), terms, topn);
      }
      if (m == "GET" && op == "graph") return GetGraph(id, request);
      if (m == "POST" && op == "document-graph") {
        return PostDocumentGraph(id, ParseBody(request));
      }
    }
  } else if (p[0] == "maps") {
    if (n == 2 && m == "GET") return MapToJson(workspace_.FoldedMap(p[1]));
    if (n == 3 && p[2] == "edits" && m == "GET") {
      ordered_json list = ordered_json::array();
      for (const MapEdit &e : workspace_.Edits(p[1])) list.push_back(EditToJson(e));
      return {{"map", p[1]}, {"edits", list}};
    }
    if (n == 3 && p[2] == "edits" && m == "POST") {
      json body;
      try {
        body = json::parse(request.body);
      } catch (const json::parse_error &e) {
        throw Error(ErrorKind::kValidation, std::string("malformed edit: ") + e.what(),
                    "invalid_edit");
      }
      *status = 201;
      return EditToJson(workspace_.AppendEdit(p[1], EditFromJson(body)));
    }
  }
  throw Error(ErrorKind::kNotFound, "no route for " + m + " " + request.path);
}

ordered_json Service::PostCorpus(const ApiRequest &request) {
  std::string id;
  std::vector<Document> docs;
  if (!request.uploads.empty() || !request.form.empty()) {
    auto it = request.form.find("id");
    if (it == request.form.end()) BadRequest("missing form field 'id'");
    id = it->second;
    docs = request.uploads;
  } else {
    json body = ParseBody(request);
    id = Field<std::string>(body, "id");
    auto it = body.find("documents");
    if (it == body.end() || !it->is_array()) BadRequest("field 'documents' must be an array");
    for (const json &item : *it) {
      Document doc;
      doc.source = "inline";
      if (item.is_string()) {
        doc.text = item.get<std::string>();
      } else if (item.is_object()) {
        doc.text = Field<std::string>(item, "text");
        doc.id = Field<std::string>(item, "id", std::string());
      } else {
        BadRequest("each document must be a string or an object with 'text'");
      }
      if (doc.id.empty()) doc.id = "doc-" + std::to_string(docs.size() + 1);
      docs.push_back(std::move(doc));
    }
  }
  Corpus corpus = workspace_.corpora().Create(id, std::move(docs));
  return {{"id", corpus.id}, {"document_count", corpus.documents.size()}};
}

ordered_json Service::PostAnnotate(const std::string &corpus_id) {
  CheckId(corpus_id, "corpus");
  if (!workspace_.corpora().Exists(corpus_id)) {
    throw Error(ErrorKind::kNotFound, "corpus '" + corpus_id + "' not found");
  }
  const Lexicon &lexicon = RequireLexicon();
  Job job = jobs_.Submit("annotate", corpus_id, [this, corpus_id, &lexicon](const auto &progress) {
    workspace_.Annotate(corpus_id, lexicon, progress);
    return corpus_id;
  });
  return JobJson(job);
}

ordered_json Service::PostTrain(const json &body) {
  std::string annotated = Field<std::string>(body, "annotated_id");
  std::string model_id = Field<std::string>(body, "model_id", annotated);
  TrainingConfig config =
      ParseTrainingConfig(body.contains("config") ? body["config"] : json(nullptr));
  CheckId(model_id, "model");
  if (!workspace_.HasAnnotated(annotated)) {
    throw Error(ErrorKind::kNotFound, "annotated corpus '" + annotated + "' not found");
  }
  if (workspace_.HasModel(model_id)) {
    throw Error(ErrorKind::kDuplicate, "model '" + model_id + "' already exists");
  }
  Job job = jobs_.Submit("train", model_id,
                         [this, annotated, model_id, config](const auto &progress) {
                           workspace_.TrainModel(annotated, model_id, config, progress);
                           return model_id;
                         });
  return JobJson(job);
}

ordered_json Service::PostImport(const json &body) {
  std::string id = Field<std::string>(body, "id");
  std::string text;
  if (body.contains("vectors")) {
    text = Field<std::string>(body, "vectors");
  } else {
    text = ReadFile(Field<std::string>(body, "path"));
  }
  return workspace_.ImportModel(id, text);
}

ordered_json Service::GetGraph(const std::string &model_id, const ApiRequest &request) {
  MapParams params;
  params.model_id = model_id;
  params.seeds = SplitCsv(Param(request, "terms"));
  if (params.seeds.empty()) BadRequest("parameter 'terms' names no term");
  params.topn = NumberParam<size_t>(request, "topn", params.topn);
  params.threshold = NumberParam<double>(request, "threshold", params.threshold);
  params.depth = NumberParam<int>(request, "depth", params.depth);
  SemanticMap map = BuildMap(*workspace_.Model(model_id), params);
  return MapToJson(workspace_.StoreMap(std::move(map)));
}

ordered_json Service::PostDocumentGraph(const std::string &model_id, const json &body) {
  std::string text = Field<std::string>(body, "text");
  double threshold = Field<double>(body, "threshold", MapParams().threshold);
  auto model = workspace_.Model(model_id);
  SemanticMap map = BuildDocumentMap(*model, model_id, text, RequireLexicon(), threshold);
  return MapToJson(workspace_.StoreMap(std::move(map)));
}

struct HttpServer::Impl {
  Service *service;
  httplib::Server server;
};

HttpServer::HttpServer(Service *service) : impl_(std::make_unique<Impl>()) {
  impl_->service = service;
  auto handler = [this](const httplib::Request &req, httplib::Response &res) {
    ApiRequest request;
    request.method = req.method;
    request.path = req.path;
    for (const auto &[key, value] : req.params) request.params[key] = value;
    request.body = req.body;
    if (req.is_multipart_form_data()) {
      for (const auto &[name, part] : req.files) {
        if (part.filename.empty()) {
          request.form[name] = part.content;
          continue;
        }
        Document doc;
        doc.source = part.filename;
        doc.text = part.content;
        doc.id = fs::path(part.filename).stem().string();
        request.uploads.push_back(std::move(doc));
      }
    }
    ApiResponse response = impl_->service->Handle(request);
    res.status = response.status;
    res.set_content(response.body, "application/json");
  };
  const char *kPattern = R"(/api/v1/.*)";
  impl_->server.Get(kPattern, handler);
  impl_->server.Post(kPattern, handler);
  impl_->server.Put(kPattern, handler);
  impl_->server.Delete(kPattern, handler);
}

HttpServer::~HttpServer() { Stop(); }

int HttpServer::Bind(const std::string &host, int port) {
  if (port == 0) {
    int bound = impl_->server.bind_to_any_port(host);
    if (bound < 0) throw Error(ErrorKind::kIo, "cannot bind " + host);
    return bound;
  }
  if (!impl_->server.bind_to_port(host, port)) {
    throw Error(ErrorKind::kIo, "cannot bind " + host + ":" + std::to_string(port));
  }
  return port;
}

void HttpServer::Listen() { impl_->server.listen_after_bind(); }

void HttpServer::Stop() {
  if (impl_->server.is_running()) impl_->server.stop();
}

}  // namespace termspace
