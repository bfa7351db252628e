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

#ifndef TERMSPACE_SERVICE_H_
#define TERMSPACE_SERVICE_H_

#include <condition_variable>
#include <deque>
#include <filesystem>
#include <functional>
#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <string>
#include <thread>
#include <vector>

#include "json.hpp"
#include "termspace/error.h"
#include "termspace/lexicon.h"
#include "termspace/textcore.h"
#include "termspace/vectorstore.h"
#include "termspace/workspace.h"

namespace termspace {

// Query results as JSON. The CLI prints exactly these objects, so both
// interfaces share one code path.
nlohmann::ordered_json SimilarityJson(const TermVectorModel &model, const std::string &a,
                                      const std::string &b);
nlohmann::ordered_json NeighborsJson(const TermVectorModel &model, const std::string &term,
                                     size_t topn, const QueryFilter &filter);
nlohmann::ordered_json AnalogyJson(const TermVectorModel &model, const std::string &y,
                                   const std::string &a, const std::string &b, size_t topn);
nlohmann::ordered_json CentroidJson(const TermVectorModel &model,
                                    const std::vector<std::string> &terms, size_t topn);

// Strict parse of a training configuration: unknown keys, wrong types and
// violated invariants throw Error(kInvalidArgument, code "invalid_config").
TrainingConfig ParseTrainingConfig(const nlohmann::json &j);

// Builds a QueryFilter from request strings; empty strings mean no filter.
QueryFilter MakeFilter(const std::string &pos, const std::string &min_freq);

// Error body {"error":{"code","message"[,"term"]}}.
nlohmann::ordered_json ErrorJson(const Error &error);

struct Job {
  std::string id;
  std::string kind;    // "annotate" or "train"
  std::string status;  // "queued", "running", "done" or "failed"
  double progress = 0.0;
  std::string target;  // corpus or model id the job writes
  std::optional<std::string> result_id;
  std::optional<std::string> error;
};

nlohmann::ordered_json JobJson(const Job &job);

// Runs jobs one at a time on a background thread, in submission order.
// At most one unfinished job may write a given target.
class JobManager {
 public:
  using Work = std::function<std::string(const std::function<void(double)> &progress)>;

  JobManager();
  ~JobManager();
  JobManager(const JobManager &) = delete;
  JobManager &operator=(const JobManager &) = delete;

  // Throws Error(kConflict) if an unfinished job already writes `target`.
  Job Submit(const std::string &kind, const std::string &target, Work work);
  std::optional<Job> Get(const std::string &id) const;
  // Blocks until the job is done or failed.
  Job Wait(const std::string &id) const;

 private:
  void Run();

  mutable std::mutex mutex_;
  mutable std::condition_variable changed_;
  std::map<std::string, Job> jobs_;
  std::deque<std::pair<std::string, Work>> queue_;
  size_t next_id_ = 1;
  bool stopping_ = false;
  std::thread worker_;
};

struct ServiceOptions {
  std::filesystem::path data_dir;
  std::optional<std::filesystem::path> lexicon_dir;
};

struct ApiRequest {
  std::string method;
  std::string path;  // starting with /api/v1/
  std::map<std::string, std::string> params;
  std::string body;
  // Files of a multipart upload, already read.
  std::vector<Document> uploads;
  std::map<std::string, std::string> form;
};

struct ApiResponse {
  int status = 200;
  std::string body;  // JSON
};

// The HTTP API, independent of the transport. Safe for concurrent calls.
class Service {
 public:
  explicit Service(ServiceOptions options);

  ApiResponse Handle(const ApiRequest &request);

  Workspace &workspace() { return workspace_; }
  JobManager &jobs() { return jobs_; }

 private:
  nlohmann::ordered_json Dispatch(const ApiRequest &request, int *status);
  const Lexicon &RequireLexicon() const;

  nlohmann::ordered_json PostCorpus(const ApiRequest &request);
  nlohmann::ordered_json PostAnnotate(const std::string &corpus_id);
  nlohmann::ordered_json PostTrain(const nlohmann::json &body);
  nlohmann::ordered_json PostImport(const nlohmann::json &body);
  nlohmann::ordered_json GetGraph(const std::string &model_id, const ApiRequest &request);
  nlohmann::ordered_json PostDocumentGraph(const std::string &model_id,
                                           const nlohmann::json &body);

  ServiceOptions options_;
  Workspace workspace_;
  std::optional<Lexicon> lexicon_;
  JobManager jobs_;
};

// Serves the API over HTTP until Stop() is called.
class HttpServer {
 public:
  explicit HttpServer(Service *service);
  ~HttpServer();

  // Binds to host:port; port 0 picks a free port. Returns the bound port.
  int Bind(const std::string &host, int port);
  // Blocks handling requests.
  void Listen();
  void Stop();

 private:
  struct Impl;
  std::unique_ptr<Impl> impl_;
};

}  // namespace termspace

#endif  // TERMSPACE_SERVICE_H_
