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

#include "termspace/cli.h"

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <memory>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"
#include "termspace/error.h"
#include "termspace/graphexport.h"
#include "termspace/lexicon.h"
#include "termspace/service.h"
#include "termspace/vectorstore.h"
#include "termspace/workspace.h"

namespace termspace {

namespace fs = std::filesystem;
using json = nlohmann::json;
using ordered_json = nlohmann::ordered_json;

namespace {

struct Options {
  std::string data_dir = "termspace-data";
  bool json = false;

  std::string lexicon_dir;
  std::vector<std::string> files;
  std::string corpus;
  std::string annotated;
  std::string model;
  std::string model_out;

  std::string algorithm = "sgns";
  int dim = 100, window = 5, negatives = 5, epochs = 5, min_count = 5, minn = 0, maxn = 0;
  long long seed = 1;
  double learning_rate = 0.025, subsample = 0.0;

  std::string a, b, y, term, terms, pos, out_file;
  size_t topn = 10;
  std::optional<size_t> min_freq;
  double threshold = 0.55;
  int depth = 1;

  std::string host = "127.0.0.1";
  int port = 8080;
};

std::string Fixed(double value) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.6f", value);
  return buf;
}

void PrintNeighbors(std::ostream &out, const ordered_json &list) {
  for (const auto &n : list) {
    out << n["term"].get<std::string>() << "\t" << Fixed(n["similarity"].get<double>()) << "\n";
  }
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

// A model id in the data directory, or a model directory or vectors file.
std::shared_ptr<const TermVectorModel> ResolveModel(Workspace &ws, const std::string &ref) {
  if (ws.HasModel(ref)) return ws.Model(ref);
  std::error_code ec;
  if (fs::exists(ref, ec)) return std::make_shared<const TermVectorModel>(LoadModel(ref));
  throw Error(ErrorKind::kNotFound, "model '" + ref + "' not found");
}

std::string ModelId(const std::string &ref) {
  fs::path p(ref);
  if (p.has_extension()) p = p.parent_path();
  std::string name = p.filename().string();
  return name.empty() ? ref : name;
}

}  // namespace

int RunCli(int argc, const char *const *argv, std::ostream &out, std::ostream &err) {
  Options o;
  CLI::App app{"Term extraction, term embeddings and semantic maps", "termspace"};
  app.require_subcommand(1);
  app.fallthrough();
  app.add_option("--data-dir", o.data_dir, "Data directory")->envname("TERMSPACE_DATA");
  app.add_flag("--json", o.json, "Machine-readable JSON output");

  auto *validate = app.add_subcommand("validate-lexicon", "Load and check a lexicon directory");
  validate->add_option("dir", o.lexicon_dir, "Lexicon directory")->required();

  auto *ingest = app.add_subcommand("ingest", "Create a corpus from text files");
  ingest->add_option("files", o.files, "UTF-8 text files")->required();
  ingest->add_option("--corpus", o.corpus, "Corpus id")->required();

  auto *annotate = app.add_subcommand("annotate", "Annotate a corpus");
  annotate->add_option("--corpus", o.corpus, "Corpus id")->required();
  annotate->add_option("--lexicon", o.lexicon_dir, "Lexicon directory")
      ->envname("TERMSPACE_LEXICON")
      ->required();

  auto *train = app.add_subcommand("train", "Train term vectors on an annotated corpus");
  train->add_option("--annotated", o.annotated, "Annotated corpus id")->required();
  train->add_option("--model", o.model_out, "Model id (default: the annotated id)");
  train->add_option("--algorithm", o.algorithm, "sgns or cbow");
  train->add_option("--dim", o.dim);
  train->add_option("--window", o.window);
  train->add_option("--negatives", o.negatives);
  train->add_option("--epochs", o.epochs);
  train->add_option("--min-count", o.min_count);
  train->add_option("--seed", o.seed);
  train->add_option("--learning-rate", o.learning_rate);
  train->add_option("--subsample", o.subsample);
  train->add_option("--minn", o.minn, "Shortest character n-gram (0 disables)");
  train->add_option("--maxn", o.maxn, "Longest character n-gram");

  auto *query = app.add_subcommand("query", "Query a model");
  query->require_subcommand(1);
  auto *sim = query->add_subcommand("sim", "Cosine similarity of two terms");
  sim->add_option("--a", o.a)->required();
  sim->add_option("--b", o.b)->required();
  auto *neighbors = query->add_subcommand("neighbors", "Nearest terms");
  neighbors->add_option("--term", o.term)->required();
  neighbors->add_option("--topn", o.topn);
  neighbors->add_option("--pos", o.pos, "Part of speech of the head word");
  neighbors->add_option("--min-freq", o.min_freq, "Minimum frequency (inclusive)");
  auto *analogy = query->add_subcommand("analogy", "Terms x with x - y close to a - b");
  analogy->add_option("--y", o.y)->required();
  analogy->add_option("--a", o.a)->required();
  analogy->add_option("--b", o.b)->required();
  analogy->add_option("--topn", o.topn);
  auto *centroid = query->add_subcommand("centroid", "Neighbors of the mean of several terms");
  centroid->add_option("--terms", o.terms, "Comma separated terms")->required();
  centroid->add_option("--topn", o.topn);
  for (auto *sub : {sim, neighbors, analogy, centroid}) {
    sub->add_option("--model", o.model, "Model id, directory or vectors file")->required();
  }

  auto *graph = app.add_subcommand("graph", "Export a semantic map as JSON");
  graph->add_option("--model", o.model, "Model id, directory or vectors file")->required();
  graph->add_option("--terms", o.terms, "Comma separated seed terms")->required();
  graph->add_option("--topn", o.topn);
  graph->add_option("--threshold", o.threshold);
  graph->add_option("--depth", o.depth);
  graph->add_option("--out", o.out_file, "Output file (default: stdout)");

  auto *serve = app.add_subcommand("serve", "Run the HTTP service");
  serve->add_option("--port", o.port)->envname("TERMSPACE_PORT");
  serve->add_option("--host", o.host);
  serve->add_option("--lexicon", o.lexicon_dir, "Lexicon directory")
      ->envname("TERMSPACE_LEXICON");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError &e) {
    if (e.get_exit_code() == 0) {
      out << app.help();
      return 0;
    }
    err << "error: " << e.what() << "\n";
    const CLI::App *failed = &app;
    for (const CLI::App *sub = &app; !sub->get_subcommands().empty();) {
      sub = sub->get_subcommands().front();
      failed = sub;
    }
    err << failed->help();
    return 1;
  }

  auto emit = [&](const ordered_json &result, const std::function<void()> &human) {
    if (o.json) {
      out << result.dump() << "\n";
    } else {
      human();
    }
  };

  try {
    if (*validate) {
      Lexicon lexicon = LoadLexicon(o.lexicon_dir);
      ordered_json summary = {{"stems", lexicon.stems().size()},
                              {"inflexions", lexicon.inflexions().size()},
                              {"correlators", lexicon.correlators().size()},
                              {"determinants", lexicon.determinants().size()},
                              {"function_words", lexicon.function_words().size()},
                              {"stopwords", lexicon.stopwords().size()},
                              {"abbreviations", lexicon.abbreviations().size()}};
      emit(summary, [&] {
        out << "lexicon " << o.lexicon_dir << " is valid\n";
        for (const auto &[key, value] : summary.items()) out << key << "\t" << value << "\n";
      });
      return 0;
    }

    if (*serve) {
      ServiceOptions options;
      options.data_dir = o.data_dir;
      if (!o.lexicon_dir.empty()) options.lexicon_dir = o.lexicon_dir;
      Service service(options);
      HttpServer server(&service);
      int port = server.Bind(o.host, o.port);
      err << "listening on http://" << o.host << ":" << port << "/api/v1/\n";
      server.Listen();
      return 0;
    }

    Workspace ws(o.data_dir);

    if (*ingest) {
      std::vector<fs::path> files(o.files.begin(), o.files.end());
      Corpus corpus = ws.corpora().Ingest(o.corpus, files);
      ordered_json result = {{"id", corpus.id}, {"document_count", corpus.documents.size()}};
      emit(result, [&] {
        out << "corpus " << corpus.id << ": " << corpus.documents.size() << " documents\n";
      });
    } else if (*annotate) {
      Lexicon lexicon = LoadLexicon(o.lexicon_dir);
      ordered_json summary = ws.Annotate(o.corpus, lexicon);
      emit(summary, [&] {
        out << "annotated " << o.corpus << ": " << summary["sentence_count"] << " sentences, "
            << summary["term_count"] << " terms, vocabulary " << summary["vocabulary_size"]
            << "\n";
      });
    } else if (*train) {
      json config = {{"algorithm", o.algorithm}, {"dim", o.dim},
                     {"window", o.window},       {"negatives", o.negatives},
                     {"epochs", o.epochs},       {"learning_rate", o.learning_rate},
                     {"min_count", o.min_count}, {"seed", o.seed},
                     {"subsample", o.subsample}, {"minn", o.minn},
                     {"maxn", o.maxn}};
      std::string model_id = o.model_out.empty() ? o.annotated : o.model_out;
      ordered_json summary = ws.TrainModel(o.annotated, model_id, ParseTrainingConfig(config));
      emit(summary, [&] {
        out << "model " << model_id << ": " << summary["vocab_size"] << " terms, dim "
            << summary["dim"] << "\n";
      });
    } else if (*sim) {
      ordered_json result = SimilarityJson(*ResolveModel(ws, o.model), o.a, o.b);
      emit(result, [&] { out << Fixed(result["similarity"].get<double>()) << "\n"; });
    } else if (*neighbors) {
      std::string min_freq = o.min_freq ? std::to_string(*o.min_freq) : "";
      ordered_json result =
          NeighborsJson(*ResolveModel(ws, o.model), o.term, o.topn, MakeFilter(o.pos, min_freq));
      emit(result, [&] { PrintNeighbors(out, result["neighbors"]); });
    } else if (*analogy) {
      ordered_json result = AnalogyJson(*ResolveModel(ws, o.model), o.y, o.a, o.b, o.topn);
      emit(result, [&] { PrintNeighbors(out, result["results"]); });
    } else if (*centroid) {
      std::vector<std::string> terms = SplitCsv(o.terms);
      if (terms.empty()) throw Error(ErrorKind::kInvalidArgument, "--terms names no term");
      ordered_json result = CentroidJson(*ResolveModel(ws, o.model), terms, o.topn);
      emit(result, [&] { PrintNeighbors(out, result["neighbors"]); });
    } else if (*graph) {
      MapParams params;
      params.model_id = ModelId(o.model);
      params.seeds = SplitCsv(o.terms);
      params.topn = o.topn;
      params.threshold = o.threshold;
      params.depth = o.depth;
      if (params.seeds.empty()) throw Error(ErrorKind::kInvalidArgument, "--terms names no term");
      SemanticMap map = BuildMap(*ResolveModel(ws, o.model), params);
      std::string text = MapToJson(map).dump(2) + "\n";
      if (o.out_file.empty()) {
        out << text;
      } else {
        std::ofstream file(o.out_file, std::ios::binary | std::ios::trunc);
        file << text;
        if (!file) throw Error(ErrorKind::kIo, "cannot write " + o.out_file);
        if (!o.json) {
          out << "map with " << map.nodes.size() << " nodes and " << map.edges.size()
              << " edges written to " << o.out_file << "\n";
        } else {
          out << ordered_json{{"nodes", map.nodes.size()},
                              {"edges", map.edges.size()},
                              {"out", o.out_file}}.dump()
              << "\n";
        }
      }
    }
    return 0;
  } catch (const Error &e) {
    if (o.json) out << ErrorJson(e).dump() << "\n";
    err << "error: " << e.what() << "\n";
    return ExitCode(e.kind());
  } catch (const std::exception &e) {
    err << "error: " << e.what() << "\n";
    return 2;
  }
}

}  // namespace termspace
