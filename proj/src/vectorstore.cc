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

#include "termspace/vectorstore.h"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <map>
#include <sstream>

#include "json.hpp"
#include "termspace/error.h"
#include "termspace/textcore.h"

namespace termspace {

namespace fs = std::filesystem;
using json = nlohmann::json;

std::string FormatFloat(float value) {
  char buf[64];
  auto [end, ec] = std::to_chars(buf, buf + sizeof(buf), value);
  return std::string(buf, end);
}

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

double Norm(std::span<const float> v) {
  double s = 0.0;
  for (float x : v) s += static_cast<double>(x) * x;
  return std::sqrt(s);
}

size_t Require(const TermVectorModel &model, std::string_view term) {
  auto id = model.vocabulary.Find(term);
  if (!id) throw UnknownTermError(std::string(term));
  return *id;
}

std::vector<double> ToDouble(std::span<const float> v) { return {v.begin(), v.end()}; }

size_t RequireNonzero(const TermVectorModel &model, std::string_view term) {
  size_t id = Require(model, term);
  for (float x : model.vector(id)) {
    if (x != 0.0f) return id;
  }
  throw Error(ErrorKind::kInvalidArgument, "term '" + std::string(term) + "' has a zero vector");
}

}  // namespace

json ConfigToJson(const TrainingConfig &c) {
  return {{"algorithm", AlgorithmName(c.algorithm)},
          {"dim", c.dim},
          {"window", c.window},
          {"negatives", c.negatives},
          {"epochs", c.epochs},
          {"learning_rate", c.learning_rate},
          {"min_count", c.min_count},
          {"seed", c.seed},
          {"subsample", c.subsample},
          {"minn", c.minn},
          {"maxn", c.maxn}};
}

TrainingConfig ConfigFromJson(const json &j) {
  TrainingConfig c;
  c.algorithm = ParseAlgorithm(j.value("algorithm", "sgns")).value_or(Algorithm::kSkipGram);
  c.dim = j.value("dim", c.dim);
  c.window = j.value("window", c.window);
  c.negatives = j.value("negatives", c.negatives);
  c.epochs = j.value("epochs", c.epochs);
  c.learning_rate = j.value("learning_rate", c.learning_rate);
  c.min_count = j.value("min_count", c.min_count);
  c.seed = j.value("seed", c.seed);
  c.subsample = j.value("subsample", c.subsample);
  c.minn = j.value("minn", c.minn);
  c.maxn = j.value("maxn", c.maxn);
  return c;
}

void SaveModel(const TermVectorModel &model, const fs::path &dir) {
  std::error_code ec;
  fs::create_directories(dir, ec);
  if (ec) throw Error(ErrorKind::kIo, "cannot create " + dir.string() + ": " + ec.message());
  std::string text = std::to_string(model.vocabulary.size()) + " " +
                     std::to_string(model.input.cols()) + "\n";
  for (size_t i = 0; i < model.vocabulary.size(); ++i) {
    text += model.vocabulary[i].key;
    for (float x : model.input.row(i)) {
      text += ' ';
      text += FormatFloat(x);
    }
    text += '\n';
  }
  WriteAll(dir / "vectors.txt", text);

  if (!model.has_metadata) return;
  json vocab = json::array();
  for (const VocabWord &w : model.vocabulary.words()) {
    vocab.push_back({{"key", w.key},
                     {"frequency", w.frequency},
                     {"pos", w.head_pos ? json(PosName(*w.head_pos)) : json(nullptr)}});
  }
  json meta = {{"schema", 1},
               {"created_at", NowIso8601()},
               {"config", ConfigToJson(model.config)},
               {"vocabulary", vocab}};
  WriteAll(dir / "meta.json", meta.dump(1) + "\n");
}

TermVectorModel ParseVectors(std::string_view text, const std::string &source) {
  auto fail = [&](size_t line, const std::string &what) -> void {
    throw Error(ErrorKind::kParse, source + ":" + std::to_string(line) + ": " + what);
  };
  std::vector<std::string_view> lines;
  size_t start = 0;
  while (start < text.size()) {
    size_t nl = text.find('\n', start);
    if (nl == std::string_view::npos) nl = text.size();
    std::string_view line = text.substr(start, nl - start);
    if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
    lines.push_back(line);
    start = nl + 1;
  }
  if (lines.empty()) fail(1, "missing '<count> <dim>' header");

  auto split = [](std::string_view line) {
    std::vector<std::string_view> fields;
    size_t i = 0;
    while (i < line.size()) {
      while (i < line.size() && (line[i] == ' ' || line[i] == '\t')) ++i;
      size_t j = i;
      while (j < line.size() && line[j] != ' ' && line[j] != '\t') ++j;
      if (j > i) fields.push_back(line.substr(i, j - i));
      i = j;
    }
    return fields;
  };

  auto header = split(lines[0]);
  size_t count = 0;
  size_t dim = 0;
  auto parse_size = [](std::string_view s, size_t *out) {
    auto [p, ec] = std::from_chars(s.data(), s.data() + s.size(), *out);
    return ec == std::errc() && p == s.data() + s.size();
  };
  if (header.size() != 2 || !parse_size(header[0], &count) || !parse_size(header[1], &dim) ||
      dim == 0) {
    fail(1, "malformed header, expected '<count> <dim>'");
  }

  TermVectorModel model;
  model.has_metadata = false;
  model.config.dim = static_cast<int>(dim);
  model.input = Matrix(count, dim);
  std::vector<VocabWord> words;
  std::set<std::string> seen;
  size_t row = 0;
  for (size_t ln = 1; ln < lines.size(); ++ln) {
    auto fields = split(lines[ln]);
    if (fields.empty()) continue;
    if (row >= count) fail(ln + 1, "more rows than the header count " + std::to_string(count));
    if (fields.size() != dim + 1) {
      fail(ln + 1, "expected " + std::to_string(dim) + " components, found " +
                       std::to_string(fields.size() - 1));
    }
    std::string key(fields[0]);
    if (!seen.insert(key).second) fail(ln + 1, "duplicate key '" + key + "'");
    auto out = model.input.row(row);
    for (size_t d = 0; d < dim; ++d) {
      std::string_view f = fields[d + 1];
      auto [p, ec] = std::from_chars(f.data(), f.data() + f.size(), out[d]);
      if (ec != std::errc() || p != f.data() + f.size() || !std::isfinite(out[d])) {
        fail(ln + 1, "bad number '" + std::string(f) + "'");
      }
    }
    words.push_back({key, 0, std::nullopt});
    ++row;
  }
  if (row != count) {
    fail(lines.size(), "header declares " + std::to_string(count) + " rows, found " +
                           std::to_string(row));
  }
  model.vocabulary = Vocabulary(std::move(words));
  return model;
}

TermVectorModel LoadModel(const fs::path &path) {
  std::error_code ec;
  bool is_dir = fs::is_directory(path, ec);
  fs::path vectors = is_dir ? path / "vectors.txt" : path;
  if (!fs::exists(vectors, ec)) throw Error(ErrorKind::kNotFound, "no vectors at " + path.string());
  TermVectorModel model = ParseVectors(ReadAll(vectors), vectors.string());
  fs::path meta_path = path / "meta.json";
  if (!is_dir || !fs::exists(meta_path, ec)) return model;

  json meta;
  try {
    meta = json::parse(ReadAll(meta_path));
  } catch (const json::exception &e) {
    throw Error(ErrorKind::kParse, meta_path.string() + ": " + e.what());
  }
  model.config = ConfigFromJson(meta.value("config", json::object()));
  std::vector<VocabWord> words = model.vocabulary.words();
  std::map<std::string, const json *> by_key;
  const json &entries = meta.at("vocabulary");
  for (const json &e : entries) by_key[e.at("key").get<std::string>()] = &e;
  for (VocabWord &w : words) {
    auto it = by_key.find(w.key);
    if (it == by_key.end()) {
      throw Error(ErrorKind::kValidation,
                  meta_path.string() + ": no metadata for key '" + w.key + "'");
    }
    w.frequency = it->second->value("frequency", size_t{0});
    const json &pos = it->second->at("pos");
    if (pos.is_string()) w.head_pos = ParsePos(pos.get<std::string>());
  }
  model.vocabulary = Vocabulary(std::move(words));
  model.has_metadata = true;
  return model;
}

double Cosine(std::span<const double> a, std::span<const float> b) {
  double dot = 0.0;
  double na = 0.0;
  double nb = 0.0;
  for (size_t i = 0; i < a.size(); ++i) {
    dot += a[i] * b[i];
    na += a[i] * a[i];
    nb += static_cast<double>(b[i]) * b[i];
  }
  if (na == 0.0 || nb == 0.0) return 0.0;
  // One square root keeps the cosine of a vector with itself exactly 1.
  return std::clamp(dot / std::sqrt(na * nb), -1.0, 1.0);
}

double Cosine(std::span<const float> a, std::span<const float> b) {
  std::vector<double> da = ToDouble(a);
  return Cosine(da, b);
}

double Similarity(const TermVectorModel &model, std::string_view a, std::string_view b) {
  size_t ia = RequireNonzero(model, a);
  size_t ib = RequireNonzero(model, b);
  return Cosine(model.vector(ia), model.vector(ib));
}

std::vector<Neighbor> NearestTo(const TermVectorModel &model, std::span<const double> query,
                                size_t topn, const QueryFilter &filter) {
  const bool metadata = model.has_metadata;
  double qn = 0.0;
  for (double x : query) qn += x * x;
  std::vector<Neighbor> result;
  if (qn == 0.0 || topn == 0) return result;
  qn = std::sqrt(qn);
  for (size_t i = 0; i < model.vocabulary.size(); ++i) {
    const VocabWord &w = model.vocabulary[i];
    if (filter.exclude.count(w.key) > 0) continue;
    if (metadata && filter.pos && w.head_pos != filter.pos) continue;
    if (metadata && filter.min_frequency && w.frequency < *filter.min_frequency) continue;
    auto v = model.vector(i);
    double vn = Norm(v);
    if (vn == 0.0) continue;
    double dot = 0.0;
    for (size_t d = 0; d < query.size(); ++d) dot += query[d] * v[d];
    result.push_back({w.key, dot / (qn * vn)});
  }
  auto better = [](const Neighbor &a, const Neighbor &b) {
    if (a.similarity != b.similarity) return a.similarity > b.similarity;
    return a.key < b.key;
  };
  size_t n = std::min(topn, result.size());
  std::partial_sort(result.begin(), result.begin() + n, result.end(), better);
  result.resize(n);
  return result;
}

std::vector<Neighbor> Neighbors(const TermVectorModel &model, std::string_view term, size_t topn,
                                const QueryFilter &filter) {
  size_t id = RequireNonzero(model, term);
  QueryFilter f = filter;
  f.exclude.insert(std::string(term));
  std::vector<double> q = ToDouble(model.vector(id));
  return NearestTo(model, q, topn, f);
}

std::vector<Neighbor> Analogy(const TermVectorModel &model, std::string_view y,
                              std::string_view a, std::string_view b, size_t topn) {
  auto vy = model.vector(Require(model, y));
  auto va = model.vector(Require(model, a));
  auto vb = model.vector(Require(model, b));
  std::vector<double> t(vy.size());
  for (size_t i = 0; i < t.size(); ++i) {
    t[i] = static_cast<double>(vy[i]) + va[i] - static_cast<double>(vb[i]);
  }
  QueryFilter f;
  f.exclude = {std::string(y), std::string(a), std::string(b)};
  return NearestTo(model, t, topn, f);
}

CentroidResult Centroid(const TermVectorModel &model, const std::vector<std::string> &terms,
                        size_t topn) {
  if (terms.empty()) throw Error(ErrorKind::kInvalidArgument, "centroid needs at least one term");
  CentroidResult r;
  r.vector.assign(model.input.cols(), 0.0);
  QueryFilter f;
  for (const std::string &t : terms) {
    auto v = model.vector(Require(model, t));
    for (size_t i = 0; i < v.size(); ++i) r.vector[i] += v[i];
    f.exclude.insert(t);
  }
  for (double &x : r.vector) x /= static_cast<double>(terms.size());
  r.neighbors = NearestTo(model, r.vector, topn, f);
  return r;
}

std::optional<std::vector<double>> OovVector(const TermVectorModel &model, std::string_view word) {
  int minn = model.config.minn;
  int maxn = model.config.maxn;
  if (minn <= 0) return std::nullopt;
  std::vector<std::string> grams = CharNgrams(word, minn, maxn);
  std::set<std::string> wanted(grams.begin(), grams.end());
  // Sum and count of the vocabulary vectors containing each wanted n-gram.
  std::map<std::string, std::pair<std::vector<double>, size_t>> acc;
  for (size_t i = 0; i < model.vocabulary.size(); ++i) {
    std::vector<std::string> own = CharNgrams(model.vocabulary[i].key, minn, maxn);
    std::set<std::string> unique(own.begin(), own.end());
    for (const std::string &g : unique) {
      if (wanted.count(g) == 0) continue;
      auto &[sum, n] = acc[g];
      if (sum.empty()) sum.assign(model.input.cols(), 0.0);
      auto v = model.vector(i);
      for (size_t d = 0; d < v.size(); ++d) sum[d] += v[d];
      ++n;
    }
  }
  if (acc.empty()) return std::nullopt;
  std::vector<double> result(model.input.cols(), 0.0);
  for (const auto &[g, entry] : acc) {
    for (size_t d = 0; d < result.size(); ++d) result[d] += entry.first[d] / entry.second;
  }
  for (double &x : result) x /= static_cast<double>(acc.size());
  return result;
}

}  // namespace termspace
