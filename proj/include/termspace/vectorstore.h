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

#ifndef TERMSPACE_VECTORSTORE_H_
#define TERMSPACE_VECTORSTORE_H_

#include <filesystem>
#include <optional>
#include <set>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "json.hpp"
#include "termspace/embeddings.h"
#include "termspace/lexicon.h"

namespace termspace {

// Training configuration as stored in meta.json. Missing keys take their
// defaults.
nlohmann::json ConfigToJson(const TrainingConfig &config);
TrainingConfig ConfigFromJson(const nlohmann::json &j);

// Writes <dir>/vectors.txt ("<V> <dim>" header, then "key v1 .. vdim" per
// line, shortest round-trip floats) and <dir>/meta.json with frequencies,
// head parts of speech and the training configuration.
void SaveModel(const TermVectorModel &model, const std::filesystem::path &dir);

// Loads a model directory, or a bare vectors file. Without meta.json the
// model has no frequencies or parts of speech and filters are disabled.
// Throws Error(kParse) naming the line for a bad header, a row of the
// wrong dimension or a duplicate key.
TermVectorModel LoadModel(const std::filesystem::path &path);

// Parses text in the vectors.txt format.
TermVectorModel ParseVectors(std::string_view text, const std::string &source);

struct QueryFilter {
  std::optional<PartOfSpeech> pos;
  std::optional<size_t> min_frequency;  // inclusive
  std::set<std::string> exclude;
};

struct Neighbor {
  std::string key;
  double similarity = 0.0;
};

// Cosine similarity computed in double precision. Throws UnknownTermError,
// or Error(kInvalidArgument) if either vector is zero.
double Similarity(const TermVectorModel &model, std::string_view a, std::string_view b);

double Cosine(std::span<const float> a, std::span<const float> b);
double Cosine(std::span<const double> a, std::span<const float> b);

// Up to topn vocabulary keys most similar to `query`, ties broken by key.
// Zero-norm vectors are never returned. Part-of-speech and frequency
// filters are ignored when the model has no metadata.
std::vector<Neighbor> NearestTo(const TermVectorModel &model, std::span<const double> query,
                                size_t topn, const QueryFilter &filter = {});

// Neighbors of a term, excluding the term itself. The term's vector must
// be nonzero.
std::vector<Neighbor> Neighbors(const TermVectorModel &model, std::string_view term,
                                size_t topn, const QueryFilter &filter = {});

// Terms x with x - y close to a - b: nearest to v(y) + v(a) - v(b),
// excluding y, a and b.
std::vector<Neighbor> Analogy(const TermVectorModel &model, std::string_view y,
                              std::string_view a, std::string_view b, size_t topn);

struct CentroidResult {
  std::vector<double> vector;
  std::vector<Neighbor> neighbors;
};

// Mean of the members' vectors and its neighbors outside the set.
CentroidResult Centroid(const TermVectorModel &model, const std::vector<std::string> &terms,
                        size_t topn);

// Vector for a key missing from the vocabulary, built from character
// n-grams when the model was trained with them: each n-gram's vector is the
// mean of the vocabulary vectors whose keys contain it, and the result is
// the mean over the word's known n-grams. Returns nothing if n-grams are
// disabled or none is known.
std::optional<std::vector<double>> OovVector(const TermVectorModel &model, std::string_view word);

// Shortest decimal form that reads back to the same float.
std::string FormatFloat(float value);

}  // namespace termspace

#endif  // TERMSPACE_VECTORSTORE_H_
