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

#ifndef TERMSPACE_EMBEDDINGS_H_
#define TERMSPACE_EMBEDDINGS_H_

#include <cstdint>
#include <functional>
#include <optional>
#include <random>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "termspace/lexicon.h"

namespace termspace {

using TermStream = std::vector<std::vector<std::string>>;

struct VocabWord {
  std::string key;
  size_t frequency = 0;
  std::optional<PartOfSpeech> head_pos;  // unknown for imported models
};

// Training vocabulary, ordered by descending frequency then key.
class Vocabulary {
 public:
  Vocabulary() = default;
  explicit Vocabulary(std::vector<VocabWord> words);

  size_t size() const { return words_.size(); }
  const VocabWord &operator[](size_t i) const { return words_[i]; }
  const std::vector<VocabWord> &words() const { return words_; }
  std::optional<size_t> Find(std::string_view key) const;

 private:
  std::vector<VocabWord> words_;
  std::unordered_map<std::string, size_t> index_;
};

// Keys occurring at least min_count times in the stream.
Vocabulary BuildVocab(const TermStream &stream, size_t min_count);

// Row-major float matrix.
class Matrix {
 public:
  Matrix() = default;
  Matrix(size_t rows, size_t cols) : rows_(rows), cols_(cols), data_(rows * cols, 0.0f) {}

  size_t rows() const { return rows_; }
  size_t cols() const { return cols_; }
  std::span<float> row(size_t r) { return {data_.data() + r * cols_, cols_}; }
  std::span<const float> row(size_t r) const { return {data_.data() + r * cols_, cols_}; }
  std::vector<float> &data() { return data_; }
  const std::vector<float> &data() const { return data_; }

 private:
  size_t rows_ = 0;
  size_t cols_ = 0;
  std::vector<float> data_;
};

enum class Algorithm { kSkipGram, kCbow };

std::string_view AlgorithmName(Algorithm algorithm);
std::optional<Algorithm> ParseAlgorithm(std::string_view name);

struct TrainingConfig {
  Algorithm algorithm = Algorithm::kSkipGram;
  int dim = 100;
  int window = 5;
  int negatives = 5;
  int epochs = 5;
  double learning_rate = 0.025;
  size_t min_count = 5;
  uint64_t seed = 1;
  double subsample = 0.0;  // 0 disables frequent-word subsampling
  int minn = 0;            // character n-gram range, 0 disables n-grams
  int maxn = 0;

  // Throws Error(kInvalidArgument) naming the first bad field.
  void Validate() const;
};

// Input ("v") and output ("u") vectors of every vocabulary key.
struct TermVectorModel {
  Vocabulary vocabulary;
  Matrix input;
  Matrix output;  // empty for imported models
  TrainingConfig config;
  bool has_metadata = true;  // false when loaded from a bare vectors file

  int dim() const { return static_cast<int>(input.cols()); }
  std::span<const float> vector(size_t i) const { return input.row(i); }
};

// Loss and gradients of one negative-sampling objective
//   -log s(u_pos . h) - sum_k log s(-u_neg_k . h)
// with respect to the hidden vector h and each output row. Gradients for
// repeated output ids are accumulated.
struct LossGrad {
  double loss = 0.0;
  std::vector<double> hidden_grad;
  std::vector<std::pair<size_t, std::vector<double>>> output_grads;
};

double Sigmoid(double x);

LossGrad NegativeSamplingLossGrad(std::span<const double> hidden, size_t positive,
                                  std::span<const size_t> negatives, const Matrix &output);

// Skip-gram pair: hidden is the input vector of `center`.
LossGrad PairLossGrad(size_t center, size_t context, std::span<const size_t> negatives,
                      const Matrix &input, const Matrix &output);

// CBOW: hidden is the mean of the context input vectors; the returned
// hidden gradient is with respect to that mean.
LossGrad CbowLossGrad(std::span<const size_t> contexts, size_t center,
                      std::span<const size_t> negatives, const Matrix &input,
                      const Matrix &output);

// Draws ids with probability proportional to frequency^power.
class NegativeSampler {
 public:
  explicit NegativeSampler(const Vocabulary &vocab, double power = 0.75);

  size_t Draw(std::mt19937_64 &rng) const { return dist_(rng); }
  double Probability(size_t id) const { return probabilities_[id]; }

 private:
  mutable std::discrete_distribution<size_t> dist_;
  std::vector<double> probabilities_;
};

struct TrainingReport {
  std::vector<double> epoch_loss;  // mean loss per positive example
  size_t examples = 0;
};

// Trains term vectors on a term stream. With a fixed seed the result is
// bit-for-bit reproducible. `progress` receives the fraction of work done.
TermVectorModel Train(const TermStream &stream, const TrainingConfig &config,
                      TrainingReport *report = nullptr,
                      const std::function<void(double)> &progress = nullptr);

// Character n-grams of "<word>" for n in [minn, maxn], counted in code
// points, plus the full token. With minn = maxn = 0 only the token.
std::vector<std::string> CharNgrams(std::string_view word, int minn, int maxn);

}  // namespace termspace

#endif  // TERMSPACE_EMBEDDINGS_H_
