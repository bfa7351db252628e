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

#include "termspace/embeddings.h"

#include <algorithm>
#include <cmath>
#include <map>

#include "termspace/error.h"
#include "termspace/unicode.h"

namespace termspace {

Vocabulary::Vocabulary(std::vector<VocabWord> words) : words_(std::move(words)) {
  for (size_t i = 0; i < words_.size(); ++i) {
    if (!index_.emplace(words_[i].key, i).second) {
      throw Error(ErrorKind::kValidation, "duplicate vocabulary key '" + words_[i].key + "'");
    }
  }
}

std::optional<size_t> Vocabulary::Find(std::string_view key) const {
  auto it = index_.find(std::string(key));
  if (it == index_.end()) return std::nullopt;
  return it->second;
}

Vocabulary BuildVocab(const TermStream &stream, size_t min_count) {
  std::map<std::string, size_t> counts;
  for (const auto &sentence : stream) {
    for (const std::string &w : sentence) ++counts[w];
  }
  std::vector<VocabWord> words;
  for (const auto &[key, n] : counts) {
    if (n >= min_count) words.push_back({key, n, std::nullopt});
  }
  std::stable_sort(words.begin(), words.end(), [](const VocabWord &a, const VocabWord &b) {
    return a.frequency > b.frequency;
  });
  return Vocabulary(std::move(words));
}

std::string_view AlgorithmName(Algorithm algorithm) {
  return algorithm == Algorithm::kCbow ? "cbow" : "sgns";
}

std::optional<Algorithm> ParseAlgorithm(std::string_view name) {
  if (name == "sgns" || name == "skipgram" || name == "skip-gram") return Algorithm::kSkipGram;
  if (name == "cbow") return Algorithm::kCbow;
  return std::nullopt;
}

void TrainingConfig::Validate() const {
  auto fail = [](const std::string &what) { throw Error(ErrorKind::kInvalidArgument, what); };
  if (dim < 1) fail("dim must be at least 1");
  if (window < 1) fail("window must be at least 1");
  if (negatives < 1) fail("negatives must be at least 1");
  if (epochs < 1) fail("epochs must be at least 1");
  if (!(learning_rate > 0.0) || !std::isfinite(learning_rate)) {
    fail("learning_rate must be positive");
  }
  if (min_count < 1) fail("min_count must be at least 1");
  if (subsample < 0.0 || !std::isfinite(subsample)) fail("subsample must be non-negative");
  if (minn < 0 || maxn < 0 || minn > maxn || (minn == 0) != (maxn == 0)) {
    fail("n-gram range needs 1 <= minn <= maxn, or minn = maxn = 0");
  }
}

double Sigmoid(double x) { return 1.0 / (1.0 + std::exp(-x)); }

namespace {

// -log(sigmoid(x)) without overflow.
double LogLoss(double x) {
  return x > 0 ? std::log1p(std::exp(-x)) : -x + std::log1p(std::exp(x));
}

double Dot(std::span<const double> a, std::span<const float> b) {
  double s = 0.0;
  for (size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return s;
}

void AddOutputGrad(LossGrad *lg, size_t id, std::span<const double> hidden, double coef) {
  auto it = std::find_if(lg->output_grads.begin(), lg->output_grads.end(),
                         [id](const auto &p) { return p.first == id; });
  if (it == lg->output_grads.end()) {
    lg->output_grads.emplace_back(id, std::vector<double>(hidden.size(), 0.0));
    it = lg->output_grads.end() - 1;
  }
  for (size_t i = 0; i < hidden.size(); ++i) it->second[i] += coef * hidden[i];
}

}  // namespace

LossGrad NegativeSamplingLossGrad(std::span<const double> hidden, size_t positive,
                                  std::span<const size_t> negatives, const Matrix &output) {
  LossGrad lg;
  lg.hidden_grad.assign(hidden.size(), 0.0);
  auto term = [&](size_t id, double label) {
    auto u = output.row(id);
    double x = Dot(hidden, u);
    // d/dx of -log s(x) is s(x) - 1; of -log s(-x) is s(x).
    double coef = Sigmoid(x) - label;
    lg.loss += label > 0 ? LogLoss(x) : LogLoss(-x);
    for (size_t i = 0; i < hidden.size(); ++i) lg.hidden_grad[i] += coef * u[i];
    AddOutputGrad(&lg, id, hidden, coef);
  };
  term(positive, 1.0);
  for (size_t id : negatives) term(id, 0.0);
  return lg;
}

LossGrad PairLossGrad(size_t center, size_t context, std::span<const size_t> negatives,
                      const Matrix &input, const Matrix &output) {
  auto v = input.row(center);
  std::vector<double> hidden(v.begin(), v.end());
  return NegativeSamplingLossGrad(hidden, context, negatives, output);
}

LossGrad CbowLossGrad(std::span<const size_t> contexts, size_t center,
                      std::span<const size_t> negatives, const Matrix &input,
                      const Matrix &output) {
  std::vector<double> hidden(input.cols(), 0.0);
  for (size_t c : contexts) {
    auto v = input.row(c);
    for (size_t i = 0; i < hidden.size(); ++i) hidden[i] += v[i];
  }
  for (double &h : hidden) h /= static_cast<double>(contexts.size());
  return NegativeSamplingLossGrad(hidden, center, negatives, output);
}

NegativeSampler::NegativeSampler(const Vocabulary &vocab, double power) {
  std::vector<double> weights;
  double total = 0.0;
  for (const VocabWord &w : vocab.words()) {
    weights.push_back(std::pow(static_cast<double>(w.frequency), power));
    total += weights.back();
  }
  for (double w : weights) probabilities_.push_back(total > 0 ? w / total : 0.0);
  dist_ = std::discrete_distribution<size_t>(weights.begin(), weights.end());
}

namespace {

// One SGD step on a hidden vector: updates the output rows in place and
// accumulates the hidden gradient (already scaled by -lr) in `hidden_step`.
double Step(std::span<const float> hidden, size_t positive, const std::vector<size_t> &negatives,
            double lr, Matrix *output, std::vector<float> *hidden_step) {
  double loss = 0.0;
  auto update = [&](size_t id, double label) {
    auto u = output->row(id);
    double x = 0.0;
    for (size_t i = 0; i < hidden.size(); ++i) x += static_cast<double>(hidden[i]) * u[i];
    loss += label > 0 ? LogLoss(x) : LogLoss(-x);
    double g = (label - Sigmoid(x)) * lr;
    for (size_t i = 0; i < hidden.size(); ++i) {
      (*hidden_step)[i] += static_cast<float>(g * u[i]);
      u[i] += static_cast<float>(g * hidden[i]);
    }
  };
  update(positive, 1.0);
  for (size_t id : negatives) update(id, 0.0);
  return loss;
}

}  // namespace

TermVectorModel Train(const TermStream &stream, const TrainingConfig &config,
                      TrainingReport *report, const std::function<void(double)> &progress) {
  config.Validate();
  TermVectorModel model;
  model.config = config;
  model.vocabulary = BuildVocab(stream, config.min_count);
  const size_t V = model.vocabulary.size();
  if (V == 0) {
    throw Error(ErrorKind::kInvalidArgument,
                "no term reaches min_count " + std::to_string(config.min_count));
  }
  const size_t dim = static_cast<size_t>(config.dim);
  model.input = Matrix(V, dim);
  model.output = Matrix(V, dim);

  std::mt19937_64 rng(config.seed);
  std::uniform_real_distribution<float> init(-0.5f / dim, 0.5f / dim);
  for (float &x : model.input.data()) x = init(rng);

  std::vector<std::vector<size_t>> sentences;
  size_t total_words = 0;
  for (const auto &sentence : stream) {
    std::vector<size_t> ids;
    for (const std::string &w : sentence) {
      if (auto id = model.vocabulary.Find(w)) ids.push_back(*id);
    }
    total_words += ids.size();
    sentences.push_back(std::move(ids));
  }

  NegativeSampler sampler(model.vocabulary);
  std::uniform_int_distribution<int> window(1, config.window);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  const double budget = static_cast<double>(config.epochs) * total_words + 1.0;
  size_t processed = 0;
  std::vector<float> hidden_step(dim);
  std::vector<float> hidden(dim);
  std::vector<size_t> negatives;
  std::vector<size_t> ids;

  if (report != nullptr) *report = TrainingReport{};
  for (int epoch = 0; epoch < config.epochs; ++epoch) {
    double epoch_loss = 0.0;
    size_t epoch_examples = 0;
    for (const auto &sentence : sentences) {
      ids.clear();
      for (size_t id : sentence) {
        if (config.subsample > 0.0) {
          double f = static_cast<double>(model.vocabulary[id].frequency);
          double t = config.subsample * total_words;
          double keep = (std::sqrt(f / t) + 1.0) * t / f;
          if (keep < unit(rng)) continue;
        }
        ids.push_back(id);
      }
      for (size_t i = 0; i < ids.size(); ++i) {
        double lr = config.learning_rate * std::max(1e-4, 1.0 - processed / budget);
        ++processed;
        int b = window(rng);
        size_t lo = i >= static_cast<size_t>(b) ? i - b : 0;
        size_t hi = std::min(ids.size() - 1, i + b);
        auto draw_negatives = [&](size_t positive) {
          negatives.clear();
          for (int k = 0; k < config.negatives; ++k) {
            size_t id = sampler.Draw(rng);
            if (id != positive) negatives.push_back(id);
          }
        };
        if (config.algorithm == Algorithm::kSkipGram) {
          for (size_t j = lo; j <= hi; ++j) {
            if (j == i) continue;
            draw_negatives(ids[j]);
            auto v = model.input.row(ids[i]);
            std::fill(hidden_step.begin(), hidden_step.end(), 0.0f);
            epoch_loss += Step(v, ids[j], negatives, lr, &model.output, &hidden_step);
            ++epoch_examples;
            for (size_t d = 0; d < dim; ++d) v[d] += hidden_step[d];
          }
        } else {
          size_t count = 0;
          std::fill(hidden.begin(), hidden.end(), 0.0f);
          for (size_t j = lo; j <= hi; ++j) {
            if (j == i) continue;
            auto v = model.input.row(ids[j]);
            for (size_t d = 0; d < dim; ++d) hidden[d] += v[d];
            ++count;
          }
          if (count == 0) continue;
          for (float &h : hidden) h /= static_cast<float>(count);
          draw_negatives(ids[i]);
          std::fill(hidden_step.begin(), hidden_step.end(), 0.0f);
          epoch_loss += Step(hidden, ids[i], negatives, lr, &model.output, &hidden_step);
          ++epoch_examples;
          for (size_t j = lo; j <= hi; ++j) {
            if (j == i) continue;
            auto v = model.input.row(ids[j]);
            for (size_t d = 0; d < dim; ++d) v[d] += hidden_step[d] / static_cast<float>(count);
          }
        }
      }
      if (progress && total_words > 0) {
        progress(std::min(1.0, processed / (static_cast<double>(config.epochs) * total_words)));
      }
    }
    if (report != nullptr) {
      report->epoch_loss.push_back(epoch_examples > 0 ? epoch_loss / epoch_examples : 0.0);
      report->examples += epoch_examples;
    }
  }
  return model;
}

std::vector<std::string> CharNgrams(std::string_view word, int minn, int maxn) {
  std::vector<std::string> grams;
  std::string marked = "<" + std::string(word) + ">";
  if (minn > 0) {
    std::vector<CodePoint> cps = DecodeUtf8(marked);
    for (size_t i = 0; i < cps.size(); ++i) {
      for (int n = minn; n <= maxn && i + n <= cps.size(); ++n) {
        std::string g = marked.substr(cps[i].begin, cps[i + n - 1].end - cps[i].begin);
        if (g != marked) grams.push_back(std::move(g));
      }
    }
  }
  grams.push_back(marked);
  return grams;
}

}  // namespace termspace
