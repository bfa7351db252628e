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

#include <cmath>
#include <limits>
#include <random>

#include "oracles.h"
#include "test_util.h"

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

namespace termspace {
namespace {

using testing::MaxGradientError;
using testing::OracleLoss;
using testing::RandomMatrix;
using testing::ThrownKind;
using testing::ToDouble;

TEST_CASE("pair gradients match central differences") {
  std::mt19937_64 rng(99);
  double worst = 0.0;
  for (int state = 0; state < 20; ++state) {
    const size_t V = 12, dim = 8;
    Matrix input = RandomMatrix(V, dim, rng);
    Matrix output = RandomMatrix(V, dim, rng);
    size_t center = rng() % V, context = rng() % V;
    std::vector<size_t> negatives;
    for (int k = 0; k < 5; ++k) negatives.push_back(rng() % V);
    negatives.push_back(negatives[0]);  // repeated negatives accumulate
    LossGrad lg = PairLossGrad(center, context, negatives, input, output);
    std::vector<double> hidden(input.row(center).begin(), input.row(center).end());
    auto out = ToDouble(output);
    CHECK(lg.loss == doctest::Approx(OracleLoss(hidden, out, context, negatives)).epsilon(1e-9));
    worst = std::max(worst, MaxGradientError(lg, hidden, out, context, negatives));
  }
  CHECK(worst < 1e-4);
}

TEST_CASE("cbow gradients match central differences") {
  std::mt19937_64 rng(7);
  for (int state = 0; state < 20; ++state) {
    const size_t V = 10, dim = 8;
    Matrix input = RandomMatrix(V, dim, rng);
    Matrix output = RandomMatrix(V, dim, rng);
    std::vector<size_t> contexts = {rng() % V, rng() % V, rng() % V};
    size_t center = rng() % V;
    std::vector<size_t> negatives = {rng() % V, rng() % V, rng() % V};
    LossGrad lg = CbowLossGrad(contexts, center, negatives, input, output);
    std::vector<double> hidden(dim, 0.0);
    for (size_t c : contexts) {
      for (size_t d = 0; d < dim; ++d) hidden[d] += input.row(c)[d] / contexts.size();
    }
    CHECK(MaxGradientError(lg, hidden, ToDouble(output), center, negatives) < 1e-4);
  }
}

TEST_CASE("pair loss at the zero state and as the dot product grows") {
  const size_t k = 3;
  Matrix input(4, 5), output(4, 5);
  std::vector<size_t> negatives = {1, 2, 3};
  LossGrad lg = PairLossGrad(0, 1, negatives, input, output);
  CHECK(lg.loss == doctest::Approx((1 + k) * std::log(2.0)).epsilon(1e-12));
  for (double g : lg.hidden_grad) CHECK(g == 0.0);
  for (const auto &[row, grad] : lg.output_grads) {
    for (double g : grad) CHECK(g == 0.0);
  }

  // With no negatives the loss is -log sigmoid(u.v), falling as u.v rises.
  double previous = std::numeric_limits<double>::infinity();
  for (float scale : {0.0f, 0.5f, 1.0f, 2.0f, 4.0f}) {
    for (size_t d = 0; d < 5; ++d) input.row(0)[d] = output.row(1)[d] = scale;
    double loss = PairLossGrad(0, 1, {}, input, output).loss;
    CHECK(loss == doctest::Approx(-std::log(Sigmoid(5.0 * scale * scale))).epsilon(1e-9));
    CHECK(loss < previous);
    previous = loss;
  }
}

TEST_CASE("sigmoid") {
  CHECK(Sigmoid(0.0) == 0.5);
  CHECK(Sigmoid(30.0) == doctest::Approx(1.0));
  CHECK(Sigmoid(-30.0) == doctest::Approx(0.0));
}

Vocabulary SkewedVocab() {
  std::vector<VocabWord> words;
  size_t freqs[] = {1000, 400, 250, 100, 60, 20, 9, 4, 2, 1};
  for (size_t i = 0; i < 10; ++i) words.push_back({"w" + std::to_string(i), freqs[i], {}});
  return Vocabulary(words);
}

TEST_CASE("negative sampler follows unigram to the three quarters") {
  Vocabulary vocab = SkewedVocab();
  NegativeSampler sampler(vocab);
  double z = 0.0;
  for (const VocabWord &w : vocab.words()) z += std::pow(static_cast<double>(w.frequency), 0.75);
  std::mt19937_64 rng(2024);
  std::vector<size_t> counts(vocab.size(), 0);
  const size_t draws = 1000000;
  for (size_t i = 0; i < draws; ++i) ++counts[sampler.Draw(rng)];
  for (size_t id = 0; id < vocab.size(); ++id) {
    double expected = std::pow(static_cast<double>(vocab[id].frequency), 0.75) / z;
    CHECK(sampler.Probability(id) == doctest::Approx(expected).epsilon(1e-12));
    CHECK(std::abs(static_cast<double>(counts[id]) / draws - expected) < 0.01);
  }
}

TEST_CASE("vocabulary order and min count") {
  TermStream stream = {{"b", "a", "c", "a"}, {"c", "a", "d"}, {"b"}};
  Vocabulary v = BuildVocab(stream, 2);
  REQUIRE(v.size() == 3);
  CHECK(v[0].key == "a");
  CHECK(v[0].frequency == 3);
  CHECK(v[1].key == "b");
  CHECK(v[2].key == "c");
  CHECK(v.Find("c") == 2);
  CHECK_FALSE(v.Find("d"));
}

TEST_CASE("small vocabulary examples") {
  TermStream stream = {{"a", "a", "b"}};
  Vocabulary one = BuildVocab(stream, 1);
  REQUIRE(one.size() == 2);
  CHECK(one[0].key == "a");
  CHECK(one[0].frequency == 2);
  CHECK(one[1].key == "b");
  CHECK(one[1].frequency == 1);
  Vocabulary two = BuildVocab(stream, 2);
  REQUIRE(two.size() == 1);
  CHECK(two[0].key == "a");
}

TermStream ToyStream() {
  TermStream stream;
  std::mt19937 rng(1);
  std::vector<std::string> a = {"alpha", "beta", "gamma", "delta"};
  std::vector<std::string> b = {"one", "two", "three", "four"};
  for (int i = 0; i < 200; ++i) {
    const auto &pool = i % 2 ? a : b;
    std::vector<std::string> s;
    for (int k = 0; k < 6; ++k) s.push_back(pool[rng() % pool.size()]);
    stream.push_back(s);
  }
  return stream;
}

TrainingConfig ToyConfig() {
  TrainingConfig c;
  c.dim = 10;
  c.window = 2;
  c.negatives = 3;
  c.epochs = 4;
  c.min_count = 1;
  c.seed = 5;
  return c;
}

TEST_CASE("training is deterministic for a seed") {
  TermVectorModel a = Train(ToyStream(), ToyConfig());
  TermVectorModel b = Train(ToyStream(), ToyConfig());
  CHECK(a.input.data() == b.input.data());
  CHECK(a.output.data() == b.output.data());
  TrainingConfig other = ToyConfig();
  other.seed = 6;
  CHECK(Train(ToyStream(), other).input.data() != a.input.data());
  CHECK(a.vocabulary.size() == 8);
  CHECK(a.dim() == 10);
}

TEST_CASE("loss goes down for both algorithms") {
  for (Algorithm algorithm : {Algorithm::kSkipGram, Algorithm::kCbow}) {
    TrainingConfig c = ToyConfig();
    c.algorithm = algorithm;
    c.epochs = 8;
    TrainingReport report;
    std::vector<double> progress;
    Train(ToyStream(), c, &report, [&](double f) { progress.push_back(f); });
    REQUIRE(report.epoch_loss.size() == 8);
    CHECK(report.examples > 0);
    for (size_t e = 1; e < report.epoch_loss.size(); ++e) {
      CHECK(report.epoch_loss[e] <= report.epoch_loss[e - 1] * 1.05);
    }
    CHECK(report.epoch_loss.back() < report.epoch_loss.front());
    REQUIRE_FALSE(progress.empty());
    CHECK(std::is_sorted(progress.begin(), progress.end()));
    CHECK(progress.back() == doctest::Approx(1.0));
  }
}

TEST_CASE("subsampling and n-gram settings train") {
  TrainingConfig c = ToyConfig();
  c.subsample = 0.01;
  c.minn = 2;
  c.maxn = 3;
  TermVectorModel m = Train(ToyStream(), c);
  CHECK(m.config.minn == 2);
  for (float x : m.input.data()) CHECK(std::isfinite(x));
}

TEST_CASE("configuration is validated") {
  auto bad = [](auto mutate) {
    TrainingConfig c;
    mutate(c);
    return ThrownKind([&] { c.Validate(); });
  };
  CHECK_FALSE(bad([](TrainingConfig &) {}));
  CHECK(bad([](TrainingConfig &c) { c.epochs = 0; }) == ErrorKind::kInvalidArgument);
  CHECK(bad([](TrainingConfig &c) { c.dim = 0; }) == ErrorKind::kInvalidArgument);
  CHECK(bad([](TrainingConfig &c) { c.window = 0; }) == ErrorKind::kInvalidArgument);
  CHECK(bad([](TrainingConfig &c) { c.negatives = 0; }) == ErrorKind::kInvalidArgument);
  CHECK(bad([](TrainingConfig &c) { c.learning_rate = 0; }) == ErrorKind::kInvalidArgument);
  CHECK(bad([](TrainingConfig &c) { c.min_count = 0; }) == ErrorKind::kInvalidArgument);
  CHECK(bad([](TrainingConfig &c) { c.minn = 3; }) == ErrorKind::kInvalidArgument);
  CHECK(bad([](TrainingConfig &c) {
          c.minn = 4;
          c.maxn = 3;
        }) == ErrorKind::kInvalidArgument);
  TrainingConfig c = ToyConfig();
  c.min_count = 1000;
  CHECK(ThrownKind([&] { Train(ToyStream(), c); }) == ErrorKind::kInvalidArgument);
}

TEST_CASE("character n-grams") {
  CHECK(CharNgrams("matter", 3, 3) ==
        std::vector<std::string>{"<ma", "mat", "att", "tte", "ter", "er>", "<matter>"});
  CHECK(CharNgrams("mat", 3, 3) == std::vector<std::string>{"<ma", "mat", "at>", "<mat>"});
  CHECK(CharNgrams("ab", 0, 0) == std::vector<std::string>{"<ab>"});
  CHECK(CharNgrams("ab", 2, 3) ==
        std::vector<std::string>{"<a", "<ab", "ab", "ab>", "b>", "<ab>"});
  // counted in code points
  CHECK(CharNgrams("ї", 2, 2) == std::vector<std::string>{"<ї", "ї>", "<ї>"});
  CHECK(ParseAlgorithm("cbow") == Algorithm::kCbow);
  CHECK(AlgorithmName(Algorithm::kSkipGram) == "sgns");
  CHECK_FALSE(ParseAlgorithm("glove"));
}

}  // namespace
}  // namespace termspace
