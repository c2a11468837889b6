#include <cmath>
#include <map>

#include "doctest.h"

#include "homophony/entropy.h"
#include "homophony/ngram.h"
#include "homophony/table_model.h"
#include "support/toys.h"

using namespace homophony;
using homophony::testing::ab_alphabet;
using homophony::testing::brute_force_words;
using homophony::testing::toy_bigram;

namespace {
constexpr int kA = 0;
constexpr int kB = 1;
constexpr int kEow = 2;
}  // namespace

TEST_CASE("hand-counted toy bigram conditionals") {
  const NGramModel m = toy_bigram();
  const int bow = m.alphabet().bow();
  // (count + 0.01) / (total + 0.03)
  CHECK(m.prob(std::vector<int>{bow}, kA) == doctest::Approx(2.01 / 2.03).epsilon(1e-12));
  CHECK(m.prob(std::vector<int>{kA}, kB) == doctest::Approx(1.01 / 2.03).epsilon(1e-12));
  CHECK(m.prob(std::vector<int>{kB}, kA) == doctest::Approx(0.01 / 1.03).epsilon(1e-12));
  CHECK(m.prob(std::vector<int>{bow}, kA) == doctest::Approx(0.990148).epsilon(1e-6));
  CHECK(m.prob(std::vector<int>{kA}, kB) == doctest::Approx(0.497537).epsilon(1e-6));
  CHECK(m.prob(std::vector<int>{kB}, kA) == doctest::Approx(0.009709).epsilon(1e-4));
}

TEST_CASE("next_distribution at BOW") {
  const NGramModel m = toy_bigram();
  const FiniteDistribution d = m.next_distribution(m.initial_state());
  CHECK(d.labels() == std::vector<std::string>{"a", "b", Alphabet::kEowLabel});
  const Eigen::VectorXd p = d.probs();
  CHECK(p[kA] == doctest::Approx(0.9901477832512315).epsilon(1e-12));
  CHECK(p[kB] == doctest::Approx(0.0049261083743842365).epsilon(1e-12));
  CHECK(p[kEow] == doctest::Approx(0.0049261083743842365).epsilon(1e-12));
}

TEST_CASE("log_prob multiplies conditionals including EOW") {
  const NGramModel m = toy_bigram();
  const Alphabet a = ab_alphabet();
  CHECK(m.log_prob(Wordform::parse("a", a)) == doctest::Approx(-1.021408660439629).epsilon(1e-12));
  CHECK(m.log_prob(Wordform::parse("a b", a)) ==
        doctest::Approx(-1.0496977048710527).epsilon(1e-12));
  CHECK(m.log_prob(Wordform::parse("a", a)) <= 0.0);

  SUBCASE("whole-word score equals the stepwise sum") {
    Rng rng(5);
    for (int trial = 0; trial < 200; ++trial) {
      std::vector<int> w(1 + rng.below(8));
      for (int& p : w) p = static_cast<int>(rng.below(2));
      ModelState s = m.initial_state();
      double stepwise = 0.0;
      for (int p : w) {
        stepwise += m.next_distribution(s).log2_probs()[p];
        m.advance(s, p);
      }
      stepwise += m.next_distribution(s).log2_probs()[kEow];
      CHECK(m.log_prob(w) == doctest::Approx(stepwise).epsilon(1e-12));
    }
  }
}

TEST_CASE("cross_entropy is reported per word") {
  const NGramModel m = toy_bigram();
  const Alphabet a = ab_alphabet();
  std::vector<Wordform> words{Wordform::parse("a", a)};
  const CrossEntropy ce = cross_entropy(m, words);
  CHECK(ce.bits_per_word == doctest::Approx(1.021408660439629).epsilon(1e-12));
  CHECK(ce.bits_per_phone == doctest::Approx(1.021408660439629 / 2).epsilon(1e-12));
  CHECK_THROWS(cross_entropy(m, std::vector<Wordform>{}));
}

TEST_CASE("cross-entropy equals entropy when the model is the data distribution") {
  // Closed 3-word model: "a" 1/2, "b" 1/4, "ab" 1/4.
  const Alphabet a = ab_alphabet();
  Eigen::VectorXd stop(3);
  stop << 0, 0, 1;
  TableModel m(a, stop);
  Eigen::VectorXd root(3);
  root << 0.75, 0.25, 0.0;
  m.set_conditional({}, root);
  Eigen::VectorXd after_a(3);
  after_a << 0.0, 1.0 / 3.0, 2.0 / 3.0;
  m.set_conditional({kA}, after_a);
  std::vector<Wordform> data{Wordform::parse("a", a), Wordform::parse("a", a),
                             Wordform::parse("b", a), Wordform::parse("a b", a)};
  CHECK(cross_entropy(m, data).bits_per_word == doctest::Approx(1.5).epsilon(1e-12));
}

TEST_CASE("unseen contexts predict uniformly") {
  const Alphabet a = ab_alphabet();
  std::vector<Wordform> words{Wordform::parse("a b", a)};
  const NGramModel m = NGramModel::train(words, 3, 0.01, a);
  const int bow = a.bow();
  for (int next = 0; next < 3; ++next) {
    CHECK(m.prob(std::vector<int>{kB, kB}, next) == doctest::Approx(1.0 / 3.0).epsilon(1e-15));
  }
  CHECK(m.prob(std::vector<int>{bow, bow}, kA) == doctest::Approx(1.01 / 1.03));
}

TEST_CASE("training validates its inputs") {
  const Alphabet a = ab_alphabet();
  std::vector<Wordform> words{Wordform::parse("a", a)};
  CHECK_THROWS(NGramModel::train(words, 0, 0.01, a));
  CHECK_THROWS(NGramModel::train(words, 2, 0.0, a));
  CHECK_THROWS(NGramModel::train(std::vector<Wordform>{}, 2, 0.01, a));
  const Alphabet big({"a", "b", "c"});
  std::vector<Wordform> foreign{Wordform::parse("c", big)};
  CHECK_THROWS_AS(NGramModel::train(foreign, 2, 0.01, a), DataError);
}

TEST_CASE("every conditional normalizes, for any order, on fuzzed prefixes") {
  Rng rng(17);
  const Alphabet a({"p", "t", "k", "a"});
  std::vector<Wordform> corpus;
  for (int i = 0; i < 60; ++i) {
    std::vector<int> w(1 + rng.below(6));
    for (int& p : w) p = static_cast<int>(rng.below(4));
    corpus.emplace_back(w, a);
  }
  for (int order = 1; order <= 5; ++order) {
    const NGramModel m = NGramModel::train(corpus, order, 0.01, a);
    for (int trial = 0; trial < 50; ++trial) {
      ModelState s = m.initial_state();
      const std::size_t len = rng.below(8);
      for (std::size_t t = 0; t <= len; ++t) {
        CHECK(std::abs(logsumexp2(m.next_log_probs(s))) < 1e-9);
        m.advance(s, static_cast<int>(rng.below(4)));
      }
    }
  }
}

TEST_CASE("larger lambda moves every conditional toward uniform") {
  const Alphabet a = ab_alphabet();
  std::vector<Wordform> words{Wordform::parse("a b", a), Wordform::parse("a", a)};
  const std::vector<std::vector<int>> contexts{{a.bow()}, {kA}, {kB}};
  double lambdas[] = {0.001, 0.01, 0.1, 1.0, 10.0, 100.0};
  for (const auto& c : contexts) {
    for (int x = 0; x < 3; ++x) {
      double prev = 1.0;
      for (double lam : lambdas) {
        const NGramModel m = NGramModel::train(words, 2, lam, a);
        const double gap = std::abs(m.prob(c, x) - 1.0 / 3.0);
        CHECK(gap <= prev + 1e-15);
        prev = gap;
      }
    }
  }
}

TEST_CASE("exhaustive probability mass is one") {
  // p(continue | phone) is about 0.02, so strings longer than 12 carry
  // less than 1e-20 of the mass.
  const Alphabet a = ab_alphabet();
  std::vector<Wordform> words{Wordform::parse("a", a), Wordform::parse("b", a)};
  const NGramModel m = NGramModel::train(words, 2, 0.01, a);
  double total = 0.0;
  for (const auto& w : brute_force_words(m, 12)) total += w.prob;
  CHECK(total == doctest::Approx(1.0).epsilon(1e-6));
}

TEST_CASE("JSON model files round-trip exactly") {
  const NGramModel m = toy_bigram();
  const NGramModel back = NGramModel::from_json(nlohmann::json::parse(m.to_json().dump()));
  CHECK(back.to_json() == m.to_json());
  CHECK(back.order() == 2);
  CHECK(back.lambda() == 0.01);
  ModelState s = m.initial_state();
  ModelState t = back.initial_state();
  for (int step = 0; step < 3; ++step) {
    CHECK(m.next_log_probs(s) == back.next_log_probs(t));
    m.advance(s, kA);
    back.advance(t, kA);
  }
  auto j = m.to_json();
  j["version"] = 7;
  CHECK_THROWS_AS(NGramModel::from_json(j), DataError);
}

TEST_CASE("ancestral sampling") {
  const Alphabet a = ab_alphabet();
  SUBCASE("degenerate model always emits the same word") {
    const TableModel m = TableModel::point_mass(a, {kA});
    Rng rng(1);
    for (int i = 0; i < 100; ++i) {
      auto out = sample_word(m, rng, 50);
      REQUIRE(std::holds_alternative<Wordform>(out));
      CHECK(std::get<Wordform>(out).to_string(a) == "a");
    }
  }
  SUBCASE("model that never stops overflows") {
    Eigen::VectorXd never_stop(3);
    never_stop << 0.5, 0.5, 0.0;
    const TableModel m(a, never_stop, 200);
    Rng rng(2);
    CHECK(std::holds_alternative<Overflow>(sample_word(m, rng, 50)));
  }
  SUBCASE("same seed, same words") {
    const NGramModel m = toy_bigram();
    Rng r1(99), r2(99);
    for (int i = 0; i < 100; ++i) CHECK(sample_phones(m, r1, 50) == sample_phones(m, r2, 50));
  }
  SUBCASE("empirical frequency of 'a' matches p('a') = 0.492635") {
    const NGramModel m = toy_bigram();
    Rng rng(2024);
    const int n = 100000;
    int hits = 0;
    for (int i = 0; i < n; ++i) {
      auto w = sample_phones(m, rng, 50);
      if (w && *w == std::vector<int>{kA}) ++hits;
    }
    CHECK(std::abs(hits / double(n) - 0.49263510398213983) < 0.01);
  }
}

TEST_CASE("sampling agrees with log_prob: chi-square goodness of fit") {
  // Closed random model on two phones, forced to stop after 3 phones: 15 words.
  Rng model_rng(8);
  const TableModel m = TableModel::random(ab_alphabet(), 3, model_rng);
  const auto words = brute_force_words(m, 3);
  std::map<std::vector<int>, double> expected;
  for (const auto& w : words) expected[w.phones] = w.prob;
  REQUIRE(expected.size() == 15);

  Rng rng(77);
  const int n = 100000;
  std::map<std::vector<int>, int> observed;
  for (int i = 0; i < n; ++i) ++observed[*sample_phones(m, rng, 50)];
  double chi2 = 0.0;
  for (const auto& [w, p] : expected) {
    CHECK(std::exp2(m.log_prob(w)) == doctest::Approx(p).epsilon(1e-12));
    const double e = p * n;
    const double d = observed[w] - e;
    chi2 += d * d / e;
  }
  // 14 degrees of freedom: P(chi2 > 29.14) = 0.01.
  CHECK(chi2 < 29.14);
}
