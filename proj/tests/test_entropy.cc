#include <algorithm>
#include <cmath>
#include <map>
#include <set>

#include "doctest.h"

#include "homophony/entropy.h"
#include "homophony/table_model.h"
#include "support/toys.h"

using namespace homophony;
using homophony::testing::ab_alphabet;
using homophony::testing::brute_force_words;
using homophony::testing::exact_h2;
using homophony::testing::toy_bigram;

namespace {

Lexicon lexicon_of(const std::vector<std::string>& forms, const std::vector<std::string>& ids) {
  std::set<std::string> symbols;
  for (const auto& f : forms) {
    std::istringstream in(f);
    for (std::string s; in >> s;) symbols.insert(s);
  }
  Lexicon lex;
  lex.alphabet = Alphabet(std::vector<std::string>(symbols.begin(), symbols.end()));
  for (std::size_t i = 0; i < forms.size(); ++i) {
    lex.entries.push_back({Wordform::parse(forms[i], lex.alphabet), ids[i],
                           MorphStatus::kMonomorphemic, false, std::nullopt});
  }
  return lex;
}

// Ordered-pair double sum, the textbook definition.
double pairwise_renyi(const Lexicon& lex) {
  const std::size_t m = lex.size();
  double hits = 0.0;
  for (std::size_t i = 0; i < m; ++i) {
    for (std::size_t j = 0; j < m; ++j) {
      if (i != j && lex.entries[i].form == lex.entries[j].form) hits += 1.0;
    }
  }
  return -std::log2(hits / (static_cast<double>(m) * (m - 1)));
}

Eigen::VectorXd log2_of(std::initializer_list<double> probs) {
  Eigen::VectorXd v(probs.size());
  Eigen::Index i = 0;
  for (double p : probs) v[i++] = std::log2(p);
  return v;
}

std::map<std::vector<int>, double> collect(const PhonotacticModel& m, double delta,
                                           std::size_t max_len, SupportAccumulators* acc = nullptr) {
  std::map<std::vector<int>, double> out;
  auto a = enumerate_support(m, {delta, max_len, 1'000'000},
                             [&](std::span<const int> w, double lp) {
                               out[std::vector<int>(w.begin(), w.end())] = lp;
                             });
  if (acc) *acc = a;
  return out;
}

}  // namespace

TEST_CASE("sample_renyi") {
  SUBCASE("knight/night/dog") {
    const Lexicon lex = lexicon_of({"n a I t", "n a I t", "d O g"}, {"knight", "night", "dog"});
    const Bits r = sample_renyi(lex);
    REQUIRE(r.is_finite());
    CHECK(r.value() == doctest::Approx(std::log2(3.0)).epsilon(1e-14));
    CHECK(r.value() == doctest::Approx(pairwise_renyi(lex)).epsilon(1e-14));
    CHECK(r.value() == doctest::Approx(1.58496).epsilon(1e-5));
  }
  SUBCASE("single shared form is certain collision") {
    const Lexicon lex = lexicon_of({"a", "a", "a", "a", "a"}, {"1", "2", "3", "4", "5"});
    CHECK(sample_renyi(lex) == Bits::finite(0.0));
  }
  SUBCASE("all distinct has no collision") {
    const Lexicon lex = lexicon_of({"a", "b", "a b"}, {"1", "2", "3"});
    CHECK(sample_renyi(lex).is_infinite());
  }
  SUBCASE("too small") {
    const Lexicon lex = lexicon_of({"a"}, {"1"});
    CHECK_THROWS_AS(sample_renyi(lex), Error);
  }
  SUBCASE("grouped count equals the pairwise double sum; permutation and relabeling invariant") {
    Rng rng(21);
    for (int trial = 0; trial < 30; ++trial) {
      std::vector<std::string> forms, ids;
      const std::size_t m = 2 + rng.below(60);
      for (std::size_t i = 0; i < m; ++i) {
        forms.push_back(rng.below(3) == 0 ? "a" : (rng.below(2) ? "b a" : "a b b"));
        ids.push_back("id" + std::to_string(i));
      }
      forms.push_back(forms.front());  // guarantee a collision
      ids.push_back("dup");
      const Lexicon lex = lexicon_of(forms, ids);
      const Bits r = sample_renyi(lex);
      CHECK(r.value() == doctest::Approx(pairwise_renyi(lex)).epsilon(1e-12));
      for (std::size_t i = forms.size(); i > 1; --i) {
        const std::size_t j = rng.below(i);
        std::swap(forms[i - 1], forms[j]);
      }
      for (auto& id : ids) id = "x" + id;
      CHECK(sample_renyi(lexicon_of(forms, ids)) == r);
    }
  }
}

TEST_CASE("finite_renyi") {
  const Eigen::VectorXd uniform4 = log2_of({0.25, 0.25, 0.25, 0.25});
  CHECK(finite_renyi(uniform4, 2.0) == doctest::Approx(2.0).epsilon(1e-15));
  const Eigen::VectorXd skew = log2_of({0.5, 0.25, 0.25});
  CHECK(finite_renyi(skew, kInfiniteOrder) == 1.0);
  CHECK(finite_renyi(skew, 1.0) == doctest::Approx(1.5).epsilon(1e-15));
  CHECK(finite_renyi(skew, 2.0) == doctest::Approx(1.415037499278844).epsilon(1e-14));
  CHECK(finite_renyi(skew, 0.0) == doctest::Approx(std::log2(3.0)).epsilon(1e-15));
  CHECK(finite_renyi(skew, 0.5) == doctest::Approx(2.0 * std::log2(std::sqrt(0.5) + 2 * 0.5)));
  CHECK_THROWS_AS(finite_renyi(skew, -0.5), Error);

  SUBCASE("zero-probability outcomes contribute nothing") {
    const Eigen::VectorXd with_zero = log2_of({0.5, 0.25, 0.25, 0.0});
    for (double alpha : {0.0, 0.5, 1.0, 2.0, 3.0, kInfiniteOrder}) {
      CHECK(finite_renyi(with_zero, alpha) == doctest::Approx(finite_renyi(skew, alpha)));
    }
  }
  SUBCASE("approaches Shannon as alpha -> 1") {
    CHECK(finite_renyi(skew, 1.0 + 1e-7) == doctest::Approx(1.5).epsilon(1e-6));
    CHECK(finite_renyi(skew, 1.0 - 1e-7) == doctest::Approx(1.5).epsilon(1e-6));
  }
  SUBCASE("float scalar instantiation") {
    Eigen::VectorXf f = skew.cast<float>();
    CHECK(finite_renyi(f, 2.0f) == doctest::Approx(1.41504f).epsilon(1e-5));
  }
  SUBCASE("H_inf <= H_2 <= H_1 on random simplex points, equal when uniform") {
    Rng rng(31);
    for (int trial = 0; trial < 2000; ++trial) {
      const int n = 2 + static_cast<int>(rng.below(10));
      Eigen::VectorXd p(n);
      for (int i = 0; i < n; ++i) p[i] = -std::log(1.0 - rng.uniform());
      p /= p.sum();
      const Eigen::VectorXd lp = p.unaryExpr([](double x) { return std::log2(x); });
      const double h_inf = finite_renyi(lp, kInfiniteOrder);
      const double h2 = finite_renyi(lp, 2.0);
      const double h1 = finite_renyi(lp, 1.0);
      CHECK(h_inf <= h2 + 1e-12);
      CHECK(h2 <= h1 + 1e-12);
    }
    const Eigen::VectorXd u = Eigen::VectorXd::Constant(7, -std::log2(7.0));
    CHECK(finite_renyi(u, kInfiniteOrder) == doctest::Approx(finite_renyi(u, 1.0)));
    CHECK(finite_renyi(u, 2.0) == doctest::Approx(finite_renyi(u, 1.0)));
  }
}

TEST_CASE("family_distribution") {
  const FiniteDistribution two = family_distribution(0.5, 1);
  CHECK(finite_renyi(two, 1.0) == doctest::Approx(1.0));
  CHECK(finite_renyi(two, 2.0) == doctest::Approx(1.0));

  const FiniteDistribution d = family_distribution(0.5, 99);
  CHECK(d.size() == 100);
  // -log2(0.25 + 0.25/99) and -0.5 log2 0.5 - 0.5 log2(0.5/99)
  CHECK(finite_renyi(d, 2.0) == doctest::Approx(1.9855004303048849).epsilon(1e-12));
  CHECK(finite_renyi(d, 1.0) == doctest::Approx(4.314678310039804).epsilon(1e-12));

  CHECK(finite_renyi(family_distribution(1.0, 9), 2.0) == doctest::Approx(0.0));
  CHECK(finite_renyi(family_distribution(0.0, 9), 2.0) == doctest::Approx(std::log2(9.0)));
  for (int i = 0; i <= 100; ++i) {
    const auto f = family_distribution(i / 100.0, 99);
    CHECK(finite_renyi(f, 2.0) <= finite_renyi(f, 1.0) + 1e-12);
  }
  CHECK_THROWS(family_distribution(-0.1, 9));
  CHECK_THROWS(family_distribution(1.1, 9));
  CHECK_THROWS(family_distribution(0.5, 0));
}

TEST_CASE("enumerate_support on the toy bigram") {
  const NGramModel m = toy_bigram();
  SupportAccumulators acc;
  const auto words = collect(m, 0.1, 50, &acc);
  REQUIRE(words.size() == 2);
  CHECK(std::exp2(words.at({0})) == doctest::Approx(0.49263510398213983).epsilon(1e-12));
  CHECK(std::exp2(words.at({0, 1})) == doctest::Approx(0.48306937380772935).epsilon(1e-12));
  CHECK(acc.count == 2);
  CHECK(acc.truncated_by_length == 0);
  CHECK(acc.xi == doctest::Approx(0.49263510398213983 + 0.48306937380772935).epsilon(1e-12));

  SUBCASE("matches brute force for several thresholds") {
    const auto all = brute_force_words(m, 6);
    for (double delta : {0.3, 0.1, 0.01, 1e-3, 1e-5}) {
      std::set<std::vector<int>> expected;
      for (const auto& w : all) {
        if (w.prob >= delta) expected.insert(w.phones);
      }
      std::set<std::vector<int>> got;
      for (const auto& [w, lp] : collect(m, delta, 6)) got.insert(w);
      CHECK(got == expected);
    }
  }
}

TEST_CASE("enumeration streams words in non-increasing probability") {
  Rng rng(41);
  const TableModel m = TableModel::random(Alphabet({"a", "b", "c"}), 4, rng);
  double prev = 0.0;
  std::size_t n = 0;
  enumerate_support(m, {1e-4, 50, 1'000'000}, [&](std::span<const int>, double lp) {
    CHECK(lp <= prev);
    prev = lp;
    ++n;
  });
  CHECK(n > 10);
}

TEST_CASE("enumeration edge cases") {
  const Alphabet a = ab_alphabet();
  SUBCASE("point mass") {
    const TableModel m = TableModel::point_mass(a, {0});
    SupportAccumulators acc;
    const auto words = collect(m, 1.0 - 1e-12, 50, &acc);
    REQUIRE(words.size() == 1);
    CHECK(words.count({0}) == 1);
    CHECK(acc.xi == 1.0);
    CHECK(acc.eta == 1.0);
  }
  SUBCASE("threshold above every word") {
    const NGramModel m = toy_bigram();
    SupportAccumulators acc;
    CHECK(collect(m, 0.6, 50, &acc).empty());
    CHECK(acc.xi == 0.0);
    CHECK(acc.eta == 0.0);
    CHECK_THROWS_AS(truncated_h2(m, {0.6, 50, 1000}), Error);
  }
  SUBCASE("length cap prunings are counted") {
    // Each prefix "a"*k has probability 0.9^k; words stop with 0.1.
    Eigen::VectorXd cond(3);
    cond << 0.9, 0.0, 0.1;
    const TableModel m(a, cond);
    SupportAccumulators acc;
    const auto words = collect(m, 1e-3, 3, &acc);
    CHECK(words.size() == 4);  // lengths 0..3
    CHECK(acc.truncated_by_length == 1);
  }
  SUBCASE("budget exhaustion carries partial accumulators") {
    const NGramModel m = toy_bigram();
    try {
      enumerate_support(m, {1e-12, 50, 10});
      FAIL("expected BudgetExceeded");
    } catch (const BudgetExceeded& e) {
      CHECK(e.partial().expansions == 10);
      CHECK(e.partial().xi <= 1.0);
    }
  }
  SUBCASE("invalid options") {
    const NGramModel m = toy_bigram();
    CHECK_THROWS(enumerate_support(m, {0.0, 50, 10}));
    CHECK_THROWS(enumerate_support(m, {0.1, 0, 10}));
  }
}

TEST_CASE("truncated_h2") {
  SUBCASE("toy bigram at delta 0.1") {
    const EntropyEstimate est = truncated_h2(toy_bigram(), {0.1, 50, 1000});
    CHECK(est.value == doctest::Approx(1.070829030622998).epsilon(1e-12));
    CHECK(est.bound_width > 0.0);
    CHECK(est.accumulators.eta == doctest::Approx(est.accumulators.eta_compensated).epsilon(1e-12));
  }
  SUBCASE("complete support equals exact H2") {
    Rng rng(5);
    const TableModel m = TableModel::random(ab_alphabet(), 4, rng);
    const auto words = brute_force_words(m, 4);
    REQUIRE(words.size() == 31);
    double min_p = 1.0;
    for (const auto& w : words) min_p = std::min(min_p, w.prob);
    const EntropyEstimate est = truncated_h2(m, {min_p * 0.5, 50, 100000});
    CHECK(est.accumulators.count == 31);
    CHECK(std::abs(est.value - exact_h2(words)) < 1e-9);
    CHECK(est.bound_width < 1e-12);
  }
  SUBCASE("decreasing delta never increases the estimate or the bound") {
    Rng rng(6);
    const TableModel m = TableModel::random(Alphabet({"a", "b", "c"}), 5, rng);
    double max_p = 0.0;
    for (const auto& w : brute_force_words(m, 5)) max_p = std::max(max_p, w.prob);
    double prev_value = 1e300;
    double prev_width = 1e300;
    for (double delta = max_p; delta > 1e-6; delta /= 3.0) {
      const EntropyEstimate est = truncated_h2(m, {delta, 50, 1'000'000});
      CHECK(est.value <= prev_value + 1e-12);
      CHECK(est.bound_width <= prev_width + 1e-12);
      prev_value = est.value;
      prev_width = est.bound_width;
    }
  }
  SUBCASE("two-sided certificate on random toys") {
    Rng rng(7);
    for (int trial = 0; trial < 25; ++trial) {
      const TableModel m = TableModel::random(Alphabet({"a", "b"}), 5, rng);
      const double exact = exact_h2(brute_force_words(m, 5));
      const double delta = std::exp2(-12.0 * rng.uniform());
      try {
        const EntropyEstimate est = truncated_h2(m, {delta, 50, 1'000'000});
        CHECK(exact <= est.value + 1e-12);
        CHECK(est.value - est.bound_width <= exact + 1e-12);
      } catch (const Error&) {
        // delta above every word; nothing to certify
      }
    }
  }
}

TEST_CASE("truncation_bound") {
  CHECK(truncation_bound(1.0, 0.3, 0.1) == 0.0);
  CHECK(truncation_bound(0.9, 0.01, 1e-8) == doctest::Approx(1.4426949695965583e-07).epsilon(1e-9));
  CHECK_THROWS(truncation_bound(0.5, 0.0, 0.1));
  CHECK_THROWS(truncation_bound(0.5, -1.0, 0.1));
}

TEST_CASE("lemma_bound_check") {
  const double delta = 0.01;
  const std::vector<double> all_delta{delta, delta, delta};
  const LemmaCheck eq = lemma_bound_check(all_delta, delta);
  CHECK(eq.sum_sq == doctest::Approx(3 * delta * delta).epsilon(1e-15));
  CHECK(eq.sum_sq == doctest::Approx(eq.bound).epsilon(1e-15));
  CHECK(eq.holds);
  const LemmaCheck zero = lemma_bound_check(std::vector<double>{0.0, 0.0, 0.0}, delta);
  CHECK(zero.sum_sq == 0.0);
  CHECK(zero.bound == 0.0);
  CHECK(zero.holds);
  CHECK_THROWS(lemma_bound_check(std::vector<double>{0.5}, delta));
  CHECK_THROWS(lemma_bound_check(std::vector<double>{-1e-3}, delta));

  Rng rng(13);
  for (int trial = 0; trial < 2000; ++trial) {
    std::vector<double> xs(1 + rng.below(50));
    for (double& x : xs) x = delta * rng.uniform();
    CHECK(lemma_bound_check(xs, delta).holds);
  }
}

TEST_CASE("mc_shannon") {
  SUBCASE("point mass has zero entropy") {
    const TableModel m = TableModel::point_mass(ab_alphabet(), {0, 1});
    Rng rng(1);
    const ShannonEstimate est = mc_shannon(m, 100, rng, 50);
    CHECK(est.value == 0.0);
    CHECK(est.standard_error == 0.0);
  }
  SUBCASE("closed toy with H1 = 1.5") {
    const Alphabet a = ab_alphabet();
    Eigen::VectorXd stop(3);
    stop << 0, 0, 1;
    TableModel m(a, stop);
    Eigen::VectorXd root(3);
    root << 0.5, 0.5, 0.0;
    m.set_conditional({}, root);
    Eigen::VectorXd after_a(3);
    after_a << 0.5, 0.0, 0.5;
    m.set_conditional({0}, after_a);
    // words: b 1/2, a 1/4, aa 1/4
    Eigen::VectorXd lp(3);
    lp << -1, -2, -2;
    const double h1 = finite_renyi(lp, 1.0);
    REQUIRE(h1 == 1.5);
    Rng rng(3);
    const ShannonEstimate est = mc_shannon(m, 100000, rng, 50);
    CHECK(std::abs(est.value - h1) < 3 * est.standard_error);
    CHECK(est.overflow_resamples == 0);
  }
  SUBCASE("overflowing samples are redrawn and counted") {
    Eigen::VectorXd cond(3);
    cond << 0.5, 0.0, 0.5;
    const TableModel m(ab_alphabet(), cond);
    Rng rng(9);
    const ShannonEstimate est = mc_shannon(m, 5000, rng, 2);
    CHECK(est.samples == 5000);
    CHECK(est.overflow_resamples > 0);
  }
}
