// Shared fixtures and brute-force oracles for the test suites.
#ifndef HOMOPHONY_TESTS_SUPPORT_TOYS_H_
#define HOMOPHONY_TESTS_SUPPORT_TOYS_H_

#include <cmath>
#include <functional>
#include <string>
#include <vector>

#include "homophony/core.h"
#include "homophony/lm.h"
#include "homophony/ngram.h"

namespace homophony::testing {

inline std::string fixture(const std::string& name) {
  return std::string(HOMOPHONY_FIXTURE_DIR) + "/" + name;
}

inline Alphabet ab_alphabet() { return Alphabet({"a", "b"}); }

// Order-2, lambda 0.01 model trained on ["ab", "a"].
inline NGramModel toy_bigram() {
  const Alphabet a = ab_alphabet();
  std::vector<Wordform> words{Wordform::parse("a b", a), Wordform::parse("a", a)};
  return NGramModel::train(words, 2, 0.01, a);
}

struct WordProb {
  std::vector<int> phones;
  double prob;  // linear domain
};

// Every string of length <= max_len with its probability, by depth-first
// products of the model's conditionals. No pruning, no ordering.
inline std::vector<WordProb> brute_force_words(const PhonotacticModel& model,
                                               std::size_t max_len) {
  std::vector<WordProb> out;
  const int eow = model.eow_slot();
  std::function<void(std::vector<int>&, const ModelState&, double)> walk =
      [&](std::vector<int>& prefix, const ModelState& state, double prob) {
        const Eigen::VectorXd lp = model.next_log_probs(state);
        const double stop = prob * std::exp2(lp[eow]);
        if (stop > 0.0) out.push_back({prefix, stop});
        if (prefix.size() == max_len) return;
        for (int p = 0; p < eow; ++p) {
          const double child = prob * std::exp2(lp[p]);
          if (child <= 0.0) continue;
          prefix.push_back(p);
          walk(prefix, model.advanced(state, p), child);
          prefix.pop_back();
        }
      };
  std::vector<int> prefix;
  walk(prefix, model.initial_state(), 1.0);
  return out;
}

inline double exact_h2(const std::vector<WordProb>& words) {
  double sum_sq = 0.0;
  for (const auto& w : words) sum_sq += w.prob * w.prob;
  return -std::log2(sum_sq);
}

}  // namespace homophony::testing

#endif  // HOMOPHONY_TESTS_SUPPORT_TOYS_H_
