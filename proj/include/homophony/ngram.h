#ifndef HOMOPHONY_NGRAM_H_
#define HOMOPHONY_NGRAM_H_

#include <map>
#include <span>
#include <string>
#include <vector>

#include <Eigen/Core>

#include "json.hpp"

#include "homophony/lm.h"

namespace homophony {

// n-phone model with additive (Laplace) smoothing over V = phones + EOW:
//
//   p(x | c) = (count(c, x) + lambda) / (total(c) + lambda |V|)
//
// Contexts are the previous n-1 symbols, left-padded with BOW. Unseen
// contexts have total 0 and therefore predict uniformly.
class NGramModel final : public PhonotacticModel {
 public:
  static constexpr int kDefaultOrder = 5;
  static constexpr double kDefaultLambda = 0.01;

  struct ContextCounts {
    Eigen::VectorXd counts;  // size |V|, integral values
    double total = 0.0;
  };

  NGramModel(Alphabet alphabet, int order, double lambda,
             std::map<std::vector<int>, ContextCounts> table);

  static NGramModel train(std::span<const Wordform> words, int order, double lambda,
                          const Alphabet& alphabet);

  const Alphabet& alphabet() const override { return alphabet_; }
  ModelState initial_state() const override;
  void advance(ModelState& state, int phone) const override;
  using PhonotacticModel::next_log_probs;
  void next_log_probs(const ModelState& state, Eigen::VectorXd& out) const override;
  std::string kind() const override { return "ngram"; }

  int order() const { return order_; }
  double lambda() const { return lambda_; }
  int vocabulary_size() const { return alphabet_.size() + 1; }
  const std::map<std::vector<int>, ContextCounts>& table() const { return table_; }

  // Smoothed conditional for an explicit context of n-1 symbols.
  double prob(std::span<const int> context, int next_slot) const;

  nlohmann::json to_json() const;
  static NGramModel from_json(const nlohmann::json& j);
  void save(const std::string& path) const;

 private:
  void build_cache();

  Alphabet alphabet_;
  int order_;
  double lambda_;
  std::map<std::vector<int>, ContextCounts> table_;
  std::map<std::vector<int>, Eigen::VectorXd> log_cache_;
  Eigen::VectorXd uniform_log_;
};

}  // namespace homophony

#endif  // HOMOPHONY_NGRAM_H_
