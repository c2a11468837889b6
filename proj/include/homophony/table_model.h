#ifndef HOMOPHONY_TABLE_MODEL_H_
#define HOMOPHONY_TABLE_MODEL_H_

#include <cstddef>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include <Eigen/Core>

#include "homophony/lm.h"

namespace homophony {

// Model whose conditionals are listed explicitly per prefix. Prefixes without
// an entry use the default conditional; at `forced_eow_depth` phones the model
// terminates with probability one. Used for closed, exhaustively enumerable
// distributions.
class TableModel final : public PhonotacticModel {
 public:
  // Conditionals are linear-domain vectors of size |phones| + 1 (EOW last).
  TableModel(Alphabet alphabet, Eigen::VectorXd default_conditional,
             std::optional<std::size_t> forced_eow_depth = std::nullopt);

  void set_conditional(const std::vector<int>& prefix, const Eigen::VectorXd& probs);

  // Model emitting exactly one word.
  static TableModel point_mass(const Alphabet& alphabet, const std::vector<int>& word);

  // Every prefix of length < depth gets a Dirichlet(1) random
  // conditional drawn from `rng`; depth forces termination.
  static TableModel random(const Alphabet& alphabet, std::size_t depth, Rng& rng,
                           double eow_weight = 1.0);

  const Alphabet& alphabet() const override { return alphabet_; }
  ModelState initial_state() const override { return SymbolContext{}; }
  void advance(ModelState& state, int phone) const override;
  using PhonotacticModel::next_log_probs;
  void next_log_probs(const ModelState& state, Eigen::VectorXd& out) const override;
  std::string kind() const override { return "table"; }

 private:
  Eigen::VectorXd to_log(const Eigen::VectorXd& probs) const;

  Alphabet alphabet_;
  Eigen::VectorXd default_log_;
  std::optional<std::size_t> forced_eow_depth_;
  std::map<std::vector<int>, Eigen::VectorXd> table_;
  Eigen::VectorXd stop_log_;
};

}  // namespace homophony

#endif  // HOMOPHONY_TABLE_MODEL_H_
