#include "homophony/table_model.h"

#include <cmath>
#include <limits>

namespace homophony {

TableModel::TableModel(Alphabet alphabet, Eigen::VectorXd default_conditional,
                       std::optional<std::size_t> forced_eow_depth)
    : alphabet_(std::move(alphabet)), forced_eow_depth_(forced_eow_depth) {
  default_log_ = to_log(default_conditional);
  stop_log_ = Eigen::VectorXd::Constant(alphabet_.size() + 1,
                                        -std::numeric_limits<double>::infinity());
  stop_log_[alphabet_.size()] = 0.0;
}

Eigen::VectorXd TableModel::to_log(const Eigen::VectorXd& probs) const {
  if (probs.size() != alphabet_.size() + 1) throw Error("table model: conditional has wrong size");
  if ((probs.array() < 0.0).any() || std::abs(probs.sum() - 1.0) > 1e-12) {
    throw Error("table model: conditional is not a distribution");
  }
  return probs.unaryExpr([](double p) { return std::log2(p); });
}

void TableModel::set_conditional(const std::vector<int>& prefix, const Eigen::VectorXd& probs) {
  table_[prefix] = to_log(probs);
}

TableModel TableModel::point_mass(const Alphabet& alphabet, const std::vector<int>& word) {
  const int v = alphabet.size() + 1;
  Eigen::VectorXd stop = Eigen::VectorXd::Zero(v);
  stop[v - 1] = 1.0;
  TableModel model(alphabet, stop);
  for (std::size_t t = 0; t < word.size(); ++t) {
    Eigen::VectorXd next = Eigen::VectorXd::Zero(v);
    next[word[t]] = 1.0;
    model.set_conditional(std::vector<int>(word.begin(), word.begin() + t), next);
  }
  return model;
}

TableModel TableModel::random(const Alphabet& alphabet, std::size_t depth, Rng& rng,
                              double eow_weight) {
  const int v = alphabet.size() + 1;
  Eigen::VectorXd uniform = Eigen::VectorXd::Constant(v, 1.0 / v);
  TableModel model(alphabet, uniform, depth);
  auto draw = [&]() {
    Eigen::VectorXd w(v);
    for (int i = 0; i < v; ++i) w[i] = -std::log(1.0 - rng.uniform());
    w[v - 1] *= eow_weight;
    return Eigen::VectorXd(w / w.sum());
  };
  std::vector<std::vector<int>> frontier{{}};
  for (std::size_t len = 0; len < depth; ++len) {
    std::vector<std::vector<int>> next_frontier;
    for (const auto& prefix : frontier) {
      model.set_conditional(prefix, draw());
      for (int p = 0; p < alphabet.size(); ++p) {
        auto child = prefix;
        child.push_back(p);
        next_frontier.push_back(std::move(child));
      }
    }
    frontier = std::move(next_frontier);
  }
  return model;
}

void TableModel::advance(ModelState& state, int phone) const {
  std::get<SymbolContext>(state).symbols.push_back(phone);
}

void TableModel::next_log_probs(const ModelState& state, Eigen::VectorXd& out) const {
  const auto& prefix = std::get<SymbolContext>(state).symbols;
  if (forced_eow_depth_ && prefix.size() >= *forced_eow_depth_) {
    out = stop_log_;
    return;
  }
  auto it = table_.find(prefix);
  out = it == table_.end() ? default_log_ : it->second;
}

}  // namespace homophony
