#include "homophony/ngram.h"

#include <cmath>
#include <fstream>

namespace homophony {

namespace {
constexpr int kFileVersion = 1;
}

NGramModel::NGramModel(Alphabet alphabet, int order, double lambda,
                       std::map<std::vector<int>, ContextCounts> table)
    : alphabet_(std::move(alphabet)), order_(order), lambda_(lambda), table_(std::move(table)) {
  if (order_ < 1) throw Error("ngram: order must be >= 1");
  if (!(lambda_ > 0.0) || !std::isfinite(lambda_)) throw Error("ngram: lambda must be > 0");
  const int v = vocabulary_size();
  for (const auto& [context, row] : table_) {
    if (static_cast<int>(context.size()) != order_ - 1) {
      throw DataError("ngram: context length does not match order");
    }
    for (int s : context) {
      if (s < 0 || s > alphabet_.bow()) throw DataError("ngram: context symbol out of range");
    }
    if (row.counts.size() != v) throw DataError("ngram: count row has wrong size");
    if ((row.counts.array() < 0.0).any()) throw DataError("ngram: negative count");
    if (row.counts.sum() != row.total) throw DataError("ngram: context total mismatch");
  }
  build_cache();
}

void NGramModel::build_cache() {
  const int v = vocabulary_size();
  uniform_log_ = Eigen::VectorXd::Constant(v, -std::log2(static_cast<double>(v)));
  log_cache_.clear();
  for (const auto& [context, row] : table_) {
    const double denom = row.total + lambda_ * v;
    log_cache_.emplace(context, ((row.counts.array() + lambda_) / denom)
                                    .unaryExpr([](double p) { return std::log2(p); })
                                    .matrix());
  }
}

NGramModel NGramModel::train(std::span<const Wordform> words, int order, double lambda,
                             const Alphabet& alphabet) {
  if (order < 1) throw Error("ngram: order must be >= 1");
  if (!(lambda > 0.0)) throw Error("ngram: lambda must be > 0");
  if (words.empty()) throw Error("ngram: no training words");
  const int v = alphabet.size() + 1;
  const int eow_slot = alphabet.size();
  std::map<std::vector<int>, ContextCounts> table;
  auto bump = [&](const std::vector<int>& context, int slot) {
    auto [it, inserted] = table.try_emplace(context);
    if (inserted) it->second.counts = Eigen::VectorXd::Zero(v);
    it->second.counts[slot] += 1.0;
    it->second.total += 1.0;
  };
  for (const auto& w : words) {
    std::vector<int> context(order - 1, alphabet.bow());
    for (int p : w.phones()) {
      if (p < 0 || p >= alphabet.size()) throw DataError("ngram: training word outside alphabet");
      bump(context, p);
      if (!context.empty()) {
        context.erase(context.begin());
        context.push_back(p);
      }
    }
    bump(context, eow_slot);
  }
  return NGramModel(alphabet, order, lambda, std::move(table));
}

ModelState NGramModel::initial_state() const {
  return SymbolContext{std::vector<int>(order_ - 1, alphabet_.bow())};
}

void NGramModel::advance(ModelState& state, int phone) const {
  auto& symbols = std::get<SymbolContext>(state).symbols;
  if (symbols.empty()) return;
  std::move(symbols.begin() + 1, symbols.end(), symbols.begin());
  symbols.back() = phone;
}

void NGramModel::next_log_probs(const ModelState& state, Eigen::VectorXd& out) const {
  const auto& symbols = std::get<SymbolContext>(state).symbols;
  auto it = log_cache_.find(symbols);
  out = it == log_cache_.end() ? uniform_log_ : it->second;
}

double NGramModel::prob(std::span<const int> context, int next_slot) const {
  const int v = vocabulary_size();
  if (next_slot < 0 || next_slot >= v) throw Error("ngram: next symbol out of range");
  auto it = table_.find(std::vector<int>(context.begin(), context.end()));
  const double count = it == table_.end() ? 0.0 : it->second.counts[next_slot];
  const double total = it == table_.end() ? 0.0 : it->second.total;
  return (count + lambda_) / (total + lambda_ * v);
}

nlohmann::json NGramModel::to_json() const {
  nlohmann::json contexts = nlohmann::json::array();
  for (const auto& [context, row] : table_) {
    std::vector<long long> counts;
    for (double c : row.counts) counts.push_back(static_cast<long long>(c));
    contexts.push_back({{"context", context}, {"counts", counts}});
  }
  return {{"kind", "ngram"},
          {"version", kFileVersion},
          {"order", order_},
          {"lambda", lambda_},
          {"alphabet", {{"phones", alphabet_.phones()}}},
          {"contexts", contexts}};
}

NGramModel NGramModel::from_json(const nlohmann::json& j) {
  try {
    if (j.at("version").get<int>() != kFileVersion) {
      throw DataError("ngram: unsupported model file version");
    }
    Alphabet alphabet(j.at("alphabet").at("phones").get<std::vector<std::string>>());
    const int v = alphabet.size() + 1;
    std::map<std::vector<int>, ContextCounts> table;
    for (const auto& entry : j.at("contexts")) {
      auto counts = entry.at("counts").get<std::vector<long long>>();
      if (static_cast<int>(counts.size()) != v) throw DataError("ngram: count row has wrong size");
      ContextCounts row;
      row.counts.resize(v);
      for (int i = 0; i < v; ++i) row.counts[i] = static_cast<double>(counts[i]);
      row.total = row.counts.sum();
      if (!table.emplace(entry.at("context").get<std::vector<int>>(), row).second) {
        throw DataError("ngram: duplicate context");
      }
    }
    return NGramModel(std::move(alphabet), j.at("order").get<int>(),
                      j.at("lambda").get<double>(), std::move(table));
  } catch (const nlohmann::json::exception& e) {
    throw DataError(std::string("ngram: malformed model file: ") + e.what());
  }
}

void NGramModel::save(const std::string& path) const {
  std::ofstream out(path);
  if (!out) throw DataError("cannot write " + path);
  out << to_json().dump() << '\n';
}

}  // namespace homophony
