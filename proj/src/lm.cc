#include "homophony/lm.h"

#include <cmath>
#include <fstream>

#include "json.hpp"

#include "homophony/lstm.h"
#include "homophony/ngram.h"

namespace homophony {

namespace {
constexpr double kNormalizationTolerance = 1e-9;
}

FiniteDistribution::FiniteDistribution(std::vector<std::string> labels,
                                       Eigen::VectorXd log2_probs)
    : labels_(std::move(labels)), log2_probs_(std::move(log2_probs)) {
  if (static_cast<Eigen::Index>(labels_.size()) != log2_probs_.size()) {
    throw Error("distribution: label count does not match probability count");
  }
  if (log2_probs_.size() == 0) throw Error("distribution: empty support");
  for (std::size_t i = 0; i < labels_.size(); ++i) {
    for (std::size_t j = i + 1; j < labels_.size(); ++j) {
      if (labels_[i] == labels_[j]) throw Error("distribution: repeated label " + labels_[i]);
    }
  }
  for (double lp : log2_probs_) {
    if (std::isnan(lp) || lp > 0.0) throw Error("distribution: invalid log-probability");
  }
  if (std::abs(logsumexp2(log2_probs_)) > kNormalizationTolerance) {
    throw Error("distribution: probabilities do not sum to one");
  }
}

FiniteDistribution FiniteDistribution::from_probs(const Eigen::VectorXd& probs) {
  std::vector<std::string> labels;
  for (Eigen::Index i = 0; i < probs.size(); ++i) labels.push_back("x" + std::to_string(i));
  return FiniteDistribution(std::move(labels),
                            probs.unaryExpr([](double p) { return std::log2(p); }));
}

Eigen::VectorXd FiniteDistribution::probs() const {
  return log2_probs_.unaryExpr([](double lp) { return std::exp2(lp); });
}

FiniteDistribution PhonotacticModel::next_distribution(const ModelState& state) const {
  std::vector<std::string> labels = alphabet().phones();
  labels.push_back(Alphabet::kEowLabel);
  return FiniteDistribution(std::move(labels), next_log_probs(state));
}

double PhonotacticModel::log_prob(std::span<const int> phones) const {
  const Alphabet& a = alphabet();
  ModelState state = initial_state();
  Eigen::VectorXd lp;
  double total = 0.0;
  for (int p : phones) {
    if (p < 0 || p >= a.size()) throw DataError("log_prob: phone index outside alphabet");
    next_log_probs(state, lp);
    total += lp[p];
    advance(state, p);
  }
  next_log_probs(state, lp);
  return total + lp[eow_slot()];
}

int sample_index(const Eigen::VectorXd& log2_probs, Rng& rng) {
  const double u = rng.uniform();
  double cumulative = 0.0;
  int last_nonzero = -1;
  for (Eigen::Index i = 0; i < log2_probs.size(); ++i) {
    const double p = std::exp2(log2_probs[i]);
    if (p <= 0.0) continue;
    last_nonzero = static_cast<int>(i);
    cumulative += p;
    if (u < cumulative) return last_nonzero;
  }
  // Rounding left u above the accumulated mass.
  return last_nonzero;
}

std::optional<std::vector<int>> sample_phones(const PhonotacticModel& model, Rng& rng,
                                              std::size_t max_len) {
  ModelState state = model.initial_state();
  Eigen::VectorXd lp;
  std::vector<int> phones;
  const int eow = model.eow_slot();
  while (true) {
    model.next_log_probs(state, lp);
    const int next = sample_index(lp, rng);
    if (next == eow) return phones;
    if (phones.size() == max_len) return std::nullopt;
    phones.push_back(next);
    model.advance(state, next);
  }
}

SampleOutcome sample_word(const PhonotacticModel& model, Rng& rng, std::size_t max_len) {
  auto phones = sample_phones(model, rng, max_len);
  if (!phones) return Overflow{};
  if (phones->empty()) return EmptyWord{};
  return Wordform(std::move(*phones), model.alphabet());
}

CrossEntropy cross_entropy(const PhonotacticModel& model, std::span<const Wordform> words) {
  if (words.empty()) throw Error("cross_entropy: no words");
  double bits = 0.0;
  std::size_t symbols = 0;
  for (const auto& w : words) {
    bits -= model.log_prob(w);
    symbols += w.length() + 1;
  }
  CrossEntropy ce;
  ce.words = words.size();
  ce.bits_per_word = bits / static_cast<double>(words.size());
  ce.bits_per_phone = bits / static_cast<double>(symbols);
  return ce;
}

ModelPtr load_model(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw DataError("cannot open model file " + path);
  nlohmann::json j;
  try {
    in >> j;
  } catch (const nlohmann::json::exception& e) {
    throw DataError("model file " + path + ": " + e.what());
  }
  if (j.contains("lstm")) return std::make_shared<LstmModel>(LstmModel::from_json(j));
  if (j.value("kind", "") == "ngram") return std::make_shared<NGramModel>(NGramModel::from_json(j));
  throw DataError("model file " + path + ": neither an n-gram nor an LSTM weight file");
}

}  // namespace homophony
