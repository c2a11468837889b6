#ifndef HOMOPHONY_LM_H_
#define HOMOPHONY_LM_H_

#include <cstddef>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <variant>
#include <vector>

#include <Eigen/Core>

#include "homophony/core.h"
#include "homophony/rng.h"

namespace homophony {

// Conditioning context for models that look at a window of previous symbols
// (n-gram) or the whole prefix (table models).
struct SymbolContext {
  std::vector<int> symbols;
  bool operator==(const SymbolContext&) const = default;
};

// Per-layer hidden and cell vectors of a recurrent model.
struct RecurrentState {
  std::vector<Eigen::VectorXd> h;
  std::vector<Eigen::VectorXd> c;
};

// Copying a state forks the decoding branch.
using ModelState = std::variant<SymbolContext, RecurrentState>;

// A labelled categorical distribution held in log2 domain.
class FiniteDistribution {
 public:
  FiniteDistribution(std::vector<std::string> labels, Eigen::VectorXd log2_probs);
  static FiniteDistribution from_probs(const Eigen::VectorXd& probs);

  const std::vector<std::string>& labels() const { return labels_; }
  const Eigen::VectorXd& log2_probs() const { return log2_probs_; }
  Eigen::VectorXd probs() const;
  Eigen::Index size() const { return log2_probs_.size(); }

 private:
  std::vector<std::string> labels_;
  Eigen::VectorXd log2_probs_;
};

// Autoregressive distribution over phone strings terminated by EOW.
//
// Next-symbol distributions are vectors of size |phones| + 1: entries
// 0..|phones|-1 are phones, the last entry (index eow_slot()) is EOW.
class PhonotacticModel {
 public:
  virtual ~PhonotacticModel() = default;

  virtual const Alphabet& alphabet() const = 0;
  virtual ModelState initial_state() const = 0;
  // Consumes one phone; `phone` must be a phone index, never BOW/EOW.
  virtual void advance(ModelState& state, int phone) const = 0;
  virtual void next_log_probs(const ModelState& state, Eigen::VectorXd& out) const = 0;
  virtual std::string kind() const = 0;

  int eow_slot() const { return alphabet().size(); }

  ModelState advanced(const ModelState& state, int phone) const {
    ModelState next = state;
    advance(next, phone);
    return next;
  }
  Eigen::VectorXd next_log_probs(const ModelState& state) const {
    Eigen::VectorXd out;
    next_log_probs(state, out);
    return out;
  }
  FiniteDistribution next_distribution(const ModelState& state) const;

  // log2 p(phones EOW). Accepts the empty sequence.
  double log_prob(std::span<const int> phones) const;
  double log_prob(const Wordform& w) const { return log_prob(w.phones()); }
};

using ModelPtr = std::shared_ptr<const PhonotacticModel>;

// Ancestral draw. nullopt means EOW was not reached within max_len phones.
// The returned sequence is empty when EOW is drawn straight after BOW.
std::optional<std::vector<int>> sample_phones(const PhonotacticModel& model, Rng& rng,
                                              std::size_t max_len);

struct Overflow {};
struct EmptyWord {};
using SampleOutcome = std::variant<Wordform, Overflow, EmptyWord>;

SampleOutcome sample_word(const PhonotacticModel& model, Rng& rng, std::size_t max_len);

// Index drawn from a log2-domain categorical distribution.
int sample_index(const Eigen::VectorXd& log2_probs, Rng& rng);

struct CrossEntropy {
  double bits_per_word = 0.0;
  double bits_per_phone = 0.0;  // EOW counts as a predicted symbol
  std::size_t words = 0;
};

CrossEntropy cross_entropy(const PhonotacticModel& model, std::span<const Wordform> words);

// Loads an n-gram or LSTM model file, dispatching on its contents.
ModelPtr load_model(const std::string& path);

}  // namespace homophony

#endif  // HOMOPHONY_LM_H_
