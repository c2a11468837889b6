#ifndef HOMOPHONY_ENTROPY_H_
#define HOMOPHONY_ENTROPY_H_

#include <cmath>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <limits>
#include <span>
#include <vector>

#include <Eigen/Core>

#include "homophony/core.h"
#include "homophony/lm.h"
#include "homophony/rng.h"

namespace homophony {

inline constexpr double kInfiniteOrder = std::numeric_limits<double>::infinity();

// Plug-in collision surprisal of a multiset: -log2(sum c(c-1) / (M(M-1))).
// Infinite when no two entries share a form.
Bits sample_renyi(const Lexicon& lexicon);
Bits sample_renyi_from_counts(std::span<const std::size_t> multiplicities, std::size_t total);

// Renyi entropy of order alpha of a distribution given in log2 domain.
// alpha = 1 is Shannon entropy (0 log 0 := 0), alpha = kInfiniteOrder is
// min-entropy.
template <typename Derived>
typename Derived::Scalar finite_renyi(const Eigen::DenseBase<Derived>& log2_probs,
                                      typename Derived::Scalar alpha) {
  using Scalar = typename Derived::Scalar;
  if (!(alpha >= Scalar(0))) throw Error("finite_renyi: alpha must be >= 0");
  const auto& lp = log2_probs.derived();
  if (std::isinf(alpha)) return -lp.maxCoeff();
  if (alpha == Scalar(1)) {
    Scalar h = 0;
    for (Eigen::Index i = 0; i < lp.size(); ++i) {
      if (std::isinf(lp[i])) continue;
      h -= std::exp2(lp[i]) * lp[i];
    }
    return h;
  }
  // log2 sum p^alpha over the support (p = 0 terms vanish for alpha > 0 and
  // are excluded from the support for alpha = 0).
  Scalar hi = -std::numeric_limits<Scalar>::infinity();
  for (Eigen::Index i = 0; i < lp.size(); ++i) {
    if (!std::isinf(lp[i])) hi = std::max(hi, alpha * lp[i]);
  }
  Scalar sum = 0;
  for (Eigen::Index i = 0; i < lp.size(); ++i) {
    if (!std::isinf(lp[i])) sum += std::exp2(alpha * lp[i] - hi);
  }
  return (hi + std::log2(sum)) / (Scalar(1) - alpha);
}

inline double finite_renyi(const FiniteDistribution& dist, double alpha) {
  return finite_renyi(dist.log2_probs(), alpha);
}

// n + 1 outcomes: mass k on the first, (1 - k) / n on each of the others.
FiniteDistribution family_distribution(double k, int n);

struct SupportAccumulators {
  double xi = 0.0;           // sum of p(w) over the support
  double eta = 0.0;          // sum of p(w)^2 over the support
  double log2_xi = -std::numeric_limits<double>::infinity();
  double log2_eta = -std::numeric_limits<double>::infinity();
  double eta_compensated = 0.0;  // linear-domain Kahan sum of p(w)^2
  std::size_t count = 0;
  double delta = 0.0;
  std::size_t truncated_by_length = 0;
  std::size_t expansions = 0;
};

struct EnumerationOptions {
  double delta = 1e-8;
  std::size_t max_len = 50;
  std::size_t node_budget = 50'000'000;
};

class BudgetExceeded : public Error {
 public:
  BudgetExceeded(const std::string& what, SupportAccumulators partial)
      : Error(what), partial_(partial) {}
  const SupportAccumulators& partial() const { return partial_; }

 private:
  SupportAccumulators partial_;
};

// Called once per word of W_delta, in non-increasing probability order. The
// sequence may be empty when the model assigns mass to the empty string.
using SupportVisitor = std::function<void(std::span<const int> phones, double log2_prob)>;

// Best-first enumeration of {w : p(w) >= delta, |w| <= max_len}. Prefixes
// below delta are pruned: a word is never more probable than its prefix.
SupportAccumulators enumerate_support(const PhonotacticModel& model,
                                      const EnumerationOptions& options,
                                      const SupportVisitor& visit = {});

double truncation_bound(double xi, double eta, double delta);

struct EntropyEstimate {
  double value = 0.0;        // -log2 eta, an upper bound on H2
  double bound_width = 0.0;  // H2 >= value - bound_width
  SupportAccumulators accumulators;
};

EntropyEstimate truncated_h2(const PhonotacticModel& model, const EnumerationOptions& options);

struct LemmaCheck {
  double sum_sq = 0.0;
  double bound = 0.0;
  bool holds = false;
};

// For x_n in [0, delta]: sum x_n^2 <= (sum x_n) delta.
LemmaCheck lemma_bound_check(std::span<const double> xs, double delta);

struct ShannonEstimate {
  double value = 0.0;
  double standard_error = 0.0;
  std::size_t samples = 0;
  std::size_t overflow_resamples = 0;
};

// Monte Carlo mean surprisal of ancestral samples. Samples that overflow
// max_len are redrawn and counted.
ShannonEstimate mc_shannon(const PhonotacticModel& model, std::size_t n_samples, Rng& rng,
                           std::size_t max_len);

}  // namespace homophony

#endif  // HOMOPHONY_ENTROPY_H_
