#include "homophony/entropy.h"

#include <cstdint>
#include <algorithm>

namespace homophony {

Bits sample_renyi_from_counts(std::span<const std::size_t> multiplicities, std::size_t total) {
  if (total < 2) throw Error("sample_renyi: lexicon needs at least two entries");
  // Integer arithmetic keeps the collision count exact for any realistic M.
  std::uint64_t collisions = 0;
  for (std::size_t c : multiplicities) {
    if (c > 1) collisions += static_cast<std::uint64_t>(c) * (c - 1);
  }
  if (collisions == 0) return Bits::infinite();
  const double pairs = static_cast<double>(total) * static_cast<double>(total - 1);
  const double r = -std::log2(static_cast<double>(collisions) / pairs);
  return Bits::finite(r == 0.0 ? 0.0 : r);
}

Bits sample_renyi(const Lexicon& lexicon) {
  if (lexicon.size() < 2) throw Error("sample_renyi: lexicon needs at least two entries");
  std::vector<std::size_t> counts;
  for (const auto& [form, c] : multiplicity_table(lexicon)) counts.push_back(c);
  return sample_renyi_from_counts(counts, lexicon.size());
}

FiniteDistribution family_distribution(double k, int n) {
  if (!(k >= 0.0 && k <= 1.0)) throw Error("family_distribution: k must lie in [0, 1]");
  if (n < 1) throw Error("family_distribution: n must be >= 1");
  Eigen::VectorXd lp(n + 1);
  lp[0] = std::log2(k);
  lp.tail(n).setConstant(std::log2((1.0 - k) / n));
  std::vector<std::string> labels;
  for (int i = 0; i <= n; ++i) labels.push_back("x" + std::to_string(i));
  return FiniteDistribution(std::move(labels), std::move(lp));
}

namespace {

struct SearchNode {
  double log2_prob;
  std::uint64_t order;  // insertion counter, breaks ties deterministically
  std::vector<int> prefix;
  ModelState state;
  bool terminal;
};

struct NodeLess {
  bool operator()(const SearchNode& a, const SearchNode& b) const {
    if (a.log2_prob != b.log2_prob) return a.log2_prob < b.log2_prob;
    return a.order > b.order;
  }
};

}  // namespace

SupportAccumulators enumerate_support(const PhonotacticModel& model,
                                      const EnumerationOptions& options,
                                      const SupportVisitor& visit) {
  if (!(options.delta > 0.0 && options.delta < 1.0 + 1e-15)) {
    throw Error("enumerate_support: delta must lie in (0, 1]");
  }
  if (options.max_len < 1) throw Error("enumerate_support: max_len must be >= 1");

  SupportAccumulators acc;
  acc.delta = options.delta;
  const double threshold = std::log2(options.delta);
  const int eow = model.eow_slot();
  double kahan_carry = 0.0;

  // Max-heap on prefix probability.
  std::vector<SearchNode> frontier;
  std::uint64_t counter = 0;
  auto push = [&](SearchNode node) {
    frontier.push_back(std::move(node));
    std::push_heap(frontier.begin(), frontier.end(), NodeLess{});
  };
  push({0.0, counter++, {}, model.initial_state(), false});

  Eigen::VectorXd lp;
  while (!frontier.empty()) {
    std::pop_heap(frontier.begin(), frontier.end(), NodeLess{});
    SearchNode node = std::move(frontier.back());
    frontier.pop_back();

    if (node.terminal) {
      const double p = std::exp2(node.log2_prob);
      acc.log2_xi = log2_add(acc.log2_xi, node.log2_prob);
      acc.log2_eta = log2_add(acc.log2_eta, 2.0 * node.log2_prob);
      const double y = p * p - kahan_carry;
      const double t = acc.eta_compensated + y;
      kahan_carry = (t - acc.eta_compensated) - y;
      acc.eta_compensated = t;
      ++acc.count;
      if (visit) visit(node.prefix, node.log2_prob);
      continue;
    }

    if (acc.expansions >= options.node_budget) {
      acc.xi = std::exp2(acc.log2_xi);
      acc.eta = std::exp2(acc.log2_eta);
      throw BudgetExceeded("enumerate_support: node budget of " +
                               std::to_string(options.node_budget) + " expansions exhausted",
                           acc);
    }
    ++acc.expansions;
    model.next_log_probs(node.state, lp);

    const double stop = node.log2_prob + lp[eow];
    if (stop >= threshold) push({stop, counter++, node.prefix, ModelState{}, true});

    for (int phone = 0; phone < eow; ++phone) {
      const double child = node.log2_prob + lp[phone];
      if (!(child >= threshold)) continue;
      if (node.prefix.size() >= options.max_len) {
        ++acc.truncated_by_length;
        continue;
      }
      std::vector<int> prefix = node.prefix;
      prefix.push_back(phone);
      push({child, counter++, std::move(prefix), model.advanced(node.state, phone), false});
    }
  }

  acc.xi = std::exp2(acc.log2_xi);
  acc.eta = std::exp2(acc.log2_eta);
  return acc;
}

double truncation_bound(double xi, double eta, double delta) {
  if (!(eta > 0.0)) throw Error("truncation_bound: eta must be > 0");
  if (!(delta > 0.0)) throw Error("truncation_bound: delta must be > 0");
  if (!(xi >= 0.0 && xi <= 1.0 + 1e-12)) throw Error("truncation_bound: xi must lie in [0, 1]");
  const double outside = std::max(0.0, 1.0 - xi);
  return std::log1p(outside * delta / eta) / std::log(2.0);
}

EntropyEstimate truncated_h2(const PhonotacticModel& model, const EnumerationOptions& options) {
  EntropyEstimate est;
  est.accumulators = enumerate_support(model, options);
  const auto& acc = est.accumulators;
  if (acc.count == 0 || !(acc.eta > 0.0)) {
    throw Error("truncated_h2: support threshold too high (no word has p >= delta)");
  }
  if (std::abs(acc.eta - acc.eta_compensated) > 1e-9 * acc.eta) {
    throw Error("truncated_h2: log-domain and compensated sums of squared mass disagree");
  }
  est.value = -acc.log2_eta;
  est.bound_width = truncation_bound(acc.xi, acc.eta, acc.delta);
  return est;
}

LemmaCheck lemma_bound_check(std::span<const double> xs, double delta) {
  LemmaCheck r;
  double sum = 0.0;
  for (double x : xs) {
    if (!(x >= 0.0 && x <= delta)) throw Error("lemma_bound_check: value outside [0, delta]");
    sum += x;
    r.sum_sq += x * x;
  }
  r.bound = sum * delta;
  r.holds = r.sum_sq <= r.bound + 1e-15;
  return r;
}

ShannonEstimate mc_shannon(const PhonotacticModel& model, std::size_t n_samples, Rng& rng,
                           std::size_t max_len) {
  if (n_samples < 1) throw Error("mc_shannon: need at least one sample");
  const std::size_t overflow_limit = 1000 * n_samples + 1000;
  ShannonEstimate est;
  // Welford running mean/variance.
  double mean = 0.0;
  double m2 = 0.0;
  while (est.samples < n_samples) {
    auto phones = sample_phones(model, rng, max_len);
    if (!phones) {
      if (++est.overflow_resamples > overflow_limit) {
        throw Error("mc_shannon: model almost never terminates within max_len");
      }
      continue;
    }
    const double surprisal = -model.log_prob(*phones);
    ++est.samples;
    const double d = surprisal - mean;
    mean += d / static_cast<double>(est.samples);
    m2 += d * (surprisal - mean);
  }
  est.value = mean;
  if (est.samples > 1) {
    const double var = m2 / static_cast<double>(est.samples - 1);
    est.standard_error = std::sqrt(var / static_cast<double>(est.samples));
  }
  return est;
}

}  // namespace homophony
