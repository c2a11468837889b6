#include "homophony/nulltest.h"

#include <algorithm>
#include <cmath>
#include <exception>
#include <map>
#include <thread>

#include "homophony/entropy.h"

namespace homophony {

namespace {

constexpr double kHistogramBinWidth = 0.05;

std::vector<int> draw_phones(const PhonotacticModel& model, Rng& rng, std::size_t max_len,
                             LexiconDrawStats& stats) {
  const std::size_t limit = 1'000'000;
  for (std::size_t attempt = 0;; ++attempt) {
    auto phones = sample_phones(model, rng, max_len);
    if (!phones) {
      ++stats.overflow_resamples;
    } else if (phones->empty()) {
      ++stats.empty_resamples;
    } else {
      return std::move(*phones);
    }
    if (attempt > limit) {
      throw Error("sample_lexicon: model keeps producing overflowing or empty words");
    }
  }
}

Bits sampled_renyi(const PhonotacticModel& model, std::size_t M, Rng& rng, std::size_t max_len,
                   LexiconDrawStats& stats) {
  std::vector<std::vector<int>> forms;
  forms.reserve(M);
  for (std::size_t m = 0; m < M; ++m) forms.push_back(draw_phones(model, rng, max_len, stats));
  std::sort(forms.begin(), forms.end());
  std::vector<std::size_t> counts;
  for (std::size_t i = 0; i < forms.size();) {
    std::size_t j = i + 1;
    while (j < forms.size() && forms[j] == forms[i]) ++j;
    counts.push_back(j - i);
    i = j;
  }
  return sample_renyi_from_counts(counts, M);
}

nlohmann::json bits_json(const Bits& b) {
  if (b.is_infinite()) return "no_collision";
  return b.value();
}

}  // namespace

const char* to_string(Direction d) {
  switch (d) {
    case Direction::kFavorsHomophony:
      return "favors_homophony";
    case Direction::kAgainstHomophony:
      return "against_homophony";
    case Direction::kNone:
      break;
  }
  return "none";
}

Lexicon sample_lexicon(const PhonotacticModel& model, std::size_t M, Rng& rng,
                       std::size_t max_len, LexiconDrawStats* stats) {
  if (M < 2) throw Error("sample_lexicon: M must be >= 2");
  LexiconDrawStats local;
  Lexicon lexicon;
  lexicon.alphabet = model.alphabet();
  lexicon.entries.reserve(M);
  for (std::size_t m = 0; m < M; ++m) {
    LexiconEntry entry;
    entry.form = Wordform(draw_phones(model, rng, max_len, local), model.alphabet());
    entry.lexeme_id = "sample_" + std::to_string(m);
    lexicon.entries.push_back(std::move(entry));
  }
  if (stats) *stats = local;
  return lexicon;
}

NullTestResult null_test(const PhonotacticModel& model, const Lexicon& observed,
                         const NullTestOptions& options) {
  if (options.samples < 1) throw Error("null_test: S must be >= 1");
  if (observed.size() < 2) throw Error("null_test: observed lexicon needs at least two entries");

  NullTestResult r;
  r.observed_R = sample_renyi(observed);
  r.seed = options.seed;
  r.S = options.samples;
  r.M = options.lexicon_size.value_or(observed.size());
  r.max_len = options.max_len;
  if (r.M < 2) throw Error("null_test: sampled lexicon size must be >= 2");

  r.samples_R.resize(r.S);
  const std::size_t lanes = std::clamp<std::size_t>(options.threads, 1, r.S);
  std::vector<LexiconDrawStats> lane_stats(lanes);
  std::vector<std::exception_ptr> lane_errors(lanes);
  auto work = [&](std::size_t lane) {
    try {
      for (std::size_t s = lane; s < r.S; s += lanes) {
        Rng rng = Rng::derive(options.seed, s);
        r.samples_R[s] = sampled_renyi(model, r.M, rng, r.max_len, lane_stats[lane]);
      }
    } catch (...) {
      lane_errors[lane] = std::current_exception();
    }
  };
  if (lanes == 1) {
    work(0);
  } else {
    std::vector<std::thread> pool;
    for (std::size_t lane = 0; lane < lanes; ++lane) pool.emplace_back(work, lane);
    for (auto& t : pool) t.join();
  }
  for (const auto& e : lane_errors) {
    if (e) std::rethrow_exception(e);
  }
  for (const auto& st : lane_stats) {
    r.overflow_resamples += st.overflow_resamples;
    r.empty_resamples += st.empty_resamples;
  }

  double sum = 0.0;
  std::size_t finite = 0;
  for (const Bits& b : r.samples_R) {
    if (b <= r.observed_R) ++r.count_left;
    if (b >= r.observed_R) ++r.count_right;
    if (b.is_finite()) {
      sum += b.value();
      ++finite;
    } else {
      ++r.no_collision_samples;
    }
  }
  if (finite > 0) r.mean_R = sum / static_cast<double>(finite);

  const double denom = static_cast<double>(r.S + 1);
  r.p_left = static_cast<double>(r.count_left + 1) / denom;
  r.p_right = static_cast<double>(r.count_right + 1) / denom;
  r.reject = std::min(r.p_left, r.p_right) < kTailThreshold;
  if (r.reject) {
    const Bits mean = r.mean_R ? Bits::finite(*r.mean_R) : Bits::infinite();
    if (r.observed_R > mean) {
      r.direction = Direction::kAgainstHomophony;
    } else if (r.observed_R < mean) {
      r.direction = Direction::kFavorsHomophony;
    }
  }
  return r;
}

nlohmann::json to_json(const NullTestResult& r) {
  nlohmann::json samples = nlohmann::json::array();
  std::map<long long, std::size_t> bins;
  for (const Bits& b : r.samples_R) {
    samples.push_back(bits_json(b));
    if (b.is_finite()) {
      ++bins[static_cast<long long>(std::floor(b.value() / kHistogramBinWidth))];
    }
  }
  nlohmann::json histogram = nlohmann::json::array();
  for (const auto& [bin, count] : bins) {
    histogram.push_back({{"lo", static_cast<double>(bin) * kHistogramBinWidth},
                         {"hi", static_cast<double>(bin + 1) * kHistogramBinWidth},
                         {"count", count}});
  }
  return {{"observed_R", bits_json(r.observed_R)},
          {"mean_R", r.mean_R ? nlohmann::json(*r.mean_R) : nlohmann::json(nullptr)},
          {"no_collision_samples", r.no_collision_samples},
          {"count_left", r.count_left},
          {"count_right", r.count_right},
          {"p_left", r.p_left},
          {"p_right", r.p_right},
          {"tail_threshold", kTailThreshold},
          {"reject", r.reject},
          {"direction", to_string(r.direction)},
          {"seed", r.seed},
          {"S", r.S},
          {"M", r.M},
          {"max_len", r.max_len},
          {"overflow_resamples", r.overflow_resamples},
          {"empty_resamples", r.empty_resamples},
          {"histogram", {{"bin_width", kHistogramBinWidth}, {"bins", histogram}}},
          {"samples_R", samples}};
}

}  // namespace homophony
