#ifndef HOMOPHONY_NULLTEST_H_
#define HOMOPHONY_NULLTEST_H_

#include <cstddef>
#include <cstdint>
#include <optional>
#include <vector>

#include "json.hpp"

#include "homophony/core.h"
#include "homophony/lm.h"
#include "homophony/rng.h"

namespace homophony {

inline constexpr double kTailThreshold = 0.005;

enum class Direction { kNone, kFavorsHomophony, kAgainstHomophony };

const char* to_string(Direction d);

struct LexiconDrawStats {
  std::size_t overflow_resamples = 0;
  std::size_t empty_resamples = 0;
};

// M i.i.d. ancestral draws with synthetic lexeme ids. Overflowing or empty
// draws are redrawn and counted.
Lexicon sample_lexicon(const PhonotacticModel& model, std::size_t M, Rng& rng,
                       std::size_t max_len, LexiconDrawStats* stats = nullptr);

struct NullTestOptions {
  std::size_t samples = 1000;  // S
  std::uint64_t seed = 0;
  std::size_t max_len = 50;
  std::size_t threads = 1;
  // Size of the sampled lexica; defaults to the observed size.
  std::optional<std::size_t> lexicon_size;
};

struct NullTestResult {
  Bits observed_R;
  std::vector<Bits> samples_R;
  std::optional<double> mean_R;  // over finite samples
  std::size_t no_collision_samples = 0;
  std::size_t count_left = 0;   // #{R_s <= observed}
  std::size_t count_right = 0;  // #{R_s >= observed}
  double p_left = 1.0;
  double p_right = 1.0;
  bool reject = false;
  Direction direction = Direction::kNone;
  std::uint64_t seed = 0;
  std::size_t S = 0;
  std::size_t M = 0;
  std::size_t max_len = 0;
  std::size_t overflow_resamples = 0;
  std::size_t empty_resamples = 0;
};

// Monte Carlo two-tailed test of the observed sample Renyi entropy against
// lexica drawn i.i.d. from `model`. Tail probabilities use add-one smoothing,
// ties count toward both tails and collision-free lexica rank above every
// finite value. Lexicon s is drawn from Rng::derive(seed, s), so the result
// does not depend on the thread count.
NullTestResult null_test(const PhonotacticModel& model, const Lexicon& observed,
                         const NullTestOptions& options);

// Result fields plus a 0.05-bit histogram of the finite samples.
nlohmann::json to_json(const NullTestResult& result);

}  // namespace homophony

#endif  // HOMOPHONY_NULLTEST_H_
