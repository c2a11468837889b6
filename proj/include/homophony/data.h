#ifndef HOMOPHONY_DATA_H_
#define HOMOPHONY_DATA_H_

#include <array>
#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "json.hpp"

#include "homophony/core.h"

namespace homophony {

enum class IngestMode { kMono, kAll };

struct IngestReport {
  std::size_t rows_read = 0;
  std::size_t kept = 0;
  std::size_t dropped_space_hyphen_apostrophe = 0;
  std::size_t dropped_zero_derivation = 0;
  std::size_t dropped_multimorphemic = 0;
  std::size_t dropped_bad_symbol = 0;

  std::size_t dropped() const {
    return dropped_space_hyphen_apostrophe + dropped_zero_derivation + dropped_multimorphemic +
           dropped_bad_symbol;
  }
  nlohmann::json to_json() const;
};

struct IngestResult {
  Lexicon lexicon;
  IngestReport report;
};

// Reads the normalized TSV (no header, UTF-8):
//
//   orthography <TAB> phones <TAB> morph <TAB> zero_deriv <TAB> lexeme_id <TAB> pos
//
// `phones` is space-separated; morph is mono|multi; zero_deriv is 0|1 (also
// true|false); pos may be empty. A dropped row is counted under the first
// filter it fails, in the order listed in IngestReport. Without an alphabet,
// the alphabet is the sorted set of symbols in rows that pass the other
// filters.
IngestResult ingest(std::istream& in, const std::optional<Alphabet>& alphabet, IngestMode mode);
IngestResult ingest(const std::string& path, const std::optional<Alphabet>& alphabet,
                    IngestMode mode);

enum class SplitUnit { kTypes, kEntries };

struct SplitSpec {
  std::array<double, 3> ratios{0.8, 0.1, 0.1};
  std::uint64_t seed = 0;
  SplitUnit unit = SplitUnit::kTypes;
};

struct Split {
  std::vector<Wordform> train;
  std::vector<Wordform> val;
  std::vector<Wordform> test;
};

// Seeded shuffle followed by floor(r0 N) / floor(r1 N) / remainder.
Split split(const Lexicon& lexicon, const SplitSpec& spec);

nlohmann::json split_manifest(const Split& s, const SplitSpec& spec, const Alphabet& alphabet);
Split read_split_manifest(const nlohmann::json& j, const Alphabet& alphabet);

}  // namespace homophony

#endif  // HOMOPHONY_DATA_H_
