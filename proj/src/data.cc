#include "homophony/data.h"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <set>
#include <sstream>

#include "homophony/rng.h"

namespace homophony {

namespace {

struct RawRow {
  std::string orthography;
  std::vector<std::string> symbols;
  MorphStatus morph;
  bool zero_derivation;
  std::string lexeme_id;
  std::optional<std::string> pos;
};

std::vector<std::string> split_tabs(const std::string& line) {
  std::vector<std::string> fields;
  std::size_t start = 0;
  while (true) {
    const std::size_t tab = line.find('\t', start);
    fields.push_back(line.substr(start, tab - start));
    if (tab == std::string::npos) break;
    start = tab + 1;
  }
  return fields;
}

RawRow parse_row(std::string line, std::size_t line_no) {
  if (!line.empty() && line.back() == '\r') line.pop_back();
  auto fail = [&](const std::string& why) {
    return DataError("line " + std::to_string(line_no) + ": " + why);
  };
  const auto fields = split_tabs(line);
  if (fields.size() != 6) {
    throw fail("expected 6 tab-separated columns, found " + std::to_string(fields.size()));
  }
  RawRow row;
  row.orthography = fields[0];
  std::istringstream phones(fields[1]);
  for (std::string s; phones >> s;) row.symbols.push_back(s);
  if (row.symbols.empty()) throw fail("empty phone transcription");
  if (fields[2] == "mono") {
    row.morph = MorphStatus::kMonomorphemic;
  } else if (fields[2] == "multi") {
    row.morph = MorphStatus::kMultimorphemic;
  } else {
    throw fail("morph status must be mono or multi, got '" + fields[2] + "'");
  }
  if (fields[3] == "1" || fields[3] == "true") {
    row.zero_derivation = true;
  } else if (fields[3] == "0" || fields[3] == "false") {
    row.zero_derivation = false;
  } else {
    throw fail("zero-derivation flag must be 0 or 1, got '" + fields[3] + "'");
  }
  row.lexeme_id = fields[4];
  if (row.lexeme_id.empty()) throw fail("empty lexeme id");
  if (!fields[5].empty()) row.pos = fields[5];
  return row;
}

std::size_t part_size(double ratio, std::size_t n) {
  return static_cast<std::size_t>(std::floor(ratio * static_cast<double>(n) + 1e-9));
}

}  // namespace

nlohmann::json IngestReport::to_json() const {
  return {{"rows_read", rows_read},
          {"kept", kept},
          {"dropped_space_hyphen_apostrophe", dropped_space_hyphen_apostrophe},
          {"dropped_zero_derivation", dropped_zero_derivation},
          {"dropped_multimorphemic", dropped_multimorphemic},
          {"dropped_bad_symbol", dropped_bad_symbol}};
}

IngestResult ingest(std::istream& in, const std::optional<Alphabet>& alphabet, IngestMode mode) {
  IngestResult result;
  auto& report = result.report;
  std::vector<RawRow> candidates;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.empty() || line == "\r") continue;
    RawRow row = parse_row(line, line_no);
    ++report.rows_read;
    if (row.orthography.find_first_of(" -'") != std::string::npos) {
      ++report.dropped_space_hyphen_apostrophe;
    } else if (row.zero_derivation) {
      ++report.dropped_zero_derivation;
    } else if (mode == IngestMode::kMono && row.morph == MorphStatus::kMultimorphemic) {
      ++report.dropped_multimorphemic;
    } else {
      candidates.push_back(std::move(row));
    }
  }

  if (alphabet) {
    result.lexicon.alphabet = *alphabet;
  } else {
    std::set<std::string> symbols;
    for (const auto& row : candidates) symbols.insert(row.symbols.begin(), row.symbols.end());
    result.lexicon.alphabet = Alphabet(std::vector<std::string>(symbols.begin(), symbols.end()));
  }
  const Alphabet& a = result.lexicon.alphabet;

  for (auto& row : candidates) {
    std::vector<int> phones;
    bool ok = true;
    for (const auto& s : row.symbols) {
      auto idx = a.find(s);
      if (!idx) {
        ok = false;
        break;
      }
      phones.push_back(*idx);
    }
    if (!ok) {
      ++report.dropped_bad_symbol;
      continue;
    }
    LexiconEntry entry;
    entry.form = Wordform(std::move(phones), a);
    entry.lexeme_id = std::move(row.lexeme_id);
    entry.morph = row.morph;
    entry.zero_derivation = row.zero_derivation;
    entry.pos = std::move(row.pos);
    result.lexicon.entries.push_back(std::move(entry));
  }
  report.kept = result.lexicon.size();
  return result;
}

IngestResult ingest(const std::string& path, const std::optional<Alphabet>& alphabet,
                    IngestMode mode) {
  std::ifstream in(path);
  if (!in) throw DataError("cannot open " + path);
  return ingest(in, alphabet, mode);
}

Split split(const Lexicon& lexicon, const SplitSpec& spec) {
  if (lexicon.entries.empty()) throw Error("split: empty lexicon");
  double total = 0.0;
  for (double r : spec.ratios) {
    if (!(r >= 0.0)) throw Error("split: ratios must be non-negative");
    total += r;
  }
  if (std::abs(total - 1.0) > 1e-9) throw Error("split: ratios must sum to 1");

  std::vector<Wordform> items;
  if (spec.unit == SplitUnit::kTypes) {
    std::set<Wordform> types;
    for (const auto& e : lexicon.entries) types.insert(e.form);
    items.assign(types.begin(), types.end());
  } else {
    for (const auto& e : lexicon.entries) items.push_back(e.form);
  }

  // Fisher-Yates with the portable generator.
  Rng rng(spec.seed);
  for (std::size_t i = items.size(); i > 1; --i) {
    std::swap(items[i - 1], items[rng.below(i)]);
  }

  const std::size_t n = items.size();
  const std::size_t n_train = part_size(spec.ratios[0], n);
  const std::size_t n_val = std::min(part_size(spec.ratios[1], n), n - n_train);
  Split s;
  s.train.assign(items.begin(), items.begin() + n_train);
  s.val.assign(items.begin() + n_train, items.begin() + n_train + n_val);
  s.test.assign(items.begin() + n_train + n_val, items.end());
  return s;
}

nlohmann::json split_manifest(const Split& s, const SplitSpec& spec, const Alphabet& alphabet) {
  auto forms = [&](const std::vector<Wordform>& ws) {
    nlohmann::json out = nlohmann::json::array();
    for (const auto& w : ws) out.push_back(w.to_string(alphabet));
    return out;
  };
  return {{"seed", spec.seed},
          {"ratios", spec.ratios},
          {"unit", spec.unit == SplitUnit::kTypes ? "types" : "entries"},
          {"alphabet", {{"phones", alphabet.phones()}}},
          {"train", forms(s.train)},
          {"val", forms(s.val)},
          {"test", forms(s.test)}};
}

Split read_split_manifest(const nlohmann::json& j, const Alphabet& alphabet) {
  try {
    auto forms = [&](const char* key) {
      std::vector<Wordform> out;
      for (const auto& f : j.at(key)) out.push_back(Wordform::parse(f.get<std::string>(), alphabet));
      return out;
    };
    return {forms("train"), forms("val"), forms("test")};
  } catch (const nlohmann::json::exception& e) {
    throw DataError(std::string("split manifest: ") + e.what());
  }
}

}  // namespace homophony
