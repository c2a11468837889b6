#include "homophony/io.h"

#include <fstream>
#include <set>
#include <sstream>
#include <vector>

namespace homophony {

nlohmann::json alphabet_json(const Alphabet& alphabet) {
  return {{"phones", alphabet.phones()}};
}

Alphabet read_alphabet(const std::string& path) {
  const auto j = read_json_file(path);
  try {
    return Alphabet(j.at("phones").get<std::vector<std::string>>());
  } catch (const nlohmann::json::exception& e) {
    throw DataError("alphabet file " + path + ": " + e.what());
  }
}

void write_alphabet(const Alphabet& alphabet, const std::string& path) {
  write_json_file(alphabet_json(alphabet), path);
}

nlohmann::json entry_json(const LexiconEntry& entry, const Alphabet& alphabet) {
  nlohmann::json j;
  j["form"] = entry.form.to_string(alphabet);
  j["lexeme_id"] = entry.lexeme_id;
  j["morph"] = entry.morph == MorphStatus::kMonomorphemic ? "mono" : "multi";
  j["zero_deriv"] = entry.zero_derivation;
  j["pos"] = entry.pos ? nlohmann::json(*entry.pos) : nlohmann::json(nullptr);
  return j;
}

Lexicon read_lexicon(std::istream& in, const std::optional<Alphabet>& alphabet) {
  std::vector<nlohmann::json> rows;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    try {
      rows.push_back(nlohmann::json::parse(line));
      if (!rows.back().is_object()) throw DataError("expected a JSON object");
    } catch (const DataError& e) {
      throw DataError("lexicon line " + std::to_string(line_no) + ": " + e.what());
    } catch (const nlohmann::json::exception& e) {
      throw DataError("lexicon line " + std::to_string(line_no) + ": " + e.what());
    }
  }

  Lexicon lexicon;
  if (alphabet) {
    lexicon.alphabet = *alphabet;
  } else {
    std::set<std::string> symbols;
    for (const auto& row : rows) {
      std::istringstream form(row.contains("form") && row["form"].is_string()
                                  ? row["form"].get<std::string>()
                                  : std::string());
      std::string s;
      while (form >> s) symbols.insert(s);
    }
    lexicon.alphabet = Alphabet(std::vector<std::string>(symbols.begin(), symbols.end()));
  }

  for (std::size_t i = 0; i < rows.size(); ++i) {
    const auto& row = rows[i];
    try {
      LexiconEntry entry;
      entry.form = Wordform::parse(row.at("form").get<std::string>(), lexicon.alphabet);
      entry.lexeme_id = row.at("lexeme_id").get<std::string>();
      if (entry.lexeme_id.empty()) throw DataError("empty lexeme_id");
      const std::string morph = row.value("morph", "mono");
      if (morph == "mono") {
        entry.morph = MorphStatus::kMonomorphemic;
      } else if (morph == "multi") {
        entry.morph = MorphStatus::kMultimorphemic;
      } else {
        throw DataError("morph must be \"mono\" or \"multi\"");
      }
      entry.zero_derivation = row.value("zero_deriv", false);
      if (row.contains("pos") && !row["pos"].is_null()) entry.pos = row["pos"].get<std::string>();
      lexicon.entries.push_back(std::move(entry));
    } catch (const std::exception& e) {
      throw DataError("lexicon entry " + std::to_string(i + 1) + ": " + e.what());
    }
  }
  return lexicon;
}

Lexicon read_lexicon(const std::string& path, const std::optional<Alphabet>& alphabet) {
  std::ifstream in(path);
  if (!in) throw DataError("cannot open lexicon " + path);
  return read_lexicon(in, alphabet);
}

void write_lexicon(const Lexicon& lexicon, std::ostream& out) {
  for (const auto& entry : lexicon.entries) out << entry_json(entry, lexicon.alphabet).dump() << '\n';
}

void write_lexicon(const Lexicon& lexicon, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw DataError("cannot write " + path);
  write_lexicon(lexicon, out);
}

nlohmann::json read_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw DataError("cannot open " + path);
  try {
    return nlohmann::json::parse(in);
  } catch (const nlohmann::json::exception& e) {
    throw DataError(path + ": " + e.what());
  }
}

void write_json_file(const nlohmann::json& j, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw DataError("cannot write " + path);
  out << j.dump(2) << '\n';
}

}  // namespace homophony
