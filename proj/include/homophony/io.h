#ifndef HOMOPHONY_IO_H_
#define HOMOPHONY_IO_H_

#include <iosfwd>
#include <optional>
#include <string>

#include "json.hpp"

#include "homophony/core.h"

namespace homophony {

// Alphabet file: {"phones": [...]}; BOW/EOW are implicit.
Alphabet read_alphabet(const std::string& path);
void write_alphabet(const Alphabet& alphabet, const std::string& path);
nlohmann::json alphabet_json(const Alphabet& alphabet);

// Canonical lexicon: JSON lines with form, lexeme_id, morph, zero_deriv, pos.
// Without an alphabet, one is built from the sorted set of symbols seen.
Lexicon read_lexicon(std::istream& in, const std::optional<Alphabet>& alphabet = std::nullopt);
Lexicon read_lexicon(const std::string& path,
                     const std::optional<Alphabet>& alphabet = std::nullopt);
void write_lexicon(const Lexicon& lexicon, std::ostream& out);
void write_lexicon(const Lexicon& lexicon, const std::string& path);

nlohmann::json entry_json(const LexiconEntry& entry, const Alphabet& alphabet);

nlohmann::json read_json_file(const std::string& path);
void write_json_file(const nlohmann::json& j, const std::string& path);

}  // namespace homophony

#endif  // HOMOPHONY_IO_H_
