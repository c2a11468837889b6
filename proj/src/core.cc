#include "homophony/core.h"

#include <sstream>

namespace homophony {

Alphabet::Alphabet(std::vector<std::string> phones) : phones_(std::move(phones)) {
  for (int i = 0; i < size(); ++i) {
    const std::string& s = phones_[i];
    if (s.empty()) throw DataError("alphabet: empty phone symbol");
    if (s.find_first_of(" \t\n\r") != std::string::npos) {
      throw DataError("alphabet: phone symbol contains whitespace: '" + s + "'");
    }
    if (s == kBowLabel || s == kEowLabel) {
      throw DataError("alphabet: phone symbol collides with reserved label '" + s + "'");
    }
    if (!index_.emplace(s, i).second) {
      throw DataError("alphabet: duplicate phone symbol '" + s + "'");
    }
  }
}

const std::string& Alphabet::label(int index) const {
  if (index == bow()) return bow_label_;
  if (index == eow()) return eow_label_;
  if (index < 0 || index >= size()) throw Error("alphabet: index out of range");
  return phones_[index];
}

std::optional<int> Alphabet::find(const std::string& symbol) const {
  auto it = index_.find(symbol);
  if (it == index_.end()) return std::nullopt;
  return it->second;
}

int Alphabet::index(const std::string& symbol) const {
  if (auto i = find(symbol)) return *i;
  throw DataError("unknown phone symbol '" + symbol + "'");
}

Wordform::Wordform(std::vector<int> phones, const Alphabet& alphabet)
    : phones_(std::move(phones)) {
  if (phones_.empty()) throw DataError("wordform: empty phone sequence");
  for (int p : phones_) {
    if (p < 0 || p >= alphabet.size()) {
      throw DataError("wordform: index " + std::to_string(p) + " is not a phone of the alphabet");
    }
  }
}

Wordform Wordform::parse(const std::string& text, const Alphabet& alphabet) {
  std::istringstream in(text);
  std::vector<int> phones;
  std::string symbol;
  while (in >> symbol) phones.push_back(alphabet.index(symbol));
  return Wordform(std::move(phones), alphabet);
}

std::string Wordform::to_string(const Alphabet& alphabet) const {
  std::string out;
  for (std::size_t i = 0; i < phones_.size(); ++i) {
    if (i) out += ' ';
    out += alphabet.label(phones_[i]);
  }
  return out;
}

std::size_t WordformHash::operator()(const std::vector<int>& phones) const noexcept {
  // FNV-1a over the indices.
  std::size_t h = 1469598103934665603ULL;
  for (int p : phones) {
    h ^= static_cast<std::size_t>(p) + 1;
    h *= 1099511628211ULL;
  }
  return h;
}

std::size_t WordformHash::operator()(const Wordform& w) const noexcept {
  return (*this)(w.phones());
}

std::map<Wordform, std::size_t> multiplicity_table(const Lexicon& lexicon) {
  std::map<Wordform, std::size_t> counts;
  for (const auto& entry : lexicon.entries) ++counts[entry.form];
  return counts;
}

}  // namespace homophony
