#ifndef HOMOPHONY_CORE_H_
#define HOMOPHONY_CORE_H_

#include <algorithm>
#include <cmath>
#include <compare>
#include <cstddef>
#include <limits>
#include <map>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <unordered_map>
#include <vector>

#include <Eigen/Core>

namespace homophony {

// All quantities in this library are in bits (log base 2).

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Malformed or inconsistent input data (files, symbols, rows).
class DataError : public Error {
 public:
  using Error::Error;
};

class Alphabet {
 public:
  static constexpr const char* kBowLabel = "<w>";
  static constexpr const char* kEowLabel = "</w>";

  Alphabet() = default;
  explicit Alphabet(std::vector<std::string> phones);

  // Number of phone symbols, excluding BOW/EOW.
  int size() const { return static_cast<int>(phones_.size()); }
  int bow() const { return size(); }
  int eow() const { return size() + 1; }

  const std::vector<std::string>& phones() const { return phones_; }
  const std::string& label(int index) const;

  // Index of a phone symbol, or nullopt if it is not part of the alphabet.
  std::optional<int> find(const std::string& symbol) const;
  int index(const std::string& symbol) const;

  bool operator==(const Alphabet& other) const { return phones_ == other.phones_; }

 private:
  std::vector<std::string> phones_;
  std::unordered_map<std::string, int> index_;
  std::string bow_label_ = kBowLabel;
  std::string eow_label_ = kEowLabel;
};

// A non-empty sequence of phone indices. Equality of wordforms is homophony.
class Wordform {
 public:
  Wordform() = default;
  Wordform(std::vector<int> phones, const Alphabet& alphabet);

  // Parses a space-separated phone string.
  static Wordform parse(const std::string& text, const Alphabet& alphabet);

  const std::vector<int>& phones() const { return phones_; }
  std::size_t length() const { return phones_.size(); }
  std::string to_string(const Alphabet& alphabet) const;

  auto operator<=>(const Wordform&) const = default;

 private:
  std::vector<int> phones_;
};

struct WordformHash {
  std::size_t operator()(const Wordform& w) const noexcept;
  std::size_t operator()(const std::vector<int>& phones) const noexcept;
};

enum class MorphStatus { kMonomorphemic, kMultimorphemic };

struct LexiconEntry {
  Wordform form;
  std::string lexeme_id;
  MorphStatus morph = MorphStatus::kMonomorphemic;
  bool zero_derivation = false;
  std::optional<std::string> pos;
};

struct Lexicon {
  Alphabet alphabet;
  std::vector<LexiconEntry> entries;

  std::size_t size() const { return entries.size(); }
};

// A non-negative amount of information, or the distinguished infinite value
// (used for lexica without any collision). Infinite compares above every
// finite value.
class Bits {
 public:
  constexpr Bits() = default;
  static constexpr Bits finite(double value) { return Bits(value, false); }
  static constexpr Bits infinite() { return Bits(0.0, true); }

  constexpr bool is_infinite() const { return infinite_; }
  constexpr bool is_finite() const { return !infinite_; }
  // Finite value; +inf as a double for the infinite case.
  constexpr double value() const {
    return infinite_ ? std::numeric_limits<double>::infinity() : value_;
  }

  constexpr std::partial_ordering operator<=>(const Bits& o) const {
    if (infinite_ || o.infinite_) {
      return static_cast<int>(infinite_) <=> static_cast<int>(o.infinite_);
    }
    return value_ <=> o.value_;
  }
  constexpr bool operator==(const Bits& o) const {
    return infinite_ == o.infinite_ && (infinite_ || value_ == o.value_);
  }

 private:
  constexpr Bits(double value, bool infinite) : value_(value), infinite_(infinite) {}
  double value_ = 0.0;
  bool infinite_ = false;
};

std::map<Wordform, std::size_t> multiplicity_table(const Lexicon& lexicon);

// log2(2^a + 2^b), exact for -inf operands.
template <typename Scalar>
Scalar log2_add(Scalar a, Scalar b) {
  if (a == -std::numeric_limits<Scalar>::infinity()) return b;
  if (b == -std::numeric_limits<Scalar>::infinity()) return a;
  const Scalar hi = std::max(a, b);
  const Scalar lo = std::min(a, b);
  return hi + std::log2(Scalar(1) + std::exp2(lo - hi));
}

// log2(sum_i 2^v_i) for a non-empty vector of log2-domain values.
template <typename Derived>
typename Derived::Scalar logsumexp2(const Eigen::DenseBase<Derived>& values) {
  using Scalar = typename Derived::Scalar;
  if (values.size() == 0) throw Error("logsumexp2: empty input");
  const Scalar hi = values.maxCoeff();
  if (hi == -std::numeric_limits<Scalar>::infinity()) return hi;
  return hi + std::log2((values.derived().array() - hi)
                                .unaryExpr([](Scalar x) { return std::exp2(x); })
                                .sum());
}

inline double logsumexp2(std::span<const double> values) {
  return logsumexp2(Eigen::Map<const Eigen::VectorXd>(values.data(),
                                                       static_cast<Eigen::Index>(values.size())));
}

}  // namespace homophony

#endif  // HOMOPHONY_CORE_H_
