#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace mapcover {

// A word over the generator alphabet {0,1,2}.  Each letter is an involution,
// so the inverse of a word is simply its reversal.
class Word {
public:
  Word() = default;
  explicit Word(std::vector<uint8_t> letters);

  // Parses the textual syntax: digits 0/1/2, whitespace ignored,
  // parenthesised groups with an optional ^k power, e.g. "((10)^2 12)^4".
  // Powers are expanded; expansion beyond max_letters throws.
  static Word parse(std::string_view text, size_t max_letters = 1u << 20);

  const std::vector<uint8_t>& letters() const { return letters_; }
  size_t size() const { return letters_.size(); }
  bool empty() const { return letters_.empty(); }
  uint8_t operator[](size_t i) const { return letters_[i]; }

  Word reversed() const;
  Word inverse() const { return reversed(); }
  Word pow(size_t k) const;
  Word concat(const Word& other) const;
  // First j letters.
  Word prefix(size_t j) const;

  std::string str() const;

  bool operator==(const Word& other) const { return letters_ == other.letters_; }

private:
  std::vector<uint8_t> letters_;
};

struct WordParseError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

} // namespace mapcover
