#include "mapcover/word.hpp"

#include <cctype>

namespace mapcover {

Word::Word(std::vector<uint8_t> letters) : letters_(std::move(letters)) {
  for (uint8_t l : letters_) {
    if (l > 2) throw WordParseError("letter out of range");
  }
}

namespace {

struct Parser {
  std::string_view text;
  size_t pos = 0;
  size_t max_letters;

  void skip_ws() {
    while (pos < text.size() && std::isspace(static_cast<unsigned char>(text[pos]))) ++pos;
  }

  bool eof() {
    skip_ws();
    return pos >= text.size();
  }

  char peek() {
    skip_ws();
    return text[pos];
  }

  // seq := item*, item := (digit | '(' seq ')') ('^' uint)?
  std::vector<uint8_t> parse_seq(bool top) {
    std::vector<uint8_t> out;
    while (!eof()) {
      char c = peek();
      if (c == ')') {
        if (top) throw WordParseError("unmatched ')'");
        break;
      }
      std::vector<uint8_t> item;
      if (c == '(') {
        ++pos;
        item = parse_seq(false);
        if (eof() || text[pos] != ')') throw WordParseError("missing ')'");
        ++pos;
      } else if (c == '0' || c == '1' || c == '2') {
        item.push_back(static_cast<uint8_t>(c - '0'));
        ++pos;
      } else {
        throw WordParseError(std::string("unexpected character '") + c + "'");
      }
      if (!eof() && peek() == '^') {
        ++pos;
        skip_ws();
        if (pos >= text.size() || !std::isdigit(static_cast<unsigned char>(text[pos])))
          throw WordParseError("'^' must be followed by an integer");
        size_t k = 0;
        while (pos < text.size() && std::isdigit(static_cast<unsigned char>(text[pos]))) {
          k = k * 10 + static_cast<size_t>(text[pos] - '0');
          if (k > max_letters) throw WordParseError("power too large");
          ++pos;
        }
        if (k == 0) {
          item.clear();
        } else {
          std::vector<uint8_t> rep;
          rep.reserve(item.size() * k);
          for (size_t i = 0; i < k; ++i) rep.insert(rep.end(), item.begin(), item.end());
          item = std::move(rep);
        }
      }
      if (out.size() + item.size() > max_letters) throw WordParseError("word too long");
      out.insert(out.end(), item.begin(), item.end());
    }
    return out;
  }
};

} // namespace

Word Word::parse(std::string_view text, size_t max_letters) {
  Parser p{text, 0, max_letters};
  auto letters = p.parse_seq(true);
  return Word(std::move(letters));
}

Word Word::reversed() const {
  std::vector<uint8_t> r(letters_.rbegin(), letters_.rend());
  return Word(std::move(r));
}

Word Word::pow(size_t k) const {
  std::vector<uint8_t> out;
  out.reserve(letters_.size() * k);
  for (size_t i = 0; i < k; ++i) out.insert(out.end(), letters_.begin(), letters_.end());
  return Word(std::move(out));
}

Word Word::concat(const Word& other) const {
  std::vector<uint8_t> out = letters_;
  out.insert(out.end(), other.letters_.begin(), other.letters_.end());
  return Word(std::move(out));
}

Word Word::prefix(size_t j) const {
  if (j > letters_.size()) j = letters_.size();
  return Word(std::vector<uint8_t>(letters_.begin(), letters_.begin() + static_cast<long>(j)));
}

std::string Word::str() const {
  std::string s;
  s.reserve(letters_.size());
  for (uint8_t l : letters_) s.push_back(static_cast<char>('0' + l));
  return s;
}

} // namespace mapcover
