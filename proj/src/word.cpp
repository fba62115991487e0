#include "isocomm/word.hpp"

#include <algorithm>
#include <cctype>
#include <ostream>
#include <sstream>
#include <utility>

namespace isocomm {

namespace {

bool valid_identifier(std::string_view s) {
  if (s.empty()) return false;
  if (!std::isalpha(static_cast<unsigned char>(s[0]))) return false;
  return std::all_of(s.begin() + 1, s.end(), [](char c) {
    return std::isalnum(static_cast<unsigned char>(c)) || c == '_';
  });
}

// Push one run onto a stack kept in reduced run-length form, merging and
// cancelling against the top. One pass over the input yields the unique
// freely reduced word.
void push_reduced(std::vector<Letter>& stack, Letter l) {
  if (l.exponent == 0) return;
  if (!stack.empty() && stack.back().gen == l.gen) {
    stack.back().exponent += l.exponent;
    if (stack.back().exponent == 0) stack.pop_back();
    return;
  }
  stack.push_back(std::move(l));
}

}  // namespace

GeneratorSymbol::GeneratorSymbol(std::string name) : name_(std::move(name)) {
  if (!valid_identifier(name_)) {
    throw std::invalid_argument("invalid generator name: '" + name_ + "'");
  }
}

Word::Word(std::vector<Letter> letters) {
  letters_.reserve(letters.size());
  for (auto& l : letters) push_reduced(letters_, std::move(l));
}

Word Word::letter(GeneratorSymbol g, Int exponent) {
  Word w;
  if (exponent != 0) w.letters_.push_back(Letter{std::move(g), std::move(exponent)});
  return w;
}

Int Word::length() const {
  Int n = 0;
  for (const auto& l : letters_) n += abs_int(l.exponent);
  return n;
}

Word Word::inverse() const {
  std::vector<Letter> rev;
  rev.reserve(letters_.size());
  for (auto it = letters_.rbegin(); it != letters_.rend(); ++it) {
    rev.push_back(Letter{it->gen, -it->exponent});
  }
  Word w;
  w.letters_ = std::move(rev);  // reversal of a reduced word is reduced
  return w;
}

Word Word::pow(const Int& k) const {
  if (k == 0 || letters_.empty()) return Word{};
  if (k < 0) return inverse().pow(-k);
  if (letters_.size() == 1) {
    return Word::letter(letters_[0].gen, letters_[0].exponent * k);
  }
  // Square-and-multiply; interior cancellation is handled by operator*.
  Word base = *this;
  Word acc;
  Int e = k;
  while (e > 0) {
    if ((e & 1) != 0) acc = acc * base;
    e >>= 1;
    if (e > 0) base = base * base;
  }
  return acc;
}

Word operator*(const Word& lhs, const Word& rhs) {
  Word w = lhs;
  for (const auto& l : rhs.letters_) push_reduced(w.letters_, l);
  return w;
}

Word free_reduce(std::vector<Letter> raw) { return Word(std::move(raw)); }

Word free_reduce(const Word& w) { return w; }

Word cyclic_reduce(const Word& w) {
  Word cur = w;
  while (cur.run_count() >= 2 && cur.letters().front().gen == cur.letters().back().gen) {
    // Conjugating by the first run merges it into the last: g^e u g^f ~ u g^(f+e).
    const auto& ls = cur.letters();
    std::vector<Letter> next(ls.begin() + 1, ls.end());
    next.back().exponent += ls.front().exponent;
    if (next.back().exponent == 0) next.pop_back();
    Word reduced(std::move(next));
    if (reduced == cur) break;
    cur = std::move(reduced);
  }
  return cur;
}

Int exponent_sum(const Word& w, const GeneratorSymbol& g) {
  Int n = 0;
  for (const auto& l : w.letters()) {
    if (l.gen == g) n += l.exponent;
  }
  return n;
}

Word commutator(const Word& x, const Word& y) {
  return x.inverse() * y.inverse() * x * y;
}

Word conjugate(const Word& w, const Word& c) { return c.inverse() * w * c; }

namespace {

// Recursive-descent parser for the word grammar.
class WordParser {
 public:
  WordParser(std::string_view text, const std::vector<GeneratorSymbol>* alphabet)
      : text_(text), alphabet_(alphabet) {}

  Word parse() {
    Word w = parse_sequence();
    skip_ws();
    if (pos_ != text_.size()) fail("unexpected trailing input");
    return w;
  }

 private:
  [[noreturn]] void fail(const std::string& what) const {
    std::ostringstream os;
    os << "word parse error at offset " << pos_ << ": " << what;
    throw ParseError(os.str());
  }

  void skip_ws() {
    while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
  }

  char peek() const { return pos_ < text_.size() ? text_[pos_] : '\0'; }

  bool at_term_start() {
    skip_ws();
    char c = peek();
    return std::isalpha(static_cast<unsigned char>(c)) || c == '[' || c == '1';
  }

  Word parse_sequence() {
    if (!at_term_start()) fail("expected a word");
    Word w;
    while (at_term_start()) w = w * parse_term();
    return w;
  }

  Word parse_term() {
    Word atom = parse_atom();
    skip_ws();
    if (peek() == '^') {
      ++pos_;
      return atom.pow(parse_integer());
    }
    return atom;
  }

  Word parse_atom() {
    skip_ws();
    char c = peek();
    if (c == '1') {
      ++pos_;
      return Word{};
    }
    if (c == '[') {
      ++pos_;
      Word u = parse_sequence();
      skip_ws();
      if (peek() != ',') fail("expected ',' in commutator");
      ++pos_;
      Word v = parse_sequence();
      skip_ws();
      if (peek() != ']') fail("expected ']'");
      ++pos_;
      return commutator(u, v);
    }
    if (std::isalpha(static_cast<unsigned char>(c))) {
      std::size_t start = pos_;
      while (pos_ < text_.size() &&
             (std::isalnum(static_cast<unsigned char>(text_[pos_])) || text_[pos_] == '_')) {
        ++pos_;
      }
      std::string name(text_.substr(start, pos_ - start));
      GeneratorSymbol g{name};
      if (alphabet_ != nullptr &&
          std::find(alphabet_->begin(), alphabet_->end(), g) == alphabet_->end()) {
        fail("unknown generator '" + name + "'");
      }
      return Word::letter(std::move(g), 1);
    }
    fail("expected generator, '1' or '['");
  }

  Int parse_integer() {
    skip_ws();
    std::size_t start = pos_;
    if (peek() == '-' || peek() == '+') ++pos_;
    std::size_t digits = pos_;
    while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) ++pos_;
    if (pos_ == digits) fail("expected integer exponent");
    return Int(std::string(text_.substr(start, pos_ - start)));
  }

  std::string_view text_;
  const std::vector<GeneratorSymbol>* alphabet_;
  std::size_t pos_ = 0;
};

}  // namespace

Word parse_word(std::string_view text) { return WordParser(text, nullptr).parse(); }

Word parse_word(std::string_view text, const std::vector<GeneratorSymbol>& alphabet) {
  return WordParser(text, &alphabet).parse();
}

std::string format_word(const Word& w) {
  if (w.empty()) return "1";
  std::ostringstream os;
  bool first = true;
  for (const auto& l : w.letters()) {
    if (!first) os << ' ';
    first = false;
    os << l.gen.name();
    if (l.exponent != 1) os << '^' << l.exponent;
  }
  return os.str();
}

std::ostream& operator<<(std::ostream& os, const Word& w) { return os << format_word(w); }

}  // namespace isocomm
