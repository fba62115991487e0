#pragma once

#include <compare>
#include <cstddef>
#include <iosfwd>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "isocomm/ints.hpp"

namespace isocomm {

// Raised on malformed textual input (words, presentation files, programs).
class ParseError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// A named generator. Names are identifiers: [A-Za-z][A-Za-z0-9_]*.
class GeneratorSymbol {
 public:
  explicit GeneratorSymbol(std::string name);

  const std::string& name() const { return name_; }

  friend bool operator==(const GeneratorSymbol&, const GeneratorSymbol&) = default;
  friend auto operator<=>(const GeneratorSymbol&, const GeneratorSymbol&) = default;

 private:
  std::string name_;
};

// One run of a word: a generator raised to a nonzero exponent.
struct Letter {
  GeneratorSymbol gen;
  Int exponent;

  friend bool operator==(const Letter&, const Letter&) = default;
};

// A freely reduced word in run-length form: adjacent letters always carry
// distinct generators and no exponent is zero. The constructor normalizes
// its input, so every Word value is the unique reduced representative of
// its free-group element; equality of Words is equality in the free group.
class Word {
 public:
  Word() = default;
  explicit Word(std::vector<Letter> letters);

  static Word letter(GeneratorSymbol g, Int exponent);

  const std::vector<Letter>& letters() const { return letters_; }
  bool empty() const { return letters_.empty(); }
  // Number of runs in the reduced form.
  std::size_t run_count() const { return letters_.size(); }
  // Total letter count of the reduced form (sum of |exponent|).
  Int length() const;

  Word inverse() const;
  Word pow(const Int& k) const;

  friend Word operator*(const Word& lhs, const Word& rhs);
  friend bool operator==(const Word&, const Word&) = default;

 private:
  std::vector<Letter> letters_;
};

// Free reduction of a raw letter sequence (single left-to-right stack pass).
Word free_reduce(std::vector<Letter> raw);
// On an already-constructed Word this is the identity; kept as the named
// operation so properties can be stated against it directly.
Word free_reduce(const Word& w);

// Shortest representative of the conjugacy class: strips matching ends.
Word cyclic_reduce(const Word& w);

// Signed number of occurrences of g in w.
Int exponent_sum(const Word& w, const GeneratorSymbol& g);

// [x, y] = x^-1 y^-1 x y, freely reduced.
Word commutator(const Word& x, const Word& y);

// Conjugate c^-1 w c, freely reduced.
Word conjugate(const Word& w, const Word& c);

// Textual word grammar (used by presentation files and the CLI):
//   word := term+            terms concatenate left to right
//   term := atom ('^' integer)?
//   atom := identifier | '1' | '[' word ',' word ']'
// '1' denotes the empty word. Brackets nest; [u, v] expands to u^-1 v^-1 u v.
// Tokens may be separated by whitespace; '^' binds tightly to its atom.
Word parse_word(std::string_view text);
// As above, but rejects generators outside the given alphabet.
Word parse_word(std::string_view text, const std::vector<GeneratorSymbol>& alphabet);

// Canonical serialization: terms joined by single spaces, exponent suffix
// only when it differs from 1 (e.g. "a b^-1 a^3"); the empty word is "1".
std::string format_word(const Word& w);

std::ostream& operator<<(std::ostream& os, const Word& w);

}  // namespace isocomm
