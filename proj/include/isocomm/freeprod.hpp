#pragma once

#include <map>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "isocomm/hall.hpp"
#include "isocomm/ints.hpp"
#include "isocomm/oracle.hpp"
#include "isocomm/word.hpp"

namespace isocomm {

// Word-problem services for one factor of a free product. Answers must be
// invariant under free reduction of the inputs, and Yes/No answers are
// final. The optional queries default to Unknown so that a factor can ship
// with just a triviality test.
class FactorOracle {
 public:
  virtual ~FactorOracle() = default;

  virtual std::string id() const = 0;

  virtual Triviality is_trivial(const Word& w) const = 0;

  // Whether conjugation by w acts trivially on the factor (the Inn-kernel
  // test used by twist_is_inner).
  virtual OracleAnswer is_central(const Word& /*w*/, Budget /*budget*/) const {
    return OracleAnswer::unknown();
  }

  virtual OracleAnswer conjugate_in_factor(const Word& /*u*/, const Word& /*v*/,
                                           Budget /*budget*/) const {
    return OracleAnswer::unknown();
  }

  // Canonical representative of w's element, for factors that can compute
  // one: equal elements yield identical words and the identity yields the
  // empty word. Normalization rewrites syllables through this, which makes
  // equality of normal forms coincide with equality of group elements over
  // such factors. Factors without an effective normal form return nullopt.
  virtual std::optional<Word> canonical_word(const Word& /*w*/) const { return std::nullopt; }
};

// The factors of one free product, looked up by id.
class OracleSet {
 public:
  OracleSet& add(std::shared_ptr<const FactorOracle> oracle);

  // Throws std::invalid_argument for an id no oracle was registered for.
  const FactorOracle& require(const std::string& id) const;

  // Registered factor ids in sorted order.
  std::vector<std::string> ids() const;

 private:
  std::map<std::string, std::shared_ptr<const FactorOracle>> by_id_;
};

// One syllable of a free-product word: a word in the generators of the
// named factor.
struct Syllable {
  std::string factor;
  Word word;

  friend bool operator==(const Syllable&, const Syllable&) = default;
};

// A word in a free product, stored syllable-wise. Construction drops
// syllables whose word is freely trivial but performs no factor-aware
// normalization; fp_normalize produces the certified normal form where
// adjacent syllables come from distinct factors and none is trivial in its
// factor.
class FPWord {
 public:
  FPWord() = default;
  explicit FPWord(std::vector<Syllable> syllables);

  static FPWord single(std::string factor, Word word);

  bool empty() const { return syllables_.empty(); }
  std::size_t size() const { return syllables_.size(); }
  const std::vector<Syllable>& syllables() const { return syllables_; }

  friend bool operator==(const FPWord&, const FPWord&) = default;

 private:
  std::vector<Syllable> syllables_;
};

// Formats as e.g. "(A: c)(B: y)"; the empty word prints as "1".
std::string format_fp_word(const FPWord& w);

// Result of factor-aware normalization. `certified` is true when every kept
// syllable was certified nontrivial by its factor oracle, i.e. `word` is a
// true normal form; an Unknown triviality query leaves the syllable in
// place and clears the flag.
struct NormalizeOutcome {
  FPWord word;
  bool certified = false;
};

// Merges adjacent same-factor syllables and deletes certified-trivial ones,
// to a fixpoint. Throws std::invalid_argument when a syllable names a
// factor absent from `oracles`.
NormalizeOutcome fp_normalize(const FPWord& w, const OracleSet& oracles);

// Yes iff the normal form is empty; No when it is certified nonempty;
// Unknown when normalization could not be certified.
OracleAnswer fp_is_trivial(const FPWord& w, const OracleSet& oracles);

// Concatenation followed by normalization.
NormalizeOutcome fp_multiply(const FPWord& u, const FPWord& v, const OracleSet& oracles);

// Syllable-wise inverse (reversed order, inverted words). Preserves normal
// forms and needs no oracle.
FPWord fp_inverse(const FPWord& w);

// The free-product conjugacy criterion on normal forms: after syllable-level
// cyclic reduction, words of syllable length >= 2 are conjugate iff one is a
// cyclic rotation of the other with factor-wise equal syllables; single
// syllables delegate to the factor's conjugacy oracle; anything else is No.
// Inputs are re-normalized defensively; an uncertified normalization or
// cyclic reduction yields Unknown.
OracleAnswer fp_conjugate(const FPWord& u, const FPWord& v, const OracleSet& oracles,
                          Budget budget);

// The twist automorphism: conjugates every syllable of the named factor by
// `conjugator` and fixes all other factors.
struct Twist {
  std::string factor;
  Word conjugator;

  friend bool operator==(const Twist&, const Twist&) = default;
};

FPWord apply_twist(const Twist& t, const FPWord& w);

// Twists compose along powers of the conjugator: the k-th power of a twist
// is the twist by the k-th power.
Twist twist_power(const Twist& t, const Int& k);

// A twist is inner exactly when its conjugator lies in the kernel of the
// conjugation action on its factor; delegates to that factor's is_central.
OracleAnswer twist_is_inner(const Twist& t, const OracleSet& oracles, Budget budget);

// A finite group given by its full multiplication table; element 0 is the
// identity. Used as a totally decidable test factor.
class TableGroup {
 public:
  // Validates shape, identity, inverses and associativity; generator names
  // map to elements. Throws std::invalid_argument on violations.
  TableGroup(std::vector<std::vector<std::size_t>> table,
             std::map<std::string, std::size_t> generators);

  static TableGroup cyclic(std::size_t n, const std::string& generator);
  // The symmetric group on three points: s a transposition, r a 3-cycle.
  static TableGroup symmetric3();

  std::size_t size() const { return table_.size(); }
  std::size_t mul(std::size_t x, std::size_t y) const { return table_[x][y]; }
  std::size_t inverse(std::size_t x) const { return inverse_[x]; }
  const std::map<std::string, std::size_t>& generators() const { return generators_; }

  // Folds a word through the table. Throws std::invalid_argument on a
  // generator the table does not name.
  std::size_t evaluate(const Word& w) const;

  bool central(std::size_t x) const;
  bool conjugate(std::size_t x, std::size_t y) const;

 private:
  std::vector<std::vector<std::size_t>> table_;
  std::vector<std::size_t> inverse_;
  std::map<std::string, std::size_t> generators_;
};

// Total factor oracle backed by a multiplication table.
class TableOracle final : public FactorOracle {
 public:
  TableOracle(std::string id, TableGroup group);

  std::string id() const override { return id_; }
  Triviality is_trivial(const Word& w) const override;
  OracleAnswer is_central(const Word& w, Budget budget) const override;
  OracleAnswer conjugate_in_factor(const Word& u, const Word& v, Budget budget) const override;
  // Shortest-word representative per element (breadth-first over the
  // generators in name order; deterministic).
  std::optional<Word> canonical_word(const Word& w) const override;

  const TableGroup& group() const { return group_; }

 private:
  std::string id_;
  TableGroup group_;
  std::vector<Word> canonical_;
};

// Factor oracle backed by a word-problem variant of the two-generator group
// of module hall. Triviality uses the complete decision (V1) or the
// semi-decision with the budget fixed at construction (V2).
//
// is_central implements the Inn-kernel test for the centerless group this
// factor stands in for: a nonzero a-exponent-sum fails to commute with b and
// a nonzero b-exponent sum fails to commute with a (definite No); any other
// element is central here, and the stand-in question becomes whether it is
// trivial, so the triviality verdict is returned (V2 leaves it Unknown
// within budget).
class HallFactorOracle final : public FactorOracle {
 public:
  HallFactorOracle(std::string id, HallConfig cfg, Budget wp_budget);

  std::string id() const override { return id_; }
  Triviality is_trivial(const Word& w) const override;
  OracleAnswer is_central(const Word& w, Budget budget) const override;
  // Decides only the structurally central cases (conjugacy there is
  // equality); everything else is Unknown.
  OracleAnswer conjugate_in_factor(const Word& u, const Word& v, Budget budget) const override;

  const HallConfig& config() const { return cfg_; }
  Budget wp_budget() const { return wp_budget_; }

 private:
  Triviality decide(const Word& w, Budget budget) const;

  std::string id_;
  HallConfig cfg_;
  Budget wp_budget_;
};

}  // namespace isocomm
