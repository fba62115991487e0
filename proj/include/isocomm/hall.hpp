#pragma once

#include <map>
#include <memory>
#include <string>
#include <vector>

#include "isocomm/ints.hpp"
#include "isocomm/machines.hpp"
#include "isocomm/oracle.hpp"
#include "isocomm/word.hpp"

namespace isocomm {

// The two-generator group H0 = <a, b> in which, writing b_i = a^-i b a^i,
// every commutator of two b-letters is central and depends only on the index
// difference: with c_{i,j} = [b_j, b_i] one has [[b_i, b_j], b_k] = 1 and
// c_{i,j} = c_{i+k,j+k}. Its center is free abelian on d_r = c_{0,r}, r >= 1.
//
// The quotient variants below collapse parts of the center, parameterized by
// an injective computable f:
//   V1 kills d_{f(n)}^n for every n       (word problem decidable),
//   V2 kills d_n^2 and d_{f(n)} for every n (word problem only semi-decidable
//      when the range of f is undecidable).
enum class HallVariant { V1, V2 };

struct HallConfig {
  HallVariant variant = HallVariant::V1;
  std::shared_ptr<ComputableF> f;

  static HallConfig v1(std::shared_ptr<ComputableF> f) {
    return HallConfig{HallVariant::V1, std::move(f)};
  }
  static HallConfig v2(std::shared_ptr<ComputableF> f) {
    return HallConfig{HallVariant::V2, std::move(f)};
  }
};

// One run of b-letters: b_index^exponent.
struct BLetter {
  Int index;
  Int exponent;

  friend bool operator==(const BLetter&, const BLetter&) = default;
};

// A word in the letters b_i (i ranging over all integers), kept run-length
// normalized: adjacent letters with equal index merge and zero exponents
// drop, exactly like Word.
class BWord {
 public:
  BWord() = default;
  explicit BWord(const std::vector<BLetter>& letters);

  static BWord letter(Int index, Int exponent = Int(1));

  bool empty() const { return letters_.empty(); }
  const std::vector<BLetter>& letters() const { return letters_; }

  friend BWord operator*(const BWord& lhs, const BWord& rhs);
  friend bool operator==(const BWord&, const BWord&) = default;

 private:
  void push_reduced(const BLetter& l);

  std::vector<BLetter> letters_;
};

// Formats as e.g. "b_1 b_0^-1 b_-2^3"; the empty word prints as "1".
std::string format_b_word(const BWord& w);

// An element of the center of H0: a finitely supported integer combination
// of the d_r. Support is sorted ascending and zero coefficients are dropped.
struct CenterVector {
  std::vector<std::pair<Int, Int>> coefficients;  // (r, n_r), r >= 1, n_r != 0

  static CenterVector from_map(const std::map<Int, Int>& m);

  bool empty() const { return coefficients.empty(); }

  friend bool operator==(const CenterVector&, const CenterVector&) = default;
};

// Formats as e.g. "d_1^2 d_7^-1"; the empty vector prints as "1".
std::string format_center(const CenterVector& v);

// Rewrites a word over {a, b} with zero a-exponent-sum as a word in the b_i.
// Scanning left to right with running a-exponent p, each b^e contributes
// b_{-p}^e (from a^p b a^-p = b_{-p}). Throws std::invalid_argument when the
// a-exponent-sum is nonzero or a foreign generator appears.
BWord to_b_word(const Word& w);

// Per-index exponent sums of a b-word (zero entries omitted).
std::map<Int, Int> b_exponent_sums(const BWord& w1);

// Collects a b-word with all exponent sums zero into the center: bubble-sorts
// the letters into ascending index order, each swap of b_j^m leftward past
// b_i^n (j > i) emitting d_{j-i}^{m*n}. Throws std::invalid_argument when
// some exponent sum is nonzero.
CenterVector collect_center(const BWord& w1);

// Decides (V1) or semi-decides (V2) triviality of a central element in the
// chosen quotient.
//   V1: d_r^n dies iff some positive divisor m of |n| has f(m) = r; definite
//       Yes/No, budget ignored (f evaluation is total).
//   V2: components with even exponent die via d_n^2; odd components need r in
//       the range of f, searched per component with the given budget. Table
//       modes can return a definite No; the default enumerator never does.
OracleAnswer center_is_trivial(const CenterVector& v, const HallConfig& cfg, Budget budget);

// Complete word-problem decision for the V1 quotient: (1) nonzero
// a-exponent-sum, (2) nonzero b-exponent sums, (3) empty collection, then
// (4) the divisor criterion on the collected center. Always definite.
Triviality wp_v1(const Word& w, const HallConfig& cfg);

// Word problem for the V2 quotient: stages (1)-(3) answer definitively,
// stage (4) reports Trivial only on a definite Yes and Unknown otherwise
// (a center component outside the known-f test ranges stays Unknown).
Triviality wp_v2_semi(const Word& w, const HallConfig& cfg, Budget budget);

// The central word z_r = [a^-r b a^r, b] over {a, b}, freely reduced.
// Throws std::domain_error for r < 1.
Word z_word(const Int& r);

// What is known about the order of d_r in the chosen quotient.
struct OrderBound {
  enum class Kind { Finite, UpperBound, Unknown };

  Kind kind = Kind::Unknown;
  Int value;  // the exact order (Finite) or the bound (UpperBound)

  static OrderBound finite(Int v) { return {Kind::Finite, std::move(v)}; }
  static OrderBound upper_bound(Int v) { return {Kind::UpperBound, std::move(v)}; }
  static OrderBound unknown() { return {Kind::Unknown, Int(0)}; }

  friend bool operator==(const OrderBound&, const OrderBound&) = default;
};

std::string to_string(const OrderBound& b);

// V1: Finite(m) when the budgeted range search finds f(m) = r with m >= 1
// (injectivity makes m the exact order), else Unknown — an infinite order is
// never certified. V2: Finite(1) when r is discovered in the range of f,
// else the unconditional UpperBound(2). Throws std::domain_error for r < 1.
OrderBound order_bound_of_d(const Int& r, const HallConfig& cfg, Budget budget);

}  // namespace isocomm
