#pragma once

#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "isocomm/ints.hpp"
#include "isocomm/oracle.hpp"

namespace isocomm {

// One instruction of a counter program. Counters are referenced by dense
// slot; the original (arbitrary) counter ids are kept alongside for the
// textual form. Branch targets are line numbers in [0, L] where L is the
// program length and position L acts as an implicit halt.
struct Instruction {
  enum class Kind { Inc, DecJz, Halt };

  Kind kind = Kind::Halt;
  std::size_t counter = 0;
  std::size_t next = 0;
  std::size_t jump = 0;

  friend bool operator==(const Instruction&, const Instruction&) = default;
};

// A deterministic counter program with a total canonical index decoding:
// every natural number decodes to a valid program.
//
// The numbering uses the classic pairing pair(x,y) = (x+y)(x+y+1)/2 + y.
// A natural number is first read as a list of opcodes (0 = empty list,
// n+1 = pair(head, tail)); the empty list normalizes to the one-instruction
// halt program. An opcode m decodes as: 0 -> halt; otherwise m-1 = 2q+s
// where s = 0 gives inc with (counter, next) = unpair(q) and s = 1 gives
// dec-or-jump with (counter, pair(next, jump)) = unpair(q). Branch targets
// are taken mod L+1.
class Program {
 public:
  static Program decode(const Int& index);

  // Textual form, one instruction per line (0-based line numbers implied):
  //   inc c<k> -> <line>
  //   decjz c<k> -> <line> | <line>     (decrement, else jump when zero)
  //   halt
  static Program parse(std::string_view text);

  // Canonical index of this instruction list (decode(encode()) round-trips).
  Int encode() const;

  std::string to_text() const;

  const std::vector<Instruction>& instructions() const { return instructions_; }
  const std::vector<Int>& counter_ids() const { return counter_ids_; }

  friend bool operator==(const Program&, const Program&) = default;

 private:
  std::vector<Instruction> instructions_;
  std::vector<Int> counter_ids_;  // original id per dense slot
};

// Outcome of a bounded deterministic run. Counters start at zero. Every
// executed instruction consumes one step, including the halting one, so a
// budget of zero never halts and `steps` <= budget always holds. Re-running
// a halted program with a larger budget halts after the same step count.
struct RunResult {
  bool halted = false;
  Budget steps = 0;

  friend bool operator==(const RunResult&, const RunResult&) = default;
};

RunResult run_program(const Program& p, Budget budget);

// Canonical interleaved execution: rounds k = 1, 2, ...; round k charges k
// steps for each of the programs 0..k in order, stopping (mid-round if
// necessary) once the next charge would exceed the total budget. Returns
// the distinct program indices seen halting, in discovery order. Budgets
// give prefix-monotone results: dovetail(b1) is a prefix of dovetail(b2)
// whenever b1 <= b2.
std::vector<Int> dovetail(Budget total_budget);

// A total injective computable function f on the naturals.
//
// Default mode enumerates the halting set by dovetailing: f(n) is the
// (n+1)-th distinct program index discovered halting (0-based argument).
// The range of this f is the halting set, so range membership is only
// semi-decidable. Injected table modes (affine an+b with a >= 1, or an
// explicit finite table) exist for tests and make the range decidable.
class ComputableF {
 public:
  virtual ~ComputableF() = default;

  static std::shared_ptr<ComputableF> halting_enumerator();
  static std::shared_ptr<ComputableF> affine(Int a, Int b);
  static std::shared_ptr<ComputableF> finite_table(std::vector<Int> values);
  // Table spec grammar: "an+b" / "n+b" / "an" / "n" (e.g. "2n+3").
  static std::shared_ptr<ComputableF> parse_table_spec(std::string_view spec);

  // f(n). Total in default and affine modes; a finite table throws
  // std::out_of_range beyond its domain (test misconfiguration).
  virtual Int eval(const Int& n) const = 0;

  // Membership of r in f({n : n >= min_arg}).
  // Default mode answers Yes(witness) or Unknown within the budget and
  // never No (except for negative r, which is definitively outside the
  // range); table modes answer definitively (budget ignored).
  struct RangeAnswer {
    Verdict verdict = Verdict::Unknown;
    std::optional<Int> witness;  // the n with f(n) = r, when verdict is Yes
    Budget spent = 0;
  };
  virtual RangeAnswer range_membership(const Int& r, Budget budget, const Int& min_arg) const = 0;

  // Semi-decision surface: Yes(witness) within budget, else Unknown.
  // A definite No from a table mode is deliberately reported as Unknown
  // here; callers wanting the definite answer use range_membership.
  RangeAnswer in_range_semi(const Int& r, Budget budget) const;

  // Mode tag recorded in emitted file headers: "default" or "table:...".
  virtual std::string describe() const = 0;
};

}  // namespace isocomm
