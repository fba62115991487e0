#pragma once

#include <iosfwd>
#include <optional>
#include <string>

#include "isocomm/ints.hpp"

namespace isocomm {

// Three-valued verdict for questions that may only be semi-decidable.
// Yes and No are final: once returned they must stay stable when the budget
// increases. Unknown means "not resolved within the budget" and is never a
// euphemism for No.
enum class Verdict { Yes, No, Unknown };

const char* to_string(Verdict v);

// Answer of a (semi-)decision procedure. A certificate, when present, is a
// human-readable witness that can be replayed; Unknown never carries one.
struct OracleAnswer {
  Verdict verdict = Verdict::Unknown;
  std::optional<std::string> certificate;
  Budget budget_spent = 0;

  static OracleAnswer yes(std::string certificate = {}, Budget spent = 0);
  static OracleAnswer no(std::string certificate = {}, Budget spent = 0);
  static OracleAnswer unknown(Budget spent = 0);

  bool is_yes() const { return verdict == Verdict::Yes; }
  bool is_no() const { return verdict == Verdict::No; }
  bool is_unknown() const { return verdict == Verdict::Unknown; }
};

// Definite or budget-limited triviality status of a group element.
enum class Triviality { Trivial, Nontrivial, Unknown };

const char* to_string(Triviality t);

std::ostream& operator<<(std::ostream& os, Verdict v);
std::ostream& operator<<(std::ostream& os, Triviality t);

}  // namespace isocomm
