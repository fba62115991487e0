#include "isocomm/oracle.hpp"

#include <ostream>

namespace isocomm {

std::ostream& operator<<(std::ostream& os, Verdict v) { return os << to_string(v); }
std::ostream& operator<<(std::ostream& os, Triviality t) { return os << to_string(t); }

const char* to_string(Verdict v) {
  switch (v) {
    case Verdict::Yes: return "yes";
    case Verdict::No: return "no";
    case Verdict::Unknown: return "unknown";
  }
  return "unknown";
}

const char* to_string(Triviality t) {
  switch (t) {
    case Triviality::Trivial: return "trivial";
    case Triviality::Nontrivial: return "nontrivial";
    case Triviality::Unknown: return "unknown";
  }
  return "unknown";
}

OracleAnswer OracleAnswer::yes(std::string certificate, Budget spent) {
  OracleAnswer a;
  a.verdict = Verdict::Yes;
  if (!certificate.empty()) a.certificate = std::move(certificate);
  a.budget_spent = spent;
  return a;
}

OracleAnswer OracleAnswer::no(std::string certificate, Budget spent) {
  OracleAnswer a;
  a.verdict = Verdict::No;
  if (!certificate.empty()) a.certificate = std::move(certificate);
  a.budget_spent = spent;
  return a;
}

OracleAnswer OracleAnswer::unknown(Budget spent) {
  OracleAnswer a;
  a.verdict = Verdict::Unknown;
  a.budget_spent = spent;
  return a;
}

}  // namespace isocomm
