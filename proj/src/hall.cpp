#include "isocomm/hall.hpp"

#include <algorithm>
#include <sstream>
#include <stdexcept>

namespace isocomm {

namespace {

const GeneratorSymbol kA{"a"};
const GeneratorSymbol kB{"b"};

}  // namespace

BWord::BWord(const std::vector<BLetter>& letters) {
  for (const BLetter& l : letters) push_reduced(l);
}

BWord BWord::letter(Int index, Int exponent) {
  BWord w;
  w.push_reduced(BLetter{std::move(index), std::move(exponent)});
  return w;
}

void BWord::push_reduced(const BLetter& l) {
  if (l.exponent == 0) return;
  if (!letters_.empty() && letters_.back().index == l.index) {
    letters_.back().exponent += l.exponent;
    if (letters_.back().exponent == 0) letters_.pop_back();
    return;
  }
  letters_.push_back(l);
}

BWord operator*(const BWord& lhs, const BWord& rhs) {
  BWord out = lhs;
  for (const BLetter& l : rhs.letters_) out.push_reduced(l);
  return out;
}

std::string format_b_word(const BWord& w) {
  if (w.empty()) return "1";
  std::ostringstream os;
  bool first = true;
  for (const BLetter& l : w.letters()) {
    if (!first) os << ' ';
    first = false;
    os << "b_" << l.index;
    if (l.exponent != 1) os << '^' << l.exponent;
  }
  return os.str();
}

CenterVector CenterVector::from_map(const std::map<Int, Int>& m) {
  CenterVector v;
  for (const auto& [r, n] : m) {
    if (n != 0) v.coefficients.emplace_back(r, n);
  }
  return v;
}

std::string format_center(const CenterVector& v) {
  if (v.empty()) return "1";
  std::ostringstream os;
  bool first = true;
  for (const auto& [r, n] : v.coefficients) {
    if (!first) os << ' ';
    first = false;
    os << "d_" << r;
    if (n != 1) os << '^' << n;
  }
  return os.str();
}

BWord to_b_word(const Word& w) {
  Int p = 0;  // running a-exponent of the scanned prefix
  std::vector<BLetter> letters;
  for (const Letter& l : w.letters()) {
    if (l.gen == kA) {
      p += l.exponent;
    } else if (l.gen == kB) {
      letters.push_back(BLetter{-p, l.exponent});
    } else {
      throw std::invalid_argument("word must use only the generators a and b, found '" +
                                  l.gen.name() + "'");
    }
  }
  if (p != 0) {
    throw std::invalid_argument("a-exponent-sum must be zero to rewrite into b-letters");
  }
  return BWord(letters);
}

std::map<Int, Int> b_exponent_sums(const BWord& w1) {
  std::map<Int, Int> sums;
  for (const BLetter& l : w1.letters()) {
    Int& s = sums[l.index];
    s += l.exponent;
    if (s == 0) sums.erase(l.index);
  }
  return sums;
}

CenterVector collect_center(const BWord& w1) {
  if (!b_exponent_sums(w1).empty()) {
    throw std::invalid_argument("collection requires every b-exponent sum to vanish");
  }

  std::vector<BLetter> v = w1.letters();
  std::map<Int, Int> center;
  bool progress = true;
  while (progress) {
    progress = false;
    for (std::size_t k = 0; k + 1 < v.size();) {
      if (v[k].index == v[k + 1].index) {
        v[k].exponent += v[k + 1].exponent;
        v.erase(v.begin() + static_cast<std::ptrdiff_t>(k) + 1);
        if (v[k].exponent == 0) v.erase(v.begin() + static_cast<std::ptrdiff_t>(k));
        progress = true;
      } else if (v[k].index > v[k + 1].index) {
        // b_j^m b_i^n = b_i^n b_j^m c_{i,j}^{m n} with c_{i,j} = d_{j-i}.
        center[v[k].index - v[k + 1].index] += v[k].exponent * v[k + 1].exponent;
        std::swap(v[k], v[k + 1]);
        progress = true;
        ++k;
      } else {
        ++k;
      }
    }
  }
  if (!v.empty()) {
    throw std::logic_error("collection left non-central letters despite zero exponent sums");
  }
  return CenterVector::from_map(center);
}

namespace {

std::vector<Int> positive_divisors_ascending(const Int& n) {
  std::vector<Int> out;
  for (Int d = 1; d * d <= n; ++d) {
    if (n % d == 0) {
      out.push_back(d);
      if (d * d != n) out.push_back(n / d);
    }
  }
  std::sort(out.begin(), out.end());
  return out;
}

// f(m) == r, treating arguments outside a finite table's domain as "no kill
// relator exists for this m".
bool f_hits(const ComputableF& f, const Int& m, const Int& r) {
  try {
    return f.eval(m) == r;
  } catch (const std::out_of_range&) {
    return false;
  }
}

std::string power_name(const Int& r, const Int& n) {
  std::ostringstream os;
  os << "d_" << r << '^' << n;
  return os.str();
}

}  // namespace

OracleAnswer center_is_trivial(const CenterVector& v, const HallConfig& cfg, Budget budget) {
  std::ostringstream cert;
  bool first = true;
  auto note = [&](const std::string& s) {
    if (!first) cert << "; ";
    first = false;
    cert << s;
  };

  if (cfg.variant == HallVariant::V1) {
    for (const auto& [r, n] : v.coefficients) {
      bool killed = false;
      for (const Int& m : positive_divisors_ascending(abs_int(n))) {
        if (f_hits(*cfg.f, m, r)) {
          note(power_name(r, n) + ": divisor " + m.str() + " has f(" + m.str() +
               ") = " + r.str());
          killed = true;
          break;
        }
      }
      if (!killed) {
        return OracleAnswer::no(power_name(r, n) + ": f(m) != " + r.str() +
                                " for every positive divisor m of " + abs_int(n).str());
      }
    }
    return OracleAnswer::yes(cert.str());
  }

  // V2: even exponents die via d_n^2; odd ones need r in the range of f.
  Budget spent = 0;
  bool any_unknown = false;
  for (const auto& [r, n] : v.coefficients) {
    if (n % 2 == 0) {
      note(power_name(r, n) + ": even exponent");
      continue;
    }
    ComputableF::RangeAnswer q = cfg.f->range_membership(r, budget, Int(0));
    spent += q.spent;
    switch (q.verdict) {
      case Verdict::Yes:
        note(power_name(r, n) + ": f(" + q.witness->str() + ") = " + r.str());
        break;
      case Verdict::No: {
        OracleAnswer a = OracleAnswer::no(power_name(r, n) + ": " + r.str() +
                                          " is outside the range of f and the exponent is odd");
        a.budget_spent = spent;
        return a;
      }
      case Verdict::Unknown:
        any_unknown = true;
        break;
    }
  }
  OracleAnswer a = any_unknown ? OracleAnswer::unknown() : OracleAnswer::yes(cert.str());
  a.budget_spent = spent;
  return a;
}

namespace {

void check_alphabet(const Word& w) {
  for (const Letter& l : w.letters()) {
    if (!(l.gen == kA) && !(l.gen == kB)) {
      throw std::invalid_argument("word must use only the generators a and b, found '" +
                                  l.gen.name() + "'");
    }
  }
}

}  // namespace

Triviality wp_v1(const Word& w, const HallConfig& cfg) {
  if (cfg.variant != HallVariant::V1) {
    throw std::invalid_argument("wp_v1 requires a V1 configuration");
  }
  check_alphabet(w);
  if (exponent_sum(w, kA) != 0) return Triviality::Nontrivial;  // a-abelianization
  BWord w1 = to_b_word(w);
  if (!b_exponent_sums(w1).empty()) return Triviality::Nontrivial;
  CenterVector v = collect_center(w1);
  if (v.empty()) return Triviality::Trivial;
  OracleAnswer a = center_is_trivial(v, cfg, 0);
  if (a.is_unknown()) {
    throw std::logic_error("V1 center triviality must be definite");
  }
  return a.is_yes() ? Triviality::Trivial : Triviality::Nontrivial;
}

Triviality wp_v2_semi(const Word& w, const HallConfig& cfg, Budget budget) {
  if (cfg.variant != HallVariant::V2) {
    throw std::invalid_argument("wp_v2_semi requires a V2 configuration");
  }
  check_alphabet(w);
  if (exponent_sum(w, kA) != 0) return Triviality::Nontrivial;
  BWord w1 = to_b_word(w);
  if (!b_exponent_sums(w1).empty()) return Triviality::Nontrivial;
  CenterVector v = collect_center(w1);
  if (v.empty()) return Triviality::Trivial;
  OracleAnswer a = center_is_trivial(v, cfg, budget);
  // Only a definite Yes is surfaced; a table-mode No stays Unknown here so
  // that the answer surface does not depend on the injected test mode.
  return a.is_yes() ? Triviality::Trivial : Triviality::Unknown;
}

Word z_word(const Int& r) {
  if (r < 1) throw std::domain_error("central words z_r require r >= 1");
  Word conj = Word::letter(kA, -r) * Word::letter(kB, 1) * Word::letter(kA, r);
  return commutator(conj, Word::letter(kB, 1));
}

std::string to_string(const OrderBound& b) {
  switch (b.kind) {
    case OrderBound::Kind::Finite:
      return "finite(" + b.value.str() + ")";
    case OrderBound::Kind::UpperBound:
      return "at-most(" + b.value.str() + ")";
    case OrderBound::Kind::Unknown:
      return "unknown";
  }
  return "unknown";
}

OrderBound order_bound_of_d(const Int& r, const HallConfig& cfg, Budget budget) {
  if (r < 1) throw std::domain_error("order bounds for d_r require r >= 1");
  if (cfg.variant == HallVariant::V1) {
    // Only arguments m >= 1 kill a power of d_r (the n = 0 relator is the
    // empty word), so the range search starts at 1.
    ComputableF::RangeAnswer q = cfg.f->range_membership(r, budget, Int(1));
    if (q.verdict == Verdict::Yes) return OrderBound::finite(*q.witness);
    return OrderBound::unknown();
  }
  // V2 kills d_{f(n)} for every n >= 0 outright.
  ComputableF::RangeAnswer q = cfg.f->range_membership(r, budget, Int(0));
  if (q.verdict == Verdict::Yes) return OrderBound::finite(Int(1));
  return OrderBound::upper_bound(Int(2));
}

}  // namespace isocomm
