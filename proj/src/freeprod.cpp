#include "isocomm/freeprod.hpp"

#include <algorithm>
#include <deque>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <utility>

namespace isocomm {

OracleSet& OracleSet::add(std::shared_ptr<const FactorOracle> oracle) {
  if (!oracle) throw std::invalid_argument("null factor oracle");
  by_id_[oracle->id()] = std::move(oracle);
  return *this;
}

const FactorOracle& OracleSet::require(const std::string& id) const {
  auto it = by_id_.find(id);
  if (it == by_id_.end()) {
    throw std::invalid_argument("no oracle registered for factor '" + id + "'");
  }
  return *it->second;
}

std::vector<std::string> OracleSet::ids() const {
  std::vector<std::string> out;
  out.reserve(by_id_.size());
  for (const auto& [id, oracle] : by_id_) out.push_back(id);
  return out;
}

FPWord::FPWord(std::vector<Syllable> syllables) {
  for (Syllable& s : syllables) {
    if (!s.word.empty()) syllables_.push_back(std::move(s));
  }
}

FPWord FPWord::single(std::string factor, Word word) {
  return FPWord({Syllable{std::move(factor), std::move(word)}});
}

std::string format_fp_word(const FPWord& w) {
  if (w.empty()) return "1";
  std::ostringstream os;
  for (const Syllable& s : w.syllables()) {
    os << '(' << s.factor << ": " << format_word(s.word) << ')';
  }
  return os.str();
}

NormalizeOutcome fp_normalize(const FPWord& w, const OracleSet& oracles) {
  std::vector<Syllable> cur = w.syllables();
  for (const Syllable& s : cur) oracles.require(s.factor);  // fail fast

  bool changed = true;
  while (changed) {
    changed = false;
    for (Syllable& s : cur) {
      std::optional<Word> canon = oracles.require(s.factor).canonical_word(s.word);
      if (canon && !(*canon == s.word)) {
        s.word = std::move(*canon);
        changed = true;
      }
    }

    std::vector<Syllable> merged;
    for (Syllable& s : cur) {
      if (s.word.empty()) {
        changed = true;
        continue;
      }
      if (!merged.empty() && merged.back().factor == s.factor) {
        merged.back().word = merged.back().word * s.word;
        changed = true;
        if (merged.back().word.empty()) merged.pop_back();
        continue;
      }
      merged.push_back(std::move(s));
    }
    cur = std::move(merged);

    std::vector<Syllable> kept;
    for (Syllable& s : cur) {
      if (oracles.require(s.factor).is_trivial(s.word) == Triviality::Trivial) {
        changed = true;
        continue;
      }
      kept.push_back(std::move(s));
    }
    cur = std::move(kept);
  }

  bool certified = true;
  for (const Syllable& s : cur) {
    if (oracles.require(s.factor).is_trivial(s.word) != Triviality::Nontrivial) {
      certified = false;
    }
  }
  return NormalizeOutcome{FPWord(std::move(cur)), certified};
}

OracleAnswer fp_is_trivial(const FPWord& w, const OracleSet& oracles) {
  NormalizeOutcome n = fp_normalize(w, oracles);
  if (n.word.empty()) return OracleAnswer::yes();
  if (n.certified) return OracleAnswer::no("normal form " + format_fp_word(n.word));
  return OracleAnswer::unknown();
}

NormalizeOutcome fp_multiply(const FPWord& u, const FPWord& v, const OracleSet& oracles) {
  std::vector<Syllable> cat = u.syllables();
  cat.insert(cat.end(), v.syllables().begin(), v.syllables().end());
  return fp_normalize(FPWord(std::move(cat)), oracles);
}

FPWord fp_inverse(const FPWord& w) {
  std::vector<Syllable> out;
  const auto& s = w.syllables();
  for (auto it = s.rbegin(); it != s.rend(); ++it) {
    out.push_back(Syllable{it->factor, it->word.inverse()});
  }
  return FPWord(std::move(out));
}

namespace {

// Syllable-level cyclic reduction of a certified normal form. Clears `ok`
// when a needed triviality query is Unknown.
std::vector<Syllable> cyclic_syllable_reduce(std::vector<Syllable> s, const OracleSet& oracles,
                                             bool& ok) {
  while (s.size() >= 2 && s.front().factor == s.back().factor) {
    Word prod = s.back().word * s.front().word;
    std::string factor = s.front().factor;
    s.erase(s.begin());
    s.pop_back();
    if (prod.empty()) continue;
    Triviality t = oracles.require(factor).is_trivial(prod);
    if (t == Triviality::Trivial) continue;
    if (t == Triviality::Unknown) {
      ok = false;
      return s;
    }
    s.push_back(Syllable{std::move(factor), std::move(prod)});
    break;  // alternation guarantees front/back factors now differ
  }
  return s;
}

}  // namespace

OracleAnswer fp_conjugate(const FPWord& u, const FPWord& v, const OracleSet& oracles,
                          Budget budget) {
  NormalizeOutcome nu = fp_normalize(u, oracles);
  NormalizeOutcome nv = fp_normalize(v, oracles);
  if (!nu.certified || !nv.certified) return OracleAnswer::unknown();

  bool ok = true;
  std::vector<Syllable> cu = cyclic_syllable_reduce(nu.word.syllables(), oracles, ok);
  std::vector<Syllable> cv = cyclic_syllable_reduce(nv.word.syllables(), oracles, ok);
  if (!ok) return OracleAnswer::unknown();

  if (cu.empty() && cv.empty()) return OracleAnswer::yes("both words are trivial");
  if (cu.empty() != cv.empty()) {
    return OracleAnswer::no("only one of the words is trivial");
  }
  if (cu.size() == 1 && cv.size() == 1) {
    if (cu[0].factor != cv[0].factor) {
      return OracleAnswer::no("single syllables from different factors");
    }
    return oracles.require(cu[0].factor).conjugate_in_factor(cu[0].word, cv[0].word, budget);
  }
  if (cu.size() != cv.size()) {
    std::ostringstream os;
    os << "cyclic syllable lengths differ (" << cu.size() << " vs " << cv.size() << ')';
    return OracleAnswer::no(os.str());
  }

  // Both have syllable length >= 2: conjugacy is cyclic rotation with
  // factor-wise equal syllables.
  bool any_unknown = false;
  for (std::size_t rot = 0; rot < cv.size(); ++rot) {
    bool mismatch = false;
    bool unresolved = false;
    for (std::size_t i = 0; i < cu.size() && !mismatch; ++i) {
      const Syllable& a = cu[i];
      const Syllable& b = cv[(i + rot) % cv.size()];
      if (a.factor != b.factor) {
        mismatch = true;
        break;
      }
      switch (oracles.require(a.factor).is_trivial(a.word * b.word.inverse())) {
        case Triviality::Trivial:
          break;
        case Triviality::Nontrivial:
          mismatch = true;
          break;
        case Triviality::Unknown:
          unresolved = true;
          break;
      }
    }
    if (!mismatch && !unresolved) {
      std::ostringstream os;
      os << "cyclic rotation by " << rot;
      return OracleAnswer::yes(os.str());
    }
    if (!mismatch && unresolved) any_unknown = true;
  }
  if (any_unknown) return OracleAnswer::unknown();
  return OracleAnswer::no("no cyclic rotation matches");
}

FPWord apply_twist(const Twist& t, const FPWord& w) {
  if (t.conjugator.empty()) return w;
  std::vector<Syllable> out;
  out.reserve(w.size());
  Word inv = t.conjugator.inverse();
  for (const Syllable& s : w.syllables()) {
    if (s.factor == t.factor) {
      out.push_back(Syllable{s.factor, inv * s.word * t.conjugator});
    } else {
      out.push_back(s);
    }
  }
  return FPWord(std::move(out));
}

Twist twist_power(const Twist& t, const Int& k) {
  return Twist{t.factor, t.conjugator.pow(k)};
}

OracleAnswer twist_is_inner(const Twist& t, const OracleSet& oracles, Budget budget) {
  return oracles.require(t.factor).is_central(t.conjugator, budget);
}

TableGroup::TableGroup(std::vector<std::vector<std::size_t>> table,
                       std::map<std::string, std::size_t> generators)
    : table_(std::move(table)), generators_(std::move(generators)) {
  const std::size_t n = table_.size();
  if (n == 0) throw std::invalid_argument("multiplication table must be nonempty");
  for (const auto& row : table_) {
    if (row.size() != n) throw std::invalid_argument("multiplication table must be square");
    for (std::size_t e : row) {
      if (e >= n) throw std::invalid_argument("multiplication table entry out of range");
    }
  }
  for (std::size_t i = 0; i < n; ++i) {
    if (table_[0][i] != i || table_[i][0] != i) {
      throw std::invalid_argument("element 0 must be the identity");
    }
  }
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      for (std::size_t k = 0; k < n; ++k) {
        if (table_[table_[i][j]][k] != table_[i][table_[j][k]]) {
          throw std::invalid_argument("multiplication table is not associative");
        }
      }
    }
  }
  inverse_.assign(n, n);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      if (table_[i][j] == 0 && table_[j][i] == 0) {
        inverse_[i] = j;
        break;
      }
    }
    if (inverse_[i] == n) throw std::invalid_argument("element without inverse");
  }
  for (const auto& [name, value] : generators_) {
    GeneratorSymbol check{name};  // validates the name
    if (value >= n) throw std::invalid_argument("generator value out of range");
  }
}

TableGroup TableGroup::cyclic(std::size_t n, const std::string& generator) {
  if (n == 0) throw std::invalid_argument("cyclic group order must be positive");
  std::vector<std::vector<std::size_t>> table(n, std::vector<std::size_t>(n));
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) table[i][j] = (i + j) % n;
  }
  return TableGroup(std::move(table), {{generator, n > 1 ? std::size_t(1) : std::size_t(0)}});
}

TableGroup TableGroup::symmetric3() {
  // Permutations of {0,1,2}; composition reads left to right.
  const std::vector<std::vector<std::size_t>> perms = {
      {0, 1, 2}, {1, 0, 2}, {1, 2, 0}, {2, 0, 1}, {0, 2, 1}, {2, 1, 0}};
  auto index_of = [&](const std::vector<std::size_t>& p) {
    for (std::size_t i = 0; i < perms.size(); ++i) {
      if (perms[i] == p) return i;
    }
    throw std::logic_error("not a permutation of three points");
  };
  std::vector<std::vector<std::size_t>> table(6, std::vector<std::size_t>(6));
  for (std::size_t i = 0; i < 6; ++i) {
    for (std::size_t j = 0; j < 6; ++j) {
      std::vector<std::size_t> comp(3);
      for (std::size_t x = 0; x < 3; ++x) comp[x] = perms[j][perms[i][x]];
      table[i][j] = index_of(comp);
    }
  }
  return TableGroup(std::move(table), {{"s", 1}, {"r", 2}});
}

std::size_t TableGroup::evaluate(const Word& w) const {
  std::size_t acc = 0;
  for (const Letter& l : w.letters()) {
    auto it = generators_.find(l.gen.name());
    if (it == generators_.end()) {
      throw std::invalid_argument("generator '" + l.gen.name() + "' is not in the table");
    }
    std::size_t base = it->second;
    // Order of the element, to reduce the exponent.
    std::size_t ord = 1;
    for (std::size_t x = base; x != 0; x = table_[x][base]) ++ord;
    Int reduced = ((l.exponent % Int(ord)) + Int(ord)) % Int(ord);
    std::size_t e = static_cast<std::size_t>(static_cast<std::uint64_t>(reduced));
    for (std::size_t k = 0; k < e; ++k) acc = table_[acc][base];
  }
  return acc;
}

bool TableGroup::central(std::size_t x) const {
  for (std::size_t y = 0; y < size(); ++y) {
    if (table_[x][y] != table_[y][x]) return false;
  }
  return true;
}

bool TableGroup::conjugate(std::size_t x, std::size_t y) const {
  for (std::size_t t = 0; t < size(); ++t) {
    if (table_[table_[inverse_[t]][x]][t] == y) return true;
  }
  return false;
}

TableOracle::TableOracle(std::string id, TableGroup group)
    : id_(std::move(id)), group_(std::move(group)), canonical_(group_.size()) {
  // Breadth-first search from the identity over right multiplication by the
  // generators, in name order: shortest positive words, deterministic ties.
  std::vector<bool> seen(group_.size(), false);
  seen[0] = true;
  std::deque<std::size_t> queue{0};
  while (!queue.empty()) {
    std::size_t x = queue.front();
    queue.pop_front();
    for (const auto& [name, value] : group_.generators()) {
      std::size_t y = group_.mul(x, value);
      if (!seen[y]) {
        seen[y] = true;
        canonical_[y] = canonical_[x] * Word::letter(GeneratorSymbol{name}, Int(1));
        queue.push_back(y);
      }
    }
  }
}

Triviality TableOracle::is_trivial(const Word& w) const {
  return group_.evaluate(w) == 0 ? Triviality::Trivial : Triviality::Nontrivial;
}

std::optional<Word> TableOracle::canonical_word(const Word& w) const {
  std::size_t x = group_.evaluate(w);
  if (x != 0 && canonical_[x].empty()) return std::nullopt;  // outside the generated subgroup
  return canonical_[x];
}

OracleAnswer TableOracle::is_central(const Word& w, Budget /*budget*/) const {
  std::size_t x = group_.evaluate(w);
  if (group_.central(x)) return OracleAnswer::yes("element " + std::to_string(x) + " is central");
  for (std::size_t y = 0; y < group_.size(); ++y) {
    if (group_.mul(x, y) != group_.mul(y, x)) {
      return OracleAnswer::no("element " + std::to_string(x) +
                              " does not commute with element " + std::to_string(y));
    }
  }
  return OracleAnswer::no("not central");
}

OracleAnswer TableOracle::conjugate_in_factor(const Word& u, const Word& v,
                                              Budget /*budget*/) const {
  std::size_t x = group_.evaluate(u);
  std::size_t y = group_.evaluate(v);
  for (std::size_t t = 0; t < group_.size(); ++t) {
    if (group_.mul(group_.mul(group_.inverse(t), x), t) == y) {
      return OracleAnswer::yes("conjugating element " + std::to_string(t));
    }
  }
  return OracleAnswer::no("elements lie in different conjugacy classes");
}

HallFactorOracle::HallFactorOracle(std::string id, HallConfig cfg, Budget wp_budget)
    : id_(std::move(id)), cfg_(std::move(cfg)), wp_budget_(wp_budget) {}

Triviality HallFactorOracle::decide(const Word& w, Budget budget) const {
  return cfg_.variant == HallVariant::V1 ? wp_v1(w, cfg_) : wp_v2_semi(w, cfg_, budget);
}

Triviality HallFactorOracle::is_trivial(const Word& w) const { return decide(w, wp_budget_); }

namespace {

bool structurally_central(const Word& w) {
  const GeneratorSymbol a{"a"};
  return exponent_sum(w, a) == 0 && b_exponent_sums(to_b_word(w)).empty();
}

}  // namespace

OracleAnswer HallFactorOracle::is_central(const Word& w, Budget budget) const {
  const GeneratorSymbol a{"a"};
  if (exponent_sum(w, a) != 0) {
    return OracleAnswer::no("nonzero a-exponent-sum: conjugation moves b");
  }
  if (!b_exponent_sums(to_b_word(w)).empty()) {
    return OracleAnswer::no("nonzero b-exponent sum: conjugation moves a");
  }
  // Central here; the emulated factor is centerless, so the stand-in test
  // is triviality of the conjugator.
  switch (decide(w, budget)) {
    case Triviality::Trivial:
      return OracleAnswer::yes("trivial conjugator");
    case Triviality::Nontrivial:
      return OracleAnswer::no("certified nontrivial; the emulated factor is centerless");
    case Triviality::Unknown:
      return OracleAnswer::unknown();
  }
  return OracleAnswer::unknown();
}

OracleAnswer HallFactorOracle::conjugate_in_factor(const Word& u, const Word& v,
                                                   Budget budget) const {
  Triviality same = decide(u * v.inverse(), budget);
  if (same == Triviality::Trivial) return OracleAnswer::yes("equal in the factor");
  if (same == Triviality::Nontrivial &&
      (structurally_central(u) || structurally_central(v))) {
    return OracleAnswer::no("a central element is conjugate only to itself");
  }
  return OracleAnswer::unknown();
}

}  // namespace isocomm
