#include "isocomm/tietze.hpp"

#include <algorithm>
#include <map>
#include <set>
#include <utility>

namespace isocomm {

namespace {

// Freely reduced conjugator words of length <= cap over the generators,
// in deterministic order: by length, then lexicographically by
// (generator index, sign) with +1 before -1.
std::vector<Word> conjugator_words(const std::vector<GeneratorSymbol>& gens, Budget cap) {
  std::vector<Word> out{Word{}};
  std::vector<Word> frontier{Word{}};
  for (Budget len = 1; len <= cap; ++len) {
    std::vector<Word> next;
    for (const auto& w : frontier) {
      for (const auto& g : gens) {
        for (int sign : {1, -1}) {
          Word cand = w * Word::letter(g, sign);
          if (cand.length() == Int(len)) next.push_back(cand);
        }
      }
    }
    out.insert(out.end(), next.begin(), next.end());
    frontier = std::move(next);
  }
  return out;
}

// All nonempty freely reduced consequences of `relators` expressible as a
// product of at most `depth` conjugated relators c^-1 r^s c, with result
// length <= max_len, sorted by (length, serialization). Level-by-level
// breadth-first products with dedup keep the state space at words of
// length <= 2 * max_len.
std::vector<Word> bounded_consequences(const std::vector<Word>& relators,
                                       const std::vector<GeneratorSymbol>& gens, Budget depth,
                                       Budget max_len) {
  std::vector<Word> factors;
  for (const auto& r : relators) {
    if (r.empty()) continue;
    for (int sign : {1, -1}) {
      Word base = sign > 0 ? r : r.inverse();
      for (const auto& c : conjugator_words(gens, std::min<Budget>(depth, 2))) {
        factors.push_back(conjugate(base, c));
      }
    }
  }
  std::sort(factors.begin(), factors.end(), [](const Word& a, const Word& b) {
    return format_word(a) < format_word(b);
  });
  factors.erase(std::unique(factors.begin(), factors.end()), factors.end());

  const Int prune_len = Int(2 * max_len);
  std::set<std::string> seen;
  std::vector<Word> frontier{Word{}};
  std::vector<Word> results;

  for (Budget k = 0; k < depth; ++k) {
    std::vector<Word> next;
    for (const auto& w : frontier) {
      for (const auto& f : factors) {
        Word prod = w * f;
        if (prod.length() > prune_len) continue;
        if (!seen.insert(format_word(prod)).second) continue;
        next.push_back(prod);
        if (!prod.empty() && prod.length() <= Int(max_len)) results.push_back(prod);
      }
    }
    if (next.empty()) break;
    frontier = std::move(next);
  }
  std::sort(results.begin(), results.end(), [](const Word& a, const Word& b) {
    if (a.length() != b.length()) return a.length() < b.length();
    return format_word(a) < format_word(b);
  });
  return results;
}

}  // namespace

std::vector<FinitePresentation> tietze_neighbors(const FinitePresentation& p, Budget budget) {
  std::vector<FinitePresentation> out;
  std::set<std::string> emitted{serialize_presentation(p)};
  auto emit = [&](FinitePresentation q) {
    std::string key = serialize_presentation(q);
    if (emitted.insert(key).second) out.push_back(std::move(q));
  };

  const auto& gens = p.generators();
  const auto& rels = p.relators();

  // Relator removals: r_i must be derivable from the remaining relators.
  for (std::size_t i = 0; i < rels.size(); ++i) {
    std::vector<Word> others;
    for (std::size_t j = 0; j < rels.size(); ++j) {
      if (j != i) others.push_back(rels[j]);
    }
    bool removable = rels[i].empty();
    if (!removable && rels[i].length() <= Int(budget)) {
      auto cons = bounded_consequences(others, gens, budget, budget);
      removable = std::find(cons.begin(), cons.end(), rels[i]) != cons.end() ||
                  std::find(cons.begin(), cons.end(), rels[i].inverse()) != cons.end();
    }
    if (removable) {
      std::vector<Word> reduced = others;
      emit(FinitePresentation(gens, std::move(reduced)));
    }
  }

  // Relator additions: new consequences of the full relator list.
  {
    auto candidates = bounded_consequences(rels, gens, budget, budget);
    for (const auto& w : candidates) {
      if (std::find(rels.begin(), rels.end(), w) != rels.end()) continue;
      std::vector<Word> extended = rels;
      extended.push_back(w);
      emit(FinitePresentation(gens, std::move(extended)));
    }
  }

  // Generator additions: fresh generator g with defining relator g v^-1.
  {
    std::set<std::string> taken;
    for (const auto& g : gens) taken.insert(g.name());
    std::string fresh;
    for (const char* cand : {"y", "z", "w", "v", "u", "s", "p", "q"}) {
      if (!taken.count(cand)) {
        fresh = cand;
        break;
      }
    }
    for (int k = 1; fresh.empty(); ++k) {
      std::string cand = "g_" + std::to_string(k);
      if (!taken.count(cand)) fresh = cand;
    }
    GeneratorSymbol g{fresh};
    for (const auto& v : conjugator_words(gens, std::min<Budget>(budget, 2))) {
      std::vector<GeneratorSymbol> extended_gens = gens;
      extended_gens.push_back(g);
      std::vector<Word> extended_rels = rels;
      extended_rels.push_back(Word::letter(g, 1) * v.inverse());
      emit(FinitePresentation(std::move(extended_gens), std::move(extended_rels)));
    }
  }

  // Generator removals: relator j pins g (single run, exponent +-1); then
  // g equals a word in the other generators and can be substituted away.
  for (std::size_t j = 0; j < rels.size(); ++j) {
    for (const auto& g : gens) {
      const auto& ls = rels[j].letters();
      std::size_t hits = 0;
      std::size_t at = 0;
      for (std::size_t k = 0; k < ls.size(); ++k) {
        if (ls[k].gen == g) {
          ++hits;
          at = k;
        }
      }
      if (hits != 1 || abs_int(ls[at].exponent) != 1) continue;

      // relator = p g^s q  =>  g^s = p^-1 q^-1  =>  g = (p^-1 q^-1)^s.
      Word prefix(std::vector<Letter>(ls.begin(), ls.begin() + at));
      Word suffix(std::vector<Letter>(ls.begin() + at + 1, ls.end()));
      Word value = prefix.inverse() * suffix.inverse();
      if (ls[at].exponent < 0) value = value.inverse();

      auto substitute = [&](const Word& w) {
        Word acc;
        for (const auto& l : w.letters()) {
          if (l.gen == g) {
            acc = acc * value.pow(l.exponent);
          } else {
            acc = acc * Word::letter(l.gen, l.exponent);
          }
        }
        return acc;
      };

      std::vector<GeneratorSymbol> remaining;
      for (const auto& h : gens) {
        if (!(h == g)) remaining.push_back(h);
      }
      std::vector<Word> rewritten;
      for (std::size_t k = 0; k < rels.size(); ++k) {
        if (k != j) rewritten.push_back(substitute(rels[k]));
      }
      emit(FinitePresentation(std::move(remaining), std::move(rewritten)));
    }
  }

  return out;
}

}  // namespace isocomm
