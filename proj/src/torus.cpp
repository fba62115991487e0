#include "isocomm/torus.hpp"

#include <algorithm>
#include <cctype>
#include <set>
#include <sstream>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace isocomm {

namespace {

std::string_view trim(std::string_view s) {
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
  return s;
}

}  // namespace

TorusSpec::TorusSpec(OracleSet oracles, Twist twist)
    : oracles_(std::move(oracles)), twist_(std::move(twist)) {
  oracles_.require(twist_.factor);
}

bool operator==(const TorusSpec& a, const TorusSpec& b) {
  return a.oracles_.ids() == b.oracles_.ids() && a.twist_ == b.twist_;
}

TorusElement make_torus_element(const TorusSpec& spec, FPWord g, Int n) {
  return TorusElement{fp_normalize(std::move(g), spec.oracles()).word, std::move(n)};
}

TorusElement t_identity() { return TorusElement{FPWord(), Int(0)}; }

TorusElement t_mul(const TorusSpec& spec, const TorusElement& e1, const TorusElement& e2) {
  FPWord shifted = apply_twist(twist_power(spec.twist(), e1.n), e2.g);
  return TorusElement{fp_multiply(e1.g, shifted, spec.oracles()).word, e1.n + e2.n};
}

TorusElement t_inv(const TorusSpec& spec, const TorusElement& e) {
  FPWord shifted = apply_twist(twist_power(spec.twist(), -e.n), fp_inverse(e.g));
  return TorusElement{fp_normalize(std::move(shifted), spec.oracles()).word, -e.n};
}

OracleAnswer t_wp(const TorusSpec& spec, const TorusElement& e, Budget budget) {
  if (e.n != 0) {
    return OracleAnswer::no("stable-letter exponent " + e.n.str() + " is nonzero");
  }
  OracleAnswer base = fp_is_trivial(e.g, spec.oracles());
  if (base.is_unknown()) return OracleAnswer::unknown(budget);
  return base;
}

namespace {

// Shared validation for the presentation builders: disjoint factor alphabets,
// fresh name for the new generator, conjugator contained in the first factor.
void check_presentation_inputs(const TorusSpec& spec, const FinitePresentation& factor_a,
                               const FinitePresentation& factor_b) {
  for (const GeneratorSymbol& g : factor_b.generators()) {
    if (factor_a.has_generator(g)) {
      throw std::invalid_argument("factor presentations share the generator '" + g.name() + "'");
    }
  }
  for (const Letter& l : spec.twist().conjugator.letters()) {
    if (!factor_a.has_generator(l.gen)) {
      throw std::invalid_argument("twist conjugator uses '" + l.gen.name() +
                                  "', which the first factor presentation lacks");
    }
  }
}

GeneratorSymbol fresh_name(const char* name, const std::vector<GeneratorSymbol>& taken) {
  GeneratorSymbol g{name};
  if (std::find(taken.begin(), taken.end(), g) != taken.end()) {
    throw std::invalid_argument(std::string("generator name '") + name +
                                "' is reserved for the extension");
  }
  return g;
}

}  // namespace

FinitePresentation torus_presentation(const TorusSpec& spec, const FinitePresentation& factor_a,
                                      const FinitePresentation& factor_b) {
  check_presentation_inputs(spec, factor_a, factor_b);

  std::vector<GeneratorSymbol> gens = factor_a.generators();
  gens.insert(gens.end(), factor_b.generators().begin(), factor_b.generators().end());
  GeneratorSymbol t = fresh_name("t", gens);
  gens.push_back(t);

  const Word tw = Word::letter(t, Int(1));
  const Word& z = spec.twist().conjugator;

  std::vector<Word> relators = factor_a.relators();
  relators.insert(relators.end(), factor_b.relators().begin(), factor_b.relators().end());
  for (const GeneratorSymbol& x : factor_a.generators()) {
    Word xw = Word::letter(x, Int(1));
    relators.push_back(tw.inverse() * xw.inverse() * tw * z.inverse() * xw * z);
  }
  for (const GeneratorSymbol& y : factor_b.generators()) {
    Word yw = Word::letter(y, Int(1));
    relators.push_back(tw.inverse() * yw.inverse() * tw * yw);
  }
  return FinitePresentation(std::move(gens), std::move(relators));
}

FinitePresentation k_presentation(const TorusSpec& spec, const Int& r,
                                  const FinitePresentation& factor_a,
                                  const FinitePresentation& factor_b) {
  if (r < 0) throw std::domain_error("cyclic direct factor needs r >= 0");
  FinitePresentation base = torus_presentation(spec, factor_a, factor_b);

  std::vector<GeneratorSymbol> gens = base.generators();
  GeneratorSymbol u = fresh_name("u", gens);
  const Word uw = Word::letter(u, Int(1));

  std::vector<Word> relators = base.relators();
  for (const GeneratorSymbol& g : base.generators()) {
    relators.push_back(commutator(uw, Word::letter(g, Int(1))));
  }
  relators.push_back(Word::letter(u, r + 1));
  gens.push_back(u);
  return FinitePresentation(std::move(gens), std::move(relators));
}

TorusSpec finite_index_subgroup(const TorusSpec& spec, const Int& k) {
  if (k < 1) throw std::domain_error("subgroup index must be >= 1");
  return TorusSpec(spec.oracles(), twist_power(spec.twist(), k));
}

TorusSpec reduce_twist(const TorusSpec& spec) {
  FPWord conj = FPWord::single(spec.twist().factor, spec.twist().conjugator);
  if (fp_is_trivial(conj, spec.oracles()).is_yes()) {
    return TorusSpec(spec.oracles(), Twist{spec.twist().factor, Word()});
  }
  return spec;
}

std::string format_torus_element(const TorusElement& e) {
  std::ostringstream out;
  out << '(';
  if (e.g.empty()) {
    out << '1';
  } else {
    bool first = true;
    for (const Syllable& s : e.g.syllables()) {
      if (!first) out << ' ';
      first = false;
      out << format_word(s.word);
    }
  }
  out << " ; " << e.n << ')';
  return out.str();
}

namespace {

FPWord parse_tagged_base(std::string_view body) {
  std::vector<Syllable> syllables;
  std::string_view rest = trim(body);
  while (!rest.empty()) {
    if (rest.front() != '(') {
      throw ParseError("expected '(' to open a factor-tagged syllable");
    }
    std::size_t close = rest.find(')');
    if (close == std::string_view::npos) {
      throw ParseError("unterminated factor-tagged syllable");
    }
    std::string_view group = rest.substr(1, close - 1);
    std::size_t colon = group.find(':');
    if (colon == std::string_view::npos) {
      throw ParseError("factor-tagged syllable needs the form '(id: word)'");
    }
    std::string factor{trim(group.substr(0, colon))};
    if (factor.empty()) throw ParseError("empty factor id in tagged syllable");
    std::string_view word_text = trim(group.substr(colon + 1));
    Word w = (word_text == "1") ? Word() : parse_word(word_text);
    syllables.push_back(Syllable{std::move(factor), std::move(w)});
    rest = trim(rest.substr(close + 1));
  }
  return FPWord(std::move(syllables));
}

FPWord parse_plain_base(std::string_view body,
                        const std::map<std::string, std::string>& generator_factor) {
  Word flat = parse_word(body);
  std::vector<Syllable> syllables;
  for (const Letter& l : flat.letters()) {
    auto it = generator_factor.find(l.gen.name());
    if (it == generator_factor.end()) {
      throw ParseError("generator '" + l.gen.name() + "' is not assigned to a factor");
    }
    Word piece = Word::letter(l.gen, l.exponent);
    if (!syllables.empty() && syllables.back().factor == it->second) {
      syllables.back().word = syllables.back().word * piece;
    } else {
      syllables.push_back(Syllable{it->second, std::move(piece)});
    }
  }
  return FPWord(std::move(syllables));
}

}  // namespace

TorusElement parse_torus_element(std::string_view text,
                                 const std::map<std::string, std::string>& generator_factor) {
  std::string_view s = trim(text);
  if (s.size() < 2 || s.front() != '(' || s.back() != ')') {
    throw ParseError("torus element must have the form '(word ; n)'");
  }
  std::string_view inner = s.substr(1, s.size() - 2);
  std::size_t semi = inner.rfind(';');
  if (semi == std::string_view::npos) {
    throw ParseError("torus element needs a ';' before the integer part");
  }
  std::string_view base_text = trim(inner.substr(0, semi));
  std::string_view n_text = trim(inner.substr(semi + 1));
  if (n_text.empty()) throw ParseError("missing integer part in torus element");
  Int n;
  try {
    n = Int(std::string(n_text));
  } catch (const std::runtime_error&) {
    throw ParseError("malformed integer part '" + std::string(n_text) + "'");
  }

  FPWord g;
  if (base_text.empty() || base_text == "1") {
    g = FPWord();
  } else if (base_text.front() == '(') {
    g = parse_tagged_base(base_text);
  } else {
    g = parse_plain_base(base_text, generator_factor);
  }
  return TorusElement{std::move(g), std::move(n)};
}

}  // namespace isocomm
