#pragma once

#include <map>
#include <string>
#include <string_view>

#include "isocomm/freeprod.hpp"
#include "isocomm/ints.hpp"
#include "isocomm/oracle.hpp"
#include "isocomm/presentation.hpp"
#include "isocomm/word.hpp"

namespace isocomm {

// A mapping torus of a free product: the extension of the base group by one
// stable letter t acting as the given twist. As a set it is (base group) x Z;
// the product is (g, n)(g', m) = (g . twist^n(g'), n + m).
class TorusSpec {
 public:
  // The twist's factor must be registered in the oracle set.
  TorusSpec(OracleSet oracles, Twist twist);

  const OracleSet& oracles() const { return oracles_; }
  const Twist& twist() const { return twist_; }

  // Specs agree when they have the same factor ids and the same twist
  // (conjugator compared as a free word).
  friend bool operator==(const TorusSpec& a, const TorusSpec& b);

 private:
  OracleSet oracles_;
  Twist twist_;
};

// One element (g, n). The base part is kept in normal form: build elements
// through make_torus_element or the arithmetic below, which normalize eagerly
// so that equality is plain field comparison.
struct TorusElement {
  FPWord g;
  Int n;

  friend bool operator==(const TorusElement&, const TorusElement&) = default;
};

// Normalizes g against the spec's factor oracles.
// Throws std::invalid_argument if g uses a factor id the spec lacks.
TorusElement make_torus_element(const TorusSpec& spec, FPWord g, Int n);

// The identity (1, 0).
TorusElement t_identity();

// (g, n)(g', m) = (g . twist^n(g'), n + m), normalized.
TorusElement t_mul(const TorusSpec& spec, const TorusElement& e1, const TorusElement& e2);

// (g, n)^-1 = (twist^-n(g^-1), -n), normalized.
TorusElement t_inv(const TorusSpec& spec, const TorusElement& e);

// Word problem: No when n != 0 (the Z-projection is a homomorphism);
// otherwise delegates to base-group triviality. Definite over factors with a
// decidable word problem, three-valued otherwise. Triviality budgets are a
// property of each factor oracle (fixed at oracle construction); the budget
// argument here is reported back on Unknown answers but controls nothing.
OracleAnswer t_wp(const TorusSpec& spec, const TorusElement& e, Budget budget);

// Presentation of the mapping torus from (possibly truncated) factor
// presentations. factor_a must present the twist's factor and contain every
// generator of the twist conjugator z. Generators: those of factor_a, then
// factor_b, then the fresh stable letter t. Relators, in order: factor_a's,
// factor_b's, then t^-1 x^-1 t z^-1 x z per factor_a generator x and
// t^-1 y^-1 t y per factor_b generator y.
FinitePresentation torus_presentation(const TorusSpec& spec, const FinitePresentation& factor_a,
                                      const FinitePresentation& factor_b);

// The direct product of the mapping torus with a cyclic group of order r + 1:
// torus_presentation plus a fresh generator u, commutation relators
// u^-1 g^-1 u g for every prior generator g (including t), and u^(r+1).
// Requires r >= 0.
FinitePresentation k_presentation(const TorusSpec& spec, const Int& r,
                                  const FinitePresentation& factor_a,
                                  const FinitePresentation& factor_b);

// The index-k congruence subgroup: the preimage of kZ under the projection
// to Z is again a mapping torus of the same base group, twisted by the k-th
// power of the twist. Requires k >= 1.
TorusSpec finite_index_subgroup(const TorusSpec& spec, const Int& k);

// Collapses a twist whose conjugator the base group certifies trivial to the
// identity twist (empty conjugator); otherwise returns the spec unchanged.
// Normalizes commensurability witnesses so equal extensions compare equal.
TorusSpec reduce_twist(const TorusSpec& spec);

// Textual form "(word ; n)". The base part is printed as the plain
// concatenation of the syllable words ("1" when empty); this is faithful
// whenever the factor alphabets are disjoint, which holds for every
// instantiation shipped here.
std::string format_torus_element(const TorusElement& e);

// Parses "(word ; n)". generator_factor maps each generator name to its
// factor id; consecutive letters from the same factor become one syllable.
// The base part is returned raw — pass it through make_torus_element to
// normalize. Throws ParseError on malformed input or unmapped generators.
TorusElement parse_torus_element(std::string_view text,
                                 const std::map<std::string, std::string>& generator_factor);

}  // namespace isocomm
