#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "isocomm/word.hpp"

namespace isocomm {

// A finite group presentation: an ordered generator list and an ordered
// relator list. Relators are freely reduced (Word invariant) and may only
// use declared generators; generator names are unique.
class FinitePresentation {
 public:
  FinitePresentation(std::vector<GeneratorSymbol> generators, std::vector<Word> relators);

  const std::vector<GeneratorSymbol>& generators() const { return generators_; }
  const std::vector<Word>& relators() const { return relators_; }

  bool has_generator(const GeneratorSymbol& g) const;

  friend bool operator==(const FinitePresentation&, const FinitePresentation&) = default;

 private:
  std::vector<GeneratorSymbol> generators_;
  std::vector<Word> relators_;
};

// Presentation file format:
//   # comment lines start with '#', blank lines are ignored
//   generators: a b t        (exactly one such line, before any relator)
//   relator: <word>          (zero or more, in the word grammar)
// Serialization is canonical: optional caller-supplied '#' header lines,
// the generator line, then one relator line per relator in order, each word
// in canonical form, single spaces, trailing newline.
std::string serialize_presentation(const FinitePresentation& p,
                                   const std::vector<std::string>& header_comments = {});

FinitePresentation parse_presentation(std::string_view text);

// Disjoint union of generators (second presentation's colliding names get
// deterministic fresh suffixes _1, _2, ...) and concatenated relators.
FinitePresentation free_product(const FinitePresentation& a, const FinitePresentation& b);

// Free product plus a commuting relator [g, h] for every generator pair
// (g from a, h from b), in declaration order.
FinitePresentation direct_product(const FinitePresentation& a, const FinitePresentation& b);

}  // namespace isocomm
