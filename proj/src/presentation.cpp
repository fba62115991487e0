#include "isocomm/presentation.hpp"

#include <algorithm>
#include <set>
#include <sstream>
#include <utility>

namespace isocomm {

FinitePresentation::FinitePresentation(std::vector<GeneratorSymbol> generators,
                                       std::vector<Word> relators)
    : generators_(std::move(generators)), relators_(std::move(relators)) {
  std::set<std::string> seen;
  for (const auto& g : generators_) {
    if (!seen.insert(g.name()).second) {
      throw std::invalid_argument("duplicate generator '" + g.name() + "'");
    }
  }
  for (const auto& r : relators_) {
    for (const auto& l : r.letters()) {
      if (!seen.count(l.gen.name())) {
        throw std::invalid_argument("relator uses undeclared generator '" + l.gen.name() + "'");
      }
    }
  }
}

bool FinitePresentation::has_generator(const GeneratorSymbol& g) const {
  return std::find(generators_.begin(), generators_.end(), g) != generators_.end();
}

std::string serialize_presentation(const FinitePresentation& p,
                                   const std::vector<std::string>& header_comments) {
  std::ostringstream os;
  for (const auto& c : header_comments) os << "# " << c << '\n';
  os << "generators:";
  for (const auto& g : p.generators()) os << ' ' << g.name();
  os << '\n';
  for (const auto& r : p.relators()) os << "relator: " << format_word(r) << '\n';
  return os.str();
}

FinitePresentation parse_presentation(std::string_view text) {
  std::vector<GeneratorSymbol> gens;
  std::vector<std::string> relator_texts;
  bool have_generators = false;

  std::size_t pos = 0;
  std::size_t line_no = 0;
  while (pos <= text.size()) {
    std::size_t eol = text.find('\n', pos);
    std::string_view line =
        text.substr(pos, eol == std::string_view::npos ? std::string_view::npos : eol - pos);
    pos = eol == std::string_view::npos ? text.size() + 1 : eol + 1;
    ++line_no;

    // Trim surrounding whitespace.
    while (!line.empty() && std::isspace(static_cast<unsigned char>(line.front())))
      line.remove_prefix(1);
    while (!line.empty() && std::isspace(static_cast<unsigned char>(line.back())))
      line.remove_suffix(1);
    if (line.empty() || line.front() == '#') continue;

    auto fail = [&](const std::string& what) -> void {
      std::ostringstream os;
      os << "presentation parse error, line " << line_no << ": " << what;
      throw ParseError(os.str());
    };

    if (line.rfind("generators:", 0) == 0) {
      if (have_generators) fail("repeated generators line");
      have_generators = true;
      std::istringstream is{std::string(line.substr(11))};
      std::string name;
      while (is >> name) {
        try {
          gens.emplace_back(name);
        } catch (const std::invalid_argument& e) {
          fail(e.what());
        }
      }
    } else if (line.rfind("relator:", 0) == 0) {
      if (!have_generators) fail("relator before generators line");
      relator_texts.emplace_back(line.substr(8));
    } else {
      fail("unrecognized line");
    }
  }
  if (!have_generators) throw ParseError("presentation parse error: missing generators line");

  std::vector<Word> relators;
  relators.reserve(relator_texts.size());
  for (const auto& t : relator_texts) relators.push_back(parse_word(t, gens));
  try {
    return FinitePresentation(std::move(gens), std::move(relators));
  } catch (const std::invalid_argument& e) {
    throw ParseError(std::string("presentation parse error: ") + e.what());
  }
}

namespace {

// Rename b's generators away from a's: colliding names get the first free
// suffix _1, _2, ... (checked against both sides and earlier renames).
std::vector<GeneratorSymbol> renamed_generators(const FinitePresentation& a,
                                                const FinitePresentation& b) {
  std::set<std::string> taken;
  for (const auto& g : a.generators()) taken.insert(g.name());

  std::vector<GeneratorSymbol> out;
  out.reserve(b.generators().size());
  for (const auto& g : b.generators()) {
    std::string name = g.name();
    if (taken.count(name)) {
      for (int k = 1;; ++k) {
        std::string candidate = g.name() + "_" + std::to_string(k);
        if (!taken.count(candidate)) {
          name = candidate;
          break;
        }
      }
    }
    taken.insert(name);
    out.emplace_back(name);
  }
  return out;
}

Word rename_word(const Word& w, const std::vector<GeneratorSymbol>& from,
                 const std::vector<GeneratorSymbol>& to) {
  std::vector<Letter> letters;
  letters.reserve(w.letters().size());
  for (const auto& l : w.letters()) {
    auto it = std::find(from.begin(), from.end(), l.gen);
    letters.push_back(Letter{to[static_cast<std::size_t>(it - from.begin())], l.exponent});
  }
  return Word(std::move(letters));
}

}  // namespace

FinitePresentation free_product(const FinitePresentation& a, const FinitePresentation& b) {
  std::vector<GeneratorSymbol> b_renamed = renamed_generators(a, b);

  std::vector<GeneratorSymbol> gens = a.generators();
  gens.insert(gens.end(), b_renamed.begin(), b_renamed.end());

  std::vector<Word> relators = a.relators();
  for (const auto& r : b.relators()) {
    relators.push_back(rename_word(r, b.generators(), b_renamed));
  }
  return FinitePresentation(std::move(gens), std::move(relators));
}

FinitePresentation direct_product(const FinitePresentation& a, const FinitePresentation& b) {
  FinitePresentation fp = free_product(a, b);
  std::vector<Word> relators = fp.relators();
  const std::size_t na = a.generators().size();
  for (std::size_t i = 0; i < na; ++i) {
    for (std::size_t j = na; j < fp.generators().size(); ++j) {
      relators.push_back(commutator(Word::letter(fp.generators()[i], 1),
                                    Word::letter(fp.generators()[j], 1)));
    }
  }
  return FinitePresentation(fp.generators(), std::move(relators));
}

}  // namespace isocomm
