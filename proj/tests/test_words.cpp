#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>
#include <string>
#include <utility>
#include <vector>

#include "isocomm/word.hpp"

using namespace isocomm;

namespace {

const GeneratorSymbol a{"a"};
const GeneratorSymbol b{"b"};
const GeneratorSymbol c{"c"};

Word raw(std::vector<std::pair<const GeneratorSymbol*, int>> runs) {
  std::vector<Letter> ls;
  for (auto& [g, e] : runs) ls.push_back(Letter{*g, Int(e)});
  return Word(std::move(ls));
}

// Independent reduction oracle: expand to single +-1 letters and cancel on
// a stack, with no knowledge of the run-length representation.
std::vector<std::pair<std::string, int>> stack_reduce(
    const std::vector<std::pair<const GeneratorSymbol*, int>>& runs) {
  std::vector<std::pair<std::string, int>> stack;
  for (const auto& [g, e] : runs) {
    int sign = e < 0 ? -1 : 1;
    for (int k = 0; k != e; k += sign) {
      if (!stack.empty() && stack.back().first == g->name() && stack.back().second == -sign) {
        stack.pop_back();
      } else {
        stack.emplace_back(g->name(), sign);
      }
    }
  }
  return stack;
}

std::vector<std::pair<std::string, int>> expand(const Word& w) {
  std::vector<std::pair<std::string, int>> out;
  for (const auto& l : w.letters()) {
    int sign = l.exponent < 0 ? -1 : 1;
    for (Int k = 0; k != l.exponent; k += sign) out.emplace_back(l.gen.name(), sign);
  }
  return out;
}

}  // namespace

TEST_CASE("free reduction of simple cancellations") {
  CHECK(raw({{&a, 1}, {&a, -1}, {&b, 1}}) == raw({{&b, 1}}));
  CHECK(raw({{&a, 1}, {&b, 1}, {&b, -1}, {&a, -1}, {&a, 2}}) == raw({{&a, 2}}));
  CHECK(raw({{&a, 1}, {&a, -1}}).empty());
  CHECK(raw({}).empty());
}

TEST_CASE("free reduction agrees with the letter-stack oracle") {
  std::mt19937 rng(20240817);
  std::uniform_int_distribution<int> len(0, 12);
  std::uniform_int_distribution<int> pick(0, 2);
  std::uniform_int_distribution<int> exp(-3, 3);
  const GeneratorSymbol* gens[3] = {&a, &b, &c};
  for (int trial = 0; trial < 500; ++trial) {
    std::vector<std::pair<const GeneratorSymbol*, int>> runs;
    int n = len(rng);
    for (int i = 0; i < n; ++i) {
      int e = exp(rng);
      if (e == 0) e = 1;
      runs.emplace_back(gens[pick(rng)], e);
    }
    CHECK(expand(Word([&] {
            std::vector<Letter> ls;
            for (auto& [g, e] : runs) ls.push_back(Letter{*g, Int(e)});
            return ls;
          }())) == stack_reduce(runs));
  }
}

TEST_CASE("reduced words never carry mergeable or empty runs") {
  std::mt19937 rng(7);
  std::uniform_int_distribution<int> pick(0, 2);
  std::uniform_int_distribution<int> exp(-2, 2);
  const GeneratorSymbol* gens[3] = {&a, &b, &c};
  for (int trial = 0; trial < 300; ++trial) {
    std::vector<Letter> ls;
    for (int i = 0; i < 10; ++i) ls.push_back(Letter{*gens[pick(rng)], Int(exp(rng))});
    Word w(std::move(ls));
    for (std::size_t i = 0; i < w.letters().size(); ++i) {
      CHECK(w.letters()[i].exponent != 0);
      if (i > 0) CHECK(!(w.letters()[i].gen == w.letters()[i - 1].gen));
    }
    CHECK(free_reduce(w) == w);
  }
}

TEST_CASE("inverse and product behave like a free group") {
  Word w = raw({{&a, 2}, {&b, -1}, {&a, 1}});
  CHECK((w * w.inverse()).empty());
  CHECK((w.inverse() * w).empty());
  CHECK(w.inverse() == raw({{&a, -1}, {&b, 1}, {&a, -2}}));
  CHECK(w.pow(0).empty());
  CHECK(w.pow(1) == w);
  CHECK(w.pow(-1) == w.inverse());
  CHECK(w.pow(3) == w * w * w);
  CHECK(Word::letter(a, 2).pow(5) == Word::letter(a, 10));
}

TEST_CASE("cyclic reduction strips matching ends") {
  CHECK(cyclic_reduce(raw({{&a, 1}, {&b, 1}, {&a, -1}})) == raw({{&b, 1}}));
  CHECK(cyclic_reduce(raw({{&a, -2}, {&b, 1}, {&a, 2}})) == raw({{&b, 1}}));
  CHECK(cyclic_reduce(raw({{&a, 3}})) == raw({{&a, 3}}));
  CHECK(cyclic_reduce(raw({{&a, 1}, {&b, 1}})) == raw({{&a, 1}, {&b, 1}}));
  // Mixed ends that only partially cancel.
  CHECK(cyclic_reduce(raw({{&a, 2}, {&b, 1}, {&a, -1}})) == raw({{&b, 1}, {&a, 1}}));
}

TEST_CASE("exponent sums are reduction invariant") {
  Word w = raw({{&a, 2}, {&b, 1}, {&a, -1}});
  CHECK(exponent_sum(w, a) == 1);
  CHECK(exponent_sum(w, b) == 1);
  CHECK(exponent_sum(w, c) == 0);

  std::mt19937 rng(99);
  std::uniform_int_distribution<int> pick(0, 1);
  std::uniform_int_distribution<int> exp(-3, 3);
  const GeneratorSymbol* gens[2] = {&a, &b};
  for (int trial = 0; trial < 200; ++trial) {
    std::vector<std::pair<const GeneratorSymbol*, int>> runs;
    Int suma = 0;
    Int sumb = 0;
    for (int i = 0; i < 8; ++i) {
      const GeneratorSymbol* g = gens[pick(rng)];
      int e = exp(rng);
      runs.emplace_back(g, e);
      (g == &a ? suma : sumb) += e;
    }
    Word w2 = raw(runs);
    CHECK(exponent_sum(w2, a) == suma);
    CHECK(exponent_sum(w2, b) == sumb);
  }
}

TEST_CASE("commutator expansion") {
  Word x = Word::letter(a, 1);
  Word y = Word::letter(b, 1);
  CHECK(commutator(x, y) == raw({{&a, -1}, {&b, -1}, {&a, 1}, {&b, 1}}));
  // Nested commutator, expanded and reduced by hand:
  // [[a,b],a] = (b^-1 a^-1 b a) a^-1 (a^-1 b^-1 a b) a
  CHECK(commutator(commutator(x, y), x) ==
        raw({{&b, -1}, {&a, -1}, {&b, 1}, {&a, -1}, {&b, -1}, {&a, 1}, {&b, 1}, {&a, 1}}));
  CHECK(commutator(x, x).empty());
}

TEST_CASE("word grammar parses atoms, powers and brackets") {
  CHECK(parse_word("a b^-1") == raw({{&a, 1}, {&b, -1}}));
  CHECK(parse_word("a^3") == raw({{&a, 3}}));
  CHECK(parse_word("1").empty());
  CHECK(parse_word("a a^-1").empty());
  CHECK(parse_word("[a, b]") == commutator(Word::letter(a, 1), Word::letter(b, 1)));
  CHECK(parse_word("[[a,b],a]") == commutator(commutator(Word::letter(a, 1), Word::letter(b, 1)),
                                              Word::letter(a, 1)));
  CHECK(parse_word("[a,b]^2") ==
        commutator(Word::letter(a, 1), Word::letter(b, 1)).pow(2));
  CHECK(parse_word("a^3 [b,a]^-1 a^-3") ==
        raw({{&a, 2}, {&b, -1}, {&a, 1}, {&b, 1}, {&a, -3}}));
  CHECK(parse_word("  a   b ") == raw({{&a, 1}, {&b, 1}}));
}

TEST_CASE("word grammar rejects malformed input") {
  CHECK_THROWS_AS(parse_word(""), ParseError);
  CHECK_THROWS_AS(parse_word("a^"), ParseError);
  CHECK_THROWS_AS(parse_word("[a b"), ParseError);
  CHECK_THROWS_AS(parse_word("[a]"), ParseError);
  CHECK_THROWS_AS(parse_word("a ]"), ParseError);
  CHECK_THROWS_AS(parse_word("2a"), ParseError);
  CHECK_THROWS_AS(parse_word("a,b"), ParseError);
}

TEST_CASE("alphabet-checked parsing rejects foreign generators") {
  std::vector<GeneratorSymbol> alphabet{a, b};
  CHECK(parse_word("a b", alphabet) == raw({{&a, 1}, {&b, 1}}));
  CHECK_THROWS_AS(parse_word("a c", alphabet), ParseError);
}

TEST_CASE("canonical serialization round-trips") {
  CHECK(format_word(raw({{&a, 1}, {&b, -1}, {&a, 3}})) == "a b^-1 a^3");
  CHECK(format_word(Word{}) == "1");
  CHECK(parse_word(format_word(Word{})).empty());

  std::mt19937 rng(4242);
  std::uniform_int_distribution<int> pick(0, 2);
  std::uniform_int_distribution<int> exp(-4, 4);
  const GeneratorSymbol* gens[3] = {&a, &b, &c};
  for (int trial = 0; trial < 300; ++trial) {
    std::vector<Letter> ls;
    for (int i = 0; i < 6; ++i) ls.push_back(Letter{*gens[pick(rng)], Int(exp(rng))});
    Word w(std::move(ls));
    CHECK(parse_word(format_word(w)) == w);
  }
}

TEST_CASE("generator names are validated") {
  CHECK_THROWS_AS(GeneratorSymbol(""), std::invalid_argument);
  CHECK_THROWS_AS(GeneratorSymbol("1a"), std::invalid_argument);
  CHECK_THROWS_AS(GeneratorSymbol("a-b"), std::invalid_argument);
  CHECK(GeneratorSymbol("a_1").name() == "a_1");
}
