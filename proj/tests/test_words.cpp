#include "acylkit/word.hpp"

#include <random>

#include "acylkit/errors.hpp"
#include "doctest.h"

using namespace acyl;

namespace {

Word random_raw_word(std::mt19937& rng, int rank, int len) {
  std::uniform_int_distribution<int> gen(1, rank);
  std::uniform_int_distribution<int> sign(0, 1);
  std::vector<Letter> ls;
  for (int i = 0; i < len; ++i) {
    int g = gen(rng);
    ls.push_back(sign(rng) ? g : -g);
  }
  return Word(ls, rank);
}

}  // namespace

TEST_CASE("free reduction basics") {
  // a a^-1 -> empty
  CHECK(reduce({1, -1}, 2).empty());
  // a b b^-1 a -> a a
  CHECK(reduce({1, 2, -2, 1}, 2) == Word({1, 1}, 2));
  CHECK_THROWS_AS(reduce({3}, 2), IndexOutOfRange);
}

TEST_CASE("reduce is idempotent on random words") {
  std::mt19937 rng(42);
  for (int i = 0; i < 200; ++i) {
    Word w = random_raw_word(rng, 2, 20);
    Word once = reduce(w.letters, 2);
    CHECK(reduce(once.letters, 2) == once);
  }
}

TEST_CASE("cyclic reduction") {
  // a b a^-1 -> core b, conjugator a
  auto cr = cyclic_reduce(reduce({1, 2, -1}, 2));
  CHECK(cr.core == Word({2}, 2));
  CHECK(cr.conjugator == Word({1}, 2));

  // already cyclically reduced
  Word w = reduce({1, 2}, 2);
  auto cr2 = cyclic_reduce(w);
  CHECK(cr2.core == w);
  CHECK(cr2.conjugator.empty());

  std::mt19937 rng(7);
  for (int i = 0; i < 200; ++i) {
    Word x = reduce(random_raw_word(rng, 3, 16).letters, 3);
    auto c = cyclic_reduce(x);
    CHECK(conjugate(c.conjugator, c.core) == x);
    if (c.core.size() >= 2)
      CHECK(c.core.letters.front() != -c.core.letters.back());
  }
}

TEST_CASE("exponent sums") {
  // t^-1 a t a^-2 has t-sum 0 (alphabet a=1, t=2)
  Word r = reduce({-2, 1, 2, -1, -1}, 2);
  CHECK(exponent_sum(r, 2) == 0);
  CHECK(exponent_sum(Word({}, 2), 1) == 0);

  std::mt19937 rng(3);
  for (int i = 0; i < 100; ++i) {
    Word w = reduce(random_raw_word(rng, 2, 12).letters, 2);
    CHECK(exponent_sum(mul(w, w), 1) == 2 * exponent_sum(w, 1));
  }
}

TEST_CASE("word serialization round trip") {
  std::vector<std::string> names{"a", "b"};
  Word w = reduce({1, -2, -2, 1, 1}, 2);
  std::string s = format_word(w, names);
  CHECK(s == "a b^-2 a^2");
  CHECK(parse_word(s, names) == w);
  CHECK(parse_word("", names).empty());
  CHECK_THROWS_AS(parse_word("c", names), SyntaxError);
  CHECK_THROWS_AS(parse_word("a^0", names), SyntaxError);
}

TEST_CASE("shortlex enumeration counts") {
  auto ws = reduced_words_up_to(2, 3);
  // 1 + 4 + 4*3 + 12*3 = 53 reduced words of length <= 3 in F_2.
  CHECK(ws.size() == 53);
  CHECK(ws.front().empty());
}
