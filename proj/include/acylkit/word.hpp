#ifndef ACYLKIT_WORD_HPP_
#define ACYLKIT_WORD_HPP_

#include <cstdint>
#include <string>
#include <vector>

namespace acyl {

// A letter of a free group word: +i stands for the i-th generator,
// -i for its inverse (1-based, i <= ambient rank).
using Letter = int;

// Freely reduced word over a ranked alphabet. The empty word is the
// identity. Instances produced by reduce() are always freely reduced;
// the raw constructor does not check.
struct Word {
  std::vector<Letter> letters;
  int rank = 1;

  Word() = default;
  Word(std::vector<Letter> ls, int k) : letters(std::move(ls)), rank(k) {}

  bool empty() const { return letters.empty(); }
  std::size_t size() const { return letters.size(); }

  bool operator==(Word const& other) const = default;
  bool operator<(Word const& other) const {
    if (letters.size() != other.letters.size())
      return letters.size() < other.letters.size();
    return letters < other.letters;
  }
};

// Freely reduces a raw letter sequence. Throws IndexOutOfRange if a
// letter references a generator beyond `rank`.
Word reduce(std::vector<Letter> const& raw, int rank);

// Product of reduced words (result reduced). Ranks must agree.
Word mul(Word const& a, Word const& b);
Word inverse(Word const& w);
Word conjugate(Word const& g, Word const& w);  // g w g^{-1}
Word power(Word const& w, int n);

// Splits w = conjugator . core . conjugator^{-1} with core cyclically
// reduced (first and last letters not mutually inverse).
struct CyclicReduction {
  Word core;
  Word conjugator;
};
CyclicReduction cyclic_reduce(Word const& w);

// Signed number of occurrences of generator `gen` (1-based).
long long exponent_sum(Word const& w, int gen);

// Shortlex successor machinery: enumerate all freely reduced words of
// F_rank in shortlex order (identity first). Used by bounded searches.
std::vector<Word> reduced_words_up_to(int rank, int max_len);

// Serialization over a named alphabet. Format: whitespace-separated
// tokens "name" or "name^e" with nonzero integer e ("a b^-1 a^2").
std::string format_word(Word const& w, std::vector<std::string> const& names);
Word parse_word(std::string const& text, std::vector<std::string> const& names);

}  // namespace acyl

#endif  // ACYLKIT_WORD_HPP_
