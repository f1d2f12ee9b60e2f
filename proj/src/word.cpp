#include "acylkit/word.hpp"

#include <cstdlib>
#include <sstream>

#include "acylkit/errors.hpp"

namespace acyl {

Word reduce(std::vector<Letter> const& raw, int rank) {
  std::vector<Letter> out;
  out.reserve(raw.size());
  for (Letter x : raw) {
    if (x == 0 || std::abs(x) > rank)
      throw IndexOutOfRange("letter " + std::to_string(x) +
                            " outside rank " + std::to_string(rank));
    if (!out.empty() && out.back() == -x)
      out.pop_back();
    else
      out.push_back(x);
  }
  return Word(std::move(out), rank);
}

Word mul(Word const& a, Word const& b) {
  std::vector<Letter> raw = a.letters;
  raw.insert(raw.end(), b.letters.begin(), b.letters.end());
  return reduce(raw, a.rank >= b.rank ? a.rank : b.rank);
}

Word inverse(Word const& w) {
  std::vector<Letter> out;
  out.reserve(w.size());
  for (auto it = w.letters.rbegin(); it != w.letters.rend(); ++it)
    out.push_back(-*it);
  return Word(std::move(out), w.rank);
}

Word conjugate(Word const& g, Word const& w) {
  return mul(mul(g, w), inverse(g));
}

Word power(Word const& w, int n) {
  Word base = n < 0 ? inverse(w) : w;
  Word acc(std::vector<Letter>{}, w.rank);
  for (int i = 0; i < std::abs(n); ++i)
    acc = mul(acc, base);
  return acc;
}

CyclicReduction cyclic_reduce(Word const& w) {
  std::size_t lo = 0, hi = w.size();
  while (hi - lo >= 2 && w.letters[lo] == -w.letters[hi - 1]) {
    ++lo;
    --hi;
  }
  Word core(std::vector<Letter>(w.letters.begin() + lo, w.letters.begin() + hi),
            w.rank);
  Word conj(std::vector<Letter>(w.letters.begin(), w.letters.begin() + lo),
            w.rank);
  return {core, conj};
}

long long exponent_sum(Word const& w, int gen) {
  long long s = 0;
  for (Letter x : w.letters) {
    if (x == gen) ++s;
    if (x == -gen) --s;
  }
  return s;
}

std::vector<Word> reduced_words_up_to(int rank, int max_len) {
  std::vector<Word> all;
  all.emplace_back(std::vector<Letter>{}, rank);
  std::size_t level_begin = 0;
  for (int len = 1; len <= max_len; ++len) {
    std::size_t level_end = all.size();
    for (std::size_t i = level_begin; i < level_end; ++i) {
      for (int g = 1; g <= rank; ++g) {
        for (Letter x : {g, -g}) {
          if (!all[i].letters.empty() && all[i].letters.back() == -x)
            continue;
          std::vector<Letter> next = all[i].letters;
          next.push_back(x);
          all.emplace_back(std::move(next), rank);
        }
      }
    }
    level_begin = level_end;
  }
  return all;
}

std::string format_word(Word const& w, std::vector<std::string> const& names) {
  if (w.empty()) return "";
  std::ostringstream os;
  // Run-length encode consecutive powers of the same generator.
  std::size_t i = 0;
  bool first = true;
  while (i < w.size()) {
    int gen = std::abs(w.letters[i]);
    int sgn = w.letters[i] > 0 ? 1 : -1;
    std::size_t j = i;
    while (j < w.size() && w.letters[j] == w.letters[i]) ++j;
    long long e = sgn * static_cast<long long>(j - i);
    if (!first) os << ' ';
    first = false;
    os << names.at(gen - 1);
    if (e != 1) os << '^' << e;
    i = j;
  }
  return os.str();
}

Word parse_word(std::string const& text,
                std::vector<std::string> const& names) {
  std::istringstream is(text);
  std::string tok;
  std::vector<Letter> raw;
  int rank = static_cast<int>(names.size());
  while (is >> tok) {
    std::string name = tok;
    long long e = 1;
    auto caret = tok.find('^');
    if (caret != std::string::npos) {
      name = tok.substr(0, caret);
      std::string exp = tok.substr(caret + 1);
      try {
        std::size_t used = 0;
        e = std::stoll(exp, &used);
        if (used != exp.size()) throw std::invalid_argument(exp);
      } catch (std::exception const&) {
        throw SyntaxError("bad exponent '" + exp + "' in token '" + tok + "'");
      }
      if (e == 0) throw SyntaxError("zero exponent in token '" + tok + "'");
    }
    int gen = 0;
    for (std::size_t g = 0; g < names.size(); ++g)
      if (names[g] == name) gen = static_cast<int>(g) + 1;
    if (gen == 0)
      throw SyntaxError("unknown generator '" + name + "'");
    Letter letter = e > 0 ? gen : -gen;
    for (long long k = 0; k < std::llabs(e); ++k) raw.push_back(letter);
  }
  return reduce(raw, rank);
}

}  // namespace acyl
