#ifndef ACYLKIT_ONE_RELATOR_HPP_
#define ACYLKIT_ONE_RELATOR_HPP_

#include <optional>
#include <string>
#include <vector>

#include "acylkit/certificate.hpp"
#include "acylkit/rewriting.hpp"
#include "acylkit/word.hpp"

namespace acyl {

// <generators | relator>, relator cyclically reduced and non-empty.
struct OneRelatorPresentation {
  std::vector<std::string> generators;
  Word relator;
};

// Tietze moves used by balancing: either swap the two generator roles
// or substitute a -> a t^{-q}.
struct BalanceMove {
  bool swap = false;
  long long q = 0;
};

struct BalanceResult {
  OneRelatorPresentation pres;  // generator 2 ("t") has zero exponent sum
  std::vector<BalanceMove> moves;
};

// Euclidean balancing via shear automorphisms of F_2; requires exactly
// two generators, with the relator involving both.
BalanceResult balance_presentation(OneRelatorPresentation const& p);

// Magnus-Moldavanskii data: G = <a_1..a_n, t | r', t a_i t^-1 = a_{i+1}>
// with the subscripts normalized to start at 1.
struct MMData {
  int n = 1;
  Word rprime;             // cyclically reduced over rank n
  bool reversed = false;   // orientation of t chosen by the convention
  long long level_shift = 0;  // original minimum t-level
  BalanceResult balanced;
  std::vector<int> magnus_a() const;  // 1..n-1
  std::vector<int> magnus_b() const;  // 2..n
};

MMData mm_rewrite(OneRelatorPresentation const& balanced);

// Substitutes a_i -> t^{i-1} a t^{1-i} (orientation-adjusted) back into
// r'; the cyclic core of the result must be a cyclic permutation of the
// balanced relator or its inverse.
Word mm_back_substitute(MMData const& mm);
bool mm_round_trip_ok(MMData const& mm);

enum class Tri { Yes, No, Unknown };

struct AscendingReport {
  Tri ascending = Tri::Unknown;
  Tri b_in_a = Tri::Unknown;
  Tri a_in_b = Tri::Unknown;
  std::vector<std::pair<int, Word>> witnesses;  // generator -> word over the other side
};

// Tests B <= A and A <= B for the Magnus subgroups of H = <a_1..a_n|r'>
// by abelianization (exact No) and a bounded expression search backed
// by word_problem (Yes with witnesses).
AscendingReport detect_ascending(MMData const& mm, long long budget);

// The Proposition 4.11 case analysis for one-relator presentations,
// honest Unknown when no criterion applies within the budget.
Certificate classify_one_relator(OneRelatorPresentation const& p,
                                 long long budget);

}  // namespace acyl

#endif  // ACYLKIT_ONE_RELATOR_HPP_
