#ifndef ACYLKIT_REWRITING_HPP_
#define ACYLKIT_REWRITING_HPP_

#include <string>
#include <vector>

#include "acylkit/word.hpp"

namespace acyl {

// Finite presentation over the free group of the given rank.
struct Presentation {
  int rank = 1;
  std::vector<Word> relators;
};

// Metric small cancellation data over the symmetrized closure: the
// longest piece and the shortest relator. lambda = max_piece/min_len;
// pieces of a proper power are capped at |r| - 1.
struct SmallCancel {
  long long max_piece = 0;
  long long min_relator = 0;
  bool less_than(long long num, long long den) const {  // lambda < num/den
    return den * max_piece < num * min_relator;
  }
};
SmallCancel smallcancel_lambda(std::vector<Word> const& relators, int rank);

enum class WpAnswer { Equal, NotEqual, Unknown };

struct WpResult {
  WpAnswer answer = WpAnswer::Unknown;
  std::string method;  // "free", "abelianization", "dehn", "knuth-bendix"
  bool confluent = false;
};

// Three-valued word problem: Dehn's algorithm under C'(1/6), otherwise
// bounded shortlex Knuth-Bendix completion; Equal answers are verified
// by replaying the rewrite trace, NotEqual answers come from a
// conclusive method only.
WpResult word_problem(Presentation const& p, Word const& w, long long budget);

// Bounded shortlex completion; exposed for tests.
class RewriteSystem {
 public:
  RewriteSystem(Presentation const& p, long long budget);

  bool confluent() const { return confluent_; }
  std::size_t rule_count() const { return rules_.size(); }

  // Normal form of a word; records the rewrite trace if asked.
  struct Step {
    std::size_t rule;
    std::size_t pos;
  };
  std::string normalize(std::string s, std::vector<Step>* trace = nullptr) const;

  std::string encode(Word const& w) const;
  Word decode(std::string const& s, int rank) const;

  // Replays a trace, confirming each step matches a rule application.
  bool replay(std::string const& from, std::string const& to,
              std::vector<Step> const& trace) const;

 private:
  struct Rule {
    std::string lhs, rhs;
  };
  bool shortlex_less(std::string const& a, std::string const& b) const;
  void add_rule(std::string l, std::string r, long long& budget);

  std::vector<Rule> rules_;
  bool confluent_ = false;
};

// Exact solvability of the abelianized equation: is the image of w in
// Z^rank inside the lattice spanned by the relator images?
bool abelianized_member(std::vector<Word> const& relators, Word const& w,
                        int rank);

}  // namespace acyl

#endif  // ACYLKIT_REWRITING_HPP_
