#include "acylkit/rewriting.hpp"

#include <algorithm>
#include <deque>
#include <numeric>
#include <set>

#include "acylkit/errors.hpp"

namespace acyl {

namespace {

// Symbols: generator i -> 2i, inverse -> 2i+1 (chars from 'a').
char sym(Letter x) {
  int id = x > 0 ? 2 * (x - 1) : 2 * (-x - 1) + 1;
  return static_cast<char>('a' + id);
}
char sym_inverse(char c) { return static_cast<char>(((c - 'a') ^ 1) + 'a'); }
Letter letter_of(char c) {
  int id = c - 'a';
  return (id & 1) ? -(id / 2 + 1) : id / 2 + 1;
}

std::string encode_word(Word const& w) {
  std::string s;
  for (Letter x : w.letters) s.push_back(sym(x));
  return s;
}

std::string invert_string(std::string const& s) {
  std::string out;
  for (auto it = s.rbegin(); it != s.rend(); ++it)
    out.push_back(sym_inverse(*it));
  return out;
}

std::vector<std::string> symmetrized(std::vector<Word> const& relators) {
  std::vector<std::string> out;
  for (Word const& r : relators) {
    auto cyc = cyclic_reduce(r).core;
    std::string base = encode_word(cyc);
    for (std::string s : {base, invert_string(base)}) {
      for (std::size_t i = 0; i < s.size(); ++i) {
        std::string rot = s.substr(i) + s.substr(0, i);
        out.push_back(rot);
      }
    }
  }
  return out;
}

long long lcp(std::string const& a, std::string const& b) {
  std::size_t n = std::min(a.size(), b.size());
  std::size_t i = 0;
  while (i < n && a[i] == b[i]) ++i;
  return static_cast<long long>(i);
}

}  // namespace

SmallCancel smallcancel_lambda(std::vector<Word> const& relators, int rank) {
  (void)rank;
  SmallCancel sc;
  auto sym_set = symmetrized(relators);
  if (sym_set.empty()) return sc;
  sc.min_relator = static_cast<long long>(sym_set[0].size());
  for (auto const& s : sym_set)
    sc.min_relator = std::min(sc.min_relator, static_cast<long long>(s.size()));
  for (std::size_t i = 0; i < sym_set.size(); ++i) {
    for (std::size_t j = i + 1; j < sym_set.size(); ++j) {
      long long p = lcp(sym_set[i], sym_set[j]);
      long long cap = static_cast<long long>(
                          std::min(sym_set[i].size(), sym_set[j].size())) -
                      1;
      sc.max_piece = std::max(sc.max_piece, std::min(p, cap));
    }
  }
  return sc;
}

bool abelianized_member(std::vector<Word> const& relators, Word const& w,
                        int rank) {
  // Row-reduce the relator lattice over Z and reduce w against it.
  std::vector<std::vector<long long>> rows;
  for (Word const& r : relators) {
    std::vector<long long> row(rank);
    for (int g = 1; g <= rank; ++g) row[g - 1] = exponent_sum(r, g);
    rows.push_back(std::move(row));
  }
  std::vector<long long> target(rank);
  for (int g = 1; g <= rank; ++g) target[g - 1] = exponent_sum(w, g);

  for (int col = 0; col < rank; ++col) {
    // gcd-reduce the column below to a single pivot row
    while (true) {
      int piv = -1;
      for (std::size_t i = 0; i < rows.size(); ++i)
        if (rows[i][col] != 0 &&
            (piv == -1 ||
             std::llabs(rows[i][col]) < std::llabs(rows[piv][col])))
          piv = static_cast<int>(i);
      if (piv == -1) break;
      bool others = false;
      for (std::size_t i = 0; i < rows.size(); ++i) {
        if (static_cast<int>(i) == piv || rows[i][col] == 0) continue;
        long long q = rows[i][col] / rows[piv][col];
        for (int c = 0; c < rank; ++c) rows[i][c] -= q * rows[piv][c];
        if (rows[i][col] != 0) others = true;
      }
      if (!others) {
        // reduce the target by the pivot
        if (target[col] % rows[piv][col] == 0) {
          long long q = target[col] / rows[piv][col];
          for (int c = 0; c < rank; ++c) target[c] -= q * rows[piv][c];
        }
        // move the pivot row out of further consideration
        std::swap(rows[piv], rows.back());
        std::vector<long long> pivot = rows.back();
        rows.pop_back();
        // pivot column is done
        break;
      }
    }
  }
  for (long long v : target)
    if (v != 0) return false;
  return true;
}

// --- RewriteSystem ------------------------------------------------------------

RewriteSystem::RewriteSystem(Presentation const& p, long long budget) {
  // free reduction rules
  for (int g = 1; g <= p.rank; ++g) {
    std::string x{sym(g)}, xi{sym(-g)};
    rules_.push_back({x + xi, ""});
    rules_.push_back({xi + x, ""});
  }
  // The budget counts rewriting steps; cheap scanning work is charged
  // at a fraction of a step so the completion stays bounded even when
  // no rules fire.
  long long work = budget * 256;
  bool starved = false;
  auto norm = [&](std::string s) {
    bool changed = true;
    while (changed && work > 0) {
      changed = false;
      for (std::size_t ri = 0; ri < rules_.size() && work > 0; ++ri) {
        --work;
        if (rules_[ri].lhs.empty()) continue;
        auto pos = s.find(rules_[ri].lhs);
        if (pos == std::string::npos) continue;
        work -= 256 + static_cast<long long>(s.size());
        s = s.substr(0, pos) + rules_[ri].rhs +
            s.substr(pos + rules_[ri].lhs.size());
        changed = true;
        break;
      }
    }
    if (work <= 0) starved = true;
    return s;
  };
  // seed rules from every cyclic permutation of each relator and its
  // inverse, oriented by shortlex
  for (std::string const& s : symmetrized(p.relators)) {
    std::size_t half = (s.size() + 1) / 2;
    add_rule(norm(s.substr(0, half)), norm(invert_string(s.substr(half))),
             work);
  }

  // completion: resolve overlaps until none remain or the budget runs
  // out; oversized critical pairs are dropped (and spoil confluence).
  bool clean = false;
  bool dropped = false;
  while (!clean && work > 0) {
    clean = true;
    for (std::size_t i = 0; i < rules_.size() && work > 0; ++i) {
      for (std::size_t j = 0; j < rules_.size() && work > 0; ++j) {
        --work;
        std::string const li = rules_[i].lhs;
        std::string const lj = rules_[j].lhs;
        auto resolve = [&](std::string const& left, std::string const& right) {
          std::string nl = norm(left);
          std::string nr = norm(right);
          if (nl == nr) return;
          if (nl.size() > 128 || nr.size() > 128) {
            dropped = true;
            return;
          }
          add_rule(nl, nr, work);
          clean = false;
        };
        // overlap: a proper suffix of li equals a proper prefix of lj
        std::size_t max_o = std::min(li.size(), lj.size());
        for (std::size_t o = 1; o <= max_o && work > 0; ++o) {
          if (o == li.size() && o == lj.size()) continue;  // identical match
          if (li.compare(li.size() - o, o, lj, 0, o) != 0) continue;
          resolve(rules_[i].rhs + lj.substr(o),
                  li.substr(0, li.size() - o) + rules_[j].rhs);
        }
        // containment: lj inside li (i != j)
        if (i != j && li.size() > lj.size() && work > 0) {
          auto pos = li.find(lj);
          if (pos != std::string::npos)
            resolve(rules_[i].rhs,
                    li.substr(0, pos) + rules_[j].rhs + li.substr(pos + lj.size()));
        }
      }
    }
  }
  confluent_ = clean && !dropped && !starved && work > 0;
}

bool RewriteSystem::shortlex_less(std::string const& a,
                                  std::string const& b) const {
  if (a.size() != b.size()) return a.size() < b.size();
  return a < b;
}

void RewriteSystem::add_rule(std::string l, std::string r, long long& budget) {
  if (l == r) return;
  if (shortlex_less(l, r)) std::swap(l, r);
  for (Rule const& rule : rules_)
    if (rule.lhs == l && rule.rhs == r) return;
  rules_.push_back({std::move(l), std::move(r)});
  --budget;
}

std::string RewriteSystem::normalize(std::string s,
                                     std::vector<Step>* trace) const {
  bool changed = true;
  long long steps = 200000;  // safety cap; partial reduction stays sound
  while (changed && steps-- > 0) {
    changed = false;
    for (std::size_t ri = 0; ri < rules_.size(); ++ri) {
      auto pos = s.find(rules_[ri].lhs);
      if (pos == std::string::npos || rules_[ri].lhs.empty()) continue;
      if (trace) trace->push_back({ri, pos});
      s = s.substr(0, pos) + rules_[ri].rhs + s.substr(pos + rules_[ri].lhs.size());
      changed = true;
      break;
    }
  }
  return s;
}

std::string RewriteSystem::encode(Word const& w) const { return encode_word(w); }

Word RewriteSystem::decode(std::string const& s, int rank) const {
  std::vector<Letter> ls;
  for (char c : s) ls.push_back(letter_of(c));
  return reduce(ls, rank);
}

bool RewriteSystem::replay(std::string const& from, std::string const& to,
                           std::vector<Step> const& trace) const {
  std::string s = from;
  for (Step const& st : trace) {
    if (st.rule >= rules_.size()) return false;
    Rule const& r = rules_[st.rule];
    if (s.compare(st.pos, r.lhs.size(), r.lhs) != 0) return false;
    s = s.substr(0, st.pos) + r.rhs + s.substr(st.pos + r.lhs.size());
  }
  return s == to;
}

// --- Dehn's algorithm ----------------------------------------------------------

namespace {

std::string free_reduce_string(std::string s) {
  std::string out;
  for (char c : s) {
    if (!out.empty() && out.back() == sym_inverse(c))
      out.pop_back();
    else
      out.push_back(c);
  }
  return out;
}

// Greedy Dehn reduction: replace any subword that is more than half of
// a symmetrized relator by the shorter complement.
WpAnswer dehn(std::vector<std::string> const& sym_set, std::string w) {
  w = free_reduce_string(std::move(w));
  bool changed = true;
  while (changed) {
    changed = false;
    for (std::string const& s : sym_set) {
      std::size_t len = s.size();
      for (std::size_t piece = len; piece * 2 > len && !changed; --piece) {
        std::string u = s.substr(0, piece);
        auto pos = w.find(u);
        if (pos == std::string::npos) continue;
        std::string v = invert_string(s.substr(piece));
        w = free_reduce_string(w.substr(0, pos) + v + w.substr(pos + piece));
        changed = true;
      }
      if (changed) break;
    }
  }
  return w.empty() ? WpAnswer::Equal : WpAnswer::NotEqual;
}

}  // namespace

WpResult word_problem(Presentation const& p, Word const& w, long long budget) {
  WpResult res;
  Word reduced = reduce(w.letters, p.rank);
  std::vector<Word> live_relators;
  for (Word const& r : p.relators)
    if (!r.empty()) live_relators.push_back(r);

  if (live_relators.empty()) {
    res.method = "free";
    res.answer = reduced.empty() ? WpAnswer::Equal : WpAnswer::NotEqual;
    return res;
  }
  if (reduced.empty()) {
    res.method = "free";
    res.answer = WpAnswer::Equal;
    return res;
  }
  if (!abelianized_member(live_relators, reduced, p.rank)) {
    res.method = "abelianization";
    res.answer = WpAnswer::NotEqual;
    return res;
  }
  SmallCancel sc = smallcancel_lambda(live_relators, p.rank);
  if (sc.less_than(1, 6)) {
    res.method = "dehn";
    res.answer = dehn(symmetrized(live_relators), encode_word(reduced));
    return res;
  }
  RewriteSystem rs({p.rank, live_relators}, budget);
  res.method = "knuth-bendix";
  res.confluent = rs.confluent();
  std::vector<RewriteSystem::Step> trace;
  std::string from = rs.encode(reduced);
  std::string nf = rs.normalize(from, &trace);
  if (nf.empty()) {
    // sound regardless of confluence; verify the derivation replays
    res.answer = rs.replay(from, "", trace) ? WpAnswer::Equal : WpAnswer::Unknown;
    return res;
  }
  res.answer = rs.confluent() ? WpAnswer::NotEqual : WpAnswer::Unknown;
  return res;
}

}  // namespace acyl
