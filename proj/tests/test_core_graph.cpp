#include "acylkit/core_graph.hpp"

#include <algorithm>
#include <random>

#include "acylkit/errors.hpp"
#include "doctest.h"

using namespace acyl;

namespace {

Word rw(std::initializer_list<Letter> ls, int rank = 2) {
  return reduce(std::vector<Letter>(ls), rank);
}

Word random_reduced(std::mt19937& rng, int rank, int max_len) {
  std::uniform_int_distribution<int> len(0, max_len);
  std::uniform_int_distribution<int> gen(1, rank);
  std::uniform_int_distribution<int> sign(0, 1);
  std::vector<Letter> ls;
  int n = len(rng);
  while (static_cast<int>(ls.size()) < n) {
    int g = gen(rng);
    Letter x = sign(rng) ? g : -g;
    if (!ls.empty() && ls.back() == -x) continue;
    ls.push_back(x);
  }
  return Word(ls, rank);
}

std::vector<Word> random_subgroup(std::mt19937& rng, int rank, int ngens,
                                  int max_len) {
  std::vector<Word> gens;
  for (int i = 0; i < ngens; ++i) gens.push_back(random_reduced(rng, rank, max_len));
  return gens;
}

}  // namespace

TEST_CASE("core graphs of basic subgroups") {
  // <a> in F(a,b): one vertex with a single a-loop
  CoreGraph a = core_graph({rw({1})}, 2);
  CHECK(a.num_vertices() == 1);
  CHECK(a.num_edges() == 1);

  // <a, b a b^-1>: two vertices, three edges
  CoreGraph h = core_graph({rw({1}), rw({2, 1, -2})}, 2);
  CHECK(h.num_vertices() == 2);
  CHECK(h.num_edges() == 3);

  // trivial subgroup
  CoreGraph t = core_graph({}, 2);
  CHECK(t.num_vertices() == 1);
  CHECK(t.num_edges() == 0);
}

TEST_CASE("membership") {
  CoreGraph a = core_graph({rw({1})}, 2);
  CHECK(membership(a, rw({1, 1, 1})));
  CHECK_FALSE(membership(a, rw({2})));

  std::mt19937 rng(11);
  for (int trial = 0; trial < 100; ++trial) {
    auto gens = random_subgroup(rng, 2, 3, 5);
    CoreGraph g = core_graph(gens, 2);
    // random product of generators lies in the subgroup
    Word p(std::vector<Letter>{}, 2);
    std::uniform_int_distribution<int> pick(0, static_cast<int>(gens.size()) - 1);
    std::uniform_int_distribution<int> sign(0, 1);
    for (int i = 0; i < 6; ++i) {
      Word const& w = gens[pick(rng)];
      p = mul(p, sign(rng) ? w : inverse(w));
    }
    CHECK(membership(g, p));
  }
}

TEST_CASE("rank and index") {
  CHECK(subgroup_rank(core_graph({rw({1}), rw({2})}, 2)) == 2);
  CHECK(subgroup_rank(core_graph({}, 2)) == 0);

  CHECK_FALSE(subgroup_index(core_graph({rw({1})}, 2)).has_value());
  auto full = subgroup_index(core_graph({rw({1}), rw({2})}, 2));
  REQUIRE(full.has_value());
  CHECK(*full == 1);

  // <a^2, b, a b a^-1> has index 2 in F(a,b)
  auto idx2 = subgroup_index(core_graph({rw({1, 1}), rw({2}), rw({1, 2, -1})}, 2));
  REQUIRE(idx2.has_value());
  CHECK(*idx2 == 2);
}

TEST_CASE("fold confluence: shuffled generators give identical graphs") {
  std::mt19937 rng(5);
  for (int trial = 0; trial < 500; ++trial) {
    auto gens = random_subgroup(rng, 2, 4, 6);
    CoreGraph g1 = core_graph(gens, 2);
    auto shuffled = gens;
    std::shuffle(shuffled.begin(), shuffled.end(), rng);
    std::reverse(shuffled.begin(), shuffled.end());
    CoreGraph g2 = core_graph(shuffled, 2);
    CHECK(g1 == g2);
  }
}

TEST_CASE("Schreier identity on random finite-index subgroups") {
  std::mt19937 rng(17);
  for (int k : {2, 3}) {
    for (int trial = 0; trial < 100; ++trial) {
      // Random transitive-ish permutation action of F_k on n points:
      // the stabilizer graph of point 0 restricted to its orbit is a
      // complete core graph of finite index = orbit size.
      int n = 2 + static_cast<int>(rng() % 5);
      std::vector<std::vector<int>> perm(k, std::vector<int>(n));
      for (int g = 0; g < k; ++g) {
        std::iota(perm[g].begin(), perm[g].end(), 0);
        std::shuffle(perm[g].begin(), perm[g].end(), rng);
      }
      // Build the covering graph on the orbit of 0 and read a basis.
      CoreGraph cover;
      cover.rank = k;
      std::vector<int> orbit{0}, id(n, -1);
      id[0] = 0;
      for (std::size_t i = 0; i < orbit.size(); ++i) {
        for (int g = 0; g < k; ++g) {
          for (int dir = 0; dir < 2; ++dir) {
            int img = dir == 0 ? perm[g][orbit[i]]
                               : static_cast<int>(std::find(perm[g].begin(),
                                                            perm[g].end(),
                                                            orbit[i]) -
                                                  perm[g].begin());
            if (id[img] == -1) {
              id[img] = static_cast<int>(orbit.size());
              orbit.push_back(img);
            }
          }
        }
      }
      cover.step.assign(orbit.size(), std::vector<int>(2 * k, -1));
      for (std::size_t i = 0; i < orbit.size(); ++i) {
        for (int g = 0; g < k; ++g) {
          int img = perm[g][orbit[i]];
          cover.step[i][2 * g] = id[img];
          cover.step[id[img]][2 * g + 1] = static_cast<int>(i);
        }
      }
      CoreGraph rebuilt = core_graph(graph_basis(cover), k);
      auto index = subgroup_index(rebuilt);
      REQUIRE(index.has_value());
      CHECK(*index == static_cast<long long>(orbit.size()));
      CHECK(subgroup_rank(rebuilt) == *index * (k - 1) + 1);
    }
  }
}

TEST_CASE("fiber intersection") {
  CoreGraph a = core_graph({rw({1})}, 2);
  CoreGraph b = core_graph({rw({2})}, 2);
  CHECK(subgroup_rank(fiber_intersection(a, b)) == 0);

  std::mt19937 rng(23);
  for (int trial = 0; trial < 50; ++trial) {
    auto gens = random_subgroup(rng, 2, 3, 6);
    CoreGraph h = core_graph(gens, 2);
    CHECK(fiber_intersection(h, h) == h);
  }

  // membership in the fiber product agrees with the ball oracle
  auto ball = reduced_words_up_to(2, 5);
  for (int trial = 0; trial < 100; ++trial) {
    CoreGraph h = core_graph(random_subgroup(rng, 2, 3, 6), 2);
    CoreGraph k = core_graph(random_subgroup(rng, 2, 3, 6), 2);
    CoreGraph meet = fiber_intersection(h, k);
    for (Word const& w : ball)
      CHECK(membership(meet, w) == (membership(h, w) && membership(k, w)));
  }
}

TEST_CASE("Hanna Neumann sanity bound") {
  std::mt19937 rng(29);
  for (int trial = 0; trial < 100; ++trial) {
    CoreGraph h = core_graph(random_subgroup(rng, 2, 3, 6), 2);
    CoreGraph k = core_graph(random_subgroup(rng, 2, 3, 6), 2);
    long long meet_rank = subgroup_rank(fiber_intersection(h, k));
    CHECK(meet_rank <= 2 * subgroup_rank(h) * subgroup_rank(k) + 1);
  }
}

TEST_CASE("conjugate trivializer") {
  CoreGraph c = core_graph({rw({1})}, 2);
  CoreGraph d = core_graph({rw({2})}, 2);
  Word f = conjugate_trivializer(c, d);
  CHECK(subgroup_rank(fiber_intersection(c, conjugate_core(d, f))) == 0);

  // C = D = <a>: f must be non-trivial and separating
  Word f2 = conjugate_trivializer(c, c);
  CHECK_FALSE(f2.empty());
  CHECK(subgroup_rank(fiber_intersection(c, conjugate_core(c, f2))) == 0);

  CHECK_THROWS_AS(conjugate_trivializer(core_graph({rw({1}), rw({2})}, 2), c),
                  FiniteIndexInput);

  std::mt19937 rng(31);
  int done = 0;
  while (done < 100) {
    CoreGraph h = core_graph(random_subgroup(rng, 2, 2, 6), 2);
    CoreGraph k = core_graph(random_subgroup(rng, 2, 2, 6), 2);
    if (subgroup_index(h) || subgroup_index(k)) continue;
    Word w = conjugate_trivializer(h, k);
    CHECK(subgroup_rank(fiber_intersection(h, conjugate_core(k, w))) == 0);
    ++done;
  }
}

TEST_CASE("weak malnormality witness") {
  CoreGraph c = core_graph({rw({1})}, 2);
  auto g = weak_malnormality_witness(c, 2);
  REQUIRE(g.has_value());
  CHECK(subgroup_rank(fiber_intersection(conjugate_core(c, *g), c)) == 0);

  // the whole group: no witness at any radius
  CHECK_FALSE(weak_malnormality_witness(core_graph({rw({1}), rw({2})}, 2), 3)
                  .has_value());

  // finite index subgroup: no witness
  CoreGraph fin = core_graph({rw({1, 1}), rw({2}), rw({1, 2, -1})}, 2);
  CHECK_FALSE(weak_malnormality_witness(fin, 3).has_value());
}

TEST_CASE("SubgroupBasis expression") {
  std::mt19937 rng(37);
  int done = 0;
  while (done < 200) {
    auto gens = random_subgroup(rng, 2, 2, 6);
    SubgroupBasis sb(gens, 2);
    if (!sb.is_basis()) continue;  // random tuples occasionally degenerate
    ++done;
    // random product of the generators expresses back correctly
    Word p(std::vector<Letter>{}, 2);
    std::uniform_int_distribution<int> pick(0, 1);
    for (int i = 0; i < 5; ++i) {
      Word const& w = gens[pick(rng)];
      p = mul(p, pick(rng) ? w : inverse(w));
    }
    auto expr = sb.express(p);
    REQUIRE(expr.has_value());
    CHECK(substitute(*expr, gens, 2) == p);
    // express succeeds exactly on subgroup members
    Word q = mul(p, rw({1}));
    CHECK(sb.express(q).has_value() == sb.contains(q));
  }

  // a simple non-basis tuple is detected
  SubgroupBasis bad({rw({1, 1}), rw({1, 1, 1})}, 2);
  CHECK_FALSE(bad.is_basis());
}
