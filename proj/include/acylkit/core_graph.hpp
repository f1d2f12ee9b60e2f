#ifndef ACYLKIT_CORE_GRAPH_HPP_
#define ACYLKIT_CORE_GRAPH_HPP_

#include <optional>
#include <vector>

#include "acylkit/word.hpp"

namespace acyl {

// Folded Stallings graph of a finitely generated subgroup of F_rank,
// with base vertex 0. step[v][slot(x)] is the vertex reached from v by
// reading letter x (slot 2(g-1) for +g, 2(g-1)+1 for -g), or -1.
//
// Graphs built by core_graph() are canonical: vertices are numbered in
// BFS order from the base with slots scanned in increasing order, so
// two subgroups are equal iff their CoreGraphs compare equal.
struct CoreGraph {
  int rank = 1;
  std::vector<std::vector<int>> step;

  int num_vertices() const { return static_cast<int>(step.size()); }
  long long num_edges() const;  // positive-label edges

  int walk(int v, Letter x) const {
    return step[v][x > 0 ? 2 * (x - 1) : 2 * (-x - 1) + 1];
  }

  // Degree of v = number of incident edge endpoints (out + in).
  int degree(int v) const;

  bool operator==(CoreGraph const& other) const = default;
};

// Folded, trimmed, canonically numbered core graph of <generators>.
// Independent of generator order and fold order. The empty list gives
// the one-vertex graph (trivial subgroup).
CoreGraph core_graph(std::vector<Word> const& generators, int rank);

// True iff w reads a closed path at the base vertex.
bool membership(CoreGraph const& g, Word const& w);

// First Betti number |E| - |V| + 1 = rank of the subgroup.
long long subgroup_rank(CoreGraph const& g);

// Number of vertices when the graph is complete (every vertex has all
// 2*rank slots), std::nullopt for infinite index.
std::optional<long long> subgroup_index(CoreGraph const& g);

// Core graph of the intersection, via the labeled fiber product at
// (base, base), trimmed and canonicalized.
CoreGraph fiber_intersection(CoreGraph const& g1, CoreGraph const& g2);

// Free basis read off a BFS spanning tree (one word per non-tree edge).
std::vector<Word> graph_basis(CoreGraph const& g);

// Core graph of w H w^{-1}.
CoreGraph conjugate_core(CoreGraph const& h, Word const& w);

// The constructive trivializer of the free-subgroup lemma: both C and D
// must be of infinite index in F_rank (rank >= 2); returns reduced f
// with f<D>f^{-1} meeting <C> trivially. Throws FiniteIndexInput.
Word conjugate_trivializer(CoreGraph const& c, CoreGraph const& d);

// Searches words g of length <= radius (shortlex), plus the constructive
// trivializer, for <C>^g meeting <C> trivially. nullopt = not found
// (inconclusive).
std::optional<Word> weak_malnormality_witness(CoreGraph const& c, int radius);

// Expression of subgroup elements in a given generating tuple, via
// folding with generator decorations. Requires the tuple to be a free
// basis of the subgroup it generates (checked: tuple size == graph
// rank); basis() reports whether that held.
class SubgroupBasis {
 public:
  SubgroupBasis(std::vector<Word> gens, int rank);

  bool is_basis() const { return is_basis_; }
  int ambient_rank() const { return rank_; }
  std::vector<Word> const& generators() const { return gens_; }
  CoreGraph const& graph() const { return graph_; }

  bool contains(Word const& w) const;

  // Word over F(#gens) whose evaluation at the generators equals w,
  // or nullopt when w is not in the subgroup.
  std::optional<Word> express(Word const& w) const;

 private:
  struct Edge {
    int src, tgt, label;  // label is a positive generator index
    Word dec;             // decoration over F(#gens)
    bool alive = true;
  };

  int trace(int v, Letter x, Word* acc) const;

  std::vector<Word> gens_;
  int rank_;
  bool is_basis_ = false;
  CoreGraph graph_;                        // canonical folded core
  std::vector<Edge> edges_;                // decorated folded graph
  std::vector<std::vector<int>> slots_;    // slots_[v][slot(x)] = edge id
  int base_ = 0;
};

// Evaluates a word over F(images.size()) by substituting images.
Word substitute(Word const& gamma_word, std::vector<Word> const& images,
                int target_rank);

}  // namespace acyl

#endif  // ACYLKIT_CORE_GRAPH_HPP_
