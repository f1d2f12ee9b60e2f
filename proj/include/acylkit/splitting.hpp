#ifndef ACYLKIT_SPLITTING_HPP_
#define ACYLKIT_SPLITTING_HPP_

#include <memory>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "acylkit/core_graph.hpp"
#include "acylkit/graph_product.hpp"
#include "acylkit/word.hpp"

namespace acyl {

// Element of a factor group: exponent for cyclic factors, reduced word
// for free factors, GPElement for full subgroups of a graph product.
using FactorElem = std::variant<long long, Word, GPElement>;

// One factor of a splitting together with oracles for its edge
// subgroup(s). Cyclic factors are Z (order 0) or Z_n.
struct FactorDesc {
  enum class Kind { Cyclic, Free, GPFull };
  Kind kind = Kind::Cyclic;
  long long order = 0;                  // Cyclic
  int rank = 0;                         // Free
  std::vector<std::string> gen_names;   // Cyclic/Free serialization
  std::vector<int> subset;              // GPFull: vertices spanning the factor
};

// Edge subgroup data within one factor. For cyclic factors the subgroup
// is generated by a single exponent; for free factors by words (which
// must form a free basis of what they generate); for graph-product
// factors it is the full subgroup on a vertex subset.
struct EdgeSubgroup {
  std::vector<long long> exps;              // Cyclic (size <= 1)
  std::vector<Word> gens;                   // Free
  std::shared_ptr<SubgroupBasis> basis;     // Free
  std::vector<int> subset;                  // GPFull
};

// Syllable of a tree element: a factor element (tagged with its side
// for amalgams) or a stable letter power for HNN extensions.
struct TreeSyl {
  bool stable = false;
  int exp = 0;   // +1 / -1 when stable
  int side = 0;  // factor index; always 0 for HNN base syllables
  FactorElem e;
};

struct TreeElement {
  std::vector<TreeSyl> syls;
  bool empty() const { return syls.empty(); }
  std::size_t size() const { return syls.size(); }
};

// A vertex or edge of the Bass-Serre tree, addressed by a coset
// representative: vertex g.(factor `side`), or edge g.C.
struct TreeLocus {
  bool is_edge = false;
  int side = 0;
  TreeElement g;
};

struct Elliptic {
  TreeLocus fixed;
};
struct Hyperbolic {
  long long translation_length = 0;
  TreeElement conjugator;  // axis passes through conjugator . base
  TreeElement core;        // cyclically reduced conjugate
};
using ElementClass = std::variant<Elliptic, Hyperbolic>;

// An amalgam A *_C B or HNN extension <A, t | t^-1 C t = D> with exact
// oracles in each supported factor kind. Bass-Serre tree conventions:
//   amalgam: vertices G/A ∪ G/B, edges G/C, edge gC joins gA -- gB;
//   HNN:     vertices G/A, edges G/C, edge gC joins gA -- gtA.
class SplittingSpec {
 public:
  enum class Shape { Amalgam, Hnn };

  static SplittingSpec amalgam(FactorDesc a, FactorDesc b, EdgeSubgroup c_in_a,
                               EdgeSubgroup c_in_b,
                               std::shared_ptr<PresGraph const> ambient = {});
  static SplittingSpec hnn(FactorDesc a, EdgeSubgroup c, EdgeSubgroup d,
                           std::shared_ptr<PresGraph const> ambient = {});

  Shape shape() const { return shape_; }
  FactorDesc const& factor(int side) const { return factors_[side]; }
  EdgeSubgroup const& edge(int side) const { return edges_[side]; }
  PresGraph const* ambient() const { return ambient_.get(); }

  // --- factor element arithmetic
  FactorElem f_identity(int side) const;
  FactorElem f_mul(int side, FactorElem const& a, FactorElem const& b) const;
  FactorElem f_inv(int side, FactorElem const& a) const;
  bool f_is_identity(int side, FactorElem const& a) const;
  bool f_equal(int side, FactorElem const& a, FactorElem const& b) const;

  // --- edge subgroup oracles
  // amalgam: edge(0) = C inside A, edge(1) = C inside B (generators are
  // paired); HNN: edge(0) = C, edge(1) = D, both inside A, and
  // t^-1 c t = phi(c) maps edge(0) to edge(1) along paired generators.
  bool in_edge_subgroup(int which, FactorElem const& a) const;
  // Carries an element of edge subgroup `which` to the paired one.
  FactorElem transport(int which, FactorElem const& a) const;

  // --- Britton / amalgam normalization
  TreeElement normalize(std::vector<TreeSyl> raw) const;
  TreeElement mul(TreeElement const& x, TreeElement const& y) const;
  TreeElement inv(TreeElement const& x) const;
  TreeElement power(TreeElement const& x, int n) const;
  bool equal(TreeElement const& x, TreeElement const& y) const;
  bool is_identity(TreeElement const& x) const;

  // true iff x lies in the factor group `side` (as a subgroup of G).
  bool in_factor(TreeElement const& x, int side) const;

  // --- tree geometry
  ElementClass classify(TreeElement const& g) const;
  long long translation_length(TreeElement const& g) const;

  TreeLocus base_vertex(int side = 0) const;
  TreeLocus translate(TreeElement const& g, TreeLocus const& l) const;
  bool loci_equal(TreeLocus const& a, TreeLocus const& b) const;

  // Geodesic between two vertices, as the list of traversed edges
  // (gC coset representatives). Throws if either locus is an edge.
  std::vector<TreeLocus> geodesic_edges(TreeLocus const& u,
                                        TreeLocus const& v) const;
  long long distance(TreeLocus const& u, TreeLocus const& v) const;

  // The two endpoints of an edge locus.
  std::pair<TreeLocus, TreeLocus> endpoints(TreeLocus const& e) const;

  // First n edges of the axis of a hyperbolic element, starting at the
  // canonical fundamental segment.
  std::vector<TreeLocus> axis_segment(TreeElement const& g, int n) const;

  // All elements g with d(base, g.base) <= radius, in a deterministic
  // (length-then-lex) order. Requires enumerable factors (cyclic finite
  // or GPFull with finite vertex groups). Used by exhaustive checks.
  std::vector<TreeElement> ball_elements(int radius) const;

  // Deterministic single-syllable enumeration helpers.
  std::vector<FactorElem> factor_elements(int side) const;  // finite factors

  std::string format_element(TreeElement const& x) const;
  std::string format_locus(TreeLocus const& l) const;

 private:
  Shape shape_ = Shape::Amalgam;
  FactorDesc factors_[2];
  EdgeSubgroup edges_[2];
  std::shared_ptr<PresGraph const> ambient_;

  void validate() const;
  // appends one syllable to a normalized prefix, restoring the invariant
  void push(std::vector<TreeSyl>& stack, TreeSyl s) const;
};

}  // namespace acyl

#endif  // ACYLKIT_SPLITTING_HPP_
