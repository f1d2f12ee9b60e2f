#ifndef ACYLKIT_GRAPH_PRODUCT_HPP_
#define ACYLKIT_GRAPH_PRODUCT_HPP_

#include <optional>
#include <string>
#include <vector>

#include "acylkit/word.hpp"

namespace acyl {

enum class VgKind { IntegerCyclic, FiniteCyclic, Free };

struct VertexGroupSpec {
  VgKind kind = VgKind::IntegerCyclic;
  long long order = 0;  // FiniteCyclic
  int rank = 0;         // Free

  bool is_trivial() const { return kind == VgKind::FiniteCyclic && order == 1; }
  bool is_finite() const { return kind == VgKind::FiniteCyclic; }

  static VertexGroupSpec Z() { return {VgKind::IntegerCyclic, 0, 0}; }
  static VertexGroupSpec Zn(long long n) { return {VgKind::FiniteCyclic, n, 0}; }
  static VertexGroupSpec F(int k) { return {VgKind::Free, 0, k}; }

  bool operator==(VertexGroupSpec const&) const = default;
};

// Simplicial presentation graph: named vertices, vertex groups, edges
// (no loops, no multiple edges).
struct PresGraph {
  std::vector<std::string> names;
  std::vector<VertexGroupSpec> groups;
  std::vector<std::vector<bool>> adj;

  int num_vertices() const { return static_cast<int>(names.size()); }
  int vertex(std::string const& name) const;
  bool adjacent(int u, int v) const { return u != v && adj[u][v]; }

  // Builder; edges added by name after all vertices.
  int add_vertex(std::string name, VertexGroupSpec spec);
  void add_edge(std::string const& u, std::string const& v);
};

// Value of one syllable: exponent for (Z, Z_n), reduced word for free
// vertex groups.
struct VgValue {
  long long exp = 0;
  Word w;
  bool operator==(VgValue const&) const = default;
};

struct Syllable {
  int v = 0;
  VgValue val;
  bool operator==(Syllable const&) const = default;
};

// Element of a graph product in canonical shuffle normal form (as
// produced by gp_normal_form; raw sequences are not canonical).
struct GPElement {
  std::vector<Syllable> syls;
  bool empty() const { return syls.empty(); }
  std::size_t size() const { return syls.size(); }
  bool operator==(GPElement const&) const = default;
  bool operator<(GPElement const&) const;
};

// Vertex group arithmetic.
VgValue vg_identity(VertexGroupSpec const& spec);
VgValue vg_reduce(VertexGroupSpec const& spec, VgValue const& raw);
VgValue vg_mul(VertexGroupSpec const& spec, VgValue const& a, VgValue const& b);
VgValue vg_inv(VertexGroupSpec const& spec, VgValue const& a);
bool vg_is_identity(VertexGroupSpec const& spec, VgValue const& a);

// Canonical reduced form: merges same-vertex syllables across commuting
// neighbors, deletes identities, then applies left-greedy ordering by
// vertex name. Two raw sequences represent the same group element iff
// their canonical forms are identical.
GPElement gp_normal_form(std::vector<Syllable> raw, PresGraph const& g);

GPElement gp_mul(GPElement const& x, GPElement const& y, PresGraph const& g);
GPElement gp_inverse(GPElement const& x, PresGraph const& g);
GPElement gp_power(GPElement const& x, int n, PresGraph const& g);
bool gp_equal(GPElement const& x, GPElement const& y, PresGraph const& g);

struct GPCyclicReduction {
  GPElement core;
  GPElement conjugator;
};
GPCyclicReduction gp_cyclic_reduce(GPElement const& x, PresGraph const& g);

// Support of the cyclically reduced core (sorted vertex ids).
std::vector<int> essential_support(GPElement const& x, PresGraph const& g);
std::vector<int> support(GPElement const& x);

// Deletes syllables outside A and renormalizes; the canonical
// retraction onto the full subgroup G_A.
GPElement retraction(GPElement const& x, std::vector<int> const& a,
                     PresGraph const& g);

// Common neighbors of all of A (disjoint from A). Throws on empty A.
std::vector<int> link(std::vector<int> const& a, PresGraph const& g);

// True iff the complement of the induced subgraph on S is connected.
bool is_irreducible(std::vector<int> const& s, PresGraph const& g);

// A witnessing join partition S = A ⊔ B with B ⊆ link(A), from the
// complement components (A = component of the least vertex). nullopt
// iff irreducible.
struct JoinSplit {
  std::vector<int> a, b;
  bool principal = false;  // both G_A and G_B infinite
};
std::optional<JoinSplit> join_decomposition(std::vector<int> const& s,
                                            PresGraph const& g);

// True iff the full subgroup G_S is finite (clique of finite groups).
bool full_subgroup_finite(std::vector<int> const& s, PresGraph const& g);

// Serialization: "v^e" syllables for cyclic values, "v^(w)" for free
// vertex group values, space separated.
std::string format_gp(GPElement const& x, PresGraph const& g);
GPElement parse_gp(std::string const& text, PresGraph const& g);

}  // namespace acyl

#endif  // ACYLKIT_GRAPH_PRODUCT_HPP_
