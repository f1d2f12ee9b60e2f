#ifndef ACYLKIT_STABILIZER_HPP_
#define ACYLKIT_STABILIZER_HPP_

#include <optional>

#include "acylkit/certificate.hpp"
#include "acylkit/parabolic.hpp"
#include "acylkit/splitting.hpp"

namespace acyl {

// Pointwise stabilizer of a tree segment, in whichever exact form the
// splitting's factor kinds allow: an explicit element list (all factors
// finite), a Stallings core in the coordinates of a vertex group (free
// or infinite cyclic factors), or a parabolic descriptor (graph-product
// factors). `finite` is always meaningful.
struct StabilizerDesc {
  enum class Kind { VertexGroup, ExplicitFinite, FreeCore, CyclicCore, Parabolic };
  Kind kind = Kind::ExplicitFinite;
  bool finite = false;
  long long size = -1;  // >= 0 when finite and computable

  std::vector<TreeElement> elements;  // ExplicitFinite (with identity)
  CoreGraph core;                     // FreeCore: subgroup K with
  TreeLocus core_vertex;              //   stab = g K g^{-1}, g = vertex rep
  long long cyclic_step = 0;          // CyclicCore: K = <a^step>, 0 = trivial
  ParabolicDesc parabolic;            // Parabolic
  TreeLocus vertex;                   // VertexGroup (single-vertex segment)
};

nlohmann::json tree_element_to_json(SplittingSpec const& spec,
                                    TreeElement const& te);
TreeElement tree_element_from_json(SplittingSpec const& spec,
                                   nlohmann::json const& j);
nlohmann::json locus_to_json(SplittingSpec const& spec, TreeLocus const& l);
TreeLocus locus_from_json(SplittingSpec const& spec, nlohmann::json const& j);

// Pointwise stabilizer of the whole segment [u, v] (vertices; u = v
// gives the vertex stabilizer).
StabilizerDesc segment_pointwise_stabilizer(TreeLocus const& u,
                                            TreeLocus const& v,
                                            SplittingSpec const& spec);

// Pointwise stabilizer of the convex hull of two edges; this equals the
// intersection of their stabilizers.
StabilizerDesc two_edge_hull_stabilizer(TreeLocus const& e, TreeLocus const& f,
                                        SplittingSpec const& spec);

// Searches l <= budget with pst(u, h^l u) finite for u on the axis of
// h; the returned certificate (criterion "Cor-3.4-wpd") names u, v, l
// and the stabilizer size, and is independently recheckable.
std::optional<Certificate> wpd_certificate(TreeElement const& h,
                                           SplittingSpec const& spec,
                                           int budget);

// Exhaustive epsilon-stabilizer audit over the radius-R ball of an
// amalgam of finite groups: checks the coset bound
// |pst^eps({x,y})| <= 2(2 eps + 1) |pst({u,v})| over all admissible
// configurations.
struct EpsilonReport {
  long long pair_count = 0;       // (x, y) pairs with d > 2 eps
  long long config_count = 0;     // (x, y, u, v) configurations checked
  long long violations = 0;
  double max_ratio = 0.0;         // max |pst^eps| / (bound)
  long long max_pst_eps = 0;      // empirical N for Def. 1.1 at R = 2 eps + 1
  long long ball_vertices = 0;
};
EpsilonReport epsilon_stabilizer_check(SplittingSpec const& spec, int radius,
                                       int eps);

// Amalgam/HNN acylindrical hyperbolicity criteria with a bounded
// shortlex witness search; Unknown when the search is exhausted.
Certificate classify_splitting(SplittingSpec const& spec, int budget);

// Deterministic enumeration of group elements as freely reduced words
// in the splitting's standard generators (and the stable letter),
// length <= budget, shortlex order. Labels use the declared names.
std::vector<std::pair<std::string, TreeElement>> group_ball_words(
    SplittingSpec const& spec, int budget);

// Index of the edge subgroup in a factor; nullopt = infinite.
std::optional<long long> edge_index_in_factor(SplittingSpec const& spec,
                                              int which);

// Re-verification entry point used by `recheck`: recomputes the
// stabilizer named by a WPD certificate and confirms its finiteness
// and size.
bool recheck_wpd(Certificate const& cert, SplittingSpec const& spec);

}  // namespace acyl

#endif  // ACYLKIT_STABILIZER_HPP_
