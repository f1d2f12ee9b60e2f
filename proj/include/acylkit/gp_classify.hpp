#ifndef ACYLKIT_GP_CLASSIFY_HPP_
#define ACYLKIT_GP_CLASSIFY_HPP_

#include <memory>

#include "acylkit/certificate.hpp"
#include "acylkit/splitting.hpp"

namespace acyl {

// The canonical amalgam G = G_A *_{G_C} G_B at a vertex v, with
// A = V \ {v}, B = {v} ∪ link(v), C = link(v). Requires |V| >= 2.
SplittingSpec splitting_at_vertex(int v,
                                  std::shared_ptr<PresGraph const> graph);

// Writes a graph-product element as a tree element for the splitting at
// v (one syllable per graph-product syllable).
TreeElement gp_to_tree(GPElement const& x, int v, SplittingSpec const& spec,
                       PresGraph const& g);

// Searches bounded products of the given generators for an element
// acting hyperbolically on the Bass-Serre tree of the splitting at v.
// Requires v in the essential support of <gens>, which must not be
// contained in {v} ∪ link(v).
std::optional<GPElement> construct_hyperbolic_element(
    std::vector<GPElement> const& gens, int v,
    std::shared_ptr<PresGraph const> graph, int budget);

// Full-group classification: Reducible (join split, with recursive
// sub-certificates), Finite / VirtuallyCyclic for the degenerate
// shapes, or AcylindricallyHyperbolic with a splitting vertex, a
// hyperbolic element and a WPD certificate.
Certificate classify_graph_product(std::shared_ptr<PresGraph const> graph,
                                   bool require_nontrivial, int budget,
                                   int jobs = 1);

// Witness replay for graph-product certificates.
bool recheck_graph_product(Certificate const& cert,
                           std::shared_ptr<PresGraph const> graph, int budget);

}  // namespace acyl

#endif  // ACYLKIT_GP_CLASSIFY_HPP_
