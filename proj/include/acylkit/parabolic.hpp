#ifndef ACYLKIT_PARABOLIC_HPP_
#define ACYLKIT_PARABOLIC_HPP_

#include "acylkit/graph_product.hpp"

namespace acyl {

// Descriptor of the parabolic subgroup f G_S f^{-1}. The conjugator is
// stored as the minimal representative of the coset f N(G_S), where
// N(G_S) = G_{S ∪ link(S)}, so equal subgroups have equal descriptors.
struct ParabolicDesc {
  GPElement conj;
  std::vector<int> subset;  // sorted

  bool operator==(ParabolicDesc const&) const = default;
};

ParabolicDesc make_parabolic(GPElement const& f, std::vector<int> s,
                             PresGraph const& g);

int pdim(ParabolicDesc const& p);

bool parabolic_contains(ParabolicDesc const& p, GPElement const& x,
                        PresGraph const& g);

// Subgroup containment P ⊆ Q, decided via generators of G_S.
bool parabolic_subset(ParabolicDesc const& p, ParabolicDesc const& q,
                      PresGraph const& g);

// The minimal parabolic containing all of X.
ParabolicDesc parabolic_closure(std::vector<GPElement> const& xs,
                                PresGraph const& g);

ParabolicDesc parabolic_intersection(ParabolicDesc const& p,
                                     ParabolicDesc const& q,
                                     PresGraph const& g);

// True iff the subgroup described is finite.
bool parabolic_finite(ParabolicDesc const& p, PresGraph const& g);

// Generators of G_S, one per vertex group generator.
std::vector<GPElement> full_subgroup_generators(std::vector<int> const& s,
                                                PresGraph const& g);

}  // namespace acyl

#endif  // ACYLKIT_PARABOLIC_HPP_
