#include "acylkit/graph_of_groups.hpp"

#include <algorithm>

#include "acylkit/core_graph.hpp"
#include "acylkit/errors.hpp"

namespace acyl {

namespace {

bool side_onto(std::vector<Word> const& images, int vertex_rank) {
  auto idx = subgroup_index(core_graph(images, vertex_rank));
  return idx.has_value() && *idx == 1;
}

}  // namespace

ReducedGog reduce_graph_of_groups(GraphOfGroups gog) {
  for (GogEdge const& e : gog.edges) {
    if (e.images_from.size() != e.images_to.size())
      throw SchemaError("edges", "edge embeddings must pair up");
    if (e.from < 0 || e.from >= static_cast<int>(gog.vertices.size()) ||
        e.to < 0 || e.to >= static_cast<int>(gog.vertices.size()))
      throw SchemaError("edges", "edge endpoint out of range");
  }
  ReducedGog out;
  out.contracted = 0;

  bool progress = true;
  while (progress) {
    progress = false;
    for (std::size_t ei = 0; ei < gog.edges.size(); ++ei) {
      GogEdge const& e = gog.edges[ei];
      if (e.from == e.to) continue;
      bool onto_from = side_onto(e.images_from, gog.vertices[e.from].rank);
      bool onto_to = side_onto(e.images_to, gog.vertices[e.to].rank);
      if (!onto_from && !onto_to) continue;

      // Contract the edge into the vertex whose side is NOT the
      // surjection (the surjective side's factor is absorbed).
      int gone = onto_from ? e.from : e.to;
      int kept = onto_from ? e.to : e.from;
      std::vector<Word> const& onto_images =
          onto_from ? e.images_from : e.images_to;
      std::vector<Word> const& kept_images =
          onto_from ? e.images_to : e.images_from;
      SubgroupBasis basis(onto_images, gog.vertices[gone].rank);
      if (!basis.is_basis())
        throw SchemaError("edges",
                          "surjective edge map image must be a free basis");
      // carrier: word in G_gone -> word in G_kept
      auto carry = [&](Word const& w) {
        auto gamma = basis.express(w);
        if (!gamma)
          throw SchemaError("edges", "edge image outside the edge subgroup");
        return substitute(*gamma, kept_images, gog.vertices[kept].rank);
      };

      GraphOfGroups next;
      std::vector<int> remap(gog.vertices.size(), -1);
      for (std::size_t v = 0; v < gog.vertices.size(); ++v) {
        if (static_cast<int>(v) == gone) continue;
        remap[v] = static_cast<int>(next.vertices.size());
        next.vertices.push_back(gog.vertices[v]);
      }
      remap[gone] = remap[kept];
      for (std::size_t fi = 0; fi < gog.edges.size(); ++fi) {
        if (fi == ei) continue;
        GogEdge f = gog.edges[fi];
        if (f.from == gone)
          for (Word& w : f.images_from) w = carry(w);
        if (f.to == gone)
          for (Word& w : f.images_to) w = carry(w);
        f.from = remap[f.from];
        f.to = remap[f.to];
        next.edges.push_back(std::move(f));
      }
      gog = std::move(next);
      ++out.contracted;
      progress = true;
      break;
    }
  }

  for (GogEdge const& e : gog.edges) {
    bool onto_from = side_onto(e.images_from, gog.vertices[e.from].rank);
    bool onto_to = side_onto(e.images_to, gog.vertices[e.to].rank);
    out.labels.push_back(!onto_from && !onto_to ? EdgeLabel::Good
                                                : EdgeLabel::Bad);
  }
  out.ascending_hnn_shape = gog.vertices.size() == 1 && gog.edges.size() == 1 &&
                            out.labels[0] == EdgeLabel::Bad;
  out.gog = std::move(gog);
  return out;
}

}  // namespace acyl
