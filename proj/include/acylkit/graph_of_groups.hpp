#ifndef ACYLKIT_GRAPH_OF_GROUPS_HPP_
#define ACYLKIT_GRAPH_OF_GROUPS_HPP_

#include <string>
#include <vector>

#include "acylkit/word.hpp"

namespace acyl {

// Finite graph of groups with free vertex groups; edge maps are given
// by generator images (images_from[i] and images_to[i] are the two
// embeddings of the i-th edge group generator).
struct GogVertex {
  std::string name;
  int rank = 1;
  std::vector<std::string> gen_names;
};

struct GogEdge {
  int from = 0;
  int to = 0;
  std::vector<Word> images_from;
  std::vector<Word> images_to;
};

struct GraphOfGroups {
  std::vector<GogVertex> vertices;
  std::vector<GogEdge> edges;
};

enum class EdgeLabel { Good, Bad };

struct ReducedGog {
  GraphOfGroups gog;
  std::vector<EdgeLabel> labels;   // per remaining edge
  int contracted = 0;              // number of contracted edges
  bool ascending_hnn_shape = false;  // single vertex + single bad loop
};

// Contracts reducible edges (non-loops with a surjective side) until
// none remain, composing edge maps through the surjection; labels the
// remaining edges good/bad and flags the ascending-HNN shape.
ReducedGog reduce_graph_of_groups(GraphOfGroups gog);

}  // namespace acyl

#endif  // ACYLKIT_GRAPH_OF_GROUPS_HPP_
