#include "acylkit/core_graph.hpp"

#include <algorithm>
#include <deque>
#include <map>
#include <numeric>

#include "acylkit/errors.hpp"

namespace acyl {

namespace {

int slot_of(Letter x) { return x > 0 ? 2 * (x - 1) : 2 * (-x - 1) + 1; }
int rev_slot(int s) { return s ^ 1; }
Letter letter_of_slot(int s) { return (s & 1) ? -(s / 2 + 1) : s / 2 + 1; }

// Union-find folding of a raw labeled graph into a deterministic
// transition table. Vertices are created on demand; edges are queued
// and conflicts (two equal-label edges at a vertex) trigger merges.
class Folder {
 public:
  explicit Folder(int rank) : k_(rank) { add_vertex(); }

  int add_vertex() {
    parent_.push_back(static_cast<int>(parent_.size()));
    tab_.emplace_back(2 * k_, -1);
    return static_cast<int>(parent_.size()) - 1;
  }

  int find(int v) {
    while (parent_[v] != v) {
      parent_[v] = parent_[parent_[v]];
      v = parent_[v];
    }
    return v;
  }

  void add_edge(int v, Letter x, int w) {
    pending_.push_back({v, slot_of(x), w});
  }

  void run() {
    while (!pending_.empty()) {
      auto [v, s, w] = pending_.front();
      pending_.pop_front();
      v = find(v);
      w = find(w);
      int cur = target(v, s);
      if (cur == -1) {
        int curr = target(w, rev_slot(s));
        if (curr == -1) {
          tab_[v][s] = w;
          tab_[w][rev_slot(s)] = v;
        } else if (curr == v) {
          tab_[v][s] = w;
        } else {
          unite(curr, v);
          pending_.push_back({find(v), s, find(w)});
        }
      } else if (cur == w) {
        int curr = target(w, rev_slot(s));
        if (curr == -1)
          tab_[w][rev_slot(s)] = v;
        else if (curr != v)
          unite(curr, v), pending_.push_back({find(v), s, find(w)});
      } else {
        unite(cur, w);
        pending_.push_back({find(v), s, find(w)});
      }
    }
  }

  // Transition table restricted to representatives, with find() applied
  // to all targets.
  std::vector<std::vector<int>> const& table() { return tab_; }
  int target(int v, int s) {
    int t = tab_[v][s];
    if (t == -1) return -1;
    t = find(t);
    tab_[v][s] = t;
    return t;
  }

 private:
  void unite(int a, int b) {
    a = find(a);
    b = find(b);
    if (a == b) return;
    // Keep the older vertex as representative so the base (vertex 0)
    // always survives.
    if (b < a) std::swap(a, b);
    parent_[b] = a;
    for (int s = 0; s < 2 * k_; ++s) {
      int z = tab_[b][s];
      if (z == -1) continue;
      z = find(z);
      if (tab_[z][rev_slot(s)] != -1 && find(tab_[z][rev_slot(s)]) == b)
        tab_[z][rev_slot(s)] = -1;
      pending_.push_back({a, s, z});
    }
    std::fill(tab_[b].begin(), tab_[b].end(), -1);
  }

  int k_;
  std::vector<int> parent_;
  std::vector<std::vector<int>> tab_;
  std::deque<std::array<int, 3>> pending_;
};

// Removes vertices of degree <= 1 (except the base) and unreachable
// vertices, then renumbers in BFS order with slots scanned in order.
CoreGraph canonicalize(std::vector<std::vector<int>> const& tab, int base,
                       int rank) {
  int n = static_cast<int>(tab.size());
  std::vector<bool> dead(n, false);
  // Reachability from base.
  {
    std::vector<bool> seen(n, false);
    std::deque<int> q{base};
    seen[base] = true;
    while (!q.empty()) {
      int v = q.front();
      q.pop_front();
      for (int s = 0; s < 2 * rank; ++s) {
        int w = tab[v][s];
        if (w != -1 && !seen[w]) seen[w] = true, q.push_back(w);
      }
    }
    for (int v = 0; v < n; ++v) dead[v] = !seen[v];
  }
  auto degree = [&](int v) {
    int d = 0;
    for (int s = 0; s < 2 * rank; ++s)
      if (tab[v][s] != -1 && !dead[tab[v][s]]) ++d;
    return d;
  };
  bool changed = true;
  while (changed) {
    changed = false;
    for (int v = 0; v < n; ++v) {
      if (v == base || dead[v]) continue;
      if (degree(v) <= 1) {
        dead[v] = true;
        changed = true;
      }
    }
  }
  // BFS renumbering.
  std::vector<int> id(n, -1);
  std::vector<int> order;
  id[base] = 0;
  order.push_back(base);
  for (std::size_t i = 0; i < order.size(); ++i) {
    int v = order[i];
    for (int s = 0; s < 2 * rank; ++s) {
      int w = tab[v][s];
      if (w == -1 || dead[w]) continue;
      if (id[w] == -1) {
        id[w] = static_cast<int>(order.size());
        order.push_back(w);
      }
    }
  }
  CoreGraph g;
  g.rank = rank;
  g.step.assign(order.size(), std::vector<int>(2 * rank, -1));
  for (std::size_t i = 0; i < order.size(); ++i) {
    int v = order[i];
    for (int s = 0; s < 2 * rank; ++s) {
      int w = tab[v][s];
      if (w != -1 && !dead[w]) g.step[i][s] = id[w];
    }
  }
  return g;
}

}  // namespace

long long CoreGraph::num_edges() const {
  long long e = 0;
  for (auto const& row : step)
    for (int s = 0; s < 2 * rank; s += 2)
      if (row[s] != -1) ++e;
  return e;
}

int CoreGraph::degree(int v) const {
  int d = 0;
  for (int s = 0; s < 2 * rank; ++s)
    if (step[v][s] != -1) ++d;
  return d;
}

CoreGraph core_graph(std::vector<Word> const& generators, int rank) {
  Folder f(rank);
  for (Word const& g : generators) {
    if (g.empty()) continue;
    int cur = 0;
    for (std::size_t i = 0; i < g.size(); ++i) {
      int next = (i + 1 == g.size()) ? 0 : f.add_vertex();
      f.add_edge(cur, g.letters[i], next);
      cur = next;
    }
  }
  f.run();
  int base = f.find(0);
  return canonicalize(f.table(), base, rank);
}

bool membership(CoreGraph const& g, Word const& w) {
  int v = 0;
  for (Letter x : w.letters) {
    v = g.walk(v, x);
    if (v == -1) return false;
  }
  return v == 0;
}

long long subgroup_rank(CoreGraph const& g) {
  return g.num_edges() - g.num_vertices() + 1;
}

std::optional<long long> subgroup_index(CoreGraph const& g) {
  for (int v = 0; v < g.num_vertices(); ++v)
    if (g.degree(v) < 2 * g.rank) return std::nullopt;
  return g.num_vertices();
}

CoreGraph fiber_intersection(CoreGraph const& g1, CoreGraph const& g2) {
  int k = g1.rank;
  std::map<std::pair<int, int>, int> id;
  std::vector<std::pair<int, int>> verts;
  std::vector<std::vector<int>> tab;
  auto get = [&](int a, int b) {
    auto [it, fresh] = id.try_emplace({a, b}, static_cast<int>(verts.size()));
    if (fresh) {
      verts.push_back({a, b});
      tab.emplace_back(2 * k, -1);
    }
    return it->second;
  };
  get(0, 0);
  for (std::size_t i = 0; i < verts.size(); ++i) {
    auto [a, b] = verts[i];
    for (int s = 0; s < 2 * k; ++s) {
      int a2 = g1.step[a][s], b2 = g2.step[b][s];
      if (a2 != -1 && b2 != -1) tab[i][s] = get(a2, b2);
    }
  }
  return canonicalize(tab, 0, k);
}

std::vector<Word> graph_basis(CoreGraph const& g) {
  int n = g.num_vertices();
  std::vector<int> parent(n, -1), via(n, 0);
  std::deque<int> q{0};
  std::vector<bool> seen(n, false);
  seen[0] = true;
  // BFS tree; record (parent, letter) per vertex.
  while (!q.empty()) {
    int v = q.front();
    q.pop_front();
    for (int s = 0; s < 2 * g.rank; ++s) {
      int w = g.step[v][s];
      if (w == -1 || seen[w]) continue;
      seen[w] = true;
      parent[w] = v;
      via[w] = letter_of_slot(s);
      q.push_back(w);
    }
  }
  auto path_from_base = [&](int v) {
    std::vector<Letter> ls;
    while (v != 0) {
      ls.push_back(via[v]);
      v = parent[v];
    }
    std::reverse(ls.begin(), ls.end());
    return Word(ls, g.rank);
  };
  std::vector<Word> basis;
  for (int v = 0; v < n; ++v) {
    for (int s = 0; s < 2 * g.rank; s += 2) {
      int w = g.step[v][s];
      if (w == -1) continue;
      Letter x = letter_of_slot(s);
      bool is_tree = (parent[w] == v && via[w] == x) ||
                     (parent[v] == w && via[v] == -x);
      if (is_tree) continue;
      Word word = mul(mul(path_from_base(v), Word({x}, g.rank)),
                      inverse(path_from_base(w)));
      if (!word.empty()) basis.push_back(word);
    }
  }
  return basis;
}

CoreGraph conjugate_core(CoreGraph const& h, Word const& w) {
  std::vector<Word> gens = graph_basis(h);
  for (Word& g : gens) g = conjugate(w, g);
  return core_graph(gens, h.rank);
}

Word conjugate_trivializer(CoreGraph const& c, CoreGraph const& d) {
  int k = c.rank;
  if (k < 2)
    throw FiniteIndexInput("ambient rank must be at least 2");
  if (subgroup_index(c) || subgroup_index(d))
    throw FiniteIndexInput("both subgroups must have infinite index");

  // First vertex with a free slot for the wanted direction, together
  // with the BFS path word leading to it.
  // First vertex (in canonical order) with a free slot, plus the BFS
  // path word to it. A free slot for letter y at v means: no outgoing
  // y-edge, equivalently no incoming (-y)-edge.
  auto deficient = [&](CoreGraph const& g, bool outgoing) {
    int n = g.num_vertices();
    std::vector<int> parent(n, -1), via(n, 0);
    std::vector<int> order{0};
    std::vector<bool> seen(n, false);
    seen[0] = true;
    for (std::size_t i = 0; i < order.size(); ++i) {
      int v = order[i];
      for (int s = 0; s < 2 * g.rank; ++s) {
        int w = g.step[v][s];
        if (w == -1 || seen[w]) continue;
        seen[w] = true;
        parent[w] = v;
        via[w] = letter_of_slot(s);
        order.push_back(w);
      }
    }
    for (int v : order) {
      for (int s = 0; s < 2 * g.rank; ++s) {
        if (g.step[v][s] != -1) continue;
        Letter y = letter_of_slot(s);
        Letter missing = outgoing ? y : -y;
        std::vector<Letter> path;
        int u = v;
        while (u != 0) {
          path.push_back(via[u]);
          u = parent[u];
        }
        std::reverse(path.begin(), path.end());
        return std::pair<Word, Letter>(Word(path, g.rank), missing);
      }
    }
    throw FiniteIndexInput("no deficient vertex found");
  };

  auto [p1, x1] = deficient(c, true);   // no outgoing x1
  auto [p2, x2] = deficient(d, false);  // no incoming x2
  std::vector<Letter> mid{x1};
  if (x2 == -x1) {
    for (int g = 1; g <= k; ++g) {
      bool chosen = false;
      for (Letter y : {g, -g}) {
        if (y != -x1 && y != x1) {
          mid.push_back(y);
          chosen = true;
          break;
        }
      }
      if (chosen) break;
    }
  }
  mid.push_back(x2);
  Word w(mid, k);
  return mul(mul(p1, w), inverse(p2));
}

std::optional<Word> weak_malnormality_witness(CoreGraph const& c, int radius) {
  auto trivial_meet = [&](Word const& g) {
    CoreGraph conj = conjugate_core(c, g);
    return subgroup_rank(fiber_intersection(conj, c)) == 0;
  };
  for (Word const& g : reduced_words_up_to(c.rank, radius))
    if (trivial_meet(g)) return g;
  if (!subgroup_index(c) && c.rank >= 2) {
    Word f = conjugate_trivializer(c, c);
    if (trivial_meet(f)) return f;
  }
  return std::nullopt;
}

// --- SubgroupBasis -------------------------------------------------------

SubgroupBasis::SubgroupBasis(std::vector<Word> gens, int rank)
    : gens_(std::move(gens)), rank_(rank) {
  graph_ = core_graph(gens_, rank_);
  int m = static_cast<int>(gens_.size());
  is_basis_ = (subgroup_rank(graph_) == m);
  for (Word const& g : gens_)
    if (g.empty()) is_basis_ = false;

  // Decorated bouquet: the first traversed edge of each generator loop
  // carries the abstract generator symbol.
  std::vector<int> vertex_rep;  // union-find
  auto add_vertex = [&]() {
    slots_.emplace_back(2 * rank_, -1);
    vertex_rep.push_back(static_cast<int>(slots_.size()) - 1);
    return static_cast<int>(slots_.size()) - 1;
  };
  add_vertex();  // base
  auto uf_find = [&](int v) {
    while (vertex_rep[v] != v) {
      vertex_rep[v] = vertex_rep[vertex_rep[v]];
      v = vertex_rep[v];
    }
    return v;
  };
  for (int i = 0; i < m; ++i) {
    Word const& g = gens_[i];
    if (g.empty()) continue;
    int cur = 0;
    for (std::size_t j = 0; j < g.size(); ++j) {
      int next = (j + 1 == g.size()) ? 0 : add_vertex();
      Letter x = g.letters[j];
      // dec is the contribution of traversing the edge in generator
      // direction; a reversed edge stores the inverse.
      Word dec = (j == 0) ? Word({i + 1}, m) : Word(std::vector<Letter>{}, m);
      if (x > 0)
        edges_.push_back({cur, next, x, dec, true});
      else
        edges_.push_back({next, cur, -x, inverse(dec), true});
      cur = next;
    }
  }

  auto gauge = [&](int w, Word const& g) {
    for (Edge& e : edges_) {
      if (!e.alive) continue;
      if (uf_find(e.src) == w) e.dec = mul(g, e.dec);
      if (uf_find(e.tgt) == w) e.dec = mul(e.dec, inverse(g));
    }
  };

  // Quadratic folding: repeatedly resolve one conflict (two alive edges
  // sharing source+label or target+label) until none remain.
  bool changed = true;
  while (changed) {
    changed = false;
    for (std::size_t i = 0; i < edges_.size() && !changed; ++i) {
      if (!edges_[i].alive) continue;
      for (std::size_t j = i + 1; j < edges_.size() && !changed; ++j) {
        if (!edges_[j].alive) continue;
        if (edges_[i].label != edges_[j].label) continue;
        Edge& a = edges_[i];
        Edge& b = edges_[j];
        int as = uf_find(a.src), at = uf_find(a.tgt);
        int bs = uf_find(b.src), bt = uf_find(b.tgt);
        if (as == bs && at == bt) {
          if (a.dec != b.dec) is_basis_ = false;
          b.alive = false;
          changed = true;
        } else if (as == bs) {
          // identify targets; gauge the one that is not the base
          if (bt != 0) {
            gauge(bt, mul(inverse(a.dec), b.dec));  // dec_b * g^{-1} = dec_a
            vertex_rep[bt] = at;
          } else {
            gauge(at, mul(inverse(b.dec), a.dec));
            vertex_rep[at] = bt;
          }
          changed = true;
        } else if (at == bt) {
          if (bs != 0) {
            gauge(bs, mul(a.dec, inverse(b.dec)));  // g * dec_b = dec_a
            vertex_rep[bs] = as;
          } else {
            gauge(as, mul(b.dec, inverse(a.dec)));
            vertex_rep[as] = bs;
          }
          changed = true;
        }
      }
    }
  }

  // Freeze representatives and build the slot table.
  for (Edge& e : edges_) {
    e.src = uf_find(e.src);
    e.tgt = uf_find(e.tgt);
  }
  base_ = uf_find(0);
  for (auto& row : slots_) std::fill(row.begin(), row.end(), -1);
  for (std::size_t i = 0; i < edges_.size(); ++i) {
    if (!edges_[i].alive) continue;
    Edge const& e = edges_[i];
    slots_[e.src][slot_of(e.label)] = static_cast<int>(i);
    slots_[e.tgt][slot_of(-e.label)] = static_cast<int>(i);
  }
}

int SubgroupBasis::trace(int v, Letter x, Word* acc) const {
  int eid = slots_[v][slot_of(x)];
  if (eid == -1) return -1;
  Edge const& e = edges_[eid];
  if (x > 0) {
    if (acc) *acc = mul(*acc, e.dec);
    return e.tgt;
  }
  if (acc) *acc = mul(*acc, inverse(e.dec));
  return e.src;
}

bool SubgroupBasis::contains(Word const& w) const {
  return membership(graph_, w);
}

std::optional<Word> SubgroupBasis::express(Word const& w) const {
  Word acc(std::vector<Letter>{}, static_cast<int>(gens_.size()));
  int v = base_;
  for (Letter x : w.letters) {
    v = trace(v, x, &acc);
    if (v == -1) return std::nullopt;
  }
  if (v != base_) return std::nullopt;
  return acc;
}

Word substitute(Word const& gamma_word, std::vector<Word> const& images,
                int target_rank) {
  Word acc(std::vector<Letter>{}, target_rank);
  for (Letter x : gamma_word.letters) {
    Word const& img = images.at(std::abs(x) - 1);
    acc = mul(acc, x > 0 ? img : inverse(img));
  }
  return acc;
}

}  // namespace acyl
