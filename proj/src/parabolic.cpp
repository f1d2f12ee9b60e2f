#include "acylkit/parabolic.hpp"

#include <algorithm>

#include "acylkit/errors.hpp"

namespace acyl {

namespace {

bool in_set(int v, std::vector<int> const& s) {
  return std::find(s.begin(), s.end(), v) != s.end();
}

std::vector<int> set_union(std::vector<int> a, std::vector<int> const& b) {
  for (int v : b)
    if (!in_set(v, a)) a.push_back(v);
  std::sort(a.begin(), a.end());
  return a;
}

// S ∪ link(S); equals V for S = ∅ (N(G_∅) = G).
std::vector<int> normalizer_support(std::vector<int> const& s,
                                    PresGraph const& g) {
  if (s.empty()) {
    std::vector<int> all(g.num_vertices());
    for (int v = 0; v < g.num_vertices(); ++v) all[v] = v;
    return all;
  }
  return set_union(s, link(s, g));
}

// Strips end-movable syllables with vertex in T (the right-coset
// reduction f -> min rep of f G_T).
GPElement strip_right(GPElement f, std::vector<int> const& t,
                      PresGraph const& g) {
  bool progress = true;
  while (progress) {
    progress = false;
    std::size_t n = f.size();
    for (std::size_t j = 0; j < n; ++j) {
      if (!in_set(f.syls[j].v, t)) continue;
      bool end_movable = true;
      for (std::size_t k = j + 1; k < n && end_movable; ++k)
        end_movable = g.adjacent(f.syls[k].v, f.syls[j].v);
      if (!end_movable) continue;
      std::vector<Syllable> rest;
      for (std::size_t k = 0; k < n; ++k)
        if (k != j) rest.push_back(f.syls[k]);
      f = gp_normal_form(std::move(rest), g);
      progress = true;
      break;
    }
  }
  return f;
}

// Symmetric left-coset reduction g -> min rep of G_T g, returning the
// stripped prefix as well.
struct LeftStrip {
  GPElement prefix;  // element of G_T
  GPElement rest;
};
LeftStrip strip_left(GPElement f, std::vector<int> const& t,
                     PresGraph const& g) {
  std::vector<Syllable> prefix;
  bool progress = true;
  while (progress) {
    progress = false;
    std::size_t n = f.size();
    for (std::size_t i = 0; i < n; ++i) {
      if (!in_set(f.syls[i].v, t)) continue;
      bool front_movable = true;
      for (std::size_t k = 0; k < i && front_movable; ++k)
        front_movable = g.adjacent(f.syls[k].v, f.syls[i].v);
      if (!front_movable) continue;
      prefix.push_back(f.syls[i]);
      std::vector<Syllable> rest;
      for (std::size_t k = 0; k < n; ++k)
        if (k != i) rest.push_back(f.syls[k]);
      f = gp_normal_form(std::move(rest), g);
      progress = true;
      break;
    }
  }
  return {gp_normal_form(std::move(prefix), g), f};
}

}  // namespace

ParabolicDesc make_parabolic(GPElement const& f, std::vector<int> s,
                             PresGraph const& g) {
  std::sort(s.begin(), s.end());
  s.erase(std::unique(s.begin(), s.end()), s.end());
  ParabolicDesc p;
  p.subset = std::move(s);
  p.conj = strip_right(gp_normal_form(f.syls, g), normalizer_support(p.subset, g), g);
  return p;
}

int pdim(ParabolicDesc const& p) { return static_cast<int>(p.subset.size()); }

bool parabolic_contains(ParabolicDesc const& p, GPElement const& x,
                        PresGraph const& g) {
  GPElement h = gp_mul(gp_mul(gp_inverse(p.conj, g), x, g), p.conj, g);
  return retraction(h, p.subset, g) == h;
}

std::vector<GPElement> full_subgroup_generators(std::vector<int> const& s,
                                                PresGraph const& g) {
  std::vector<GPElement> gens;
  for (int v : s) {
    VertexGroupSpec const& spec = g.groups[v];
    if (spec.kind == VgKind::Free) {
      for (int i = 1; i <= spec.rank; ++i) {
        VgValue val;
        val.w = Word({i}, spec.rank);
        gens.push_back(gp_normal_form({{v, val}}, g));
      }
    } else {
      if (spec.is_trivial()) continue;
      VgValue val;
      val.exp = 1;
      gens.push_back(gp_normal_form({{v, val}}, g));
    }
  }
  return gens;
}

bool parabolic_subset(ParabolicDesc const& p, ParabolicDesc const& q,
                      PresGraph const& g) {
  for (GPElement const& gen : full_subgroup_generators(p.subset, g)) {
    GPElement x = gp_mul(gp_mul(p.conj, gen, g), gp_inverse(p.conj, g), g);
    if (!parabolic_contains(q, x, g)) return false;
  }
  return true;
}

bool parabolic_finite(ParabolicDesc const& p, PresGraph const& g) {
  return full_subgroup_finite(p.subset, g);
}

namespace {

// Minimal parabolic containing G_S ∪ {h}: conjugates h by elements of
// N(G_S) (which fixes G_S as a set) to shorten it, then extends S by
// the leftover support. Returns (c, S') with G_S ∪ {h} ⊆ c G_{S'} c^{-1}.
std::pair<GPElement, std::vector<int>> enlarge(std::vector<int> const& s,
                                               GPElement h,
                                               PresGraph const& g) {
  std::vector<int> nsup = normalizer_support(s, g);
  GPElement c;
  bool progress = true;
  while (progress) {
    progress = false;
    for (std::size_t i = 0; i < h.size(); ++i) {
      if (!in_set(h.syls[i].v, nsup)) continue;
      bool front = true;
      for (std::size_t k = 0; k < i && front; ++k)
        front = g.adjacent(h.syls[k].v, h.syls[i].v);
      if (!front) continue;
      GPElement sy = gp_normal_form({h.syls[i]}, g);
      GPElement cand = gp_mul(gp_mul(gp_inverse(sy, g), h, g), sy, g);
      if (cand.size() < h.size()) {
        h = cand;
        c = gp_mul(c, sy, g);
        progress = true;
        break;
      }
    }
  }
  return {c, set_union(s, support(h))};
}

}  // namespace

ParabolicDesc parabolic_closure(std::vector<GPElement> const& xs,
                                PresGraph const& g) {
  GPElement f;
  std::vector<int> s;
  bool first = true;
  bool stable = false;
  while (!stable) {
    stable = true;
    for (GPElement const& x : xs) {
      GPElement h =
          gp_mul(gp_mul(gp_inverse(f, g), gp_normal_form(x.syls, g), g), f, g);
      if (h.empty()) continue;
      if (first) {
        // Single-element closure: conjugated support of the cyclic core.
        auto cr = gp_cyclic_reduce(h, g);
        f = gp_mul(f, cr.conjugator, g);
        s = support(cr.core);
        first = false;
        stable = false;
        continue;
      }
      if (retraction(h, s, g) == h) continue;  // already inside
      auto [c, s2] = enlarge(s, h, g);
      f = gp_mul(f, c, g);
      s = std::move(s2);
      stable = false;
    }
    if (first) break;  // all generators trivial
  }
  return make_parabolic(f, std::move(s), g);
}

ParabolicDesc parabolic_intersection(ParabolicDesc const& p,
                                     ParabolicDesc const& q,
                                     PresGraph const& g) {
  // f (G_S ∩ h G_T h^{-1}) f^{-1} with h = f^{-1} q.conj; write
  // h = s . u . t with s in G_S, t in G_T and u the reduced double coset
  // representative, so the middle intersection is the full subgroup on
  // {v in S ∩ T : supp(u) ⊆ link(v)}.
  GPElement h = gp_mul(gp_inverse(p.conj, g), q.conj, g);
  auto [sprefix, rest] = strip_left(h, p.subset, g);
  GPElement u = strip_right(rest, q.subset, g);
  std::vector<int> d;
  for (int v : p.subset) {
    if (!in_set(v, q.subset)) continue;
    bool commutes = true;
    for (Syllable const& syl : u.syls)
      if (!g.adjacent(syl.v, v)) {
        commutes = false;
        break;
      }
    if (commutes) d.push_back(v);
  }
  return make_parabolic(gp_mul(p.conj, sprefix, g), std::move(d), g);
}

}  // namespace acyl
