#include "acylkit/graph_product.hpp"

#include <algorithm>
#include <optional>
#include <sstream>

#include "acylkit/errors.hpp"

namespace acyl {

int PresGraph::vertex(std::string const& name) const {
  for (std::size_t i = 0; i < names.size(); ++i)
    if (names[i] == name) return static_cast<int>(i);
  return -1;
}

int PresGraph::add_vertex(std::string name, VertexGroupSpec spec) {
  if (vertex(name) != -1)
    throw SchemaError("vertices", "duplicate vertex '" + name + "'");
  names.push_back(std::move(name));
  groups.push_back(spec);
  for (auto& row : adj) row.push_back(false);
  adj.emplace_back(names.size(), false);
  return static_cast<int>(names.size()) - 1;
}

void PresGraph::add_edge(std::string const& u, std::string const& v) {
  int a = vertex(u), b = vertex(v);
  if (a == -1 || b == -1)
    throw SchemaError("edges", "edge endpoint not a declared vertex");
  if (a == b) throw SchemaError("edges", "loop edge at '" + u + "'");
  if (adj[a][b]) throw SchemaError("edges", "duplicate edge");
  adj[a][b] = adj[b][a] = true;
}

bool GPElement::operator<(GPElement const& other) const {
  if (syls.size() != other.syls.size()) return syls.size() < other.syls.size();
  for (std::size_t i = 0; i < syls.size(); ++i) {
    if (syls[i].v != other.syls[i].v) return syls[i].v < other.syls[i].v;
    if (!(syls[i].val == other.syls[i].val)) {
      if (syls[i].val.exp != other.syls[i].val.exp)
        return syls[i].val.exp < other.syls[i].val.exp;
      return syls[i].val.w < other.syls[i].val.w;
    }
  }
  return false;
}

VgValue vg_identity(VertexGroupSpec const& spec) {
  VgValue v;
  if (spec.kind == VgKind::Free) v.w = Word({}, spec.rank);
  return v;
}

VgValue vg_reduce(VertexGroupSpec const& spec, VgValue const& raw) {
  VgValue v = raw;
  switch (spec.kind) {
    case VgKind::IntegerCyclic:
      v.w = Word();
      break;
    case VgKind::FiniteCyclic:
      v.exp = ((raw.exp % spec.order) + spec.order) % spec.order;
      v.w = Word();
      break;
    case VgKind::Free:
      v.exp = 0;
      v.w = reduce(raw.w.letters, spec.rank);
      break;
  }
  return v;
}

VgValue vg_mul(VertexGroupSpec const& spec, VgValue const& a, VgValue const& b) {
  VgValue v;
  if (spec.kind == VgKind::Free)
    v.w = mul(a.w, b.w);
  else
    v.exp = a.exp + b.exp;
  return vg_reduce(spec, v);
}

VgValue vg_inv(VertexGroupSpec const& spec, VgValue const& a) {
  VgValue v;
  if (spec.kind == VgKind::Free)
    v.w = inverse(a.w);
  else
    v.exp = -a.exp;
  return vg_reduce(spec, v);
}

bool vg_is_identity(VertexGroupSpec const& spec, VgValue const& a) {
  if (spec.kind == VgKind::Free) return a.w.empty();
  if (spec.kind == VgKind::FiniteCyclic) return a.exp % spec.order == 0;
  return a.exp == 0;
}

namespace {

// One pass of syllable merging: looks for i < j with the same vertex
// and everything strictly between adjacent to it.
bool merge_pass(std::vector<Syllable>& s, PresGraph const& g) {
  for (std::size_t i = 0; i < s.size(); ++i) {
    for (std::size_t j = i + 1; j < s.size(); ++j) {
      if (s[j].v == s[i].v) {
        bool movable = true;
        for (std::size_t k = i + 1; k < j && movable; ++k)
          movable = g.adjacent(s[k].v, s[i].v);
        if (!movable) break;
        s[i].val = vg_mul(g.groups[s[i].v], s[i].val, s[j].val);
        s.erase(s.begin() + j);
        if (vg_is_identity(g.groups[s[i].v], s[i].val))
          s.erase(s.begin() + i);
        return true;
      }
      if (!g.adjacent(s[j].v, s[i].v)) break;
    }
  }
  return false;
}

}  // namespace

GPElement gp_normal_form(std::vector<Syllable> raw, PresGraph const& g) {
  // Validate and reduce values, dropping identities.
  std::vector<Syllable> s;
  for (Syllable& syl : raw) {
    if (syl.v < 0 || syl.v >= g.num_vertices())
      throw SchemaError("syllable", "unknown vertex index");
    syl.val = vg_reduce(g.groups[syl.v], syl.val);
    if (!vg_is_identity(g.groups[syl.v], syl.val)) s.push_back(syl);
  }
  while (merge_pass(s, g)) {
  }
  // Left-greedy canonical ordering: repeatedly emit the front-movable
  // syllable with the least vertex name.
  std::vector<Syllable> out;
  while (!s.empty()) {
    std::size_t best = 0;
    for (std::size_t i = 1; i < s.size(); ++i) {
      bool movable = true;
      for (std::size_t k = 0; k < i && movable; ++k)
        movable = g.adjacent(s[k].v, s[i].v);
      if (movable && g.names[s[i].v] < g.names[s[best].v]) best = i;
    }
    out.push_back(s[best]);
    s.erase(s.begin() + best);
  }
  return GPElement{std::move(out)};
}

GPElement gp_mul(GPElement const& x, GPElement const& y, PresGraph const& g) {
  std::vector<Syllable> raw = x.syls;
  raw.insert(raw.end(), y.syls.begin(), y.syls.end());
  return gp_normal_form(std::move(raw), g);
}

GPElement gp_inverse(GPElement const& x, PresGraph const& g) {
  std::vector<Syllable> raw;
  for (auto it = x.syls.rbegin(); it != x.syls.rend(); ++it)
    raw.push_back({it->v, vg_inv(g.groups[it->v], it->val)});
  return gp_normal_form(std::move(raw), g);
}

GPElement gp_power(GPElement const& x, int n, PresGraph const& g) {
  GPElement base = n < 0 ? gp_inverse(x, g) : x;
  GPElement acc;
  for (int i = 0; i < std::abs(n); ++i) acc = gp_mul(acc, base, g);
  return acc;
}

bool gp_equal(GPElement const& x, GPElement const& y, PresGraph const& g) {
  return gp_normal_form(x.syls, g) == gp_normal_form(y.syls, g);
}

GPCyclicReduction gp_cyclic_reduce(GPElement const& x, PresGraph const& g) {
  GPElement core = gp_normal_form(x.syls, g);
  std::vector<Syllable> conj;
  bool progress = true;
  while (progress && core.size() >= 2) {
    progress = false;
    std::size_t n = core.size();
    for (std::size_t i = 0; i < n && !progress; ++i) {
      bool front = true;
      for (std::size_t k = 0; k < i && front; ++k)
        front = g.adjacent(core.syls[k].v, core.syls[i].v);
      if (!front) continue;
      for (std::size_t j = i + 1; j < n && !progress; ++j) {
        if (core.syls[j].v != core.syls[i].v) continue;
        bool end = true;
        for (std::size_t k = j + 1; k < n && end; ++k)
          end = g.adjacent(core.syls[k].v, core.syls[j].v);
        if (!end) continue;
        // core = s_i . mid . s_j up to shuffles; conjugate by s_i^{-1}.
        Syllable si = core.syls[i];
        Syllable sj = core.syls[j];
        std::vector<Syllable> mid;
        for (std::size_t k = 0; k < n; ++k)
          if (k != i && k != j) mid.push_back(core.syls[k]);
        mid.push_back({si.v, vg_mul(g.groups[si.v], sj.val, si.val)});
        conj.push_back(si);
        core = gp_normal_form(std::move(mid), g);
        progress = true;
      }
    }
  }
  return {core, gp_normal_form(conj, g)};
}

std::vector<int> support(GPElement const& x) {
  std::vector<int> s;
  for (Syllable const& syl : x.syls)
    if (std::find(s.begin(), s.end(), syl.v) == s.end()) s.push_back(syl.v);
  std::sort(s.begin(), s.end());
  return s;
}

std::vector<int> essential_support(GPElement const& x, PresGraph const& g) {
  return support(gp_cyclic_reduce(x, g).core);
}

GPElement retraction(GPElement const& x, std::vector<int> const& a,
                     PresGraph const& g) {
  std::vector<Syllable> kept;
  for (Syllable const& syl : x.syls)
    if (std::find(a.begin(), a.end(), syl.v) != a.end()) kept.push_back(syl);
  return gp_normal_form(std::move(kept), g);
}

std::vector<int> link(std::vector<int> const& a, PresGraph const& g) {
  if (a.empty()) throw PreconditionViolated("link of empty set");
  std::vector<int> out;
  for (int v = 0; v < g.num_vertices(); ++v) {
    bool all = true;
    for (int u : a)
      if (!g.adjacent(u, v)) {
        all = false;
        break;
      }
    if (all) out.push_back(v);
  }
  return out;
}

namespace {

// Connected components of the complement graph induced on s.
std::vector<std::vector<int>> complement_components(std::vector<int> const& s,
                                                    PresGraph const& g) {
  std::vector<std::vector<int>> comps;
  std::vector<bool> seen(s.size(), false);
  for (std::size_t i = 0; i < s.size(); ++i) {
    if (seen[i]) continue;
    std::vector<std::size_t> stack{i};
    seen[i] = true;
    std::vector<int> comp;
    while (!stack.empty()) {
      std::size_t v = stack.back();
      stack.pop_back();
      comp.push_back(s[v]);
      for (std::size_t w = 0; w < s.size(); ++w)
        if (!seen[w] && !g.adjacent(s[v], s[w])) {
          seen[w] = true;
          stack.push_back(w);
        }
    }
    std::sort(comp.begin(), comp.end());
    comps.push_back(std::move(comp));
  }
  return comps;
}

}  // namespace

bool is_irreducible(std::vector<int> const& s, PresGraph const& g) {
  if (s.empty()) throw PreconditionViolated("irreducibility of empty set");
  return complement_components(s, g).size() == 1;
}

bool full_subgroup_finite(std::vector<int> const& s, PresGraph const& g) {
  for (int v : s)
    if (!g.groups[v].is_finite()) return false;
  for (std::size_t i = 0; i < s.size(); ++i)
    for (std::size_t j = i + 1; j < s.size(); ++j)
      if (!g.adjacent(s[i], s[j])) return false;
  return true;
}

std::optional<JoinSplit> join_decomposition(std::vector<int> const& s,
                                            PresGraph const& g) {
  auto comps = complement_components(s, g);
  if (comps.size() <= 1) return std::nullopt;
  JoinSplit split;
  split.a = comps[0];
  for (std::size_t i = 1; i < comps.size(); ++i)
    split.b.insert(split.b.end(), comps[i].begin(), comps[i].end());
  std::sort(split.b.begin(), split.b.end());
  split.principal = !full_subgroup_finite(split.a, g) &&
                    !full_subgroup_finite(split.b, g);
  return split;
}

std::string format_gp(GPElement const& x, PresGraph const& g) {
  std::ostringstream os;
  bool first = true;
  for (Syllable const& syl : x.syls) {
    if (!first) os << ' ';
    first = false;
    os << g.names[syl.v] << '^';
    if (g.groups[syl.v].kind == VgKind::Free) {
      std::vector<std::string> inner;
      for (int i = 1; i <= g.groups[syl.v].rank; ++i)
        inner.push_back("x" + std::to_string(i));
      os << '(' << format_word(syl.val.w, inner) << ')';
    } else {
      os << syl.val.exp;
    }
  }
  return os.str();
}

GPElement parse_gp(std::string const& text, PresGraph const& g) {
  std::vector<Syllable> raw;
  std::istringstream is(text);
  std::string tok;
  while (is >> tok) {
    auto caret = tok.find('^');
    if (caret == std::string::npos)
      throw SyntaxError("syllable '" + tok + "' missing '^'");
    std::string name = tok.substr(0, caret);
    int v = g.vertex(name);
    if (v == -1) throw SyntaxError("unknown vertex '" + name + "'");
    std::string rest = tok.substr(caret + 1);
    Syllable syl;
    syl.v = v;
    if (g.groups[v].kind == VgKind::Free) {
      if (rest.empty() || rest.front() != '(')
        throw SyntaxError("free vertex value must be '(word)'");
      std::string inner = rest.substr(1);
      while (inner.find(')') == std::string::npos) {
        std::string more;
        if (!(is >> more)) throw SyntaxError("unterminated '(' in syllable");
        inner += ' ' + more;
      }
      inner.pop_back();
      std::vector<std::string> names;
      for (int i = 1; i <= g.groups[v].rank; ++i)
        names.push_back("x" + std::to_string(i));
      syl.val.w = parse_word(inner, names);
    } else {
      try {
        syl.val.exp = std::stoll(rest);
      } catch (std::exception const&) {
        throw SyntaxError("bad exponent '" + rest + "'");
      }
    }
    raw.push_back(syl);
  }
  return gp_normal_form(std::move(raw), g);
}

}  // namespace acyl
