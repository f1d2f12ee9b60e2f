#include "acylkit/splitting.hpp"

#include <algorithm>
#include <deque>
#include <numeric>
#include <sstream>

#include "acylkit/errors.hpp"
#include "acylkit/parabolic.hpp"

namespace acyl {

namespace {

long long gcdll(long long a, long long b) { return std::gcd(a, b); }

}  // namespace

SplittingSpec SplittingSpec::amalgam(FactorDesc a, FactorDesc b,
                                     EdgeSubgroup c_in_a, EdgeSubgroup c_in_b,
                                     std::shared_ptr<PresGraph const> ambient) {
  SplittingSpec s;
  s.shape_ = Shape::Amalgam;
  s.factors_[0] = std::move(a);
  s.factors_[1] = std::move(b);
  s.edges_[0] = std::move(c_in_a);
  s.edges_[1] = std::move(c_in_b);
  s.ambient_ = std::move(ambient);
  s.validate();
  return s;
}

SplittingSpec SplittingSpec::hnn(FactorDesc a, EdgeSubgroup c, EdgeSubgroup d,
                                 std::shared_ptr<PresGraph const> ambient) {
  SplittingSpec s;
  s.shape_ = Shape::Hnn;
  s.factors_[0] = std::move(a);
  s.factors_[1] = s.factors_[0];
  s.edges_[0] = std::move(c);
  s.edges_[1] = std::move(d);
  s.ambient_ = std::move(ambient);
  s.validate();
  return s;
}

void SplittingSpec::validate() const {
  int sides = 2;
  for (int i = 0; i < sides; ++i) {
    FactorDesc const& f = factor(shape_ == Shape::Hnn ? 0 : i);
    EdgeSubgroup const& e = edges_[i];
    switch (f.kind) {
      case FactorDesc::Kind::Cyclic:
        if (e.exps.size() > 1)
          throw SchemaError("edge", "cyclic factor admits one edge generator");
        if (f.order > 0 && !e.exps.empty()) {
          long long m = ((e.exps[0] % f.order) + f.order) % f.order;
          if (m != 0 && f.order % m != 0)
            throw SchemaError("edge",
                              "edge generator must divide the cyclic order");
        }
        break;
      case FactorDesc::Kind::Free: {
        if (!e.basis)
          throw SchemaError("edge", "free factor edge subgroup missing basis");
        if (!e.basis->is_basis())
          throw SchemaError(
              "edge", "edge subgroup generators must form a free basis");
        break;
      }
      case FactorDesc::Kind::GPFull: {
        if (!ambient_) throw SchemaError("edge", "missing ambient graph");
        for (int v : e.subset)
          if (std::find(f.subset.begin(), f.subset.end(), v) == f.subset.end())
            throw SchemaError("edge", "edge subset not inside factor subset");
        break;
      }
    }
  }
  // paired generator counts must agree
  auto count = [&](int i) {
    FactorDesc const& f = factor(shape_ == Shape::Hnn ? 0 : i);
    switch (f.kind) {
      case FactorDesc::Kind::Cyclic:
        return edges_[i].exps.size();
      case FactorDesc::Kind::Free:
        return edges_[i].gens.size();
      case FactorDesc::Kind::GPFull:
        return edges_[i].subset.size();
    }
    return std::size_t{0};
  };
  if (factor(0).kind != FactorDesc::Kind::GPFull ||
      factor(1).kind != FactorDesc::Kind::GPFull) {
    if (count(0) != count(1))
      throw SchemaError("edge", "edge subgroup generator lists must pair up");
  }
}

// --- factor arithmetic ----------------------------------------------------

FactorElem SplittingSpec::f_identity(int side) const {
  FactorDesc const& f = factor(side);
  switch (f.kind) {
    case FactorDesc::Kind::Cyclic:
      return FactorElem(0LL);
    case FactorDesc::Kind::Free:
      return FactorElem(Word({}, f.rank));
    case FactorDesc::Kind::GPFull:
      return FactorElem(GPElement{});
  }
  return FactorElem(0LL);
}

FactorElem SplittingSpec::f_mul(int side, FactorElem const& a,
                                FactorElem const& b) const {
  FactorDesc const& f = factor(side);
  switch (f.kind) {
    case FactorDesc::Kind::Cyclic: {
      long long s = std::get<long long>(a) + std::get<long long>(b);
      if (f.order > 0) s = ((s % f.order) + f.order) % f.order;
      return FactorElem(s);
    }
    case FactorDesc::Kind::Free:
      return FactorElem(acyl::mul(std::get<Word>(a), std::get<Word>(b)));
    case FactorDesc::Kind::GPFull:
      return FactorElem(
          gp_mul(std::get<GPElement>(a), std::get<GPElement>(b), *ambient_));
  }
  return a;
}

FactorElem SplittingSpec::f_inv(int side, FactorElem const& a) const {
  FactorDesc const& f = factor(side);
  switch (f.kind) {
    case FactorDesc::Kind::Cyclic: {
      long long s = -std::get<long long>(a);
      if (f.order > 0) s = ((s % f.order) + f.order) % f.order;
      return FactorElem(s);
    }
    case FactorDesc::Kind::Free:
      return FactorElem(inverse(std::get<Word>(a)));
    case FactorDesc::Kind::GPFull:
      return FactorElem(gp_inverse(std::get<GPElement>(a), *ambient_));
  }
  return a;
}

bool SplittingSpec::f_is_identity(int side, FactorElem const& a) const {
  switch (factor(side).kind) {
    case FactorDesc::Kind::Cyclic:
      return std::get<long long>(a) == 0;
    case FactorDesc::Kind::Free:
      return std::get<Word>(a).empty();
    case FactorDesc::Kind::GPFull:
      return std::get<GPElement>(a).empty();
  }
  return false;
}

bool SplittingSpec::f_equal(int side, FactorElem const& a,
                            FactorElem const& b) const {
  return f_is_identity(side, f_mul(side, a, f_inv(side, b)));
}

// --- edge subgroup oracles -------------------------------------------------

bool SplittingSpec::in_edge_subgroup(int which, FactorElem const& a) const {
  int side = shape_ == Shape::Hnn ? 0 : which;
  FactorDesc const& f = factor(side);
  EdgeSubgroup const& e = edges_[which];
  switch (f.kind) {
    case FactorDesc::Kind::Cyclic: {
      long long v = std::get<long long>(a);
      if (e.exps.empty()) return v == 0;
      long long m = e.exps[0];
      if (f.order > 0) {
        m = gcdll(((m % f.order) + f.order) % f.order, f.order);
        if (m == 0) return v % f.order == 0;
      }
      if (m == 0) return v == 0;
      return v % m == 0;
    }
    case FactorDesc::Kind::Free:
      return e.basis->contains(std::get<Word>(a));
    case FactorDesc::Kind::GPFull: {
      GPElement const& x = std::get<GPElement>(a);
      return retraction(x, e.subset, *ambient_) == x;
    }
  }
  return false;
}

FactorElem SplittingSpec::transport(int which, FactorElem const& a) const {
  int from_side = shape_ == Shape::Hnn ? 0 : which;
  int to_side = shape_ == Shape::Hnn ? 0 : 1 - which;
  int to_which = 1 - which;
  FactorDesc const& ff = factor(from_side);
  FactorDesc const& tf = factor(to_side);
  EdgeSubgroup const& fe = edges_[which];
  EdgeSubgroup const& te = edges_[to_which];

  if (ff.kind == FactorDesc::Kind::GPFull) return a;  // same ambient element

  // Express a as a power/word in the source generators.
  Word gamma({}, 1);
  if (ff.kind == FactorDesc::Kind::Cyclic) {
    long long v = std::get<long long>(a);
    if (fe.exps.empty()) {
      if (v != 0) throw PreconditionViolated("element outside edge subgroup");
      gamma = Word({}, 1);
    } else {
      long long m = fe.exps[0];
      if (m == 0) {
        if (v != 0) throw PreconditionViolated("element outside edge subgroup");
        gamma = Word({}, 1);
      } else {
        long long k = v / m;  // v validated to be a multiple
        std::vector<Letter> ls(static_cast<std::size_t>(std::llabs(k)),
                               k > 0 ? 1 : -1);
        gamma = Word(ls, 1);
      }
    }
  } else {
    auto expr = fe.basis->express(std::get<Word>(a));
    if (!expr) throw PreconditionViolated("element outside edge subgroup");
    gamma = *expr;
  }

  // Evaluate gamma on the paired generators.
  if (tf.kind == FactorDesc::Kind::Cyclic) {
    long long acc = 0;
    for (Letter x : gamma.letters) {
      long long m = te.exps.at(std::abs(x) - 1);
      acc += x > 0 ? m : -m;
    }
    if (tf.order > 0) acc = ((acc % tf.order) + tf.order) % tf.order;
    return FactorElem(acc);
  }
  return FactorElem(substitute(gamma, te.gens, tf.rank));
}

// --- normalization ----------------------------------------------------------

void SplittingSpec::push(std::vector<TreeSyl>& stack, TreeSyl s) const {
  if (shape_ == Shape::Amalgam) {
    if (f_is_identity(s.side, s.e)) return;
    if (stack.empty()) {
      stack.push_back(std::move(s));
      return;
    }
    TreeSyl top = stack.back();
    if (top.side == s.side) {
      stack.pop_back();
      FactorElem merged = f_mul(s.side, top.e, s.e);
      if (f_is_identity(s.side, merged)) return;
      if (!stack.empty() && in_edge_subgroup(s.side, merged)) {
        TreeSyl carried;
        carried.side = 1 - s.side;
        carried.e = transport(s.side, merged);
        push(stack, std::move(carried));
        return;
      }
      stack.push_back({false, 0, s.side, merged});
      return;
    }
    // different sides
    if (in_edge_subgroup(s.side, s.e)) {
      TreeSyl carried;
      carried.side = top.side;
      carried.e = transport(s.side, s.e);
      push(stack, std::move(carried));
      return;
    }
    if (stack.size() == 1 && in_edge_subgroup(top.side, top.e)) {
      stack.pop_back();
      TreeSyl merged;
      merged.side = s.side;
      merged.e = f_mul(s.side, transport(top.side, top.e), s.e);
      push(stack, std::move(merged));
      return;
    }
    stack.push_back(std::move(s));
    return;
  }

  // HNN
  if (!s.stable) {
    if (f_is_identity(0, s.e)) return;
    if (!stack.empty() && !stack.back().stable) {
      TreeSyl top = stack.back();
      stack.pop_back();
      FactorElem merged = f_mul(0, top.e, s.e);
      if (f_is_identity(0, merged)) return;
      stack.push_back({false, 0, 0, merged});
      return;
    }
    stack.push_back(std::move(s));
    return;
  }
  // stable letter t^eps; look for a pinch t^-1 c t (c in C) or t d t^-1
  // (d in D) at the top of the stack.
  int eps = s.exp;
  FactorElem between = f_identity(0);
  bool have_base = false;
  if (!stack.empty() && !stack.back().stable) {
    between = stack.back().e;
    have_base = true;
  }
  std::size_t stable_at = stack.size() - (have_base ? 2 : 1);
  if (stack.size() >= (have_base ? 2u : 1u) && stable_at < stack.size() &&
      stack[stable_at].stable && stack[stable_at].exp == -eps) {
    int which = eps == 1 ? 0 : 1;  // t^-1 c t with c in C, or t d t^-1, d in D
    if (in_edge_subgroup(which, between)) {
      FactorElem img = transport(which, between);
      if (have_base) stack.pop_back();
      stack.pop_back();
      TreeSyl base;
      base.e = std::move(img);
      push(stack, std::move(base));
      return;
    }
  }
  stack.push_back(std::move(s));
}

TreeElement SplittingSpec::normalize(std::vector<TreeSyl> raw) const {
  std::vector<TreeSyl> stack;
  for (TreeSyl& s : raw) push(stack, std::move(s));
  return TreeElement{std::move(stack)};
}

TreeElement SplittingSpec::mul(TreeElement const& x, TreeElement const& y) const {
  std::vector<TreeSyl> raw = x.syls;
  raw.insert(raw.end(), y.syls.begin(), y.syls.end());
  return normalize(std::move(raw));
}

TreeElement SplittingSpec::inv(TreeElement const& x) const {
  std::vector<TreeSyl> raw;
  for (auto it = x.syls.rbegin(); it != x.syls.rend(); ++it) {
    TreeSyl s = *it;
    if (s.stable)
      s.exp = -s.exp;
    else
      s.e = f_inv(s.side, s.e);
    raw.push_back(std::move(s));
  }
  return normalize(std::move(raw));
}

TreeElement SplittingSpec::power(TreeElement const& x, int n) const {
  TreeElement base = n < 0 ? inv(x) : x;
  TreeElement acc;
  for (int i = 0; i < std::abs(n); ++i) acc = mul(acc, base);
  return acc;
}

bool SplittingSpec::is_identity(TreeElement const& x) const {
  return normalize(x.syls).empty();
}

bool SplittingSpec::equal(TreeElement const& x, TreeElement const& y) const {
  return is_identity(mul(x, inv(y)));
}

bool SplittingSpec::in_factor(TreeElement const& x, int side) const {
  TreeElement h = normalize(x.syls);
  if (h.empty()) return true;
  if (shape_ == Shape::Hnn) {
    for (TreeSyl const& s : h.syls)
      if (s.stable) return false;
    return true;  // a single base syllable
  }
  if (h.size() != 1) return false;
  TreeSyl const& s = h.syls[0];
  if (s.side == side) return true;
  return in_edge_subgroup(s.side, s.e);
}

// --- tree geometry -----------------------------------------------------------

TreeLocus SplittingSpec::base_vertex(int side) const {
  TreeLocus l;
  l.side = shape_ == Shape::Hnn ? 0 : side;
  return l;
}

TreeLocus SplittingSpec::translate(TreeElement const& g,
                                   TreeLocus const& l) const {
  TreeLocus out = l;
  out.g = mul(g, l.g);
  return out;
}

bool SplittingSpec::loci_equal(TreeLocus const& a, TreeLocus const& b) const {
  if (a.is_edge != b.is_edge) return false;
  TreeElement h = mul(inv(a.g), b.g);
  if (a.is_edge) {
    TreeElement n = normalize(h.syls);
    if (n.empty()) return true;
    if (n.size() != 1 || n.syls[0].stable) return false;
    int which = shape_ == Shape::Hnn ? 0 : n.syls[0].side;
    return in_edge_subgroup(which, n.syls[0].e);
  }
  if (shape_ == Shape::Amalgam && a.side != b.side) return false;
  return in_factor(h, a.side);
}

std::vector<TreeLocus> SplittingSpec::geodesic_edges(TreeLocus const& u,
                                                     TreeLocus const& v) const {
  if (u.is_edge || v.is_edge)
    throw PreconditionViolated("geodesic endpoints must be vertices");
  if (loci_equal(u, v)) return {};
  TreeElement h = mul(inv(u.g), v.g);
  std::vector<TreeLocus> edges;
  std::vector<TreeSyl> prefix;
  std::deque<TreeSyl> queue(h.syls.begin(), h.syls.end());
  if (shape_ == Shape::Amalgam) {
    int cur = u.side;
    while (true) {
      if (!queue.empty() && !queue.front().stable &&
          queue.front().side == cur) {
        prefix.push_back(queue.front());
        queue.pop_front();
        continue;
      }
      if (queue.empty() && cur == v.side) break;
      TreeLocus e;
      e.is_edge = true;
      e.g = TreeElement{prefix};
      edges.push_back(std::move(e));
      cur = 1 - cur;
    }
  } else {
    while (true) {
      if (!queue.empty() && !queue.front().stable) {
        prefix.push_back(queue.front());
        queue.pop_front();
        continue;
      }
      if (queue.empty()) break;
      TreeSyl t = queue.front();
      queue.pop_front();
      TreeLocus e;
      e.is_edge = true;
      if (t.exp == 1) {
        e.g = TreeElement{prefix};
      } else {
        auto with_t = prefix;
        with_t.push_back(t);
        e.g = TreeElement{with_t};
      }
      edges.push_back(std::move(e));
      prefix.push_back(t);
    }
  }
  for (TreeLocus& e : edges) e.g = mul(u.g, e.g);
  return edges;
}

long long SplittingSpec::distance(TreeLocus const& u, TreeLocus const& v) const {
  return static_cast<long long>(geodesic_edges(u, v).size());
}

std::pair<TreeLocus, TreeLocus> SplittingSpec::endpoints(
    TreeLocus const& e) const {
  if (!e.is_edge) throw PreconditionViolated("endpoints of a vertex locus");
  TreeLocus a, b;
  a.g = e.g;
  b.g = e.g;
  if (shape_ == Shape::Amalgam) {
    a.side = 0;
    b.side = 1;
  } else {
    TreeSyl t;
    t.stable = true;
    t.exp = 1;
    b.g = mul(e.g, TreeElement{{t}});
  }
  return {a, b};
}

ElementClass SplittingSpec::classify(TreeElement const& g) const {
  TreeElement core = normalize(g.syls);
  std::vector<TreeSyl> conj;
  if (shape_ == Shape::Amalgam) {
    // rotate while the ends can merge (odd alternating length >= 3, or
    // any same-side ends after merges)
    while (core.size() >= 2 &&
           core.syls.front().side == core.syls.back().side) {
      TreeSyl first = core.syls.front();
      conj.push_back(first);
      std::vector<TreeSyl> rot(core.syls.begin() + 1, core.syls.end());
      rot.push_back(first);
      core = normalize(std::move(rot));
    }
    if (core.size() <= 1) {
      Elliptic e;
      e.fixed.side = core.empty() ? 0 : core.syls[0].side;
      e.fixed.g = normalize(conj);
      return e;
    }
    Hyperbolic h;
    h.translation_length = static_cast<long long>(core.size());
    h.conjugator = normalize(conj);
    h.core = core;
    return h;
  }
  // HNN: rotate leading base syllables, then try cyclic pinches.
  auto t_count = [](TreeElement const& x) {
    long long c = 0;
    for (TreeSyl const& s : x.syls)
      if (s.stable) ++c;
    return c;
  };
  bool progress = true;
  while (progress) {
    progress = false;
    if (core.size() >= 2 && !core.syls.front().stable) {
      TreeSyl first = core.syls.front();
      conj.push_back(first);
      std::vector<TreeSyl> rot(core.syls.begin() + 1, core.syls.end());
      rot.push_back(first);
      core = normalize(std::move(rot));
      progress = true;
      continue;
    }
    if (!core.empty() && core.syls.front().stable && t_count(core) >= 2) {
      TreeSyl first = core.syls.front();
      std::vector<TreeSyl> rot(core.syls.begin() + 1, core.syls.end());
      rot.push_back(first);
      TreeElement cand = normalize(std::move(rot));
      if (t_count(cand) < t_count(core)) {
        conj.push_back(first);
        core = cand;
        progress = true;
      }
    }
  }
  long long tc = t_count(core);
  if (tc == 0) {
    Elliptic e;
    e.fixed.g = normalize(conj);
    return e;
  }
  Hyperbolic h;
  h.translation_length = tc;
  h.conjugator = normalize(conj);
  h.core = core;
  return h;
}

long long SplittingSpec::translation_length(TreeElement const& g) const {
  auto c = classify(g);
  if (std::holds_alternative<Elliptic>(c)) return 0;
  return std::get<Hyperbolic>(c).translation_length;
}

std::vector<TreeLocus> SplittingSpec::axis_segment(TreeElement const& g,
                                                   int n) const {
  auto c = classify(g);
  if (!std::holds_alternative<Hyperbolic>(c))
    throw PreconditionViolated("axis of an elliptic element");
  auto const& h = std::get<Hyperbolic>(c);
  int blocks =
      static_cast<int>((n + h.translation_length - 1) / h.translation_length);
  TreeLocus from = base_vertex(0);
  TreeLocus to = base_vertex(0);
  to.g = power(h.core, blocks);
  std::vector<TreeLocus> edges = geodesic_edges(from, to);
  edges.resize(std::min<std::size_t>(edges.size(), n));
  for (TreeLocus& e : edges) e.g = mul(h.conjugator, e.g);
  return edges;
}

std::vector<FactorElem> SplittingSpec::factor_elements(int side) const {
  FactorDesc const& f = factor(side);
  std::vector<FactorElem> out;
  switch (f.kind) {
    case FactorDesc::Kind::Cyclic: {
      if (f.order <= 0)
        throw PreconditionViolated("cannot enumerate an infinite factor");
      for (long long e = 0; e < f.order; ++e) out.push_back(FactorElem(e));
      break;
    }
    case FactorDesc::Kind::GPFull: {
      if (!full_subgroup_finite(f.subset, *ambient_))
        throw PreconditionViolated("cannot enumerate an infinite factor");
      // BFS closure over generator multiplication.
      std::vector<GPElement> elems{GPElement{}};
      auto gens = full_subgroup_generators(f.subset, *ambient_);
      for (std::size_t i = 0; i < elems.size(); ++i) {
        for (GPElement const& gen : gens) {
          GPElement next = gp_mul(elems[i], gen, *ambient_);
          if (std::find(elems.begin(), elems.end(), next) == elems.end())
            elems.push_back(next);
        }
      }
      for (GPElement& e : elems) out.push_back(FactorElem(std::move(e)));
      break;
    }
    case FactorDesc::Kind::Free:
      throw PreconditionViolated("cannot enumerate an infinite factor");
  }
  return out;
}

std::vector<TreeElement> SplittingSpec::ball_elements(int radius) const {
  if (shape_ != Shape::Amalgam)
    throw PreconditionViolated("ball enumeration requires an amalgam");
  // Alternating normal forms over finite factors. When C = 1 these are
  // unique per element; otherwise we deduplicate via equality.
  std::vector<std::vector<FactorElem>> nontrivial(2);
  for (int side = 0; side < 2; ++side)
    for (FactorElem const& e : factor_elements(side))
      if (!f_is_identity(side, e)) nontrivial[side].push_back(e);
  bool c_trivial = true;
  for (int side = 0; side < 2; ++side)
    for (FactorElem const& e : nontrivial[side])
      if (in_edge_subgroup(side, e)) c_trivial = false;

  std::vector<TreeElement> out{TreeElement{}};
  std::vector<TreeElement> frontier{TreeElement{}};
  // d(base_A, g base_A) = 2 * (number of side-1 syllables); syllable
  // count <= 2*radius more than covers the radius.
  for (int len = 1; len <= 2 * radius + 1; ++len) {
    std::vector<TreeElement> next;
    for (TreeElement const& g : frontier) {
      for (int side = 0; side < 2; ++side) {
        if (!g.empty() && g.syls.back().side == side) continue;
        long long side1 = 0;
        for (TreeSyl const& s : g.syls)
          if (s.side == 1) ++side1;
        if (side == 1 && 2 * (side1 + 1) > radius) continue;
        for (FactorElem const& e : nontrivial[side]) {
          std::vector<TreeSyl> syls = g.syls;
          syls.push_back({false, 0, side, e});
          TreeElement cand{syls};
          if (!c_trivial) {
            TreeElement n = normalize(cand.syls);
            bool dup = false;
            for (TreeElement const& seen : out)
              if (equal(seen, n)) {
                dup = true;
                break;
              }
            if (dup) continue;
            cand = n;
          }
          next.push_back(cand);
          out.push_back(cand);
        }
      }
    }
    frontier = std::move(next);
    if (frontier.empty()) break;
  }
  return out;
}

std::string SplittingSpec::format_element(TreeElement const& x) const {
  std::ostringstream os;
  bool first = true;
  auto emit_factor = [&](int side, FactorElem const& e) {
    FactorDesc const& f = factor(side);
    switch (f.kind) {
      case FactorDesc::Kind::Cyclic:
        os << (f.gen_names.empty() ? "g" : f.gen_names[0]) << '^'
           << std::get<long long>(e);
        break;
      case FactorDesc::Kind::Free:
        os << '(' << format_word(std::get<Word>(e), f.gen_names) << ')';
        break;
      case FactorDesc::Kind::GPFull:
        os << '(' << format_gp(std::get<GPElement>(e), *ambient_) << ')';
        break;
    }
  };
  for (TreeSyl const& s : x.syls) {
    if (!first) os << ' ';
    first = false;
    if (s.stable) {
      os << (s.exp == 1 ? "t" : "t^-1");
    } else {
      if (shape_ == Shape::Amalgam) os << (s.side == 0 ? "A:" : "B:");
      emit_factor(s.side, s.e);
    }
  }
  if (first) os << "1";
  return os.str();
}

std::string SplittingSpec::format_locus(TreeLocus const& l) const {
  std::ostringstream os;
  os << (l.is_edge ? "edge[" : "vertex[") << format_element(l.g) << "].";
  if (l.is_edge)
    os << "C";
  else
    os << (shape_ == Shape::Hnn ? "A" : (l.side == 0 ? "A" : "B"));
  return os.str();
}

}  // namespace acyl
