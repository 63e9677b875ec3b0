#include "grpd/concrete.hpp"

#include <algorithm>
#include <array>

namespace grpd {

Index ConcreteGroupoid::add_object(const std::string& name) {
  Index i = objects.add(name);
  identity.push_back(kNoIndex);
  return i;
}

Index ConcreteGroupoid::add_morphism(const std::string& name, Index s, Index t) {
  Index i = morphisms.add(name);
  src.push_back(s);
  tgt.push_back(t);
  inverse.push_back(kNoIndex);
  return i;
}

void ConcreteGroupoid::set_identity(Index object, Index morphism) {
  identity.at(object) = morphism;
}

void ConcreteGroupoid::set_inverse(Index m, Index minv) { inverse.at(m) = minv; }

void ConcreteGroupoid::set_compose(Index f, Index g, Index fg) { table_[key(f, g)] = fg; }

bool ConcreteGroupoid::has_compose(Index f, Index g) const {
  return table_.find(key(f, g)) != table_.end();
}

Index ConcreteGroupoid::compose(Index f, Index g) const {
  auto it = table_.find(key(f, g));
  if (it == table_.end())
    throw std::logic_error("composition undefined: " + morphisms.name(f) + " ; " +
                           morphisms.name(g));
  return it->second;
}

std::vector<Index> ConcreteGroupoid::hom(Index a, Index b) const {
  std::vector<Index> out;
  for (Index m = 0; m < morphism_count(); ++m)
    if (src[m] == a && tgt[m] == b) out.push_back(m);
  return out;
}

std::vector<std::vector<Index>> ConcreteGroupoid::components() const {
  UnionFind uf(object_count());
  for (Index m = 0; m < morphism_count(); ++m) uf.unite(src[m], tgt[m]);
  std::vector<std::vector<Index>> blocks;
  std::unordered_map<Index, std::size_t> block_of;
  for (Index x = 0; x < object_count(); ++x) {
    Index r = uf.find(x);
    auto it = block_of.find(r);
    if (it == block_of.end()) {
      block_of.emplace(r, blocks.size());
      blocks.push_back({x});
    } else {
      blocks[it->second].push_back(x);
    }
  }
  return blocks;
}

ValidationReport validate(const ConcreteGroupoid& g) {
  ValidationReport rep;
  const std::size_t nm = g.morphism_count();
  const std::size_t no = g.object_count();

  for (Index m = 0; m < nm; ++m) {
    if (g.src[m] >= no || g.tgt[m] >= no)
      rep.fail("morphism " + g.morphisms.name(m) + " has out-of-range endpoints");
  }
  for (Index x = 0; x < no; ++x) {
    Index e = g.identity[x];
    if (e == kNoIndex || e >= nm) {
      rep.fail("object " + g.objects.name(x) + " has no identity");
      continue;
    }
    if (g.src[e] != x || g.tgt[e] != x)
      rep.fail("identity of " + g.objects.name(x) + " is not an endomorphism");
  }
  if (!rep.ok()) return rep;  // endpoint data broken; the rest would cascade

  // Composition defined exactly on composable pairs, endpoints consistent.
  for (Index f = 0; f < nm; ++f)
    for (Index h = 0; h < nm; ++h) {
      bool composable = g.tgt[f] == g.src[h];
      if (composable != g.has_compose(f, h)) {
        rep.fail(std::string("composition ") + (composable ? "missing" : "spurious") +
                 " for (" + g.morphisms.name(f) + ", " + g.morphisms.name(h) + ")");
        continue;
      }
      if (!composable) continue;
      Index fh = g.compose(f, h);
      if (g.src[fh] != g.src[f] || g.tgt[fh] != g.tgt[h])
        rep.fail("endpoints of " + g.morphisms.name(f) + ";" + g.morphisms.name(h) +
                 " are inconsistent");
    }
  if (!rep.ok()) return rep;

  // Identity laws.
  for (Index f = 0; f < nm; ++f) {
    if (g.compose(g.identity[g.src[f]], f) != f)
      rep.fail("left identity law fails at " + g.morphisms.name(f));
    if (g.compose(f, g.identity[g.tgt[f]]) != f)
      rep.fail("right identity law fails at " + g.morphisms.name(f));
  }

  // Inverse laws.
  for (Index f = 0; f < nm; ++f) {
    Index fi = g.inverse[f];
    if (fi == kNoIndex || fi >= nm) {
      rep.fail("morphism " + g.morphisms.name(f) + " has no inverse");
      continue;
    }
    if (g.src[fi] != g.tgt[f] || g.tgt[fi] != g.src[f]) {
      rep.fail("inverse of " + g.morphisms.name(f) + " has wrong endpoints");
      continue;
    }
    if (g.compose(f, fi) != g.identity[g.src[f]] ||
        g.compose(fi, f) != g.identity[g.tgt[f]])
      rep.fail("inverse law fails at " + g.morphisms.name(f));
  }

  // Associativity on all composable triples.
  for (Index f = 0; f < nm; ++f)
    for (Index h = 0; h < nm; ++h) {
      if (g.tgt[f] != g.src[h]) continue;
      Index fh = g.compose(f, h);
      for (Index k = 0; k < nm; ++k) {
        if (g.tgt[h] != g.src[k]) continue;
        if (g.compose(fh, k) != g.compose(f, g.compose(h, k))) {
          rep.fail("associativity fails on (" + g.morphisms.name(f) + ", " +
                   g.morphisms.name(h) + ", " + g.morphisms.name(k) + ")");
        }
      }
    }
  return rep;
}

bool is_simply_connected(const ConcreteGroupoid& g) {
  std::vector<std::vector<unsigned>> count(g.object_count(),
                                           std::vector<unsigned>(g.object_count(), 0));
  for (Index m = 0; m < g.morphism_count(); ++m) ++count[g.src[m]][g.tgt[m]];
  for (const auto& row : count)
    for (unsigned c : row)
      if (c != 1) return false;
  return true;
}

ConcreteGroupoid from_group_table(const std::string& object_name,
                                  const std::vector<std::string>& element_names,
                                  const std::vector<std::vector<int>>& table) {
  const std::size_t n = element_names.size();
  if (table.size() != n)
    throw std::invalid_argument("Cayley table size does not match element count");
  ConcreteGroupoid g;
  Index obj = g.add_object(object_name);
  for (const auto& e : element_names) g.add_morphism(e, obj, obj);
  g.set_identity(obj, 0);
  for (Index i = 0; i < n; ++i) {
    if (table[i].size() != n) throw std::invalid_argument("ragged Cayley table");
    if (table[0][i] != static_cast<int>(i) || table[i][0] != static_cast<int>(i))
      throw std::invalid_argument("element 0 of the Cayley table is not neutral");
  }
  for (Index i = 0; i < n; ++i) {
    for (Index j = 0; j < n; ++j) {
      int p = table[i][j];
      if (p < 0 || p >= static_cast<int>(n))
        throw std::invalid_argument("Cayley table entry out of range");
      g.set_compose(i, j, static_cast<Index>(p));
      if (p == 0) g.set_inverse(i, j);
    }
  }
  for (Index i = 0; i < n; ++i)
    if (g.inverse[i] == kNoIndex)
      throw std::invalid_argument("Cayley table has a non-invertible element");
  return g;
}

ConcreteGroupoid cyclic_groupoid(unsigned n, const std::string& object_name) {
  if (n == 0) throw std::invalid_argument("cyclic_groupoid: order must be positive");
  std::vector<std::string> names;
  std::vector<std::vector<int>> tab(n, std::vector<int>(n));
  for (unsigned i = 0; i < n; ++i) {
    names.push_back("g" + std::to_string(i));
    for (unsigned j = 0; j < n; ++j) tab[i][j] = static_cast<int>((i + j) % n);
  }
  return from_group_table(object_name, names, tab);
}

ConcreteGroupoid banal_groupoid(unsigned n, const std::string& prefix) {
  ConcreteGroupoid g;
  for (unsigned i = 0; i < n; ++i) g.add_object(prefix + std::to_string(i));
  for (unsigned a = 0; a < n; ++a)
    for (unsigned b = 0; b < n; ++b) {
      Index m = g.add_morphism(prefix + std::to_string(a) + ">" + prefix + std::to_string(b),
                               a, b);
      if (a == b) g.set_identity(a, m);
    }
  auto arrow = [&](unsigned a, unsigned b) { return static_cast<Index>(a * n + b); };
  for (unsigned a = 0; a < n; ++a)
    for (unsigned b = 0; b < n; ++b) {
      g.set_inverse(arrow(a, b), arrow(b, a));
      for (unsigned c = 0; c < n; ++c) g.set_compose(arrow(a, b), arrow(b, c), arrow(a, c));
    }
  return g;
}

ConcreteGroupoid s3_groupoid(const std::string& object_name) {
  // Elements as permutations of {0,1,2}: e, r=(012), r2, s=(01), sr, sr2.
  const std::vector<std::array<int, 3>> perms = {
      {0, 1, 2}, {1, 2, 0}, {2, 0, 1}, {1, 0, 2}, {0, 2, 1}, {2, 1, 0}};
  const std::vector<std::string> names = {"e", "r", "rr", "s", "sr", "srr"};
  auto mul = [&](int a, int b) {  // diagrammatic: apply a, then b
    std::array<int, 3> c{};
    for (int i = 0; i < 3; ++i) c[i] = perms[b][perms[a][i]];
    for (std::size_t k = 0; k < perms.size(); ++k)
      if (perms[k] == c) return static_cast<int>(k);
    throw std::logic_error("s3 closure");
  };
  std::vector<std::vector<int>> tab(6, std::vector<int>(6));
  for (int i = 0; i < 6; ++i)
    for (int j = 0; j < 6; ++j) tab[i][j] = mul(i, j);
  return from_group_table(object_name, names, tab);
}

ConcreteGroupoid disjoint_union(const ConcreteGroupoid& a, const ConcreteGroupoid& b,
                                const std::string& prefix_a, const std::string& prefix_b) {
  ConcreteGroupoid g;
  for (Index x = 0; x < a.object_count(); ++x) g.add_object(prefix_a + a.objects.name(x));
  for (Index x = 0; x < b.object_count(); ++x) g.add_object(prefix_b + b.objects.name(x));
  const Index ob = static_cast<Index>(a.object_count());
  const Index mb = static_cast<Index>(a.morphism_count());
  for (Index m = 0; m < a.morphism_count(); ++m)
    g.add_morphism(prefix_a + a.morphisms.name(m), a.src[m], a.tgt[m]);
  for (Index m = 0; m < b.morphism_count(); ++m)
    g.add_morphism(prefix_b + b.morphisms.name(m), ob + b.src[m], ob + b.tgt[m]);
  for (Index x = 0; x < a.object_count(); ++x) g.set_identity(x, a.identity[x]);
  for (Index x = 0; x < b.object_count(); ++x) g.set_identity(ob + x, mb + b.identity[x]);
  for (Index m = 0; m < a.morphism_count(); ++m) g.set_inverse(m, a.inverse[m]);
  for (Index m = 0; m < b.morphism_count(); ++m) g.set_inverse(mb + m, mb + b.inverse[m]);
  for (const auto& [k, v] : a.table())
    g.set_compose(static_cast<Index>(k >> 32), static_cast<Index>(k & 0xffffffffu), v);
  for (const auto& [k, v] : b.table())
    g.set_compose(mb + static_cast<Index>(k >> 32), mb + static_cast<Index>(k & 0xffffffffu),
                  mb + v);
  return g;
}

ValidationReport validate(const ConcreteFunctor& f) {
  ValidationReport rep;
  const auto& d = *f.dom;
  const auto& c = *f.cod;
  if (f.object_map.size() != d.object_count() || f.morphism_map.size() != d.morphism_count()) {
    rep.fail("functor maps have wrong arity");
    return rep;
  }
  for (Index m = 0; m < d.morphism_count(); ++m) {
    Index fm = f.morphism_map[m];
    if (c.src[fm] != f.object_map[d.src[m]] || c.tgt[fm] != f.object_map[d.tgt[m]])
      rep.fail("functor breaks endpoints at " + d.morphisms.name(m));
  }
  for (Index x = 0; x < d.object_count(); ++x)
    if (f.morphism_map[d.identity[x]] != c.identity[f.object_map[x]])
      rep.fail("functor breaks identity at " + d.objects.name(x));
  for (const auto& [k, v] : d.table()) {
    Index a = static_cast<Index>(k >> 32), b = static_cast<Index>(k & 0xffffffffu);
    if (c.compose(f.morphism_map[a], f.morphism_map[b]) != f.morphism_map[v])
      rep.fail("functor breaks composition at (" + d.morphisms.name(a) + ", " +
               d.morphisms.name(b) + ")");
  }
  return rep;
}

ConcreteFunctor identity_functor(GroupoidPtr g) {
  ConcreteFunctor f;
  f.dom = g;
  f.cod = g;
  f.object_map.resize(g->object_count());
  f.morphism_map.resize(g->morphism_count());
  for (Index x = 0; x < g->object_count(); ++x) f.object_map[x] = x;
  for (Index m = 0; m < g->morphism_count(); ++m) f.morphism_map[m] = m;
  return f;
}

bool same_groupoid(const GroupoidPtr& a, const GroupoidPtr& b) {
  if (a == b) return true;
  return a && b && a->objects == b->objects && a->morphisms == b->morphisms;
}

ConcreteFunctor compose(const ConcreteFunctor& f, const ConcreteFunctor& g) {
  if (!same_groupoid(f.cod, g.dom))
    throw std::invalid_argument("functor composition: codomain/domain mismatch");
  ConcreteFunctor h;
  h.dom = f.dom;
  h.cod = g.cod;
  h.object_map.reserve(f.object_map.size());
  h.morphism_map.reserve(f.morphism_map.size());
  for (Index x : f.object_map) h.object_map.push_back(g.object_map[x]);
  for (Index m : f.morphism_map) h.morphism_map.push_back(g.morphism_map[m]);
  return h;
}

bool injective_on_objects(const ConcreteFunctor& f) {
  std::vector<bool> seen(f.cod->object_count(), false);
  for (Index x : f.object_map) {
    if (seen[x]) return false;
    seen[x] = true;
  }
  return true;
}

ValidationReport validate(const NatIso& a) {
  ValidationReport rep;
  if (!same_groupoid(a.source.dom, a.target.dom) || !same_groupoid(a.source.cod, a.target.cod)) {
    rep.fail("natural isomorphism between non-parallel functors");
    return rep;
  }
  const auto& d = *a.source.dom;
  const auto& c = *a.source.cod;
  if (a.component.size() != d.object_count()) {
    rep.fail("component list has wrong arity");
    return rep;
  }
  for (Index x = 0; x < d.object_count(); ++x) {
    Index m = a.component[x];
    if (c.src[m] != a.source.object_map[x] || c.tgt[m] != a.target.object_map[x])
      rep.fail("component at " + d.objects.name(x) + " has wrong endpoints");
  }
  if (!rep.ok()) return rep;
  for (Index m = 0; m < d.morphism_count(); ++m) {
    // compose(component[src], target(m)) == compose(source(m), component[tgt])
    Index lhs = c.compose(a.component[d.src[m]], a.target.morphism_map[m]);
    Index rhs = c.compose(a.source.morphism_map[m], a.component[d.tgt[m]]);
    if (lhs != rhs) rep.fail("naturality square fails at " + d.morphisms.name(m));
  }
  return rep;
}

NatIso identity_nat(const ConcreteFunctor& f) {
  NatIso a;
  a.source = f;
  a.target = f;
  a.component.reserve(f.object_map.size());
  for (Index x : f.object_map) a.component.push_back(f.cod->identity[x]);
  return a;
}

NatIso nat_inverse(const NatIso& a) {
  NatIso b;
  b.source = a.target;
  b.target = a.source;
  b.component.reserve(a.component.size());
  for (Index m : a.component) b.component.push_back(a.source.cod->inverse[m]);
  return b;
}

NatIso nat_compose(const NatIso& a, const NatIso& b) {
  if (!same_functor(a.target, b.source))
    throw std::invalid_argument("vertical composition: middle functors differ");
  NatIso c;
  c.source = a.source;
  c.target = b.target;
  const auto& g = *a.source.cod;
  c.component.reserve(a.component.size());
  for (std::size_t x = 0; x < a.component.size(); ++x)
    c.component.push_back(g.compose(a.component[x], b.component[x]));
  return c;
}

NatIso whisker_pre(const NatIso& a, const ConcreteFunctor& f) {
  if (!same_groupoid(f.cod, a.source.dom))
    throw std::invalid_argument("whisker_pre: shape mismatch");
  NatIso b;
  b.source = compose(f, a.source);
  b.target = compose(f, a.target);
  b.component.reserve(f.object_map.size());
  for (Index x : f.object_map) b.component.push_back(a.component[x]);
  return b;
}

NatIso whisker_post(const ConcreteFunctor& t, const NatIso& a) {
  if (!same_groupoid(a.source.cod, t.dom))
    throw std::invalid_argument("whisker_post: shape mismatch");
  NatIso b;
  b.source = compose(a.source, t);
  b.target = compose(a.target, t);
  b.component.reserve(a.component.size());
  for (Index m : a.component) b.component.push_back(t.morphism_map[m]);
  return b;
}

bool same_functor(const ConcreteFunctor& f, const ConcreteFunctor& g) {
  return same_groupoid(f.dom, g.dom) && same_groupoid(f.cod, g.cod) &&
         f.object_map == g.object_map && f.morphism_map == g.morphism_map;
}

bool same_nat(const NatIso& a, const NatIso& b) {
  return same_functor(a.source, b.source) && same_functor(a.target, b.target) &&
         a.component == b.component;
}

}  // namespace grpd
