#ifndef GRPD_TEST_HELPERS_HPP
#define GRPD_TEST_HELPERS_HPP

#include <random>
#include <string>
#include <vector>

#include "grpd/cosheaf.hpp"
#include "grpd/diagrams.hpp"
#include "grpd/hom.hpp"
#include "grpd/space.hpp"

namespace grpd::testutil {

// ------------------------------------------------------------- complexes ----

/// Cycle with n vertices v0..v_{n-1} and edges e_i : v_i -> v_{i+1 mod n}.
inline Complex2 cycle_complex(unsigned n) {
  Complex2 c;
  for (unsigned i = 0; i < n; ++i) c.add_vertex("v" + std::to_string(i));
  for (unsigned i = 0; i < n; ++i)
    c.add_edge("e" + std::to_string(i), i, (i + 1) % n);
  return c;
}

/// Two arcs of an n-cycle split after edge k-1: U carries e0..e_{k-1},
/// V carries e_k..e_{n-1}; they meet in the two vertices v0 and v_k.
inline std::pair<Subcomplex, Subcomplex> cycle_two_arcs(ComplexPtr c, unsigned n, unsigned k) {
  std::vector<std::string> uv, ue, vv, ve;
  for (unsigned i = 0; i <= k; ++i) uv.push_back("v" + std::to_string(i));
  for (unsigned i = 0; i < k; ++i) ue.push_back("e" + std::to_string(i));
  for (unsigned i = k; i < n; ++i) vv.push_back("v" + std::to_string(i));
  vv.push_back("v0");
  for (unsigned i = k; i < n; ++i) ve.push_back("e" + std::to_string(i));
  return {make_subcomplex(c, uv, ue, {}), make_subcomplex(c, vv, ve, {})};
}

/// Three arcs of an n-cycle (n >= 3) with single-vertex pairwise overlaps.
inline std::vector<Subcomplex> cycle_three_arcs(ComplexPtr c, unsigned n) {
  unsigned a = n / 3, b = 2 * n / 3;
  auto arc = [&](unsigned from, unsigned to) {  // edges e_from .. e_{to-1}
    std::vector<std::string> vs, es;
    for (unsigned i = from; i != to; i = (i + 1) % n) {
      vs.push_back("v" + std::to_string(i));
      es.push_back("e" + std::to_string(i));
    }
    vs.push_back("v" + std::to_string(to));
    return make_subcomplex(c, vs, es, {});
  };
  return {arc(0, a), arc(a, b), arc(b, 0)};
}

/// Boundary of the tetrahedron: 4 vertices, 6 edges, 4 triangular cells.
inline Complex2 tetrahedron_complex() {
  Complex2 c;
  for (int i = 1; i <= 4; ++i) c.add_vertex("v" + std::to_string(i));
  auto e = [&](int a, int b) {
    return c.add_edge("e" + std::to_string(a) + std::to_string(b), a - 1, b - 1);
  };
  Index e12 = e(1, 2), e13 = e(1, 3), e14 = e(1, 4), e23 = e(2, 3), e24 = e(2, 4),
        e34 = e(3, 4);
  auto tri = [&](const std::string& name, Index ab, Index bc, Index ac) {
    c.add_cell(name, Word{c.skeleton.edges[ab].src,
                          {{ab, false}, {bc, false}, {ac, true}}});
  };
  tri("f123", e12, e23, e13);
  tri("f124", e12, e24, e14);
  tri("f134", e13, e34, e14);
  tri("f234", e23, e34, e24);
  return c;
}

/// Torus as one vertex, two loops, one square cell a b a^- b^-.
inline Complex2 torus_complex() {
  Complex2 c;
  Index v = c.add_vertex("v");
  Index a = c.add_edge("a", v, v);
  Index b = c.add_edge("b", v, v);
  c.add_cell("f", Word{v, {{a, false}, {b, false}, {a, true}, {b, true}}});
  return c;
}

/// Wedge of two circles: one vertex, two loops, no cells.
inline Complex2 wedge_complex() {
  Complex2 c;
  Index v = c.add_vertex("v");
  c.add_edge("a", v, v);
  c.add_edge("b", v, v);
  return c;
}

/// Projective plane: one vertex, one loop, cell a.a — torsion Z/2.
inline Complex2 projective_plane_complex() {
  Complex2 c;
  Index v = c.add_vertex("v");
  Index a = c.add_edge("a", v, v);
  c.add_cell("f", Word{v, {{a, false}, {a, false}}});
  return c;
}

/// Klein bottle: one vertex, loops a and b, cell a b a b^-.
inline Complex2 klein_bottle_complex() {
  Complex2 c;
  Index v = c.add_vertex("v");
  Index a = c.add_edge("a", v, v);
  Index b = c.add_edge("b", v, v);
  c.add_cell("f", Word{v, {{a, false}, {b, false}, {a, false}, {b, true}}});
  return c;
}

/// Disk: a triangle with its 2-cell filled in.
inline Complex2 disk_complex() {
  Complex2 c;
  for (int i = 0; i < 3; ++i) c.add_vertex("v" + std::to_string(i));
  Index e0 = c.add_edge("e0", 0, 1);
  Index e1 = c.add_edge("e1", 1, 2);
  Index e2 = c.add_edge("e2", 2, 0);
  c.add_cell("f", Word{0, {{e0, false}, {e1, false}, {e2, false}}});
  return c;
}

/// Path with n edges v0 - v1 - ... - vn.
inline Complex2 path_complex(unsigned n) {
  Complex2 c;
  for (unsigned i = 0; i <= n; ++i) c.add_vertex("v" + std::to_string(i));
  for (unsigned i = 0; i < n; ++i) c.add_edge("e" + std::to_string(i), i, i + 1);
  return c;
}

// --------------------------------------------------------------- oracles ----

/// Independent brute-force enumerator for functors p -> g: a plain odometer
/// over every vertex and edge assignment, checking structure and all
/// relations only on complete assignments.  Deliberately shares nothing with
/// hom_category's backtracking.
inline std::uint64_t brute_force_functor_count(const PresentedGroupoid& p,
                                               const ConcreteGroupoid& g) {
  const std::size_t nv = p.graph.vertices.size();
  const std::size_t ne = p.graph.edges.size();
  if (nv == 0) return 1;
  if (g.object_count() == 0) return 0;
  std::vector<Index> v(nv, 0), e(ne, 0);
  std::uint64_t count = 0;
  for (;;) {
    for (;;) {
      bool ok = true;
      for (std::size_t i = 0; i < ne && ok; ++i)
        ok = g.src[e[i]] == v[p.graph.edges[i].src] && g.tgt[e[i]] == v[p.graph.edges[i].tgt];
      if (ok) {
        PresToConcFunctor f;
        f.dom = std::make_shared<const PresentedGroupoid>(p);
        f.cod = std::make_shared<const ConcreteGroupoid>(g);
        f.vertex_map = v;
        f.edge_map = e;
        for (const auto& r : p.relations)
          if (evaluate(f, r.lhs) != evaluate(f, r.rhs)) {
            ok = false;
            break;
          }
        if (ok) ++count;
      }
      std::size_t i = ne;
      bool more = false;
      while (i > 0) {
        --i;
        if (++e[i] < g.morphism_count()) {
          more = true;
          break;
        }
        e[i] = 0;
      }
      if (!more) break;
    }
    std::size_t i = nv;
    bool more = false;
    while (i > 0) {
      --i;
      if (++v[i] < g.object_count()) {
        more = true;
        break;
      }
      v[i] = 0;
    }
    if (!more) return count;
  }
}

/// Brute-force count of natural isomorphisms between two enumerated functors:
/// odometer over all component assignments, naturality checked on every edge.
inline std::uint64_t brute_force_natiso_count(const HomCategory& cat, Index a, Index b) {
  const auto& graph = cat.dom->graph;
  const auto& g = *cat.cod;
  const auto& F = cat.objects[a];
  const auto& G = cat.objects[b];
  const std::size_t nv = graph.vertices.size();
  if (nv == 0) return 1;
  std::vector<Index> comp(nv, 0);
  std::uint64_t count = 0;
  for (;;) {
    bool ok = true;
    for (std::size_t v = 0; v < nv && ok; ++v)
      ok = g.src[comp[v]] == F.vertex_map[v] && g.tgt[comp[v]] == G.vertex_map[v];
    for (std::size_t e = 0; e < graph.edges.size() && ok; ++e)
      ok = g.compose(comp[graph.edges[e].src], G.edge_map[e]) ==
           g.compose(F.edge_map[e], comp[graph.edges[e].tgt]);
    if (ok) ++count;
    std::size_t i = nv;
    bool more = false;
    while (i > 0) {
      --i;
      if (++comp[i] < g.morphism_count()) {
        more = true;
        break;
      }
      comp[i] = 0;
    }
    if (!more) return count;
  }
}

// ------------------------------------------------------ random generation ----

using Rng = std::mt19937_64;

inline unsigned pick(Rng& rng, unsigned bound) {
  return static_cast<unsigned>(rng() % bound);
}

/// Random groupoid assembled from one-object cyclic groups and banal pieces;
/// stays within the given object/morphism budget.
inline ConcreteGroupoid random_groupoid(Rng& rng, unsigned max_objects = 5,
                                        unsigned max_morphisms = 40) {
  ConcreteGroupoid g;
  unsigned objects = 0;
  int piece = 0;
  while (true) {
    unsigned kind = pick(rng, 4);
    ConcreteGroupoid next;
    if (kind < 2) {
      next = cyclic_groupoid(1 + pick(rng, 4));
    } else if (kind == 2) {
      next = banal_groupoid(1 + pick(rng, 2));
    } else {
      next = cyclic_groupoid(2);
    }
    if (objects + next.object_count() > max_objects ||
        g.morphism_count() + next.morphism_count() > max_morphisms)
      break;
    std::string prefix = "p" + std::to_string(piece++) + ".";
    if (g.object_count() == 0)
      g = disjoint_union(ConcreteGroupoid{}, next, "", prefix);
    else
      g = disjoint_union(g, next, "", prefix);
    objects = static_cast<unsigned>(g.object_count());
    if (pick(rng, 3) == 0 && objects > 0) break;
  }
  if (g.object_count() == 0) g = disjoint_union(ConcreteGroupoid{}, cyclic_groupoid(1), "", "p0.");
  return g;
}

/// Random functor between concrete groupoids, built component by component:
/// pick an image object for the component's base, map its vertex group by a
/// sampled homomorphism, and transport along a spanning tree.
inline ConcreteFunctor random_functor(Rng& rng, GroupoidPtr dom, GroupoidPtr cod) {
  const auto& A = *dom;
  const auto& B = *cod;
  if (B.object_count() == 0) throw std::invalid_argument("random_functor: empty codomain");
  ConcreteFunctor f;
  f.dom = dom;
  f.cod = cod;
  f.object_map.assign(A.object_count(), kNoIndex);
  f.morphism_map.assign(A.morphism_count(), kNoIndex);
  for (const auto& comp : A.components()) {
    Index base = comp[0];
    auto loops = A.hom(base, base);
    // find a target object and a vertex-group homomorphism by rejection
    for (;;) {
      Index tbase = pick(rng, static_cast<unsigned>(B.object_count()));
      auto tloops = B.hom(tbase, tbase);
      std::unordered_map<Index, Index> hom;  // loop -> image
      bool ok = true;
      // the vertex groups here are cyclic: map a generator consistently
      // by sampling images and closing under composition
      hom[A.identity[base]] = B.identity[tbase];
      for (Index l : loops) {
        if (hom.count(l)) continue;
        Index img = tloops[pick(rng, static_cast<unsigned>(tloops.size()))];
        // close the partial map under composition with known loops
        hom[l] = img;
        bool changed = true;
        while (changed && ok) {
          changed = false;
          for (Index x : loops) {
            if (!hom.count(x)) continue;
            for (Index y : loops) {
              if (!hom.count(y)) continue;
              Index xy = A.compose(x, y);
              Index img2 = B.compose(hom[x], hom[y]);
              auto it = hom.find(xy);
              if (it == hom.end()) {
                hom[xy] = img2;
                changed = true;
              } else if (it->second != img2) {
                ok = false;
                break;
              }
            }
            if (!ok) break;
          }
        }
        if (!ok) break;
      }
      if (!ok) continue;
      // spread along the component: pick arbitrary transports
      f.object_map[base] = tbase;
      for (Index m : loops) f.morphism_map[m] = hom[m];
      for (Index v : comp) {
        if (v == base) continue;
        f.object_map[v] = tbase;
      }
      for (Index m = 0; m < A.morphism_count(); ++m) {
        if (f.morphism_map[m] != kNoIndex) continue;
        Index s = A.src[m], t = A.tgt[m];
        if (f.object_map[s] == kNoIndex || f.object_map[t] == kNoIndex) continue;
        if (std::find(comp.begin(), comp.end(), s) == comp.end()) continue;
        // express m through the base: m = (base->s)^-1 ; loop ; (base->t)
        Index to_s = A.hom(base, s)[0];
        Index to_t = A.hom(base, t)[0];
        Index loop = A.compose(A.compose(to_s, m), A.inverse[to_t]);
        f.morphism_map[m] =
            B.compose(B.compose(B.identity[tbase], hom[loop]), B.identity[tbase]);
      }
      break;
    }
  }
  return f;
}

/// Random 2-commuting square with i1 injective on objects, built so that a
/// valid lambda exists by construction: B is a disjoint sum of cyclic and
/// banal pieces, A a subgroupoid of it (i1 the inclusion, not full in
/// general), C = A with i2 = id, j1 random, and j2 the conjugate of j1.i1 by
/// freely chosen components (which then serve as lambda).
struct RandomSquare {
  GroupoidPtr A, B, D;
  ConcreteFunctor i1, i2, j1, j2;
  NatIso lambda;
};

inline RandomSquare random_square(Rng& rng) {
  // pieces of B: cyclic groups and banal groupoids
  struct Piece {
    unsigned order = 1;   // cyclic order, 0 for banal
    unsigned size = 1;    // banal object count
    bool in_A = false;
    unsigned divisor = 1;     // subgroup index step for cyclic pieces
    unsigned sub_size = 1;    // object count kept for banal pieces
  };
  std::vector<Piece> pieces;
  unsigned objects = 0, morphisms = 0;
  do {
    Piece p;
    if (pick(rng, 3) == 0) {
      p.order = 0;
      p.size = 1 + pick(rng, 2);
      if (objects + p.size > 5 || morphisms + p.size * p.size > 40) break;
      objects += p.size;
      morphisms += p.size * p.size;
      p.in_A = pick(rng, 3) != 0;
      p.sub_size = 1 + pick(rng, p.size);
    } else {
      p.order = 1 + pick(rng, 4);
      if (objects + 1 > 5 || morphisms + p.order > 40) break;
      objects += 1;
      morphisms += p.order;
      p.in_A = pick(rng, 3) != 0;
      const unsigned divisors[] = {1, 2, 3, 4};
      do {
        p.divisor = divisors[pick(rng, 4)];
      } while (p.order % p.divisor != 0);
    }
    pieces.push_back(p);
  } while (pick(rng, 3) != 0);
  if (pieces.empty()) pieces.push_back({2, 1, true, 1, 1});

  ConcreteGroupoid B, A;
  ConcreteFunctor i1;
  std::vector<Index> i1_obj, i1_mor;
  for (std::size_t pi = 0; pi < pieces.size(); ++pi) {
    const Piece& p = pieces[pi];
    std::string prefix = "q" + std::to_string(pi) + ".";
    Index ob = static_cast<Index>(B.object_count());
    Index mb = static_cast<Index>(B.morphism_count());
    ConcreteGroupoid piece_g = p.order ? cyclic_groupoid(p.order) : banal_groupoid(p.size);
    B = disjoint_union(B, piece_g, "", prefix);
    if (!p.in_A) continue;
    Index oa = static_cast<Index>(A.object_count());
    Index ma = static_cast<Index>(A.morphism_count());
    if (p.order) {
      unsigned sub_order = p.order / p.divisor;
      std::vector<std::string> names;
      std::vector<std::vector<int>> tab(sub_order, std::vector<int>(sub_order));
      for (unsigned i = 0; i < sub_order; ++i) {
        names.push_back("g" + std::to_string(i * p.divisor));
        for (unsigned j = 0; j < sub_order; ++j) tab[i][j] = static_cast<int>((i + j) % sub_order);
      }
      A = disjoint_union(A, from_group_table("*", names, tab), "", prefix);
      i1_obj.push_back(ob);
      for (unsigned i = 0; i < sub_order; ++i) i1_mor.push_back(mb + i * p.divisor);
      (void)oa;
      (void)ma;
    } else {
      A = disjoint_union(A, banal_groupoid(p.sub_size), "", prefix);
      for (unsigned i = 0; i < p.sub_size; ++i) i1_obj.push_back(ob + i);
      for (unsigned a = 0; a < p.sub_size; ++a)
        for (unsigned b = 0; b < p.sub_size; ++b) i1_mor.push_back(mb + a * p.size + b);
    }
  }

  RandomSquare sq;
  sq.B = share(std::move(B));
  sq.A = share(std::move(A));
  sq.i1.dom = sq.A;
  sq.i1.cod = sq.B;
  sq.i1.object_map = i1_obj;
  sq.i1.morphism_map = i1_mor;
  sq.D = share(random_groupoid(rng));
  sq.j1 = random_functor(rng, sq.B, sq.D);
  sq.i2 = identity_functor(sq.A);

  ConcreteFunctor t = compose(sq.i1, sq.j1);  // j1.i1, to be conjugated
  const auto& D = *sq.D;
  std::vector<Index> mu;
  for (Index a = 0; a < sq.A->object_count(); ++a) {
    std::vector<Index> out;
    for (Index m = 0; m < D.morphism_count(); ++m)
      if (D.src[m] == t.object_map[a]) out.push_back(m);
    mu.push_back(out[pick(rng, static_cast<unsigned>(out.size()))]);
  }
  sq.j2.dom = sq.A;
  sq.j2.cod = sq.D;
  for (Index a = 0; a < sq.A->object_count(); ++a)
    sq.j2.object_map.push_back(D.tgt[mu[a]]);
  for (Index m = 0; m < sq.A->morphism_count(); ++m) {
    Index a = sq.A->src[m], b = sq.A->tgt[m];
    sq.j2.morphism_map.push_back(
        D.compose(D.compose(D.inverse[mu[a]], t.morphism_map[m]), mu[b]));
  }
  sq.lambda.source = t;
  sq.lambda.target = compose(sq.i2, sq.j2);
  sq.lambda.component = mu;
  return sq;
}

}  // namespace grpd::testutil

#endif
