#include <doctest.h>

#include "grpd/space.hpp"
#include "helpers.hpp"

using namespace grpd;
using namespace grpd::testutil;

TEST_CASE("pi0 counts components") {
  Complex2 two_triangles;
  for (int t = 0; t < 2; ++t)
    for (int i = 0; i < 3; ++i)
      two_triangles.add_vertex("t" + std::to_string(t) + "v" + std::to_string(i));
  for (int t = 0; t < 2; ++t)
    for (int i = 0; i < 3; ++i)
      two_triangles.add_edge("t" + std::to_string(t) + "e" + std::to_string(i), 3 * t + i,
                             3 * t + (i + 1) % 3);
  CHECK(pi0(two_triangles).size() == 2);

  CHECK(pi0(cycle_complex(6)).size() == 1);
  CHECK(pi0(Complex2{}).size() == 0);  // pi0 of the empty complex is empty
}

TEST_CASE("pi0 is additive over disjoint pieces") {
  auto c = share(cycle_complex(6));
  auto [u, v] = cycle_two_arcs(c, 6, 3);
  Subcomplex w = intersect(u, v);
  CHECK(pi0(w).size() == 2);
  Pi0 whole = pi0(full_subcomplex(c));
  CHECK(whole.size() == 1);
}

TEST_CASE("pi1 of the 3-cycle has free rank one") {
  PresentedGroupoid p = pi1(cycle_complex(3));
  auto vgp = tree_collapse(p, 0);
  CHECK(vgp.generators.size() == 1);  // E - V + 1
  auto fp = fingerprint(p);
  CHECK(fp.per_component[0].abelian.free_rank == 1);
}

TEST_CASE("pi1 of the tetrahedron boundary is trivial") {
  PresentedGroupoid p = pi1(tetrahedron_complex());
  auto conc = concretize(share(p));
  REQUIRE(conc);
  auto comps = components(p);
  REQUIRE(comps.size() == 1);
  // simply connected: exactly one morphism between each ordered pair
  CHECK(is_simply_connected(*conc->groupoid));
}

TEST_CASE("pi1 of the torus abelianizes to Z^2") {
  PresentedGroupoid p = pi1(torus_complex());
  auto fp = fingerprint(p);
  REQUIRE(fp.component_count == 1);
  CHECK(fp.per_component[0].abelian.free_rank == 2);
  CHECK(fp.per_component[0].abelian.torsion.empty());
}

TEST_CASE("pi1 of the empty complex is the empty groupoid") {
  PresentedGroupoid p = pi1(Complex2{});
  CHECK(p.graph.vertices.size() == 0);
}

TEST_CASE("intersection and union of subcomplexes") {
  auto c = share(cycle_complex(6));
  auto [u, v] = cycle_two_arcs(c, 6, 3);
  CHECK(subcomplex_equal(intersect(u, u), u));
  CHECK(subcomplex_equal(unite(u, v), full_subcomplex(c)));
  Subcomplex w = intersect(u, v);
  CHECK(pi0(w).size() == 2);

  // disjoint subcomplexes meet in the empty subcomplex
  Subcomplex a = make_subcomplex(c, {"v0"}, {}, {});
  Subcomplex b = make_subcomplex(c, {"v3"}, {}, {});
  CHECK(intersect(a, b).empty());
}

TEST_CASE("subcomplex construction rejects missing incidence") {
  auto c = share(cycle_complex(3));
  CHECK_THROWS_AS(make_subcomplex(c, {"v0"}, {"e0"}, {}), std::invalid_argument);
}

TEST_CASE("pi1 inclusion functors compose strictly along nested subcomplexes") {
  auto c = share(cycle_complex(6));
  auto [u, v] = cycle_two_arcs(c, 6, 3);
  Subcomplex w = intersect(u, v);
  auto pw = share(pi1(w));
  auto pu = share(pi1(u));
  auto pf = share(pi1(full_subcomplex(c)));
  PresFunctor wu = inclusion_functor(pw, pu, w, u);
  PresFunctor uf = inclusion_functor(pu, pf, u, full_subcomplex(c));
  PresFunctor wf = inclusion_functor(pw, pf, w, full_subcomplex(c));
  PresFunctor through = compose(wu, uf);
  CHECK(through.vertex_map == wf.vertex_map);
  for (std::size_t e = 0; e < through.edge_map.size(); ++e)
    CHECK(free_reduce(through.edge_map[e]) == free_reduce(wf.edge_map[e]));
}

TEST_CASE("nerve of the two-arc cover of the 6-cycle") {
  auto c = share(cycle_complex(6));
  auto [u, v] = cycle_two_arcs(c, 6, 3);
  CoverNerve n = build_nerve({u, v});
  CHECK(n.poset.elements.size() == 3);  // U0, U1, U0&1
  CHECK(validate_diagram(n.diagram).ok());
  // the intersection value has two simply connected components
  Index uv = n.poset.elements.at("U0&1");
  CHECK(components(*n.diagram.value[uv]).size() == 2);
  CHECK(is_good_cover(n));                          // componentwise reading
  CHECK_FALSE(is_good_cover(n, GoodReading::Strict));  // intersection disconnected
}

TEST_CASE("single-member cover gives a one-element nerve") {
  auto c = share(cycle_complex(4));
  CoverNerve n = build_nerve({full_subcomplex(c)});
  CHECK(n.poset.elements.size() == 1);
  CHECK_FALSE(is_good_cover(n));  // the whole cycle is not simply connected
}

TEST_CASE("three-arc cover of the 9-cycle is good") {
  auto c = share(cycle_complex(9));
  CoverNerve n = build_nerve(cycle_three_arcs(c, 9));
  CHECK(n.poset.elements.size() == 6);  // three arcs, three single-point overlaps
  CHECK(is_good_cover(n));
  CHECK(is_good_cover(n, GoodReading::Strict));  // all pieces connected here
  CHECK(validate_diagram(n.diagram).ok());
}

TEST_CASE("build_nerve requires a covering family") {
  auto c = share(cycle_complex(4));
  auto [u, v] = cycle_two_arcs(c, 4, 2);
  CHECK_THROWS_AS(build_nerve({u}), std::invalid_argument);
  CHECK_NOTHROW(build_nerve({u, v}));
}

TEST_CASE("rank of pi1 via tree collapse equals E - V + 1 on connected complexes") {
  Rng rng(314159);
  for (int trial = 0; trial < 20; ++trial) {
    unsigned nv = 2 + pick(rng, 5);
    Complex2 c;
    for (unsigned i = 0; i < nv; ++i) c.add_vertex("v" + std::to_string(i));
    for (unsigned i = 0; i + 1 < nv; ++i) c.add_edge("t" + std::to_string(i), i, i + 1);
    unsigned extra = pick(rng, 4);
    for (unsigned i = 0; i < extra; ++i)
      c.add_edge("x" + std::to_string(i), pick(rng, nv), pick(rng, nv));
    auto vgp = tree_collapse(pi1(c), 0);
    CHECK(vgp.generators.size() == c.skeleton.edges.size() - nv + 1);
  }
}
