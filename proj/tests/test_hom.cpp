#include <doctest.h>

#include "grpd/fingerprint.hpp"
#include "grpd/hom.hpp"
#include "helpers.hpp"

using namespace grpd;
using namespace grpd::testutil;

TEST_CASE("functor groupoid of a free loop into Z/2") {
  auto p = share(free_loop_presentation());
  auto g = share(cyclic_groupoid(2));
  FunctorGroupoid fg = functor_groupoid(p, g);
  CHECK(fg.category.objects.size() == 2);
  CHECK(brute_force_functor_count(*p, *g) == 2);
  auto comps = fg.category.object_components();
  CHECK(comps.size() == 2);
  // each vertex group is Z/2
  for (Index o = 0; o < 2; ++o) CHECK(fg.category.homs(o, o).size() == 2);
  CHECK(validate(*fg.groupoid).ok());
  auto fp = fingerprint(*fg.groupoid);
  REQUIRE(fp.component_count == 2);
  for (const auto& c : fp.per_component) {
    CHECK(c.order == 2);
    CHECK(c.abelian.torsion == std::vector<long long>{2});
  }
}

TEST_CASE("functor groupoid at the point is the groupoid itself") {
  auto p = share(trivial_presentation());
  for (ConcreteGroupoid base :
       {cyclic_groupoid(3), banal_groupoid(2),
        disjoint_union(cyclic_groupoid(2), banal_groupoid(2), "a.", "b.")}) {
    auto g = share(std::move(base));
    FunctorGroupoid fg = functor_groupoid(p, g);
    CHECK(fg.category.objects.size() == g->object_count());
    CHECK(fingerprint(*fg.groupoid) == fingerprint(*g));
  }
}

TEST_CASE("a relation a = id forces the trivial assignment") {
  PresentedGroupoid p;
  Index v = p.graph.add_vertex("*");
  Index a = p.graph.add_edge("a", v, v);
  p.relations.push_back({Word{v, {{a, false}}}, Word{v, {}}});
  FunctorGroupoid fg = functor_groupoid(share(std::move(p)), share(cyclic_groupoid(2)));
  CHECK(fg.category.objects.size() == 1);
}

TEST_CASE("empty presentation has exactly one functor anywhere") {
  PresentedGroupoid empty;
  FunctorGroupoid fg = functor_groupoid(share(std::move(empty)), share(cyclic_groupoid(3)));
  CHECK(fg.category.objects.size() == 1);
  CHECK(fg.groupoid->morphism_count() == 1);
}

TEST_CASE("functor groupoid counts match the brute-force oracle") {
  Rng rng(20240819);
  for (int trial = 0; trial < 8; ++trial) {
    PresentedGroupoid p;
    unsigned nv = 1 + pick(rng, 2);
    for (unsigned i = 0; i < nv; ++i) p.graph.add_vertex("v" + std::to_string(i));
    unsigned ne = 1 + pick(rng, 2);
    for (unsigned i = 0; i < ne; ++i)
      p.graph.add_edge("e" + std::to_string(i), pick(rng, nv), pick(rng, nv));
    if (pick(rng, 2)) {
      // relate the square of the first loop when it is one
      const auto& e0 = p.graph.edges[0];
      if (e0.src == e0.tgt)
        p.relations.push_back(
            {Word{e0.src, {{0, false}, {0, false}}}, Word{e0.src, {}}});
    }
    auto pp = share(std::move(p));
    auto g = share(random_groupoid(rng, 3, 12));
    FunctorGroupoid fg = functor_groupoid(pp, g);
    CHECK(fg.category.objects.size() == brute_force_functor_count(*pp, *g));
    for (Index a = 0; a < std::min<std::size_t>(fg.category.objects.size(), 4); ++a)
      for (Index b = 0; b < std::min<std::size_t>(fg.category.objects.size(), 4); ++b)
        CHECK(fg.category.homs(a, b).size() == brute_force_natiso_count(fg.category, a, b));
  }
}

TEST_CASE("functor groupoid enforces its size guard") {
  auto p = share(discrete_presentation(6));
  auto g = share(banal_groupoid(3)); // 3^6 functors, each with many isos
  CHECK_THROWS_AS(functor_groupoid(p, g, 100), ResourceLimitError);
}

TEST_CASE("fingerprints of standard groupoids") {
  auto fp = fingerprint(banal_groupoid(2));
  CHECK(fp.component_count == 1);
  CHECK(fp.per_component[0].abelian.free_rank == 0);
  CHECK(fp.per_component[0].order == 1);

  fp = fingerprint(free_loop_presentation());
  CHECK(fp.component_count == 1);
  CHECK(fp.per_component[0].abelian.free_rank == 1);
  CHECK_FALSE(fp.per_component[0].order.has_value());

  fp = fingerprint(disjoint_union(cyclic_groupoid(2), banal_groupoid(1), "a.", "b."));
  REQUIRE(fp.component_count == 2);
  CHECK(fp.per_component[0].order == 1);
  CHECK(fp.per_component[1].order == 2);
  CHECK(fp.per_component[1].abelian.torsion == std::vector<long long>{2});
}

TEST_CASE("are_equivalent verdicts") {
  CHECK(are_equivalent(banal_groupoid(2), cyclic_groupoid(1)) == Verdict::Yes);
  CHECK(are_equivalent(cyclic_groupoid(2), cyclic_groupoid(1)) == Verdict::No);

  // pi1 of the circle vs the one-object free-rank-1 presentation
  PresentedGroupoid circle;
  for (int i = 0; i < 3; ++i) circle.graph.add_vertex("v" + std::to_string(i));
  circle.graph.add_edge("e0", 0, 1);
  circle.graph.add_edge("e1", 1, 2);
  circle.graph.add_edge("e2", 2, 0);
  CHECK(are_equivalent(circle, free_loop_presentation()) == Verdict::Yes);

  CHECK(are_equivalent(circle, circle) == Verdict::Yes);  // reflexive
}

TEST_CASE("are_equivalent is symmetric on definite verdicts") {
  std::vector<PresentedGroupoid> pool = {free_loop_presentation(), cyclic_presentation(2),
                                         cyclic_presentation(3), trivial_presentation(),
                                         discrete_presentation(2)};
  for (const auto& a : pool)
    for (const auto& b : pool) {
      Verdict ab = are_equivalent(a, b);
      Verdict ba = are_equivalent(b, a);
      if (ab != Verdict::Unknown || ba != Verdict::Unknown) CHECK(ab == ba);
    }
}

TEST_CASE("unknown orders never certify a difference") {
  EquivalenceInvariant known2, unknown, known4;
  known2.component_count = unknown.component_count = known4.component_count = 1;
  ComponentInvariant c;
  c.abelian.free_rank = 0;
  c.abelian.torsion = {2};
  c.order = 2;
  known2.per_component = {c};
  c.order = std::nullopt;
  unknown.per_component = {c};
  c.order = 4;
  known4.per_component = {c};
  CHECK_FALSE(certifies_difference(known2, unknown));
  CHECK_FALSE(certifies_difference(unknown, known2));
  CHECK_FALSE(certifies_difference(unknown, unknown));
  CHECK(certifies_difference(known2, known4));

  // two components, orders must match as a multiset with wildcards
  EquivalenceInvariant a, b;
  a.component_count = b.component_count = 2;
  ComponentInvariant t;
  t.abelian.free_rank = 0;
  t.abelian.torsion = {2};
  t.order = 2;
  ComponentInvariant w = t;
  w.order = std::nullopt;
  ComponentInvariant six = t;
  six.order = 6;
  a.per_component = {t, w};      // {2, ?}
  b.per_component = {six, t};    // {6, 2}
  CHECK_FALSE(certifies_difference(a, b));  // ? can stand for 6
  b.per_component = {six, six};  // {6, 6}
  CHECK(certifies_difference(a, b));        // the known 2 cannot match
}

TEST_CASE("groups_isomorphic distinguishes same-order groups") {
  auto z4 = enumerate_group({{"a"}, {{1, 1, 1, 1}}}, 100000);
  auto klein = enumerate_group({{"a", "b"}, {{1, 1}, {2, 2}, {1, 2, -1, -2}}}, 100000);
  auto z6 = enumerate_group({{"a"}, {{1, 1, 1, 1, 1, 1}}}, 100000);
  auto z2z3 = enumerate_group({{"a", "b"}, {{1, 1}, {2, 2, 2}, {1, 2, -1, -2}}}, 100000);
  auto s3 = enumerate_group({{"a", "b"}, {{1, 1}, {2, 2}, {1, 2, 1, 2, 1, 2}}}, 100000);
  REQUIRE((z4 && klein && z6 && z2z3 && s3));
  CHECK_FALSE(groups_isomorphic(*z4, *klein));
  CHECK(groups_isomorphic(*z6, *z2z3));
  CHECK_FALSE(groups_isomorphic(*s3, *z6));
  CHECK(groups_isomorphic(*s3, *s3));
}

TEST_CASE("functor counts through a concretization match the presentation") {
  // p with finite vertex groups: counts of functors out of the realized
  // groupoid equal counts from relation-checking enumeration on p itself
  PresentedGroupoid p;
  Index u = p.graph.add_vertex("u");
  Index v = p.graph.add_vertex("v");
  Index a = p.graph.add_edge("a", u, u);
  p.graph.add_edge("e", u, v);
  p.relations.push_back({Word{u, {{a, false}, {a, false}}}, Word{u, {}}});
  auto pp = share(std::move(p));
  auto conc = concretize(pp);
  REQUIRE(conc);
  auto realized = share(present(*conc->groupoid));
  for (auto g : {share(cyclic_groupoid(2)), share(cyclic_groupoid(3)),
                 share(banal_groupoid(2))}) {
    HomCategory direct = hom_category(pp, g);
    HomCategory through = hom_category(realized, g);
    CHECK(direct.objects.size() == through.objects.size());
    CHECK(direct.object_components().size() == through.object_components().size());
  }
}

TEST_CASE("fingerprint is invariant under the hom-with-point equivalence") {
  for (ConcreteGroupoid base : {cyclic_groupoid(4), banal_groupoid(3)}) {
    auto g = share(std::move(base));
    FunctorGroupoid fg = functor_groupoid(share(trivial_presentation()), g);
    CHECK(fingerprint(*fg.groupoid) == fingerprint(*g));
    CHECK(are_equivalent(*fg.groupoid, *g) == Verdict::Yes);
  }
}
