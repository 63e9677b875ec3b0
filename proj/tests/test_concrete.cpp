#include <doctest.h>

#include "grpd/concrete.hpp"
#include "grpd/fingerprint.hpp"
#include "helpers.hpp"

using namespace grpd;

namespace {

ConcreteGroupoid one_object_one_morphism() {
  ConcreteGroupoid g;
  Index x = g.add_object("*");
  Index e = g.add_morphism("id", x, x);
  g.set_identity(x, e);
  g.set_inverse(e, e);
  g.set_compose(e, e, e);
  return g;
}

}  // namespace

TEST_CASE("validate accepts the one-object one-morphism groupoid") {
  CHECK(validate(one_object_one_morphism()).ok());
}

TEST_CASE("validate accepts Z/2 and the builders") {
  CHECK(validate(cyclic_groupoid(2)).ok());
  CHECK(validate(cyclic_groupoid(4)).ok());
  CHECK(validate(s3_groupoid()).ok());
  CHECK(validate(banal_groupoid(3)).ok());
  CHECK(validate(disjoint_union(cyclic_groupoid(2), banal_groupoid(2), "l.", "r.")).ok());
}

TEST_CASE("validate flags a broken inverse law in Z/2") {
  ConcreteGroupoid g = cyclic_groupoid(2);
  // compose(a, a) = a breaks a ; a = id
  g.set_compose(1, 1, 1);
  auto rep = validate(g);
  REQUIRE_FALSE(rep.ok());
  bool inverse_flagged = false;
  for (const auto& v : rep.violations)
    if (v.find("inverse law") != std::string::npos) inverse_flagged = true;
  CHECK(inverse_flagged);
}

TEST_CASE("validate detects any single mutated table entry") {
  testutil::Rng rng(20240817);
  ConcreteGroupoid base = s3_groupoid();
  for (int trial = 0; trial < 25; ++trial) {
    ConcreteGroupoid g = base;
    Index f = testutil::pick(rng, 6);
    Index h = testutil::pick(rng, 6);
    Index wrong = (g.compose(f, h) + 1 + testutil::pick(rng, 5)) % 6;
    g.set_compose(f, h, wrong);
    CHECK_FALSE(validate(g).ok());
  }
  // identity and inverse mutations are caught too
  ConcreteGroupoid g1 = s3_groupoid();
  g1.set_identity(0, 1);
  CHECK_FALSE(validate(g1).ok());
  ConcreteGroupoid g2 = s3_groupoid();
  g2.set_inverse(1, 1);  // r^-1 is rr, not r
  CHECK_FALSE(validate(g2).ok());
}

TEST_CASE("simply connected groupoids") {
  CHECK(is_simply_connected(one_object_one_morphism()));
  CHECK(is_simply_connected(banal_groupoid(2)));  // the groupoid "2"
  CHECK_FALSE(is_simply_connected(cyclic_groupoid(2)));
  CHECK(is_simply_connected(ConcreteGroupoid{}));  // empty groupoid, vacuously
}

TEST_CASE("whiskering the identity transformation stays the identity") {
  auto g = share(cyclic_groupoid(2));
  auto two = share(banal_groupoid(2));
  ConcreteFunctor collapse;  // two -> Z/2, constant
  collapse.dom = two;
  collapse.cod = g;
  collapse.object_map = {0, 0};
  collapse.morphism_map = {0, 0, 0, 0};
  REQUIRE(validate(collapse).ok());
  NatIso id = identity_nat(identity_functor(g));
  NatIso whiskered = whisker_pre(id, collapse);
  CHECK(validate(whiskered).ok());
  CHECK(same_nat(whiskered, identity_nat(collapse)));
}

TEST_CASE("vertical composite of tau with its inverse is the identity") {
  auto g = share(cyclic_groupoid(4));
  ConcreteFunctor idf = identity_functor(g);
  NatIso tau;
  tau.source = idf;
  tau.target = idf;
  tau.component = {2};  // conjugation by g2 is trivial in an abelian group
  REQUIRE(validate(tau).ok());
  CHECK(same_nat(nat_compose(tau, nat_inverse(tau)), identity_nat(idf)));
}

TEST_CASE("cocycle identity on a 3-chain of one-object Z/2 groupoids") {
  // All functors are the identity on the one-object Z/2; natural
  // transformations are elements of Z/2 and the cocycle law is addition.
  auto g = share(cyclic_groupoid(2));
  ConcreteFunctor idf = identity_functor(g);
  auto nat = [&](Index c) {
    NatIso a;
    a.source = idf;
    a.target = idf;
    a.component = {c};
    return a;
  };
  for (Index jk = 0; jk < 2; ++jk)
    for (Index ij = 0; ij < 2; ++ij)
      for (Index ik = 0; ik < 2; ++ik) {
        // lambda_ik == compose(whisker_pre(lambda_jk, psi_ij), lambda_ij)
        NatIso rhs = nat_compose(whisker_pre(nat(jk), idf), nat(ij));
        bool holds = same_nat(nat(ik), rhs);
        CHECK(holds == ((jk + ij) % 2 == ik));  // componentwise product oracle
      }
}

TEST_CASE("whisker_post maps components through the outer functor") {
  auto g = share(cyclic_groupoid(2));
  auto d = share(disjoint_union(cyclic_groupoid(2), cyclic_groupoid(2), "l.", "r."));
  ConcreteFunctor inc;  // Z/2 -> left part
  inc.dom = g;
  inc.cod = d;
  inc.object_map = {0};
  inc.morphism_map = {0, 1};
  REQUIRE(validate(inc).ok());
  ConcreteFunctor idf = identity_functor(g);
  NatIso tau;
  tau.source = idf;
  tau.target = idf;
  tau.component = {1};
  NatIso out = whisker_post(inc, tau);
  CHECK(validate(out).ok());
  CHECK(out.component == std::vector<Index>{1});
  CHECK(same_functor(out.source, compose(idf, inc)));
}

TEST_CASE("whiskering and composition reject shape mismatches") {
  auto g = share(cyclic_groupoid(2));
  auto h = share(cyclic_groupoid(3));
  NatIso id2 = identity_nat(identity_functor(g));
  CHECK_THROWS_AS(whisker_pre(id2, identity_functor(h)), std::invalid_argument);
  CHECK_THROWS_AS(whisker_post(identity_functor(h), id2), std::invalid_argument);
  NatIso id3 = identity_nat(identity_functor(h));
  CHECK_THROWS_AS(nat_compose(id2, id3), std::invalid_argument);
  CHECK_THROWS_AS(compose(identity_functor(g), identity_functor(h)),
                  std::invalid_argument);
}

TEST_CASE("the empty groupoid is a valid value") {
  ConcreteGroupoid empty;
  CHECK(validate(empty).ok());
  CHECK(fingerprint(empty).component_count == 0);
}

TEST_CASE("components of a disjoint union") {
  ConcreteGroupoid g = disjoint_union(banal_groupoid(2), cyclic_groupoid(3), "a.", "b.");
  auto comps = g.components();
  REQUIRE(comps.size() == 2);
  CHECK(comps[0].size() == 2);
  CHECK(comps[1].size() == 1);
}
