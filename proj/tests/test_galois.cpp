#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "helpers.hpp"
#include "qcov/galois.hpp"
#include "qcov/krullschmidt.hpp"
#include "qcov/transport.hpp"

using namespace qcov;
using namespace qcov::testing;

TEST_CASE("group table validation") {
  CHECK_NOTHROW(c2_group());
  CHECK_NOTHROW(FiniteGroup({"e", "a", "b"}, {{0, 1, 2}, {1, 2, 0}, {2, 0, 1}}));  // C3
  // no identity
  CHECK_THROWS_AS(FiniteGroup({"x", "y"}, {{0, 0}, {0, 0}}), Error);
  // not associative: a*a = e, but table forced otherwise
  CHECK_THROWS_AS(FiniteGroup({"e", "a", "b"}, {{0, 1, 2}, {1, 0, 0}, {2, 0, 1}}), Error);
}

TEST_CASE("action checks: free, non-free, non-homomorphism") {
  FiniteGroup c2 = c2_group();
  BoundCategory a = example_a_A();
  GroupAction action = example_a_action(c2, a);
  ActionReport rep = check_action(action);
  CHECK(rep.ok);
  CHECK(rep.homomorphism);
  CHECK(rep.free);

  // trivial group acts freely, vacuously
  FiniteGroup triv = trivial_group();
  GroupAction ta;
  ta.group = &triv;
  ta.cat = &a;
  ta.functors.push_back(identity_functor(a));
  CHECK(check_action(ta).ok);

  // C2 acting identically is not free
  GroupAction bad;
  bad.group = &c2;
  bad.cat = &a;
  bad.functors.push_back(identity_functor(a));
  bad.functors.push_back(identity_functor(a));
  ActionReport brep = check_action(bad);
  CHECK_FALSE(brep.ok);
  CHECK(brep.witness.find("fixes object") != std::string::npos);
}

TEST_CASE("quotient by the trivial group is isomorphic to the category") {
  FiniteGroup triv = trivial_group();
  BoundCategory a = example_c_A();
  GroupAction ta;
  ta.group = &triv;
  ta.cat = &a;
  ta.functors.push_back(identity_functor(a));
  Quotient q = galois_quotient(a, ta);
  CHECK(q.cat->object_count() == a.object_count());
  IsoSearchOutcome iso = find_category_isomorphism(a, *q.cat);
  CHECK(iso.found);
}

TEST_CASE("quotient of the A2 double cover is A2") {
  FiniteGroup c2 = c2_group();
  BoundCategory d = a2_double();
  GroupAction action = a2_double_action(c2, d);
  Quotient q = galois_quotient(d, action);
  CHECK(q.cat->object_count() == 2);
  CoveringOutcome cov = check_covering(*q.projection);
  REQUIRE(cov.ok());
  CHECK(check_balanced(*cov.certificate).balanced);
  OrderOutcome ord = covering_order(*cov.certificate);
  CHECK(ord.order == 2);

  BoundCategory a2 = a2_category();
  IsoSearchOutcome iso = find_category_isomorphism(a2, *q.cat);
  CHECK(iso.found);
}

TEST_CASE("example (a): the quotient is isomorphic to B and the projection is a balanced covering") {
  FiniteGroup c2 = c2_group();
  BoundCategory a = example_a_A();
  GroupAction action = example_a_action(c2, a);
  Quotient q = galois_quotient(a, action);
  CHECK(q.cat->object_count() == 3);

  CoveringOutcome cov = check_covering(*q.projection);
  REQUIRE(cov.ok());
  CHECK(check_balanced(*cov.certificate).balanced);
  OrderOutcome ord = covering_order(*cov.certificate);
  CHECK(ord.base_connected);
  CHECK(ord.order == 2);
  CHECK(ord.bookkeeping_ok);  // 2 * 3 = 6

  BoundCategory b = example_a_B();
  IsoSearchOutcome iso = find_category_isomorphism(b, *q.cat);
  REQUIRE(iso.found);
  CHECK(is_category_isomorphism(*iso.functor));
}

TEST_CASE("quotient projection is a functor on random composable pairs") {
  FiniteGroup c2 = c2_group();
  BoundCategory a = example_a_A();
  GroupAction action = example_a_action(c2, a);
  Quotient q = galois_quotient(a, action);
  std::mt19937_64 rng(5);
  std::uniform_int_distribution<std::size_t> any(0, a.object_count() - 1);
  std::uniform_int_distribution<fp_t> coeff(0, a.field().p() - 1);
  int tried = 0;
  for (int iter = 0; iter < 3000 && tried < 120; ++iter) {
    std::size_t x = any(rng), y = any(rng), z = any(rng);
    if (a.hom_dim(x, y) == 0 || a.hom_dim(y, z) == 0) continue;
    ++tried;
    Vec f(a.hom_dim(x, y)), g(a.hom_dim(y, z));
    for (auto& v : f) v = coeff(rng);
    for (auto& v : g) v = coeff(rng);
    Vec lhs = q.projection->apply(x, z, a.compose(x, y, z, g, f));
    Vec rhs = q.cat->compose(q.orbit_of[x], q.orbit_of[y], q.orbit_of[z],
                             q.projection->apply(y, z, g), q.projection->apply(x, y, f));
    CHECK(lhs == rhs);
  }
  CHECK(tried > 0);
}

TEST_CASE("gradings: homogeneity and components") {
  FiniteGroup c2 = c2_group();
  BoundCategory b = example_c_B();
  const Quiver& q = b.quiver();
  Grading split{&b, &c2, {}};
  split.degree.assign(q.arrow_count(), 0);
  split.degree[q.arrow_id("beta")] = 1;
  CHECK(check_grading(split).ok);
  std::size_t va = b.object_id("a"), vb = b.object_id("b");
  CHECK(graded_component(split, va, vb, 0) == std::vector<std::size_t>{0});  // alpha
  CHECK(graded_component(split, va, vb, 1) == std::vector<std::size_t>{1});  // beta
  CHECK(graded_component(split, va, va, 0).size() == 1);                     // identity
  CHECK(graded_component(split, va, va, 1).empty());

  // trivial grading puts everything in the identity degree
  Grading triv{&b, &c2, std::vector<std::size_t>(q.arrow_count(), 0)};
  CHECK(graded_component(triv, va, vb, 0).size() == 2);

  // a commutativity relation with mismatched degrees is rejected
  BoundCategory aB = example_a_B();
  Grading bad{&aB, &c2, std::vector<std::size_t>(aB.quiver().arrow_count(), 0)};
  bad.degree[aB.quiver().arrow_id("alpha0")] = 1;  // alpha1 alpha0 vs beta1 beta0 now mismatch
  GradingReport rep = check_grading(bad);
  CHECK_FALSE(rep.ok);
  CHECK(rep.witness.find("not homogeneous") != std::string::npos);
}

TEST_CASE("smash product with the trivial group recovers the category") {
  FiniteGroup triv = trivial_group();
  BoundCategory b = example_c_B();
  Grading g{&b, &triv, std::vector<std::size_t>(b.quiver().arrow_count(), 0)};
  SmashCategory smash = smash_product(b, g);
  CHECK(smash.cat->object_count() == b.object_count());
  CHECK(smash.hom_dims_match_components);
  IsoSearchOutcome iso = find_category_isomorphism(b, *smash.cat);
  CHECK(iso.found);
}

TEST_CASE("smash product of the split-graded Kronecker category is schurian") {
  FiniteGroup c2 = c2_group();
  BoundCategory b = example_c_B();
  const Quiver& q = b.quiver();
  Grading g{&b, &c2, std::vector<std::size_t>(q.arrow_count(), 0)};
  g.degree[q.arrow_id("beta")] = 1;
  SmashCategory smash = smash_product(b, g);
  CHECK(smash.cat->object_count() == 4);
  CHECK(smash.hom_dims_match_components);
  CHECK(is_schurian(*smash.cat));
  // each (a,x) has exactly one arrow per degree
  for (std::size_t x = 0; x < 2; ++x) {
    std::size_t v = smash.vertex_of[b.object_id("a")][x];
    CHECK(smash.cat->quiver().out_arrows(static_cast<std::uint32_t>(v)).size() == 2);
  }
  // the canonical action is free and the quotient is B again
  CHECK(check_action(*smash.action).ok);
  Quotient q2 = galois_quotient(*smash.cat, *smash.action);
  ComparisonOutcome cmp = smash_quotient_comparison(b, smash, q2);
  CHECK(cmp.isomorphism);
}

TEST_CASE("smash functor: identity, balanced and non-balanced instances") {
  FiniteGroup c2 = c2_group();

  // identity functor with any grading gives the identity on the smash
  BoundCategory b = example_c_B();
  Grading gb{&b, &c2, std::vector<std::size_t>(b.quiver().arrow_count(), 0)};
  gb.degree[b.quiver().arrow_id("beta")] = 1;
  SmashCategory smash_b = smash_product(b, gb);
  LinearFunctor id = identity_functor(b);
  SmashFunctorOutcome ido = smash_functor(id, gb, gb, smash_b, smash_b);
  REQUIRE(ido.functor.has_value());
  CHECK(ido.compatible);
  CHECK(ido.square_commutes);
  CHECK(is_category_isomorphism(*ido.functor));

  // Example (b): balanced F with diagonal-compatible gradings
  BoundCategory bA = example_b_A(), bB = example_b_B();
  LinearFunctor f = example_b_F(bA, bB);
  Grading gB{&bB, &c2, std::vector<std::size_t>(bB.quiver().arrow_count(), 0)};
  gB.degree[bB.quiver().arrow_id("alpha")] = 1;
  gB.degree[bB.quiver().arrow_id("beta")] = 1;
  Grading gA{&bA, &c2, std::vector<std::size_t>(bA.quiver().arrow_count(), 0)};
  for (const char* n : {"alpha1", "alpha2", "beta1", "beta2"})
    gA.degree[bA.quiver().arrow_id(n)] = 1;
  SmashCategory smash_bA = smash_product(bA, gA);
  SmashCategory smash_bB = smash_product(bB, gB);
  SmashFunctorOutcome fo = smash_functor(f, gA, gB, smash_bA, smash_bB);
  REQUIRE(fo.functor.has_value());
  CHECK(fo.compatible);
  CHECK(fo.square_commutes);
  CoveringOutcome cov = check_covering(*fo.functor);
  REQUIRE(cov.ok());
  CHECK(check_balanced(*cov.certificate).balanced);
  // biconditional: F balanced <=> F#G balanced
  CoveringOutcome covf = check_covering(f);
  CHECK(check_balanced(*covf.certificate).balanced == check_balanced(*cov.certificate).balanced);

  // Example (c): non-balanced F, diagonal gradings
  BoundCategory cA = example_c_A(), cB = example_c_B();
  LinearFunctor fc = example_c_F(cA, cB);
  Grading gcB{&cB, &c2, std::vector<std::size_t>(cB.quiver().arrow_count(), 1)};
  Grading gcA{&cA, &c2, std::vector<std::size_t>(cA.quiver().arrow_count(), 1)};
  SmashCategory smash_cA = smash_product(cA, gcA);
  SmashCategory smash_cB = smash_product(cB, gcB);
  SmashFunctorOutcome fco = smash_functor(fc, gcA, gcB, smash_cA, smash_cB);
  REQUIRE(fco.functor.has_value());
  CHECK(fco.square_commutes);
  CoveringOutcome covc = check_covering(*fco.functor);
  REQUIRE(covc.ok());
  CHECK_FALSE(check_balanced(*covc.certificate).balanced);
  CoveringOutcome covfc = check_covering(fc);
  CHECK(check_balanced(*covfc.certificate).balanced == check_balanced(*covc.certificate).balanced);

  // incompatible grading: image of beta2 = alpha + beta mixes degrees
  Grading gmix{&cB, &c2, std::vector<std::size_t>(cB.quiver().arrow_count(), 0)};
  gmix.degree[cB.quiver().arrow_id("beta")] = 1;
  SmashCategory smash_mix = smash_product(cB, gmix);
  Grading gany{&cA, &c2, std::vector<std::size_t>(cA.quiver().arrow_count(), 0)};
  SmashCategory smash_any = smash_product(cA, gany);
  SmashFunctorOutcome bad = smash_functor(fc, gany, gmix, smash_any, smash_mix);
  CHECK_FALSE(bad.compatible);
  CHECK(bad.witness.find("beta2") != std::string::npos);
}

TEST_CASE("induced grading over schurian targets (Prop 2.3(ii) style)") {
  FiniteGroup c2 = c2_group();

  // trivial grading induces the trivial grading
  BoundCategory d = a2_double(), b = a2_category();
  InducedOutcome ind = induced_functor(d, b, a2_double_map(d, b));
  CoveringCertificate cert = *check_covering(*ind.functor).certificate;
  Grading triv{&b, &c2, std::vector<std::size_t>(b.quiver().arrow_count(), 0)};
  InducedGradingOutcome got = induce_grading_schurian(cert, triv);
  REQUIRE(got.grading.has_value());
  CHECK(got.compatible);
  CHECK(got.grading->degree == std::vector<std::size_t>(d.quiver().arrow_count(), 0));

  // deg(d) = s lifts to both arrows upstairs
  Grading s{&b, &c2, std::vector<std::size_t>{1}};
  InducedGradingOutcome got2 = induce_grading_schurian(cert, s);
  REQUIRE(got2.grading.has_value());
  CHECK(got2.grading->degree == std::vector<std::size_t>{1, 1});

  // the cycle double cover
  BoundCategory c4 = cycle4(), c2c = cycle2();
  InducedOutcome indc = induced_functor(c4, c2c, cycle_map(c4, c2c));
  CoveringCertificate certc = *check_covering(*indc.functor).certificate;
  Grading gc{&c2c, &c2, std::vector<std::size_t>{1, 0}};
  InducedGradingOutcome gotc = induce_grading_schurian(certc, gc);
  REQUIRE(gotc.grading.has_value());
  CHECK(check_grading(*gotc.grading).ok);
  // eps0, eps2 cover delta0 (degree s); eps1, eps3 cover delta1 (degree e)
  CHECK(gotc.grading->degree == std::vector<std::size_t>{1, 0, 1, 0});

  // non-schurian target is rejected
  BoundCategory cB = example_c_B();
  BoundCategory cA = example_c_A();
  LinearFunctor fc = example_c_F(cA, cB);
  CoveringCertificate certk = *check_covering(fc).certificate;
  Grading gk{&cB, &c2, std::vector<std::size_t>(cB.quiver().arrow_count(), 0)};
  InducedGradingOutcome bad = induce_grading_schurian(certk, gk);
  CHECK_FALSE(bad.grading.has_value());
  CHECK(bad.witness.find("schurian") != std::string::npos);
}

TEST_CASE("tower construction round-trips on the smash of the split grading") {
  FiniteGroup c2 = c2_group();
  BoundCategory b = example_c_B();
  const Quiver& q = b.quiver();
  Grading g{&b, &c2, std::vector<std::size_t>(q.arrow_count(), 0)};
  g.degree[q.arrow_id("beta")] = 1;
  SmashCategory smash = smash_product(b, g);
  REQUIRE(is_schurian(*smash.cat));

  // F = identity on B via the identity quiver map; F' = canonical projection
  std::vector<std::size_t> vid(q.vertex_count()), aid(q.arrow_count());
  for (std::size_t i = 0; i < vid.size(); ++i) vid[i] = i;
  for (std::size_t i = 0; i < aid.size(); ++i) aid[i] = i;
  QuiverMap idmap = make_quiver_map(q, q, vid, aid);

  // quiver map underlying the canonical projection B#G -> B
  const Quiver& qs = smash.cat->quiver();
  std::vector<std::size_t> pv(qs.vertex_count()), pa(qs.arrow_count());
  for (std::uint32_t i = 0; i < q.vertex_count(); ++i)
    for (std::size_t x = 0; x < 2; ++x) pv[smash.vertex_of[i][x]] = i;
  for (std::uint32_t a = 0; a < q.arrow_count(); ++a)
    for (std::size_t x = 0; x < 2; ++x) pa[smash.arrow_of[a][x]] = a;
  QuiverMap proj_map = make_quiver_map(qs, q, pv, pa);

  TowerOutcome tower =
      grading_from_schurian_galois(b, b, *smash.cat, idmap, proj_map, *smash.action);
  REQUIRE(tower.grading_a.has_value());
  CHECK(tower.square_commutes);
  CHECK(tower.grading_a->degree == g.degree);  // recovered grading equals the input
  CHECK(tower.grading_b->degree == g.degree);
  CHECK(check_functor(*tower.comparison).ok);
  // the comparison A#G -> B' is an isomorphism here
  CHECK(is_category_isomorphism(*tower.comparison));
  CHECK(tower.representative_note.find("->") != std::string::npos);
}

TEST_CASE("tower on the A2 double cover matches hand lifting") {
  FiniteGroup c2 = c2_group();
  BoundCategory b = a2_category();
  BoundCategory d = a2_double();
  GroupAction action = a2_double_action(c2, d);

  std::vector<std::size_t> vid(b.quiver().vertex_count()), aid(b.quiver().arrow_count());
  for (std::size_t i = 0; i < vid.size(); ++i) vid[i] = i;
  for (std::size_t i = 0; i < aid.size(); ++i) aid[i] = i;
  QuiverMap idmap = make_quiver_map(b.quiver(), b.quiver(), vid, aid);
  QuiverMap dmap = a2_double_map(d, b);

  TowerOutcome tower = grading_from_schurian_galois(b, b, d, idmap, dmap, action);
  REQUIRE(tower.grading_a.has_value());
  CHECK(tower.square_commutes);
  // chosen lift of u is u1; the arrow d lifts to d1: u1 -> v1 = e . v1, so deg = e
  CHECK(tower.grading_a->degree == std::vector<std::size_t>{0});
}
