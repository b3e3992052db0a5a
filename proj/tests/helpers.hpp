#pragma once

// Programmatic builders for the worked examples used across the test suites.
// The JSON corpus bundles the same data; test_io cross-checks the two.

#include <vector>

#include "qcov/category.hpp"
#include "qcov/functor.hpp"
#include "qcov/galois.hpp"

namespace qcov::testing {

// Relation u = v given as two parallel paths (coefficients 1 and -1).
inline PathCombo equal_paths(const PrimeField& F, const Quiver& q,
                             const std::vector<std::string>& lhs,
                             const std::vector<std::string>& rhs) {
  PathCombo c;
  Path p1, p2;
  p1.source = q.arrow(q.arrow_id(lhs[0])).source;
  for (const auto& n : lhs) p1.arrows.push_back(q.arrow_id(n));
  p2.source = q.arrow(q.arrow_id(rhs[0])).source;
  for (const auto& n : rhs) p2.arrows.push_back(q.arrow_id(n));
  c.terms.push_back(PathTerm{1, p1});
  c.terms.push_back(PathTerm{F.reduce(-1), p2});
  return c;
}

inline Path make_path(const Quiver& q, const std::vector<std::string>& arrows) {
  Path p;
  p.source = q.arrow(q.arrow_id(arrows[0])).source;
  for (const auto& n : arrows) p.arrows.push_back(q.arrow_id(n));
  return p;
}

// One vertex, one loop rho, relation rho^2, bound n.
inline BoundCategory loop_algebra(fp_t p, std::uint32_t n, bool with_square_relation) {
  PrimeField F(p);
  Quiver q;
  q.add_vertex("v");
  q.add_arrow("rho", "v", "v");
  std::vector<PathCombo> rels;
  if (with_square_relation) {
    PathCombo c;
    c.terms.push_back(PathTerm{1, make_path(q, {"rho", "rho"})});
    rels.push_back(c);
  }
  return BoundCategory::build(F, std::move(q), std::move(rels), n);
}

// Example (a) of the corpus: two commuting 3x2 grids over the 2x(-> ->)
// double-arrow strip. Vertices t0,t1,t2 (top) and b0,b1,b2 (bottom).
inline BoundCategory example_a_A(fp_t p = 32003) {
  PrimeField F(p);
  Quiver q;
  for (const char* v : {"t0", "t1", "t2", "b0", "b1", "b2"}) q.add_vertex(v);
  q.add_arrow("rho0", "t0", "t1");
  q.add_arrow("rho1", "t1", "t2");
  q.add_arrow("gamma0", "t0", "b1");
  q.add_arrow("gamma1", "t1", "b2");
  q.add_arrow("sigma0", "b0", "b1");
  q.add_arrow("sigma1", "b1", "b2");
  q.add_arrow("nu0", "b0", "t1");
  q.add_arrow("nu1", "b1", "t2");
  std::vector<PathCombo> rels;
  rels.push_back(equal_paths(F, q, {"rho0", "rho1"}, {"gamma0", "nu1"}));
  rels.push_back(equal_paths(F, q, {"sigma0", "sigma1"}, {"nu0", "gamma1"}));
  rels.push_back(equal_paths(F, q, {"nu0", "rho1"}, {"sigma0", "nu1"}));
  rels.push_back(equal_paths(F, q, {"gamma0", "sigma1"}, {"rho0", "gamma1"}));
  return BoundCategory::build(F, std::move(q), std::move(rels), 3);
}

// Example (a) target: v0 => v1 => v2 with the two commutativity relations.
inline BoundCategory example_a_B(fp_t p = 32003) {
  PrimeField F(p);
  Quiver q;
  for (const char* v : {"v0", "v1", "v2"}) q.add_vertex(v);
  q.add_arrow("alpha0", "v0", "v1");
  q.add_arrow("beta0", "v0", "v1");
  q.add_arrow("alpha1", "v1", "v2");
  q.add_arrow("beta1", "v1", "v2");
  std::vector<PathCombo> rels;
  rels.push_back(equal_paths(F, q, {"alpha0", "alpha1"}, {"beta0", "beta1"}));
  rels.push_back(equal_paths(F, q, {"alpha0", "beta1"}, {"beta0", "alpha1"}));
  return BoundCategory::build(F, std::move(q), std::move(rels), 3);
}

// Example (b) source: a2 => b2 <-> b1 <= a1, rad^2 = 0.
inline BoundCategory example_b_A(fp_t p = 32003) {
  PrimeField F(p);
  Quiver q;
  for (const char* v : {"a2", "b2", "b1", "a1"}) q.add_vertex(v);
  q.add_arrow("alpha2", "a2", "b2");
  q.add_arrow("beta2", "a2", "b2");
  q.add_arrow("rho2", "b2", "b1");
  q.add_arrow("rho1", "b1", "b2");
  q.add_arrow("alpha1", "a1", "b1");
  q.add_arrow("beta1", "a1", "b1");
  return BoundCategory::build(F, std::move(q), {}, 2);
}

// Example (b) target: a => b with a loop rho at b, rad^2 = 0.
inline BoundCategory example_b_B(fp_t p = 32003) {
  PrimeField F(p);
  Quiver q;
  q.add_vertex("a");
  q.add_vertex("b");
  q.add_arrow("alpha", "a", "b");
  q.add_arrow("beta", "a", "b");
  q.add_arrow("rho", "b", "b");
  return BoundCategory::build(F, std::move(q), {}, 2);
}

// Example (c) source: the 4-vertex bipartite quiver.
inline BoundCategory example_c_A(fp_t p = 32003) {
  PrimeField F(p);
  Quiver q;
  for (const char* v : {"a2", "a1", "b1", "b2"}) q.add_vertex(v);
  q.add_arrow("beta2", "a2", "b1");
  q.add_arrow("alpha2", "a2", "b2");
  q.add_arrow("alpha1", "a1", "b1");
  q.add_arrow("beta1", "a1", "b2");
  return BoundCategory::build(F, std::move(q), {}, 2);
}

// Example (c) target: the Kronecker quiver a => b.
inline BoundCategory example_c_B(fp_t p = 32003) {
  PrimeField F(p);
  Quiver q;
  q.add_vertex("a");
  q.add_vertex("b");
  q.add_arrow("alpha", "a", "b");
  q.add_arrow("beta", "a", "b");
  return BoundCategory::build(F, std::move(q), {}, 2);
}

// Linear A2 quiver u -> v.
inline BoundCategory a2_category(fp_t p = 32003) {
  PrimeField F(p);
  Quiver q;
  q.add_vertex("u");
  q.add_vertex("v");
  q.add_arrow("d", "u", "v");
  return BoundCategory::build(F, std::move(q), {}, 2);
}

// Disjoint double cover of A2.
inline BoundCategory a2_double(fp_t p = 32003) {
  PrimeField F(p);
  Quiver q;
  for (const char* v : {"u1", "v1", "u2", "v2"}) q.add_vertex(v);
  q.add_arrow("d1", "u1", "v1");
  q.add_arrow("d2", "u2", "v2");
  return BoundCategory::build(F, std::move(q), {}, 2);
}

// Oriented 2-cycle v0 -> v1 -> v0 with rad^2 = 0 (connected and schurian).
inline BoundCategory cycle2(fp_t p = 32003) {
  PrimeField F(p);
  Quiver q;
  q.add_vertex("v0");
  q.add_vertex("v1");
  q.add_arrow("delta0", "v0", "v1");
  q.add_arrow("delta1", "v1", "v0");
  return BoundCategory::build(F, std::move(q), {}, 2);
}

// Oriented 4-cycle, the double cover of cycle2.
inline BoundCategory cycle4(fp_t p = 32003) {
  PrimeField F(p);
  Quiver q;
  for (const char* v : {"w0", "w1", "w2", "w3"}) q.add_vertex(v);
  q.add_arrow("eps0", "w0", "w1");
  q.add_arrow("eps1", "w1", "w2");
  q.add_arrow("eps2", "w2", "w3");
  q.add_arrow("eps3", "w3", "w0");
  return BoundCategory::build(F, std::move(q), {}, 2);
}

// The functor of Example (b): F(alpha1) = alpha, F(alpha2) = alpha + beta,
// F(beta_i) = beta, F(rho_i) = rho.
inline LinearFunctor example_b_F(const BoundCategory& a, const BoundCategory& b) {
  const Quiver& qa = a.quiver();
  const Quiver& qb = b.quiver();
  std::vector<std::size_t> obj(a.object_count());
  obj[a.object_id("a2")] = b.object_id("a");
  obj[a.object_id("b2")] = b.object_id("b");
  obj[a.object_id("b1")] = b.object_id("b");
  obj[a.object_id("a1")] = b.object_id("a");
  auto cls = [&](const char* n) { return b.class_of_arrow(qb.arrow_id(n)).coords; };
  Vec alpha = cls("alpha"), beta = cls("beta"), rho = cls("rho");
  Vec alpha_plus_beta = vec_add(b.field(), alpha, beta);
  std::vector<Vec> img(qa.arrow_count());
  img[qa.arrow_id("alpha1")] = alpha;
  img[qa.arrow_id("alpha2")] = alpha_plus_beta;
  img[qa.arrow_id("beta1")] = beta;
  img[qa.arrow_id("beta2")] = beta;
  img[qa.arrow_id("rho1")] = rho;
  img[qa.arrow_id("rho2")] = rho;
  return LinearFunctor(a, b, std::move(obj), std::move(img));
}

// The functor of Example (c): F(alpha_i) = alpha, F(beta1) = beta,
// F(beta2) = alpha + beta.
inline LinearFunctor example_c_F(const BoundCategory& a, const BoundCategory& b) {
  const Quiver& qa = a.quiver();
  const Quiver& qb = b.quiver();
  std::vector<std::size_t> obj(a.object_count());
  obj[a.object_id("a1")] = b.object_id("a");
  obj[a.object_id("a2")] = b.object_id("a");
  obj[a.object_id("b1")] = b.object_id("b");
  obj[a.object_id("b2")] = b.object_id("b");
  auto cls = [&](const char* n) { return b.class_of_arrow(qb.arrow_id(n)).coords; };
  Vec alpha = cls("alpha"), beta = cls("beta");
  std::vector<Vec> img(qa.arrow_count());
  img[qa.arrow_id("alpha1")] = alpha;
  img[qa.arrow_id("alpha2")] = alpha;
  img[qa.arrow_id("beta1")] = beta;
  img[qa.arrow_id("beta2")] = vec_add(b.field(), alpha, beta);
  return LinearFunctor(a, b, std::move(obj), std::move(img));
}

// Quiver map for the disjoint double cover of A2.
inline QuiverMap a2_double_map(const BoundCategory& a, const BoundCategory& b) {
  const Quiver& qa = a.quiver();
  const Quiver& qb = b.quiver();
  std::vector<std::size_t> vm(qa.vertex_count()), am(qa.arrow_count());
  vm[qa.vertex_id("u1")] = qb.vertex_id("u");
  vm[qa.vertex_id("u2")] = qb.vertex_id("u");
  vm[qa.vertex_id("v1")] = qb.vertex_id("v");
  vm[qa.vertex_id("v2")] = qb.vertex_id("v");
  am[qa.arrow_id("d1")] = qb.arrow_id("d");
  am[qa.arrow_id("d2")] = qb.arrow_id("d");
  return make_quiver_map(qa, qb, std::move(vm), std::move(am));
}

// Quiver map underlying the Example (a) quotient: rows collapse onto the strip.
inline QuiverMap example_a_map(const BoundCategory& a, const BoundCategory& b) {
  const Quiver& qa = a.quiver();
  const Quiver& qb = b.quiver();
  std::vector<std::size_t> vm(qa.vertex_count()), am(qa.arrow_count());
  for (int i = 0; i < 3; ++i) {
    std::string idx = std::to_string(i);
    vm[qa.vertex_id("t" + idx)] = qb.vertex_id("v" + idx);
    vm[qa.vertex_id("b" + idx)] = qb.vertex_id("v" + idx);
  }
  for (int i = 0; i < 2; ++i) {
    std::string idx = std::to_string(i);
    am[qa.arrow_id("rho" + idx)] = qb.arrow_id("alpha" + idx);
    am[qa.arrow_id("sigma" + idx)] = qb.arrow_id("alpha" + idx);
    am[qa.arrow_id("gamma" + idx)] = qb.arrow_id("beta" + idx);
    am[qa.arrow_id("nu" + idx)] = qb.arrow_id("beta" + idx);
  }
  return make_quiver_map(qa, qb, std::move(vm), std::move(am));
}

inline FiniteGroup c2_group() {
  return FiniteGroup({"e", "s"}, {{0, 1}, {1, 0}});
}

inline FiniteGroup trivial_group() { return FiniteGroup({"e"}, {{0}}); }

// The C2 action on Example (a)'s grid swapping the two rows.
inline GroupAction example_a_action(const FiniteGroup& g, const BoundCategory& a) {
  const Quiver& q = a.quiver();
  std::vector<std::size_t> obj(a.object_count());
  for (int i = 0; i < 3; ++i) {
    std::string idx = std::to_string(i);
    obj[a.object_id("t" + idx)] = a.object_id("b" + idx);
    obj[a.object_id("b" + idx)] = a.object_id("t" + idx);
  }
  auto cls = [&](const std::string& n) { return a.class_of_arrow(q.arrow_id(n)).coords; };
  std::vector<Vec> img(q.arrow_count());
  for (int i = 0; i < 2; ++i) {
    std::string idx = std::to_string(i);
    img[q.arrow_id("rho" + idx)] = cls("sigma" + idx);
    img[q.arrow_id("sigma" + idx)] = cls("rho" + idx);
    img[q.arrow_id("gamma" + idx)] = cls("nu" + idx);
    img[q.arrow_id("nu" + idx)] = cls("gamma" + idx);
  }
  GroupAction action;
  action.group = &g;
  action.cat = &a;
  action.functors.push_back(identity_functor(a));
  action.functors.emplace_back(a, a, std::move(obj), std::move(img));
  return action;
}

// The swap action on the disjoint double cover of A2.
inline GroupAction a2_double_action(const FiniteGroup& g, const BoundCategory& d) {
  const Quiver& q = d.quiver();
  std::vector<std::size_t> obj(d.object_count());
  obj[d.object_id("u1")] = d.object_id("u2");
  obj[d.object_id("u2")] = d.object_id("u1");
  obj[d.object_id("v1")] = d.object_id("v2");
  obj[d.object_id("v2")] = d.object_id("v1");
  std::vector<Vec> img(q.arrow_count());
  img[q.arrow_id("d1")] = d.class_of_arrow(q.arrow_id("d2")).coords;
  img[q.arrow_id("d2")] = d.class_of_arrow(q.arrow_id("d1")).coords;
  GroupAction action;
  action.group = &g;
  action.cat = &d;
  action.functors.push_back(identity_functor(d));
  action.functors.emplace_back(d, d, std::move(obj), std::move(img));
  return action;
}

// Quiver map for the schurian double cover cycle4 -> cycle2.
inline QuiverMap cycle_map(const BoundCategory& a, const BoundCategory& b) {
  const Quiver& qa = a.quiver();
  const Quiver& qb = b.quiver();
  std::vector<std::size_t> vm(qa.vertex_count()), am(qa.arrow_count());
  for (int i = 0; i < 4; ++i) {
    vm[qa.vertex_id("w" + std::to_string(i))] = qb.vertex_id("v" + std::to_string(i % 2));
    am[qa.arrow_id("eps" + std::to_string(i))] = qb.arrow_id("delta" + std::to_string(i % 2));
  }
  return make_quiver_map(qa, qb, std::move(vm), std::move(am));
}

}  // namespace qcov::testing
