#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "helpers.hpp"
#include "qcov/representation.hpp"

using namespace qcov;
using namespace qcov::testing;

namespace {

// The paper's X over Example (c): X(a2) = X(b2) = k, X(alpha2) = id.
Representation example_c_X(const BoundCategory& cA) {
  const Quiver& q = cA.quiver();
  std::vector<std::size_t> dims(cA.object_count(), 0);
  dims[cA.object_id("a2")] = 1;
  dims[cA.object_id("b2")] = 1;
  std::vector<Mat> mats(q.arrow_count());
  for (std::uint32_t a = 0; a < q.arrow_count(); ++a)
    mats[a] = Mat(dims[q.arrow(a).target], dims[q.arrow(a).source]);
  mats[q.arrow_id("alpha2")] = Mat::identity(1);
  return Representation::from_arrow_matrices(cA, dims, std::move(mats));
}

}  // namespace

TEST_CASE("identity acts as identity; evaluate follows paths") {
  BoundCategory cA = example_c_A();
  Representation x = example_c_X(cA);
  std::size_t a2 = cA.object_id("a2");
  CHECK(x.evaluate(a2, a2, cA.identity_coords(a2)) == Mat::identity(1));
  // evaluate on beta2: a2 -> b1 lands in the 0 space
  std::size_t b1 = cA.object_id("b1");
  Vec beta2 = cA.class_of_arrow(cA.quiver().arrow_id("beta2")).coords;
  Mat m = x.evaluate(a2, b1, beta2);
  CHECK(m.rows() == 0);
  CHECK(m.cols() == 1);
}

TEST_CASE("loop representation: nilpotent Jordan block squares correctly") {
  BoundCategory loop = loop_algebra(7, 3, false);
  Mat j(3, 3);
  j(1, 0) = 1;
  j(2, 1) = 1;
  Representation x = Representation::from_arrow_matrices(loop, {3}, {j});
  Path rho2{0, {0, 0}};
  Mat sq = x.evaluate(0, 0, loop.reduce_path(rho2));
  Mat expect(3, 3);
  expect(2, 0) = 1;
  CHECK(sq == expect);
  // a non-nilpotent matrix violates the truncation
  CHECK_THROWS_AS(Representation::from_arrow_matrices(loop, {3}, {Mat::identity(3)}), Error);
}

TEST_CASE("relations are enforced at load") {
  BoundCategory aA = example_a_A();
  const Quiver& q = aA.quiver();
  std::vector<std::size_t> dims(aA.object_count(), 1);
  std::vector<Mat> mats(q.arrow_count(), Mat::identity(1));
  // rho1 rho0 = nu1 gamma0 becomes 1 = 1: fine for all-identity matrices
  Representation ok = Representation::from_arrow_matrices(aA, dims, mats);
  CHECK(ok.total_dim() == 6);
  // breaking one relation: scale gamma0 by 2
  mats[q.arrow_id("gamma0")] = mat_scale(aA.field(), 2, Mat::identity(1));
  CHECK_THROWS_AS(Representation::from_arrow_matrices(aA, dims, mats), Error);
}

TEST_CASE("evaluate is multiplicative on random composable basis pairs") {
  std::mt19937_64 rng(3);
  BoundCategory aA = example_a_A();
  std::vector<std::size_t> dims(aA.object_count(), 1);
  std::vector<Mat> mats(aA.quiver().arrow_count(), Mat::identity(1));
  Representation x = Representation::from_arrow_matrices(aA, dims, mats);
  std::size_t n = aA.object_count();
  const PrimeField& F = aA.field();
  std::uniform_int_distribution<std::size_t> any(0, n - 1);
  std::uniform_int_distribution<fp_t> coeff(0, F.p() - 1);
  int tried = 0;
  for (int iter = 0; iter < 2000 && tried < 100; ++iter) {
    std::size_t a = any(rng), b = any(rng), c = any(rng);
    if (aA.hom_dim(a, b) == 0 || aA.hom_dim(b, c) == 0) continue;
    ++tried;
    Vec f(aA.hom_dim(a, b)), g(aA.hom_dim(b, c));
    for (auto& v : f) v = coeff(rng);
    for (auto& v : g) v = coeff(rng);
    Mat lhs = x.evaluate(a, c, aA.compose(a, b, c, g, f));
    Mat rhs = mat_mul(F, x.evaluate(b, c, g), x.evaluate(a, b, f));
    CHECK(lhs == rhs);
  }
  CHECK(tried > 0);
}

TEST_CASE("hom spaces: simples, Kronecker rigidity, Yoneda") {
  BoundCategory cB = example_c_B();
  std::size_t va = cB.object_id("a"), vb = cB.object_id("b");

  Representation s = simple_representation(cB, va);
  CHECK(hom_space(s, s).size() == 1);

  // Kronecker representations (1,1) vs (1,-1) admit no nonzero morphism
  auto kron = [&](fp_t beta_val) {
    std::vector<Mat> mats(2);
    mats[cB.quiver().arrow_id("alpha")] = Mat::identity(1);
    Mat mb(1, 1);
    mb(0, 0) = beta_val;
    mats[cB.quiver().arrow_id("beta")] = mb;
    return Representation::from_arrow_matrices(cB, {1, 1}, std::move(mats));
  };
  Representation k1 = kron(1);
  Representation k2 = kron(cB.field().reduce(-1));
  CHECK(hom_space(k1, k2).empty());
  CHECK(hom_space(k1, k1).size() == 1);

  // dim Hom(P_a, X) = dim X(a)
  std::mt19937_64 rng(5);
  for (std::size_t a : {va, vb}) {
    Representation p = projective_representation(cB, a);
    for (std::uint64_t seed = 0; seed < 4; ++seed) {
      Representation x = random_representation(cB, seed, 5);
      CHECK(hom_space(p, x).size() == x.dim(a));
    }
  }
}

TEST_CASE("projectives and injectives have the documented shapes") {
  BoundCategory a2 = a2_category();
  Representation pu = projective_representation(a2, a2.object_id("u"));
  CHECK(pu.dims() == std::vector<std::size_t>{1, 1});
  Representation pv = projective_representation(a2, a2.object_id("v"));
  CHECK(pv.dims() == std::vector<std::size_t>{0, 1});

  BoundCategory cB = example_c_B();
  Representation pa = projective_representation(cB, cB.object_id("a"));
  CHECK(pa.dim(cB.object_id("a")) == 1);
  CHECK(pa.dim(cB.object_id("b")) == 2);
  Representation ib = injective_representation(cB, cB.object_id("b"));
  CHECK(ib.dim(cB.object_id("a")) == 2);
  CHECK(ib.dim(cB.object_id("b")) == 1);

  BoundCategory loop = loop_algebra(7, 2, false);
  Representation p = projective_representation(loop, 0);
  CHECK(p.dims() == std::vector<std::size_t>{2});
  Mat rho = p.arrow_matrix(0);
  CHECK_FALSE(rho.is_zero());
  CHECK(mat_mul(loop.field(), rho, rho).is_zero());
}

TEST_CASE("intertwining holds for every hom basis element") {
  BoundCategory bA = example_b_A();
  Representation x = random_representation(bA, 1, 6);
  Representation y = random_representation(bA, 2, 6);
  for (const RepMorphism& u : hom_space(x, y)) CHECK(is_rep_morphism(u));
}

TEST_CASE("radical and top of the Example (c) module and of projectives") {
  BoundCategory cA = example_c_A();
  Representation x = example_c_X(cA);
  SubRep rad = radical(x);
  CHECK(rad.rep->dim(cA.object_id("b2")) == 1);
  CHECK(rad.rep->total_dim() == 1);
  CHECK(is_rep_morphism(rad.inclusion));
  QuotientRep t = top(x);
  CHECK(t.rep->dim(cA.object_id("a2")) == 1);
  CHECK(t.rep->total_dim() == 1);
  CHECK(is_rep_morphism(t.projection));

  // top(P_a) is the simple at a
  BoundCategory cB = example_c_B();
  Representation p = projective_representation(cB, cB.object_id("a"));
  QuotientRep tp = top(p);
  CHECK(tp.rep->dim(cB.object_id("a")) == 1);
  CHECK(tp.rep->dim(cB.object_id("b")) == 0);
  SubRep rp = radical(p);
  CHECK(rp.rep->dim(cB.object_id("b")) == 2);
}

TEST_CASE("direct sums add dimensions vertexwise and split back") {
  BoundCategory cB = example_c_B();
  Representation s = simple_representation(cB, 0);
  Representation p = projective_representation(cB, 0);
  DirectSum sum = direct_sum({&s, &p});
  for (std::size_t a = 0; a < cB.object_count(); ++a)
    CHECK(sum.rep->dim(a) == s.dim(a) + p.dim(a));
  for (const auto& inc : sum.inclusions) CHECK(is_rep_morphism(inc));
  for (const auto& proj : sum.projections) CHECK(is_rep_morphism(proj));
  CHECK(is_identity(compose(sum.projections[0], sum.inclusions[0])));
  CHECK(is_zero(compose(sum.projections[1], sum.inclusions[0])));
}

TEST_CASE("random representations are valid and seeded deterministically") {
  BoundCategory bA = example_b_A();
  for (std::uint64_t seed = 0; seed < 6; ++seed) {
    Representation x = random_representation(bA, seed, 6);
    CHECK(x.total_dim() <= 6);
    CHECK(x.total_dim() > 0);
    Representation again = random_representation(bA, seed, 6);
    CHECK(x == again);
  }
}

TEST_CASE("representations over a tabulated category") {
  PrimeField F(5);
  TabulatedCategory t(F, {"x", "y"});
  t.set_hom(0, 0, {"id_x"});
  t.set_hom(1, 1, {"id_y"});
  t.set_hom(0, 1, {"f"});
  t.set_hom(1, 0, {});
  t.set_identity_index(0, 0);
  t.set_identity_index(1, 0);
  t.set_composition(0, 0, 0, 0, 0, Vec{1});
  t.set_composition(1, 1, 1, 0, 0, Vec{1});
  t.set_composition(0, 0, 1, 0, 0, Vec{1});
  t.set_composition(0, 1, 1, 0, 0, Vec{1});
  t.validate();

  Representation p = projective_representation(t, 0);
  CHECK(p.dims() == std::vector<std::size_t>{1, 1});
  // Yoneda: dim Hom(P_x, M) = dim M(x)
  CHECK(hom_space(p, simple_representation(t, 0)).size() == 1);
  CHECK(hom_space(p, simple_representation(t, 1)).empty());
  SubRep rad = radical(p);
  CHECK(rad.rep->dims() == std::vector<std::size_t>{0, 1});
}
