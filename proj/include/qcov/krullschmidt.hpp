#pragma once

#include <cstdint>
#include <optional>

#include "qcov/representation.hpp"

namespace qcov {

// A finite-dimensional associative F_p-algebra with 1, given by structure
// constants over a fixed basis.
struct AlgebraTable {
  const PrimeField* field = nullptr;
  std::size_t dim = 0;
  std::vector<std::vector<Vec>> table;  // table[i][j] = coords of b_i * b_j
  Vec one;

  Vec multiply(const Vec& x, const Vec& y) const;
  Vec power(Vec x, std::uint64_t e) const;
  // Matrix of y -> x * y over the basis (the left regular representation).
  Mat left_mult(const Vec& x) const;
};

// End(X) with its basis of intertwiners and structure constants.
struct EndAlgebra {
  const Representation* rep = nullptr;
  std::vector<RepMorphism> basis;
  AlgebraTable algebra;

  Vec coords_of(const RepMorphism& u) const;
  RepMorphism realize(const Vec& coords) const;
};

EndAlgebra endomorphism_algebra(const Representation& x);

struct RadicalResult {
  std::vector<Vec> basis;         // echelonized, coordinates over the algebra basis
  bool quotient_semisimple = false;  // certificate: recomputing on A/rad gives 0
};

// Jacobson radical over F_p by the iterated p-power trace method; valid in
// any characteristic (the plain trace form alone is not when p <= dim).
RadicalResult algebra_radical(const AlgebraTable& alg);

// The quotient algebra by a (radical) ideal, with the projection and a
// linear section in coordinates.
struct QuotientAlgebra {
  AlgebraTable algebra;
  Mat projection;  // quotient coords from algebra coords
  Mat section;     // algebra coords from quotient coords
};

QuotientAlgebra quotient_algebra(const AlgebraTable& alg, const std::vector<Vec>& ideal_basis);

struct IndecCertificate {
  std::size_t end_dim = 0;
  std::size_t radical_dim = 0;
  std::size_t quotient_dim = 0;       // dim of End/rad; 1 means split field case
  bool quotient_commutative = false;  // field extension case when dim > 1
};

struct Summand {
  std::shared_ptr<Representation> rep;
  RepMorphism inclusion;   // summand -> original
  RepMorphism projection;  // original -> summand
  IndecCertificate certificate;
};

struct Decomposition {
  const Representation* original = nullptr;
  std::vector<Summand> summands;           // indecomposable leaves
  std::vector<std::size_t> iso_class;      // per leaf
  std::vector<std::size_t> class_reps;     // leaf index representing each class
  std::vector<std::size_t> multiplicities; // per class

  std::size_t class_count() const { return class_reps.size(); }
  // Sorted (total dim, multiplicity) pairs, a quick seed-independence probe.
  std::vector<std::pair<std::size_t, std::size_t>> shape() const;
};

// Krull-Schmidt decomposition with certificates. The randomization only
// picks splitting elements; the resulting multiset of isomorphism classes is
// seed-independent.
Decomposition decompose(const Representation& x, std::uint64_t seed);

struct IsoOutcome {
  bool isomorphic = false;
  std::optional<std::pair<RepMorphism, RepMorphism>> witness;  // mutually inverse
};

IsoOutcome are_isomorphic(const Representation& x, const Representation& y, std::uint64_t seed);

// Compares two decompositions class by class.
bool same_class_multiset(const Decomposition& dx, const Decomposition& dy, std::uint64_t seed);

struct SummandOutcome {
  bool summand = false;
  // split pair with retraction . section = id_X, present when summand
  std::optional<std::pair<RepMorphism, RepMorphism>> split;  // (u: X->Y, r: Y->X)
};

// Two cross-checked routes: multiplicity matching of decompositions, and
// sequential peeling of X's indecomposables off Y via the hom pairing modulo
// the radical. Disagreement raises InternalError.
SummandOutcome is_direct_summand(const Representation& x, const Representation& y,
                                 std::uint64_t seed);

// Any r with r . u = id, solved linearly, or nullopt.
std::optional<RepMorphism> solve_retraction(const RepMorphism& u);

}  // namespace qcov
