#pragma once

#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "qcov/category.hpp"

namespace qcov {

// A k-linear functor out of a presented category. Arrow images are morphisms
// of the target and must be radical (no identity component), which keeps
// well-definedness decidable: relations plus length-n arrow products.
class LinearFunctor {
public:
  LinearFunctor(const BoundCategory& source, const Category& target,
                std::vector<std::size_t> object_map, std::vector<Vec> arrow_images);

  const BoundCategory& source() const { return *source_; }
  const Category& target() const { return *target_; }
  std::size_t object_image(std::size_t a) const { return object_map_[a]; }
  const std::vector<std::size_t>& object_map() const { return object_map_; }
  const Vec& arrow_image(std::uint32_t arrow) const { return arrow_images_[arrow]; }

  // Image of a path class under the functor (composes arrow images).
  Vec path_image(const Path& p) const;
  // Image of a morphism given by coordinates in the source hom basis.
  Vec apply(std::size_t a, std::size_t b, const Vec& coords) const;
  // Matrix of F on Hom(a,b) -> Hom(Fa,Fb), columns indexed by the source basis.
  Mat hom_matrix(std::size_t a, std::size_t b) const;

  bool same_maps(const LinearFunctor& other) const;

private:
  const BoundCategory* source_;
  const Category* target_;
  std::vector<std::size_t> object_map_;
  std::vector<Vec> arrow_images_;
};

// g after f; both must be functors between presented categories with
// target(f) == source(g).
LinearFunctor compose_functors(const LinearFunctor& g, const LinearFunctor& f);

LinearFunctor identity_functor(const BoundCategory& cat);

struct FunctorReport {
  bool ok = false;
  std::string witness;
};

// Relation generators and all length-n arrow products must map to zero.
FunctorReport check_functor(const LinearFunctor& f);

enum class LiftDirection { Out, In };

// The tuple realizing one covering bijection: for a base morphism
// f in B(i,j), either the out-family ( _b f^. _a )_b anchored at a source
// fiber object a, or the in-family ( ^. _b f _a' )_a' anchored at a target
// fiber object b.
struct LiftFamily {
  LiftDirection direction = LiftDirection::Out;
  std::size_t base_source = 0, base_target = 0;  // i, j in the target
  std::size_t anchor = 0;                        // source object in the fiber
  // (fiber object, coordinates in the appropriate source hom space)
  std::vector<std::pair<std::size_t, Vec>> components;

  const Vec& component_at(std::size_t object) const;
};

// Witnesses the covering conditions: for every (a, j) the out-matrix
// (+) A(a,b') -> B(Fa,j) with its inverse, and dually for every (i, b).
// Column blocks follow the file order of the source's vertices.
class CoveringCertificate {
public:
  const LinearFunctor& functor() const { return *functor_; }
  const std::vector<std::vector<std::size_t>>& fibers() const { return fibers_; }
  const std::vector<std::size_t>& fiber(std::size_t target_object) const {
    return fibers_[target_object];
  }

  LiftFamily lift_out(std::size_t anchor, std::size_t j, const Vec& f) const;
  LiftFamily lift_in(std::size_t i, std::size_t anchor, const Vec& f) const;
  LiftFamily lift(const Morphism& f, std::size_t anchor, LiftDirection dir) const;

  const Mat& out_matrix(std::size_t a, std::size_t j) const;
  const Mat& in_matrix(std::size_t i, std::size_t b) const;

private:
  friend struct CoveringChecker;
  const LinearFunctor* functor_ = nullptr;
  std::vector<std::vector<std::size_t>> fibers_;  // per target object, source file order
  struct PairMaps {
    Mat matrix, inverse;
    // (fiber object, offset, dim) blocks of the domain
    std::vector<std::tuple<std::size_t, std::size_t, std::size_t>> blocks;
  };
  std::vector<PairMaps> out_, in_;  // indexed a * |B0| + j and i * |A0| + b
  std::size_t n_source_ = 0, n_target_ = 0;
};

struct CoveringOutcome {
  std::optional<CoveringCertificate> certificate;
  std::string witness;  // set when not a covering
  bool ok() const { return certificate.has_value(); }
};

CoveringOutcome check_covering(const LinearFunctor& f);

struct BalancedOutcome {
  bool balanced = false;
  // first failing triple (a, b, basis element of B(Fa,Fb))
  std::size_t witness_a = 0, witness_b = 0, witness_basis = 0;
  std::string witness_label;
};

BalancedOutcome check_balanced(const CoveringCertificate& cert);

struct OrderOutcome {
  bool base_connected = false;
  bool fibers_constant = false;
  std::size_t order = 0;  // when connected
  std::vector<std::size_t> fiber_sizes;
  bool bookkeeping_ok = false;  // ord * |B0| = |A0| (when connected)
};

OrderOutcome covering_order(const CoveringCertificate& cert);

// A map of quivers: vertices to vertices, arrows to arrows, respecting
// endpoints (validated on construction).
struct QuiverMap {
  std::vector<std::size_t> vertex_map;
  std::vector<std::size_t> arrow_map;
};

QuiverMap make_quiver_map(const Quiver& from, const Quiver& to,
                          std::vector<std::size_t> vertex_map, std::vector<std::size_t> arrow_map);

struct StarOutcome {
  bool ok = false;
  std::string witness;
};

// Onto on vertices, and bijective on every in/out star.
StarOutcome check_quiver_covering_map(const Quiver& from, const Quiver& to, const QuiverMap& q);

struct InducedOutcome {
  std::optional<LinearFunctor> functor;
  bool covering_map_ok = false;
  bool admissible = false;  // relation-space restriction isomorphisms hold
  std::string witness;
};

// The functor induced by a covering map of quivers, with the admissibility
// check on the relation ideals.
InducedOutcome induced_functor(const BoundCategory& a, const BoundCategory& b, const QuiverMap& q);

// True when f is bijective on objects and invertible on every hom space.
bool is_category_isomorphism(const LinearFunctor& f);

struct IsoSearchOutcome {
  std::optional<LinearFunctor> functor;
  bool found = false;
};

// Desk-scale search for an isomorphism from a presented category onto any
// category: object bijections compatible with the hom dimension matrix,
// arrow images drawn from signed sums of at most two basis vectors, relation
// pruning, full verification at the leaves.
IsoSearchOutcome find_category_isomorphism(const BoundCategory& b, const Category& t);

}  // namespace qcov
