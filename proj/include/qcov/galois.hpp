#pragma once

#include <memory>
#include <optional>

#include "qcov/functor.hpp"

namespace qcov {

// A finite group given by a multiplication table. table(g,h) is the product
// g*h; actions are left actions, functor(g) . functor(h) = functor(g*h).
class FiniteGroup {
public:
  FiniteGroup(std::vector<std::string> elements, std::vector<std::vector<std::size_t>> table);

  std::size_t order() const { return names_.size(); }
  const std::string& name(std::size_t g) const { return names_[g]; }
  std::size_t element_id(const std::string& name) const;
  std::size_t identity() const { return identity_; }
  std::size_t mul(std::size_t g, std::size_t h) const { return table_[g][h]; }
  std::size_t inv(std::size_t g) const { return inverse_[g]; }

private:
  std::vector<std::string> names_;
  std::vector<std::vector<std::size_t>> table_;
  std::size_t identity_ = 0;
  std::vector<std::size_t> inverse_;
};

// A group acting on a presented category by automorphisms (one functor per
// element, in the group's element order).
struct GroupAction {
  const FiniteGroup* group = nullptr;
  const BoundCategory* cat = nullptr;
  std::vector<LinearFunctor> functors;

  std::size_t act_on_object(std::size_t g, std::size_t a) const {
    return functors[g].object_image(a);
  }
};

struct ActionReport {
  bool ok = false;
  bool homomorphism = false;
  bool invertible = false;
  bool free = false;
  std::string witness;
};

// Homomorphism property on arrows, invertibility, and freeness on objects.
ActionReport check_action(const GroupAction& action);

// The Galois quotient A/G of a free action: objects are orbits, a morphism
// is an invariant family, realized by its components out of the orbit
// representative (first vertex in file order).
struct Quotient {
  std::unique_ptr<TabulatedCategory> cat;
  std::unique_ptr<LinearFunctor> projection;  // A -> A/G
  std::vector<std::vector<std::size_t>> orbits;
  std::vector<std::size_t> orbit_of;  // per source object
  std::vector<std::size_t> rep_of;    // per orbit
};

Quotient galois_quotient(const BoundCategory& a, const GroupAction& action);

// An arrow-degree grading: every relation must be homogeneous for the
// degree of a path, the left-to-right product of its arrow degrees.
struct Grading {
  const BoundCategory* cat = nullptr;
  const FiniteGroup* group = nullptr;
  std::vector<std::size_t> degree;  // per arrow

  std::size_t path_degree(const Path& p) const;
};

struct GradingReport {
  bool ok = false;
  std::string witness;
};

GradingReport check_grading(const Grading& grading);

// Basis indices of Hom(i,j) lying in degree g (classes of paths of degree g).
std::vector<std::size_t> graded_component(const Grading& grading, std::size_t i, std::size_t j,
                                          std::size_t g);

// The smash product B#G: objects (i,g), arrows (alpha,g): (i,g) -> (j, g*deg alpha),
// relations lifted fiberwise, with the canonical free G-action and the
// canonical projection onto B.
struct SmashCategory {
  std::unique_ptr<BoundCategory> cat;
  std::unique_ptr<GroupAction> action;        // canonical t.(i,g) = (i, t*g)
  std::unique_ptr<LinearFunctor> projection;  // B#G -> B
  std::vector<std::vector<std::size_t>> vertex_of;  // [i][g] -> smash vertex
  std::vector<std::vector<std::size_t>> arrow_of;   // [alpha][g] -> smash arrow
  bool hom_dims_match_components = false;  // dim Hom((i,g),(j,h)) = dim B^{g^-1 h}(i,j)
};

SmashCategory smash_product(const BoundCategory& b, const Grading& grading);

// The comparison functor B -> (B#G)/G witnessing the canonical equivalence;
// returns it together with whether it is an isomorphism.
struct ComparisonOutcome {
  std::unique_ptr<LinearFunctor> functor;
  bool isomorphism = false;
  std::string witness;
};

ComparisonOutcome smash_quotient_comparison(const BoundCategory& b, const SmashCategory& smash,
                                            const Quotient& quotient);

// F#G on compatible gradings, with the commutative-square check against the
// canonical projections.
struct SmashFunctorOutcome {
  std::optional<LinearFunctor> functor;  // A#G -> B#G
  bool compatible = false;
  bool square_commutes = false;
  std::string witness;
};

SmashFunctorOutcome smash_functor(const LinearFunctor& f, const Grading& grading_a,
                                  const Grading& grading_b, const SmashCategory& smash_a,
                                  const SmashCategory& smash_b);

// For a covering onto a schurian category: each arrow inherits the degree of
// the unique nonzero component of its image (Prop 2.3(ii) style).
struct InducedGradingOutcome {
  std::optional<Grading> grading;  // on the covering's source
  bool compatible = false;
  std::string witness;
};

InducedGradingOutcome induce_grading_schurian(const CoveringCertificate& cert,
                                              const Grading& grading_b);

// The tower construction: F: A -> B induced from a quiver map, F': B' -> B a
// Galois covering induced from a quiver map with a free action on B', B'
// schurian. Produces gradings on A and B by unique path lifting through B',
// and the comparison functor A#G -> B'.
struct TowerOutcome {
  std::optional<Grading> grading_a;
  std::optional<Grading> grading_b;
  std::unique_ptr<SmashCategory> smash_a;
  std::unique_ptr<LinearFunctor> comparison;  // A#G -> B'
  bool square_commutes = false;               // F' . comparison = F . projection
  std::string witness;
  // The construction depends on the choice of fiber representatives (first
  // in file order); reported, not resolved.
  std::string representative_note;
};

TowerOutcome grading_from_schurian_galois(const BoundCategory& a, const BoundCategory& b,
                                          const BoundCategory& bprime, const QuiverMap& f_map,
                                          const QuiverMap& galois_map, const GroupAction& action);

}  // namespace qcov
