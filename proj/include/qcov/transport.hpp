#pragma once

#include "qcov/functor.hpp"
#include "qcov/representation.hpp"

namespace qcov {

// Fiber block structure of a transported representation: for each target
// object, which slice of its space belongs to which fiber object. Blocks
// follow the file order of the source's vertices.
struct BlockLayout {
  // per target object: (source object, offset, dim)
  std::vector<std::vector<std::tuple<std::size_t, std::size_t, std::size_t>>> blocks;

  std::size_t offset_of(std::size_t target_object, std::size_t source_object) const;
};

struct Transported {
  std::shared_ptr<Representation> rep;
  BlockLayout layout;
};

// Push-down F_lambda: (F_lambda X)(i) = (+)_{Fa=i} X(a); the action of a
// basis morphism f has (b,a)-block X( out-lift component of f from a to b ).
// The result is validated against the target category on every call.
Transported push_down(const CoveringCertificate& cert, const Representation& x);

// Right push-down F_rho: same block shape, blocks from in-lift components.
Transported push_down_right(const CoveringCertificate& cert, const Representation& x);

// Pull-up F_bullet: (F_bullet M)(a) = M(Fa), arrows act through their images.
Representation pull_up(const LinearFunctor& f, const Representation& m);

// F_lambda on morphisms: the fiberwise block-diagonal assembly.
RepMorphism push_down_morphism(const CoveringCertificate& cert, const RepMorphism& u,
                               const Transported& source_image, const Transported& target_image);

// F_bullet on morphisms: components are copied along the object map.
RepMorphism pull_up_morphism(const LinearFunctor& f, const RepMorphism& u,
                             const Representation& source_image,
                             const Representation& target_image);

}  // namespace qcov
