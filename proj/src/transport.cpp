#include "qcov/transport.hpp"

namespace qcov {

std::size_t BlockLayout::offset_of(std::size_t target_object, std::size_t source_object) const {
  for (const auto& [src, offset, dim] : blocks[target_object])
    if (src == source_object) return offset;
  throw Error("block layout: source object not in this fiber");
}

namespace {

Transported push_down_impl(const CoveringCertificate& cert, const Representation& x,
                           LiftDirection dir) {
  const LinearFunctor& f = cert.functor();
  const BoundCategory& a_cat = f.source();
  const Category& b_cat = f.target();
  if (&x.category() != &a_cat) throw Error("push_down: representation is not over the source");
  std::size_t nb = b_cat.object_count();

  Transported out;
  out.layout.blocks.resize(nb);
  std::vector<std::size_t> dims(nb, 0);
  for (std::size_t i = 0; i < nb; ++i) {
    for (std::size_t a : cert.fiber(i)) {
      out.layout.blocks[i].emplace_back(a, dims[i], x.dim(a));
      dims[i] += x.dim(a);
    }
  }

  std::vector<std::vector<std::vector<Mat>>> act(nb, std::vector<std::vector<Mat>>(nb));
  for (std::size_t i = 0; i < nb; ++i)
    for (std::size_t j = 0; j < nb; ++j)
      for (std::size_t k = 0; k < b_cat.hom_dim(i, j); ++k) {
        Vec basis(b_cat.hom_dim(i, j), 0);
        basis[k] = 1;
        Mat m(dims[j], dims[i]);
        for (const auto& [a, a_off, a_dim] : out.layout.blocks[i]) {
          // One lift family per column block: out-lifts anchored at a give
          // the whole column of blocks X( _b f^. _a ); in-lifts are assembled
          // per (a,b) pair from the family anchored at b.
          for (const auto& [b, b_off, b_dim] : out.layout.blocks[j]) {
            Vec component = dir == LiftDirection::Out
                                ? cert.lift_out(a, j, basis).component_at(b)
                                : cert.lift_in(i, b, basis).component_at(a);
            Mat block = x.evaluate(a, b, component);
            for (std::size_t r = 0; r < b_dim; ++r)
              for (std::size_t c = 0; c < a_dim; ++c) m(b_off + r, a_off + c) = block(r, c);
          }
        }
        act[i][j].push_back(std::move(m));
      }
  // from_action validates multiplicativity, i.e. the transported action
  // satisfies the target's relations.
  out.rep = std::make_shared<Representation>(
      Representation::from_action(b_cat, std::move(dims), std::move(act)));
  return out;
}

}  // namespace

Transported push_down(const CoveringCertificate& cert, const Representation& x) {
  return push_down_impl(cert, x, LiftDirection::Out);
}

Transported push_down_right(const CoveringCertificate& cert, const Representation& x) {
  return push_down_impl(cert, x, LiftDirection::In);
}

Representation pull_up(const LinearFunctor& f, const Representation& m) {
  const BoundCategory& a_cat = f.source();
  if (&m.category() != &f.target()) throw Error("pull_up: representation is not over the target");
  const Quiver& q = a_cat.quiver();
  std::vector<std::size_t> dims(a_cat.object_count());
  for (std::size_t a = 0; a < dims.size(); ++a) dims[a] = m.dim(f.object_image(a));
  std::vector<Mat> mats;
  mats.reserve(q.arrow_count());
  for (std::uint32_t arr = 0; arr < q.arrow_count(); ++arr) {
    std::size_t fs = f.object_image(q.arrow(arr).source);
    std::size_t ft = f.object_image(q.arrow(arr).target);
    mats.push_back(m.evaluate(fs, ft, f.arrow_image(arr)));
  }
  return Representation::from_arrow_matrices(a_cat, std::move(dims), std::move(mats));
}

RepMorphism push_down_morphism(const CoveringCertificate& cert, const RepMorphism& u,
                               const Transported& source_image, const Transported& target_image) {
  const LinearFunctor& f = cert.functor();
  std::size_t nb = f.target().object_count();
  RepMorphism out;
  out.source = source_image.rep.get();
  out.target = target_image.rep.get();
  for (std::size_t i = 0; i < nb; ++i) {
    Mat m(target_image.rep->dim(i), source_image.rep->dim(i));
    for (const auto& [a, s_off, s_dim] : source_image.layout.blocks[i]) {
      std::size_t t_off = target_image.layout.offset_of(i, a);
      const Mat& comp = u.components[a];
      for (std::size_t r = 0; r < comp.rows(); ++r)
        for (std::size_t c = 0; c < s_dim; ++c) m(t_off + r, s_off + c) = comp(r, c);
    }
    out.components.push_back(std::move(m));
  }
  if (!is_rep_morphism(out)) throw InternalError("push_down_morphism: intertwining failed");
  return out;
}

RepMorphism pull_up_morphism(const LinearFunctor& f, const RepMorphism& u,
                             const Representation& source_image,
                             const Representation& target_image) {
  RepMorphism out;
  out.source = &source_image;
  out.target = &target_image;
  for (std::size_t a = 0; a < f.source().object_count(); ++a)
    out.components.push_back(u.components[f.object_image(a)]);
  if (!is_rep_morphism(out)) throw InternalError("pull_up_morphism: intertwining failed");
  return out;
}

}  // namespace qcov
