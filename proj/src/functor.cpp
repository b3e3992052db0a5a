#include "qcov/functor.hpp"

#include <algorithm>
#include <functional>

namespace qcov {

LinearFunctor::LinearFunctor(const BoundCategory& source, const Category& target,
                             std::vector<std::size_t> object_map, std::vector<Vec> arrow_images)
    : source_(&source),
      target_(&target),
      object_map_(std::move(object_map)),
      arrow_images_(std::move(arrow_images)) {
  if (source.field() != target.field()) throw Error("functor: source/target field mismatch");
  if (object_map_.size() != source.object_count())
    throw Error("functor: object map size mismatch");
  for (std::size_t v : object_map_)
    if (v >= target.object_count()) throw Error("functor: object map out of range");
  const Quiver& q = source.quiver();
  if (arrow_images_.size() != q.arrow_count()) throw Error("functor: arrow image count mismatch");
  for (std::uint32_t a = 0; a < q.arrow_count(); ++a) {
    std::size_t fs = object_map_[q.arrow(a).source];
    std::size_t ft = object_map_[q.arrow(a).target];
    if (arrow_images_[a].size() != target.hom_dim(fs, ft))
      throw Error("functor: image of arrow '" + q.arrow(a).name +
                  "' has the wrong coordinate length");
    if (!target.is_radical(fs, ft, arrow_images_[a]))
      throw Error("functor: image of arrow '" + q.arrow(a).name +
                  "' has an identity component (arrow images must be radical)");
  }
}

Vec LinearFunctor::path_image(const Path& p) const {
  if (p.arrows.empty()) return target_->identity_coords(object_map_[p.source]);
  Vec img = arrow_images_[p.arrows[0]];
  std::size_t from = object_map_[p.source];
  std::size_t to = object_map_[source_->quiver().arrow(p.arrows[0]).target];
  for (std::size_t k = 1; k < p.arrows.size(); ++k) {
    std::uint32_t arrow = p.arrows[k];
    std::size_t next = object_map_[source_->quiver().arrow(arrow).target];
    img = target_->compose(from, to, next, arrow_images_[arrow], img);
    to = next;
  }
  return img;
}

Vec LinearFunctor::apply(std::size_t a, std::size_t b, const Vec& coords) const {
  if (coords.size() != source_->hom_dim(a, b)) throw Error("functor apply: coordinate mismatch");
  Vec out(target_->hom_dim(object_map_[a], object_map_[b]), 0);
  for (std::size_t k = 0; k < coords.size(); ++k)
    if (coords[k] != 0)
      vec_axpy(target_->field(), out, coords[k], path_image(source_->basis_path(a, b, k)));
  return out;
}

Mat LinearFunctor::hom_matrix(std::size_t a, std::size_t b) const {
  std::size_t rows = target_->hom_dim(object_map_[a], object_map_[b]);
  std::size_t cols = source_->hom_dim(a, b);
  Mat m(rows, cols);
  for (std::size_t k = 0; k < cols; ++k)
    m.set_col(k, path_image(source_->basis_path(a, b, k)));
  return m;
}

bool LinearFunctor::same_maps(const LinearFunctor& other) const {
  return object_map_ == other.object_map_ && arrow_images_ == other.arrow_images_;
}

LinearFunctor compose_functors(const LinearFunctor& g, const LinearFunctor& f) {
  const auto* mid = dynamic_cast<const BoundCategory*>(&f.target());
  if (mid == nullptr || mid != &g.source())
    throw Error("compose_functors: middle categories do not match");
  std::vector<std::size_t> object_map(f.source().object_count());
  for (std::size_t a = 0; a < object_map.size(); ++a)
    object_map[a] = g.object_image(f.object_image(a));
  const Quiver& q = f.source().quiver();
  std::vector<Vec> images;
  images.reserve(q.arrow_count());
  for (std::uint32_t a = 0; a < q.arrow_count(); ++a) {
    std::size_t s = f.object_image(q.arrow(a).source);
    std::size_t t = f.object_image(q.arrow(a).target);
    images.push_back(g.apply(s, t, f.arrow_image(a)));
  }
  return LinearFunctor(f.source(), g.target(), std::move(object_map), std::move(images));
}

LinearFunctor identity_functor(const BoundCategory& cat) {
  std::vector<std::size_t> object_map(cat.object_count());
  for (std::size_t a = 0; a < object_map.size(); ++a) object_map[a] = a;
  std::vector<Vec> images;
  for (std::uint32_t a = 0; a < cat.quiver().arrow_count(); ++a)
    images.push_back(cat.class_of_arrow(a).coords);
  return LinearFunctor(cat, cat, std::move(object_map), std::move(images));
}

namespace {

// Enumerates paths of exactly the given length (the truncation generators).
void walk_paths(const Quiver& q, Path& cur, std::size_t len,
                const std::function<void(const Path&)>& visit) {
  if (cur.length() == len) {
    visit(cur);
    return;
  }
  std::uint32_t at = cur.target(q);
  for (std::uint32_t a : q.out_arrows(at)) {
    cur.arrows.push_back(a);
    walk_paths(q, cur, len, visit);
    cur.arrows.pop_back();
  }
}

}  // namespace

FunctorReport check_functor(const LinearFunctor& f) {
  const BoundCategory& a = f.source();
  const Quiver& q = a.quiver();
  FunctorReport rep;
  for (std::size_t r = 0; r < a.relations().size(); ++r) {
    const PathCombo& rel = a.relations()[r];
    Vec img(f.target().hom_dim(f.object_image(rel.terms[0].path.source),
                               f.object_image(rel.terms[0].path.target(q))),
            0);
    for (const PathTerm& t : rel.terms)
      vec_axpy(f.target().field(), img, t.coeff, f.path_image(t.path));
    if (!vec_is_zero(img)) {
      rep.ok = false;
      rep.witness = "relation " + combo_label(q, rel) + " has nonzero image";
      return rep;
    }
  }
  // Products of n arrows must vanish so the truncation ideal maps to zero.
  bool ok = true;
  std::string witness;
  for (std::uint32_t v = 0; v < q.vertex_count() && ok; ++v) {
    Path cur{v, {}};
    walk_paths(q, cur, a.bound(), [&](const Path& p) {
      if (!ok) return;
      if (!vec_is_zero(f.path_image(p))) {
        ok = false;
        witness = "length-" + std::to_string(a.bound()) + " path " + path_label(q, p) +
                  " has nonzero image";
      }
    });
  }
  rep.ok = ok;
  rep.witness = witness;
  return rep;
}

const Vec& LiftFamily::component_at(std::size_t object) const {
  for (const auto& [obj, coords] : components)
    if (obj == object) return coords;
  throw Error("lift family has no component at the requested object");
}

const Mat& CoveringCertificate::out_matrix(std::size_t a, std::size_t j) const {
  return out_[a * n_target_ + j].matrix;
}

const Mat& CoveringCertificate::in_matrix(std::size_t i, std::size_t b) const {
  return in_[i * n_source_ + b].matrix;
}

LiftFamily CoveringCertificate::lift_out(std::size_t anchor, std::size_t j, const Vec& f) const {
  const LinearFunctor& fn = *functor_;
  std::size_t i = fn.object_image(anchor);
  const PairMaps& pm = out_[anchor * n_target_ + j];
  if (f.size() != fn.target().hom_dim(i, j)) throw Error("lift: base morphism coordinate mismatch");
  Vec x = mat_vec(fn.target().field(), pm.inverse, f);
  LiftFamily fam;
  fam.direction = LiftDirection::Out;
  fam.base_source = i;
  fam.base_target = j;
  fam.anchor = anchor;
  for (const auto& [obj, offset, dim] : pm.blocks)
    fam.components.emplace_back(obj, Vec(x.begin() + offset, x.begin() + offset + dim));
  return fam;
}

LiftFamily CoveringCertificate::lift_in(std::size_t i, std::size_t anchor, const Vec& f) const {
  const LinearFunctor& fn = *functor_;
  std::size_t j = fn.object_image(anchor);
  const PairMaps& pm = in_[i * n_source_ + anchor];
  if (f.size() != fn.target().hom_dim(i, j)) throw Error("lift: base morphism coordinate mismatch");
  Vec x = mat_vec(fn.target().field(), pm.inverse, f);
  LiftFamily fam;
  fam.direction = LiftDirection::In;
  fam.base_source = i;
  fam.base_target = j;
  fam.anchor = anchor;
  for (const auto& [obj, offset, dim] : pm.blocks)
    fam.components.emplace_back(obj, Vec(x.begin() + offset, x.begin() + offset + dim));
  return fam;
}

LiftFamily CoveringCertificate::lift(const Morphism& f, std::size_t anchor,
                                     LiftDirection dir) const {
  if (dir == LiftDirection::Out) {
    if (functor_->object_image(anchor) != f.source)
      throw Error("lift: anchor is not in the fiber of the morphism's source");
    return lift_out(anchor, f.target, f.coords);
  }
  if (functor_->object_image(anchor) != f.target)
    throw Error("lift: anchor is not in the fiber of the morphism's target");
  return lift_in(f.source, anchor, f.coords);
}

struct CoveringChecker {
  static CoveringOutcome run(const LinearFunctor& f) {
    CoveringOutcome outcome;
    FunctorReport wd = check_functor(f);
    if (!wd.ok) {
      outcome.witness = "functor is not well defined: " + wd.witness;
      return outcome;
    }
    const Category& target = f.target();
    const BoundCategory& source = f.source();
    const PrimeField& F = target.field();
    std::size_t na = source.object_count(), nb = target.object_count();

    CoveringCertificate cert;
    cert.functor_ = &f;
    cert.n_source_ = na;
    cert.n_target_ = nb;
    cert.fibers_.assign(nb, {});
    for (std::size_t a = 0; a < na; ++a) cert.fibers_[f.object_image(a)].push_back(a);
    for (std::size_t j = 0; j < nb; ++j) {
      if (cert.fibers_[j].empty()) {
        outcome.witness = "not surjective on objects: nothing maps to " + target.object_name(j);
        return outcome;
      }
    }

    cert.out_.resize(na * nb);
    cert.in_.resize(nb * na);
    for (std::size_t a = 0; a < na; ++a) {
      std::size_t i = f.object_image(a);
      for (std::size_t j = 0; j < nb; ++j) {
        CoveringCertificate::PairMaps& pm = cert.out_[a * nb + j];
        std::size_t total = 0;
        for (std::size_t b : cert.fibers_[j]) {
          pm.blocks.emplace_back(b, total, source.hom_dim(a, b));
          total += source.hom_dim(a, b);
        }
        std::size_t codim = target.hom_dim(i, j);
        if (total != codim) {
          outcome.witness = "hom dimension mismatch at out-map (" + source.object_name(a) + ", " +
                            target.object_name(j) + "): fiber sum " + std::to_string(total) +
                            " vs " + std::to_string(codim);
          return outcome;
        }
        pm.matrix = Mat(codim, total);
        for (const auto& [b, offset, dim] : pm.blocks)
          for (std::size_t k = 0; k < dim; ++k)
            pm.matrix.set_col(offset + k, f.path_image(source.basis_path(a, b, k)));
        auto inv = inverse(F, pm.matrix);
        if (!inv) {
          outcome.witness = "out-map at (" + source.object_name(a) + ", " +
                            target.object_name(j) + ") is singular";
          return outcome;
        }
        pm.inverse = std::move(*inv);
      }
    }
    for (std::size_t b = 0; b < na; ++b) {
      std::size_t j = f.object_image(b);
      for (std::size_t i = 0; i < nb; ++i) {
        CoveringCertificate::PairMaps& pm = cert.in_[i * na + b];
        std::size_t total = 0;
        for (std::size_t a : cert.fibers_[i]) {
          pm.blocks.emplace_back(a, total, source.hom_dim(a, b));
          total += source.hom_dim(a, b);
        }
        std::size_t codim = target.hom_dim(i, j);
        if (total != codim) {
          outcome.witness = "hom dimension mismatch at in-map (" + target.object_name(i) + ", " +
                            source.object_name(b) + "): fiber sum " + std::to_string(total) +
                            " vs " + std::to_string(codim);
          return outcome;
        }
        pm.matrix = Mat(codim, total);
        for (const auto& [a, offset, dim] : pm.blocks)
          for (std::size_t k = 0; k < dim; ++k)
            pm.matrix.set_col(offset + k, f.path_image(source.basis_path(a, b, k)));
        auto inv = inverse(F, pm.matrix);
        if (!inv) {
          outcome.witness = "in-map at (" + target.object_name(i) + ", " + source.object_name(b) +
                            ") is singular";
          return outcome;
        }
        pm.inverse = std::move(*inv);
      }
    }
    outcome.certificate = std::move(cert);
    return outcome;
  }
};

CoveringOutcome check_covering(const LinearFunctor& f) { return CoveringChecker::run(f); }

BalancedOutcome check_balanced(const CoveringCertificate& cert) {
  const LinearFunctor& f = cert.functor();
  const Category& target = f.target();
  std::size_t na = f.source().object_count();
  BalancedOutcome out;
  for (std::size_t a = 0; a < na; ++a) {
    std::size_t i = f.object_image(a);
    for (std::size_t b = 0; b < na; ++b) {
      std::size_t j = f.object_image(b);
      std::size_t dim = target.hom_dim(i, j);
      for (std::size_t k = 0; k < dim; ++k) {
        Vec basis(dim, 0);
        basis[k] = 1;
        LiftFamily outfam = cert.lift_out(a, j, basis);
        LiftFamily infam = cert.lift_in(i, b, basis);
        if (outfam.component_at(b) != infam.component_at(a)) {
          out.balanced = false;
          out.witness_a = a;
          out.witness_b = b;
          out.witness_basis = k;
          out.witness_label = "(" + f.source().object_name(a) + ", " + f.source().object_name(b) +
                              ", " + target.basis_label(i, j, k) + ")";
          return out;
        }
      }
    }
  }
  out.balanced = true;
  return out;
}

OrderOutcome covering_order(const CoveringCertificate& cert) {
  OrderOutcome out;
  out.base_connected = is_connected(cert.functor().target());
  for (const auto& fiber : cert.fibers()) out.fiber_sizes.push_back(fiber.size());
  out.fibers_constant =
      std::all_of(out.fiber_sizes.begin(), out.fiber_sizes.end(),
                  [&](std::size_t s) { return s == out.fiber_sizes.front(); });
  if (out.base_connected && out.fibers_constant) {
    out.order = out.fiber_sizes.front();
    out.bookkeeping_ok =
        out.order * cert.functor().target().object_count() == cert.functor().source().object_count();
  }
  return out;
}

QuiverMap make_quiver_map(const Quiver& from, const Quiver& to,
                          std::vector<std::size_t> vertex_map,
                          std::vector<std::size_t> arrow_map) {
  if (vertex_map.size() != from.vertex_count() || arrow_map.size() != from.arrow_count())
    throw Error("quiver map: size mismatch");
  for (std::size_t v : vertex_map)
    if (v >= to.vertex_count()) throw Error("quiver map: vertex image out of range");
  for (std::uint32_t a = 0; a < from.arrow_count(); ++a) {
    if (arrow_map[a] >= to.arrow_count()) throw Error("quiver map: arrow image out of range");
    const Arrow& src = from.arrow(a);
    const Arrow& img = to.arrow(arrow_map[a]);
    if (vertex_map[src.source] != img.source || vertex_map[src.target] != img.target)
      throw Error("quiver map does not respect the endpoints of arrow '" + src.name + "'");
  }
  return QuiverMap{std::move(vertex_map), std::move(arrow_map)};
}

StarOutcome check_quiver_covering_map(const Quiver& from, const Quiver& to, const QuiverMap& q) {
  StarOutcome out;
  std::vector<bool> hit(to.vertex_count(), false);
  for (std::size_t v : q.vertex_map) hit[v] = true;
  for (std::size_t v = 0; v < to.vertex_count(); ++v) {
    if (!hit[v]) {
      out.witness = "vertex " + to.vertex_name(static_cast<std::uint32_t>(v)) + " is not hit";
      return out;
    }
  }
  for (std::uint32_t v = 0; v < from.vertex_count(); ++v) {
    std::size_t w = q.vertex_map[v];
    for (bool outgoing : {true, false}) {
      const auto& star = outgoing ? from.out_arrows(v) : from.in_arrows(v);
      const auto& image_star = outgoing ? to.out_arrows(static_cast<std::uint32_t>(w))
                                        : to.in_arrows(static_cast<std::uint32_t>(w));
      std::vector<std::size_t> seen;
      for (std::uint32_t a : star) seen.push_back(q.arrow_map[a]);
      std::sort(seen.begin(), seen.end());
      std::vector<std::size_t> expect(image_star.begin(), image_star.end());
      std::sort(expect.begin(), expect.end());
      if (seen != expect || std::adjacent_find(seen.begin(), seen.end()) != seen.end()) {
        out.witness = std::string(outgoing ? "out" : "in") + "-star at vertex " +
                      from.vertex_name(v) + " does not biject onto the star of " +
                      to.vertex_name(static_cast<std::uint32_t>(w));
        return out;
      }
    }
  }
  out.ok = true;
  return out;
}

InducedOutcome induced_functor(const BoundCategory& a, const BoundCategory& b,
                               const QuiverMap& q) {
  InducedOutcome out;
  StarOutcome star = check_quiver_covering_map(a.quiver(), b.quiver(), q);
  out.covering_map_ok = star.ok;
  if (!star.ok) {
    out.witness = star.witness;
    return out;
  }
  if (a.bound() != b.bound()) {
    out.witness = "nilpotency bounds differ (" + std::to_string(a.bound()) + " vs " +
                  std::to_string(b.bound()) + "); the induced functor requires equal bounds";
    return out;
  }
  std::vector<Vec> images;
  for (std::uint32_t arrow = 0; arrow < a.quiver().arrow_count(); ++arrow)
    images.push_back(b.class_of_arrow(static_cast<std::uint32_t>(q.arrow_map[arrow])).coords);
  LinearFunctor f(a, b, q.vertex_map, std::move(images));
  FunctorReport wd = check_functor(f);
  if (!wd.ok) {
    out.witness = "relations are not preserved: " + wd.witness;
    return out;
  }

  // Admissibility with respect to q: the arrow-wise path map must restrict to
  // isomorphisms (+)_{q(b')=j} I'(a',b') -> I(i,j) and dually.
  const PrimeField& F = a.field();
  auto map_row = [&](std::size_t s, std::size_t t, const Vec& row, std::size_t bi,
                     std::size_t bj) {
    Vec img(b.path_count(bi, bj), 0);
    for (std::size_t k = 0; k < row.size(); ++k) {
      if (row[k] == 0) continue;
      const Path& p = a.path_at(s, t, k);
      Path mapped{static_cast<std::uint32_t>(q.vertex_map[p.source]), {}};
      for (std::uint32_t arr : p.arrows)
        mapped.arrows.push_back(static_cast<std::uint32_t>(q.arrow_map[arr]));
      // locate in b's path table
      bool found = false;
      for (std::size_t m = 0; m < b.path_count(bi, bj); ++m)
        if (b.path_at(bi, bj, m) == mapped) {
          img[m] = F.add(img[m], row[k]);
          found = true;
          break;
        }
      if (!found) throw InternalError("induced functor: mapped path missing downstairs");
    }
    return img;
  };

  std::size_t nb = b.object_count();
  for (bool outgoing : {true, false}) {
    for (std::size_t anchor = 0; anchor < a.object_count(); ++anchor) {
      for (std::size_t other = 0; other < nb; ++other) {
        std::size_t i = outgoing ? q.vertex_map[anchor] : other;
        std::size_t j = outgoing ? other : q.vertex_map[anchor];
        RowSpace image_span(F, b.path_count(i, j));
        std::size_t upstairs_dim = 0;
        bool injective = true;
        RowSpace accum(F, b.path_count(i, j));
        for (std::size_t partner = 0; partner < a.object_count(); ++partner) {
          if (q.vertex_map[partner] != other) continue;
          std::size_t s = outgoing ? anchor : partner;
          std::size_t t = outgoing ? partner : anchor;
          for (const Vec& row : a.ideal_rows(s, t)) {
            ++upstairs_dim;
            Vec img = map_row(s, t, row, i, j);
            if (!accum.insert(std::move(img))) injective = false;
          }
        }
        const std::vector<Vec>& downstairs = b.ideal_rows(i, j);
        RowSpace down_span(F, b.path_count(i, j));
        for (const Vec& row : downstairs) down_span.insert(row);
        bool onto = accum.dim() == down_span.dim() && upstairs_dim == down_span.dim();
        bool into = true;
        for (const Vec& row : accum.rows())
          if (!down_span.contains(row)) into = false;
        if (!injective || !onto || !into) {
          out.witness = std::string("relation-space restriction at (") +
                        (outgoing ? a.object_name(anchor) : b.object_name(i)) + ", " +
                        (outgoing ? b.object_name(j) : a.object_name(anchor)) +
                        ") is not bijective";
          out.functor = std::move(f);
          return out;
        }
      }
    }
  }
  out.admissible = true;
  out.functor = std::move(f);
  return out;
}

bool is_category_isomorphism(const LinearFunctor& f) {
  const BoundCategory& b = f.source();
  const Category& t = f.target();
  if (b.object_count() != t.object_count()) return false;
  std::vector<bool> hit(t.object_count(), false);
  for (std::size_t i = 0; i < b.object_count(); ++i) hit[f.object_image(i)] = true;
  if (!std::all_of(hit.begin(), hit.end(), [](bool h) { return h; })) return false;
  if (!check_functor(f).ok) return false;
  for (std::size_t i = 0; i < b.object_count(); ++i)
    for (std::size_t j = 0; j < b.object_count(); ++j) {
      Mat m = f.hom_matrix(i, j);
      if (m.rows() != m.cols()) return false;
      if (m.rows() > 0 && !inverse(b.field(), m)) return false;
    }
  return true;
}

namespace {

struct IsoSearch {
  const BoundCategory* b;
  const Category* t;
  std::vector<std::size_t> sigma;            // object bijection
  std::vector<Vec> assigned;                 // arrow images found so far
  std::vector<std::vector<std::size_t>> relations_ready;  // per arrow: relations completed by it
  std::optional<LinearFunctor> result;

  Vec path_image(const Path& p) const {
    if (p.arrows.empty()) return t->identity_coords(sigma[p.source]);
    const Quiver& q = b->quiver();
    Vec img = assigned[p.arrows[0]];
    std::size_t from = sigma[p.source];
    std::size_t to = sigma[q.arrow(p.arrows[0]).target];
    for (std::size_t k = 1; k < p.arrows.size(); ++k) {
      std::size_t next = sigma[q.arrow(p.arrows[k]).target];
      img = t->compose(from, to, next, assigned[p.arrows[k]], img);
      to = next;
    }
    return img;
  }

  bool relation_holds(const PathCombo& r) const {
    const Quiver& q = b->quiver();
    Vec sum(t->hom_dim(sigma[r.terms[0].path.source], sigma[r.terms[0].path.target(q)]), 0);
    for (const PathTerm& term : r.terms)
      vec_axpy(t->field(), sum, term.coeff, path_image(term.path));
    return vec_is_zero(sum);
  }

  bool search(std::uint32_t arrow) {
    const Quiver& q = b->quiver();
    if (arrow == q.arrow_count()) {
      LinearFunctor cand(*b, *t, sigma, assigned);
      if (is_category_isomorphism(cand)) {
        result = std::move(cand);
        return true;
      }
      return false;
    }
    std::size_t fs = sigma[q.arrow(arrow).source];
    std::size_t ft = sigma[q.arrow(arrow).target];
    std::size_t dim = t->hom_dim(fs, ft);
    const PrimeField& F = t->field();
    std::vector<Vec> pool;
    for (std::size_t k = 0; k < dim; ++k)
      for (fp_t c : {fp_t(1), F.neg(1)}) {
        Vec v(dim, 0);
        v[k] = c;
        pool.push_back(std::move(v));
      }
    for (std::size_t k = 0; k < dim; ++k)
      for (std::size_t l = k + 1; l < dim; ++l)
        for (fp_t ck : {fp_t(1), F.neg(1)})
          for (fp_t cl : {fp_t(1), F.neg(1)}) {
            Vec v(dim, 0);
            v[k] = ck;
            v[l] = cl;
            pool.push_back(std::move(v));
          }
    for (Vec& cand : pool) {
      if (!t->is_radical(fs, ft, cand)) continue;
      assigned[arrow] = cand;
      bool ok = true;
      for (std::size_t r : relations_ready[arrow])
        if (!relation_holds(b->relations()[r])) {
          ok = false;
          break;
        }
      if (ok && search(arrow + 1)) return true;
    }
    assigned[arrow] = Vec();
    return false;
  }
};

void object_bijections(const Category& b, const Category& t, std::size_t next,
                       std::vector<std::size_t>& sigma, std::vector<bool>& used,
                       const std::function<bool(const std::vector<std::size_t>&)>& visit,
                       bool& done) {
  if (done) return;
  std::size_t n = b.object_count();
  if (next == n) {
    done = visit(sigma);
    return;
  }
  for (std::size_t cand = 0; cand < n && !done; ++cand) {
    if (used[cand]) continue;
    bool compatible = true;
    for (std::size_t prev = 0; prev <= next && compatible; ++prev) {
      std::size_t other = prev == next ? cand : sigma[prev];
      compatible = b.hom_dim(next, prev == next ? next : prev) == t.hom_dim(cand, other) &&
                   b.hom_dim(prev == next ? next : prev, next) == t.hom_dim(other, cand);
    }
    if (!compatible) continue;
    sigma[next] = cand;
    used[cand] = true;
    object_bijections(b, t, next + 1, sigma, used, visit, done);
    used[cand] = false;
  }
}

}  // namespace

IsoSearchOutcome find_category_isomorphism(const BoundCategory& b, const Category& t) {
  IsoSearchOutcome out;
  if (b.object_count() != t.object_count() || b.field() != t.field()) return out;
  if (b.total_hom_dim() != t.total_hom_dim()) return out;

  // which relations become checkable once a given arrow is assigned
  std::vector<std::vector<std::size_t>> ready(b.quiver().arrow_count());
  for (std::size_t r = 0; r < b.relations().size(); ++r) {
    std::uint32_t last = 0;
    for (const PathTerm& term : b.relations()[r].terms)
      for (std::uint32_t arr : term.path.arrows) last = std::max(last, arr);
    if (b.quiver().arrow_count() > 0) ready[last].push_back(r);
  }

  std::vector<std::size_t> sigma(b.object_count());
  std::vector<bool> used(t.object_count(), false);
  bool done = false;
  object_bijections(b, t, 0, sigma, used,
                    [&](const std::vector<std::size_t>& obj_map) {
                      IsoSearch s;
                      s.b = &b;
                      s.t = &t;
                      s.sigma = obj_map;
                      s.assigned.assign(b.quiver().arrow_count(), Vec());
                      s.relations_ready = ready;
                      if (s.search(0)) {
                        out.found = true;
                        out.functor = std::move(s.result);
                        return true;
                      }
                      return false;
                    },
                    done);
  return out;
}

}  // namespace qcov
