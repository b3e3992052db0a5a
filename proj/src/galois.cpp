#include "qcov/galois.hpp"

#include <algorithm>

namespace qcov {

FiniteGroup::FiniteGroup(std::vector<std::string> elements,
                         std::vector<std::vector<std::size_t>> table)
    : names_(std::move(elements)), table_(std::move(table)) {
  std::size_t n = names_.size();
  if (n == 0) throw Error("group: empty element list");
  if (table_.size() != n) throw Error("group: table has the wrong number of rows");
  for (const auto& row : table_) {
    if (row.size() != n) throw Error("group: table has the wrong number of columns");
    for (std::size_t x : row)
      if (x >= n) throw Error("group: table entry out of range");
  }
  // identity
  bool found = false;
  for (std::size_t e = 0; e < n && !found; ++e) {
    bool ok = true;
    for (std::size_t g = 0; g < n; ++g) ok = ok && table_[e][g] == g && table_[g][e] == g;
    if (ok) {
      identity_ = e;
      found = true;
    }
  }
  if (!found) throw Error("group: no identity element");
  // inverses
  inverse_.assign(n, 0);
  for (std::size_t g = 0; g < n; ++g) {
    bool has = false;
    for (std::size_t h = 0; h < n && !has; ++h)
      if (table_[g][h] == identity_ && table_[h][g] == identity_) {
        inverse_[g] = h;
        has = true;
      }
    if (!has) throw Error("group: element '" + names_[g] + "' has no inverse");
  }
  // associativity
  for (std::size_t g = 0; g < n; ++g)
    for (std::size_t h = 0; h < n; ++h)
      for (std::size_t k = 0; k < n; ++k)
        if (table_[table_[g][h]][k] != table_[g][table_[h][k]])
          throw Error("group: multiplication table is not associative");
}

std::size_t FiniteGroup::element_id(const std::string& name) const {
  for (std::size_t g = 0; g < names_.size(); ++g)
    if (names_[g] == name) return g;
  throw Error("group: unknown element '" + name + "'");
}

ActionReport check_action(const GroupAction& action) {
  ActionReport rep;
  const FiniteGroup& g = *action.group;
  const BoundCategory& cat = *action.cat;
  if (action.functors.size() != g.order()) {
    rep.witness = "action does not provide one functor per group element";
    return rep;
  }
  for (const LinearFunctor& f : action.functors) {
    if (&f.source() != &cat || &f.target() != &cat) {
      rep.witness = "action functor is not an endofunctor of the category";
      return rep;
    }
    FunctorReport wd = check_functor(f);
    if (!wd.ok) {
      rep.witness = "action functor is not well defined: " + wd.witness;
      return rep;
    }
  }
  LinearFunctor id = identity_functor(cat);
  if (!action.functors[g.identity()].same_maps(id)) {
    rep.witness = "the identity element does not act as the identity functor";
    return rep;
  }
  rep.homomorphism = true;
  for (std::size_t x = 0; x < g.order() && rep.homomorphism; ++x)
    for (std::size_t y = 0; y < g.order() && rep.homomorphism; ++y) {
      LinearFunctor comp = compose_functors(action.functors[x], action.functors[y]);
      if (!comp.same_maps(action.functors[g.mul(x, y)])) {
        rep.homomorphism = false;
        rep.witness = "functors of " + g.name(x) + " and " + g.name(y) +
                      " do not compose to the functor of their product";
      }
    }
  if (!rep.homomorphism) return rep;
  rep.invertible = true;
  for (std::size_t x = 0; x < g.order() && rep.invertible; ++x) {
    LinearFunctor comp = compose_functors(action.functors[x], action.functors[g.inv(x)]);
    if (!comp.same_maps(id)) {
      rep.invertible = false;
      rep.witness = "functor of " + g.name(x) + " is not invertible";
    }
  }
  if (!rep.invertible) return rep;
  rep.free = true;
  for (std::size_t x = 0; x < g.order() && rep.free; ++x) {
    if (x == g.identity()) continue;
    for (std::size_t a = 0; a < cat.object_count(); ++a)
      if (action.act_on_object(x, a) == a) {
        rep.free = false;
        rep.witness = "element " + g.name(x) + " fixes object " + cat.object_name(a);
        break;
      }
  }
  rep.ok = rep.free;
  return rep;
}

Quotient galois_quotient(const BoundCategory& a, const GroupAction& action) {
  ActionReport ar = check_action(action);
  if (!ar.ok) throw Error("galois_quotient: action is not a free group action: " + ar.witness);
  const FiniteGroup& g = *action.group;
  const PrimeField& F = a.field();
  std::size_t na = a.object_count();

  Quotient out;
  out.orbit_of.assign(na, SIZE_MAX);
  for (std::size_t v = 0; v < na; ++v) {
    if (out.orbit_of[v] != SIZE_MAX) continue;
    std::vector<std::size_t> orbit;
    for (std::size_t x = 0; x < g.order(); ++x) orbit.push_back(action.act_on_object(x, v));
    std::sort(orbit.begin(), orbit.end());
    orbit.erase(std::unique(orbit.begin(), orbit.end()), orbit.end());
    std::size_t id = out.orbits.size();
    for (std::size_t member : orbit) out.orbit_of[member] = id;
    out.rep_of.push_back(orbit.front());
    out.orbits.push_back(std::move(orbit));
  }

  // unique group element carrying the representative to each member
  std::vector<std::size_t> from_rep(na, 0);
  for (std::size_t v = 0; v < na; ++v) {
    std::size_t rep = out.rep_of[out.orbit_of[v]];
    bool found = false;
    for (std::size_t x = 0; x < g.order(); ++x)
      if (action.act_on_object(x, rep) == v) {
        if (found) throw InternalError("free action carries a representative twice");
        from_rep[v] = x;
        found = true;
      }
    if (!found) throw InternalError("orbit member unreachable from its representative");
  }

  std::size_t nq = out.orbits.size();
  std::vector<std::string> names;
  for (std::size_t o = 0; o < nq; ++o) names.push_back(a.object_name(out.rep_of[o]));
  out.cat = std::make_unique<TabulatedCategory>(F, std::move(names));

  // hom(oi, oj) = (+)_{b in orbit(oj)} A(rep_i, b); slot layout per pair
  struct Slot {
    std::size_t member, offset, dim;
  };
  std::vector<std::vector<Slot>> slots(nq * nq);
  for (std::size_t oi = 0; oi < nq; ++oi) {
    std::size_t a0 = out.rep_of[oi];
    for (std::size_t oj = 0; oj < nq; ++oj) {
      std::vector<std::string> labels;
      std::size_t offset = 0;
      for (std::size_t b : out.orbits[oj]) {
        std::size_t d = a.hom_dim(a0, b);
        slots[oi * nq + oj].push_back(Slot{b, offset, d});
        for (std::size_t k = 0; k < d; ++k)
          labels.push_back(a.object_name(b) + ":" + a.basis_label(a0, b, k));
        offset += d;
      }
      out.cat->set_hom(oi, oj, std::move(labels));
    }
  }
  for (std::size_t oi = 0; oi < nq; ++oi) {
    std::size_t a0 = out.rep_of[oi];
    // the representative is the smallest member, so its slot comes first
    out.cat->set_identity_index(oi, a.identity_index(a0));
  }

  // composition via the invariance rule: the component of h out of b = x.b0
  // is the x-translate of the component out of b0
  for (std::size_t oi = 0; oi < nq; ++oi) {
    std::size_t a0 = out.rep_of[oi];
    for (std::size_t oj = 0; oj < nq; ++oj) {
      std::size_t b0 = out.rep_of[oj];
      for (std::size_t om = 0; om < nq; ++om) {
        const auto& ij = slots[oi * nq + oj];
        const auto& jm = slots[oj * nq + om];
        const auto& im = slots[oi * nq + om];
        std::size_t dim_im = out.cat->hom_dim(oi, om);
        for (const Slot& sf : ij) {
          std::size_t x = from_rep[sf.member];  // x . b0 = member
          for (std::size_t kf = 0; kf < sf.dim; ++kf) {
            Vec f_coords(a.hom_dim(a0, sf.member), 0);
            f_coords[kf] = 1;
            for (const Slot& sh : jm) {
              for (std::size_t kh = 0; kh < sh.dim; ++kh) {
                Vec h_coords(a.hom_dim(b0, sh.member), 0);
                h_coords[kh] = 1;
                // translate h's component to start at sf.member
                Vec moved = action.functors[x].apply(b0, sh.member, h_coords);
                std::size_t c_target = action.act_on_object(x, sh.member);
                Vec comp = a.compose(a0, sf.member, c_target, moved, f_coords);
                Vec result(dim_im, 0);
                bool placed = false;
                for (const Slot& sm : im)
                  if (sm.member == c_target) {
                    for (std::size_t t = 0; t < comp.size(); ++t) result[sm.offset + t] = comp[t];
                    placed = true;
                  }
                if (!placed && !vec_is_zero(comp))
                  throw InternalError("quotient composition left the orbit");
                out.cat->set_composition(oi, oj, om, sh.offset + kh, sf.offset + kf,
                                         std::move(result));
              }
            }
          }
        }
        // pairs with empty blocks need no tensor entries
      }
    }
  }
  out.cat->validate();

  // projection functor: an arrow u: s -> t goes to the family generated by
  // its translate out of the representative of s's orbit
  std::vector<std::size_t> object_map(na);
  for (std::size_t v = 0; v < na; ++v) object_map[v] = out.orbit_of[v];
  std::vector<Vec> images;
  for (std::uint32_t arr = 0; arr < a.quiver().arrow_count(); ++arr) {
    const Arrow& arrow = a.quiver().arrow(arr);
    std::size_t oi = out.orbit_of[arrow.source];
    std::size_t oj = out.orbit_of[arrow.target];
    std::size_t x = g.inv(from_rep[arrow.source]);  // x . source = rep
    Vec moved = action.functors[x].apply(arrow.source, arrow.target,
                                         a.class_of_arrow(arr).coords);
    std::size_t c_target = action.act_on_object(x, arrow.target);
    Vec img(out.cat->hom_dim(oi, oj), 0);
    for (const Slot& s : slots[oi * nq + oj])
      if (s.member == c_target)
        for (std::size_t t = 0; t < moved.size(); ++t) img[s.offset + t] = moved[t];
    images.push_back(std::move(img));
  }
  out.projection = std::make_unique<LinearFunctor>(a, *out.cat, std::move(object_map),
                                                   std::move(images));

  // Galois coverings are coverings and balanced; broken certificates here
  // mean a construction bug, not bad input.
  CoveringOutcome cov = check_covering(*out.projection);
  if (!cov.ok())
    throw InternalError("galois quotient projection is not a covering: " + cov.witness);
  BalancedOutcome bal = check_balanced(*cov.certificate);
  if (!bal.balanced)
    throw InternalError("galois quotient projection is not balanced at " + bal.witness_label);
  return out;
}

std::size_t Grading::path_degree(const Path& p) const {
  std::size_t d = group->identity();
  for (std::uint32_t arr : p.arrows) d = group->mul(d, degree[arr]);
  return d;
}

GradingReport check_grading(const Grading& grading) {
  GradingReport rep;
  const BoundCategory& cat = *grading.cat;
  if (grading.degree.size() != cat.quiver().arrow_count()) {
    rep.witness = "degree map does not cover every arrow";
    return rep;
  }
  for (std::size_t d : grading.degree)
    if (d >= grading.group->order()) {
      rep.witness = "degree out of range";
      return rep;
    }
  for (const PathCombo& r : cat.relations()) {
    std::size_t d0 = grading.path_degree(r.terms[0].path);
    for (const PathTerm& t : r.terms)
      if (grading.path_degree(t.path) != d0) {
        rep.witness = "relation " + combo_label(cat.quiver(), r) + " is not homogeneous";
        return rep;
      }
  }
  rep.ok = true;
  return rep;
}

std::vector<std::size_t> graded_component(const Grading& grading, std::size_t i, std::size_t j,
                                          std::size_t g) {
  GradingReport rep = check_grading(grading);
  if (!rep.ok) throw Error("graded_component: " + rep.witness);
  std::vector<std::size_t> out;
  const BoundCategory& cat = *grading.cat;
  for (std::size_t k = 0; k < cat.hom_dim(i, j); ++k)
    if (grading.path_degree(cat.basis_path(i, j, k)) == g) out.push_back(k);
  return out;
}

SmashCategory smash_product(const BoundCategory& b, const Grading& grading) {
  GradingReport grep = check_grading(grading);
  if (!grep.ok) throw Error("smash_product: invalid grading: " + grep.witness);
  const FiniteGroup& g = *grading.group;
  const Quiver& qb = b.quiver();

  SmashCategory out;
  Quiver q;
  out.vertex_of.assign(qb.vertex_count(), std::vector<std::size_t>(g.order()));
  for (std::uint32_t i = 0; i < qb.vertex_count(); ++i)
    for (std::size_t x = 0; x < g.order(); ++x)
      out.vertex_of[i][x] = q.add_vertex(qb.vertex_name(i) + "@" + g.name(x));
  out.arrow_of.assign(qb.arrow_count(), std::vector<std::size_t>(g.order()));
  for (std::uint32_t arr = 0; arr < qb.arrow_count(); ++arr) {
    const Arrow& arrow = qb.arrow(arr);
    for (std::size_t x = 0; x < g.order(); ++x) {
      std::size_t tgt_grade = g.mul(x, grading.degree[arr]);
      out.arrow_of[arr][x] =
          q.add_arrow(arrow.name + "@" + g.name(x),
                      static_cast<std::uint32_t>(out.vertex_of[arrow.source][x]),
                      static_cast<std::uint32_t>(out.vertex_of[arrow.target][tgt_grade]));
    }
  }
  auto lift_path = [&](const Path& p, std::size_t grade) {
    Path lifted{static_cast<std::uint32_t>(out.vertex_of[p.source][grade]), {}};
    std::size_t at = grade;
    for (std::uint32_t arr : p.arrows) {
      lifted.arrows.push_back(static_cast<std::uint32_t>(out.arrow_of[arr][at]));
      at = g.mul(at, grading.degree[arr]);
    }
    return lifted;
  };
  std::vector<PathCombo> relations;
  for (const PathCombo& r : b.relations()) {
    for (std::size_t x = 0; x < g.order(); ++x) {
      PathCombo lifted;
      for (const PathTerm& t : r.terms)
        lifted.terms.push_back(PathTerm{t.coeff, lift_path(t.path, x)});
      relations.push_back(std::move(lifted));
    }
  }
  out.cat = std::make_unique<BoundCategory>(
      BoundCategory::build(b.field(), std::move(q), std::move(relations), b.bound()));

  // canonical free action t.(i,x) = (i, t*x)
  std::vector<LinearFunctor> functors;
  for (std::size_t t = 0; t < g.order(); ++t) {
    std::vector<std::size_t> object_map(out.cat->object_count());
    for (std::uint32_t i = 0; i < qb.vertex_count(); ++i)
      for (std::size_t x = 0; x < g.order(); ++x)
        object_map[out.vertex_of[i][x]] = out.vertex_of[i][g.mul(t, x)];
    std::vector<Vec> images(out.cat->quiver().arrow_count());
    for (std::uint32_t arr = 0; arr < qb.arrow_count(); ++arr)
      for (std::size_t x = 0; x < g.order(); ++x)
        images[out.arrow_of[arr][x]] =
            out.cat->class_of_arrow(static_cast<std::uint32_t>(out.arrow_of[arr][g.mul(t, x)]))
                .coords;
    functors.emplace_back(*out.cat, *out.cat, std::move(object_map), std::move(images));
  }
  out.action = std::make_unique<GroupAction>(GroupAction{&g, out.cat.get(), std::move(functors)});
  ActionReport arep = check_action(*out.action);
  if (!arep.ok) throw InternalError("canonical smash action failed validation: " + arep.witness);

  // canonical projection (i,x) -> i, (alpha,x) -> alpha
  std::vector<std::size_t> pobj(out.cat->object_count());
  for (std::uint32_t i = 0; i < qb.vertex_count(); ++i)
    for (std::size_t x = 0; x < g.order(); ++x) pobj[out.vertex_of[i][x]] = i;
  std::vector<Vec> pimg(out.cat->quiver().arrow_count());
  for (std::uint32_t arr = 0; arr < qb.arrow_count(); ++arr)
    for (std::size_t x = 0; x < g.order(); ++x)
      pimg[out.arrow_of[arr][x]] = b.class_of_arrow(arr).coords;
  out.projection =
      std::make_unique<LinearFunctor>(*out.cat, b, std::move(pobj), std::move(pimg));
  FunctorReport prep = check_functor(*out.projection);
  if (!prep.ok) throw InternalError("canonical smash projection is ill defined: " + prep.witness);

  // hom((i,x),(j,y)) should match the graded component B^{x^-1 y}(i,j)
  out.hom_dims_match_components = true;
  for (std::uint32_t i = 0; i < qb.vertex_count() && out.hom_dims_match_components; ++i)
    for (std::uint32_t j = 0; j < qb.vertex_count(); ++j)
      for (std::size_t x = 0; x < g.order(); ++x)
        for (std::size_t y = 0; y < g.order(); ++y) {
          std::size_t comp = graded_component(grading, i, j, g.mul(g.inv(x), y)).size();
          if (out.cat->hom_dim(out.vertex_of[i][x], out.vertex_of[j][y]) != comp) {
            out.hom_dims_match_components = false;
            break;
          }
        }
  return out;
}

ComparisonOutcome smash_quotient_comparison(const BoundCategory& b, const SmashCategory& smash,
                                            const Quotient& quotient) {
  ComparisonOutcome out;
  const FiniteGroup& g = *smash.action->group;
  std::size_t e = g.identity();
  std::vector<std::size_t> object_map(b.object_count());
  for (std::size_t i = 0; i < b.object_count(); ++i)
    object_map[i] = quotient.orbit_of[smash.vertex_of[i][e]];
  std::vector<Vec> images;
  for (std::uint32_t arr = 0; arr < b.quiver().arrow_count(); ++arr)
    images.push_back(quotient.projection->arrow_image(
        static_cast<std::uint32_t>(smash.arrow_of[arr][e])));
  out.functor = std::make_unique<LinearFunctor>(b, *quotient.cat, std::move(object_map),
                                                std::move(images));
  FunctorReport wd = check_functor(*out.functor);
  if (!wd.ok) {
    out.witness = "comparison functor ill defined: " + wd.witness;
    return out;
  }
  // isomorphism: bijective on objects and invertible on every hom space
  std::vector<bool> hit(quotient.cat->object_count(), false);
  for (std::size_t i = 0; i < b.object_count(); ++i) hit[out.functor->object_image(i)] = true;
  if (b.object_count() != quotient.cat->object_count() ||
      !std::all_of(hit.begin(), hit.end(), [](bool h) { return h; })) {
    out.witness = "comparison functor is not bijective on objects";
    return out;
  }
  for (std::size_t i = 0; i < b.object_count(); ++i)
    for (std::size_t j = 0; j < b.object_count(); ++j) {
      Mat m = out.functor->hom_matrix(i, j);
      if (m.rows() != m.cols() || (m.rows() > 0 && !inverse(b.field(), m))) {
        out.witness = "comparison functor is not fully faithful at (" + b.object_name(i) + ", " +
                      b.object_name(j) + ")";
        return out;
      }
    }
  out.isomorphism = true;
  return out;
}

SmashFunctorOutcome smash_functor(const LinearFunctor& f, const Grading& grading_a,
                                  const Grading& grading_b, const SmashCategory& smash_a,
                                  const SmashCategory& smash_b) {
  SmashFunctorOutcome out;
  const BoundCategory& a = f.source();
  const auto* bp = dynamic_cast<const BoundCategory*>(&f.target());
  if (!bp) throw Error("smash_functor: target category must be presented");
  const BoundCategory& b = *bp;
  const FiniteGroup& g = *grading_a.group;
  if (grading_b.group != grading_a.group) throw Error("smash_functor: gradings over different groups");

  // compatibility: F(A^d) inside B^d, arrow by arrow
  for (std::uint32_t arr = 0; arr < a.quiver().arrow_count(); ++arr) {
    std::size_t d = grading_a.degree[arr];
    std::size_t fs = f.object_image(a.quiver().arrow(arr).source);
    std::size_t ft = f.object_image(a.quiver().arrow(arr).target);
    const Vec& img = f.arrow_image(arr);
    for (std::size_t k = 0; k < img.size(); ++k) {
      if (img[k] == 0) continue;
      if (grading_b.path_degree(b.basis_path(fs, ft, k)) != d) {
        out.witness = "image of arrow '" + a.quiver().arrow(arr).name +
                      "' mixes degrees (not compatible with the gradings)";
        return out;
      }
    }
  }
  out.compatible = true;

  // (a,x) -> (Fa,x); arrow images lifted degree-wise
  std::vector<std::size_t> object_map(smash_a.cat->object_count());
  for (std::size_t v = 0; v < a.object_count(); ++v)
    for (std::size_t x = 0; x < g.order(); ++x)
      object_map[smash_a.vertex_of[v][x]] = smash_b.vertex_of[f.object_image(v)][x];
  std::vector<Vec> images(smash_a.cat->quiver().arrow_count());
  for (std::uint32_t arr = 0; arr < a.quiver().arrow_count(); ++arr) {
    std::size_t fs = f.object_image(a.quiver().arrow(arr).source);
    std::size_t ft = f.object_image(a.quiver().arrow(arr).target);
    const Vec& img = f.arrow_image(arr);
    for (std::size_t x = 0; x < g.order(); ++x) {
      PathCombo lifted;
      for (std::size_t k = 0; k < img.size(); ++k) {
        if (img[k] == 0) continue;
        const Path& p = b.basis_path(fs, ft, k);
        Path lp{static_cast<std::uint32_t>(smash_b.vertex_of[p.source][x]), {}};
        std::size_t at = x;
        for (std::uint32_t barr : p.arrows) {
          lp.arrows.push_back(static_cast<std::uint32_t>(smash_b.arrow_of[barr][at]));
          at = g.mul(at, grading_b.degree[barr]);
        }
        lifted.terms.push_back(PathTerm{img[k], std::move(lp)});
      }
      Vec coords(smash_b.cat->hom_dim(object_map[smash_a.vertex_of[a.quiver().arrow(arr).source][x]],
                                      object_map[smash_a.vertex_of[a.quiver().arrow(arr).target]
                                                                  [g.mul(x, grading_a.degree[arr])]]),
                 0);
      if (!lifted.terms.empty()) coords = smash_b.cat->reduce_combo(lifted);
      images[smash_a.arrow_of[arr][x]] = std::move(coords);
    }
  }
  LinearFunctor fg(*smash_a.cat, *smash_b.cat, std::move(object_map), std::move(images));
  FunctorReport wd = check_functor(fg);
  if (!wd.ok) {
    out.witness = "F#G is not well defined: " + wd.witness;
    return out;
  }

  // the square against the canonical projections commutes on every arrow
  out.square_commutes = true;
  for (std::uint32_t arr = 0; arr < a.quiver().arrow_count() && out.square_commutes; ++arr) {
    std::size_t s = a.quiver().arrow(arr).source, t = a.quiver().arrow(arr).target;
    for (std::size_t x = 0; x < g.order(); ++x) {
      std::size_t sa = smash_a.vertex_of[s][x];
      std::size_t ta = smash_a.vertex_of[t][g.mul(x, grading_a.degree[arr])];
      Vec lhs = smash_b.projection->apply(fg.object_image(sa), fg.object_image(ta),
                                          fg.arrow_image(smash_a.arrow_of[arr][x]));
      // the canonical quotient sends (alpha,x) to the class of alpha
      Vec rhs = f.apply(s, t, a.class_of_arrow(arr).coords);
      if (lhs != rhs) {
        out.square_commutes = false;
        out.witness = "square fails at arrow " + a.quiver().arrow(arr).name + "@" + g.name(x);
      }
    }
  }
  out.functor = std::move(fg);
  return out;
}

InducedGradingOutcome induce_grading_schurian(const CoveringCertificate& cert,
                                              const Grading& grading_b) {
  InducedGradingOutcome out;
  const LinearFunctor& f = cert.functor();
  const auto* bp = dynamic_cast<const BoundCategory*>(&f.target());
  if (!bp || grading_b.cat != bp)
    throw Error("induce_grading_schurian: grading must live on the covering's presented target");
  const BoundCategory& b = *bp;
  if (!is_schurian(b)) {
    out.witness = "target category is not schurian";
    return out;
  }
  const BoundCategory& a = f.source();
  std::vector<std::size_t> degree(a.quiver().arrow_count());
  for (std::uint32_t arr = 0; arr < a.quiver().arrow_count(); ++arr) {
    std::size_t fs = f.object_image(a.quiver().arrow(arr).source);
    std::size_t ft = f.object_image(a.quiver().arrow(arr).target);
    const Vec& img = f.arrow_image(arr);
    if (img.size() != 1 || img[0] == 0)
      throw InternalError("covering onto a schurian target with a degenerate arrow image");
    degree[arr] = grading_b.path_degree(b.basis_path(fs, ft, 0));
  }
  Grading ga{&a, grading_b.group, std::move(degree)};
  GradingReport grep = check_grading(ga);
  if (!grep.ok) {
    out.witness = "induced degrees are not homogeneous: " + grep.witness;
    return out;
  }
  out.compatible = true;  // by construction each arrow image sits in its degree
  out.grading = std::move(ga);
  return out;
}

TowerOutcome grading_from_schurian_galois(const BoundCategory& a, const BoundCategory& b,
                                          const BoundCategory& bprime, const QuiverMap& f_map,
                                          const QuiverMap& galois_map, const GroupAction& action) {
  TowerOutcome out;
  if (!is_schurian(bprime)) {
    out.witness = "the Galois source is not schurian";
    return out;
  }
  StarOutcome star_f = check_quiver_covering_map(a.quiver(), b.quiver(), f_map);
  StarOutcome star_g = check_quiver_covering_map(bprime.quiver(), b.quiver(), galois_map);
  if (!star_f.ok || !star_g.ok) {
    out.witness = "not induced from covering maps of quivers: " +
                  (star_f.ok ? star_g.witness : star_f.witness);
    return out;
  }
  ActionReport arep = check_action(action);
  if (!arep.ok || action.cat != &bprime) {
    out.witness = "invalid action on the Galois source: " + arep.witness;
    return out;
  }
  const FiniteGroup& g = *action.group;
  const Quiver& qp = bprime.quiver();

  // the action must permute arrows (quiver automorphisms) for path lifting
  std::vector<std::vector<std::size_t>> arrow_perm(g.order(),
                                                   std::vector<std::size_t>(qp.arrow_count()));
  for (std::size_t x = 0; x < g.order(); ++x)
    for (std::uint32_t arr = 0; arr < qp.arrow_count(); ++arr) {
      const Vec& img = action.functors[x].arrow_image(arr);
      bool found = false;
      for (std::uint32_t cand = 0; cand < qp.arrow_count() && !found; ++cand) {
        if (qp.arrow(cand).source != action.act_on_object(x, qp.arrow(arr).source)) continue;
        if (bprime.class_of_arrow(cand).coords == img &&
            qp.arrow(cand).target == action.act_on_object(x, qp.arrow(arr).target)) {
          arrow_perm[x][arr] = cand;
          found = true;
        }
      }
      if (!found) {
        out.witness = "action is not by quiver automorphisms (arrow " + qp.arrow(arr).name + ")";
        return out;
      }
    }
  // equivariance of the Galois map and orbit/fiber agreement
  for (std::size_t x = 0; x < g.order(); ++x) {
    for (std::uint32_t v = 0; v < qp.vertex_count(); ++v)
      if (galois_map.vertex_map[action.act_on_object(x, v)] != galois_map.vertex_map[v]) {
        out.witness = "action does not preserve the fibers of the Galois map";
        return out;
      }
    for (std::uint32_t arr = 0; arr < qp.arrow_count(); ++arr)
      if (galois_map.arrow_map[arrow_perm[x][arr]] != galois_map.arrow_map[arr]) {
        out.witness = "action does not preserve the arrow fibers of the Galois map";
        return out;
      }
  }
  for (std::uint32_t i = 0; i < b.quiver().vertex_count(); ++i) {
    std::vector<std::size_t> fiber;
    for (std::uint32_t v = 0; v < qp.vertex_count(); ++v)
      if (galois_map.vertex_map[v] == i) fiber.push_back(v);
    if (fiber.empty()) {
      out.witness = "Galois map misses a vertex";
      return out;
    }
    std::vector<std::size_t> orbit;
    for (std::size_t x = 0; x < g.order(); ++x)
      orbit.push_back(action.act_on_object(x, fiber.front()));
    std::sort(orbit.begin(), orbit.end());
    orbit.erase(std::unique(orbit.begin(), orbit.end()), orbit.end());
    if (orbit != fiber) {
      out.witness = "fibers of the Galois map are not single orbits";
      return out;
    }
  }

  // chosen lifts: first fiber vertex in file order
  std::vector<std::size_t> lift_of(b.quiver().vertex_count());
  for (std::uint32_t i = 0; i < b.quiver().vertex_count(); ++i)
    for (std::uint32_t v = 0; v < qp.vertex_count(); ++v)
      if (galois_map.vertex_map[v] == i) {
        lift_of[i] = v;
        break;
      }
  std::string note = "fiber representatives:";
  for (std::uint32_t i = 0; i < b.quiver().vertex_count(); ++i)
    note += " " + b.quiver().vertex_name(i) + "->" + qp.vertex_name(static_cast<std::uint32_t>(lift_of[i]));
  out.representative_note = note;

  // grading on B: lift each arrow at the chosen representative of its source
  auto lift_arrow_at = [&](std::size_t barrow, std::size_t source_lift) {
    for (std::uint32_t cand : qp.out_arrows(static_cast<std::uint32_t>(source_lift)))
      if (galois_map.arrow_map[cand] == barrow) return static_cast<std::size_t>(cand);
    throw InternalError("unique path lifting failed");
  };
  std::vector<std::size_t> degree_b(b.quiver().arrow_count());
  for (std::uint32_t barr = 0; barr < b.quiver().arrow_count(); ++barr) {
    const Arrow& arrow = b.quiver().arrow(barr);
    std::size_t lifted = lift_arrow_at(barr, lift_of[arrow.source]);
    std::size_t t = qp.arrow(static_cast<std::uint32_t>(lifted)).target;
    std::size_t jlift = lift_of[arrow.target];
    bool found = false;
    for (std::size_t x = 0; x < g.order() && !found; ++x)
      if (action.act_on_object(x, jlift) == t) {
        degree_b[barr] = x;
        found = true;
      }
    if (!found) {
      out.witness = "lifted arrow target is not in the orbit of the chosen representative";
      return out;
    }
  }
  Grading gb{&b, &g, degree_b};
  GradingReport grep_b = check_grading(gb);
  if (!grep_b.ok) {
    out.witness = "grading on the base is not homogeneous: " + grep_b.witness;
    return out;
  }

  // grading on A: pull back along the quiver map
  std::vector<std::size_t> degree_a(a.quiver().arrow_count());
  for (std::uint32_t arr = 0; arr < a.quiver().arrow_count(); ++arr)
    degree_a[arr] = degree_b[f_map.arrow_map[arr]];
  Grading ga{&a, &g, degree_a};
  GradingReport grep_a = check_grading(ga);
  if (!grep_a.ok) {
    out.witness = "grading on the cover is not homogeneous: " + grep_a.witness;
    return out;
  }

  // comparison functor A#G -> B'
  out.smash_a = std::make_unique<SmashCategory>(smash_product(a, ga));
  std::vector<std::size_t> object_map(out.smash_a->cat->object_count());
  for (std::size_t v = 0; v < a.object_count(); ++v)
    for (std::size_t x = 0; x < g.order(); ++x)
      object_map[out.smash_a->vertex_of[v][x]] =
          action.act_on_object(x, lift_of[f_map.vertex_map[v]]);
  std::vector<Vec> images(out.smash_a->cat->quiver().arrow_count());
  for (std::uint32_t arr = 0; arr < a.quiver().arrow_count(); ++arr) {
    std::size_t s = a.quiver().arrow(arr).source;
    std::size_t lifted = lift_arrow_at(f_map.arrow_map[arr], lift_of[f_map.vertex_map[s]]);
    for (std::size_t x = 0; x < g.order(); ++x) {
      std::size_t moved = arrow_perm[x][lifted];
      images[out.smash_a->arrow_of[arr][x]] =
          bprime.class_of_arrow(static_cast<std::uint32_t>(moved)).coords;
    }
  }
  out.comparison = std::make_unique<LinearFunctor>(*out.smash_a->cat, bprime,
                                                   std::move(object_map), std::move(images));
  FunctorReport wd = check_functor(*out.comparison);
  if (!wd.ok) {
    out.witness = "comparison functor A#G -> B' is ill defined: " + wd.witness;
    return out;
  }

  // square: F' . comparison = F . (canonical projection A#G -> A)
  InducedOutcome find_f = induced_functor(a, b, f_map);
  InducedOutcome find_fp = induced_functor(bprime, b, galois_map);
  if (!find_f.functor || !find_fp.functor) {
    out.witness = "induced functors could not be built";
    return out;
  }
  out.square_commutes = true;
  for (std::uint32_t arr = 0; arr < a.quiver().arrow_count() && out.square_commutes; ++arr) {
    std::size_t s = a.quiver().arrow(arr).source, t = a.quiver().arrow(arr).target;
    for (std::size_t x = 0; x < g.order(); ++x) {
      std::size_t sa = out.smash_a->vertex_of[s][x];
      std::size_t ta = out.smash_a->vertex_of[t][g.mul(x, ga.degree[arr])];
      Vec lhs = find_fp.functor->apply(out.comparison->object_image(sa),
                                       out.comparison->object_image(ta),
                                       out.comparison->arrow_image(out.smash_a->arrow_of[arr][x]));
      Vec rhs = find_f.functor->apply(s, t, a.class_of_arrow(arr).coords);
      if (lhs != rhs) {
        out.square_commutes = false;
        out.witness = "tower square fails at arrow " + a.quiver().arrow(arr).name;
      }
    }
  }
  out.grading_a = std::move(ga);
  out.grading_b = std::move(gb);
  return out;
}

}  // namespace qcov
