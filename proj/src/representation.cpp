#include "qcov/representation.hpp"

#include <algorithm>
#include <functional>

namespace qcov {

namespace {

void check_dims(const Category& cat, const std::vector<std::size_t>& dims) {
  if (dims.size() != cat.object_count())
    throw Error("representation: dimension vector length mismatch");
}

}  // namespace

std::size_t Representation::total_dim() const {
  std::size_t t = 0;
  for (std::size_t d : dims_) t += d;
  return t;
}

Mat Representation::evaluate(std::size_t a, std::size_t b, const Vec& coords) const {
  if (coords.size() != cat_->hom_dim(a, b)) throw Error("evaluate: coordinate length mismatch");
  Mat m(dims_[b], dims_[a]);
  const PrimeField& F = cat_->field();
  for (std::size_t k = 0; k < coords.size(); ++k) {
    if (coords[k] == 0) continue;
    const Mat& basis = action(a, b, k);
    for (std::size_t i = 0; i < m.rows(); ++i)
      for (std::size_t j = 0; j < m.cols(); ++j)
        m(i, j) = F.add(m(i, j), F.mul(coords[k], basis(i, j)));
  }
  return m;
}

Mat Representation::arrow_matrix(std::uint32_t arrow) const {
  const auto* bc = dynamic_cast<const BoundCategory*>(cat_);
  if (!bc) throw Error("arrow_matrix: category is not presented by a quiver");
  return evaluate(bc->class_of_arrow(arrow));
}

Representation Representation::from_arrow_matrices(const BoundCategory& cat,
                                                   std::vector<std::size_t> dims,
                                                   std::vector<Mat> arrow_matrices) {
  check_dims(cat, dims);
  const Quiver& q = cat.quiver();
  if (arrow_matrices.size() != q.arrow_count())
    throw Error("representation: arrow matrix count mismatch");
  for (std::uint32_t a = 0; a < q.arrow_count(); ++a) {
    if (arrow_matrices[a].rows() != dims[q.arrow(a).target] ||
        arrow_matrices[a].cols() != dims[q.arrow(a).source])
      throw Error("representation: matrix for arrow '" + q.arrow(a).name + "' has shape " +
                  std::to_string(arrow_matrices[a].rows()) + "x" +
                  std::to_string(arrow_matrices[a].cols()) + ", expected " +
                  std::to_string(dims[q.arrow(a).target]) + "x" +
                  std::to_string(dims[q.arrow(a).source]));
  }
  const PrimeField& F = cat.field();
  auto path_product = [&](const Path& p) {
    Mat m = Mat::identity(dims[p.source]);
    for (std::uint32_t arr : p.arrows) m = mat_mul(F, arrow_matrices[arr], m);
    return m;
  };
  for (const PathCombo& rel : cat.relations()) {
    std::size_t s = rel.terms[0].path.source, t = rel.terms[0].path.target(q);
    Mat sum(dims[t], dims[s]);
    for (const PathTerm& term : rel.terms)
      sum = mat_add(F, sum, mat_scale(F, term.coeff, path_product(term.path)));
    if (!sum.is_zero())
      throw Error("representation does not satisfy the relation " + combo_label(q, rel));
  }
  // Truncation: every product of n arrows must vanish.
  std::function<void(Path&)> walk = [&](Path& cur) {
    if (cur.length() == cat.bound()) {
      if (!path_product(cur).is_zero())
        throw Error("representation does not kill the length-" + std::to_string(cat.bound()) +
                    " path " + path_label(q, cur));
      return;
    }
    for (std::uint32_t a : q.out_arrows(cur.target(q))) {
      cur.arrows.push_back(a);
      walk(cur);
      cur.arrows.pop_back();
    }
  };
  for (std::uint32_t v = 0; v < q.vertex_count(); ++v) {
    Path cur{v, {}};
    walk(cur);
  }

  Representation rep;
  rep.cat_ = &cat;
  std::size_t n = cat.object_count();
  rep.act_.resize(n * n);
  for (std::size_t a = 0; a < n; ++a)
    for (std::size_t b = 0; b < n; ++b) {
      rep.act_[a * n + b].reserve(cat.hom_dim(a, b));
      for (std::size_t k = 0; k < cat.hom_dim(a, b); ++k)
        rep.act_[a * n + b].push_back(path_product(cat.basis_path(a, b, k)));
    }
  rep.dims_ = std::move(dims);
  return rep;
}

Representation Representation::from_action(const Category& cat, std::vector<std::size_t> dims,
                                           std::vector<std::vector<std::vector<Mat>>> action) {
  check_dims(cat, dims);
  std::size_t n = cat.object_count();
  Representation rep;
  rep.cat_ = &cat;
  rep.dims_ = std::move(dims);
  rep.act_.resize(n * n);
  if (action.size() != n) throw Error("from_action: tensor shape mismatch");
  for (std::size_t a = 0; a < n; ++a) {
    if (action[a].size() != n) throw Error("from_action: tensor shape mismatch");
    for (std::size_t b = 0; b < n; ++b) {
      if (action[a][b].size() != cat.hom_dim(a, b))
        throw Error("from_action: basis count mismatch");
      for (const Mat& m : action[a][b])
        if (m.rows() != rep.dims_[b] || m.cols() != rep.dims_[a])
          throw Error("from_action: matrix shape mismatch");
      rep.act_[a * n + b] = std::move(action[a][b]);
    }
  }
  // Identity and compositivity on all basis pairs; bilinearity extends this
  // to all morphisms.
  const PrimeField& F = cat.field();
  for (std::size_t a = 0; a < n; ++a)
    if (rep.evaluate(a, a, cat.identity_coords(a)) != Mat::identity(rep.dims_[a]))
      throw Error("from_action: identity of " + cat.object_name(a) +
                  " does not act as the identity");
  for (std::size_t a = 0; a < n; ++a)
    for (std::size_t b = 0; b < n; ++b)
      for (std::size_t c = 0; c < n; ++c)
        for (std::size_t kf = 0; kf < cat.hom_dim(a, b); ++kf)
          for (std::size_t kg = 0; kg < cat.hom_dim(b, c); ++kg) {
            Vec f(cat.hom_dim(a, b), 0), g(cat.hom_dim(b, c), 0);
            f[kf] = 1;
            g[kg] = 1;
            Mat lhs = rep.evaluate(a, c, cat.compose(a, b, c, g, f));
            Mat rhs = mat_mul(F, rep.action(b, c, kg), rep.action(a, b, kf));
            if (lhs != rhs) throw Error("from_action: action is not compatible with composition");
          }
  return rep;
}

Representation zero_representation(const Category& cat) {
  std::size_t n = cat.object_count();
  std::vector<std::vector<std::vector<Mat>>> act(n, std::vector<std::vector<Mat>>(n));
  for (std::size_t a = 0; a < n; ++a)
    for (std::size_t b = 0; b < n; ++b) act[a][b].assign(cat.hom_dim(a, b), Mat(0, 0));
  return Representation::from_action(cat, std::vector<std::size_t>(n, 0), std::move(act));
}

Representation simple_representation(const Category& cat, std::size_t at) {
  std::size_t n = cat.object_count();
  std::vector<std::size_t> dims(n, 0);
  dims[at] = 1;
  std::vector<std::vector<std::vector<Mat>>> act(n, std::vector<std::vector<Mat>>(n));
  for (std::size_t a = 0; a < n; ++a)
    for (std::size_t b = 0; b < n; ++b) {
      for (std::size_t k = 0; k < cat.hom_dim(a, b); ++k) {
        Mat m(dims[b], dims[a]);
        if (a == at && b == at && k == cat.identity_index(at)) m(0, 0) = 1;
        act[a][b].push_back(std::move(m));
      }
    }
  return Representation::from_action(cat, std::move(dims), std::move(act));
}

Representation projective_representation(const Category& cat, std::size_t a0) {
  std::size_t n = cat.object_count();
  std::vector<std::size_t> dims(n);
  for (std::size_t x = 0; x < n; ++x) dims[x] = cat.hom_dim(a0, x);
  std::vector<std::vector<std::vector<Mat>>> act(n, std::vector<std::vector<Mat>>(n));
  for (std::size_t x = 0; x < n; ++x)
    for (std::size_t y = 0; y < n; ++y)
      for (std::size_t k = 0; k < cat.hom_dim(x, y); ++k) {
        Vec g(cat.hom_dim(x, y), 0);
        g[k] = 1;
        Mat m(dims[y], dims[x]);
        for (std::size_t h = 0; h < dims[x]; ++h) {
          Vec hv(dims[x], 0);
          hv[h] = 1;
          m.set_col(h, cat.compose(a0, x, y, g, hv));
        }
        act[x][y].push_back(std::move(m));
      }
  return Representation::from_action(cat, std::move(dims), std::move(act));
}

Representation injective_representation(const Category& cat, std::size_t b0) {
  std::size_t n = cat.object_count();
  std::vector<std::size_t> dims(n);
  for (std::size_t x = 0; x < n; ++x) dims[x] = cat.hom_dim(x, b0);
  std::vector<std::vector<std::vector<Mat>>> act(n, std::vector<std::vector<Mat>>(n));
  for (std::size_t x = 0; x < n; ++x)
    for (std::size_t y = 0; y < n; ++y)
      for (std::size_t k = 0; k < cat.hom_dim(x, y); ++k) {
        Vec g(cat.hom_dim(x, y), 0);
        g[k] = 1;
        // Pre-composition Hom(y,b0) -> Hom(x,b0), transposed.
        Mat pre(dims[x], dims[y]);
        for (std::size_t h = 0; h < dims[y]; ++h) {
          Vec hv(dims[y], 0);
          hv[h] = 1;
          pre.set_col(h, cat.compose(x, y, b0, hv, g));
        }
        act[x][y].push_back(transpose(pre));
      }
  return Representation::from_action(cat, std::move(dims), std::move(act));
}

bool is_rep_morphism(const RepMorphism& u) {
  if (!u.source || !u.target) return false;
  const Category& cat = u.source->category();
  if (&cat != &u.target->category()) return false;
  std::size_t n = cat.object_count();
  if (u.components.size() != n) return false;
  for (std::size_t a = 0; a < n; ++a)
    if (u.components[a].rows() != u.target->dim(a) || u.components[a].cols() != u.source->dim(a))
      return false;
  const PrimeField& F = cat.field();
  for (const auto& g : cat.generators()) {
    Mat lhs = mat_mul(F, u.components[g.target], u.source->evaluate(g.source, g.target, g.coords));
    Mat rhs = mat_mul(F, u.target->evaluate(g.source, g.target, g.coords), u.components[g.source]);
    if (lhs != rhs) return false;
  }
  return true;
}

RepMorphism identity_rep_morphism(const Representation& x) {
  RepMorphism u;
  u.source = &x;
  u.target = &x;
  for (std::size_t a = 0; a < x.category().object_count(); ++a)
    u.components.push_back(Mat::identity(x.dim(a)));
  return u;
}

RepMorphism compose(const RepMorphism& g, const RepMorphism& f) {
  if (g.source != f.target) throw Error("rep morphism compose: endpoint mismatch");
  const PrimeField& F = f.source->category().field();
  RepMorphism out;
  out.source = f.source;
  out.target = g.target;
  for (std::size_t a = 0; a < f.components.size(); ++a)
    out.components.push_back(mat_mul(F, g.components[a], f.components[a]));
  return out;
}

RepMorphism add(const RepMorphism& a, const RepMorphism& b) {
  if (a.source != b.source || a.target != b.target) throw Error("rep morphism add: mismatch");
  const PrimeField& F = a.source->category().field();
  RepMorphism out;
  out.source = a.source;
  out.target = a.target;
  for (std::size_t i = 0; i < a.components.size(); ++i)
    out.components.push_back(mat_add(F, a.components[i], b.components[i]));
  return out;
}

RepMorphism scale(fp_t c, const RepMorphism& a) {
  const PrimeField& F = a.source->category().field();
  RepMorphism out;
  out.source = a.source;
  out.target = a.target;
  for (const Mat& m : a.components) out.components.push_back(mat_scale(F, c, m));
  return out;
}

bool is_zero(const RepMorphism& u) {
  return std::all_of(u.components.begin(), u.components.end(),
                     [](const Mat& m) { return m.is_zero(); });
}

bool is_identity(const RepMorphism& u) {
  if (u.source->dims() != u.target->dims()) return false;
  for (std::size_t a = 0; a < u.components.size(); ++a)
    if (u.components[a] != Mat::identity(u.source->dim(a))) return false;
  return true;
}

std::vector<RepMorphism> hom_space(const Representation& x, const Representation& y) {
  const Category& cat = x.category();
  if (&cat != &y.category()) throw Error("hom_space: representations over different categories");
  const PrimeField& F = cat.field();
  std::size_t n = cat.object_count();

  std::vector<std::size_t> offset(n + 1, 0);
  for (std::size_t a = 0; a < n; ++a) offset[a + 1] = offset[a] + y.dim(a) * x.dim(a);
  std::size_t unknowns = offset[n];

  std::vector<Vec> rows;
  for (const auto& g : cat.generators()) {
    Mat xg = x.evaluate(g.source, g.target, g.coords);
    Mat yg = y.evaluate(g.source, g.target, g.coords);
    // u_t X(g) - Y(g) u_s = 0, entrywise
    for (std::size_t i = 0; i < y.dim(g.target); ++i)
      for (std::size_t j = 0; j < x.dim(g.source); ++j) {
        Vec row(unknowns, 0);
        for (std::size_t k = 0; k < x.dim(g.target); ++k)
          row[offset[g.target] + i * x.dim(g.target) + k] =
              F.add(row[offset[g.target] + i * x.dim(g.target) + k], xg(k, j));
        for (std::size_t k = 0; k < y.dim(g.source); ++k)
          row[offset[g.source] + k * x.dim(g.source) + j] =
              F.sub(row[offset[g.source] + k * x.dim(g.source) + j], yg(i, k));
        rows.push_back(std::move(row));
      }
  }
  std::size_t n_rows = rows.size();
  Mat system = Mat::from_rows(n_rows, unknowns, std::move(rows));
  Mat kernel = kernel_basis(F, system);

  std::vector<RepMorphism> basis;
  for (std::size_t col = 0; col < kernel.cols(); ++col) {
    RepMorphism u;
    u.source = &x;
    u.target = &y;
    for (std::size_t a = 0; a < n; ++a) {
      Mat m(y.dim(a), x.dim(a));
      for (std::size_t i = 0; i < y.dim(a); ++i)
        for (std::size_t j = 0; j < x.dim(a); ++j)
          m(i, j) = kernel(offset[a] + i * x.dim(a) + j, col);
      u.components.push_back(std::move(m));
    }
    basis.push_back(std::move(u));
  }
  return basis;
}

DirectSum direct_sum(const std::vector<const Representation*>& parts) {
  if (parts.empty()) throw Error("direct_sum: empty part list");
  const Category& cat = parts[0]->category();
  for (const Representation* p : parts)
    if (&p->category() != &cat) throw Error("direct_sum: mixed categories");
  std::size_t n = cat.object_count();
  std::vector<std::size_t> dims(n, 0);
  std::vector<std::vector<std::size_t>> offsets(parts.size(), std::vector<std::size_t>(n, 0));
  for (std::size_t p = 0; p < parts.size(); ++p)
    for (std::size_t a = 0; a < n; ++a) {
      offsets[p][a] = dims[a];
      dims[a] += parts[p]->dim(a);
    }
  std::vector<std::vector<std::vector<Mat>>> act(n, std::vector<std::vector<Mat>>(n));
  for (std::size_t a = 0; a < n; ++a)
    for (std::size_t b = 0; b < n; ++b)
      for (std::size_t k = 0; k < cat.hom_dim(a, b); ++k) {
        Mat m(dims[b], dims[a]);
        for (std::size_t p = 0; p < parts.size(); ++p) {
          const Mat& block = parts[p]->action(a, b, k);
          for (std::size_t i = 0; i < block.rows(); ++i)
            for (std::size_t j = 0; j < block.cols(); ++j)
              m(offsets[p][b] + i, offsets[p][a] + j) = block(i, j);
        }
        act[a][b].push_back(std::move(m));
      }
  DirectSum out;
  out.rep = std::make_shared<Representation>(Representation::from_action(cat, dims, std::move(act)));
  for (std::size_t p = 0; p < parts.size(); ++p) {
    RepMorphism inc, proj;
    inc.source = parts[p];
    inc.target = out.rep.get();
    proj.source = out.rep.get();
    proj.target = parts[p];
    for (std::size_t a = 0; a < n; ++a) {
      Mat in(dims[a], parts[p]->dim(a));
      Mat pr(parts[p]->dim(a), dims[a]);
      for (std::size_t i = 0; i < parts[p]->dim(a); ++i) {
        in(offsets[p][a] + i, i) = 1;
        pr(i, offsets[p][a] + i) = 1;
      }
      inc.components.push_back(std::move(in));
      proj.components.push_back(std::move(pr));
    }
    out.inclusions.push_back(std::move(inc));
    out.projections.push_back(std::move(proj));
  }
  return out;
}

namespace {

// Per object: a basis matrix U_b of rad(X)(b) and a completion [U|C] with
// inverse, giving coordinates (radical part, complement part).
struct RadicalBases {
  std::vector<Mat> u, p, pinv;
  std::vector<std::size_t> rdim;
};

RadicalBases radical_bases(const Representation& x) {
  const Category& cat = x.category();
  const PrimeField& F = cat.field();
  std::size_t n = cat.object_count();
  RadicalBases rb;
  rb.u.resize(n);
  rb.p.resize(n);
  rb.pinv.resize(n);
  rb.rdim.resize(n);
  for (std::size_t b = 0; b < n; ++b) {
    RowSpace span(F, x.dim(b));
    for (std::size_t a = 0; a < n; ++a)
      for (std::size_t k = 0; k < cat.hom_dim(a, b); ++k) {
        if (a == b && k == cat.identity_index(a)) continue;
        const Mat& m = x.action(a, b, k);
        for (std::size_t j = 0; j < m.cols(); ++j) span.insert(m.col(j));
      }
    rb.rdim[b] = span.dim();
    Mat u(x.dim(b), span.dim());
    for (std::size_t r = 0; r < span.dim(); ++r)
      for (std::size_t i = 0; i < x.dim(b); ++i) u(i, r) = span.rows()[r][i];
    auto [p, pinv] = complete_basis(F, u);
    rb.u[b] = std::move(u);
    rb.p[b] = std::move(p);
    rb.pinv[b] = std::move(pinv);
  }
  return rb;
}

}  // namespace

SubRep radical(const Representation& x) {
  const Category& cat = x.category();
  const PrimeField& F = cat.field();
  std::size_t n = cat.object_count();
  RadicalBases rb = radical_bases(x);
  std::vector<std::vector<std::vector<Mat>>> act(n, std::vector<std::vector<Mat>>(n));
  for (std::size_t a = 0; a < n; ++a)
    for (std::size_t b = 0; b < n; ++b)
      for (std::size_t k = 0; k < cat.hom_dim(a, b); ++k) {
        // coordinates of X(g) U_a in the U_b basis
        Mat moved = mat_mul(F, x.action(a, b, k), rb.u[a]);
        Mat coords = mat_mul(F, rb.pinv[b], moved);
        Mat m(rb.rdim[b], rb.rdim[a]);
        for (std::size_t i = 0; i < rb.rdim[b]; ++i)
          for (std::size_t j = 0; j < rb.rdim[a]; ++j) m(i, j) = coords(i, j);
        for (std::size_t i = rb.rdim[b]; i < coords.rows(); ++i)
          for (std::size_t j = 0; j < rb.rdim[a]; ++j)
            if (coords(i, j) != 0)
              throw InternalError("radical is not preserved by the action");
        act[a][b].push_back(std::move(m));
      }
  std::vector<std::size_t> dims = rb.rdim;
  SubRep out;
  out.rep = std::make_shared<Representation>(Representation::from_action(cat, dims, std::move(act)));
  out.inclusion.source = out.rep.get();
  out.inclusion.target = &x;
  out.inclusion.components = rb.u;
  return out;
}

QuotientRep top(const Representation& x) {
  const Category& cat = x.category();
  const PrimeField& F = cat.field();
  std::size_t n = cat.object_count();
  RadicalBases rb = radical_bases(x);
  std::vector<std::size_t> dims(n);
  std::vector<Mat> q(n), c(n);
  for (std::size_t b = 0; b < n; ++b) {
    dims[b] = x.dim(b) - rb.rdim[b];
    Mat qb(dims[b], x.dim(b));
    for (std::size_t i = 0; i < dims[b]; ++i)
      for (std::size_t j = 0; j < x.dim(b); ++j) qb(i, j) = rb.pinv[b](rb.rdim[b] + i, j);
    Mat cb(x.dim(b), dims[b]);
    for (std::size_t i = 0; i < x.dim(b); ++i)
      for (std::size_t j = 0; j < dims[b]; ++j) cb(i, j) = rb.p[b](i, rb.rdim[b] + j);
    q[b] = std::move(qb);
    c[b] = std::move(cb);
  }
  std::vector<std::vector<std::vector<Mat>>> act(n, std::vector<std::vector<Mat>>(n));
  for (std::size_t a = 0; a < n; ++a)
    for (std::size_t b = 0; b < n; ++b)
      for (std::size_t k = 0; k < cat.hom_dim(a, b); ++k)
        act[a][b].push_back(mat_mul(F, q[b], mat_mul(F, x.action(a, b, k), c[a])));
  QuotientRep out;
  out.rep = std::make_shared<Representation>(Representation::from_action(cat, dims, std::move(act)));
  out.projection.source = &x;
  out.projection.target = out.rep.get();
  out.projection.components = q;
  return out;
}

Representation random_representation(const Category& cat, std::uint64_t seed,
                                     std::size_t max_total) {
  std::mt19937_64 rng(seed);
  std::size_t n = cat.object_count();
  const PrimeField& F = cat.field();

  std::vector<Representation> pool;
  for (std::size_t a = 0; a < n; ++a) pool.push_back(simple_representation(cat, a));
  for (std::size_t a = 0; a < n; ++a) pool.push_back(projective_representation(cat, a));
  for (std::size_t a = 0; a < n; ++a) pool.push_back(injective_representation(cat, a));

  std::vector<const Representation*> chosen;
  std::uniform_int_distribution<std::size_t> pick(0, pool.size() - 1);
  std::size_t total = 0;
  for (int attempts = 0; attempts < 64 && chosen.size() < 4; ++attempts) {
    const Representation& cand = pool[pick(rng)];
    if (cand.total_dim() == 0) continue;
    if (total + cand.total_dim() > max_total) continue;
    chosen.push_back(&cand);
    total += cand.total_dim();
  }
  if (chosen.empty()) {
    for (std::size_t a = 0; a < n && chosen.empty(); ++a)
      if (pool[a].total_dim() <= max_total && pool[a].total_dim() > 0) chosen.push_back(&pool[a]);
  }
  if (chosen.empty()) return zero_representation(cat);
  DirectSum sum = direct_sum(chosen);
  const Representation& plain = *sum.rep;

  // Conjugate by random invertible matrices so the summand structure is not
  // visible in the coordinates.
  std::uniform_int_distribution<fp_t> entry(0, F.p() - 1);
  std::vector<Mat> qmats(n), qinv(n);
  for (std::size_t a = 0; a < n; ++a) {
    std::size_t d = plain.dim(a);
    while (true) {
      Mat m(d, d);
      for (std::size_t i = 0; i < d; ++i)
        for (std::size_t j = 0; j < d; ++j) m(i, j) = entry(rng);
      auto inv = inverse(F, m);
      if (inv) {
        qmats[a] = std::move(m);
        qinv[a] = std::move(*inv);
        break;
      }
    }
  }
  std::vector<std::vector<std::vector<Mat>>> act(n, std::vector<std::vector<Mat>>(n));
  for (std::size_t a = 0; a < n; ++a)
    for (std::size_t b = 0; b < n; ++b)
      for (std::size_t k = 0; k < cat.hom_dim(a, b); ++k)
        act[a][b].push_back(mat_mul(F, qmats[b], mat_mul(F, plain.action(a, b, k), qinv[a])));
  return Representation::from_action(cat, plain.dims(), std::move(act));
}

RepMorphism random_hom_element(const Representation& x, const Representation& y,
                               std::mt19937_64& rng) {
  std::vector<RepMorphism> basis = hom_space(x, y);
  RepMorphism out;
  out.source = &x;
  out.target = &y;
  for (std::size_t a = 0; a < x.category().object_count(); ++a)
    out.components.push_back(Mat(y.dim(a), x.dim(a)));
  const PrimeField& F = x.category().field();
  std::uniform_int_distribution<fp_t> coeff(0, F.p() - 1);
  for (const RepMorphism& b : basis) out = add(out, scale(coeff(rng), b));
  return out;
}

}  // namespace qcov
