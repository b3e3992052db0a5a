#include "qcov/krullschmidt.hpp"

#include <algorithm>
#include <deque>

namespace qcov {

namespace {

Vec flatten(const RepMorphism& u) {
  Vec out;
  for (const Mat& m : u.components)
    for (std::size_t i = 0; i < m.rows(); ++i)
      for (std::size_t j = 0; j < m.cols(); ++j) out.push_back(m(i, j));
  return out;
}

// Coefficients c_0..c_n of det(T*I - M), monic. Hessenberg reduction by
// similarity transforms, then expansion along the last column of each
// leading block; valid over any field.
std::vector<fp_t> char_poly(const PrimeField& F, Mat m) {
  std::size_t n = m.rows();
  for (std::size_t col = 0; col + 2 <= n; ++col) {
    std::size_t piv = col + 1;
    while (piv < n && m(piv, col) == 0) ++piv;
    if (piv == n) continue;
    if (piv != col + 1) {
      for (std::size_t j = 0; j < n; ++j) std::swap(m(piv, j), m(col + 1, j));
      for (std::size_t i = 0; i < n; ++i) std::swap(m(i, piv), m(i, col + 1));
    }
    fp_t inv = F.inv(m(col + 1, col));
    for (std::size_t row = col + 2; row < n; ++row) {
      fp_t factor = F.mul(m(row, col), inv);
      if (factor == 0) continue;
      for (std::size_t j = 0; j < n; ++j) m(row, j) = F.sub(m(row, j), F.mul(factor, m(col + 1, j)));
      for (std::size_t i = 0; i < n; ++i) m(i, col + 1) = F.add(m(i, col + 1), F.mul(factor, m(i, row)));
    }
  }
  std::vector<std::vector<fp_t>> p(n + 1);
  p[0] = {1};
  for (std::size_t blk = 1; blk <= n; ++blk) {
    std::vector<fp_t> pm(blk + 1, 0);
    for (std::size_t k = 0; k < p[blk - 1].size(); ++k) {
      pm[k + 1] = F.add(pm[k + 1], p[blk - 1][k]);
      pm[k] = F.sub(pm[k], F.mul(m(blk - 1, blk - 1), p[blk - 1][k]));
    }
    fp_t prod = 1;
    for (std::size_t i = blk - 1; i >= 1; --i) {
      prod = F.mul(prod, m(i, i - 1));
      if (prod == 0) break;
      fp_t coeff = F.mul(m(i - 1, blk - 1), prod);
      for (std::size_t k = 0; k < p[i - 1].size(); ++k)
        pm[k] = F.sub(pm[k], F.mul(coeff, p[i - 1][k]));
    }
    p[blk] = std::move(pm);
  }
  return p[n];
}

// M(s,t) = e_d( L(v_t * v_s) ), the d-th elementary symmetric function of
// the eigenvalues, read off the characteristic polynomial.
Mat level_constraints(const PrimeField& F, const AlgebraTable& alg,
                      const std::vector<Vec>& current, std::size_t d) {
  Mat m(current.size(), current.size());
  for (std::size_t s = 0; s < current.size(); ++s)
    for (std::size_t t = 0; t < current.size(); ++t) {
      Vec z = alg.multiply(current[t], current[s]);
      std::vector<fp_t> cp = char_poly(F, alg.left_mult(z));
      m(s, t) = cp[alg.dim - d];
    }
  return m;
}

std::vector<Vec> radical_core(const AlgebraTable& alg) {
  const PrimeField& F = *alg.field;
  std::size_t n = alg.dim;
  std::vector<Vec> current;
  for (std::size_t i = 0; i < n; ++i) {
    Vec unit(n, 0);
    unit[i] = 1;
    current.push_back(std::move(unit));
  }
  if (n == 0) return current;
  // Level i cuts by x -> e_{p^i}(L(xy)); these are linear in x over F_p on
  // the previous level, and the last level is the radical.
  std::uint64_t pk = 1;
  while (true) {
    if (current.empty()) break;
    Mat constraints = level_constraints(F, alg, current, pk);
    Mat kern = kernel_basis(F, constraints);
    std::vector<Vec> next;
    for (std::size_t col = 0; col < kern.cols(); ++col) {
      Vec v(n, 0);
      for (std::size_t t = 0; t < current.size(); ++t)
        vec_axpy(F, v, kern(t, col), current[t]);
      next.push_back(std::move(v));
    }
    RowSpace span(F, n);
    for (Vec& v : next) span.insert(std::move(v));
    current.assign(span.rows().begin(), span.rows().end());
    if (pk > n / F.p()) break;  // next exponent p^{i+1} would exceed n
    pk *= F.p();
  }
  return current;
}

// Monic minimal polynomial of z, as coefficients c_0..c_d with c_d = 1.
std::vector<fp_t> min_poly(const AlgebraTable& alg, const Vec& z) {
  const PrimeField& F = *alg.field;
  std::vector<Vec> powers{alg.one};
  Vec cur = alg.one;
  while (true) {
    cur = alg.multiply(cur, z);
    Mat m(alg.dim, powers.size());
    for (std::size_t k = 0; k < powers.size(); ++k) m.set_col(k, powers[k]);
    LinSolve s = solve_linear(F, m, cur);
    if (s.consistent) {
      std::vector<fp_t> coeffs(powers.size() + 1, 0);
      for (std::size_t k = 0; k < powers.size(); ++k) coeffs[k] = F.neg(s.particular[k]);
      coeffs[powers.size()] = 1;
      return coeffs;
    }
    powers.push_back(cur);
    if (powers.size() > alg.dim + 1) throw InternalError("min_poly: no dependency found");
  }
}

fp_t poly_eval_scalar(const PrimeField& F, const std::vector<fp_t>& poly, fp_t c) {
  fp_t acc = 0;
  for (std::size_t k = poly.size(); k-- > 0;) acc = F.add(F.mul(acc, c), poly[k]);
  return acc;
}

Vec poly_eval_algebra(const AlgebraTable& alg, const std::vector<fp_t>& poly, const Vec& z) {
  const PrimeField& F = *alg.field;
  Vec acc(alg.dim, 0);
  for (std::size_t k = poly.size(); k-- > 0;) {
    acc = alg.multiply(acc, z);
    vec_axpy(F, acc, poly[k], alg.one);
  }
  return acc;
}

// poly / (T - c), assuming c is a root.
std::vector<fp_t> divide_by_root(const PrimeField& F, const std::vector<fp_t>& poly, fp_t c) {
  std::vector<fp_t> q(poly.size() - 1, 0);
  fp_t carry = 0;
  for (std::size_t k = poly.size(); k-- > 1;) {
    carry = F.add(poly[k], F.mul(c, carry));
    q[k - 1] = carry;
  }
  return q;
}

bool is_commutative(const AlgebraTable& alg) {
  for (std::size_t i = 0; i < alg.dim; ++i)
    for (std::size_t j = i + 1; j < alg.dim; ++j) {
      Vec ei(alg.dim, 0), ej(alg.dim, 0);
      ei[i] = 1;
      ej[j] = 1;
      if (alg.multiply(ei, ej) != alg.multiply(ej, ei)) return false;
    }
  return true;
}

// Splitting idempotent from a commutative subalgebra of alg (given by a
// basis in alg coordinates, closed under multiplication and containing the
// relevant powers). Returns nullopt when the Frobenius-fixed subalgebra is
// one dimensional, i.e. no nontrivial idempotent exists in the span.
std::optional<Vec> split_idempotent_commutative(const AlgebraTable& alg,
                                                const std::vector<Vec>& cbasis) {
  const PrimeField& F = *alg.field;
  std::size_t r = cbasis.size();
  Mat cmat(alg.dim, r);
  for (std::size_t k = 0; k < r; ++k) cmat.set_col(k, cbasis[k]);
  // Frobenius is F_p-linear on a commutative algebra in characteristic p.
  Mat frob(r, r);
  for (std::size_t k = 0; k < r; ++k) {
    Vec fk = alg.power(cbasis[k], F.p());
    LinSolve s = solve_linear(F, cmat, fk);
    if (!s.consistent) throw InternalError("Frobenius left the subalgebra");
    frob.set_col(k, s.particular);
  }
  Mat shifted = mat_sub(F, frob, Mat::identity(r));
  Mat kern = kernel_basis(F, shifted);
  if (kern.cols() <= 1) return std::nullopt;
  // Some kernel element is non-scalar; its minimal polynomial splits into
  // distinct linear factors (it divides T^p - T).
  for (std::size_t col = 0; col < kern.cols(); ++col) {
    Vec b(alg.dim, 0);
    for (std::size_t k = 0; k < r; ++k) vec_axpy(F, b, kern(k, col), cbasis[k]);
    std::vector<fp_t> mu = min_poly(alg, b);
    if (mu.size() < 3) continue;  // degree < 2: scalar
    std::vector<fp_t> roots;
    for (fp_t c = 0; c < F.p(); ++c)
      if (poly_eval_scalar(F, mu, c) == 0) roots.push_back(c);
    if (roots.size() != mu.size() - 1)
      throw InternalError("Frobenius-fixed element has a non-split minimal polynomial");
    std::vector<fp_t> nu = divide_by_root(F, mu, roots[0]);
    fp_t denom = poly_eval_scalar(F, nu, roots[0]);
    Vec e = poly_eval_algebra(alg, nu, b);
    e = vec_scale(F, F.inv(denom), e);
    if (alg.multiply(e, e) != e) throw InternalError("constructed element is not idempotent");
    if (vec_is_zero(e) || e == alg.one) throw InternalError("constructed idempotent is trivial");
    return e;
  }
  throw InternalError("Frobenius-fixed subalgebra of dim >= 2 with only scalars");
}

}  // namespace

Vec AlgebraTable::multiply(const Vec& x, const Vec& y) const {
  Vec out(dim, 0);
  for (std::size_t i = 0; i < dim; ++i) {
    if (x[i] == 0) continue;
    for (std::size_t j = 0; j < dim; ++j) {
      if (y[j] == 0) continue;
      vec_axpy(*field, out, field->mul(x[i], y[j]), table[i][j]);
    }
  }
  return out;
}

Vec AlgebraTable::power(Vec x, std::uint64_t e) const {
  Vec acc = one;
  while (e > 0) {
    if (e & 1) acc = multiply(acc, x);
    x = multiply(x, x);
    e >>= 1;
  }
  return acc;
}

Mat AlgebraTable::left_mult(const Vec& x) const {
  Mat m(dim, dim);
  for (std::size_t j = 0; j < dim; ++j) {
    Vec ej(dim, 0);
    ej[j] = 1;
    m.set_col(j, multiply(x, ej));
  }
  return m;
}

Vec EndAlgebra::coords_of(const RepMorphism& u) const {
  const PrimeField& F = *algebra.field;
  Vec target = flatten(u);
  Mat m(target.size(), basis.size());
  for (std::size_t k = 0; k < basis.size(); ++k) m.set_col(k, flatten(basis[k]));
  LinSolve s = solve_linear(F, m, target);
  if (!s.consistent) throw Error("coords_of: morphism is not in the endomorphism algebra");
  return s.particular;
}

RepMorphism EndAlgebra::realize(const Vec& coords) const {
  RepMorphism out;
  out.source = rep;
  out.target = rep;
  for (std::size_t a = 0; a < rep->category().object_count(); ++a)
    out.components.push_back(Mat(rep->dim(a), rep->dim(a)));
  for (std::size_t k = 0; k < basis.size(); ++k)
    if (coords[k] != 0) out = add(out, scale(coords[k], basis[k]));
  return out;
}

EndAlgebra endomorphism_algebra(const Representation& x) {
  EndAlgebra out;
  out.rep = &x;
  out.basis = hom_space(x, x);
  out.algebra.field = &x.category().field();
  out.algebra.dim = out.basis.size();
  out.algebra.table.assign(out.algebra.dim, std::vector<Vec>(out.algebra.dim));
  for (std::size_t i = 0; i < out.algebra.dim; ++i)
    for (std::size_t j = 0; j < out.algebra.dim; ++j)
      out.algebra.table[i][j] = out.coords_of(compose(out.basis[i], out.basis[j]));
  out.algebra.one = out.coords_of(identity_rep_morphism(x));
  return out;
}

RadicalResult algebra_radical(const AlgebraTable& alg) {
  RadicalResult out;
  out.basis = radical_core(alg);
  QuotientAlgebra q = quotient_algebra(alg, out.basis);
  out.quotient_semisimple = radical_core(q.algebra).empty();
  return out;
}

QuotientAlgebra quotient_algebra(const AlgebraTable& alg, const std::vector<Vec>& ideal_basis) {
  const PrimeField& F = *alg.field;
  std::size_t n = alg.dim, r = ideal_basis.size();
  Mat u(n, r);
  for (std::size_t k = 0; k < r; ++k) u.set_col(k, ideal_basis[k]);
  auto [p, pinv] = complete_basis(F, u);
  std::size_t q = n - r;
  QuotientAlgebra out;
  out.projection = Mat(q, n);
  for (std::size_t i = 0; i < q; ++i)
    for (std::size_t j = 0; j < n; ++j) out.projection(i, j) = pinv(r + i, j);
  out.section = Mat(n, q);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < q; ++j) out.section(i, j) = p(i, r + j);
  out.algebra.field = alg.field;
  out.algebra.dim = q;
  out.algebra.table.assign(q, std::vector<Vec>(q));
  for (std::size_t i = 0; i < q; ++i)
    for (std::size_t j = 0; j < q; ++j)
      out.algebra.table[i][j] =
          mat_vec(F, out.projection, alg.multiply(out.section.col(i), out.section.col(j)));
  out.algebra.one = mat_vec(F, out.projection, alg.one);
  return out;
}

namespace {

struct WorkItem {
  std::shared_ptr<Representation> rep;
  RepMorphism inc;   // rep -> original
  RepMorphism proj;  // original -> rep
};

struct IdempotentSplit {
  WorkItem image, kernel;
};

// Splits the ambient item along an idempotent endomorphism e of item.rep.
IdempotentSplit split_by_idempotent(const WorkItem& item, const RepMorphism& e) {
  const Representation& amb = *item.rep;
  const Category& cat = amb.category();
  const PrimeField& F = cat.field();
  std::size_t n = cat.object_count();

  std::vector<Mat> pmat(n), pinv(n);
  std::vector<std::size_t> rdim(n);
  for (std::size_t a = 0; a < n; ++a) {
    const Mat& ea = e.components[a];
    RowSpace colspan(F, amb.dim(a));
    for (std::size_t j = 0; j < ea.cols(); ++j) colspan.insert(ea.col(j));
    rdim[a] = colspan.dim();
    Mat u(amb.dim(a), rdim[a] + kernel_basis(F, ea).cols());
    for (std::size_t k = 0; k < rdim[a]; ++k) {
      Vec col(amb.dim(a));
      for (std::size_t i = 0; i < amb.dim(a); ++i) col[i] = colspan.rows()[k][i];
      u.set_col(k, col);
    }
    Mat ker = kernel_basis(F, ea);
    for (std::size_t k = 0; k < ker.cols(); ++k) u.set_col(rdim[a] + k, ker.col(k));
    if (u.cols() != amb.dim(a)) throw InternalError("idempotent split: rank bookkeeping failed");
    auto inv = inverse(F, u);
    if (!inv) throw InternalError("idempotent split: image + kernel do not span");
    pmat[a] = std::move(u);
    pinv[a] = std::move(*inv);
  }

  auto build_child = [&](bool image_part) {
    std::vector<std::size_t> dims(n);
    for (std::size_t a = 0; a < n; ++a) dims[a] = image_part ? rdim[a] : amb.dim(a) - rdim[a];
    std::vector<std::vector<std::vector<Mat>>> act(n, std::vector<std::vector<Mat>>(n));
    for (std::size_t a = 0; a < n; ++a)
      for (std::size_t b = 0; b < n; ++b)
        for (std::size_t k = 0; k < cat.hom_dim(a, b); ++k) {
          Mat conj = mat_mul(F, pinv[b], mat_mul(F, amb.action(a, b, k), pmat[a]));
          std::size_t row0 = image_part ? 0 : rdim[b];
          std::size_t col0 = image_part ? 0 : rdim[a];
          Mat block(dims[b], dims[a]);
          for (std::size_t i = 0; i < dims[b]; ++i)
            for (std::size_t j = 0; j < dims[a]; ++j) block(i, j) = conj(row0 + i, col0 + j);
          // the complementary blocks must vanish: the action preserves both
          // the image and the kernel of e
          std::size_t orow = image_part ? rdim[b] : 0;
          std::size_t orows = image_part ? amb.dim(b) - rdim[b] : rdim[b];
          for (std::size_t i = 0; i < orows; ++i)
            for (std::size_t j = 0; j < dims[a]; ++j)
              if (conj(orow + i, col0 + j) != 0)
                throw InternalError("idempotent split: action mixes image and kernel");
          act[a][b].push_back(std::move(block));
        }
    WorkItem child;
    child.rep = std::make_shared<Representation>(
        Representation::from_action(cat, std::move(dims), std::move(act)));
    child.inc.source = child.rep.get();
    child.inc.target = item.inc.target;
    child.proj.source = item.proj.source;
    child.proj.target = child.rep.get();
    for (std::size_t a = 0; a < n; ++a) {
      std::size_t d = child.rep->dim(a), col0 = image_part ? 0 : rdim[a];
      Mat incl(amb.dim(a), d);
      for (std::size_t i = 0; i < amb.dim(a); ++i)
        for (std::size_t j = 0; j < d; ++j) incl(i, j) = pmat[a](i, col0 + j);
      Mat projm(d, amb.dim(a));
      for (std::size_t i = 0; i < d; ++i)
        for (std::size_t j = 0; j < amb.dim(a); ++j) projm(i, j) = pinv[a](col0 + i, j);
      child.inc.components.push_back(mat_mul(F, item.inc.components[a], incl));
      child.proj.components.push_back(mat_mul(F, projm, item.proj.components[a]));
    }
    return child;
  };
  return IdempotentSplit{build_child(true), build_child(false)};
}

Vec random_element(const AlgebraTable& alg, std::mt19937_64& rng) {
  std::uniform_int_distribution<fp_t> coeff(0, alg.field->p() - 1);
  Vec v(alg.dim);
  for (auto& x : v) x = coeff(rng);
  return v;
}

// A nontrivial idempotent in the semisimple algebra, or nullopt if the
// algebra is a field (the commutative case decides this exactly).
std::optional<Vec> semisimple_idempotent(const AlgebraTable& alg, std::mt19937_64& rng) {
  if (alg.dim <= 1) return std::nullopt;
  if (is_commutative(alg)) {
    std::vector<Vec> units;
    for (std::size_t i = 0; i < alg.dim; ++i) {
      Vec u(alg.dim, 0);
      u[i] = 1;
      units.push_back(std::move(u));
    }
    return split_idempotent_commutative(alg, units);
  }
  // Noncommutative semisimple: never a field, so a splitting element exists;
  // search commutative subalgebras F_p[z] of random elements.
  std::size_t max_attempts = 64 + 16 * alg.dim;
  for (std::size_t attempt = 0; attempt < max_attempts; ++attempt) {
    Vec z = random_element(alg, rng);
    std::vector<fp_t> mu = min_poly(alg, z);
    std::size_t deg = mu.size() - 1;
    if (deg < 2) continue;
    std::vector<Vec> powers{alg.one};
    Vec cur = alg.one;
    for (std::size_t k = 1; k < deg; ++k) {
      cur = alg.multiply(cur, z);
      powers.push_back(cur);
    }
    auto e = split_idempotent_commutative(alg, powers);
    if (e) return e;
  }
  throw InternalError("no splitting element found in a noncommutative semisimple algebra");
}

struct LocalData {
  EndAlgebra end;
  std::vector<Vec> rad_rows;

  bool is_unit_coords(const Vec& coords) const {
    RowSpace span(*end.algebra.field, end.algebra.dim);
    for (const Vec& r : rad_rows) span.insert(Vec(r));
    return !span.contains(coords);
  }
};

LocalData make_local_data(const Representation& s) {
  LocalData d;
  d.end = endomorphism_algebra(s);
  RadicalResult rad = algebra_radical(d.end.algebra);
  if (!rad.quotient_semisimple)
    throw InternalError("radical certificate failed on an endomorphism algebra");
  d.rad_rows = rad.basis;
  return d;
}

RepMorphism invert_endo(const RepMorphism& e) {
  const PrimeField& F = e.source->category().field();
  RepMorphism out;
  out.source = e.source;
  out.target = e.target;
  for (const Mat& m : e.components) {
    auto inv = inverse(F, m);
    if (!inv) throw InternalError("unit endomorphism has a singular component");
    out.components.push_back(std::move(*inv));
  }
  return out;
}

// Split mono s -> y through the hom pairing: basis pairs (u, v) with [v u]
// a unit of End(s). Complete for indecomposable s: s | y iff some pair hits
// a unit. Returns (u, w) with w . u = id_s.
std::optional<std::pair<RepMorphism, RepMorphism>> find_split_embedding(const Representation& s,
                                                                        const Representation& y,
                                                                        const LocalData& sdata) {
  if (s.total_dim() == 0) return std::nullopt;
  std::vector<RepMorphism> into = hom_space(s, y);
  std::vector<RepMorphism> back = hom_space(y, s);
  for (const RepMorphism& u : into)
    for (const RepMorphism& v : back) {
      RepMorphism vu = compose(v, u);
      Vec coords = sdata.end.coords_of(vu);
      if (!sdata.is_unit_coords(coords)) continue;
      RepMorphism w = compose(invert_endo(vu), v);
      if (!is_identity(compose(w, u))) throw InternalError("retraction composite is not identity");
      return std::make_pair(u, w);
    }
  return std::nullopt;
}

}  // namespace

std::vector<std::pair<std::size_t, std::size_t>> Decomposition::shape() const {
  std::vector<std::pair<std::size_t, std::size_t>> s;
  for (std::size_t c = 0; c < class_reps.size(); ++c)
    s.emplace_back(summands[class_reps[c]].rep->total_dim(), multiplicities[c]);
  std::sort(s.begin(), s.end());
  return s;
}

Decomposition decompose(const Representation& x, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  Decomposition out;
  out.original = &x;

  std::deque<WorkItem> work;
  {
    WorkItem root;
    root.rep = std::make_shared<Representation>(x);
    root.inc = identity_rep_morphism(*root.rep);
    root.inc.target = &x;
    root.proj = identity_rep_morphism(*root.rep);
    root.proj.source = &x;
    work.push_back(std::move(root));
  }
  while (!work.empty()) {
    WorkItem item = std::move(work.front());
    work.pop_front();
    if (item.rep->total_dim() == 0) continue;

    EndAlgebra end = endomorphism_algebra(*item.rep);
    RadicalResult rad = algebra_radical(end.algebra);
    if (!rad.quotient_semisimple)
      throw InternalError("radical certificate failed during decomposition");
    QuotientAlgebra quo = quotient_algebra(end.algebra, rad.basis);

    std::optional<Vec> eq;
    if (quo.algebra.dim > 1) eq = semisimple_idempotent(quo.algebra, rng);
    if (!eq) {
      Summand leaf;
      leaf.rep = item.rep;
      leaf.inclusion = item.inc;
      leaf.projection = item.proj;
      leaf.certificate.end_dim = end.algebra.dim;
      leaf.certificate.radical_dim = rad.basis.size();
      leaf.certificate.quotient_dim = quo.algebra.dim;
      leaf.certificate.quotient_commutative = is_commutative(quo.algebra);
      out.summands.push_back(std::move(leaf));
      continue;
    }

    // Lift through the radical: e <- 3e^2 - 2e^3 squares the defect.
    const PrimeField& F = *end.algebra.field;
    Vec e = mat_vec(F, quo.section, *eq);
    bool lifted = false;
    for (std::size_t iter = 0; iter <= end.algebra.dim + 4; ++iter) {
      Vec e2 = end.algebra.multiply(e, e);
      if (e2 == e) {
        lifted = true;
        break;
      }
      Vec e3 = end.algebra.multiply(e2, e);
      Vec next = vec_sub(F, vec_scale(F, 3, e2), vec_scale(F, 2, e3));
      e = std::move(next);
    }
    if (!lifted) throw InternalError("idempotent lifting did not converge");
    if (vec_is_zero(e) || e == end.algebra.one)
      throw InternalError("lifted idempotent is trivial");

    IdempotentSplit split = split_by_idempotent(item, end.realize(e));
    work.push_back(std::move(split.image));
    work.push_back(std::move(split.kernel));
  }

  // Group the leaves into isomorphism classes.
  out.iso_class.assign(out.summands.size(), 0);
  for (std::size_t i = 0; i < out.summands.size(); ++i) {
    bool assigned = false;
    LocalData data = make_local_data(*out.summands[i].rep);
    for (std::size_t c = 0; c < out.class_reps.size() && !assigned; ++c) {
      const Representation& rep_c = *out.summands[out.class_reps[c]].rep;
      if (out.summands[i].rep->dims() != rep_c.dims()) continue;
      if (find_split_embedding(*out.summands[i].rep, rep_c, data)) {
        out.iso_class[i] = c;
        ++out.multiplicities[c];
        assigned = true;
      }
    }
    if (!assigned) {
      out.iso_class[i] = out.class_reps.size();
      out.class_reps.push_back(i);
      out.multiplicities.push_back(1);
    }
  }
  return out;
}

IsoOutcome are_isomorphic(const Representation& x, const Representation& y, std::uint64_t seed) {
  if (&x.category() != &y.category())
    throw Error("are_isomorphic: representations over different categories");
  IsoOutcome out;
  if (x.dims() != y.dims()) return out;
  const PrimeField& F = x.category().field();
  if (x.total_dim() == 0) {
    out.isomorphic = true;
    RepMorphism fwd;
    fwd.source = &x;
    fwd.target = &y;
    RepMorphism bwd;
    bwd.source = &y;
    bwd.target = &x;
    for (std::size_t a = 0; a < x.category().object_count(); ++a) {
      fwd.components.push_back(Mat(0, 0));
      bwd.components.push_back(Mat(0, 0));
    }
    out.witness = {fwd, bwd};
    return out;
  }

  // Cheap route: random elements of Hom(X,Y) that happen to be invertible.
  std::mt19937_64 rng(seed);
  std::vector<RepMorphism> hom = hom_space(x, y);
  if (hom.empty()) return out;
  for (int attempt = 0; attempt < 24; ++attempt) {
    RepMorphism u = hom[0];
    for (auto& m : u.components) m = Mat(m.rows(), m.cols());
    std::uniform_int_distribution<fp_t> coeff(0, F.p() - 1);
    for (const RepMorphism& b : hom) u = add(u, scale(coeff(rng), b));
    bool invertible = true;
    RepMorphism v;
    v.source = &y;
    v.target = &x;
    for (const Mat& m : u.components) {
      auto inv = inverse(F, m);
      if (!inv) {
        invertible = false;
        break;
      }
      v.components.push_back(std::move(*inv));
    }
    if (invertible) {
      out.isomorphic = true;
      out.witness = {u, v};
      return out;
    }
  }

  // Exact route through the decompositions.
  Decomposition dx = decompose(x, seed);
  Decomposition dy = decompose(y, seed + 1);
  if (dx.summands.size() != dy.summands.size()) return out;
  std::vector<std::size_t> match(dx.summands.size());
  std::vector<bool> used(dy.summands.size(), false);
  std::vector<std::pair<RepMorphism, RepMorphism>> pieces;
  for (std::size_t i = 0; i < dx.summands.size(); ++i) {
    LocalData data = make_local_data(*dx.summands[i].rep);
    bool found = false;
    for (std::size_t j = 0; j < dy.summands.size() && !found; ++j) {
      if (used[j]) continue;
      if (dx.summands[i].rep->dims() != dy.summands[j].rep->dims()) continue;
      auto emb = find_split_embedding(*dx.summands[i].rep, *dy.summands[j].rep, data);
      if (emb) {
        if (!is_identity(compose(emb->first, emb->second)))
          throw InternalError("indecomposable split embedding is not an isomorphism");
        match[i] = j;
        used[j] = true;
        pieces.push_back(*emb);
        found = true;
      }
    }
    if (!found) return out;
  }

  RepMorphism fwd;
  fwd.source = &x;
  fwd.target = &y;
  RepMorphism bwd;
  bwd.source = &y;
  bwd.target = &x;
  std::size_t n = x.category().object_count();
  for (std::size_t a = 0; a < n; ++a) {
    fwd.components.push_back(Mat(y.dim(a), x.dim(a)));
    bwd.components.push_back(Mat(x.dim(a), y.dim(a)));
  }
  for (std::size_t i = 0; i < dx.summands.size(); ++i) {
    const Summand& sx = dx.summands[i];
    const Summand& sy = dy.summands[match[i]];
    for (std::size_t a = 0; a < n; ++a) {
      Mat f = mat_mul(F, sy.inclusion.components[a],
                      mat_mul(F, pieces[i].first.components[a], sx.projection.components[a]));
      fwd.components[a] = mat_add(F, fwd.components[a], f);
      Mat g = mat_mul(F, sx.inclusion.components[a],
                      mat_mul(F, pieces[i].second.components[a], sy.projection.components[a]));
      bwd.components[a] = mat_add(F, bwd.components[a], g);
    }
  }
  if (!is_identity(compose(bwd, fwd)) || !is_identity(compose(fwd, bwd)))
    throw InternalError("assembled isomorphism witness failed verification");
  out.isomorphic = true;
  out.witness = {std::move(fwd), std::move(bwd)};
  return out;
}

bool same_class_multiset(const Decomposition& dx, const Decomposition& dy, std::uint64_t seed) {
  if (dx.summands.size() != dy.summands.size()) return false;
  if (dx.class_count() != dy.class_count()) return false;
  std::vector<bool> used(dy.class_count(), false);
  for (std::size_t c = 0; c < dx.class_count(); ++c) {
    const Representation& rep_c = *dx.summands[dx.class_reps[c]].rep;
    bool found = false;
    for (std::size_t d = 0; d < dy.class_count() && !found; ++d) {
      if (used[d] || dx.multiplicities[c] != dy.multiplicities[d]) continue;
      const Representation& rep_d = *dy.summands[dy.class_reps[d]].rep;
      if (are_isomorphic(rep_c, rep_d, seed).isomorphic) {
        used[d] = true;
        found = true;
      }
    }
    if (!found) return false;
  }
  return true;
}

SummandOutcome is_direct_summand(const Representation& x, const Representation& y,
                                 std::uint64_t seed) {
  if (&x.category() != &y.category())
    throw Error("is_direct_summand: representations over different categories");
  const PrimeField& F = x.category().field();
  std::size_t n = x.category().object_count();

  Decomposition dx = decompose(x, seed);

  // Method 1: multiplicity matching against decompose(Y).
  Decomposition dy = decompose(y, seed + 1);
  bool verdict1 = true;
  std::vector<bool> used(dy.summands.size(), false);
  std::vector<std::size_t> match(dx.summands.size());
  std::vector<std::pair<RepMorphism, RepMorphism>> pieces;
  for (std::size_t i = 0; i < dx.summands.size() && verdict1; ++i) {
    LocalData data = make_local_data(*dx.summands[i].rep);
    bool found = false;
    for (std::size_t j = 0; j < dy.summands.size() && !found; ++j) {
      if (used[j]) continue;
      if (dx.summands[i].rep->dims() != dy.summands[j].rep->dims()) continue;
      auto emb = find_split_embedding(*dx.summands[i].rep, *dy.summands[j].rep, data);
      if (emb) {
        used[j] = true;
        match[i] = j;
        pieces.push_back(*emb);
        found = true;
      }
    }
    verdict1 = found;
  }

  // Method 2: peel X's indecomposables off Y itself.
  bool verdict2 = true;
  {
    WorkItem ycur;
    ycur.rep = std::make_shared<Representation>(y);
    ycur.inc = identity_rep_morphism(*ycur.rep);
    ycur.inc.target = &y;
    ycur.proj = identity_rep_morphism(*ycur.rep);
    ycur.proj.source = &y;
    for (const Summand& s : dx.summands) {
      LocalData data = make_local_data(*s.rep);
      auto emb = find_split_embedding(*s.rep, *ycur.rep, data);
      if (!emb) {
        verdict2 = false;
        break;
      }
      RepMorphism idem = compose(emb->first, emb->second);  // u . w on ycur
      IdempotentSplit split = split_by_idempotent(ycur, idem);
      ycur = std::move(split.kernel);
    }
  }

  if (verdict1 != verdict2)
    throw InternalError("direct summand methods disagree: matching=" +
                        std::to_string(verdict1) + " peeling=" + std::to_string(verdict2));

  SummandOutcome out;
  out.summand = verdict1;
  if (!verdict1) return out;

  RepMorphism u;
  u.source = &x;
  u.target = &y;
  RepMorphism r;
  r.source = &y;
  r.target = &x;
  for (std::size_t a = 0; a < n; ++a) {
    u.components.push_back(Mat(y.dim(a), x.dim(a)));
    r.components.push_back(Mat(x.dim(a), y.dim(a)));
  }
  for (std::size_t i = 0; i < dx.summands.size(); ++i) {
    const Summand& sx = dx.summands[i];
    const Summand& sy = dy.summands[match[i]];
    for (std::size_t a = 0; a < n; ++a) {
      Mat f = mat_mul(F, sy.inclusion.components[a],
                      mat_mul(F, pieces[i].first.components[a], sx.projection.components[a]));
      u.components[a] = mat_add(F, u.components[a], f);
      Mat g = mat_mul(F, sx.inclusion.components[a],
                      mat_mul(F, pieces[i].second.components[a], sy.projection.components[a]));
      r.components[a] = mat_add(F, r.components[a], g);
    }
  }
  if (!is_identity(compose(r, u)))
    throw InternalError("assembled split pair failed verification");
  out.split = {std::move(u), std::move(r)};
  return out;
}

std::optional<RepMorphism> solve_retraction(const RepMorphism& u) {
  if (!is_rep_morphism(u)) throw Error("solve_retraction: input is not a module morphism");
  const Representation& x = *u.source;
  const Representation& y = *u.target;
  const Category& cat = x.category();
  const PrimeField& F = cat.field();
  std::size_t n = cat.object_count();

  std::vector<std::size_t> off(n + 1, 0);
  for (std::size_t a = 0; a < n; ++a) off[a + 1] = off[a] + x.dim(a) * y.dim(a);
  std::size_t unknowns = off[n];

  std::vector<Vec> rows;
  Vec rhs;
  // r is a morphism: r_t Y(g) = X(g) r_s for all generators
  for (const auto& g : cat.generators()) {
    Mat xg = x.evaluate(g.source, g.target, g.coords);
    Mat yg = y.evaluate(g.source, g.target, g.coords);
    for (std::size_t i = 0; i < x.dim(g.target); ++i)
      for (std::size_t j = 0; j < y.dim(g.source); ++j) {
        Vec row(unknowns, 0);
        for (std::size_t k = 0; k < y.dim(g.target); ++k)
          row[off[g.target] + i * y.dim(g.target) + k] =
              F.add(row[off[g.target] + i * y.dim(g.target) + k], yg(k, j));
        for (std::size_t k = 0; k < x.dim(g.source); ++k)
          row[off[g.source] + k * y.dim(g.source) + j] =
              F.sub(row[off[g.source] + k * y.dim(g.source) + j], xg(i, k));
        rows.push_back(std::move(row));
        rhs.push_back(0);
      }
  }
  // r . u = id_X
  for (std::size_t a = 0; a < n; ++a)
    for (std::size_t i = 0; i < x.dim(a); ++i)
      for (std::size_t j = 0; j < x.dim(a); ++j) {
        Vec row(unknowns, 0);
        for (std::size_t k = 0; k < y.dim(a); ++k)
          row[off[a] + i * y.dim(a) + k] = u.components[a](k, j);
        rows.push_back(std::move(row));
        rhs.push_back(i == j ? 1 : 0);
      }

  std::size_t n_rows = rows.size();
  Mat system = Mat::from_rows(n_rows, unknowns, std::move(rows));
  LinSolve sol = solve_linear(F, system, rhs);
  if (!sol.consistent) return std::nullopt;
  RepMorphism r;
  r.source = &y;
  r.target = &x;
  for (std::size_t a = 0; a < n; ++a) {
    Mat m(x.dim(a), y.dim(a));
    for (std::size_t i = 0; i < x.dim(a); ++i)
      for (std::size_t j = 0; j < y.dim(a); ++j) m(i, j) = sol.particular[off[a] + i * y.dim(a) + j];
    r.components.push_back(std::move(m));
  }
  if (!is_rep_morphism(r) || !is_identity(compose(r, u)))
    throw InternalError("solved retraction failed verification");
  return r;
}

}  // namespace qcov
