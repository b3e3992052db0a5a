#include "qcov/matrix.hpp"

#include <algorithm>

namespace qcov {

Mat Mat::from_rows(std::size_t rows, std::size_t cols, std::vector<Vec> data) {
  if (data.size() != rows) throw Error("from_rows: row count mismatch");
  Mat m(rows, cols);
  for (std::size_t i = 0; i < rows; ++i) {
    if (data[i].size() != cols) throw Error("from_rows: column count mismatch");
    for (std::size_t j = 0; j < cols; ++j) m(i, j) = data[i][j];
  }
  return m;
}

Vec Mat::col(std::size_t j) const {
  Vec v(rows_);
  for (std::size_t i = 0; i < rows_; ++i) v[i] = (*this)(i, j);
  return v;
}

void Mat::set_col(std::size_t j, const Vec& v) {
  for (std::size_t i = 0; i < rows_; ++i) (*this)(i, j) = v[i];
}

bool Mat::is_zero() const {
  return std::all_of(e_.begin(), e_.end(), [](fp_t x) { return x == 0; });
}

Mat mat_add(const PrimeField& F, const Mat& a, const Mat& b) {
  if (a.rows() != b.rows() || a.cols() != b.cols()) throw Error("matrix add: shape mismatch");
  Mat c(a.rows(), a.cols());
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j) c(i, j) = F.add(a(i, j), b(i, j));
  return c;
}

Mat mat_sub(const PrimeField& F, const Mat& a, const Mat& b) {
  if (a.rows() != b.rows() || a.cols() != b.cols()) throw Error("matrix sub: shape mismatch");
  Mat c(a.rows(), a.cols());
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j) c(i, j) = F.sub(a(i, j), b(i, j));
  return c;
}

Mat mat_scale(const PrimeField& F, fp_t c, const Mat& a) {
  Mat r(a.rows(), a.cols());
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j) r(i, j) = F.mul(c, a(i, j));
  return r;
}

Mat mat_mul(const PrimeField& F, const Mat& a, const Mat& b) {
  if (a.cols() != b.rows()) throw Error("matrix mul: shape mismatch");
  Mat c(a.rows(), b.cols());
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t k = 0; k < a.cols(); ++k) {
      fp_t aik = a(i, k);
      if (aik == 0) continue;
      for (std::size_t j = 0; j < b.cols(); ++j)
        c(i, j) = F.add(c(i, j), F.mul(aik, b(k, j)));
    }
  return c;
}

Vec mat_vec(const PrimeField& F, const Mat& a, const Vec& x) {
  if (a.cols() != x.size()) throw Error("matrix-vector: shape mismatch");
  Vec y(a.rows(), 0);
  for (std::size_t i = 0; i < a.rows(); ++i) {
    fp_t acc = 0;
    for (std::size_t j = 0; j < a.cols(); ++j)
      if (x[j] != 0) acc = F.add(acc, F.mul(a(i, j), x[j]));
    y[i] = acc;
  }
  return y;
}

Mat transpose(const Mat& a) {
  Mat t(a.cols(), a.rows());
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j) t(j, i) = a(i, j);
  return t;
}

Vec vec_add(const PrimeField& F, const Vec& a, const Vec& b) {
  if (a.size() != b.size()) throw Error("vector add: size mismatch");
  Vec c(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) c[i] = F.add(a[i], b[i]);
  return c;
}

Vec vec_sub(const PrimeField& F, const Vec& a, const Vec& b) {
  if (a.size() != b.size()) throw Error("vector sub: size mismatch");
  Vec c(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) c[i] = F.sub(a[i], b[i]);
  return c;
}

Vec vec_scale(const PrimeField& F, fp_t c, const Vec& a) {
  Vec r(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) r[i] = F.mul(c, a[i]);
  return r;
}

void vec_axpy(const PrimeField& F, Vec& a, fp_t c, const Vec& b) {
  if (a.size() != b.size()) throw Error("axpy: size mismatch");
  if (c == 0) return;
  for (std::size_t i = 0; i < a.size(); ++i) a[i] = F.add(a[i], F.mul(c, b[i]));
}

bool vec_is_zero(const Vec& a) {
  return std::all_of(a.begin(), a.end(), [](fp_t x) { return x == 0; });
}

Echelon row_echelon(const PrimeField& F, Mat a) {
  Echelon e;
  std::size_t r = 0;
  for (std::size_t c = 0; c < a.cols() && r < a.rows(); ++c) {
    std::size_t pivot = r;
    while (pivot < a.rows() && a(pivot, c) == 0) ++pivot;
    if (pivot == a.rows()) continue;
    if (pivot != r)
      for (std::size_t j = 0; j < a.cols(); ++j) std::swap(a(r, j), a(pivot, j));
    fp_t scale = F.inv(a(r, c));
    for (std::size_t j = c; j < a.cols(); ++j) a(r, j) = F.mul(scale, a(r, j));
    for (std::size_t i = 0; i < a.rows(); ++i) {
      if (i == r || a(i, c) == 0) continue;
      fp_t f = a(i, c);
      for (std::size_t j = c; j < a.cols(); ++j) a(i, j) = F.sub(a(i, j), F.mul(f, a(r, j)));
    }
    e.pivots.push_back(c);
    ++r;
  }
  e.rref = std::move(a);
  return e;
}

std::size_t rank(const PrimeField& F, const Mat& a) { return row_echelon(F, a).rank(); }

Mat kernel_basis(const PrimeField& F, const Mat& a) {
  Echelon e = row_echelon(F, a);
  std::vector<bool> is_pivot(a.cols(), false);
  for (std::size_t c : e.pivots) is_pivot[c] = true;
  std::vector<std::size_t> free_cols;
  for (std::size_t c = 0; c < a.cols(); ++c)
    if (!is_pivot[c]) free_cols.push_back(c);

  Mat k(a.cols(), free_cols.size());
  for (std::size_t fi = 0; fi < free_cols.size(); ++fi) {
    std::size_t fc = free_cols[fi];
    k(fc, fi) = 1;
    for (std::size_t r = 0; r < e.pivots.size(); ++r)
      k(e.pivots[r], fi) = F.neg(e.rref(r, fc));
  }
  return k;
}

std::optional<Mat> inverse(const PrimeField& F, const Mat& a) {
  if (a.rows() != a.cols()) throw Error("inverse: matrix not square");
  std::size_t n = a.rows();
  Mat aug(n, 2 * n);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) aug(i, j) = a(i, j);
    aug(i, n + i) = 1;
  }
  Echelon e = row_echelon(F, aug);
  if (e.rank() < n || (n > 0 && e.pivots[n - 1] >= n)) return std::nullopt;
  Mat inv(n, n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) inv(i, j) = e.rref(i, n + j);
  return inv;
}

LinSolve solve_linear(const PrimeField& F, const Mat& a, const Vec& b) {
  if (a.rows() != b.size()) throw Error("solve: right-hand side size mismatch");
  Mat aug(a.rows(), a.cols() + 1);
  for (std::size_t i = 0; i < a.rows(); ++i) {
    for (std::size_t j = 0; j < a.cols(); ++j) aug(i, j) = a(i, j);
    aug(i, a.cols()) = b[i];
  }
  Echelon e = row_echelon(F, aug);
  LinSolve out;
  if (!e.pivots.empty() && e.pivots.back() == a.cols()) {
    out.consistent = false;
    return out;
  }
  out.consistent = true;
  out.particular.assign(a.cols(), 0);
  for (std::size_t r = 0; r < e.pivots.size(); ++r)
    out.particular[e.pivots[r]] = e.rref(r, a.cols());
  out.kernel = kernel_basis(F, a);
  return out;
}

std::pair<Mat, Mat> complete_basis(const PrimeField& F, const Mat& u) {
  std::size_t n = u.rows(), r = u.cols();
  RowSpace span(F, n);
  for (std::size_t j = 0; j < r; ++j)
    if (!span.insert(u.col(j))) throw Error("complete_basis: dependent columns");
  Mat p(n, n);
  for (std::size_t j = 0; j < r; ++j) p.set_col(j, u.col(j));
  std::size_t next = r;
  for (std::size_t e = 0; e < n && next < n; ++e) {
    Vec unit(n, 0);
    unit[e] = 1;
    if (span.insert(unit)) p.set_col(next++, unit);
  }
  auto inv = inverse(F, p);
  if (!inv) throw Error("complete_basis: completion not invertible");
  return {std::move(p), std::move(*inv)};
}

bool RowSpace::insert(Vec v) {
  if (v.size() != width_) throw Error("row space: width mismatch");
  // Reduce against existing rows.
  for (std::size_t k = 0; k < rows_.size(); ++k)
    if (v[pivots_[k]] != 0) vec_axpy(*F_, v, F_->neg(v[pivots_[k]]), rows_[k]);
  std::size_t piv = 0;
  while (piv < width_ && v[piv] == 0) ++piv;
  if (piv == width_) return false;
  fp_t s = F_->inv(v[piv]);
  for (auto& x : v) x = F_->mul(s, x);
  // Back-substitute into existing rows, then insert keeping pivots sorted.
  for (std::size_t k = 0; k < rows_.size(); ++k)
    if (rows_[k][piv] != 0) vec_axpy(*F_, rows_[k], F_->neg(rows_[k][piv]), v);
  std::size_t pos = 0;
  while (pos < pivots_.size() && pivots_[pos] < piv) ++pos;
  rows_.insert(rows_.begin() + pos, std::move(v));
  pivots_.insert(pivots_.begin() + pos, piv);
  return true;
}

bool RowSpace::contains(Vec v) const { return vec_is_zero(residue(std::move(v))); }

Vec RowSpace::residue(Vec v) const {
  if (v.size() != width_) throw Error("row space: width mismatch");
  for (std::size_t k = 0; k < rows_.size(); ++k)
    if (v[pivots_[k]] != 0) vec_axpy(*F_, v, F_->neg(v[pivots_[k]]), rows_[k]);
  return v;
}

}  // namespace qcov
