#pragma once

#include <gmpxx.h>

#include <cstddef>
#include <stdexcept>
#include <string>
#include <vector>

#include "sqv/finite_field.hpp"

namespace sqv {

// Dense row-major matrix. Vectors act as columns: y = M x.
template <class T>
class Mat {
 public:
  Mat() = default;
  Mat(std::size_t rows, std::size_t cols, const T& fill = T()) : rows_(rows), cols_(cols), data_(rows * cols, fill) {}

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  bool empty() const { return rows_ == 0 || cols_ == 0; }

  T& operator()(std::size_t r, std::size_t c) { return data_[r * cols_ + c]; }
  const T& operator()(std::size_t r, std::size_t c) const { return data_[r * cols_ + c]; }

  T* row(std::size_t r) { return data_.data() + r * cols_; }
  const T* row(std::size_t r) const { return data_.data() + r * cols_; }

  std::vector<T>& data() { return data_; }
  const std::vector<T>& data() const { return data_; }

  bool operator==(const Mat& o) const { return rows_ == o.rows_ && cols_ == o.cols_ && data_ == o.data_; }
  bool operator!=(const Mat& o) const { return !(*this == o); }

  Mat transpose() const {
    Mat t(cols_, rows_);
    for (std::size_t r = 0; r < rows_; ++r)
      for (std::size_t c = 0; c < cols_; ++c) t(c, r) = (*this)(r, c);
    return t;
  }

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<T> data_;
};

using QMat = Mat<mpq_class>;
using FMat = Mat<FiniteField::value_type>;

// Field policy for exact rational arithmetic.
struct Rationals {
  using value_type = mpq_class;
  value_type zero() const { return 0; }
  value_type one() const { return 1; }
  bool is_zero(const value_type& a) const { return sgn(a) == 0; }
  value_type add(const value_type& a, const value_type& b) const { return a + b; }
  value_type sub(const value_type& a, const value_type& b) const { return a - b; }
  value_type mul(const value_type& a, const value_type& b) const { return a * b; }
  value_type neg(const value_type& a) const { return -a; }
  value_type inv(const value_type& a) const {
    if (sgn(a) == 0) throw std::domain_error("inverse of zero");
    return 1 / a;
  }
  value_type div(const value_type& a, const value_type& b) const { return a * inv(b); }
};

template <class Field>
struct Echelon {
  using V = typename Field::value_type;
  std::size_t rank = 0;
  Mat<V> echelon;                   // reduced row echelon form, same shape as input
  std::vector<std::size_t> pivots;  // pivot column of each nonzero row
  Mat<V> kernel;                    // rows form a basis of {x : M x = 0}
};

// Gauss-Jordan elimination. Columns are scanned left to right.
template <class Field>
Echelon<Field> rref(const Field& f, Mat<typename Field::value_type> m) {
  using V = typename Field::value_type;
  Echelon<Field> out;
  const std::size_t R = m.rows(), C = m.cols();
  std::size_t r = 0;
  for (std::size_t c = 0; c < C && r < R; ++c) {
    std::size_t piv = R;
    for (std::size_t i = r; i < R; ++i)
      if (!f.is_zero(m(i, c))) {
        piv = i;
        break;
      }
    if (piv == R) continue;
    if (piv != r)
      for (std::size_t k = 0; k < C; ++k) std::swap(m(piv, k), m(r, k));
    V s = f.inv(m(r, c));
    for (std::size_t k = c; k < C; ++k) m(r, k) = f.mul(m(r, k), s);
    for (std::size_t i = 0; i < R; ++i) {
      if (i == r || f.is_zero(m(i, c))) continue;
      V t = m(i, c);
      for (std::size_t k = c; k < C; ++k) m(i, k) = f.sub(m(i, k), f.mul(t, m(r, k)));
    }
    out.pivots.push_back(c);
    ++r;
  }
  out.rank = r;
  std::vector<bool> is_pivot(C, false);
  for (auto c : out.pivots) is_pivot[c] = true;
  out.kernel = Mat<V>(C - r, C, f.zero());
  std::size_t kr = 0;
  for (std::size_t c = 0; c < C; ++c) {
    if (is_pivot[c]) continue;
    out.kernel(kr, c) = f.one();
    for (std::size_t i = 0; i < r; ++i) out.kernel(kr, out.pivots[i]) = f.neg(m(i, c));
    ++kr;
  }
  out.echelon = std::move(m);
  return out;
}

template <class Field>
std::size_t rank(const Field& f, const Mat<typename Field::value_type>& m) {
  return rref(f, m).rank;
}

template <class Field>
Mat<typename Field::value_type> multiply(const Field& f, const Mat<typename Field::value_type>& a,
                                         const Mat<typename Field::value_type>& b) {
  if (a.cols() != b.rows()) throw std::invalid_argument("matrix shape mismatch in multiply");
  Mat<typename Field::value_type> out(a.rows(), b.cols(), f.zero());
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t k = 0; k < a.cols(); ++k) {
      if (f.is_zero(a(i, k))) continue;
      for (std::size_t j = 0; j < b.cols(); ++j) out(i, j) = f.add(out(i, j), f.mul(a(i, k), b(k, j)));
    }
  return out;
}

template <class Field>
Mat<typename Field::value_type> identity(const Field& f, std::size_t n) {
  Mat<typename Field::value_type> m(n, n, f.zero());
  for (std::size_t i = 0; i < n; ++i) m(i, i) = f.one();
  return m;
}

// Inverse of a square matrix; throws std::domain_error when singular.
template <class Field>
Mat<typename Field::value_type> inverse(const Field& f, const Mat<typename Field::value_type>& m) {
  const std::size_t n = m.rows();
  if (m.cols() != n) throw std::invalid_argument("inverse of non-square matrix");
  Mat<typename Field::value_type> aug(n, 2 * n, f.zero());
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) aug(i, j) = m(i, j);
    aug(i, n + i) = f.one();
  }
  auto e = rref(f, aug);
  if (e.rank < n || (n > 0 && e.pivots[n - 1] != n - 1)) throw std::domain_error("singular matrix");
  Mat<typename Field::value_type> out(n, n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) out(i, j) = e.echelon(i, n + j);
  return out;
}

// Kronecker product a (x) b.
template <class Field>
Mat<typename Field::value_type> kron(const Field& f, const Mat<typename Field::value_type>& a,
                                     const Mat<typename Field::value_type>& b) {
  Mat<typename Field::value_type> out(a.rows() * b.rows(), a.cols() * b.cols(), f.zero());
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j)
      for (std::size_t k = 0; k < b.rows(); ++k)
        for (std::size_t l = 0; l < b.cols(); ++l) out(i * b.rows() + k, j * b.cols() + l) = f.mul(a(i, j), b(k, l));
  return out;
}

// Reduction of a rational matrix into a finite field; throws when a
// denominator vanishes mod p.
FMat reduce_matrix(const FiniteField& f, const QMat& m);

std::string to_string(const QMat& m);

}  // namespace sqv
