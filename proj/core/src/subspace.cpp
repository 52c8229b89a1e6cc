#include "sqv/subspace.hpp"

#include <algorithm>
#include <stdexcept>

namespace sqv {

namespace {

// In-place Gauss-Jordan on a row-major block; returns rank. Nonzero rows are
// moved to the front in canonical form.
std::size_t echelonize(const FiniteField& f, std::vector<Elem>& d, std::size_t nrows, std::size_t ncols,
                       std::vector<std::size_t>* pivots = nullptr) {
  std::size_t r = 0;
  for (std::size_t c = 0; c < ncols && r < nrows; ++c) {
    std::size_t piv = nrows;
    for (std::size_t i = r; i < nrows; ++i)
      if (d[i * ncols + c] != 0) {
        piv = i;
        break;
      }
    if (piv == nrows) continue;
    if (piv != r)
      for (std::size_t k = 0; k < ncols; ++k) std::swap(d[piv * ncols + k], d[r * ncols + k]);
    Elem* rr = d.data() + r * ncols;
    if (rr[c] != 1) {
      Elem s = f.inv(rr[c]);
      for (std::size_t k = c; k < ncols; ++k) rr[k] = f.mul(rr[k], s);
    }
    for (std::size_t i = 0; i < nrows; ++i) {
      if (i == r) continue;
      Elem* ri = d.data() + i * ncols;
      Elem t = ri[c];
      if (t == 0) continue;
      Elem nt = f.neg(t);
      for (std::size_t k = c; k < ncols; ++k)
        if (rr[k] != 0) ri[k] = f.add(ri[k], f.mul(nt, rr[k]));
    }
    if (pivots) pivots->push_back(c);
    ++r;
  }
  return r;
}

Subspace from_block(const FiniteField& f, std::vector<Elem> d, std::size_t nrows, std::size_t ncols) {
  std::size_t r = echelonize(f, d, nrows, ncols);
  d.resize(r * ncols);
  return Subspace::from_canonical(ncols, r, std::move(d));
}

// Rows spanning {x : B x = 0} for a row-major block B.
Subspace kernel_block(const FiniteField& f, std::vector<Elem> d, std::size_t nrows, std::size_t ncols) {
  std::vector<std::size_t> piv;
  std::size_t r = echelonize(f, d, nrows, ncols, &piv);
  std::vector<bool> is_pivot(ncols, false);
  for (auto c : piv) is_pivot[c] = true;
  const std::size_t k = ncols - r;
  std::vector<Elem> out(k * ncols, 0);
  std::size_t kr = 0;
  for (std::size_t c = 0; c < ncols; ++c) {
    if (is_pivot[c]) continue;
    Elem* row = out.data() + kr * ncols;
    row[c] = 1;
    for (std::size_t i = 0; i < r; ++i) row[piv[i]] = f.neg(d[i * ncols + c]);
    ++kr;
  }
  return from_block(f, std::move(out), k, ncols);
}

}  // namespace

Subspace Subspace::zero(std::size_t ambient) { return from_canonical(ambient, 0, {}); }

Subspace Subspace::full(std::size_t ambient) {
  std::vector<Elem> d(ambient * ambient, 0);
  for (std::size_t i = 0; i < ambient; ++i) d[i * ambient + i] = 1;
  return from_canonical(ambient, ambient, std::move(d));
}

Subspace Subspace::span(const FiniteField& f, const FMat& m) {
  return from_block(f, m.data(), m.rows(), m.cols());
}

Subspace Subspace::from_canonical(std::size_t ambient, std::size_t dim, std::vector<Elem> rows) {
  Subspace s;
  s.ambient_ = ambient;
  s.dim_ = dim;
  s.rows_ = std::move(rows);
  return s;
}

FMat Subspace::basis() const {
  FMat m(dim_, ambient_, 0);
  m.data() = rows_;
  return m;
}

std::size_t Subspace::pivot(std::size_t k) const {
  const Elem* r = row(k);
  for (std::size_t c = 0; c < ambient_; ++c)
    if (r[c] != 0) return c;
  throw std::logic_error("zero row in subspace basis");
}

bool Subspace::operator<(const Subspace& o) const {
  if (ambient_ != o.ambient_) return ambient_ < o.ambient_;
  if (dim_ != o.dim_) return dim_ < o.dim_;
  return rows_ < o.rows_;
}

std::size_t Subspace::hash() const {
  std::size_t h = ambient_ * 1315423911u + dim_;
  for (Elem e : rows_) h = h * 1000003u ^ e;
  return h;
}

bool Subspace::rational_over(unsigned p) const {
  for (Elem e : rows_)
    if (e >= p) return false;
  return true;
}

Subspace sum(const FiniteField& f, const Subspace& a, const Subspace& b) {
  if (a.ambient() != b.ambient()) throw std::invalid_argument("ambient mismatch in sum");
  if (b.dim() == 0) return a;
  if (a.dim() == 0) return b;
  std::vector<Elem> d = a.data();
  d.insert(d.end(), b.data().begin(), b.data().end());
  return from_block(f, std::move(d), a.dim() + b.dim(), a.ambient());
}

Subspace intersect(const FiniteField& f, const Subspace& a, const Subspace& b) {
  if (a.ambient() != b.ambient()) throw std::invalid_argument("ambient mismatch in intersect");
  const std::size_t n = a.ambient();
  if (a.dim() == 0 || b.dim() == 0) return Subspace::zero(n);
  // Zassenhaus: rows [a | a] and [b | 0].
  const std::size_t rows = a.dim() + b.dim();
  std::vector<Elem> d(rows * 2 * n, 0);
  for (std::size_t i = 0; i < a.dim(); ++i)
    for (std::size_t c = 0; c < n; ++c) {
      d[i * 2 * n + c] = a.row(i)[c];
      d[i * 2 * n + n + c] = a.row(i)[c];
    }
  for (std::size_t i = 0; i < b.dim(); ++i)
    for (std::size_t c = 0; c < n; ++c) d[(a.dim() + i) * 2 * n + c] = b.row(i)[c];
  std::size_t r = echelonize(f, d, rows, 2 * n);
  std::vector<Elem> out;
  std::size_t k = 0;
  for (std::size_t i = 0; i < r; ++i) {
    const Elem* row = d.data() + i * 2 * n;
    bool left_zero = true;
    for (std::size_t c = 0; c < n; ++c)
      if (row[c] != 0) {
        left_zero = false;
        break;
      }
    if (!left_zero) continue;
    out.insert(out.end(), row + n, row + 2 * n);
    ++k;
  }
  return from_block(f, std::move(out), k, n);
}

bool contains_vector(const FiniteField& f, const Subspace& a, const Elem* v) {
  const std::size_t n = a.ambient();
  std::vector<Elem> w(v, v + n);
  for (std::size_t k = 0; k < a.dim(); ++k) {
    const Elem* r = a.row(k);
    std::size_t p = 0;
    while (r[p] == 0) ++p;
    Elem t = w[p];
    if (t == 0) continue;
    Elem nt = f.neg(t);
    for (std::size_t c = p; c < n; ++c)
      if (r[c] != 0) w[c] = f.add(w[c], f.mul(nt, r[c]));
  }
  for (Elem e : w)
    if (e != 0) return false;
  return true;
}

bool contains(const FiniteField& f, const Subspace& a, const Subspace& b) {
  if (a.ambient() != b.ambient()) throw std::invalid_argument("ambient mismatch in contains");
  if (b.dim() > a.dim()) return false;
  if (b.dim() == 0) return true;
  if (a.dim() == a.ambient()) return true;
  for (std::size_t k = 0; k < b.dim(); ++k)
    if (!contains_vector(f, a, b.row(k))) return false;
  return true;
}

Subspace image(const FiniteField& f, const FMat& m, const Subspace& s) {
  if (m.cols() != s.ambient()) throw std::invalid_argument("shape mismatch in image");
  const std::size_t out_n = m.rows();
  std::vector<Elem> d(s.dim() * out_n, 0);
  for (std::size_t k = 0; k < s.dim(); ++k) {
    const Elem* x = s.row(k);
    Elem* y = d.data() + k * out_n;
    for (std::size_t i = 0; i < out_n; ++i) {
      Elem acc = 0;
      const Elem* mr = m.row(i);
      for (std::size_t c = 0; c < m.cols(); ++c)
        if (mr[c] != 0 && x[c] != 0) acc = f.add(acc, f.mul(mr[c], x[c]));
      y[i] = acc;
    }
  }
  return from_block(f, std::move(d), s.dim(), out_n);
}

Subspace kernel(const FiniteField& f, const FMat& m) { return kernel_block(f, m.data(), m.rows(), m.cols()); }

Subspace perp_standard(const FiniteField& f, const Subspace& s) {
  return kernel_block(f, s.data(), s.dim(), s.ambient());
}

Subspace preimage(const FiniteField& f, const FMat& m, const Subspace& t) {
  if (m.rows() != t.ambient()) throw std::invalid_argument("shape mismatch in preimage");
  const std::size_t n = m.cols();
  if (t.dim() == t.ambient()) return Subspace::full(n);
  Subspace pt = perp_standard(f, t);
  // rows of (P M)
  std::vector<Elem> d(pt.dim() * n, 0);
  for (std::size_t k = 0; k < pt.dim(); ++k) {
    const Elem* y = pt.row(k);
    Elem* out = d.data() + k * n;
    for (std::size_t i = 0; i < m.rows(); ++i) {
      if (y[i] == 0) continue;
      const Elem* mr = m.row(i);
      for (std::size_t c = 0; c < n; ++c)
        if (mr[c] != 0) out[c] = f.add(out[c], f.mul(y[i], mr[c]));
    }
  }
  return kernel_block(f, std::move(d), pt.dim(), n);
}

Subspace annihilator(const FiniteField& f, const FMat& gram, const Subspace& s) {
  if (gram.cols() != s.ambient()) throw std::invalid_argument("shape mismatch in annihilator");
  const std::size_t n = gram.rows();
  if (s.dim() == 0) return Subspace::full(n);
  std::vector<Elem> d(s.dim() * n, 0);
  for (std::size_t k = 0; k < s.dim(); ++k) {
    const Elem* y = s.row(k);
    Elem* out = d.data() + k * n;
    for (std::size_t i = 0; i < n; ++i) {
      Elem acc = 0;
      const Elem* gr = gram.row(i);
      for (std::size_t c = 0; c < gram.cols(); ++c)
        if (gr[c] != 0 && y[c] != 0) acc = f.add(acc, f.mul(gr[c], y[c]));
      out[i] = acc;
    }
  }
  return kernel_block(f, std::move(d), s.dim(), n);
}

Elem bilinear(const FiniteField& f, const FMat& gram, const Elem* x, const Elem* y) {
  Elem acc = 0;
  for (std::size_t i = 0; i < gram.rows(); ++i) {
    if (x[i] == 0) continue;
    const Elem* gr = gram.row(i);
    Elem inner = 0;
    for (std::size_t c = 0; c < gram.cols(); ++c)
      if (gr[c] != 0 && y[c] != 0) inner = f.add(inner, f.mul(gr[c], y[c]));
    acc = f.add(acc, f.mul(x[i], inner));
  }
  return acc;
}

bool is_isotropic(const FiniteField& f, const FMat& gram, const Subspace& s) {
  for (std::size_t a = 0; a < s.dim(); ++a)
    for (std::size_t b = 0; b < s.dim(); ++b)
      if (bilinear(f, gram, s.row(a), s.row(b)) != 0) return false;
  return true;
}

FMat complement_basis(const FiniteField& f, const Subspace& a, const Subspace& b) {
  const std::size_t n = a.ambient();
  const std::size_t m = b.dim() - a.dim();
  FMat out(m, n, 0);
  Subspace acc = a;
  std::size_t k = 0;
  for (std::size_t i = 0; i < b.dim() && k < m; ++i) {
    if (contains_vector(f, acc, b.row(i))) continue;
    std::copy(b.row(i), b.row(i) + n, out.row(k));
    ++k;
    std::vector<Elem> d = acc.data();
    d.insert(d.end(), b.row(i), b.row(i) + n);
    acc = from_block(f, std::move(d), acc.dim() + 1, n);
  }
  if (k != m) throw std::invalid_argument("complement_basis requires a contained in b");
  return out;
}

Subspace extend(const FiniteField& f, const Subspace& a, const FMat& coeffs, const FMat& basis) {
  const std::size_t n = a.ambient();
  std::vector<Elem> d = a.data();
  d.resize((a.dim() + coeffs.rows()) * n, 0);
  for (std::size_t k = 0; k < coeffs.rows(); ++k) {
    Elem* out = d.data() + (a.dim() + k) * n;
    for (std::size_t j = 0; j < coeffs.cols(); ++j) {
      Elem c = coeffs(k, j);
      if (c == 0) continue;
      const Elem* br = basis.row(j);
      for (std::size_t x = 0; x < n; ++x)
        if (br[x] != 0) out[x] = f.add(out[x], f.mul(c, br[x]));
    }
  }
  return from_block(f, std::move(d), a.dim() + coeffs.rows(), n);
}

}  // namespace sqv
