#include "sqv/subspace_enum.hpp"

#include <stdexcept>
#include <vector>

namespace sqv {

namespace {

// Calls fn(pivots) for each k-subset of {0..n-1} in lexicographic order.
bool for_each_combination(std::size_t n, std::size_t k, const std::function<bool(const std::vector<std::size_t>&)>& fn) {
  if (k > n) return true;
  std::vector<std::size_t> c(k);
  for (std::size_t i = 0; i < k; ++i) c[i] = i;
  while (true) {
    if (!fn(c)) return false;
    if (k == 0) return true;
    std::size_t i = k;
    while (i > 0 && c[i - 1] == n - k + i - 1) --i;
    if (i == 0) return true;
    ++c[i - 1];
    for (std::size_t j = i; j < k; ++j) c[j] = c[j - 1] + 1;
  }
}

// Advances an odometer over F^len; returns false after the last value.
bool next_tuple(std::vector<Elem>& x, unsigned q) {
  for (std::size_t i = x.size(); i-- > 0;) {
    if (x[i] + 1u < q) {
      ++x[i];
      return true;
    }
    x[i] = 0;
  }
  return false;
}

struct IsoSearch {
  const FiniteField& f;
  const FMat& gram;
  std::size_t m;
  std::size_t k;
  const SubspaceVisitor& visit;
  std::vector<std::size_t> piv;
  std::vector<bool> is_piv;
  std::vector<Elem> rows;  // k x m

  bool fill(std::size_t a) {
    if (a == k) return visit(Subspace::from_canonical(m, k, rows));
    const std::size_t pa = piv[a];
    std::vector<std::size_t> free_pos;
    for (std::size_t c = pa + 1; c < m; ++c)
      if (!is_piv[c]) free_pos.push_back(c);
    const std::size_t nf = free_pos.size();
    // Constraints omega(row_b, row_a) = 0 for b < a, as a linear system in the free entries.
    const std::size_t ncols = nf + 1;
    std::vector<Elem> sys(a * ncols, 0);
    for (std::size_t b = 0; b < a; ++b) {
      const Elem* rb = rows.data() + b * m;
      std::vector<Elem> g(m, 0);  // row_b^T G
      for (std::size_t i = 0; i < m; ++i) {
        if (rb[i] == 0) continue;
        const Elem* gr = gram.row(i);
        for (std::size_t c = 0; c < m; ++c)
          if (gr[c] != 0) g[c] = f.add(g[c], f.mul(rb[i], gr[c]));
      }
      for (std::size_t j = 0; j < nf; ++j) sys[b * ncols + j] = g[free_pos[j]];
      sys[b * ncols + nf] = f.neg(g[pa]);
    }
    Mat<Elem> sm(a, ncols, 0);
    sm.data() = sys;
    auto e = rref(f, sm);
    if (e.rank > 0 && e.pivots[e.rank - 1] == nf) return true;  // inconsistent
    std::vector<Elem> part(nf, 0);
    for (std::size_t i = 0; i < e.rank; ++i) part[e.pivots[i]] = e.echelon(i, nf);
    // Homogeneous solutions: kernel of the coefficient part.
    std::vector<std::vector<Elem>> kern;
    {
      std::vector<bool> pc(nf, false);
      for (std::size_t i = 0; i < e.rank; ++i) pc[e.pivots[i]] = true;
      for (std::size_t c = 0; c < nf; ++c) {
        if (pc[c]) continue;
        std::vector<Elem> v(nf, 0);
        v[c] = 1;
        for (std::size_t i = 0; i < e.rank; ++i) v[e.pivots[i]] = f.neg(e.echelon(i, c));
        kern.push_back(std::move(v));
      }
    }
    std::vector<Elem> coef(kern.size(), 0);
    do {
      std::vector<Elem> x = part;
      for (std::size_t t = 0; t < kern.size(); ++t) {
        if (coef[t] == 0) continue;
        for (std::size_t j = 0; j < nf; ++j) x[j] = f.add(x[j], f.mul(coef[t], kern[t][j]));
      }
      Elem* ra = rows.data() + a * m;
      std::fill(ra, ra + m, 0);
      ra[pa] = 1;
      for (std::size_t j = 0; j < nf; ++j) ra[free_pos[j]] = x[j];
      if (!fill(a + 1)) return false;
    } while (next_tuple(coef, f.order()));
    return true;
  }
};

}  // namespace

bool for_each_subspace(const FiniteField& f, std::size_t n, std::size_t k, const SubspaceVisitor& visit) {
  if (k > n) return true;
  return for_each_combination(n, k, [&](const std::vector<std::size_t>& piv) {
    std::vector<bool> is_piv(n, false);
    for (auto p : piv) is_piv[p] = true;
    std::vector<std::pair<std::size_t, std::size_t>> free_pos;
    for (std::size_t a = 0; a < k; ++a)
      for (std::size_t c = piv[a] + 1; c < n; ++c)
        if (!is_piv[c]) free_pos.emplace_back(a, c);
    std::vector<Elem> vals(free_pos.size(), 0);
    std::vector<Elem> rows(k * n, 0);
    do {
      std::fill(rows.begin(), rows.end(), 0);
      for (std::size_t a = 0; a < k; ++a) rows[a * n + piv[a]] = 1;
      for (std::size_t t = 0; t < free_pos.size(); ++t) rows[free_pos[t].first * n + free_pos[t].second] = vals[t];
      if (!visit(Subspace::from_canonical(n, k, rows))) return false;
    } while (next_tuple(vals, f.order()));
    return true;
  });
}

bool for_each_subspace_between(const FiniteField& f, const Subspace& lower, const Subspace& upper, std::size_t k,
                               const SubspaceVisitor& visit) {
  if (k < lower.dim() || k > upper.dim()) return true;
  if (!contains(f, upper, lower)) return true;
  if (lower.dim() == upper.dim()) return visit(lower);
  FMat comp = complement_basis(f, lower, upper);
  if (k == lower.dim()) return visit(lower);
  if (k == upper.dim()) return visit(upper);
  return for_each_subspace(f, comp.rows(), k - lower.dim(),
                           [&](const Subspace& y) { return visit(extend(f, lower, y.basis(), comp)); });
}

bool for_each_isotropic(const FiniteField& f, const FMat& gram, std::size_t k, const SubspaceVisitor& visit) {
  const std::size_t m = gram.rows();
  if (k > m) return true;
  return for_each_combination(m, k, [&](const std::vector<std::size_t>& piv) {
    IsoSearch s{f, gram, m, k, visit, piv, std::vector<bool>(m, false), std::vector<Elem>(k * m, 0)};
    for (auto p : piv) s.is_piv[p] = true;
    return s.fill(0);
  });
}

bool for_each_lagrangian_between(const FiniteField& f, const FMat& gram, const Subspace& lower, const Subspace& upper,
                                 const SubspaceVisitor& visit) {
  const std::size_t n = gram.rows();
  if (n % 2 != 0) return true;
  Subspace lo = sum(f, lower, annihilator(f, gram, upper));
  Subspace hi = intersect(f, upper, annihilator(f, gram, lower));
  if (!contains(f, hi, lo)) return true;
  if (!is_isotropic(f, gram, lo)) return true;
  if (lo.dim() > n / 2) return true;
  const std::size_t k = n / 2 - lo.dim();
  if (k == 0) return visit(lo);
  FMat comp = complement_basis(f, lo, hi);
  const std::size_t m = comp.rows();
  FMat g(m, m, 0);
  for (std::size_t a = 0; a < m; ++a)
    for (std::size_t b = 0; b < m; ++b) g(a, b) = bilinear(f, gram, comp.row(a), comp.row(b));
  return for_each_isotropic(f, g, k, [&](const Subspace& y) { return visit(extend(f, lo, y.basis(), comp)); });
}

std::uint64_t gaussian_binomial(unsigned n, unsigned k, std::uint64_t q) {
  if (k > n) return 0;
  // Product formula evaluated with exact integer division at each step.
  unsigned __int128 num = 1, den = 1;
  for (unsigned i = 0; i < k; ++i) {
    unsigned __int128 a = 1, b = 1;
    for (unsigned t = 0; t < n - i; ++t) a *= q;
    for (unsigned t = 0; t < i + 1; ++t) b *= q;
    num *= (a - 1);
    den *= (b - 1);
  }
  if (q == 1) {
    // Ordinary binomial.
    std::uint64_t r = 1;
    for (unsigned i = 0; i < k; ++i) r = r * (n - i) / (i + 1);
    return r;
  }
  return static_cast<std::uint64_t>(num / den);
}

}  // namespace sqv
