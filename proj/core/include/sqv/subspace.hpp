#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <vector>

#include "sqv/finite_field.hpp"
#include "sqv/matrix.hpp"

namespace sqv {

using Elem = FiniteField::value_type;

// A subspace of F^n stored as its canonical reduced row echelon basis.
// Two subspaces are equal iff their stored bases are equal. The encoding is
// field-agnostic: a subspace over GF(p) is also a valid subspace over GF(p^r).
class Subspace {
 public:
  Subspace() = default;

  static Subspace zero(std::size_t ambient);
  static Subspace full(std::size_t ambient);
  // Span of the rows of m.
  static Subspace span(const FiniteField& f, const FMat& m);
  // Wraps an already-canonical basis (no reduction performed).
  static Subspace from_canonical(std::size_t ambient, std::size_t dim, std::vector<Elem> rows);

  std::size_t ambient() const { return ambient_; }
  std::size_t dim() const { return dim_; }
  const Elem* row(std::size_t k) const { return rows_.data() + k * ambient_; }
  const std::vector<Elem>& data() const { return rows_; }
  FMat basis() const;
  std::size_t pivot(std::size_t k) const;

  bool operator==(const Subspace& o) const {
    return ambient_ == o.ambient_ && dim_ == o.dim_ && rows_ == o.rows_;
  }
  bool operator!=(const Subspace& o) const { return !(*this == o); }
  bool operator<(const Subspace& o) const;

  std::size_t hash() const;
  // True when every coordinate lies in the prime subfield of characteristic p.
  bool rational_over(unsigned p) const;

 private:
  std::size_t ambient_ = 0;
  std::size_t dim_ = 0;
  std::vector<Elem> rows_;
};

Subspace sum(const FiniteField& f, const Subspace& a, const Subspace& b);
Subspace intersect(const FiniteField& f, const Subspace& a, const Subspace& b);
// a contains b.
bool contains(const FiniteField& f, const Subspace& a, const Subspace& b);
bool contains_vector(const FiniteField& f, const Subspace& a, const Elem* v);
// M x for x in s; M has shape (m x ambient).
Subspace image(const FiniteField& f, const FMat& m, const Subspace& s);
// {x : M x in t}.
Subspace preimage(const FiniteField& f, const FMat& m, const Subspace& t);
Subspace kernel(const FiniteField& f, const FMat& m);
// Standard dot-product orthogonal complement.
Subspace perp_standard(const FiniteField& f, const Subspace& s);
// {x : x^T G y = 0 for all y in s}; G has shape (left x right), s lives in the right space.
Subspace annihilator(const FiniteField& f, const FMat& gram, const Subspace& s);
// x^T G y.
Elem bilinear(const FiniteField& f, const FMat& gram, const Elem* x, const Elem* y);
bool is_isotropic(const FiniteField& f, const FMat& gram, const Subspace& s);
// Basis (as rows) of a complement of a inside b; requires a contained in b.
FMat complement_basis(const FiniteField& f, const Subspace& a, const Subspace& b);
// Span of a plus the rows of (coeffs * basis).
Subspace extend(const FiniteField& f, const Subspace& a, const FMat& coeffs, const FMat& basis);

struct SubspaceHash {
  std::size_t operator()(const Subspace& s) const { return s.hash(); }
};

}  // namespace sqv
