#pragma once

#include <map>
#include <vector>

#include "sqv/dynkin.hpp"
#include "sqv/matrix.hpp"

namespace sqv {

// A monomial in the doubled quiver, recorded as its vertex sequence.
using Walk = std::vector<Vertex>;

struct Arrow {
  Vertex source;
  Vertex target;
};

// The doubled A_{2d-1} quiver. Each vertex k carries the relation
// (k,k+1,k) - sign(k) (k,k-1,k), dropping out-of-range terms. The standard
// convention is sign(k) = 1 everywhere.
class FramedQuiver {
 public:
  explicit FramedQuiver(const DynkinData& dyn, std::vector<int> relation_signs = {});

  const DynkinData& dynkin() const { return dyn_; }
  const std::vector<Arrow>& arrows() const { return arrows_; }
  int relation_sign(Vertex k) const { return signs_[static_cast<std::size_t>(k)]; }
  // sigma acts on arrows by relabelling vertices.
  Arrow sigma(const Arrow& a) const { return {dyn_.sigma(a.source), dyn_.sigma(a.target)}; }
  static Arrow reverse(const Arrow& a) { return {a.target, a.source}; }

 private:
  DynkinData dyn_;
  std::vector<Arrow> arrows_;
  std::vector<int> signs_;
};

// A path class: coordinates over the monomial basis of Q(source, target).
struct PathClass {
  Vertex source = 0;
  Vertex target = 0;
  std::vector<mpq_class> coords;
};

// Monomial bases and normal forms for the preprojective path category.
// Q(i,j) is the space of paths from i to j.
class HomSpaceTable {
 public:
  explicit HomSpaceTable(const FramedQuiver& quiver);

  const FramedQuiver& quiver() const { return quiver_; }
  const DynkinData& dynkin() const { return quiver_.dynkin(); }
  std::size_t dim(Vertex i, Vertex j) const { return basis(i, j).size(); }
  const std::vector<Walk>& basis(Vertex i, Vertex j) const;
  // Dimension of the degree-l part of Q(i,j).
  std::size_t graded_dim(Vertex i, Vertex j, int length) const;
  // Coordinates of a monomial over basis(i,j); walks longer than the nilpotency bound vanish.
  std::vector<mpq_class> normal_form(const Walk& w) const;
  // Index of the top-degree basis monomial of Q(j, sigma j).
  std::size_t top_index(Vertex j) const;

  PathClass monomial(const Walk& w) const;
  // p o h, for h in Q(k,i) and p in Q(i,j).
  PathClass compose(const PathClass& p, const PathClass& h) const;
  // Vertex-relabelling automorphism.
  PathClass sigma(const PathClass& p) const;
  // Walk-reversal anti-automorphism.
  PathClass bar(const PathClass& p) const;

  int max_length() const { return 2 * dynkin().half_rank() - 2; }

 private:
  std::size_t idx(Vertex i, Vertex j) const;

  FramedQuiver quiver_;
  std::vector<std::vector<Walk>> basis_;
  std::vector<std::vector<std::size_t>> graded_;  // per (i,j): dims by length
  std::map<Walk, std::vector<mpq_class>> normal_;
};

// B_ij(p,q): coefficient of the top class of Q(j, sigma j) in sigma(q) o bar(p),
// for p in Q(i,j) and q in Q(sigma i, j).
class PairingTable {
 public:
  explicit PairingTable(const HomSpaceTable& table);

  // Matrix with rows indexed by basis(i,j) and columns by basis(sigma i, j).
  const QMat& matrix(Vertex i, Vertex j) const;
  mpq_class pair(const PathClass& p, const PathClass& q) const;

 private:
  const HomSpaceTable* table_;
  std::vector<QMat> b_;
};

// Failure of a structural check on the path category or pairing.
class PairingError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Checks nondegeneracy, B[sigma i][j] = B[i][j]^T and the adjunction
// B_i(p o h, q) = B_i'(p, q o sigma(bar h)) for every arrow h: i -> i'.
// Throws PairingError with a witness on failure.
void check_pairing(const HomSpaceTable& table, const PairingTable& pairing);

}  // namespace sqv
