#pragma once

#include <memory>
#include <vector>

#include "sqv/dynkin.hpp"
#include "sqv/path_category.hpp"
#include "sqv/subspace.hpp"

namespace sqv {

// Framing data. In sigma mode every W(j) carries the standard symplectic form
// (e_k, e_{m+k}) -> 1 and must be even-dimensional.
struct FrameData {
  DimVector w;
  bool sigma_mode = false;
  std::vector<QMat> forms;  // forms[j]: Gram matrix on W(j) (sigma mode only)
};

FrameData make_frame(const DynkinData& dyn, const DimVector& w, bool sigma_mode);

// One coordinate of K(i) = sum_j Hom(Q(i,j), W(j)): the value of a function on
// basis path `path` of Q(i,j), component `slot` of W(j).
struct KanCoordinate {
  Vertex j;
  std::size_t path;
  int slot;
};

// Rational structure data of K_R W. Arrow maps are indexed by the source
// vertex: up[k]: K(k) -> K(k+1), down[k]: K(k+1) -> K(k).
struct KanRep {
  DynkinData dyn{1};
  DimVector w;
  DimVector dims;
  std::vector<std::vector<KanCoordinate>> coords;
  std::vector<QMat> up;
  std::vector<QMat> down;
  std::vector<QMat> eval;  // eval[i]: K(i) -> W(i), f -> f_i(id)
  bool sigma_mode = false;
  std::vector<QMat> gram;  // gram[i]: K(i) x K(sigma i)

  const QMat& arrow(Vertex from, Vertex to) const;
};

KanRep build_kan(const FrameData& frame, const HomSpaceTable& table, const PairingTable* pairing = nullptr);

// Structural failure of the big form (antisymmetry, adjunction, nondegeneracy).
class FormError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};
void check_big_form(const KanRep& kan);

// K_R W reduced into a finite field.
class FqRep {
 public:
  FqRep(const KanRep& kan, FieldPtr field);

  const FiniteField& field() const { return *field_; }
  const FieldPtr& field_ptr() const { return field_; }
  const DynkinData& dynkin() const { return dyn_; }
  int rank() const { return dyn_.rank(); }
  const DimVector& w() const { return w_; }
  const DimVector& dims() const { return dims_; }
  std::size_t dim(Vertex i) const { return static_cast<std::size_t>(dims_[static_cast<std::size_t>(i)]); }
  bool sigma_mode() const { return sigma_mode_; }

  const FMat& arrow(Vertex from, Vertex to) const;
  const FMat& eval(Vertex i) const { return eval_[static_cast<std::size_t>(i)]; }
  const FMat& gram(Vertex i) const { return gram_[static_cast<std::size_t>(i)]; }

 private:
  FieldPtr field_;
  DynkinData dyn_;
  DimVector w_;
  DimVector dims_;
  bool sigma_mode_;
  std::vector<FMat> up_, down_, eval_, gram_;
};

// A point of L(w): one subspace F(i) of K(i) per vertex.
struct Point {
  std::vector<Subspace> spaces;

  DimVector dim() const;
  const Subspace& operator[](Vertex i) const { return spaces[static_cast<std::size_t>(i)]; }
  Subspace& operator[](Vertex i) { return spaces[static_cast<std::size_t>(i)]; }
  bool operator==(const Point& o) const { return spaces == o.spaces; }
  bool operator!=(const Point& o) const { return spaces != o.spaces; }
  bool operator<(const Point& o) const { return spaces < o.spaces; }
  std::size_t hash() const;
  bool rational_over(unsigned p) const;
};

struct PointHash {
  std::size_t operator()(const Point& p) const { return p.hash(); }
};

bool is_subrep(const FqRep& rep, const Point& f);
// F^perp(i) = annihilator of F(sigma i) in K(i).
Point perp(const FqRep& rep, const Point& f);
bool is_sigma_fixed(const FqRep& rep, const Point& f);
// Annihilator of a subspace of K(sigma i) inside K(i).
Subspace perp_at(const FqRep& rep, Vertex i, const Subspace& s_at_sigma_i);

// Good-prime test: all structure maps, and the form in sigma mode, keep
// their rational ranks after reduction.
bool is_good_prime(const KanRep& kan, unsigned p);

}  // namespace sqv
