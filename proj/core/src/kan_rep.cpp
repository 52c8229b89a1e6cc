#include "sqv/kan_rep.hpp"

#include <sstream>

namespace sqv {

FrameData make_frame(const DynkinData& dyn, const DimVector& w, bool sigma_mode) {
  if (w.size() != static_cast<std::size_t>(dyn.rank())) throw std::invalid_argument("frame vector has wrong length");
  if (!w.nonnegative()) throw std::invalid_argument("frame vector has a negative entry");
  FrameData fr;
  fr.w = w;
  fr.sigma_mode = sigma_mode;
  if (sigma_mode) {
    for (std::size_t j = 0; j < w.size(); ++j) {
      if (w[j] % 2 != 0) throw std::invalid_argument("sigma mode needs even frame dimensions (vertex " + std::to_string(j + 1) + ")");
      const std::size_t m = static_cast<std::size_t>(w[j] / 2);
      QMat g(2 * m, 2 * m, 0);
      for (std::size_t k = 0; k < m; ++k) {
        g(k, m + k) = 1;
        g(m + k, k) = -1;
      }
      fr.forms.push_back(std::move(g));
    }
  }
  return fr;
}

const QMat& KanRep::arrow(Vertex from, Vertex to) const {
  if (to == from + 1) return up[static_cast<std::size_t>(from)];
  if (to == from - 1) return down[static_cast<std::size_t>(to)];
  throw std::invalid_argument("no arrow between vertices");
}

KanRep build_kan(const FrameData& frame, const HomSpaceTable& table, const PairingTable* pairing) {
  const DynkinData& dyn = table.dynkin();
  const int n = dyn.rank();
  if (frame.w.size() != static_cast<std::size_t>(n)) throw std::invalid_argument("frame does not match quiver");
  KanRep k;
  k.dyn = dyn;
  k.w = frame.w;
  k.sigma_mode = frame.sigma_mode;
  k.dims = DimVector(static_cast<std::size_t>(n), 0);
  k.coords.resize(static_cast<std::size_t>(n));
  // offset[i][j]: first coordinate of the j-component of K(i)
  std::vector<std::vector<std::size_t>> offset(static_cast<std::size_t>(n), std::vector<std::size_t>(static_cast<std::size_t>(n), 0));
  for (Vertex i = 0; i < n; ++i) {
    auto& cs = k.coords[static_cast<std::size_t>(i)];
    for (Vertex j = 0; j < n; ++j) {
      offset[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)] = cs.size();
      const int wj = frame.w[static_cast<std::size_t>(j)];
      for (std::size_t b = 0; b < table.dim(i, j); ++b)
        for (int s = 0; s < wj; ++s) cs.push_back({j, b, s});
    }
    k.dims[static_cast<std::size_t>(i)] = static_cast<int>(cs.size());
  }
  auto arrow_matrix = [&](Vertex i, Vertex ip) {
    const std::size_t rows = static_cast<std::size_t>(k.dims[static_cast<std::size_t>(ip)]);
    const std::size_t cols = static_cast<std::size_t>(k.dims[static_cast<std::size_t>(i)]);
    QMat m(rows, cols, 0);
    for (Vertex j = 0; j < n; ++j) {
      const int wj = frame.w[static_cast<std::size_t>(j)];
      if (wj == 0) continue;
      const auto& target_basis = table.basis(ip, j);
      for (std::size_t a = 0; a < target_basis.size(); ++a) {
        Walk wk{i};
        wk.insert(wk.end(), target_basis[a].begin(), target_basis[a].end());
        auto nf = table.normal_form(wk);  // p' o h over basis(i,j)
        for (std::size_t b = 0; b < nf.size(); ++b) {
          if (sgn(nf[b]) == 0) continue;
          for (int s = 0; s < wj; ++s)
            m(offset[static_cast<std::size_t>(ip)][static_cast<std::size_t>(j)] + a * static_cast<std::size_t>(wj) + static_cast<std::size_t>(s),
              offset[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)] + b * static_cast<std::size_t>(wj) + static_cast<std::size_t>(s)) = nf[b];
        }
      }
    }
    return m;
  };
  for (Vertex i = 0; i + 1 < n; ++i) {
    k.up.push_back(arrow_matrix(i, i + 1));
    k.down.push_back(arrow_matrix(i + 1, i));
  }
  for (Vertex i = 0; i < n; ++i) {
    const std::size_t wi = static_cast<std::size_t>(frame.w[static_cast<std::size_t>(i)]);
    QMat e(wi, static_cast<std::size_t>(k.dims[static_cast<std::size_t>(i)]), 0);
    // The identity path is the first (degree zero) basis element of Q(i,i).
    for (std::size_t s = 0; s < wi; ++s) e(s, offset[static_cast<std::size_t>(i)][static_cast<std::size_t>(i)] + s) = 1;
    k.eval.push_back(std::move(e));
  }
  if (frame.sigma_mode) {
    if (!pairing) throw std::invalid_argument("sigma mode requires a pairing table");
    const Rationals Q;
    for (Vertex i = 0; i < n; ++i) {
      Vertex si = dyn.sigma(i);
      QMat g(static_cast<std::size_t>(k.dims[static_cast<std::size_t>(i)]), static_cast<std::size_t>(k.dims[static_cast<std::size_t>(si)]), 0);
      for (Vertex j = 0; j < n; ++j) {
        const int wj = frame.w[static_cast<std::size_t>(j)];
        if (wj == 0) continue;
        const QMat& b = pairing->matrix(i, j);
        QMat nmat = inverse(Q, b).transpose();
        const QMat& om = frame.forms[static_cast<std::size_t>(j)];
        for (std::size_t a = 0; a < nmat.rows(); ++a)
          for (std::size_t c = 0; c < nmat.cols(); ++c) {
            if (sgn(nmat(a, c)) == 0) continue;
            for (int s = 0; s < wj; ++s)
              for (int t = 0; t < wj; ++t) {
                if (sgn(om(static_cast<std::size_t>(s), static_cast<std::size_t>(t))) == 0) continue;
                g(offset[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)] + a * static_cast<std::size_t>(wj) + static_cast<std::size_t>(s),
                  offset[static_cast<std::size_t>(si)][static_cast<std::size_t>(j)] + c * static_cast<std::size_t>(wj) + static_cast<std::size_t>(t)) =
                    nmat(a, c) * om(static_cast<std::size_t>(s), static_cast<std::size_t>(t));
              }
          }
      }
      k.gram.push_back(std::move(g));
    }
  }
  return k;
}

void check_big_form(const KanRep& kan) {
  if (!kan.sigma_mode) return;
  const Rationals Q;
  const DynkinData& dyn = kan.dyn;
  const int n = dyn.rank();
  for (Vertex i = 0; i < n; ++i) {
    const QMat& g = kan.gram[static_cast<std::size_t>(i)];
    const QMat& gs = kan.gram[static_cast<std::size_t>(dyn.sigma(i))];
    QMat neg = g.transpose();
    for (auto& x : neg.data()) x = -x;
    if (gs != neg) throw FormError("big form is not antisymmetric at vertex " + std::to_string(i + 1));
    if (g.rows() != g.cols() || rank(Q, g) != g.rows())
      throw FormError("big form is degenerate at vertex " + std::to_string(i + 1));
  }
  for (Vertex i = 0; i < n; ++i)
    for (Vertex ip : dyn.neighbors(i)) {
      const QMat& h = kan.arrow(i, ip);
      const QMat& sh = kan.arrow(dyn.sigma(ip), dyn.sigma(i));
      QMat lhs = multiply(Q, h.transpose(), kan.gram[static_cast<std::size_t>(ip)]);
      QMat rhs = multiply(Q, kan.gram[static_cast<std::size_t>(i)], sh);
      if (lhs != rhs)
        throw FormError("big form adjunction fails for arrow " + std::to_string(i + 1) + "->" + std::to_string(ip + 1));
    }
}

FqRep::FqRep(const KanRep& kan, FieldPtr field)
    : field_(std::move(field)), dyn_(kan.dyn), w_(kan.w), dims_(kan.dims), sigma_mode_(kan.sigma_mode) {
  const FiniteField& f = *field_;
  for (auto& m : kan.up) up_.push_back(reduce_matrix(f, m));
  for (auto& m : kan.down) down_.push_back(reduce_matrix(f, m));
  for (auto& m : kan.eval) eval_.push_back(reduce_matrix(f, m));
  for (auto& m : kan.gram) gram_.push_back(reduce_matrix(f, m));
}

const FMat& FqRep::arrow(Vertex from, Vertex to) const {
  if (to == from + 1) return up_[static_cast<std::size_t>(from)];
  if (to == from - 1) return down_[static_cast<std::size_t>(to)];
  throw std::invalid_argument("no arrow between vertices");
}

DimVector Point::dim() const {
  DimVector v(spaces.size(), 0);
  for (std::size_t i = 0; i < spaces.size(); ++i) v[i] = static_cast<int>(spaces[i].dim());
  return v;
}

std::size_t Point::hash() const {
  std::size_t h = 0;
  for (auto& s : spaces) h = h * 31 + s.hash();
  return h;
}

bool Point::rational_over(unsigned p) const {
  for (auto& s : spaces)
    if (!s.rational_over(p)) return false;
  return true;
}

bool is_subrep(const FqRep& rep, const Point& f) {
  const FiniteField& fld = rep.field();
  const int n = rep.rank();
  if (f.spaces.size() != static_cast<std::size_t>(n)) return false;
  for (Vertex i = 0; i < n; ++i) {
    if (f[i].ambient() != rep.dim(i)) return false;
    for (Vertex j : rep.dynkin().neighbors(i))
      if (!contains(fld, f[j], image(fld, rep.arrow(i, j), f[i]))) return false;
  }
  return true;
}

Subspace perp_at(const FqRep& rep, Vertex i, const Subspace& s) {
  return annihilator(rep.field(), rep.gram(i), s);
}

Point perp(const FqRep& rep, const Point& f) {
  if (!rep.sigma_mode()) throw std::logic_error("perp requires sigma mode");
  Point out;
  for (Vertex i = 0; i < rep.rank(); ++i) out.spaces.push_back(perp_at(rep, i, f[rep.dynkin().sigma(i)]));
  return out;
}

bool is_sigma_fixed(const FqRep& rep, const Point& f) {
  for (Vertex i = 0; i < rep.rank(); ++i) {
    Vertex si = rep.dynkin().sigma(i);
    if (f[i].dim() + f[si].dim() != rep.dim(i)) return false;
  }
  return perp(rep, f) == f;
}

bool is_good_prime(const KanRep& kan, unsigned p) {
  if (!is_prime(p)) return false;
  FieldPtr fp = get_field(p);
  const Rationals Q;
  auto same_rank = [&](const QMat& m) {
    try {
      return rank(Q, m) == rank(*fp, reduce_matrix(*fp, m));
    } catch (const std::domain_error&) {
      return false;
    }
  };
  for (auto& m : kan.up)
    if (!same_rank(m)) return false;
  for (auto& m : kan.down)
    if (!same_rank(m)) return false;
  for (auto& m : kan.eval)
    if (!same_rank(m)) return false;
  for (auto& m : kan.gram)
    if (!same_rank(m)) return false;
  return true;
}

}  // namespace sqv
