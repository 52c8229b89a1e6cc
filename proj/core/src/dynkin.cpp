#include "sqv/dynkin.hpp"

#include <numeric>
#include <stdexcept>

#include "sqv/matrix.hpp"

namespace sqv {

DimVector DimVector::unit(std::size_t n, Vertex i) {
  DimVector e(n, 0);
  e[static_cast<std::size_t>(i)] = 1;
  return e;
}

DimVector DimVector::operator+(const DimVector& o) const {
  if (size() != o.size()) throw std::invalid_argument("dimension vector length mismatch");
  DimVector r(*this);
  for (std::size_t i = 0; i < size(); ++i) r.v_[i] += o.v_[i];
  return r;
}

DimVector DimVector::operator-(const DimVector& o) const {
  if (size() != o.size()) throw std::invalid_argument("dimension vector length mismatch");
  DimVector r(*this);
  for (std::size_t i = 0; i < size(); ++i) r.v_[i] -= o.v_[i];
  return r;
}

DimVector DimVector::operator*(int s) const {
  DimVector r(*this);
  for (auto& x : r.v_) x *= s;
  return r;
}

int DimVector::total() const { return std::accumulate(v_.begin(), v_.end(), 0); }

bool DimVector::nonnegative() const {
  for (int x : v_)
    if (x < 0) return false;
  return true;
}

std::string DimVector::str() const {
  std::string s = "(";
  for (std::size_t i = 0; i < v_.size(); ++i) s += (i ? "," : "") + std::to_string(v_[i]);
  return s + ")";
}

DynkinData::DynkinData(int half_rank) : d_(half_rank) {
  if (half_rank < 1) throw std::invalid_argument("half rank must be at least 1");
  const std::size_t n = static_cast<std::size_t>(rank());
  QMat c(n, n, 0);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) c(i, j) = cartan(static_cast<Vertex>(i), static_cast<Vertex>(j));
  QMat inv = inverse(Rationals{}, c);
  cinv_.assign(n, std::vector<mpq_class>(n));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) cinv_[i][j] = inv(i, j);
}

int DynkinData::cartan(Vertex i, Vertex j) const {
  if (i == j) return 2;
  return adjacent(i, j) ? -1 : 0;
}

std::vector<Vertex> DynkinData::neighbors(Vertex i) const {
  std::vector<Vertex> out;
  if (i > 0) out.push_back(i - 1);
  if (i + 1 < rank()) out.push_back(i + 1);
  return out;
}

void DynkinData::check(const DimVector& v) const {
  if (v.size() != static_cast<std::size_t>(rank())) throw std::invalid_argument("dimension vector has wrong length");
}

DimVector DynkinData::apply_cartan(const DimVector& v) const {
  check(v);
  const int n = rank();
  DimVector out(static_cast<std::size_t>(n), 0);
  for (int i = 0; i < n; ++i) {
    int s = 2 * v[static_cast<std::size_t>(i)];
    if (i > 0) s -= v[static_cast<std::size_t>(i - 1)];
    if (i + 1 < n) s -= v[static_cast<std::size_t>(i + 1)];
    out[static_cast<std::size_t>(i)] = s;
  }
  return out;
}

DimVector DynkinData::sigma_vec(const DimVector& v) const {
  check(v);
  DimVector out(v.size(), 0);
  for (int i = 0; i < rank(); ++i) out[static_cast<std::size_t>(sigma(i))] = v[static_cast<std::size_t>(i)];
  return out;
}

DimVector DynkinData::weight_of(const DimVector& w, const DimVector& v) const {
  check(w);
  return w - apply_cartan(v);
}

DimVector DynkinData::kan_dim(const DimVector& w) const {
  check(w);
  DimVector s = w + sigma_vec(w);
  const std::size_t n = s.size();
  DimVector out(n, 0);
  for (std::size_t i = 0; i < n; ++i) {
    mpq_class acc = 0;
    for (std::size_t j = 0; j < n; ++j) acc += cinv_[i][j] * s[j];
    if (acc.get_den() != 1) throw std::invalid_argument("non-integral Kan dimension");
    out[i] = static_cast<int>(acc.get_num().get_si());
  }
  return out;
}

}  // namespace sqv
