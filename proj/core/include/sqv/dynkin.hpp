#pragma once

#include <gmpxx.h>

#include <initializer_list>
#include <string>
#include <vector>

namespace sqv {

// Vertices are 0-based internally; reports print them 1-based.
using Vertex = int;

class DimVector {
 public:
  DimVector() = default;
  explicit DimVector(std::size_t n, int fill = 0) : v_(n, fill) {}
  DimVector(std::initializer_list<int> init) : v_(init) {}
  explicit DimVector(std::vector<int> v) : v_(std::move(v)) {}

  static DimVector unit(std::size_t n, Vertex i);

  std::size_t size() const { return v_.size(); }
  int& operator[](std::size_t i) { return v_[i]; }
  int operator[](std::size_t i) const { return v_[i]; }
  const std::vector<int>& values() const { return v_; }
  auto begin() const { return v_.begin(); }
  auto end() const { return v_.end(); }

  bool operator==(const DimVector& o) const { return v_ == o.v_; }
  bool operator!=(const DimVector& o) const { return v_ != o.v_; }
  bool operator<(const DimVector& o) const { return v_ < o.v_; }

  DimVector operator+(const DimVector& o) const;
  DimVector operator-(const DimVector& o) const;
  DimVector operator*(int s) const;

  int total() const;
  bool nonnegative() const;
  std::string str() const;

 private:
  std::vector<int> v_;
};

// Type A_{2d-1} with the diagram involution i -> 2d - i (1-based).
class DynkinData {
 public:
  explicit DynkinData(int half_rank);

  int half_rank() const { return d_; }
  int rank() const { return 2 * d_ - 1; }
  Vertex sigma(Vertex i) const { return rank() - 1 - i; }
  Vertex middle() const { return d_ - 1; }
  int cartan(Vertex i, Vertex j) const;
  bool adjacent(Vertex i, Vertex j) const { return i - j == 1 || j - i == 1; }
  std::vector<Vertex> neighbors(Vertex i) const;

  DimVector apply_cartan(const DimVector& v) const;
  DimVector sigma_vec(const DimVector& v) const;
  // w - C v
  DimVector weight_of(const DimVector& w, const DimVector& v) const;
  // C^{-1}(w + sigma w); throws std::invalid_argument if not integral.
  DimVector kan_dim(const DimVector& w) const;
  const std::vector<std::vector<mpq_class>>& cartan_inverse() const { return cinv_; }

 private:
  void check(const DimVector& v) const;

  int d_;
  std::vector<std::vector<mpq_class>> cinv_;
};

}  // namespace sqv
