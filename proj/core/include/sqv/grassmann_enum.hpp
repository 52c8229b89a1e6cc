#pragma once

#include <cstdint>
#include <functional>
#include <vector>

#include "sqv/kan_rep.hpp"

namespace sqv {

using PointVisitor = std::function<bool(const Point&)>;

// Subrepresentations of K_R W with dimension vector v, by backtracking over
// vertices with sandwich pruning. Deterministic order.
bool enumerate_L(const FqRep& rep, const DimVector& v, const PointVisitor& visit);

// Sigma-fixed subrepresentations: F(k) for k below the middle, a Lagrangian
// middle space, and F(sigma k) = annihilator of F(k).
bool enumerate_R(const FqRep& rep, const DimVector& v, const PointVisitor& visit);

std::vector<Point> collect_L(const FqRep& rep, const DimVector& v);
std::vector<Point> collect_R(const FqRep& rep, const DimVector& v);

// All dimension vectors 0 <= v <= dim K; in sigma mode only those compatible
// with the annihilator involution.
std::vector<DimVector> candidate_dims(const FqRep& rep, bool sigma);

struct StratumCount {
  DimVector v;
  std::uint64_t count = 0;
};

// Nonempty strata with point counts, sorted by dimension vector.
std::vector<StratumCount> stratum_table(const FqRep& rep, bool sigma);

std::uint64_t count_points(const FqRep& rep, const DimVector& v, bool sigma);

}  // namespace sqv
