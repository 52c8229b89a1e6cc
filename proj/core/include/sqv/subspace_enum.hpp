#pragma once

#include <cstdint>
#include <functional>

#include "sqv/subspace.hpp"

namespace sqv {

// Visitors return false to stop the enumeration early. Every enumerator
// returns false iff it was stopped.
using SubspaceVisitor = std::function<bool(const Subspace&)>;

// All k-dimensional subspaces of F^n, ordered by pivot set and then by free
// entries.
bool for_each_subspace(const FiniteField& f, std::size_t n, std::size_t k, const SubspaceVisitor& visit);

// All X with lower <= X <= upper and dim X = k.
bool for_each_subspace_between(const FiniteField& f, const Subspace& lower, const Subspace& upper, std::size_t k,
                               const SubspaceVisitor& visit);

// k-dimensional subspaces of F^m isotropic for an alternating form.
bool for_each_isotropic(const FiniteField& f, const FMat& gram, std::size_t k, const SubspaceVisitor& visit);

// Lagrangians L of an alternating nondegenerate form with lower <= L <= upper.
bool for_each_lagrangian_between(const FiniteField& f, const FMat& gram, const Subspace& lower, const Subspace& upper,
                                 const SubspaceVisitor& visit);

// Gaussian binomial [n choose k] evaluated at q.
std::uint64_t gaussian_binomial(unsigned n, unsigned k, std::uint64_t q);

}  // namespace sqv
