#pragma once

#include <cstdint>
#include <functional>
#include <memory>
#include <mutex>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "sqv/hecke.hpp"
#include "sqv/kan_rep.hpp"
#include "sqv/matrix.hpp"

namespace sqv {

// A point count over the field with `order` elements.
struct Sample {
  std::uint64_t order = 0;
  std::uint64_t count = 0;
  bool operator==(const Sample&) const = default;
};

// Integer count polynomial in q together with the samples it was fitted to.
struct ChiPoly {
  std::vector<long long> coeffs;  // coeffs[k] multiplies q^k
  std::vector<Sample> samples;
  std::size_t held_out = 0;  // samples checked but not used for the fit

  long long eval(long long q) const;
  std::size_t degree() const { return coeffs.empty() ? 0 : coeffs.size() - 1; }
  std::string str() const;
};

class PolynomialityError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Fits the unique polynomial of degree <= degree_bound through the first
// degree_bound + 1 samples (exact rational arithmetic) and checks every
// remaining sample. Throws PolynomialityError on non-integral coefficients or
// a mismatch.
ChiPoly interpolate(const std::vector<Sample>& samples, std::size_t degree_bound);

// Value at q = 1.
long long euler(const ChiPoly& poly);

ChiPoly chi_projective(std::size_t n);                     // [n+1]_q
ChiPoly chi_grassmannian(std::size_t n, std::size_t k);     // Gaussian binomial
ChiPoly chi_lagrangian_grassmannian(std::size_t n);         // prod_{k<=n} (1 + q^k)
ChiPoly poly_from_coeffs(std::vector<long long> coeffs);

// A locus of subspaces X of Q^ambient cut out by linear conditions. Matrices
// list spanning rows, except `map` which acts on columns.
struct FiberFamily {
  struct ImageCondition {
    QMat map;     // M X must lie in span(target)
    QMat target;
  };
  struct MeetCondition {
    QMat space;   // dim(X cap span(space)) = dim
    std::size_t dim = 0;
  };

  std::string name;
  std::size_t ambient = 0;
  std::size_t dim = 0;
  std::optional<QMat> lower;  // lower <= X
  std::optional<QMat> upper;  // X <= upper
  std::vector<QMat> contained;  // D <= X
  std::vector<ImageCondition> images;
  std::vector<MeetCondition> meets;
  std::optional<QMat> form;  // with `lagrangian`: X is Lagrangian for this form
  bool lagrangian = false;
  std::vector<QMat> excluded;  // X != span(E)

  // Dimension of the constraint-free parameter space.
  std::size_t degree_bound() const;
};

class BadPrimeError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

bool family_prime_ok(const FiberFamily& fam, unsigned p);
std::uint64_t count_family(const FiberFamily& fam, unsigned p);

struct FamilyChi {
  ChiPoly poly;
  long long chi = 0;
  std::vector<unsigned> skipped_primes;
};
// Counts over every good prime of the list and interpolates with the given
// degree bound (default: the smallest degree fitting every sample, with two
// held-out samples below the family's a-priori bound).
FamilyChi chi_family(const FiberFamily& fam, const std::vector<unsigned>& primes,
                     std::optional<std::size_t> degree_bound = std::nullopt);

// K_R W over GF(p^r) for growing r, built on demand. Thread safe.
class RepTower {
 public:
  RepTower(const KanRep& kan, unsigned p);
  unsigned characteristic() const { return p_; }
  // Largest r with p^r <= FiniteField::kMaxOrder.
  unsigned max_degree() const { return max_r_; }
  const FqRep& at(unsigned r) const;

 private:
  const KanRep& kan_;
  unsigned p_;
  unsigned max_r_;
  mutable std::mutex mu_;
  mutable std::vector<std::unique_ptr<FqRep>> reps_;
};

// Counts over GF(p^r), r = 1, 2, ..., max_r, stopping at the first
// minimal-degree polynomial that reproduces two held-out samples.
ChiPoly fit_adaptive(unsigned p, unsigned max_r, const std::function<std::uint64_t(unsigned)>& count_at);

// Euler characteristic of the chain fiber of a word over (s, t), points
// defined over GF(p). Counts over GF(p^r) for r = 1, 2, ... until a
// polynomial of minimal degree fits with two held-out samples.
struct WordChi {
  ChiPoly poly;
  long long chi = 0;
  bool structural = false;  // no enumeration needed, count is field independent
};
WordChi word_chi(const RepTower& tower, const Word& word, const Point& s, const Point& t);

}  // namespace sqv
