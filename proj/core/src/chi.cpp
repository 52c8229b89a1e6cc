#include "sqv/chi.hpp"

#include <sstream>

#include "sqv/subspace_enum.hpp"

namespace sqv {

long long ChiPoly::eval(long long q) const {
  long long acc = 0;
  for (std::size_t k = coeffs.size(); k-- > 0;) acc = acc * q + coeffs[k];
  return acc;
}

std::string ChiPoly::str() const {
  std::ostringstream os;
  bool first = true;
  for (std::size_t k = 0; k < coeffs.size(); ++k) {
    long long c = coeffs[k];
    if (c == 0) continue;
    if (!first) os << (c < 0 ? " - " : " + ");
    else if (c < 0) os << "-";
    long long a = c < 0 ? -c : c;
    if (k == 0 || a != 1) os << a;
    if (k >= 1) os << "q";
    if (k >= 2) os << "^" << k;
    first = false;
  }
  if (first) os << "0";
  return os.str();
}

ChiPoly poly_from_coeffs(std::vector<long long> coeffs) {
  while (!coeffs.empty() && coeffs.back() == 0) coeffs.pop_back();
  ChiPoly p;
  p.coeffs = std::move(coeffs);
  return p;
}

ChiPoly interpolate(const std::vector<Sample>& samples, std::size_t degree_bound) {
  const std::size_t m = degree_bound + 1;
  if (samples.size() < m) throw std::invalid_argument("interpolation needs at least degree_bound + 1 samples");
  for (std::size_t a = 0; a < m; ++a)
    for (std::size_t b = a + 1; b < m; ++b)
      if (samples[a].order == samples[b].order) throw std::invalid_argument("repeated interpolation node");
  // Newton divided differences, then expansion into the monomial basis.
  std::vector<mpq_class> dd(m);
  for (std::size_t k = 0; k < m; ++k) dd[k] = mpq_class(mpz_class(std::to_string(samples[k].count)));
  for (std::size_t level = 1; level < m; ++level)
    for (std::size_t k = m - 1; k >= level; --k) {
      mpq_class denom = mpq_class(mpz_class(std::to_string(samples[k].order))) -
                        mpq_class(mpz_class(std::to_string(samples[k - level].order)));
      dd[k] = (dd[k] - dd[k - 1]) / denom;
    }
  std::vector<mpq_class> poly(1, dd[m - 1]);
  for (std::size_t k = m - 1; k-- > 0;) {
    // poly = poly * (q - x_k) + dd[k]
    mpq_class xk(mpz_class(std::to_string(samples[k].order)));
    std::vector<mpq_class> next(poly.size() + 1, 0);
    for (std::size_t e = 0; e < poly.size(); ++e) {
      next[e + 1] += poly[e];
      next[e] -= poly[e] * xk;
    }
    next[0] += dd[k];
    poly = std::move(next);
  }
  ChiPoly out;
  for (auto& c : poly) {
    c.canonicalize();
    if (c.get_den() != 1) throw PolynomialityError("non-integral interpolation coefficient " + c.get_str());
    if (!c.get_num().fits_slong_p()) throw PolynomialityError("interpolation coefficient out of range");
    out.coeffs.push_back(c.get_num().get_si());
  }
  while (!out.coeffs.empty() && out.coeffs.back() == 0) out.coeffs.pop_back();
  out.samples = samples;
  out.held_out = samples.size() - m;
  for (std::size_t k = m; k < samples.size(); ++k) {
    mpz_class acc = 0;
    const mpz_class x(std::to_string(samples[k].order));
    for (std::size_t e = out.coeffs.size(); e-- > 0;) acc = acc * x + mpz_class(std::to_string(out.coeffs[e]));
    if (acc != mpz_class(std::to_string(samples[k].count))) {
      std::ostringstream os;
      os << "count " << samples[k].count << " at q=" << samples[k].order << " disagrees with fitted " << out.str();
      throw PolynomialityError(os.str());
    }
  }
  return out;
}

long long euler(const ChiPoly& poly) { return poly.eval(1); }

namespace {

std::vector<long long> poly_mul(const std::vector<long long>& a, const std::vector<long long>& b) {
  if (a.empty() || b.empty()) return {};
  std::vector<long long> c(a.size() + b.size() - 1, 0);
  for (std::size_t x = 0; x < a.size(); ++x)
    for (std::size_t y = 0; y < b.size(); ++y) c[x + y] += a[x] * b[y];
  return c;
}

}  // namespace

ChiPoly chi_projective(std::size_t n) { return poly_from_coeffs(std::vector<long long>(n + 1, 1)); }

ChiPoly chi_grassmannian(std::size_t n, std::size_t k) {
  if (k > n) return poly_from_coeffs({});
  // Gaussian binomial via the recursion [n,k] = [n-1,k-1] + q^k [n-1,k].
  std::vector<std::vector<std::vector<long long>>> g(n + 1);
  for (std::size_t a = 0; a <= n; ++a) {
    g[a].assign(a + 1, {});
    g[a][0] = {1};
    g[a][a] = {1};
    for (std::size_t b = 1; b < a; ++b) {
      std::vector<long long> shifted(b, 0);
      shifted.insert(shifted.end(), g[a - 1][b].begin(), g[a - 1][b].end());
      std::vector<long long> s = g[a - 1][b - 1];
      if (s.size() < shifted.size()) s.resize(shifted.size(), 0);
      for (std::size_t e = 0; e < shifted.size(); ++e) s[e] += shifted[e];
      g[a][b] = s;
    }
  }
  return poly_from_coeffs(g[n][k]);
}

ChiPoly chi_lagrangian_grassmannian(std::size_t n) {
  std::vector<long long> acc{1};
  for (std::size_t k = 1; k <= n; ++k) {
    std::vector<long long> f(k + 1, 0);
    f[0] = 1;
    f[k] = 1;
    acc = poly_mul(acc, f);
  }
  return poly_from_coeffs(acc);
}

std::size_t FiberFamily::degree_bound() const {
  if (lagrangian) {
    const std::size_t m = ambient / 2;
    return m * (m + 1) / 2;
  }
  const Rationals Q;
  const std::size_t lo = lower ? rank(Q, *lower) : 0;
  const std::size_t hi = upper ? rank(Q, *upper) : ambient;
  if (dim < lo || dim > hi) return 0;
  return (dim - lo) * (hi - dim);
}

namespace {

bool same_rank(const QMat& m, const FiniteField& fld) {
  const Rationals Q;
  try {
    return rank(Q, m) == rank(fld, reduce_matrix(fld, m));
  } catch (const std::domain_error&) {
    return false;
  }
}

Subspace reduce_span(const FiniteField& fld, const QMat& m, std::size_t ambient) {
  if (m.rows() == 0) return Subspace::zero(ambient);
  if (m.cols() != ambient) throw std::invalid_argument("family matrix has wrong width");
  return Subspace::span(fld, reduce_matrix(fld, m));
}

}  // namespace

bool family_prime_ok(const FiberFamily& fam, unsigned p) {
  if (!is_prime(p)) return false;
  const FiniteField& fld = *get_field(p);
  if (fam.lower && !same_rank(*fam.lower, fld)) return false;
  if (fam.upper && !same_rank(*fam.upper, fld)) return false;
  for (auto& m : fam.contained)
    if (!same_rank(m, fld)) return false;
  for (auto& c : fam.images)
    if (!same_rank(c.map, fld) || !same_rank(c.target, fld)) return false;
  for (auto& c : fam.meets)
    if (!same_rank(c.space, fld)) return false;
  for (auto& m : fam.excluded)
    if (!same_rank(m, fld)) return false;
  if (fam.form && !same_rank(*fam.form, fld)) return false;
  return true;
}

std::uint64_t count_family(const FiberFamily& fam, unsigned p) {
  if (!family_prime_ok(fam, p)) throw BadPrimeError("prime " + std::to_string(p) + " is bad for family " + fam.name);
  const FiniteField& fld = *get_field(p);
  const std::size_t n = fam.ambient;
  Subspace lo = fam.lower ? reduce_span(fld, *fam.lower, n) : Subspace::zero(n);
  for (auto& d : fam.contained) lo = sum(fld, lo, reduce_span(fld, d, n));
  Subspace hi = fam.upper ? reduce_span(fld, *fam.upper, n) : Subspace::full(n);
  for (auto& c : fam.images) {
    FMat m = reduce_matrix(fld, c.map);
    hi = intersect(fld, hi, preimage(fld, m, reduce_span(fld, c.target, m.rows())));
  }
  std::vector<std::pair<Subspace, std::size_t>> meets;
  for (auto& c : fam.meets) meets.emplace_back(reduce_span(fld, c.space, n), c.dim);
  std::vector<Subspace> excluded;
  for (auto& e : fam.excluded) excluded.push_back(reduce_span(fld, e, n));

  std::uint64_t count = 0;
  auto visit = [&](const Subspace& x) {
    for (auto& [s, k] : meets)
      if (intersect(fld, x, s).dim() != k) return true;
    for (auto& e : excluded)
      if (x == e) return true;
    ++count;
    return true;
  };
  if (!contains(fld, hi, lo)) return 0;
  if (fam.lagrangian) {
    if (!fam.form) throw std::invalid_argument("Lagrangian family without a form");
    if (2 * fam.dim != n) return 0;
    for_each_lagrangian_between(fld, reduce_matrix(fld, *fam.form), lo, hi, visit);
  } else {
    for_each_subspace_between(fld, lo, hi, fam.dim, visit);
  }
  return count;
}

FamilyChi chi_family(const FiberFamily& fam, const std::vector<unsigned>& primes, std::optional<std::size_t> degree_bound) {
  FamilyChi out;
  std::vector<Sample> samples;
  for (unsigned p : primes) {
    if (!family_prime_ok(fam, p)) {
      out.skipped_primes.push_back(p);
      continue;
    }
    samples.push_back({p, count_family(fam, p)});
  }
  if (samples.size() < 3) throw PolynomialityError("family " + fam.name + " has fewer than three good primes");
  if (degree_bound) {
    out.poly = interpolate(samples, *degree_bound);
  } else {
    // Smallest degree that reproduces every sample. Below the a-priori bound
    // two held-out samples are required; at the bound one suffices.
    const std::size_t bound = std::min(fam.degree_bound(), samples.size() - 1);
    for (std::size_t deg = 0;; ++deg) {
      try {
        ChiPoly p = interpolate(samples, deg);
        if (p.held_out >= 2 || deg == fam.degree_bound()) {
          out.poly = std::move(p);
          break;
        }
      } catch (const PolynomialityError&) {
        if (deg >= bound) throw;
      }
      if (deg >= bound)
        throw PolynomialityError("family " + fam.name + " needs more good primes for its degree bound");
    }
  }
  out.chi = euler(out.poly);
  return out;
}

RepTower::RepTower(const KanRep& kan, unsigned p) : kan_(kan), p_(p), max_r_(0) {
  if (!is_prime(p)) throw std::invalid_argument("tower characteristic must be prime");
  unsigned long long order = p;
  while (order <= FiniteField::kMaxOrder) {
    ++max_r_;
    order *= p;
  }
  reps_.resize(max_r_ + 1);
}

const FqRep& RepTower::at(unsigned r) const {
  if (r == 0 || r > max_r_) throw std::out_of_range("extension degree out of range");
  std::lock_guard<std::mutex> lock(mu_);
  if (!reps_[r]) reps_[r] = std::make_unique<FqRep>(kan_, get_field(p_, r));
  return *reps_[r];
}

ChiPoly fit_adaptive(unsigned p, unsigned max_r, const std::function<std::uint64_t(unsigned)>& count_at) {
  std::vector<Sample> samples;
  std::uint64_t order = 1;
  for (unsigned r = 1; r <= max_r; ++r) {
    order *= p;
    samples.push_back({order, count_at(r)});
    for (std::size_t deg = 0; deg + 3 <= samples.size(); ++deg) {
      try {
        return interpolate(samples, deg);
      } catch (const PolynomialityError&) {
      }
    }
  }
  throw PolynomialityError("no polynomial fits the counts up to GF(" + std::to_string(order) + ")");
}

WordChi word_chi(const RepTower& tower, const Word& word, const Point& s, const Point& t) {
  WordChi out;
  WordCount first = count_word(tower.at(1), word, s, t);
  if (!first.free_steps) {
    out.poly = poly_from_coeffs({static_cast<long long>(first.count)});
    out.poly.samples = {{tower.characteristic(), first.count}};
    out.chi = static_cast<long long>(first.count);
    out.structural = true;
    return out;
  }
  try {
    out.poly = fit_adaptive(tower.characteristic(), tower.max_degree(), [&](unsigned r) {
      return r == 1 ? first.count : count_word(tower.at(r), word, s, t).count;
    });
  } catch (const PolynomialityError& e) {
    throw PolynomialityError("chain counts of " + to_string(word) + ": " + e.what());
  }
  out.chi = euler(out.poly);
  return out;
}

}  // namespace sqv
