#include "sqv/finite_field.hpp"

#include <map>
#include <mutex>
#include <stdexcept>

namespace sqv {

bool is_prime(unsigned n) {
  if (n < 2) return false;
  for (unsigned d = 2; d * d <= n; ++d)
    if (n % d == 0) return false;
  return true;
}

namespace {

using Poly = std::vector<unsigned>;  // coefficients, low degree first

Poly poly_mulmod(const Poly& a, const Poly& b, const Poly& f, unsigned p) {
  const std::size_t r = f.size() - 1;
  std::vector<unsigned> prod(2 * r, 0);
  for (std::size_t i = 0; i < r; ++i)
    for (std::size_t j = 0; j < r; ++j) prod[i + j] = (prod[i + j] + a[i] * b[j]) % p;
  // f is monic; reduce from the top.
  for (std::size_t k = prod.size(); k-- > r;) {
    unsigned c = prod[k];
    if (c == 0) continue;
    for (std::size_t i = 0; i <= r; ++i) {
      std::size_t idx = k - r + i;
      prod[idx] = (prod[idx] + (p - c) * f[i]) % p;
    }
  }
  return Poly(prod.begin(), prod.begin() + static_cast<long>(r));
}

bool divides(const Poly& g, const Poly& f, unsigned p) {
  // g monic of degree < deg f; test whether g | f over F_p.
  Poly rem = f;
  const std::size_t dg = g.size() - 1;
  for (std::size_t k = rem.size(); k-- > dg;) {
    unsigned c = rem[k];
    if (c == 0) continue;
    for (std::size_t i = 0; i <= dg; ++i) {
      std::size_t idx = k - dg + i;
      rem[idx] = (rem[idx] + (p - c) * g[i]) % p;
    }
  }
  for (std::size_t i = 0; i < dg; ++i)
    if (rem[i] != 0) return false;
  return true;
}

Poly monic_from_index(unsigned idx, unsigned deg, unsigned p) {
  Poly g(deg + 1, 0);
  for (unsigned i = 0; i < deg; ++i) {
    g[i] = idx % p;
    idx /= p;
  }
  g[deg] = 1;
  return g;
}

bool irreducible(const Poly& f, unsigned p) {
  const unsigned r = static_cast<unsigned>(f.size() - 1);
  for (unsigned deg = 1; 2 * deg <= r; ++deg) {
    unsigned count = 1;
    for (unsigned i = 0; i < deg; ++i) count *= p;
    for (unsigned idx = 0; idx < count; ++idx)
      if (divides(monic_from_index(idx, deg, p), f, p)) return false;
  }
  return true;
}

unsigned encode(const Poly& a, unsigned p) {
  unsigned v = 0;
  for (std::size_t k = a.size(); k-- > 0;) v = v * p + a[k];
  return v;
}

Poly decode(unsigned v, unsigned r, unsigned p) {
  Poly a(r, 0);
  for (unsigned k = 0; k < r; ++k) {
    a[k] = v % p;
    v /= p;
  }
  return a;
}

}  // namespace

FiniteField::FiniteField(unsigned p, unsigned degree) : p_(p), r_(degree) {
  if (!is_prime(p)) throw std::invalid_argument("field characteristic must be prime");
  if (degree == 0) throw std::invalid_argument("field degree must be positive");
  unsigned long long q = 1;
  for (unsigned i = 0; i < degree; ++i) {
    q *= p;
    if (q > kMaxOrder) throw std::invalid_argument("field order exceeds table limit");
  }
  q_ = static_cast<unsigned>(q);
  add_.assign(q_ * q_, 0);
  mul_.assign(q_ * q_, 0);
  neg_.assign(q_, 0);
  inv_.assign(q_, 0);

  for (unsigned a = 0; a < q_; ++a) {
    Poly pa = decode(a, r_, p_);
    Poly na(r_);
    for (unsigned k = 0; k < r_; ++k) na[k] = (p_ - pa[k]) % p_;
    neg_[a] = static_cast<value_type>(encode(na, p_));
    for (unsigned b = 0; b < q_; ++b) {
      Poly pb = decode(b, r_, p_);
      Poly s(r_);
      for (unsigned k = 0; k < r_; ++k) s[k] = (pa[k] + pb[k]) % p_;
      add_[a * q_ + b] = static_cast<value_type>(encode(s, p_));
    }
  }

  if (r_ == 1) {
    for (unsigned a = 0; a < q_; ++a)
      for (unsigned b = 0; b < q_; ++b) mul_[a * q_ + b] = static_cast<value_type>((a * b) % p_);
  } else {
    Poly f;
    unsigned count = q_;
    for (unsigned idx = 0; idx < count; ++idx) {
      Poly cand = monic_from_index(idx, r_, p_);
      if (cand[0] == 0) continue;
      if (irreducible(cand, p_)) {
        f = cand;
        break;
      }
    }
    if (f.empty()) throw std::logic_error("no irreducible polynomial found");
    // Log tables from a primitive element found by search.
    std::vector<unsigned> exp_table;
    std::vector<int> log_table;
    for (unsigned g = 2; g < q_; ++g) {
      Poly pg = decode(g, r_, p_);
      std::vector<unsigned> powers;
      std::vector<bool> seen(q_, false);
      Poly cur = decode(1, r_, p_);
      bool ok = true;
      for (unsigned k = 0; k + 1 < q_; ++k) {
        unsigned e = encode(cur, p_);
        if (seen[e]) {
          ok = false;
          break;
        }
        seen[e] = true;
        powers.push_back(e);
        cur = poly_mulmod(cur, pg, f, p_);
      }
      if (ok) {
        exp_table = powers;
        break;
      }
    }
    if (exp_table.empty()) throw std::logic_error("no primitive element found");
    log_table.assign(q_, -1);
    for (unsigned k = 0; k < exp_table.size(); ++k) log_table[exp_table[k]] = static_cast<int>(k);
    const unsigned n = q_ - 1;
    for (unsigned a = 1; a < q_; ++a)
      for (unsigned b = 1; b < q_; ++b)
        mul_[a * q_ + b] = static_cast<value_type>(
            exp_table[(static_cast<unsigned>(log_table[a]) + static_cast<unsigned>(log_table[b])) % n]);
  }

  for (unsigned a = 1; a < q_; ++a)
    for (unsigned b = 1; b < q_; ++b)
      if (mul_[a * q_ + b] == 1) {
        inv_[a] = static_cast<value_type>(b);
        break;
      }
}

FiniteField::value_type FiniteField::inv(value_type a) const {
  if (a == 0) throw std::domain_error("inverse of zero");
  return inv_[a];
}

FiniteField::value_type FiniteField::from_int(long long n) const {
  long long m = n % static_cast<long long>(p_);
  if (m < 0) m += p_;
  return static_cast<value_type>(m);
}

std::string FiniteField::name() const {
  std::string s = "GF(" + std::to_string(p_);
  if (r_ > 1) s += "^" + std::to_string(r_);
  return s + ")";
}

FieldPtr get_field(unsigned p, unsigned degree) {
  static std::mutex mu;
  static std::map<std::pair<unsigned, unsigned>, FieldPtr> cache;
  std::lock_guard<std::mutex> lock(mu);
  auto key = std::make_pair(p, degree);
  auto it = cache.find(key);
  if (it != cache.end()) return it->second;
  auto f = std::make_shared<const FiniteField>(p, degree);
  cache.emplace(key, f);
  return f;
}

}  // namespace sqv
