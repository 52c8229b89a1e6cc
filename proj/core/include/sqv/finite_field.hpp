#pragma once

#include <cstdint>
#include <memory>
#include <string>
#include <vector>

namespace sqv {

// Table-driven GF(p^r). Elements are encoded as sum c_k p^k over the
// coefficients of a polynomial basis, so the prime subfield is {0..p-1} with
// the same integer encoding in every extension.
class FiniteField {
 public:
  using value_type = std::uint16_t;

  static constexpr unsigned kMaxOrder = 1024;

  FiniteField(unsigned p, unsigned degree = 1);

  unsigned characteristic() const { return p_; }
  unsigned degree() const { return r_; }
  unsigned order() const { return q_; }

  value_type zero() const { return 0; }
  value_type one() const { return 1; }
  bool is_zero(value_type a) const { return a == 0; }

  value_type add(value_type a, value_type b) const { return add_[a * q_ + b]; }
  value_type mul(value_type a, value_type b) const { return mul_[a * q_ + b]; }
  value_type neg(value_type a) const { return neg_[a]; }
  value_type sub(value_type a, value_type b) const { return add_[a * q_ + neg_[b]]; }
  value_type inv(value_type a) const;
  value_type div(value_type a, value_type b) const { return mul(a, inv(b)); }

  value_type from_int(long long n) const;
  bool in_prime_subfield(value_type a) const { return a < p_; }

  std::string name() const;

 private:
  unsigned p_;
  unsigned r_;
  unsigned q_;
  std::vector<value_type> add_;
  std::vector<value_type> mul_;
  std::vector<value_type> neg_;
  std::vector<value_type> inv_;
};

using FieldPtr = std::shared_ptr<const FiniteField>;

bool is_prime(unsigned n);

// Shared instance cache keyed by (p, r).
FieldPtr get_field(unsigned p, unsigned degree = 1);

}  // namespace sqv
