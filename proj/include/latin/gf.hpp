#pragma once

// Small finite fields GF(p^k) for q <= 64, with fixed moduli so element
// numbering is reproducible across runs.
//
// Elements are indexed 0..q-1; index m stands for the polynomial whose
// coefficients are the base-p digits of m, least significant digit first
// (digit d is the coefficient of x^d). Index 0 is the zero element and
// index 1 is the multiplicative identity.

#include <cstdint>
#include <vector>

#include "latin/core.hpp"

namespace latin {

inline bool is_prime(int n) {
  if (n < 2) return false;
  for (int d = 2; d * d <= n; ++d)
    if (n % d == 0) return false;
  return true;
}

// q = p^k with p prime, k >= 1; reports p and k on success.
inline bool is_prime_power(int q, int* p_out = nullptr, int* k_out = nullptr) {
  if (q < 2) return false;
  int p = 0;
  for (int d = 2; d * d <= q; ++d) {
    if (q % d == 0) {
      p = d;
      break;
    }
  }
  if (p == 0) p = q;  // q itself is prime
  int k = 0, m = q;
  while (m % p == 0) {
    m /= p;
    ++k;
  }
  if (m != 1) return false;
  if (p_out) *p_out = p;
  if (k_out) *k_out = k;
  return true;
}

namespace detail {

// Fixed monic modulus per supported prime-power order q = p^k with k >= 2.
// Coefficients are listed constant term first; the leading x^k term is
// implicit. Returns empty for k = 1 (prime fields need no modulus).
inline std::vector<int> field_modulus(int q) {
  switch (q) {
    case 4:  return {1, 1};              // x^2 + x + 1
    case 8:  return {1, 1, 0};           // x^3 + x + 1
    case 9:  return {1, 0};              // x^2 + 1
    case 16: return {1, 1, 0, 0};        // x^4 + x + 1
    case 25: return {2, 0};              // x^2 + 2
    case 27: return {1, 2, 0};           // x^3 + 2x + 1
    case 32: return {1, 0, 1, 0, 0};     // x^5 + x^2 + 1
    case 49: return {1, 0};              // x^2 + 1
    case 64: return {1, 1, 0, 0, 0, 0};  // x^6 + x + 1
    default: return {};
  }
}

}  // namespace detail

struct FieldElement {
  int index = 0;
  std::vector<int> coeffs;  // base-p digits, constant term first
};

class GaloisField {
 public:
  explicit GaloisField(int q) : q_(q) {
    if (!is_prime_power(q, &p_, &k_))
      fail(ErrorCode::NotPrimePower, std::to_string(q) + " is not a prime power");
    if (q > kMaxOrder) fail(ErrorCode::OrderTooLarge, "field order above " + std::to_string(kMaxOrder));
    if (k_ > 1) {
      modulus_ = detail::field_modulus(q);
      if (modulus_.empty()) fail(ErrorCode::NotPrimePower, "no modulus on file for q=" + std::to_string(q));
    }
    build_tables();
    // A wrong (reducible) modulus would make some nonzero product vanish.
    for (int a = 1; a < q_; ++a)
      for (int b = 1; b < q_; ++b)
        if (mul(a, b) == 0) fail(ErrorCode::NotPrimePower, "modulus is reducible");
  }

  int size() const { return q_; }
  int characteristic() const { return p_; }
  int degree() const { return k_; }
  const std::vector<int>& modulus() const { return modulus_; }

  int add(int a, int b) const { return add_[a * q_ + b]; }
  int mul(int a, int b) const { return mul_[a * q_ + b]; }

  FieldElement element(int index) const {
    if (index < 0 || index >= q_) fail(ErrorCode::IndexOutOfRange, "field element " + std::to_string(index));
    FieldElement e;
    e.index = index;
    e.coeffs = digits(index);
    return e;
  }

 private:
  std::vector<int> digits(int m) const {
    std::vector<int> d(k_);
    for (int i = 0; i < k_; ++i) {
      d[i] = m % p_;
      m /= p_;
    }
    return d;
  }

  int index_of(const std::vector<int>& d) const {
    int m = 0;
    for (int i = k_ - 1; i >= 0; --i) m = m * p_ + d[i];
    return m;
  }

  void build_tables() {
    add_.resize(static_cast<size_t>(q_) * q_);
    mul_.resize(static_cast<size_t>(q_) * q_);
    for (int a = 0; a < q_; ++a) {
      const std::vector<int> da = digits(a);
      for (int b = 0; b < q_; ++b) {
        const std::vector<int> db = digits(b);
        std::vector<int> sum(k_);
        for (int i = 0; i < k_; ++i) sum[i] = (da[i] + db[i]) % p_;
        add_[a * q_ + b] = index_of(sum);

        // schoolbook product, then reduce by the modulus
        std::vector<int> prod(2 * k_ - 1, 0);
        for (int i = 0; i < k_; ++i)
          for (int j = 0; j < k_; ++j) prod[i + j] = (prod[i + j] + da[i] * db[j]) % p_;
        for (int d = 2 * k_ - 2; d >= k_; --d) {
          const int c = prod[d];
          if (c == 0) continue;
          prod[d] = 0;
          // x^d = x^(d-k) * (-modulus tail)
          for (int i = 0; i < k_; ++i)
            prod[d - k_ + i] = ((prod[d - k_ + i] - c * modulus_[i]) % p_ + p_ * p_) % p_;
        }
        prod.resize(k_);
        mul_[a * q_ + b] = index_of(prod);
      }
    }
  }

  int q_, p_ = 0, k_ = 0;
  std::vector<int> modulus_;
  std::vector<int> add_, mul_;
};

}  // namespace latin
