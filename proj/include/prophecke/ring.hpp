// SPDX-License-Identifier: Apache-2.0
// Exact coefficient rings: Z, Q, F_{p^k} (k <= 4) and Z/p^m.
#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "prophecke/common.hpp"

namespace ph {

// Integers with overflow-checked 64-bit arithmetic. Every returned value is exact;
// a result that would not fit raises instead of wrapping.
struct ZZ {
  using E = long long;
  static constexpr bool field = false;
  E zero() const { return 0; }
  E one() const { return 1; }
  E from_int(long long a) const { return a; }
  E add(E a, E b) const {
    E r;
    if (__builtin_add_overflow(a, b, &r)) throw Error("integer overflow in add");
    return r;
  }
  E sub(E a, E b) const {
    E r;
    if (__builtin_sub_overflow(a, b, &r)) throw Error("integer overflow in sub");
    return r;
  }
  E neg(E a) const { return sub(0, a); }
  E mul(E a, E b) const {
    E r;
    if (__builtin_mul_overflow(a, b, &r)) throw Error("integer overflow in mul");
    return r;
  }
  bool is_zero(E a) const { return a == 0; }
  bool eq(E a, E b) const { return a == b; }
  std::optional<E> inv(E a) const {
    if (a == 1 || a == -1) return a;
    return std::nullopt;
  }
  // Exact division; raises if b does not divide a.
  E divexact(E a, E b) const {
    if (b == 0 || a % b != 0) throw Error("inexact integer division");
    return a / b;
  }
  long long characteristic() const { return 0; }
  std::string str(E a) const { return std::to_string(a); }
  std::string name() const { return "Z"; }
};

struct QQ {
  using E = mpq_class;
  static constexpr bool field = true;
  E zero() const { return E(0); }
  E one() const { return E(1); }
  E from_int(long long a) const { return E(mpz_class(std::to_string(a))); }
  E add(const E& a, const E& b) const { return E(a + b); }
  E sub(const E& a, const E& b) const { return E(a - b); }
  E neg(const E& a) const { return E(-a); }
  E mul(const E& a, const E& b) const { return E(a * b); }
  bool is_zero(const E& a) const { return sgn(a) == 0; }
  bool eq(const E& a, const E& b) const { return a == b; }
  std::optional<E> inv(const E& a) const {
    if (sgn(a) == 0) return std::nullopt;
    return E(1 / a);
  }
  long long characteristic() const { return 0; }
  std::string str(const E& a) const { return a.get_str(); }
  std::string name() const { return "Q"; }
};

// Finite field with p^k elements. An element is the integer whose base-p digits
// are the coefficients of its polynomial representative.
class GF {
 public:
  using E = std::uint32_t;
  static constexpr bool field = true;

  GF(int p, int k = 1);

  int p() const { return p_; }
  int degree() const { return k_; }
  int order() const { return n_; }

  E zero() const { return 0; }
  E one() const { return 1; }
  E from_int(long long a) const { return E(pmod(a, p_)); }
  E add(E a, E b) const {
    if (k_ == 1) {
      E s = a + b;
      return s >= E(p_) ? s - p_ : s;
    }
    return addtab_.empty() ? add_slow(a, b) : addtab_[a * n_ + b];
  }
  E neg(E a) const { return k_ == 1 ? (a == 0 ? 0 : p_ - a) : negtab_[a]; }
  E sub(E a, E b) const { return add(a, neg(b)); }
  E mul(E a, E b) const {
    if (a == 0 || b == 0) return 0;
    int s = log_[a] + log_[b];
    if (s >= n_ - 1) s -= n_ - 1;
    return exp_[s];
  }
  bool is_zero(E a) const { return a == 0; }
  bool eq(E a, E b) const { return a == b; }
  std::optional<E> inv(E a) const {
    if (a == 0) return std::nullopt;
    return exp_[(n_ - 1 - log_[a]) % (n_ - 1)];
  }
  // A fixed generator of the multiplicative group.
  E primitive() const { return exp_[1 % (n_ - 1 > 0 ? n_ - 1 : 1)]; }
  E pow(E a, long long e) const;
  long long characteristic() const { return p_; }
  std::string str(E a) const;
  std::string name() const;
  // Parses the output of str().
  E parse(const std::string& s) const;
  const std::vector<int>& modulus() const { return modulus_; }

 private:
  E add_slow(E a, E b) const;
  int p_, k_, n_;
  std::vector<int> modulus_;  // monic, low degree first, size k+1
  std::vector<E> exp_;
  std::vector<int> log_;
  std::vector<E> negtab_;
  std::vector<E> addtab_;
};

// Z/p^m with p prime.
class Zpm {
 public:
  using E = long long;
  static constexpr bool field = false;
  Zpm(int p, int m);
  E zero() const { return 0; }
  E one() const { return 1 % mod_; }
  E from_int(long long a) const { return pmod(a, int(mod_)); }
  E add(E a, E b) const { return (a + b) % mod_; }
  E sub(E a, E b) const { return ((a - b) % mod_ + mod_) % mod_; }
  E neg(E a) const { return (mod_ - a) % mod_; }
  E mul(E a, E b) const { return (a * b) % mod_; }
  bool is_zero(E a) const { return a == 0; }
  bool eq(E a, E b) const { return a == b; }
  std::optional<E> inv(E a) const;
  long long characteristic() const { return mod_; }
  std::string str(E a) const { return std::to_string(a); }
  std::string name() const;
  int p() const { return p_; }
  int m() const { return m_; }

 private:
  int p_, m_;
  long long mod_;
};

bool is_prime(long long n);

// Power by repeated multiplication in any ring above.
template <class R>
typename R::E ring_pow(const R& r, typename R::E a, long long e) {
  typename R::E res = r.one();
  while (e > 0) {
    if (e & 1) res = r.mul(res, a);
    a = r.mul(a, a);
    e >>= 1;
  }
  return res;
}

}  // namespace ph
