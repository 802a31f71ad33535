// SPDX-License-Identifier: Apache-2.0
#include "prophecke/ring.hpp"

#include <sstream>

namespace ph {

bool is_prime(long long n) {
  if (n < 2) return false;
  for (long long d = 2; d * d <= n; ++d)
    if (n % d == 0) return false;
  return true;
}

namespace {

// Multiply two residues represented as digit vectors modulo the monic polynomial f.
std::vector<int> polymulmod(const std::vector<int>& a, const std::vector<int>& b,
                            const std::vector<int>& f, int p) {
  int k = int(f.size()) - 1;
  std::vector<int> c(2 * k, 0);
  for (int i = 0; i < k; ++i)
    for (int j = 0; j < k; ++j) c[i + j] = (c[i + j] + a[i] * b[j]) % p;
  for (int d = 2 * k - 1; d >= k; --d) {
    int lead = c[d];
    if (!lead) continue;
    for (int i = 0; i <= k; ++i) c[d - k + i] = ((c[d - k + i] - lead * f[i]) % p + p) % p;
  }
  c.resize(k);
  return c;
}

std::vector<int> digits(std::uint32_t a, int p, int k) {
  std::vector<int> d(k);
  for (int i = 0; i < k; ++i) {
    d[i] = int(a % p);
    a /= p;
  }
  return d;
}

std::uint32_t undigits(const std::vector<int>& d, int p) {
  std::uint32_t a = 0;
  for (int i = int(d.size()) - 1; i >= 0; --i) a = a * p + d[i];
  return a;
}

}  // namespace

GF::GF(int p, int k) : p_(p), k_(k) {
  if (!is_prime(p)) throw Error("field characteristic must be prime");
  if (k < 1 || k > 4) throw ScopeError("field degree must be between 1 and 4");
  n_ = 1;
  for (int i = 0; i < k; ++i) n_ *= p;
  exp_.assign(n_, 0);
  log_.assign(n_, 0);
  if (k == 1) {
    modulus_ = {0, 1};
    // find a primitive root mod p
    for (int g = 1; g < p; ++g) {
      int x = 1, ord = 0;
      do {
        x = x * g % p;
        ++ord;
      } while (x != 1);
      if (ord == p - 1 || p == 2) {
        int e = 1;
        for (int i = 0; i < n_ - 1; ++i) {
          exp_[i] = e;
          log_[e] = i;
          e = e * g % p;
        }
        break;
      }
    }
    if (p == 2) {
      exp_[0] = 1;
      log_[1] = 0;
    }
  } else {
    // search monic f of degree k for which x generates the multiplicative group
    bool found = false;
    std::vector<int> f(k + 1, 0);
    f[k] = 1;
    int total = 1;
    for (int i = 0; i < k; ++i) total *= p;
    for (int code = 0; code < total && !found; ++code) {
      auto d = digits(std::uint32_t(code), p, k);
      for (int i = 0; i < k; ++i) f[i] = d[i];
      if (f[0] == 0) continue;
      std::vector<int> x(k, 0), cur(k, 0);
      x[1 % k] = 1;
      if (k == 1) x[0] = 0;
      cur[0] = 1;
      std::vector<char> seen(n_, 0);
      int ord = 0;
      bool ok = true;
      for (int i = 0; i < n_ - 1; ++i) {
        std::uint32_t u = undigits(cur, p);
        if (seen[u]) {
          ok = false;
          break;
        }
        seen[u] = 1;
        exp_[i] = u;
        log_[u] = i;
        cur = polymulmod(cur, x, f, p);
        ++ord;
      }
      if (ok && undigits(cur, p) == 1 && ord == n_ - 1) found = true;
    }
    if (!found) throw Error("no primitive polynomial found");
    modulus_ = f;
    negtab_.resize(n_);
    for (int a = 0; a < n_; ++a) {
      auto d = digits(a, p, k);
      for (auto& x : d) x = (p - x) % p;
      negtab_[a] = undigits(d, p);
    }
    if (n_ <= 1024) {
      addtab_.resize(size_t(n_) * n_);
      for (int a = 0; a < n_; ++a)
        for (int b = 0; b < n_; ++b) addtab_[size_t(a) * n_ + b] = add_slow(a, b);
    }
  }
  if (k == 1) {
    negtab_.clear();
  }
}

GF::E GF::add_slow(E a, E b) const {
  auto x = digits(a, p_, k_), y = digits(b, p_, k_);
  for (int i = 0; i < k_; ++i) x[i] = (x[i] + y[i]) % p_;
  return undigits(x, p_);
}

GF::E GF::pow(E a, long long e) const {
  if (e == 0) return 1;
  if (a == 0) return 0;
  long long m = n_ - 1;
  long long s = ((long long)log_[a] * (e % m)) % m;
  if (s < 0) s += m;
  return exp_[s];
}

std::string GF::str(E a) const {
  if (k_ == 1) return std::to_string(a);
  auto d = digits(a, p_, k_);
  std::ostringstream os;
  os << "(";
  for (int i = 0; i < k_; ++i) os << (i ? "," : "") << d[i];
  os << ")";
  return os.str();
}

GF::E GF::parse(const std::string& s) const {
  if (!s.empty() && s[0] == '(') {
    std::vector<int> d;
    std::string cur;
    for (char c : s.substr(1)) {
      if (c == ',' || c == ')') {
        d.push_back(pmod(std::stoll(cur), p_));
        cur.clear();
      } else {
        cur += c;
      }
    }
    if (int(d.size()) != k_) throw Error("bad field element: " + s);
    return undigits(d, p_);
  }
  return from_int(std::stoll(s));
}

std::string GF::name() const {
  return k_ == 1 ? "F" + std::to_string(p_) : "F" + std::to_string(p_) + "^" + std::to_string(k_);
}

Zpm::Zpm(int p, int m) : p_(p), m_(m) {
  if (!is_prime(p)) throw Error("Z/p^m needs p prime");
  if (m < 1 || m > 12) throw ScopeError("Z/p^m exponent out of range");
  mod_ = 1;
  for (int i = 0; i < m; ++i) mod_ *= p;
}

std::optional<Zpm::E> Zpm::inv(E a) const {
  if (a % p_ == 0) return std::nullopt;
  long long r0 = a, r1 = mod_, s0 = 1, s1 = 0;
  while (r1) {
    long long q = r0 / r1, t = r0 - q * r1;
    r0 = r1;
    r1 = t;
    t = s0 - q * s1;
    s0 = s1;
    s1 = t;
  }
  return ((s0 % mod_) + mod_) % mod_;
}

std::string Zpm::name() const { return "Z/" + std::to_string(p_) + "^" + std::to_string(m_); }

}  // namespace ph
