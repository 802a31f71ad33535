// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <array>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

namespace ph {

// Largest supported lattice rank and torsion rank.
inline constexpr int MAXR = 4;

using IVec = std::vector<int>;
using IMat = std::vector<IVec>;

struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Raised when a configuration asks for something outside the supported scope.
struct ScopeError : Error {
  using Error::Error;
};

inline void require(bool ok, const std::string& msg) {
  if (!ok) throw Error(msg);
}

inline int dot(const IVec& a, const IVec& b) {
  int s = 0;
  for (size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return s;
}

inline int pmod(long long a, int m) {
  if (m <= 1) return 0;
  long long r = a % m;
  return int(r < 0 ? r + m : r);
}

inline IVec mat_vec(const IMat& m, const IVec& x) {
  IVec y(m.size(), 0);
  for (size_t i = 0; i < m.size(); ++i)
    for (size_t j = 0; j < x.size(); ++j) y[i] += m[i][j] * x[j];
  return y;
}

inline IMat mat_mul(const IMat& a, const IMat& b) {
  size_t n = a.size(), k = b.size(), m = b.empty() ? 0 : b[0].size();
  IMat c(n, IVec(m, 0));
  for (size_t i = 0; i < n; ++i)
    for (size_t l = 0; l < k; ++l)
      if (a[i][l])
        for (size_t j = 0; j < m; ++j) c[i][j] += a[i][l] * b[l][j];
  return c;
}

inline IMat identity_mat(int n) {
  IMat m(n, IVec(n, 0));
  for (int i = 0; i < n; ++i) m[i][i] = 1;
  return m;
}

// Simple bit set over the simple roots; parabolic subsets are addressed this way.
using RootMask = unsigned;

inline bool mask_has(RootMask m, int i) { return (m >> i) & 1u; }

inline int popcount(RootMask m) { return __builtin_popcount(m); }

}  // namespace ph
