// SPDX-License-Identifier: Apache-2.0
// Dense exact linear algebra over a coefficient field. Vectors are rows; a matrix acts by v -> v M.
#pragma once

#include <optional>
#include <random>
#include <string>
#include <vector>

#include "prophecke/common.hpp"

namespace ph {

template <class F>
struct Mat {
  using E = typename F::E;
  int rows = 0, cols = 0;
  std::vector<E> a;
  Mat() = default;
  Mat(int r, int c, const E& z) : rows(r), cols(c), a(size_t(r) * c, z) {}
  E& operator()(int i, int j) { return a[size_t(i) * cols + j]; }
  const E& operator()(int i, int j) const { return a[size_t(i) * cols + j]; }
};

template <class F>
class LinAlg {
 public:
  using E = typename F::E;
  using M = Mat<F>;
  explicit LinAlg(const F& f) : f_(f) {}
  const F& field() const { return f_; }

  M zero(int r, int c) const { return M(r, c, f_.zero()); }
  M identity(int n) const { return scalar(n, f_.one()); }
  M scalar(int n, const E& e) const {
    M m = zero(n, n);
    for (int i = 0; i < n; ++i) m(i, i) = e;
    return m;
  }

  M mul(const M& A, const M& B) const {
    require(A.cols == B.rows, "matrix product: shape mismatch");
    M C = zero(A.rows, B.cols);
    for (int i = 0; i < A.rows; ++i)
      for (int k = 0; k < A.cols; ++k) {
        const E& x = A(i, k);
        if (f_.is_zero(x)) continue;
        for (int j = 0; j < B.cols; ++j) C(i, j) = f_.add(C(i, j), f_.mul(x, B(k, j)));
      }
    return C;
  }
  M add(const M& A, const M& B) const {
    require(A.rows == B.rows && A.cols == B.cols, "matrix sum: shape mismatch");
    M C = A;
    for (size_t i = 0; i < C.a.size(); ++i) C.a[i] = f_.add(C.a[i], B.a[i]);
    return C;
  }
  M sub(const M& A, const M& B) const {
    require(A.rows == B.rows && A.cols == B.cols, "matrix difference: shape mismatch");
    M C = A;
    for (size_t i = 0; i < C.a.size(); ++i) C.a[i] = f_.sub(C.a[i], B.a[i]);
    return C;
  }
  M scale(const M& A, const E& c) const {
    M C = A;
    for (auto& x : C.a) x = f_.mul(x, c);
    return C;
  }
  bool eq(const M& A, const M& B) const {
    if (A.rows != B.rows || A.cols != B.cols) return false;
    for (size_t i = 0; i < A.a.size(); ++i)
      if (!f_.eq(A.a[i], B.a[i])) return false;
    return true;
  }
  bool is_zero(const M& A) const {
    for (auto& x : A.a)
      if (!f_.is_zero(x)) return false;
    return true;
  }
  M pow(M A, long long e) const {
    require(A.rows == A.cols, "matrix power: not square");
    M R = identity(A.rows);
    while (e > 0) {
      if (e & 1) R = mul(R, A);
      A = mul(A, A);
      e >>= 1;
    }
    return R;
  }
  M transpose(const M& A) const {
    M T = zero(A.cols, A.rows);
    for (int i = 0; i < A.rows; ++i)
      for (int j = 0; j < A.cols; ++j) T(j, i) = A(i, j);
    return T;
  }
  M vstack(const M& A, const M& B) const {
    if (A.rows == 0) return B;
    if (B.rows == 0) return A;
    require(A.cols == B.cols, "vstack: column mismatch");
    M C = A;
    C.rows += B.rows;
    C.a.insert(C.a.end(), B.a.begin(), B.a.end());
    return C;
  }
  M hstack(const M& A, const M& B) const { return transpose(vstack(transpose(A), transpose(B))); }
  M block(const M& A, int r0, int c0, int nr, int nc) const {
    M B = zero(nr, nc);
    for (int i = 0; i < nr; ++i)
      for (int j = 0; j < nc; ++j) B(i, j) = A(r0 + i, c0 + j);
    return B;
  }
  void put(M& A, int r0, int c0, const M& B) const {
    for (int i = 0; i < B.rows; ++i)
      for (int j = 0; j < B.cols; ++j) A(r0 + i, c0 + j) = B(i, j);
  }
  // Block diagonal sum.
  M dsum(const M& A, const M& B) const {
    M C = zero(A.rows + B.rows, A.cols + B.cols);
    put(C, 0, 0, A);
    put(C, A.rows, A.cols, B);
    return C;
  }
  M kron(const M& A, const M& B) const {
    M C = zero(A.rows * B.rows, A.cols * B.cols);
    for (int i = 0; i < A.rows; ++i)
      for (int j = 0; j < A.cols; ++j)
        if (!f_.is_zero(A(i, j)))
          for (int k = 0; k < B.rows; ++k)
            for (int l = 0; l < B.cols; ++l) C(i * B.rows + k, j * B.cols + l) = f_.mul(A(i, j), B(k, l));
    return C;
  }

  // Reduced row echelon form in place; returns pivot columns.
  std::vector<int> rref(M& A) const {
    std::vector<int> piv;
    int r = 0;
    for (int c = 0; c < A.cols && r < A.rows; ++c) {
      int p = -1;
      for (int i = r; i < A.rows; ++i)
        if (!f_.is_zero(A(i, c))) {
          p = i;
          break;
        }
      if (p < 0) continue;
      if (p != r)
        for (int j = 0; j < A.cols; ++j) std::swap(A(p, j), A(r, j));
      E inv = *f_.inv(A(r, c));
      for (int j = c; j < A.cols; ++j) A(r, j) = f_.mul(A(r, j), inv);
      for (int i = 0; i < A.rows; ++i) {
        if (i == r || f_.is_zero(A(i, c))) continue;
        E fct = A(i, c);
        for (int j = c; j < A.cols; ++j) A(i, j) = f_.sub(A(i, j), f_.mul(fct, A(r, j)));
      }
      piv.push_back(c);
      ++r;
    }
    return piv;
  }
  int rank(M A) const { return int(rref(A).size()); }
  // Basis (as rows, in reduced echelon form) of the row space.
  M row_basis(M A) const {
    int r = int(rref(A).size());
    A.rows = r;
    A.a.resize(size_t(r) * A.cols);
    return A;
  }
  // Rows x with x A = 0.
  M left_null(const M& A) const { return right_null(transpose(A)); }
  // Rows y with A y^T = 0.
  M right_null(M A) const {
    int n = A.cols;
    auto piv = rref(A);
    std::vector<char> is_piv(n, 0);
    for (int c : piv) is_piv[c] = 1;
    M N = zero(n - int(piv.size()), n);
    int k = 0;
    for (int fcol = 0; fcol < n; ++fcol) {
      if (is_piv[fcol]) continue;
      N(k, fcol) = f_.one();
      for (size_t i = 0; i < piv.size(); ++i) N(k, piv[i]) = f_.neg(A(int(i), fcol));
      ++k;
    }
    return N;
  }
  std::optional<M> inverse(const M& A) const {
    require(A.rows == A.cols, "inverse: not square");
    int n = A.rows;
    if (n == 0) return zero(0, 0);
    M W = hstack(A, identity(n));
    auto piv = rref(W);
    if (int(piv.size()) < n || piv[n - 1] != n - 1) return std::nullopt;
    return block(W, 0, n, n, n);
  }
  // X with X A = B, if one exists.
  std::optional<M> solve_left(const M& A, const M& B) const {
    auto Xt = solve_right(transpose(A), transpose(B));
    if (!Xt) return std::nullopt;
    return transpose(*Xt);
  }
  // X with A X = B, if one exists (free variables set to zero).
  std::optional<M> solve_right(const M& A, const M& B) const {
    require(A.rows == B.rows, "solve: shape mismatch");
    M W = hstack(A, B);
    auto piv = rref(W);
    M X = zero(A.cols, B.cols);
    for (size_t i = 0; i < piv.size(); ++i) {
      if (piv[i] >= A.cols) return std::nullopt;
      for (int j = 0; j < B.cols; ++j) X(piv[i], j) = W(int(i), A.cols + j);
    }
    return X;
  }
  // Coordinates of the rows of V in the basis U (rows of U independent, V in rowspace(U)).
  std::optional<M> coords(const M& U, const M& V) const {
    if (U.rows == 0) {
      if (!is_zero(V)) return std::nullopt;
      return zero(V.rows, 0);
    }
    return solve_left(U, V);
  }
  bool in_span(const M& U, const M& V) const {
    if (V.rows == 0) return true;
    if (U.rows == 0) return is_zero(V);
    return rank(vstack(U, V)) == rank(U);
  }
  // Action of A on the invariant subspace with basis rows U: the matrix R with U A = R U.
  M restrict(const M& U, const M& A) const {
    if (U.rows == 0) return zero(0, 0);
    auto R = coords(U, mul(U, A));
    require(R.has_value(), "restrict: subspace is not invariant");
    return *R;
  }
  // Rows C completing the independent rows U to a basis.
  M complement(const M& U, int n) const {
    M cur = U.rows ? row_basis(U) : zero(0, n);
    M C = zero(0, n);
    for (int i = 0; i < n; ++i) {
      M e = zero(1, n);
      e(0, i) = f_.one();
      M t = vstack(cur, e);
      if (rank(t) > cur.rows) {
        cur = row_basis(t);
        C = vstack(C, e);
      }
    }
    return C;
  }
  // Action on V / U, with U invariant, in the basis given by complement C.
  M quotient_action(const M& U, const M& C, const M& A) const {
    M B = vstack(C, U);
    auto X = coords(B, mul(C, A));
    require(X.has_value(), "quotient: basis does not span");
    return block(*X, 0, 0, C.rows, C.rows);
  }
  // Fitting: stable image and stable kernel of x -> x A.
  M stable_image(const M& A) const {
    if (A.rows == 0) return zero(0, 0);
    return row_basis(pow(A, A.rows));
  }
  M stable_kernel(const M& A) const {
    if (A.rows == 0) return zero(0, 0);
    return left_null(pow(A, A.rows));
  }
  bool is_nilpotent(const M& A) const { return A.rows == 0 || is_zero(pow(A, A.rows)); }
  // Sum and intersection of row spaces.
  M sum(const M& U, const M& V) const { return row_basis(vstack(U, V)); }
  M intersect(const M& U, const M& V) const {
    if (U.rows == 0 || V.rows == 0) return zero(0, U.rows ? U.cols : V.cols);
    M S = vstack(U, V);
    M N = left_null(S);
    M X = block(N, 0, 0, N.rows, U.rows);
    return row_basis(mul(X, U));
  }
  bool same_space(const M& U, const M& V) const {
    M a = row_basis(U), b = row_basis(V);
    return a.rows == b.rows && eq(a, b);
  }

  std::string str(const M& A) const {
    std::string s = "[";
    for (int i = 0; i < A.rows; ++i) {
      s += i ? ",[" : "[";
      for (int j = 0; j < A.cols; ++j) s += (j ? "," : "") + f_.str(A(i, j));
      s += "]";
    }
    return s + "]";
  }

 private:
  const F& f_;
};

}  // namespace ph
