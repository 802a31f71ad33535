// SPDX-License-Identifier: Apache-2.0
#include <memory>

#include "doctest.h"
#include "prophecke/config.hpp"
#include "prophecke/oracles.hpp"
#include "prophecke/parabolic.hpp"

using namespace ph;

namespace {
struct SL2 {
  std::shared_ptr<const ProPWeyl> G = std::make_shared<ProPWeyl>(load_config("sl2-p3"));
  std::shared_ptr<const AffSub> A = std::make_shared<AffSub>(G, G->roots().full_mask());
  Hecke<QQ> H{A, QQ{}};
};
}  // namespace

TEST_CASE("quadratic relation for SL2 with q = 3") {
  SL2 s;
  auto& H = s.H;
  auto Ts = H.T(s.G->n(1));
  auto sq = H.mul(Ts, Ts);
  // n_s^2 is the nontrivial torsion element; c_s is the sum over the torsion group.
  CHECK(H.eq(sq, H.parse("3 * [e;0;1] + 1 * [1;0;0] + 1 * [1;0;1]")));
  CHECK(H.eq(H.c_elem(1), H.parse("1 * [e;0;0] + 1 * [e;0;1]")));
  CHECK(H.eq(H.Tstar(s.G->n(1)), H.sub(Ts, H.c_elem(1))));
}

TEST_CASE("text format round trip") {
  SL2 s;
  auto x = s.H.parse("2/3 * [1;1;0] + -5 * [e;-2;1]");
  CHECK(s.H.eq(s.H.parse(s.H.str(x)), x));
  CHECK_THROWS_AS(s.H.parse("[1;0;0]"), Error);
  CHECK_THROWS_AS(s.H.parse("1 * [7;0;0]"), Error);
}

TEST_CASE("iota sends T_w to (-1)^l(w) T*_w and is an involution") {
  SL2 s;
  auto& H = s.H;
  for (auto w : {s.G->n(1), s.G->lam({1}), s.G->mul(s.G->lam({-1}, {1}), s.G->n(1))}) {
    int l = s.A->length(w);
    auto expect = l % 2 ? H.scale(H.Tstar(w), -1) : H.Tstar(w);
    CHECK(H.eq(H.iota(H.T(w)), expect));
    CHECK(H.eq(H.iota(H.iota(H.T(w))), H.T(w)));
  }
}

TEST_CASE("basis coordinates round trip") {
  SL2 s;
  auto& H = s.H;
  auto x = H.parse("1 * [1;2;0] + 4 * [e;-1;1] + -1 * [1;0;0]");
  for (Basis b : {Basis::T, Basis::Tstar, Basis::Eminus, Basis::Eprime})
    CHECK(H.eq(H.from_coords(H.coords(x, b), b), x));
  for (int o = 0; o < s.G->W0().size(); ++o) CHECK(H.eq(H.from_coords(H.coords(x, Basis::Eo, o), Basis::Eo, o), x));
}

TEST_CASE("products agree with the rewriting oracle") {
  for (const char* p : {"sl2-p2", "a1xa1-p2", "sl3-p2"}) {
    auto G = std::make_shared<ProPWeyl>(load_config(p));
    auto A = std::make_shared<AffSub>(G, G->roots().full_mask());
    Hecke<QQ> H(A, QQ{});
    AlcoveOracle len(A, 8);
    RewriteOracle R(A, len);
    int n = A->num_gens();
    auto word_elem = [&](const std::vector<int>& w) {
      auto x = H.one();
      for (int j : w) x = H.rmul_gen(x, j);
      return x;
    };
    for (int a = 0; a < n; ++a)
      for (int b = 0; b < n; ++b)
        for (int c = 0; c < n; ++c) {
          std::vector<int> w1 = {a, b}, w2 = {c};
          auto got = H.mul(word_elem(w1), word_elem(w2));
          auto want = H.zero();
          for (auto& [w, k] : R.product(w1, w2)) H.add_term(want, w, H.ring().from_int(k));
          CAPTURE(p);
          CHECK(H.eq(got, want));
        }
  }
}

TEST_CASE("P-positive elements for the Borel in SL3") {
  auto G = std::make_shared<ProPWeyl>(load_config("sl3-p2"));
  auto P = std::make_shared<AffSub>(G, 0);
  auto Q = std::make_shared<AffSub>(G, G->roots().full_mask());
  Parabolic pq(P, Q);
  CHECK(pq.is_signed(pq.central_lambda(+1), +1));
  CHECK(pq.is_signed(pq.central_lambda(-1), -1));
  CHECK(pq.is_signed(G->identity(), +1));
  CHECK(pq.is_signed(G->identity(), -1));
  CHECK(pq.min_reps().size() == 6);
  Hecke<QQ> HP(P, QQ{}), HQ(Q, QQ{});
  auto x = HP.T(pq.central_lambda(+1));
  CHECK(HQ.eq(j_map(pq, HP, HQ, +1, false, x), x));
}
