// SPDX-License-Identifier: Apache-2.0
// Shared helpers for the suite bodies.
#pragma once

#include <random>
#include <set>
#include <string>
#include <vector>

#include "prophecke/harness.hpp"

namespace ph::detail {

template <class Fn>
void with_ring(const SuiteContext& c, Fn&& fn) {
  switch (c.ring.kind) {
    case RingSpec::Z: fn(ZZ{}); break;
    case RingSpec::Q: fn(QQ{}); break;
    case RingSpec::F: fn(GF(c.ring.p, c.ring.k)); break;
    case RingSpec::Zpm: fn(Zpm(c.ring.p, c.ring.m)); break;
  }
}

// Module suites need a field; the characteristic-p ones say so.
template <class Fn>
void with_field(const SuiteContext& c, bool need_char_p, Fn&& fn) {
  if (c.ring.kind == RingSpec::F) {
    fn(GF(c.ring.p, c.ring.k));
  } else if (c.ring.kind == RingSpec::Q && !need_char_p) {
    fn(QQ{});
  } else {
    throw ScopeError("suite needs " + std::string(need_char_p ? "a field of characteristic p (Fp[:k])"
                                                              : "a field (Q or Fp[:k])") +
                     ", got " + c.ring.name());
  }
}

inline std::mt19937_64 make_rng(const SuiteContext& c, std::uint64_t salt) {
  return std::mt19937_64(c.seed * 0x9e3779b97f4a7c15ull + salt);
}

inline int uniform(std::mt19937_64& rng, int lo, int hi) {
  return lo + int(rng() % std::uint64_t(hi - lo + 1));
}

// All integer vectors of the given length with entries in [-b, b].
inline std::vector<IVec> box(int r, int b) {
  std::vector<IVec> out{IVec()};
  for (int i = 0; i < r; ++i) {
    std::vector<IVec> next;
    for (auto& v : out)
      for (int x = -b; x <= b; ++x) {
        auto w = v;
        w.push_back(x);
        next.push_back(w);
      }
    out = std::move(next);
  }
  return out;
}

inline WElt random_elt(const ProPWeyl& G, std::mt19937_64& rng, int b, RootMask fin_mask) {
  auto fin = G.W0().parabolic_elements(fin_mask);
  auto tors = G.all_torsion();
  IVec x(G.rank());
  for (auto& e : x) e = uniform(rng, -b, b);
  return G.mul(G.n(fin[rng() % fin.size()]), G.lam(x, tors[rng() % tors.size()]));
}

template <class R>
typename R::E small_coeff(const R& r, std::mt19937_64& rng) {
  int v = uniform(rng, -3, 3);
  if (v == 0) v = 1;
  return r.from_int(v);
}

// Elements of length zero: torsion times the group generated by the Omega lifts.
inline std::vector<WElt> length_zero(const AffSub& A) {
  const auto& G = A.group();
  std::set<WElt> seen;
  std::vector<WElt> out;
  for (auto& t : G.all_torsion())
    if (seen.insert(G.tors(t)).second) out.push_back(G.tors(t));
  for (size_t i = 0; i < out.size(); ++i)
    for (auto& o : A.omegas()) {
      WElt w = G.mul(out[i], o);
      require(out.size() < 100000, "length-zero closure too large");
      if (seen.insert(w).second) out.push_back(w);
    }
  return out;
}

// Reduced products of affine generators of length <= bound, starting at the identity.
inline std::vector<std::vector<WElt>> words_by_length(const AffSub& A, int bound) {
  const auto& G = A.group();
  std::vector<std::vector<WElt>> lv{{G.identity()}};
  std::set<WElt> seen{G.identity()};
  for (int l = 0; l < bound; ++l) {
    std::vector<WElt> next;
    for (auto& w : lv.back())
      for (int j = 0; j < A.num_gens(); ++j) {
        auto st = A.step(w, j);
        if (st.up && seen.insert(st.prod).second) next.push_back(st.prod);
      }
    lv.push_back(std::move(next));
  }
  return lv;
}

inline std::string mname(RootMask m) { return "{" + std::to_string(m) + "}"; }

}  // namespace ph::detail
