// SPDX-License-Identifier: Apache-2.0
// Suites on W(1), the algebra, its bases and the Levi embeddings.
#include <filesystem>
#include <map>

#include "prophecke/oracles.hpp"
#include "suite_util.hpp"

namespace ph {

using nlohmann::json;
using namespace detail;

namespace {

std::shared_ptr<const AffSub> full_sub(const SuiteContext& c) {
  return std::make_shared<AffSub>(c.G, c.G->roots().full_mask());
}

// Default BFS bound: 6 for rank one, 5 above.
int length_bound(const ProPWeyl& G) { return G.roots().num_simple() <= 1 ? 6 : 5; }

bool antidominant_in(const ProPWeyl& G, int v, const IVec& x) {
  // x in the chamber v^{-1}(anti-dominant)
  IVec y = G.W0().act_lattice(v, x);
  const auto& rs = G.roots();
  for (int a = 0; a < rs.num_pos(); ++a)
    if (rs.pair(a, y) > 0) return false;
  return true;
}

template <class R>
std::string estr(const Hecke<R>& H, const typename Hecke<R>::Elem& x) {
  return H.str(x);
}

}  // namespace

// ---------------------------------------------------------------------------

void suite_lengths(const SuiteContext& c) {
  const auto& G = *c.G;
  auto A = full_sub(c);
  int B = length_bound(G);
  AlcoveOracle oracle(A, B);
  auto lv = words_by_length(*A, B);
  auto zero = length_zero(*A);
  long long n = 0;
  for (int l = 0; l <= B; ++l)
    for (auto& w : lv[l])
      for (auto& u : zero) {
        WElt x = G.mul(u, w);
        int f = A->length(x);
        auto o = oracle.length(x);
        ++n;
        c.check(f == l && o && *o == l, "length of " + G.str(x),
                json{{"formula", f}, {"bfs", o ? *o : -1}, {"word_length", l}});
      }
  c.rec->note("elements", n);
  c.rec->note("bound", B);

  const auto& W = G.W0();
  for (int v = 0; v < W.size(); ++v) {
    int neg = 0;
    for (int a = 0; a < G.roots().num_pos(); ++a)
      if (!G.roots().positive(W.act_root(v, a))) ++neg;
    c.check(neg == W.length(v) && int(W.word(v).size()) == W.length(v), "inversions of " + std::to_string(v));
    for (int w = 0; w < W.size(); ++w)
      c.check(W.bruhat_leq(v, w) == subword_bruhat_w0(W, v, w),
              "finite Bruhat " + std::to_string(v) + " <= " + std::to_string(w));
  }
  std::vector<WElt> aff;
  int Bb = std::min(B, 4);
  for (int l = 0; l <= Bb; ++l)
    for (auto& w : lv[l]) aff.push_back(w);
  auto tors = A->waff_torsion();
  if (tors.size() > 1) {
    auto extra = aff;
    for (auto& w : extra) aff.push_back(G.mul(G.tors(tors[1]), w));
  }
  for (auto& a : aff)
    for (auto& b : aff)
      c.check(A->bruhat_leq(a, b) == subword_bruhat(*A, a, b), "affine Bruhat " + G.str(a) + " <= " + G.str(b));
  // coset representatives: lengths add
  for (RootMask P = 0; P <= G.roots().full_mask(); ++P)
    for (int w1 : W.min_left_reps(P))
      for (int w2 : W.parabolic_elements(P))
        c.check(W.length(W.mul(w1, w2)) == W.length(w1) + W.length(w2), "W_0^P x W_0,P additive");
}

// ---------------------------------------------------------------------------

void suite_algebra(const SuiteContext& c) {
  with_ring(c, [&](auto ring) {
    using R = decltype(ring);
    const auto& G = *c.G;
    auto A = full_sub(c);
    Hecke<R> H(A, ring);
    Hecke<ZZ> HZ(A, ZZ{});
    auto rng = make_rng(c, 11);
    const auto& gens = A->gens();

    for (int j = 0; j < int(gens.size()); ++j) {
      const WElt& s = gens[j].e;
      auto lhs = H.mul(H.T(s), H.T(s));
      auto rhs = H.add(H.scale(H.T(G.mul(s, s)), H.q()), H.mul(H.c_elem(j), H.T(s)));
      c.check(H.eq(lhs, rhs), "quadratic relation for " + gens[j].name,
              json{{"lhs", H.str(lhs)}, {"rhs", H.str(rhs)}});
      for (int k = j + 1; k < int(gens.size()); ++k) {
        int m = A->coxeter_order(j, k);
        if (m == 0) continue;
        auto a = H.one(), b = H.one();
        for (int i = 0; i < m; ++i) {
          a = H.mul(a, H.T(gens[i % 2 ? k : j].e));
          b = H.mul(b, H.T(gens[i % 2 ? j : k].e));
        }
        c.check(H.eq(a, b), "braid relation " + gens[j].name + "," + gens[k].name);
      }
    }
    for (auto& u : length_zero(*A))
      for (int j = 0; j < int(gens.size()); ++j) {
        WElt w = G.mul(u, gens[j].e);
        c.check(H.eq(H.mul(H.T(u), H.T(gens[j].e)), H.T(w)), "T_u T_s = T_us for length zero u");
      }

    auto rand_elem = [&]() {
      typename Hecke<R>::Elem x;
      int k = uniform(rng, 1, 3);
      for (int i = 0; i < k; ++i)
        H.add_term(x, random_elt(G, rng, 1, G.roots().full_mask()), small_coeff(ring, rng));
      return x;
    };
    for (int i = 0; i < 200; ++i) {
      auto a = rand_elem(), b = rand_elem(), d = rand_elem();
      auto l = H.mul(H.mul(a, b), d), r = H.mul(a, H.mul(b, d));
      c.check(H.eq(l, r), "associativity",
              H.eq(l, r) ? json(nullptr) : json{{"a", H.str(a)}, {"b", H.str(b)}, {"c", H.str(d)}});
      c.check(H.eq(H.mul(H.one(), a), a) && H.eq(H.mul(a, H.one()), a), "unit");
    }

    AlcoveOracle len(A, 8);
    RewriteOracle rw(A, len);
    int ng = A->num_gens();
    std::vector<std::vector<int>> words{{}};
    for (size_t i = 0; i < words.size(); ++i)
      if (words[i].size() < 4)
        for (int j = 0; j < ng; ++j) {
          auto w = words[i];
          w.push_back(j);
          words.push_back(w);
        }
    long long pairs = 0;
    for (auto& w1 : words)
      for (auto& w2 : words) {
        if (w1.size() + w2.size() > 4) continue;
        auto o = rw.product(w1, w2);
        typename Hecke<ZZ>::Elem oz;
        for (auto& [w, k] : o) HZ.add_term(oz, w, k);
        auto x = H.one();
        for (int j : w1) x = H.mul(x, H.T(gens[j].e));
        auto y = H.one();
        for (int j : w2) y = H.mul(y, H.T(gens[j].e));
        auto p = H.mul(x, y);
        ++pairs;
        c.check(H.eq(p, map_elem(H, oz)), "rewriting oracle product",
                json{{"algebra", H.str(p)}, {"oracle", HZ.str(oz)}});
      }
    c.rec->note("oracle_pairs", pairs);

    if (c.cache_dir) {
      auto cr = structure_cache(*c.cache_dir, c.cfg, H, 3);
      c.rec->note("cache", cr.hit ? "hit" : (cr.rebuilt ? "rebuilt" : "created"));
      if (cr.hit) {
        auto fresh = structure_cache(*c.cache_dir + "/.verify", c.cfg, H, 3);
        c.check(fresh.table == cr.table, "cached structure constants agree with a fresh computation");
        std::error_code ec;
        std::filesystem::remove_all(*c.cache_dir + "/.verify", ec);
      }
    }
  });
}

// ---------------------------------------------------------------------------

void suite_basis(const SuiteContext& c) {
  with_ring(c, [&](auto ring) {
    using R = decltype(ring);
    const auto& G = *c.G;
    const auto& W = G.W0();
    auto A = full_sub(c);
    Hecke<R> H(A, ring);
    auto rng = make_rng(c, 13);
    RootMask full = G.roots().full_mask();

    auto triangular = [&](const typename Hecke<R>::Elem& x, const WElt& w) {
      for (auto& [v, a] : x) {
        if (v == w) {
          if (!ring.eq(a, ring.one())) return false;
        } else if (!A->bruhat_leq(v, w)) {
          return false;
        }
      }
      return x.count(w) == 1;
    };
    for (int i = 0; i < 60; ++i) {
      WElt w = random_elt(G, rng, 2, full);
      c.check(triangular(H.Tstar(w), w), "T* unitriangular at " + G.str(w));
      c.check(triangular(H.Eminus(w), w), "E_- unitriangular at " + G.str(w));
      for (int o = 0; o < W.size(); ++o) c.check(triangular(H.Eo(o, w), w), "E_o unitriangular at " + G.str(w));
    }
    for (int i = 0; i < 30; ++i) {
      typename Hecke<R>::Elem x;
      for (int k = 0; k < 3; ++k) H.add_term(x, random_elt(G, rng, 2, full), small_coeff(ring, rng));
      for (Basis b : {Basis::Tstar, Basis::Eo, Basis::Eminus, Basis::Eprime}) {
        int o = uniform(rng, 0, W.size() - 1);
        c.check(H.eq(H.from_coords(H.coords(x, b, o), b, o), x), "round trip through " + basis_name(b));
      }
      c.check(H.eq(H.iota(H.iota(x)), x), "iota is an involution");
      typename Hecke<R>::Elem y;
      H.add_term(y, random_elt(G, rng, 1, full), small_coeff(ring, rng));
      H.add_term(y, random_elt(G, rng, 1, full), small_coeff(ring, rng));
      c.check(H.eq(H.iota(H.mul(x, y)), H.mul(H.iota(x), H.iota(y))), "iota is multiplicative");
    }
    for (int i = 0; i < 200; ++i) {
      WElt a = random_elt(G, rng, 2, full), b = random_elt(G, rng, 2, full);
      int o = uniform(rng, 0, W.size() - 1);
      int e = H.q_half_exponent(a, b);
      auto lhs = H.mul(H.Eo(o, a), H.Eo(H.o_act(o, a), b));
      auto rhs = H.scale(H.Eo(o, G.mul(a, b)), ring_pow(ring, H.q(), e));
      c.check(e >= 0 && H.eq(lhs, rhs), "product formula",
              json{{"a", G.str(a)}, {"b", G.str(b)}, {"o", o}, {"exponent", e}});
    }
    // E_o on Lambda(1): T_lambda in the chamber of o, T*_lambda in its opposite
    for (auto& x : box(G.rank(), 2))
      for (auto& t : G.all_torsion()) {
        WElt l = G.lam(x, t);
        IVec mx(x.size());
        for (size_t i = 0; i < x.size(); ++i) mx[i] = -x[i];
        for (int o = 0; o < W.size(); ++o) {
          if (antidominant_in(G, o, x)) c.check(H.eq(H.Eo(o, l), H.T(l)), "E_o(lambda) = T_lambda");
          if (antidominant_in(G, o, mx)) c.check(H.eq(H.Eo(o, l), H.Tstar(l)), "E_o(lambda) = T*_lambda");
        }
      }
    // E_{o_+ v}(n_s), E_{o_- v}(n_s)
    int wG = W.longest(full);
    for (int v = 0; v < W.size(); ++v)
      for (int i = 0; i < G.roots().num_simple(); ++i) {
        WElt ns = G.n(W.simple(i));
        bool up = W.length(W.rmul_simple(v, i)) > W.length(v);
        c.check(H.eq(H.Eo(W.mul(wG, v), ns), up ? H.Tstar(ns) : H.T(ns)), "E_{o_+ v}(n_s)");
        c.check(H.eq(H.Eo(v, ns), up ? H.T(ns) : H.Tstar(ns)), "E_{o_- v}(n_s)");
      }
    // E_- against its definition
    for (int i = 0; i < 60; ++i) {
      WElt w = random_elt(G, rng, 2, full);
      WElt nv = G.n(w.v), l = G.mul(G.inv(nv), w);
      int e = H.q_half_exponent(nv, l);
      auto lhs = H.scale(H.Eminus(w), ring_pow(ring, H.q(), e));
      c.check(H.eq(lhs, H.mul(H.Tstar(nv), H.Eo(H.o_minus(), l))), "E_- = q-power T*_{n_v} E_{o_-}(lambda)");
    }
    // iota on generators and length zero
    for (int j = 0; j < A->num_gens(); ++j) {
      WElt s = A->gens()[j].e;
      c.check(H.eq(H.iota(H.T(s)), H.add(H.scale(H.T(s), ring.neg(ring.one())), H.c_elem(j))),
              "iota(T_s) = -T_s + c_s");
      c.check(H.eq(H.Tstar(s), H.sub(H.T(s), H.c_elem(j))), "T*_s = T_s - c_s");
    }
    for (auto& t : G.all_torsion()) {
      c.check(H.eq(H.iota(H.T(G.tors(t))), H.T(G.tors(t))), "iota(T_t) = T_t");
      c.check(H.eq(H.Tstar(G.tors(t)), H.T(G.tors(t))), "T*_t = T_t");
    }
    // E_{o v}(lambda n_w) = E_o(lambda n_w) for w in ^P W_0, v in W_0,P, lambda in Z(W_P(1)) Z_kappa
    int wmax = W.longest(full);
    for (RootMask P = 0; P <= full; ++P) {
      auto AP = std::make_shared<AffSub>(c.G, P);
      Parabolic pq(AP, A);
      std::vector<WElt> lams;
      for (int k = -2; k <= 2; ++k) {
        WElt l = G.identity();
        for (int i = 0; i < std::abs(k); ++i) l = G.mul(l, pq.central_lambda(k > 0 ? 1 : -1));
        for (auto& t : G.all_torsion()) lams.push_back(G.mul(l, G.tors(t)));
      }
      for (auto& l : lams)
        for (int w : W.min_right_reps(P))
          for (int v : W.parabolic_elements(P))
            for (int o : {0, wmax}) {
              WElt x = G.mul(l, G.n(w));
              c.check(H.eq(H.Eo(W.mul(o, v), x), H.Eo(o, x)), "E_{o v}(lambda n_w) = E_o(lambda n_w)",
                      json{{"P", P}, {"x", G.str(x)}, {"v", v}, {"o", o}});
            }
    }
  });
}

// ---------------------------------------------------------------------------

void suite_length_lemmas(const SuiteContext& c) {
  const auto& G = *c.G;
  const auto& W = G.W0();
  const auto& rs = G.roots();
  auto A = full_sub(c);
  RootMask full = rs.full_mask();
  auto len = [&](const WElt& w) { return A->length(w); };
  auto pr = [&](int a, const WElt& l) { return rs.pair(a, G.free_part(l)); };
  auto bx = box(G.rank(), 3);
  auto tors = G.all_torsion();
  std::vector<WElt> lams;
  for (auto& x : bx) lams.push_back(G.lam(x, tors[lams.size() % tors.size()]));
  int npos = rs.num_pos();

  // length, on lambda
  for (auto& l1 : lams)
    for (auto& l2 : lams) {
      bool same = true;
      for (int a = 0; a < npos; ++a)
        if (pr(a, l1) * pr(a, l2) < 0) same = false;
      c.check((len(G.mul(l1, l2)) == len(l1) + len(l2)) == same, "additivity on Lambda(1) iff same closed chamber",
              json{{"l1", G.str(l1)}, {"l2", G.str(l2)}});
    }
  // length zero
  for (auto& l : lams) {
    bool z = true;
    for (int a = 0; a < npos; ++a)
      if (pr(a, l)) z = false;
    c.check((len(l) == 0) == z, "length zero iff orthogonal to all roots", json{{"l", G.str(l)}});
  }
  // central elements
  std::vector<WElt> gens;
  for (int i = 0; i < rs.num_simple(); ++i) gens.push_back(G.n(W.simple(i)));
  for (int i = 0; i < G.rank(); ++i) {
    IVec e(G.rank(), 0);
    e[i] = 1;
    gens.push_back(G.lam(e));
  }
  for (int i = 0; i < G.trank(); ++i) {
    IVec e(G.trank(), 0);
    e[i] = 1;
    gens.push_back(G.tors(e));
  }
  for (int v = 0; v < W.size(); ++v)
    for (auto& x : box(G.rank(), 2))
      for (auto& t : tors) {
        WElt w = G.mul(G.n(v), G.lam(x, t));
        bool central = true;
        for (auto& g : gens)
          if (G.mul(g, w) != G.mul(w, g)) central = false;
        if (central) c.check(v == 0 && len(w) == 0, "central elements lie in Lambda(1) with length zero");
      }
  // Lambda(1) cap W_aff(1) has even length
  for (auto& x : bx)
    for (auto& t : tors) {
      WElt l = G.lam(x, t);
      if (A->in_waff(l)) c.check(len(l) % 2 == 0, "even length on Lambda(1) cap W_aff(1)", json{{"l", G.str(l)}});
    }
  // conjugation
  std::mt19937_64 rng = make_rng(c, 17);
  for (auto& l : lams)
    for (int k = 0; k < 4; ++k) {
      WElt w = random_elt(G, rng, 2, full);
      c.check(len(G.mul(G.mul(w, l), G.inv(w))) == len(l), "length of a conjugate of lambda",
              json{{"w", G.str(w)}, {"l", G.str(l)}});
    }
  // l(lambda n_v) formulas and the additivity criteria
  for (auto& l : lams)
    for (int v = 0; v < W.size(); ++v) {
      int vi = W.inv(v);
      int pos = 0, nonpos = 0;
      bool all_le = true, all_gt = true, all_ge = true, all_lt = true;
      for (int a = 0; a < npos; ++a) {
        if (!rs.positive(W.act_root(vi, a))) {
          if (pr(a, l) > 0) ++pos;
          else ++nonpos;
          if (pr(a, l) > 0) all_le = false;
          if (pr(a, l) <= 0) all_gt = false;
        }
        if (!rs.positive(W.act_root(v, a))) {
          if (pr(a, l) < 0) all_ge = false;
          if (pr(a, l) >= 0) all_lt = false;
        }
      }
      WElt ln = G.mul(l, G.n(v)), nl = G.mul(G.n(v), l);
      int lv = W.length(v), ll = len(l);
      c.check(len(ln) == ll + lv - 2 * pos && len(ln) == ll - lv + 2 * nonpos, "l(lambda n_v) formulas",
              json{{"l", G.str(l)}, {"v", v}});
      c.check((len(ln) == ll + lv) == all_le, "l(lambda n_v) = l(lambda) + l(v) criterion");
      c.check((len(ln) == ll - lv) == all_gt, "l(lambda n_v) = l(lambda) - l(v) criterion");
      c.check((len(nl) == ll + lv) == all_ge, "l(n_v lambda) = l(lambda) + l(v) criterion");
      c.check((len(nl) == ll - lv) == all_lt, "l(n_v lambda) = l(lambda) - l(v) criterion");
    }
  for (auto& l : lams)
    for (int i = 0; i < rs.num_simple(); ++i) {
      WElt ns = G.n(W.simple(i));
      int a = rs.simple(i);
      c.check((len(G.mul(l, ns)) == len(l) + 1) == (pr(a, l) <= 0), "l(lambda n_s) = l(lambda) + 1 criterion");
      c.check((len(G.mul(ns, l)) == len(l) + 1) == (pr(a, l) >= 0), "l(n_s lambda) = l(lambda) + 1 criterion");
    }
  // P-signed elements
  auto small = box(G.rank(), 2);
  for (RootMask P = 0; P <= full; ++P) {
    auto AP = std::make_shared<AffSub>(c.G, P);
    Parabolic pq(AP, A);
    std::vector<WElt> wp;
    for (int u : W.parabolic_elements(P))
      for (auto& x : small) wp.push_back(G.mul(G.n(u), G.lam(x, tors[wp.size() % tors.size()])));
    std::vector<WElt> centrals;
    for (auto& x : bx)
      for (auto& t : tors) {
        WElt l = G.lam(x, t);
        bool cen = true;
        for (int i = 0; i < rs.num_simple(); ++i)
          if (mask_has(P, i) && G.act(W.simple(i), l) != l) cen = false;
        if (cen) centrals.push_back(l);
      }
    auto dominant = [&](const WElt& l, int sgn) {
      for (int a = 0; a < npos; ++a)
        if (sgn * pr(a, l) < 0) return false;
      return true;
    };
    const WElt& lp = pq.central_lambda(+1);
    const WElt& lm = pq.central_lambda(-1);
    for (auto& w : wp) {
      bool neg = pq.is_negative(w), pos = pq.is_positive(w);
      c.check((len(G.mul(w, lm)) == len(w) + len(lm)) == neg, "l(w lambda_P^-) additive iff w P-negative",
              json{{"P", P}, {"w", G.str(w)}});
      for (int v : W.min_left_reps(P)) {
        if (pos) {
          WElt a = G.mul(G.n(v), lp);
          c.check(len(G.mul(a, w)) == len(a) + len(w) && len(a) == len(lp) - W.length(v),
                  "strict additivity, P-positive", json{{"P", P}, {"w", G.str(w)}, {"v", v}});
        }
        if (neg)
          for (auto& l0 : centrals)
            if (dominant(l0, +1)) {
              WElt a = G.mul(G.n(v), l0);
              c.check(len(G.mul(a, w)) == len(a) + len(w) && len(a) == W.length(v) + len(l0),
                      "additivity n_v lambda_0 w, P-negative", json{{"P", P}, {"w", G.str(w)}, {"v", v}});
            }
      }
      for (int v : W.min_right_reps(P)) {
        if (neg) {
          WElt a = G.mul(lm, G.n(v));
          c.check(len(G.mul(w, a)) == len(w) + len(a) && len(a) == len(lm) - W.length(v),
                  "strict additivity, P-negative", json{{"P", P}, {"w", G.str(w)}, {"v", v}});
        }
        if (pos)
          for (auto& l0 : centrals)
            if (dominant(l0, -1)) {
              WElt a = G.mul(l0, G.n(v));
              c.check(len(G.mul(w, a)) == len(w) + len(a) && len(a) == W.length(v) + len(l0),
                      "additivity w lambda_0 n_v, P-positive", json{{"P", P}, {"w", G.str(w)}, {"v", v}});
            }
      }
    }
  }
}

// ---------------------------------------------------------------------------

void suite_jmaps(const SuiteContext& c) {
  with_ring(c, [&](auto ring) {
    using R = decltype(ring);
    using Elem = typename Hecke<R>::Elem;
    const auto& G = *c.G;
    const auto& W = G.W0();
    RootMask full = G.roots().full_mask();
    auto rng = make_rng(c, 19);
    std::map<RootMask, std::shared_ptr<AffSub>> subs;
    std::map<RootMask, std::shared_ptr<Hecke<R>>> hs;
    for (RootMask m = 0; m <= full; ++m) {
      subs[m] = std::make_shared<AffSub>(c.G, m);
      hs[m] = std::make_shared<Hecke<R>>(subs[m], ring);
    }
    auto signed_elt = [&](const Parabolic& pq, int sign) {
      for (int it = 0; it < 1000; ++it) {
        WElt w = random_elt(G, rng, 2, pq.P().mask());
        if (pq.is_signed(w, sign)) return w;
      }
      return pq.central_lambda(sign);
    };
    for (RootMask Q = 0; Q <= full; ++Q)
      for (RootMask P = 0; P <= Q; ++P) {
        if ((P & ~Q) != 0) continue;
        Parabolic pq(subs[P], subs[Q]);
        const auto& HP = *hs[P];
        const auto& HQ = *hs[Q];
        int samples = Q == full ? 60 : 15;
        std::string tag = subs[P]->name() + " in " + subs[Q]->name();
        for (int sign : {+1, -1})
          for (bool star : {false, true}) {
            std::string jn = std::string("j") + (sign > 0 ? "+" : "-") + (star ? "*" : "");
            auto make = [&]() {
              Elem terms;
              int k = uniform(rng, 1, 2);
              for (int i = 0; i < k; ++i) HP.add_term(terms, signed_elt(pq, sign), small_coeff(ring, rng));
              return star ? HP.from_coords(terms, Basis::Tstar) : terms;
            };
            for (int i = 0; i < samples; ++i) {
              Elem x = make(), y = make();
              Elem xy = HP.mul(x, y);
              Elem lhs = j_map(pq, HP, HQ, sign, star, xy);
              Elem rhs = HQ.mul(j_map(pq, HP, HQ, sign, star, x), j_map(pq, HP, HQ, sign, star, y));
              c.check(HQ.eq(lhs, rhs), jn + " is multiplicative, " + tag,
                      HQ.eq(lhs, rhs) ? json(nullptr) : json{{"x", HP.str(x)}, {"y", HP.str(y)}});
            }
          }
        // images of E under j
        int wP = W.longest(P), wQ = W.longest(Q);
        for (int i = 0; i < 20; ++i) {
          WElt wp = signed_elt(pq, +1), wm = signed_elt(pq, -1);
          for (int x : W.parabolic_elements(P)) {
            c.check(HQ.eq(j_map(pq, HP, HQ, +1, false, HP.Eo(x, wp)), HQ.Eo(x, wp)), "j+(E_{o_- x}) = E_{o_- x}, " + tag);
            c.check(HQ.eq(j_map(pq, HP, HQ, +1, true, HP.Eo(W.mul(wP, x), wp)), HQ.Eo(W.mul(wQ, x), wp)),
                    "j+*(E_{o_+ x}) = E_{o_+ x}, " + tag);
            c.check(HQ.eq(j_map(pq, HP, HQ, -1, false, HP.Eo(W.mul(wP, x), wm)), HQ.Eo(W.mul(wQ, x), wm)),
                    "j-(E_{o_+ x}) = E_{o_+ x}, " + tag);
            c.check(HQ.eq(j_map(pq, HP, HQ, -1, true, HP.Eo(x, wm)), HQ.Eo(x, wm)), "j-*(E_{o_- x}) = E_{o_- x}, " + tag);
          }
        }
        // doubly signed elements
        for (auto& x : box(G.rank(), 2))
          for (int u : W.parabolic_elements(P)) {
            WElt w = G.mul(G.n(u), G.lam(x));
            if (!pq.is_positive(w) || !pq.is_negative(w)) continue;
            for (int sign : {+1, -1}) {
              c.check(HQ.eq(j_map(pq, HP, HQ, sign, false, HP.Tstar(w)), HQ.Tstar(w)), "j(T*) = T* on doubly signed, " + tag);
              c.check(HQ.eq(j_map(pq, HP, HQ, sign, true, HP.T(w)), HQ.T(w)), "j*(T) = T on doubly signed, " + tag);
            }
          }
        // central localizing elements
        for (int sign : {+1, -1}) {
          const WElt& l = pq.central_lambda(sign);
          c.check(HP.eq(HP.T(l), HP.Tstar(l)) && HP.eq(HP.T(l), HP.Eo(HP.o_minus(), l)), "T_lambda = T*_lambda = E(lambda), " + tag);
          std::vector<WElt> gens = subs[P]->omegas();
          for (auto& g : subs[P]->gens()) gens.push_back(g.e);
          for (auto& t : G.all_torsion()) gens.push_back(G.tors(t));
          for (auto& g : gens)
            c.check(HP.eq(HP.mul(HP.T(l), HP.T(g)), HP.mul(HP.T(g), HP.T(l))), "E(lambda_P) is central in H_P, " + tag);
          for (int i = 0; i < 20; ++i) {
            Elem x;
            HP.add_term(x, random_elt(G, rng, 2, P), small_coeff(ring, rng));
            HP.add_term(x, random_elt(G, rng, 2, P), small_coeff(ring, rng));
            auto [y, n] = localize_normal_form(pq, HP, sign, x);
            bool ok = true;
            for (auto& [w, a] : y)
              if (!pq.is_signed(w, sign)) ok = false;
            ok = ok && HP.eq(HP.mul(x, HP.pow(HP.T(l), n)), y);
            c.check(ok, "localization normal form, " + tag, json{{"x", HP.str(x)}});
          }
        }
        // q(P, w)
        for (int i = 0; i < 30; ++i) {
          WElt w = random_elt(G, rng, 2, P);
          int e0 = pq.q_factor(w), e1 = pq.q_factor(w, 1), e2 = pq.q_factor(w, 2);
          c.check(e0 == e1 && e1 == e2 && e0 >= 0, "q(P, w) independent of lambda_0, " + tag);
          c.check((e0 == 0) == pq.is_negative(w), "q(P, w) = 1 iff w P-negative, " + tag, json{{"w", G.str(w)}});
        }
      }
  });
}

}  // namespace ph
