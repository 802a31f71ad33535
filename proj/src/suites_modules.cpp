// SPDX-License-Identifier: Apache-2.0
// Suites on modules: twists, induction, filtration, Steinberg modules, adjoints and simple modules.
#include <map>

#include "suite_util.hpp"

namespace ph {

using nlohmann::json;
using namespace detail;

namespace {

template <class F>
class Chars {
 public:
  explicit Chars(const Algebras<F>& A) : A_(A) {}
  const std::vector<FinModule<F>>& of(RootMask P) {
    auto it = memo_.find(P);
    if (it == memo_.end()) it = memo_.emplace(P, all_characters(A_.hecke(P))).first;
    return it->second;
  }

 private:
  const Algebras<F>& A_;
  std::map<RootMask, std::vector<FinModule<F>>> memo_;
};

template <class F>
bool same_generators(const FinModule<F>& a, const FinModule<F>& b) {
  if (a.dim() != b.dim() || a.mask() != b.mask()) return false;
  auto L = a.la();
  auto ga = a.all_generators(), gb = b.all_generators();
  for (size_t i = 0; i < ga.size(); ++i)
    if (!L.eq(ga[i], gb[i])) return false;
  return true;
}

// The map I(f): I(sigma1) -> I(sigma2), phi -> f o phi, block diagonal on carriers.
template <class F>
Mat<F> induced_map(const Induced<F>& a, const Induced<F>& b, const Mat<F>& f) {
  auto L = a.sigma().la();
  Mat<F> X = L.zero(a.dim(), b.dim());
  for (size_t i = 0; i < a.reps().size(); ++i) L.put(X, int(i) * a.block(), int(i) * b.block(), f);
  return X;
}

// Projection onto the quotient by Ub, in the coordinates used by quotient().
template <class F>
Mat<F> projection(const LinAlg<F>& L, const Mat<F>& Ub, const Mat<F>& C) {
  auto inv = L.inverse(L.vstack(C, Ub));
  require(bool(inv), "projection: complement is not a complement");
  return L.block(*inv, 0, 0, inv->rows, C.rows);
}

// Exactness of 0 -> a -X-> b -Y-> c -> 0 as matrices on rows.
template <class F>
bool short_exact(const LinAlg<F>& L, const Mat<F>& X, const Mat<F>& Y) {
  if (!L.is_zero(L.mul(X, Y))) return false;
  int a = X.rows, b = X.cols, c = Y.cols;
  return L.rank(X) == a && L.rank(Y) == c && a + c == b;
}

std::string pq_tag(RootMask P, RootMask Q) { return " P=" + mname(P) + " Q=" + mname(Q); }

template <class F>
json mod_tag(const FinModule<F>& m) {
  return json{{"module", m.provenance()}, {"mask", m.mask()}, {"dim", m.dim()}};
}

}  // namespace

// ---------------------------------------------------------------------------

void suite_modules(const SuiteContext& c) {
  with_field(c, false, [&](auto field) {
    using F = decltype(field);
    Algebras<F> A(c.G, field);
    Chars<F> chars(A);
    const auto& G = *c.G;
    const auto& W = G.W0();
    RootMask full = A.full();
    auto rng = make_rng(c, 23);
    auto L = LinAlg<F>(A.field());
    auto Aful = A.sub(full);

    for (RootMask P : A.between(0, full)) {
      auto HP = A.hecke(P);
      auto triv = trivial_module(HP);
      c.check(triv.valid(), "trivial module is valid" + pq_tag(P, P));
      for (auto& w : sample_elements(HP->sub(), 10, c.seed + P))
        c.check(L.eq(triv.act(HP->Tstar(w)), L.identity(1)), "triv(T*_w) = 1", json{{"w", G.str(w)}});
      const auto& cs = chars.of(P);
      c.rec->note("characters " + A.mask_name(P), cs.size());
      for (auto& s : cs) {
        c.check(s.valid(), "character is valid", mod_tag(s));
        auto tl = twist_length(s, *Aful);
        auto ti = twist_iota(s);
        c.check(tl.valid() && ti.valid(), "twists are valid modules", mod_tag(s));
        c.check(same_generators(twist_length(tl, *Aful), s), "length twist is an involution", mod_tag(s));
        c.check(same_generators(twist_iota(ti), s), "iota twist is an involution", mod_tag(s));
        c.check(same_generators(twist_length(ti, *Aful), twist_iota(tl)), "length and iota twists commute", mod_tag(s));
        c.check(same_generators(twist_iota(twist_length(twist_iota(tl), *Aful)), s), "double length-iota twist",
                mod_tag(s));
        c.check(delta_set(twist_iota(tl), A) == delta_set(s, A), "Delta of the length-iota twist", mod_tag(s));
        if (P == full) c.check(same_generators(tl, s), "length twist trivial on H", mod_tag(s));
        for (auto& g : HP->sub().gens())
          c.check(L.eq(tl.act_T(g.e), s.act_T(g.e)), "length twist is identity on H_aff,P", mod_tag(s));
        for (auto& w : sample_elements(HP->sub(), 12, c.seed + 7 * P)) {
          int e = Aful->length(w) - HP->sub().length(w);
          auto lhs = tl.act(HP->Tstar(w));
          auto rhs = s.act(HP->Tstar(w));
          if (e % 2) rhs = L.scale(rhs, field.neg(field.one()));
          c.check(L.eq(lhs, rhs), "length twist on T*", json{{"w", G.str(w)}, {"module", s.provenance()}});
        }
        // twist by n_{w_G w_P}
        RootMask Pp = A.opposite(P, full);
        WElt n = G.n(A.wqwp(P, full));
        auto ns = twist_conjugate(s, A.hecke(Pp), n);
        c.check(ns.valid(), "n sigma is a valid module", mod_tag(s));
        WElt n2 = G.n(A.wqwp(Pp, full));
        c.check(isomorphic(twist_conjugate(ns, HP, n2), s), "double conjugation twist", mod_tag(s));
        RootMask D = delta_set(s, A);
        if (D == full) {
          c.check(Pp == P && isomorphic(ns, s), "n sigma = sigma when P(sigma) = G", mod_tag(s));
          for (RootMask Q : A.between(P, full)) {
            RootMask Qp = A.opposite(Q, full);
            if ((P & ~Qp) != 0) continue;
            auto lhs = twist_conjugate(extend(s, Q, A), A.hecke(Qp), G.n(A.wqwp(Q, full)));
            c.check(isomorphic(lhs, extend(s, Qp, A)), "n e_Q(sigma) = e_Q'(sigma)" + pq_tag(P, Q), mod_tag(s));
          }
        }
        // extensions
        for (RootMask Q : A.between(P, D)) {
          auto e = extend(s, Q, A);
          auto HQ = A.hecke(Q);
          c.check(e.valid(), "e_Q(sigma) is valid" + pq_tag(P, Q), mod_tag(s));
          auto pq = A.parabolic(P, Q);
          for (auto& w : sample_elements(HP->sub(), 12, c.seed + 31 * Q + P))
            c.check(L.eq(e.act(HQ->Tstar(w)), s.act(HP->Tstar(w))), "e_Q(sigma)(T*_w) = sigma(T*_w) on W_P(1)",
                    json{{"w", G.str(w)}, {"P", P}, {"Q", Q}});
          for (int sign : {+1, -1})
            for (auto& w : sample_signed(*pq, sign, 8, c.seed + Q)) {
              auto x = HP->add(HP->T(w), HP->Tstar(w));
              c.check(L.eq(e.act(j_map(*pq, *HP, *HQ, sign, true, x)), s.act(x)),
                      std::string("restriction along j") + (sign > 0 ? "+*" : "-*") + pq_tag(P, Q), mod_tag(s));
            }
          RootMask P2 = Q & ~P;
          const auto& rs = G.roots();
          for (int j = 0; j < HQ->sub().num_gens(); ++j) {
            const auto& g = HQ->sub().gens()[j];
            bool in_p2 = rs.in_subsystem(g.grad, P2) || rs.in_subsystem(rs.neg(g.grad), P2);
            if (!in_p2) continue;
            c.check(L.eq(e.act(HQ->c_elem(j)), L.scale(L.identity(e.dim()), field.from_int(G.q() - 1))),
                    "e_Q(sigma)(c_s) = q - 1 on S_aff,P2", mod_tag(s));
            if (c.ring.char_p())
              c.check(L.is_zero(e.act_T(g.e)), "e_Q(sigma)(T_s) = 0 on S_aff,P2 in characteristic p", mod_tag(s));
          }
          for (int a = 0; a < rs.num_simple(); ++a)
            if (mask_has(P2, a))
              for (auto& l : lambda_aff_generators(*A.sub(RootMask(1) << a)))
                c.check(L.eq(s.act_T(l), L.identity(s.dim())), "Lambda(1) cap W_aff,P2(1) acts trivially",
                        mod_tag(s));
        }
      }
      // e_Q(triv_P) = triv_Q
      for (RootMask Q : A.between(P, delta_set(triv, A)))
        c.check(same_generators(extend(triv, Q, A), trivial_module(A.hecke(Q))), "e_Q(triv_P) = triv_Q" + pq_tag(P, Q));
      // Delta(triv_P)
      RootMask expect = P;
      for (int a = 0; a < G.roots().num_simple(); ++a)
        if (G.roots().orthogonal(P, RootMask(1) << a)) expect |= RootMask(1) << a;
      c.check(delta_set(triv, A) == expect, "Delta(triv_P) = Delta_P plus the roots orthogonal to it" + pq_tag(P, P));
    }

    // action well defined and multiplicative
    auto HG = A.hecke(full);
    auto chi = chars.of(0);
    Induced<F> ind(A, chi[chi.size() / 2], full);
    const auto& M = ind.module();
    const auto& gens = Aful->gens();
    for (int i = 0; i < 50; ++i) {
      WElt w = random_elt(G, rng, 2, full);
      for (int j = 0; j < int(gens.size()); ++j) {
        WElt wg = G.mul(w, gens[j].e), gw = G.mul(gens[j].e, w);
        if (Aful->length(wg) > Aful->length(w))
          c.check(L.eq(M.act_T(wg), L.mul(M.act_T(w), M.act_T(gens[j].e))), "action independent of reduced word");
        if (Aful->length(gw) > Aful->length(w))
          c.check(L.eq(M.act_T(gw), L.mul(M.act_T(gens[j].e), M.act_T(w))), "action independent of reduced word");
      }
    }
    c.check(L.eq(M.act(HG->one()), L.identity(M.dim())), "T_1 acts as the identity");
    for (int i = 0; i < 100; ++i) {
      typename Hecke<F>::Elem x, y;
      for (int k = 0; k < 2; ++k) {
        HG->add_term(x, random_elt(G, rng, 1, full), small_coeff(field, rng));
        HG->add_term(y, random_elt(G, rng, 1, full), small_coeff(field, rng));
      }
      c.check(L.eq(M.act(HG->mul(x, y)), L.mul(M.act(x), M.act(y))), "action is multiplicative (right module)");
    }
    // random matrices are rejected
    int rejected = 0;
    for (int i = 0; i < 10; ++i) {
      auto rnd = [&]() {
        Mat<F> m = L.zero(2, 2);
        for (int a = 0; a < 2; ++a)
          for (int b = 0; b < 2; ++b) m(a, b) = small_coeff(field, rng);
        return m;
      };
      std::vector<Mat<F>> S, Z, O;
      for (int j = 0; j < Aful->num_gens(); ++j) S.push_back(rnd());
      for (int j = 0; j < G.trank(); ++j) Z.push_back(rnd());
      for (int j = 0; j < G.rank(); ++j) O.push_back(rnd());
      FinModule<F> m(HG, 2, S, Z, O, "random");
      if (!m.valid()) ++rejected;
    }
    c.check(rejected >= 9, "random matrices violate the relations", json{{"rejected", rejected}});
    (void)W;
  });
}

// ---------------------------------------------------------------------------

void suite_induction(const SuiteContext& c) {
  with_field(c, false, [&](auto field) {
    using F = decltype(field);
    Algebras<F> A(c.G, field);
    Chars<F> chars(A);
    const auto& W = c.G->W0();
    RootMask full = A.full();
    auto L = LinAlg<F>(A.field());
    auto Aful = A.sub(full);
    long long comparisons = 0;
    for (RootMask P : A.between(0, full))
      for (auto& s : chars.of(P)) {
        Induced<F> I(A, s, full);
        Induced<F> Ip(A, s, full, Variant::Iprime);
        int expect = int(W.min_left_reps(P).size()) * s.dim();
        c.check(I.dim() == expect && Ip.dim() == expect, "dim I_P(sigma) = |W_0^P| dim sigma", mod_tag(s));
        c.check(I.module().valid() && Ip.module().valid(), "induced modules are valid", mod_tag(s));
        if (P == full) c.check(same_generators(I.module(), s), "I_G(sigma) = sigma", mod_tag(s));
        for (auto& ch : comparison_isos(A, s, full, c.seed)) {
          ++comparisons;
          c.check(ch.ok, ch.name, json{{"module", s.provenance()}, {"P", P}, {"detail", ch.detail}});
        }
        for (RootMask Q : A.between(P, full))
          for (RootMask P0 : A.between(Q, full))
            for (Variant v : {Variant::I, Variant::Iprime}) {
              auto cert = transitivity(A, s, Q, P0, v);
              c.check(cert.ok(), cert.name + pq_tag(P, Q) + " P0=" + mname(P0), mod_tag(s));
            }
        // twist by length along a Levi
        for (RootMask P1 : A.between(P, full)) {
          auto a = Induced<F>(A, twist_length(s, *A.sub(P1)), P1).module();
          auto lhs = twist_length(a, *Aful);
          auto rhs = Induced<F>(A, twist_length(s, *Aful), P1).module();
          c.check(isomorphic(lhs, rhs), "length twist and I^P1_P" + pq_tag(P, P1), mod_tag(s));
        }
      }
    c.rec->note("comparison_checks", comparisons);

    // exactness on 0 -> I^P1_Q1 -> I^P1_0(chi) -> quotient -> 0
    for (auto& chi : chars.of(0)) {
      RootMask D = delta_set(chi, A);
      for (RootMask P1 : A.between(0, D)) {
        if (P1 == 0) continue;
        auto st = steinberg(A, chi, 0, P1);
        const auto& big = st.big->module();
        auto Ub = st.image.rows ? L.row_basis(st.image) : L.zero(0, big.dim());
        auto C = L.complement(Ub, big.dim());
        auto sub = submodule(big, Ub);
        auto quo = quotient(big, Ub);
        auto Pi = projection(L, Ub, C);
        c.check(equivariance_residuals(sub, big, Ub).empty() && equivariance_residuals(big, quo, Pi).empty(),
                "sequence of H_P1-modules is equivariant", mod_tag(chi));
        for (Variant v : {Variant::I, Variant::Iprime}) {
          Induced<F> a(A, sub, full, v), b(A, big, full, v), q(A, quo, full, v);
          auto X = induced_map(a, b, Ub), Y = induced_map(b, q, Pi);
          bool eqv = equivariance_residuals(a.module(), b.module(), X).empty() &&
                     equivariance_residuals(b.module(), q.module(), Y).empty();
          c.check(eqv && short_exact(L, X, Y),
                  std::string(v == Variant::I ? "I" : "I'") + " is exact, P1=" + mname(P1), mod_tag(chi));
        }
      }
    }
  });
}

// ---------------------------------------------------------------------------

void suite_filtration(const SuiteContext& c) {
  with_field(c, false, [&](auto field) {
    using F = decltype(field);
    Algebras<F> A(c.G, field);
    Chars<F> chars(A);
    const auto& G = *c.G;
    const auto& W = G.W0();
    RootMask full = A.full();
    auto L = LinAlg<F>(A.field());
    std::vector<WElt> lams;
    auto tors = G.all_torsion();
    for (auto& x : box(G.rank(), 1)) lams.push_back(G.lam(x, tors[lams.size() % tors.size()]));

    long long opens = 0;
    for (RootMask P : A.between(0, full))
      for (auto& s : chars.of(P)) {
        Induced<F> I(A, s, full);
        for (auto& ch : check_filtration(I, lams))
          c.check(ch.ok, ch.name, json{{"module", s.provenance()}, {"P", P}, {"detail", ch.detail}});
        opens += open_subsets(I).size();
      }
    c.rec->note("open_subsets", opens);

    // sum and intersection; successive quotients of the Steinberg filtration
    for (RootMask P : A.between(0, full))
      for (auto& s : chars.of(P)) {
        RootMask D = delta_set(s, A);
        for (RootMask Q : A.between(P, D)) {
          auto st = steinberg(A, s, Q, D);
          const auto& big = *st.big;
          auto As = open_subsets(big);
          std::vector<Mat<F>> imgs;
          for (auto& X : st.incl) imgs.push_back(L.row_basis(X));
          int n = int(imgs.size());
          for (auto a : As) {
            Mat<F> FA = filtration_subspace(big, a);
            for (unsigned sel = 1; sel < (1u << n); ++sel) {
              Mat<F> S = L.zero(0, big.dim()), T = L.zero(0, big.dim());
              for (int i = 0; i < n; ++i)
                if (sel >> i & 1) {
                  S = L.sum(S, imgs[i]);
                  T = L.sum(T, L.intersect(FA, imgs[i]));
                }
              c.check(L.same_space(L.intersect(FA, S), T), "I_{Q,A} cap sum I_Q1 = sum (I_{Q,A} cap I_Q1)",
                      json{{"P", P}, {"Q", Q}, {"A", a}, {"subset", sel}, {"module", s.provenance()}});
            }
            for (size_t i = 0; i < big.reps().size(); ++i) {
              if (!(a >> i & 1)) continue;
              std::uint32_t a2 = a & ~(std::uint32_t(1) << i);
              if (std::find(As.begin(), As.end(), a2) == As.end()) continue;
              int w = big.reps()[i];
              bool special = false;
              for (RootMask Q1 : st.larger) {
                auto r = W.min_left_reps(Q1);
                if (std::find(r.begin(), r.end(), w) != r.end()) special = true;
              }
              Mat<F> FA2 = filtration_subspace(big, a2);
              int dI = L.rank(FA) - L.rank(FA2);
              int dSt = L.rank(L.sum(FA, st.image)) - L.rank(L.sum(FA2, st.image));
              c.check(special ? dSt == 0 : dSt == dI, "successive quotients of the filtration on St",
                      json{{"P", P}, {"Q", Q}, {"w", w}, {"special", special}, {"dI", dI}, {"dSt", dSt}});
            }
          }
        }
      }
  });
}

// ---------------------------------------------------------------------------

void suite_steinberg(const SuiteContext& c) {
  with_field(c, false, [&](auto field) {
    using F = decltype(field);
    Algebras<F> A(c.G, field);
    Chars<F> chars(A);
    const auto& W = c.G->W0();
    RootMask full = A.full();
    for (RootMask P : A.between(0, full))
      for (auto& s : chars.of(P)) {
        RootMask D = delta_set(s, A);
        c.check(isomorphic(steinberg(A, s, D, D).module, extend(s, D, A)), "St_{P(sigma)}(sigma) = e_{P(sigma)}(sigma)",
                mod_tag(s));
        for (RootMask Q : A.between(P, D)) {
          auto st = steinberg(A, s, Q, D);
          c.check(st.module.valid(), "St_Q(sigma) is valid" + pq_tag(P, Q), mod_tag(s));
          // inclusion-exclusion over Q <= Q1 <= P(sigma)
          long long ie = 0;
          for (RootMask Q1 : A.between(Q, D)) {
            long long cnt = 0;
            for (int w : W.min_left_reps(Q1))
              if (W.in_parabolic(w, D)) ++cnt;
            ie += (popcount(Q1 & ~Q) % 2 ? -1 : 1) * cnt * s.dim();
          }
          c.check(ie == st.module.dim(), "dim St_Q by inclusion-exclusion" + pq_tag(P, Q),
                  json{{"inclusion_exclusion", ie}, {"cokernel", st.module.dim()}, {"module", s.provenance()}});
        }
        if (D != full) continue;
        for (auto& ch : check_steinberg_characterization(A, s, c.seed))
          c.check(ch.ok, ch.name, json{{"module", s.provenance()}, {"P", P}, {"detail", ch.detail}});
        for (RootMask Q : A.between(P, full))
          for (auto& ch : tensor_decomposition(A, s, Q))
            c.check(ch.ok, ch.name + pq_tag(P, Q), json{{"module", s.provenance()}, {"detail", ch.detail}});
      }
  });
}

// ---------------------------------------------------------------------------

void suite_adjoint(const SuiteContext& c) {
  with_field(c, true, [&](auto field) {
    using F = decltype(field);
    Algebras<F> A(c.G, field);
    Chars<F> chars(A);
    RootMask full = A.full();
    auto L = LinAlg<F>(A.field());
    auto subsets = A.between(0, full);
    for (RootMask Q : subsets)
      for (auto& s : chars.of(Q)) {
        Induced<F> I(A, s, full);
        for (RootMask P : subsets) {
          auto lhs = right_adjoint(A, I.module(), P).module;
          Induced<F> rhs(A, right_adjoint(A, s, P & Q).module, P);
          c.check(isomorphic(lhs, rhs.module()), "R_P I_Q = I^P_{P cap Q} R^Q_{P cap Q}" + pq_tag(P, Q), mod_tag(s));
          auto lhs2 = left_adjoint(A, I.module(), P).module;
          Induced<F> rhs2(A, left_adjoint(A, s, P & Q).module, P);
          c.check(isomorphic(lhs2, rhs2.module()), "L_P I_Q = I^P_{P cap Q} L^Q_{P cap Q}" + pq_tag(P, Q), mod_tag(s));
        }
        c.check(isomorphic(left_adjoint(A, s, Q).module, s) && isomorphic(right_adjoint(A, s, Q).module, s),
                "L_Q and R_Q are the identity on H_Q-modules", mod_tag(s));
      }
    c.rec->note("L_composite_reading", "L_P o I_Q = I^P_{P cap Q} o L^Q_{P cap Q}");

    for (RootMask P : subsets)
      for (auto& s : chars.of(P)) {
        if (delta_set(s, A) != full) continue;
        auto eG = extend(s, full, A);
        for (RootMask R : subsets) {
          std::string tag = " P=" + mname(P) + " R=" + mname(R);
          c.check(isomorphic(left_adjoint(A, eG, R).module, extend(left_adjoint(A, s, P & R).module, R, A)),
                  "L_R e_G(sigma) = e_R(L^P_{P cap R} sigma)" + tag, mod_tag(s));
          auto Rm = right_adjoint(A, eG, R).module;
          if ((R | P) == full)
            c.check(isomorphic(Rm, extend(right_adjoint(A, s, P & R).module, R, A)),
                    "R_R e_G(sigma) = e_R(R^P_{P cap R} sigma)" + tag, mod_tag(s));
          else
            c.check(Rm.dim() == 0, "R_R e_G(sigma) = 0" + tag, mod_tag(s));
        }
        for (RootMask Q : A.between(P, full)) {
          auto st = steinberg(A, s, Q, full);
          for (RootMask R : subsets) {
            std::string tag = " P=" + mname(P) + " Q=" + mname(Q) + " R=" + mname(R);
            auto Lm = left_adjoint(A, st.module, R).module;
            if ((Q | R) == full)
              c.check(isomorphic(Lm, steinberg(A, left_adjoint(A, s, P & R).module, Q & R, R).module),
                      "L_R St_Q(sigma) = St^R_{Q cap R}(L^P_{P cap R} sigma)" + tag, mod_tag(s));
            else
              c.check(Lm.dim() == 0, "L_R St_Q(sigma) = 0" + tag, mod_tag(s));
            auto Rm = right_adjoint(A, st.module, R).module;
            if (Q == ((Q & R) | P))
              c.check(isomorphic(Rm, steinberg(A, right_adjoint(A, s, P & R).module, Q & R, R).module),
                      "R_R St_Q(sigma) = St^R_{Q cap R}(R^P_{P cap R} sigma)" + tag, mod_tag(s));
            else
              c.check(Rm.dim() == 0, "R_R St_Q(sigma) = 0" + tag, mod_tag(s));

            // R_R applied to  sum I_Q1 -> I_Q -> St_Q -> 0
            const auto& big = st.big->module();
            auto Ub = st.image.rows ? L.row_basis(st.image) : L.zero(0, big.dim());
            auto Pi = projection(L, Ub, st.complement);
            bool eqv = equivariance_residuals(big, st.module, Pi).empty();
            auto Rbig = right_adjoint(A, big, R);
            auto Rst = right_adjoint(A, st.module, R);
            auto RPi = adjoint_on_map(Rbig, Rst, Pi);
            Mat<F> img = L.zero(0, Rbig.module.dim());
            for (size_t i = 0; i < st.sub.size(); ++i) {
              auto Rsub = right_adjoint(A, st.sub[i]->module(), R);
              img = L.sum(img, adjoint_on_map(Rsub, Rbig, st.incl[i]));
            }
            int rk = L.rank(RPi);
            Mat<F> ker = RPi.rows ? L.left_null(RPi) : L.zero(0, 0);
            bool exact = rk == Rst.module.dim() && (RPi.rows == 0 || L.same_space(ker, img));
            c.check(eqv && exact, "R_R preserves exactness of the Steinberg sequence" + tag,
                    json{{"rank", rk}, {"dim_St", Rst.module.dim()}, {"image", img.rows}, {"module", s.provenance()}});
          }
        }
      }
  });
}

// ---------------------------------------------------------------------------

void suite_supersingular(const SuiteContext& c) {
  with_field(c, true, [&](auto field) {
    using F = decltype(field);
    using Elem = typename Hecke<F>::Elem;
    Algebras<F> A(c.G, field);
    Chars<F> chars(A);
    const auto& G = *c.G;
    const auto& W = G.W0();
    RootMask full = A.full();
    auto HG = A.hecke(full);
    const auto& H = *HG;

    std::vector<WElt> classes;
    for (RootMask P : A.between(0, full))
      if (P != full)
        for (int sign : {+1, -1}) classes.push_back(A.parabolic(P, full)->central_lambda(sign));
    for (auto& x : box(G.rank(), 1))
      if (H.sub().length(G.lam(x)) > 0) classes.push_back(G.lam(x));
    std::vector<WElt> gens = H.sub().omegas();
    for (auto& g : H.sub().gens()) gens.push_back(g.e);
    for (auto& t : G.all_torsion()) gens.push_back(G.tors(t));

    for (auto& l : classes) {
      Elem z = H.z_class(l, 0);
      for (int o = 1; o < W.size(); ++o)
        c.check(H.eq(H.z_class(l, o), z), "z_O independent of the orientation", json{{"lambda", G.str(l)}});
      for (auto& g : gens)
        c.check(H.eq(H.mul(z, H.T(g)), H.mul(H.T(g), z)), "z_O is central", json{{"lambda", G.str(l)}, {"g", G.str(g)}});
    }
    // z_O^n E_o(lambda) = E_o(lambda)^{n+1} when Stab(lambda) = Stab(nu(lambda))
    auto eligible = [&](const WElt& l) {
      for (int v = 0; v < W.size(); ++v) {
        bool a = G.act(v, l) == l;
        bool b = W.act_lattice(v, G.free_part(l)) == G.free_part(l);
        if (a != b) return false;
      }
      return true;
    };
    long long tested = 0;
    for (auto& l : classes) {
      if (!eligible(l)) continue;
      ++tested;
      for (int o = 0; o < W.size(); ++o) {
        Elem z = H.z_class(l, o), e = H.Eo(o, l), zn = H.one();
        for (int n = 0; n <= 3; ++n) {
          c.check(H.eq(H.mul(zn, e), H.pow(e, n + 1)), "z_O^n E_o(lambda) = E_o(lambda)^{n+1}",
                  json{{"lambda", G.str(l)}, {"o", o}, {"n", n}});
          zn = H.mul(zn, z);
        }
      }
    }
    c.rec->note("power_identity_classes", tested);

    long long ss = 0;
    json tested_classes = json::array();
    for (RootMask P : A.between(0, full))
      for (auto& s : chars.of(P)) {
        auto cl = default_classes(s, A);
        if (P == full && tested_classes.empty())
          for (auto& l : cl) tested_classes.push_back(G.str(l));
        if (!is_supersingular(s, cl)) continue;
        if (P != full) continue;
        ++ss;
        for (RootMask Q : A.between(0, full)) {
          if (Q == full) continue;
          c.check(left_adjoint(A, s, Q).module.dim() == 0 && right_adjoint(A, s, Q).module.dim() == 0,
                  "L_P(pi) = R_P(pi) = 0 for supersingular pi" + pq_tag(Q, full), mod_tag(s));
        }
      }
    c.rec->note("supersingular_characters", ss);
    c.rec->note("supersingular_relative_to_classes", tested_classes);
  });
}

// ---------------------------------------------------------------------------

void suite_simple_modules(const SuiteContext& c) {
  with_field(c, true, [&](auto field) {
    using F = decltype(field);
    Algebras<F> A(c.G, field);
    Chars<F> chars(A);
    RootMask full = A.full();
    const auto& W = c.G->W0();
    long long triples = 0;
    for (RootMask P : A.between(0, full))
      for (auto& s : chars.of(P)) {
        if (!is_supersingular(s, default_classes(s, A))) continue;
        RootMask D = delta_set(s, A);
        for (RootMask Q : A.between(P, D)) {
          ++triples;
          auto I = simple_module(A, s, Q, full);
          std::string tag = " P=" + mname(P) + " Q=" + mname(Q);
          auto st = steinberg(A, s, Q, D).module;
          c.check(I.valid() && I.dim() == int(W.min_left_reps(D).size()) * st.dim(), "dim I(P, sigma, Q)" + tag,
                  mod_tag(s));
          c.check(is_absolutely_irreducible(I), "I(P, sigma, Q) is absolutely irreducible" + tag, mod_tag(s));
          if (P == full) c.check(isomorphic(I, s), "I(G, sigma, G) = sigma", mod_tag(s));
          for (RootMask R : A.between(0, full)) {
            std::string rt = tag + " R=" + mname(R);
            auto Lm = left_adjoint(A, I, R).module;
            auto Rm = right_adjoint(A, I, R).module;
            bool lnz = (P & ~R) == 0 && (D & ~(Q | R)) == 0;
            bool rnz = (Q & ~R) == 0;
            if (lnz)
              c.check(isomorphic(Lm, simple_module(A, s, Q & R, R)), "L_R I(P, sigma, Q) = I_R(P, sigma, Q cap R)" + rt,
                      mod_tag(s));
            else
              c.check(Lm.dim() == 0, "L_R I(P, sigma, Q) = 0" + rt, mod_tag(s));
            if (rnz)
              c.check(isomorphic(Rm, simple_module(A, s, Q, R)), "R_R I(P, sigma, Q) = I_R(P, sigma, Q)" + rt, mod_tag(s));
            else
              c.check(Rm.dim() == 0, "R_R I(P, sigma, Q) = 0" + rt, mod_tag(s));
          }
        }
      }
    c.rec->note("triples", triples);
  });
}

// ---------------------------------------------------------------------------

void suite_adjunction(const SuiteContext& c) {
  with_field(c, false, [&](auto field) {
    using F = decltype(field);
    Algebras<F> A(c.G, field);
    Chars<F> chars(A);
    RootMask full = A.full();
    auto rng = make_rng(c, 29);
    auto subsets = A.between(0, full);
    std::map<RootMask, std::vector<FinModule<F>>> pool;
    auto add_pool = [&](RootMask Q) {
      auto& v = pool[Q];
      for (auto& s : chars.of(Q)) v.push_back(s);
      for (RootMask P : subsets)
        if ((P & ~Q) == 0 && P != Q) {
          const auto& cs = chars.of(P);
          for (int i = 0; i < 3 && !cs.empty(); ++i)
            v.push_back(Induced<F>(A, cs[rng() % cs.size()], Q).module());
        }
      if (v.size() >= 2) v.push_back(direct_sum(v[rng() % v.size()], v[rng() % v.size()]));
    };
    for (RootMask Q : subsets) add_pool(Q);
    for (int i = 0; i < 50; ++i) {
      RootMask P = subsets[rng() % subsets.size()];
      const auto& pi = pool[full][rng() % pool[full].size()];
      const auto& sigma = pool[P][rng() % pool[P].size()];
      auto Lp = left_adjoint(A, pi, P).module;
      auto Rp = right_adjoint(A, pi, P).module;
      Induced<F> I(A, sigma, full);
      int a = int(hom_space(Lp, sigma).size()), b = int(hom_space(pi, I.module()).size());
      int d = int(hom_space(I.module(), pi).size()), e = int(hom_space(sigma, Rp).size());
      json data{{"P", P}, {"pi", pi.provenance()}, {"sigma", sigma.provenance()}};
      c.check(a == b, "dim Hom(L_P pi, sigma) = dim Hom(pi, I_P sigma)", data);
      c.check(d == e, "dim Hom(I_P sigma, pi) = dim Hom(sigma, R_P pi)", data);
    }
  });
}

}  // namespace ph
