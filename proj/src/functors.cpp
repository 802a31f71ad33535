// SPDX-License-Identifier: Apache-2.0
#include "prophecke/functors.hpp"

#include <algorithm>
#include <random>
#include <set>

namespace ph {

namespace {

template <class F>
typename F::E qpow(const Hecke<F>& H, int e) {
  return ring_pow(H.ring(), H.q(), e);
}

WElt power(const ProPWeyl& G, const WElt& w, int k) {
  WElt r = G.identity();
  for (int i = 0; i < k; ++i) r = G.mul(r, w);
  return r;
}

// Minimal representative of v W_{0,P} among reps.
int coset_rep(const WeylGroup& W, const std::vector<int>& reps, int v, RootMask P) {
  for (int r : reps)
    if (W.in_parabolic(W.mul(W.inv(r), v), P)) return r;
  throw Error("no coset representative for a finite Weyl group element");
}

template <class F>
std::string first(const std::vector<std::string>& v) {
  return v.empty() ? std::string() : v[0];
}

Check fail(std::string name, std::string detail) { return Check{std::move(name), false, std::move(detail)}; }

}  // namespace

// ---------------------------------------------------------------------------

template <class F>
Induced<F>::Induced(const Algebras<F>& alg, FinModule<F> sigma, RootMask Q, Variant v)
    : alg_(&alg),
      sigma_(std::move(sigma)),
      HQ_(alg.hecke(Q)),
      HP_(alg.hecke(sigma_.mask())),
      pq_(alg.parabolic(sigma_.mask(), Q)),
      var_(v),
      reps_(pq_->min_reps()),
      lam_inv_(init_lam_inv()),
      mod_(make_module()) {}

template <class F>
Mat<F> Induced<F>::init_lam_inv() const {
  require(sigma_.alg_ptr() == HP_, "induction: sigma is not a module over the cached Levi algebra");
  auto inv = sigma_.la().inverse(sigma_.act_T(pq_->central_lambda(-1)));
  require(inv.has_value(), "induction: sigma(T_lambda) is singular; the module is broken");
  return *inv;
}

template <class F>
int Induced<F>::rep_index(int w) const {
  auto it = std::find(reps_.begin(), reps_.end(), w);
  return it == reps_.end() ? -1 : int(it - reps_.begin());
}

template <class F>
Mat<F> Induced<F>::selector(int w) const {
  auto L = sigma_.la();
  int b = rep_index(w);
  require(b >= 0, "selector: not a coset representative");
  M s = L.zero(dim(), block());
  for (int i = 0; i < block(); ++i) s(b * block() + i, i) = sigma_.field().one();
  return s;
}

// phi(T_w) for w with zero free part: T_w = T_{n_y'} T_{w_P}.
template <class F>
Mat<F> Induced<F>::eval_finite(const WElt& w) const {
  const auto& G = HQ_->group();
  int y = coset_rep(G.W0(), reps_, w.v, P());
  WElt wp = G.mul(G.inv(n(y)), w);
  return sigma_.la().mul(selector(y), sigma_.act_T(wp));
}

template <class F>
Mat<F> Induced<F>::eval_basis(const WElt& u) const {
  {
    std::lock_guard<std::mutex> lk(cache_->mu);
    auto it = cache_->basis.find(u);
    if (it != cache_->basis.end()) return it->second;
  }
  const auto& G = HQ_->group();
  auto L = sigma_.la();
  int vp = coset_rep(G.W0(), reps_, u.v, P());
  WElt w0 = G.mul(G.inv(n(vp)), u);
  int k = pq_->shift_to(w0, -1);
  WElt lk = power(G, pq_->central_lambda(-1), k);
  WElt w2 = G.mul(w0, lk);
  int e1 = HQ_->q_half_exponent(u, lk);
  M left = L.zero(dim(), block());
  M right;
  if (var_ == Variant::I) {
    for (auto& [w, c] : HQ_->Tstar(n(vp))) left = L.add(left, L.scale(eval_finite(w), c));
    right = sigma_.act(HP_->Eminus(w2));
  } else {
    left = selector(vp);
    right = sigma_.act(HP_->Eprime(w2));
  }
  M r = L.mul(L.mul(left, right), L.pow(lam_inv_, k));
  if (e1) r = L.scale(r, qpow(*HQ_, e1));
  std::lock_guard<std::mutex> g(cache_->mu);
  cache_->basis.emplace(u, r);
  return r;
}

template <class F>
Mat<F> Induced<F>::eval(const Elem& Y) const {
  auto L = sigma_.la();
  M r = L.zero(dim(), block());
  auto c = HQ_->coords(Y, var_ == Variant::I ? Basis::Eminus : Basis::Eprime);
  for (auto& [u, a] : c) r = L.add(r, L.scale(eval_basis(u), a));
  return r;
}

template <class F>
Mat<F> Induced<F>::eval_T(const WElt& w) const {
  {
    std::lock_guard<std::mutex> lk(cache_->mu);
    auto it = cache_->tval.find(w);
    if (it != cache_->tval.end()) return it->second;
  }
  M r = eval(HQ_->T(w));
  std::lock_guard<std::mutex> lk(cache_->mu);
  cache_->tval.emplace(w, r);
  return r;
}

template <class F>
FinModule<F> Induced<F>::make_module() const {
  auto L = sigma_.la();
  int d = block();
  std::string name = std::string(var_ == Variant::I ? "I" : "I'") + "_" + alg_->mask_name(P()) + "^" +
                     alg_->mask_name(Q()) + "(" + sigma_.provenance() + ")";
  auto m = FinModule<F>::from_generators(
      HQ_, dim(),
      [&](const WElt& g) {
        M out = L.zero(dim(), dim());
        for (size_t b = 0; b < reps_.size(); ++b)
          L.put(out, 0, int(b) * d, eval(HQ_->mul(HQ_->T(g), HQ_->T(n(reps_[b])))));
        return out;
      },
      name);
  auto bad = m.validate();
  require(bad.empty(), "induction: realized module violates " + first<F>(bad));
  return m;
}

// ---------------------------------------------------------------------------

template <class F>
IsoCert<F> certify(std::string name, const FinModule<F>& a, const FinModule<F>& b, const Mat<F>& X) {
  IsoCert<F> c;
  c.name = std::move(name);
  c.map = X;
  if (X.rows != a.dim() || X.cols != b.dim()) {
    c.residuals.push_back("shape");
    return c;
  }
  c.residuals = equivariance_residuals(a, b, X);
  c.invertible = X.rows == X.cols && (X.rows == 0 || a.la().inverse(X).has_value());
  return c;
}

std::vector<WElt> sample_signed(const Parabolic& pq, int sign, int count, std::uint64_t seed) {
  const auto& G = pq.group();
  std::mt19937_64 rng(seed ^ 0x9e3779b97f4a7c15ull);
  auto fin = G.W0().parabolic_elements(pq.P().mask());
  auto tors = G.all_torsion();
  std::vector<WElt> out{G.identity(), pq.central_lambda(sign)};
  std::set<WElt> seen(out.begin(), out.end());
  for (int it = 0; it < 50 * count && int(out.size()) < count; ++it) {
    IVec x(G.rank());
    for (auto& c : x) c = int(rng() % 5) - 2;
    WElt w = G.mul(G.n(fin[rng() % fin.size()]), G.lam(x, tors[rng() % tors.size()]));
    w = G.mul(w, power(G, pq.central_lambda(sign), pq.shift_to(w, sign)));
    if (seen.insert(w).second) out.push_back(w);
  }
  return out;
}

std::vector<WElt> sample_elements(const AffSub& A, int count, std::uint64_t seed) {
  const auto& G = A.group();
  std::mt19937_64 rng(seed ^ 0x51ed2701a3c4b5f1ull);
  auto fin = G.W0().parabolic_elements(A.mask());
  auto tors = G.all_torsion();
  std::vector<WElt> out;
  std::set<WElt> seen;
  for (int it = 0; it < 50 * count && int(out.size()) < count; ++it) {
    IVec x(G.rank());
    for (auto& c : x) c = int(rng() % 5) - 2;
    WElt w = G.mul(G.n(fin[rng() % fin.size()]), G.lam(x, tors[rng() % tors.size()]));
    if (seen.insert(w).second) out.push_back(w);
  }
  return out;
}

// ---------------------------------------------------------------------------

template <class F>
IsoCert<F> transitivity(const Algebras<F>& alg, const FinModule<F>& sigma, RootMask Q, RootMask P0, Variant v) {
  Induced<F> inner(alg, sigma, Q, v);
  Induced<F> outer(alg, inner.module(), P0, v);
  Induced<F> direct(alg, sigma, P0, v);
  auto L = sigma.la();
  Mat<F> at1 = inner.eval(inner.HQ().one());
  Mat<F> X = L.zero(outer.dim(), direct.dim());
  for (size_t b = 0; b < direct.reps().size(); ++b)
    L.put(X, 0, int(b) * direct.block(), L.mul(outer.eval_T(direct.n(direct.reps()[b])), at1));
  return certify(std::string("transitivity ") + (v == Variant::I ? "I" : "I'"), outer.module(), direct.module(), X);
}

template <class F>
std::vector<Check> comparison_isos(const Algebras<F>& alg, const FinModule<F>& sigma, RootMask Q, std::uint64_t seed) {
  std::vector<Check> out;
  const auto& G = alg.group();
  const auto& W = G.W0();
  auto L = sigma.la();
  RootMask P = sigma.mask();
  int d = sigma.dim();
  Induced<F> I(alg, sigma, Q, Variant::I);
  Induced<F> Ip(alg, sigma, Q, Variant::Iprime);
  const auto& HQ = I.HQ();
  const auto& HP = sigma.algebra();
  int N = int(I.reps().size());
  auto cert_check = [&](const IsoCert<F>& c) {
    return Check{c.name, c.ok(),
                 c.ok() ? "" : (c.invertible ? "residual at " + first<F>(c.residuals) : std::string("not invertible"))};
  };

  // phi -> phi o iota
  {
    auto src = twist_iota(I.module());
    auto tau = twist_iota(twist_length(sigma, HQ.sub()));
    Induced<F> tgt(alg, tau, Q, Variant::Iprime);
    Mat<F> X = L.zero(I.dim(), tgt.dim());
    for (int b = 0; b < N; ++b) L.put(X, 0, b * d, I.eval(HQ.iota(HQ.T(I.n(I.reps()[b])))));
    out.push_back(cert_check(certify("iota: I_P(sigma)^iota -> I'_P(sigma_{l-lP}^iota)", src, tgt.module(), X)));
  }

  RootMask Pp = alg.opposite(P, Q);
  auto pqp = alg.parabolic(Pp, Q);
  auto HPp = alg.hecke(Pp);
  WElt nn = G.n(alg.wqwp(P, Q));
  auto nsig = twist_conjugate(sigma, HPp, nn);
  auto zs = sample_signed(*pqp, +1, 10, seed);
  // phi -> (X -> phi(X T_n)) and phi -> (X -> phi(X T*_n)); since eval(X Y) = act(X) eval(Y), the image
  // lies in the Hom space iff act(Z) eval(T_n) = eval(T_n) (n sigma)(Z) for Z in H_P'^+
  for (int star = 0; star < 2; ++star) {
    const Induced<F>& src = star ? I : Ip;
    auto Tn = star ? HQ.Tstar(nn) : HQ.T(nn);
    std::string name = star ? "two more inductions: I_P -> Hom_{(H_P'^+, j^+*)}(H, n sigma)"
                            : "two more inductions: I'_P -> Hom_{(H_P'^+, j^+)}(H, n sigma)";
    Check c{name, true, ""};
    Mat<F> base = src.eval(Tn);
    for (auto& z : zs) {
      auto Z = star ? HQ.Tstar(z) : HQ.T(z);
      auto sz = star ? nsig.act(HPp->Tstar(z)) : nsig.act_T(z);
      if (!L.eq(L.mul(src.module().act(Z), base), L.mul(base, sz))) {
        c.ok = false;
        c.detail = "constraint fails at z = " + G.str(z);
      }
    }
    // the kernel is the largest submodule on which eval(T_n) vanishes; it is zero iff the columns
    // act(Y) eval(T_n), Y in H, span everything
    Mat<F> cols = L.row_basis(L.transpose(base));
    auto gens = src.module().all_generators();
    while (cols.rows < src.dim()) {
      Mat<F> next = cols;
      for (auto& g : gens) next = L.vstack(next, L.mul(cols, L.transpose(g)));
      next = L.row_basis(next);
      if (next.rows == cols.rows) break;
      cols = next;
    }
    if (c.ok && cols.rows != src.dim()) {
      c.ok = false;
      c.detail = "map is not injective";
    }
    out.push_back(c);
  }

  // explicit forms phi_x of the tensor models
  Mat<F> Rt = L.zero(d, I.dim());
  L.put(Rt, 0, I.rep_index(0) * d, L.identity(d));
  Mat<F> V;
  {
    Check c{"tensor model: sigma (x)_{(H_P^-, j^-)} H -> I_P(sigma), x (x) X -> phi_x X", true, ""};
    Mat<F> K = L.zero(I.dim(), 0);
    for (int w : I.reps()) K = L.hstack(K, I.eval(HQ.Tstar(I.n(w))));
    auto Ki = L.inverse(K);
    if (!Ki) {
      out.push_back(fail(c.name, "phi -> (phi(T*_{n_w})) is not bijective"));
      return out;
    }
    V = L.mul(Rt, *Ki);
    for (auto& w : sample_signed(*alg.parabolic(P, Q), -1, 10, seed + 2))
      if (!L.eq(L.mul(V, I.module().act_T(w)), L.mul(sigma.act_T(w), V))) {
        c.ok = false;
        c.detail = "x -> phi_x is not an (H_P^-, j^-)-map at " + G.str(w);
      }
    if (c.ok && generated_submodule(I.module(), V).rows != I.dim()) {
      c.ok = false;
      c.detail = "the image of x -> phi_x does not generate";
    }
    out.push_back(c);
  }
  {
    Check c{"tensor model: sigma (x)_{(H_P^-, j^-*)} H -> I'_P(sigma), x (x) X -> phi_x X", true, ""};
    for (auto& w : sample_signed(*alg.parabolic(P, Q), -1, 10, seed + 3))
      if (!L.eq(L.mul(Rt, Ip.module().act(HQ.Tstar(w))), L.mul(sigma.act(HP.Tstar(w)), Rt))) {
        c.ok = false;
        c.detail = "x -> phi_x is not an (H_P^-, j^-*)-map at " + G.str(w);
      }
    if (c.ok && generated_submodule(Ip.module(), Rt).rows != Ip.dim()) {
      c.ok = false;
      c.detail = "the image of x -> phi_x does not generate";
    }
    out.push_back(c);
  }
  // phi^top_x: supported on w_Q w_P
  {
    Check c{"tensor description: n sigma (x)_{(H_P'^+, j^+)} H -> I_P(sigma)", true, ""};
    int top = alg.wqwp(P, Q);
    Mat<F> Wt = L.zero(d, I.dim());
    L.put(Wt, 0, I.rep_index(top) * d, L.identity(d));
    for (auto& z : zs)
      if (!L.eq(L.mul(Wt, I.module().act_T(z)), L.mul(nsig.act_T(z), Wt))) {
        c.ok = false;
        c.detail = "x -> phi^top_x is not an (H_P'^+, j^+)-map at " + G.str(z);
      }
    if (c.ok && !L.eq(L.mul(Wt, I.module().act_T(nn)), V)) {
      c.ok = false;
      c.detail = "phi^top_x T_n differs from phi_x";
    }
    Mat<F> sum = L.zero(I.dim(), I.dim());
    for (int w : I.reps()) {
      WElt m = G.n(W.mul(top, W.inv(w)));
      sum = L.add(sum, L.mul(L.mul(I.selector(w), Wt), I.module().act(HQ.Tstar(m))));
    }
    if (c.ok && !L.eq(sum, L.identity(I.dim()))) {
      c.ok = false;
      c.detail = "phi != sum_w phi^top_{phi(T_{n_w})} T*_{n_{wG wP w^-1}}";
    }
    out.push_back(c);
  }
  return out;
}

// ---------------------------------------------------------------------------

template <class F>
std::vector<std::uint32_t> open_subsets(const Induced<F>& ind) {
  const auto& W = ind.HQ().group().W0();
  const auto& R = ind.reps();
  int n = int(R.size());
  require(n <= 20, "open subsets: too many cosets");
  std::vector<std::uint32_t> up(n, 0);
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b)
      if (W.bruhat_leq(R[a], R[b])) up[a] |= 1u << b;
  std::vector<std::uint32_t> out;
  for (std::uint32_t A = 0; A < (1u << n); ++A) {
    bool ok = true;
    for (int a = 0; a < n && ok; ++a)
      if ((A >> a & 1) && (up[a] & ~A)) ok = false;
    if (ok) out.push_back(A);
  }
  return out;
}

template <class F>
Mat<F> filtration_subspace(const Induced<F>& ind, std::uint32_t A) {
  auto L = ind.sigma().la();
  int d = ind.block();
  Mat<F> U = L.zero(0, ind.dim());
  for (size_t b = 0; b < ind.reps().size(); ++b)
    if (A >> b & 1) {
      Mat<F> e = L.zero(d, ind.dim());
      L.put(e, 0, int(b) * d, L.identity(d));
      U = L.vstack(U, e);
    }
  return U;
}

template <class F>
std::vector<Check> check_filtration(const Induced<F>& ind, const std::vector<WElt>& lambdas) {
  const auto& G = ind.HQ().group();
  const auto& W = G.W0();
  auto L = ind.sigma().la();
  const auto& HQ = ind.HQ();
  const auto& HP = ind.sigma().algebra();
  int d = ind.block();
  const auto& R = ind.reps();
  Check stab{"open pieces are A_{o_-}-stable", true, ""};
  Check sq{"subquotient action of E_{o_-}(lambda)", true, ""};
  int pieces = 0;
  for (std::uint32_t A : open_subsets(ind)) {
    if (!A) continue;
    ++pieces;
    Mat<F> U = filtration_subspace(ind, A);
    for (auto& lam : lambdas) {
      Mat<F> E = ind.module().act(HQ.Eo(HQ.o_minus(), lam));
      if (!L.in_span(U, L.mul(U, E))) {
        stab.ok = false;
        stab.detail = "not stable under E(" + G.str(lam) + ")";
      }
      for (size_t b = 0; b < R.size(); ++b) {
        if (!(A >> b & 1)) continue;
        bool minimal = true;
        for (size_t c = 0; c < R.size(); ++c)
          if (c != b && (A >> c & 1) && W.bruhat_leq(R[c], R[b])) minimal = false;
        if (!minimal) continue;
        WElt nw = ind.n(R[b]);
        WElt mu = G.mul(G.mul(G.inv(nw), lam), nw);
        Mat<F> expect = ind.sigma().act(HP.Eo(HP.o_minus(), mu));
        int e = ind.par().q_factor(mu);
        if (e) expect = L.scale(expect, ring_pow(HQ.ring(), HQ.q(), e));
        if (!L.eq(L.block(E, int(b) * d, int(b) * d, d, d), expect)) {
          sq.ok = false;
          sq.detail = "mismatch at w = " + std::to_string(R[b]) + ", lambda = " + G.str(lam);
        }
      }
    }
  }
  stab.detail = stab.ok ? std::to_string(pieces) + " open subsets" : stab.detail;
  return {stab, sq};
}

// ---------------------------------------------------------------------------

template <class F>
Mat<F> inclusion_map(const Induced<F>& small, const Induced<F>& big) {
  require(small.Q() == big.Q(), "inclusion: different ambient algebras");
  auto L = small.sigma().la();
  Mat<F> X = L.zero(small.dim(), big.dim());
  for (size_t b = 0; b < big.reps().size(); ++b)
    L.put(X, 0, int(b) * big.block(), small.eval_T(big.n(big.reps()[b])));
  return X;
}

template <class F>
Steinberg<F> steinberg(const Algebras<F>& alg, const FinModule<F>& sigma, RootMask Q, RootMask P0) {
  RootMask P = sigma.mask();
  RootMask D = delta_set(sigma, alg);
  require((P & ~Q) == 0 && (Q & ~P0) == 0 && (P0 & ~D) == 0, "steinberg: need P <= Q <= P0 <= P(sigma)");
  auto L = sigma.la();
  auto ext = [&](RootMask m) { return m == P ? sigma : extend(sigma, m, alg); };
  auto big = std::make_shared<Induced<F>>(alg, ext(Q), P0);
  std::vector<RootMask> larger;
  std::vector<std::shared_ptr<Induced<F>>> subs;
  std::vector<Mat<F>> incl;
  Mat<F> img = L.zero(0, big->dim());
  for (RootMask Q1 : alg.between(Q, P0)) {
    if (Q1 == Q) continue;
    auto s = std::make_shared<Induced<F>>(alg, ext(Q1), P0);
    Mat<F> X = inclusion_map(*s, *big);
    larger.push_back(Q1);
    subs.push_back(s);
    incl.push_back(X);
    img = L.vstack(img, X);
  }
  Mat<F> Ub = img.rows ? L.row_basis(img) : img;
  Mat<F> C = L.complement(Ub, big->dim());
  auto st = quotient(big->module(), Ub);
  st.set_provenance("St_" + alg.mask_name(Q) + "^" + alg.mask_name(P0) + "(" + sigma.provenance() + ")");
  return Steinberg<F>{Q, P0, big, larger, subs, incl, Ub, st, C};
}

template <class F>
std::vector<Check> check_steinberg_characterization(const Algebras<F>& alg, const FinModule<F>& sigma,
                                                    std::uint64_t seed) {
  RootMask P = sigma.mask();
  RootMask full = alg.full();
  require(delta_set(sigma, alg) == full, "characterization: sigma must extend to H");
  auto st = steinberg(alg, sigma, P, full).module;
  auto L = sigma.la();
  const auto& f = sigma.field();
  Check sign{"St_P(sigma)(T_w) = (-1)^l(w) on W_aff,P2(1)", true, ""};
  auto A2 = alg.sub(full & ~P);
  for (auto& g : A2->gens())
    if (!L.eq(st.act_T(g.e), L.scalar(st.dim(), f.neg(f.one())))) {
      sign.ok = false;
      sign.detail = "generator " + g.name;
    }
  for (auto& t : A2->waff_torsion())
    if (!L.eq(st.act_T(alg.group().tors(t)), L.identity(st.dim()))) {
      sign.ok = false;
      sign.detail = "torsion " + alg.group().str(alg.group().tors(t));
    }
  Check iso{"St_P(sigma) ~ sigma as (H_P^+, j^+)-modules", true, ""};
  if (st.dim() != sigma.dim()) {
    iso.ok = false;
    iso.detail = "dimension " + std::to_string(st.dim()) + " vs " + std::to_string(sigma.dim());
  } else {
    std::vector<Mat<F>> a, b;
    for (auto& z : sample_signed(*alg.parabolic(P, full), +1, 16, seed)) {
      a.push_back(sigma.act_T(z));
      b.push_back(st.act_T(z));
    }
    for (auto& g : sigma.sub().gens())
      if (alg.parabolic(P, full)->is_positive(g.e)) {
        a.push_back(sigma.act_T(g.e));
        b.push_back(st.act_T(g.e));
      }
    if (!find_invertible(L, intertwiner_space(L, sigma.dim(), st.dim(), a, b), seed)) {
      iso.ok = false;
      iso.detail = "no invertible intertwiner on the sampled positive part";
    }
  }
  return {sign, iso};
}

template <class F>
FinModule<F> tensor_module(const FinModule<F>& a, const FinModule<F>& b) {
  require(a.alg_ptr() == b.alg_ptr(), "tensor module: modules over different algebras");
  auto L = a.la();
  const auto& H = a.algebra();
  auto gens = a.sub().gens();
  auto ctens = [&](int j) {
    Mat<F> m = L.zero(a.dim() * b.dim(), a.dim() * b.dim());
    for (auto& [t, c] : H.c_elem(j)) m = L.add(m, L.scale(L.kron(a.act_T(t), b.act_T(t)), c));
    return m;
  };
  return FinModule<F>::from_generators(
      a.alg_ptr(), a.dim() * b.dim(),
      [&](const WElt& w) {
        for (int j = 0; j < int(gens.size()); ++j)
          if (gens[j].e == w) {
            Mat<F> sa = L.sub(a.act_T(w), a.act(H.c_elem(j)));
            Mat<F> sb = L.sub(b.act_T(w), b.act(H.c_elem(j)));
            return L.add(L.kron(sa, sb), ctens(j));
          }
        return L.kron(a.act_T(w), b.act_T(w));
      },
      a.provenance() + " (x) " + b.provenance());
}

template <class F>
std::vector<Check> tensor_decomposition(const Algebras<F>& alg, const FinModule<F>& sigma, RootMask Q) {
  RootMask P = sigma.mask();
  RootMask full = alg.full();
  require((P & ~Q) == 0, "tensor decomposition: P must lie in Q");
  require(delta_set(sigma, alg) == full, "tensor decomposition: sigma must extend to H");
  auto L = sigma.la();
  std::vector<Check> out;
  auto eQ = Q == P ? sigma : extend(sigma, Q, alg);
  Induced<F> lhs(alg, eQ, full);
  Induced<F> itriv(alg, trivial_module(alg.hecke(Q)), full);
  auto eG = extend(sigma, full, alg);
  auto T = tensor_module(itriv.module(), eG);
  {
    auto bad = T.validate();
    if (!bad.empty()) {
      out.push_back(fail("tensor product module", "violates " + bad[0]));
      return out;
    }
    out.push_back(Check{"tensor product module", true, "dim " + std::to_string(T.dim())});
  }
  {
    auto c = certify("I_Q(e_Q sigma) ~ I_Q(triv) (x) e_G(sigma)", T, lhs.module(), L.identity(T.dim()));
    Check k{c.name, c.ok(), c.ok() ? "identity on block coordinates" : "residual at " + first<F>(c.residuals)};
    if (!c.ok() && find_isomorphism(T, lhs.module()))
      k.detail += "; an abstract isomorphism exists";
    out.push_back(k);
  }
  {
    RootMask P2 = full & ~P;
    Induced<F> inner(alg, trivial_module(alg.hecke(P2 & Q)), P2);
    auto e = extend(inner.module(), full, alg);
    auto c = certify("I_Q(triv) ~ e_G(I^{P2}_{P2 cap Q}(triv))", e, itriv.module(), L.identity(e.dim()));
    Check k{c.name, c.ok(), c.ok() ? "identity on block coordinates" : "residual at " + first<F>(c.residuals)};
    if (!c.ok() && find_isomorphism(e, itriv.module()))
      k.detail += "; an abstract isomorphism exists";
    out.push_back(k);
  }
  return out;
}

// ---------------------------------------------------------------------------

template <class F>
Adjoint<F> left_adjoint(const Algebras<F>& alg, const FinModule<F>& pi, RootMask P) {
  RootMask Q = pi.mask();
  auto pq = alg.parabolic(P, Q);
  auto HP = alg.hecke(P);
  const auto& HQ = pi.algebra();
  const auto& G = alg.group();
  auto L = pi.la();
  const WElt& lam = pq->central_lambda(-1);
  auto jstar = [&](const WElt& w) { return j_map(*pq, *HP, HQ, -1, true, HP->T(w)); };
  Mat<F> A = pi.act(jstar(lam));
  Mat<F> U = L.stable_image(A);
  Mat<F> Ai = U.rows ? *L.inverse(L.restrict(U, A)) : L.zero(0, 0);
  auto m = FinModule<F>::from_generators(
      HP, U.rows,
      [&](const WElt& g) {
        int k = pq->shift_to(g, -1);
        Mat<F> x = L.restrict(U, pi.act(jstar(G.mul(g, power(G, lam, k)))));
        return L.mul(x, L.pow(Ai, k));
      },
      "L_" + alg.mask_name(P) + "(" + pi.provenance() + ")");
  return Adjoint<F>{m, U};
}

template <class F>
Adjoint<F> right_adjoint(const Algebras<F>& alg, const FinModule<F>& pi, RootMask P) {
  RootMask Q = pi.mask();
  RootMask Pp = alg.opposite(P, Q);
  auto pqp = alg.parabolic(Pp, Q);
  auto HPp = alg.hecke(Pp);
  const auto& G = alg.group();
  auto L = pi.la();
  const WElt& lam = pqp->central_lambda(+1);
  Mat<F> B = pi.act_T(lam);
  Mat<F> V = L.stable_image(B);
  Mat<F> Bi = V.rows ? *L.inverse(L.restrict(V, B)) : L.zero(0, 0);
  auto tilde = FinModule<F>::from_generators(
      HPp, V.rows,
      [&](const WElt& g) {
        int k = pqp->shift_to(g, +1);
        WElt gk = G.mul(g, power(G, lam, k));
        Mat<F> x = L.restrict(V, pi.act(j_map(*pqp, *HPp, pi.algebra(), +1, false, HPp->T(gk))));
        return L.mul(x, L.pow(Bi, k));
      },
      "R~_" + alg.mask_name(Pp) + "(" + pi.provenance() + ")");
  WElt n = G.n(alg.wqwp(P, Q));
  auto m = twist_conjugate(tilde, alg.hecke(P), G.inv(n));
  m.set_provenance("R_" + alg.mask_name(P) + "(" + pi.provenance() + ")");
  return Adjoint<F>{m, V};
}

template <class F>
Mat<F> adjoint_on_map(const Adjoint<F>& a, const Adjoint<F>& b, const Mat<F>& X) {
  auto L = a.module.la();
  auto c = L.coords(b.carrier, L.mul(a.carrier, X));
  require(c.has_value(), "adjoint on maps: the map does not preserve the carriers");
  return *c;
}

template <class F>
FinModule<F> simple_module(const Algebras<F>& alg, const FinModule<F>& sigma, RootMask Q, RootMask R) {
  RootMask P0 = delta_set(sigma, alg) & R;
  auto st = steinberg(alg, sigma, Q, P0).module;
  Induced<F> ind(alg, st, R);
  auto m = ind.module();
  m.set_provenance("I_" + alg.mask_name(R) + "(" + alg.mask_name(sigma.mask()) + ", " + sigma.provenance() + ", " +
                   alg.mask_name(Q) + ")");
  return m;
}

template <class F>
bool isomorphic(const FinModule<F>& a, const FinModule<F>& b, std::uint64_t seed) {
  if (a.dim() != b.dim()) return false;
  if (a.dim() == 0) return true;
  if (a.alg_ptr() != b.alg_ptr()) return false;
  return find_isomorphism(a, b, seed).has_value();
}

#define PH_FUNCTORS(F)                                                                                          \
  template class Induced<F>;                                                                                    \
  template IsoCert<F> certify(std::string, const FinModule<F>&, const FinModule<F>&, const Mat<F>&);            \
  template IsoCert<F> transitivity(const Algebras<F>&, const FinModule<F>&, RootMask, RootMask, Variant);       \
  template std::vector<Check> comparison_isos(const Algebras<F>&, const FinModule<F>&, RootMask, std::uint64_t); \
  template std::vector<std::uint32_t> open_subsets(const Induced<F>&);                                          \
  template Mat<F> filtration_subspace(const Induced<F>&, std::uint32_t);                                        \
  template std::vector<Check> check_filtration(const Induced<F>&, const std::vector<WElt>&);                    \
  template Mat<F> inclusion_map(const Induced<F>&, const Induced<F>&);                                          \
  template Steinberg<F> steinberg(const Algebras<F>&, const FinModule<F>&, RootMask, RootMask);                 \
  template std::vector<Check> check_steinberg_characterization(const Algebras<F>&, const FinModule<F>&,         \
                                                               std::uint64_t);                                  \
  template FinModule<F> tensor_module(const FinModule<F>&, const FinModule<F>&);                                \
  template std::vector<Check> tensor_decomposition(const Algebras<F>&, const FinModule<F>&, RootMask);          \
  template Adjoint<F> left_adjoint(const Algebras<F>&, const FinModule<F>&, RootMask);                          \
  template Adjoint<F> right_adjoint(const Algebras<F>&, const FinModule<F>&, RootMask);                         \
  template Mat<F> adjoint_on_map(const Adjoint<F>&, const Adjoint<F>&, const Mat<F>&);                          \
  template FinModule<F> simple_module(const Algebras<F>&, const FinModule<F>&, RootMask, RootMask);             \
  template bool isomorphic(const FinModule<F>&, const FinModule<F>&, std::uint64_t);

PH_FUNCTORS(GF)
PH_FUNCTORS(QQ)

}  // namespace ph
