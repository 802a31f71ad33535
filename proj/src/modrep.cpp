// SPDX-License-Identifier: Apache-2.0
#include "prophecke/modrep.hpp"

#include <cmath>
#include <deque>
#include <random>
#include <set>

#include "json.hpp"

namespace ph {

namespace {

template <class F>
std::vector<typename F::E> field_elements(const F& f) {
  if constexpr (std::is_same_v<F, GF>) {
    std::vector<typename F::E> out;
    for (int i = 0; i < f.order(); ++i) out.push_back(typename F::E(i));
    return out;
  } else {
    (void)f;
    throw Error("field elements can only be enumerated over a finite field");
  }
}

IVec unit(int n, int i) {
  IVec e(n, 0);
  e[i] = 1;
  return e;
}

// Row-reduced span of flattened matrices, grown one vector at a time.
template <class F>
class SpanBuilder {
 public:
  using E = typename F::E;
  SpanBuilder(const F& f, int n) : f_(f), n_(n) {}
  // Adds v if independent; returns true when added.
  bool add(std::vector<E> v) {
    for (size_t k = 0; k < rows_.size(); ++k) {
      const E& c = v[piv_[k]];
      if (f_.is_zero(c)) continue;
      for (int j = 0; j < n_; ++j) v[j] = f_.sub(v[j], f_.mul(c, rows_[k][j]));
    }
    int p = -1;
    for (int j = 0; j < n_; ++j)
      if (!f_.is_zero(v[j])) {
        p = j;
        break;
      }
    if (p < 0) return false;
    E inv = *f_.inv(v[p]);
    for (auto& x : v) x = f_.mul(x, inv);
    for (size_t k = 0; k < rows_.size(); ++k) {
      const E c = rows_[k][p];
      if (f_.is_zero(c)) continue;
      for (int j = 0; j < n_; ++j) rows_[k][j] = f_.sub(rows_[k][j], f_.mul(c, v[j]));
    }
    rows_.push_back(std::move(v));
    piv_.push_back(p);
    return true;
  }
  size_t size() const { return rows_.size(); }

 private:
  const F& f_;
  int n_;
  std::vector<std::vector<E>> rows_;
  std::vector<int> piv_;
};

}  // namespace

// ---------------------------------------------------------------------------

template <class F>
FinModule<F>::FinModule(std::shared_ptr<const H> alg, int dim, std::vector<M> S, std::vector<M> Z, std::vector<M> Om,
                        std::string provenance)
    : alg_(std::move(alg)), dim_(dim), S_(std::move(S)), Z_(std::move(Z)), Om_(std::move(Om)),
      prov_(std::move(provenance)) {
  require(dim_ >= 0, "module dimension must be nonnegative");
  require(int(S_.size()) == sub().num_gens(), "module: one matrix per affine simple generator is required");
  require(int(Z_.size()) == group().trank(), "module: one matrix per Z_kappa generator is required");
  require(int(Om_.size()) == group().rank(), "module: one matrix per omega generator is required");
  for (auto* v : {&S_, &Z_, &Om_})
    for (auto& m : *v) require(m.rows == dim_ && m.cols == dim_, "module: generator matrix has the wrong shape");
  cache_->om_inv.resize(Om_.size());
}

template <class F>
std::vector<WElt> FinModule<F>::generator_elements(const AffSub& A) {
  std::vector<WElt> out;
  const auto& G = A.group();
  for (auto& g : A.gens()) out.push_back(g.e);
  for (int k = 0; k < G.trank(); ++k) out.push_back(G.tors(unit(G.trank(), k)));
  for (auto& o : A.omegas()) out.push_back(o);
  return out;
}

template <class F>
FinModule<F> FinModule<F>::from_generators(std::shared_ptr<const H> alg, int dim,
                                           const std::function<M(const WElt&)>& T_of, std::string provenance) {
  const AffSub& A = alg->sub();
  std::vector<M> S, Z, Om;
  for (auto& g : A.gens()) S.push_back(T_of(g.e));
  const auto& G = A.group();
  for (int k = 0; k < G.trank(); ++k) Z.push_back(T_of(G.tors(unit(G.trank(), k))));
  for (auto& o : A.omegas()) Om.push_back(T_of(o));
  return FinModule(std::move(alg), dim, std::move(S), std::move(Z), std::move(Om), std::move(provenance));
}

template <class F>
std::vector<Mat<F>> FinModule<F>::all_generators() const {
  std::vector<M> out = S_;
  out.insert(out.end(), Z_.begin(), Z_.end());
  out.insert(out.end(), Om_.begin(), Om_.end());
  return out;
}

template <class F>
Mat<F> FinModule<F>::torsion_mat(const IVec& t) const {
  auto L = la();
  M r = L.identity(dim_);
  for (size_t k = 0; k < t.size(); ++k)
    if (t[k]) r = L.mul(r, L.pow(Z_[k], t[k]));
  return r;
}

template <class F>
const Mat<F>& FinModule<F>::omega_inv(int i) const {
  std::lock_guard<std::mutex> lk(cache_->mu);
  auto& s = cache_->om_inv[i];
  if (!s) {
    auto inv = la().inverse(Om_[i]);
    require(inv.has_value(), "module: omega generator acts non-invertibly");
    s = *inv;
  }
  return *s;
}

template <class F>
Mat<F> FinModule<F>::act_len0(const WElt& u) const {
  auto [z, x] = sub().omega_coords(u);
  auto L = la();
  M r = torsion_mat(z);
  for (size_t i = 0; i < x.size(); ++i) {
    if (x[i] > 0) r = L.mul(r, L.pow(Om_[i], x[i]));
    if (x[i] < 0) r = L.mul(r, L.pow(omega_inv(int(i)), -x[i]));
  }
  return r;
}

template <class F>
Mat<F> FinModule<F>::act_T(const WElt& w) const {
  {
    std::lock_guard<std::mutex> lk(cache_->mu);
    auto it = cache_->memo.find(w);
    if (it != cache_->memo.end()) return it->second;
  }
  Decomp d = sub().decompose(w);
  auto L = la();
  M r = act_len0(d.u);
  for (int j : d.gens) r = L.mul(r, S_[j]);
  std::lock_guard<std::mutex> lk(cache_->mu);
  cache_->memo.emplace(w, r);
  return r;
}

template <class F>
Mat<F> FinModule<F>::act(const typename H::Elem& x) const {
  auto L = la();
  M r = L.zero(dim_, dim_);
  for (auto& [w, c] : x) {
    require(sub().contains(w), "act: element " + group().str(w) + " is not in the module's algebra");
    r = L.add(r, L.scale(act_T(w), c));
  }
  return r;
}

template <class F>
std::vector<std::string> FinModule<F>::validate() const {
  std::vector<std::string> bad;
  const auto& G = group();
  const auto& A = sub();
  auto L = la();
  const auto& f = field();
  M I = L.identity(dim_);
  // Z_kappa
  for (int k = 0; k < G.trank(); ++k) {
    if (!L.eq(L.pow(Z_[k], G.zkappa()[k]), I)) bad.push_back("torsion generator t" + std::to_string(k + 1) + " order");
    for (int l = k + 1; l < G.trank(); ++l)
      if (!L.eq(L.mul(Z_[k], Z_[l]), L.mul(Z_[l], Z_[k])))
        bad.push_back("torsion generators t" + std::to_string(k + 1) + ",t" + std::to_string(l + 1) + " commute");
  }
  if (!bad.empty()) return bad;
  // omega
  std::vector<M> oinv;
  for (size_t i = 0; i < Om_.size(); ++i) {
    auto inv = L.inverse(Om_[i]);
    if (!inv) {
      bad.push_back("omega" + std::to_string(i + 1) + " invertible");
      return bad;
    }
    oinv.push_back(*inv);
  }
  auto tmat = [&](const WElt& t) { return torsion_mat(G.tors_part(t)); };
  const auto& om = A.omegas();
  for (size_t i = 0; i < om.size(); ++i) {
    for (size_t j = i + 1; j < om.size(); ++j) {
      WElt c = G.mul(G.mul(om[i], om[j]), G.inv(G.mul(om[j], om[i])));
      if (!G.is_torsion(c)) {
        bad.push_back("omega commutator is not torsion");
        continue;
      }
      if (!L.eq(L.mul(Om_[i], Om_[j]), L.mul(tmat(c), L.mul(Om_[j], Om_[i]))))
        bad.push_back("omega" + std::to_string(i + 1) + ",omega" + std::to_string(j + 1) + " commutator");
    }
    for (int k = 0; k < G.trank(); ++k) {
      WElt t = G.tors(unit(G.trank(), k));
      WElt c = G.mul(G.mul(om[i], t), G.inv(om[i]));
      if (!L.eq(L.mul(Om_[i], Z_[k]), L.mul(tmat(c), Om_[i])))
        bad.push_back("omega" + std::to_string(i + 1) + " conjugation of t" + std::to_string(k + 1));
    }
  }
  // lattice relations: omega^{coroot} is torsion
  const auto& rs = G.roots();
  for (int a = 0; a < rs.num_simple(); ++a) {
    if (!mask_has(A.mask(), a)) continue;
    const IVec& co = rs.root(rs.simple(a)).coroot;
    WElt e = G.identity();
    M m = I;
    for (int i = 0; i < G.rank(); ++i)
      for (int k = 0; k < std::abs(co[i]); ++k) {
        e = G.mul(e, co[i] > 0 ? om[i] : G.inv(om[i]));
        m = L.mul(m, co[i] > 0 ? Om_[i] : oinv[i]);
      }
    if (!G.is_torsion(e)) {
      bad.push_back("omega lattice relation is not torsion");
      continue;
    }
    if (!L.eq(m, tmat(e))) bad.push_back("omega lattice relation for coroot " + std::to_string(a + 1));
  }
  for (size_t i = 0; i < om.size(); ++i)
    if (!L.eq(act_len0(om[i]), Om_[i])) bad.push_back("omega" + std::to_string(i + 1) + " normal form");
  if (!bad.empty()) return bad;
  // quadratic relations
  const auto& gens = A.gens();
  E q = f.from_int(G.q());
  for (size_t j = 0; j < gens.size(); ++j) {
    WElt sq = G.mul(gens[j].e, gens[j].e);
    M c = L.zero(dim_, dim_);
    for (auto& t : gens[j].c) c = L.add(c, L.scale(torsion_mat(t.t), f.from_int(t.mult)));
    M rhs = L.add(L.scale(tmat(sq), q), L.mul(c, S_[j]));
    if (!L.eq(L.mul(S_[j], S_[j]), rhs)) bad.push_back("quadratic relation for " + gens[j].name);
  }
  // braid relations
  for (size_t i = 0; i < gens.size(); ++i)
    for (size_t j = i + 1; j < gens.size(); ++j) {
      int m = A.coxeter_order(int(i), int(j));
      if (m == 0) continue;
      WElt le = G.identity(), re = G.identity();
      M lm = I, rm = I;
      for (int k = 0; k < m; ++k) {
        size_t a = k % 2 ? j : i, b = k % 2 ? i : j;
        le = G.mul(le, gens[a].e);
        re = G.mul(re, gens[b].e);
        lm = L.mul(lm, S_[a]);
        rm = L.mul(rm, S_[b]);
      }
      WElt z = G.mul(le, G.inv(re));
      if (!L.eq(lm, L.mul(tmat(z), rm))) bad.push_back("braid relation " + gens[i].name + "," + gens[j].name);
    }
  // length-zero elements permute the generators
  std::vector<WElt> len0;
  for (int k = 0; k < G.trank(); ++k) len0.push_back(G.tors(unit(G.trank(), k)));
  for (auto& o : om) len0.push_back(o);
  for (auto& u : len0) {
    M mu = act_len0(u);
    for (size_t j = 0; j < gens.size(); ++j) {
      WElt c = G.mul(G.mul(u, gens[j].e), G.inv(u));
      Decomp d = A.decompose(c);
      if (d.gens.size() != 1) {
        bad.push_back("length-zero conjugate of " + gens[j].name + " is not simple");
        continue;
      }
      if (!L.eq(L.mul(mu, S_[j]), L.mul(L.mul(act_len0(d.u), S_[d.gens[0]]), mu)))
        bad.push_back("length-zero conjugation of " + gens[j].name + " by " + G.str(u));
    }
  }
  return bad;
}

// ---------------------------------------------------------------------------

template <class F>
FinModule<F> character(std::shared_ptr<const Hecke<F>> alg, const std::vector<typename F::E>& values,
                       std::string provenance) {
  const AffSub& A = alg->sub();
  auto els = FinModule<F>::generator_elements(A);
  require(values.size() == els.size(), "character: one value per generator is required");
  const F& f = alg->ring();
  auto one = [&](const typename F::E& v) {
    Mat<F> m(1, 1, f.zero());
    m(0, 0) = v;
    return m;
  };
  std::vector<Mat<F>> S, Z, Om;
  size_t k = 0;
  for (int j = 0; j < A.num_gens(); ++j) S.push_back(one(values[k++]));
  for (int j = 0; j < A.group().trank(); ++j) Z.push_back(one(values[k++]));
  for (size_t j = 0; j < A.omegas().size(); ++j) Om.push_back(one(values[k++]));
  return FinModule<F>(alg, 1, std::move(S), std::move(Z), std::move(Om), std::move(provenance));
}

template <class F>
FinModule<F> trivial_module(std::shared_ptr<const Hecke<F>> alg) {
  const F& f = alg->ring();
  const AffSub& A = alg->sub();
  std::vector<typename F::E> v;
  for (auto& w : FinModule<F>::generator_elements(A)) v.push_back(ring_pow(f, f.from_int(A.group().q()), A.length(w)));
  return character(alg, v, "trivial");
}

template <class F>
std::vector<FinModule<F>> all_characters(std::shared_ptr<const Hecke<F>> alg) {
  const F& f = alg->ring();
  const AffSub& A = alg->sub();
  const auto& G = A.group();
  std::vector<typename F::E> els;
  if constexpr (std::is_same_v<F, GF>) {
    els = field_elements(f);
  } else {
    // over Q the roots of the quadratic relations lie in {0, +-1, +-q}
    const auto& q = alg->q();
    els = {f.zero(), f.one(), f.neg(f.one()), q, f.neg(q)};
  }
  std::vector<typename F::E> units;
  for (auto& e : els)
    if (!f.is_zero(e)) units.push_back(e);
  int ns = A.num_gens(), nz = G.trank(), no = G.rank();
  std::vector<std::vector<typename F::E>> choices;
  for (int j = 0; j < ns; ++j) choices.push_back(els);
  for (int k = 0; k < nz; ++k) {
    std::vector<typename F::E> c;
    for (auto& u : units)
      if (f.eq(ring_pow(f, u, G.zkappa()[k]), f.one())) c.push_back(u);
    choices.push_back(c);
  }
  for (int i = 0; i < no; ++i) choices.push_back(units);
  std::vector<FinModule<F>> out;
  std::vector<size_t> idx(choices.size(), 0);
  // enumerate the length-zero part first so that quadratic relations prune early
  std::vector<int> order;
  for (int k = ns; k < int(choices.size()); ++k) order.push_back(k);
  for (int j = 0; j < ns; ++j) order.push_back(j);
  std::vector<typename F::E> cur(choices.size(), f.zero());
  std::function<void(size_t)> rec = [&](size_t pos) {
    if (pos == order.size()) {
      auto m = character(alg, cur, "character");
      if (m.valid()) out.push_back(std::move(m));
      return;
    }
    int k = order[pos];
    for (auto& v : choices[k]) {
      cur[k] = v;
      rec(pos + 1);
    }
  };
  if (!choices.empty()) {
    for (auto& c : choices)
      if (c.empty()) return out;
  }
  rec(0);
  int n = 0;
  for (auto& m : out) m.set_provenance("character #" + std::to_string(n++));
  return out;
}

template <class F>
FinModule<F> direct_sum(const FinModule<F>& a, const FinModule<F>& b) {
  require(a.alg_ptr() == b.alg_ptr(), "direct sum: modules over different algebras");
  auto L = a.la();
  auto ga = a.all_generators(), gb = b.all_generators();
  size_t k = 0;
  return FinModule<F>::from_generators(
      a.alg_ptr(), a.dim() + b.dim(),
      [&](const WElt&) {
        auto m = L.dsum(ga[k], gb[k]);
        ++k;
        return m;
      },
      a.provenance() + " + " + b.provenance());
}

template <class F>
FinModule<F> submodule(const FinModule<F>& m, const Mat<F>& U) {
  auto L = m.la();
  auto g = m.all_generators();
  size_t k = 0;
  return FinModule<F>::from_generators(
      m.alg_ptr(), U.rows, [&](const WElt&) { return L.restrict(U, g[k++]); }, "sub(" + m.provenance() + ")");
}

template <class F>
FinModule<F> quotient(const FinModule<F>& m, const Mat<F>& U) {
  auto L = m.la();
  auto g = m.all_generators();
  Mat<F> Ub = U.rows ? L.row_basis(U) : L.zero(0, m.dim());
  Mat<F> C = L.complement(Ub, m.dim());
  size_t k = 0;
  return FinModule<F>::from_generators(
      m.alg_ptr(), C.rows, [&](const WElt&) { return L.quotient_action(Ub, C, g[k++]); },
      "quot(" + m.provenance() + ")");
}

template <class F>
FinModule<F> pullback(const FinModule<F>& m, std::shared_ptr<const Hecke<F>> alg,
                      const std::function<typename Hecke<F>::Elem(const WElt&)>& image, std::string provenance) {
  return FinModule<F>::from_generators(
      alg, m.dim(), [&](const WElt& w) { return m.act(image(w)); }, std::move(provenance));
}

template <class F>
FinModule<F> twist_conjugate(const FinModule<F>& sigma, std::shared_ptr<const Hecke<F>> target, const WElt& n) {
  const auto& G = sigma.group();
  WElt ni = G.inv(n);
  return FinModule<F>::from_generators(
      target, sigma.dim(),
      [&](const WElt& w) {
        WElt c = G.mul(G.mul(ni, w), n);
        require(sigma.sub().contains(c), "twist: conjugate is outside the source Levi");
        require(sigma.sub().length(c) == target->sub().length(w), "twist: conjugation does not preserve length");
        return sigma.act_T(c);
      },
      "n." + sigma.provenance());
}

template <class F>
FinModule<F> twist_length(const FinModule<F>& sigma, const AffSub& ambient) {
  const F& f = sigma.field();
  auto L = sigma.la();
  return FinModule<F>::from_generators(
      sigma.alg_ptr(), sigma.dim(),
      [&](const WElt& w) {
        int d = ambient.length(w) - sigma.sub().length(w);
        auto m = sigma.act_T(w);
        return d % 2 ? L.scale(m, f.neg(f.one())) : m;
      },
      sigma.provenance() + "_{l-lP}");
}

template <class F>
FinModule<F> twist_iota(const FinModule<F>& sigma) {
  const auto& H = sigma.algebra();
  return FinModule<F>::from_generators(
      sigma.alg_ptr(), sigma.dim(), [&](const WElt& w) { return sigma.act(H.iota(H.T(w))); },
      sigma.provenance() + "^iota");
}

// ---------------------------------------------------------------------------

std::vector<WElt> lambda_aff_generators(const AffSub& A) {
  const auto& G = A.group();
  require(A.num_gens() == 2, "lambda_aff_generators expects a rank-one subsystem");
  std::vector<WElt> out;
  WElt l = G.inv(G.mul(G.inv(A.gens()[0].e), A.gens()[1].e));
  require(G.is_lambda(l), "affine and finite reflection lifts do not differ by a translation");
  out.push_back(l);
  for (auto& t : A.waff_torsion())
    if (std::any_of(t.begin(), t.end(), [](int v) { return v != 0; })) out.push_back(G.tors(t));
  return out;
}

std::vector<WElt> default_classes(const AffSub& A, const std::function<std::shared_ptr<const Parabolic>(RootMask)>& par) {
  const auto& G = A.group();
  const auto& rs = G.roots();
  std::vector<WElt> out;
  auto push = [&](const WElt& l) {
    if (A.length(l) == 0) return;
    for (auto& o : out)
      if (G.W0().in_parabolic(0, A.mask()) && o == l) return;
    out.push_back(l);
  };
  for (int a = 0; a < rs.num_simple(); ++a)
    if (mask_has(A.mask(), a)) {
      AffSub Aa(A.group_ptr(), RootMask(1) << a);
      push(lambda_aff_generators(Aa)[0]);
    }
  for (int a = 0; a < rs.num_simple(); ++a)
    if (mask_has(A.mask(), a)) push(par(A.mask() & ~(RootMask(1) << a))->central_lambda(-1));
  return out;
}

template <class F>
RootMask delta_set(const FinModule<F>& sigma, const Algebras<F>& alg) {
  const auto& G = sigma.group();
  const auto& rs = G.roots();
  RootMask P = sigma.mask();
  RootMask out = P;
  auto L = sigma.la();
  auto I = L.identity(sigma.dim());
  for (int a = 0; a < rs.num_simple(); ++a) {
    if (mask_has(P, a)) continue;
    const IVec& co = rs.root(rs.simple(a)).coroot;
    bool orth = true;
    for (int b = 0; b < rs.num_simple(); ++b)
      if (mask_has(P, b) && rs.pair(rs.simple(b), co) != 0) orth = false;
    if (!orth) continue;
    bool triv = true;
    for (auto& l : lambda_aff_generators(*alg.sub(RootMask(1) << a)))
      if (!L.eq(sigma.act_T(l), I)) triv = false;
    if (triv) out |= RootMask(1) << a;
  }
  return out;
}

template <class F>
FinModule<F> extend(const FinModule<F>& sigma, RootMask Q, const Algebras<F>& alg) {
  RootMask P = sigma.mask();
  RootMask D = delta_set(sigma, alg);
  require((P & ~Q) == 0 && (Q & ~D) == 0, "extension: Q not between P and P(sigma)");
  const auto& G = sigma.group();
  auto HQ = alg.hecke(Q);
  const auto& HP = sigma.algebra();
  auto P2 = alg.sub(Q & ~P);
  const auto& AP = sigma.sub();
  auto L = sigma.la();
  const F& f = sigma.field();
  auto Id = L.identity(sigma.dim());
  // torsion part of c_g acting through sigma
  auto c_act = [&](const AffGen& g) {
    auto m = L.zero(sigma.dim(), sigma.dim());
    for (auto& t : g.c) m = L.add(m, L.scale(sigma.act_T(G.tors(t.t)), f.from_int(t.mult)));
    return m;
  };
  // elements of W_aff,P2(1) by breadth-first search over its generators
  std::vector<WElt> ball{G.identity()};
  {
    std::set<WElt> seen{G.identity()};
    std::vector<WElt> gens;
    for (auto& g : P2->gens()) gens.push_back(g.e);
    for (auto& t : P2->waff_torsion()) gens.push_back(G.tors(t));
    for (size_t i = 0; i < ball.size() && ball.size() < 4000; ++i)
      for (auto& g : gens) {
        WElt b = G.mul(ball[i], g);
        if (seen.insert(b).second) ball.push_back(b);
      }
  }
  auto m = FinModule<F>::from_generators(
      HQ, sigma.dim(),
      [&](const WElt& w) -> Mat<F> {
        const AffSub& AQ = HQ->sub();
        int lw = AQ.length(w);
        if (lw == 1) {
          int j = AQ.decompose(w).gens.at(0);
          const AffGen& g = AQ.gens()[j];
          if (AP.contains(w)) return L.add(sigma.act(HP.Tstar(w)), c_act(g));
          require(P2->in_waff(w), "extension: generator is neither in W_P(1) nor in W_aff,P2(1)");
          return L.add(Id, c_act(g));
        }
        require(lw == 0, "extension: unexpected generator length");
        if (AP.contains(w)) return sigma.act_T(w);
        for (auto& b : ball) {
          WElt a = G.mul(w, G.inv(b));
          if (AP.contains(a)) return sigma.act(HP.Tstar(a));
        }
        throw Error("extension: no factorization of a length-zero generator through W_P(1) W_aff,P2(1)");
      },
      "e_" + HQ->sub().name() + "(" + sigma.provenance() + ")");
  auto bad = m.validate();
  require(bad.empty(), "extension: constructed module violates " + (bad.empty() ? std::string() : bad[0]));
  return m;
}

template <class F>
bool is_supersingular(const FinModule<F>& pi, const std::vector<WElt>& classes) {
  auto L = pi.la();
  for (auto& l : classes) {
    require(pi.sub().length(l) > 0, "supersingularity: class of length zero listed");
    auto z = pi.algebra().z_class(l, pi.algebra().o_minus());
    if (!L.is_nilpotent(pi.act(z))) return false;
  }
  return true;
}

template <class F>
bool is_absolutely_irreducible(const FinModule<F>& pi) {
  int n = pi.dim();
  if (n <= 1) return n == 1;
  auto L = pi.la();
  const F& f = pi.field();
  auto gens = pi.all_generators();
  SpanBuilder<F> sb(f, n * n);
  std::deque<Mat<F>> todo{L.identity(n)};
  sb.add(todo.front().a);
  while (!todo.empty() && int(sb.size()) < n * n) {
    Mat<F> x = todo.front();
    todo.pop_front();
    for (auto& g : gens) {
      Mat<F> y = L.mul(x, g);
      if (sb.add(y.a)) todo.push_back(y);
    }
  }
  return int(sb.size()) == n * n;
}

template <class F>
std::vector<Mat<F>> intertwiner_space(const LinAlg<F>& L, int d1, int d2, const std::vector<Mat<F>>& A,
                                      const std::vector<Mat<F>>& B) {
  require(A.size() == B.size(), "intertwiners: operator lists differ in length");
  const F& f = L.field();
  int n = d1 * d2;
  Mat<F> N = L.identity(n);  // rows: basis of the solution space, flattened X (row-major)
  for (size_t g = 0; g < A.size() && N.rows > 0; ++g) {
    // K[(i,k), r] = (A X_r - X_r B)_{ik}
    Mat<F> K = L.zero(n, N.rows);
    for (int r = 0; r < N.rows; ++r) {
      Mat<F> X(d1, d2, f.zero());
      for (int t = 0; t < n; ++t) X.a[t] = N(r, t);
      Mat<F> R = L.sub(L.mul(A[g], X), L.mul(X, B[g]));
      for (int t = 0; t < n; ++t) K(t, r) = R.a[t];
    }
    Mat<F> C = L.right_null(K);
    N = L.mul(C, N);
  }
  std::vector<Mat<F>> out;
  for (int r = 0; r < N.rows; ++r) {
    Mat<F> X(d1, d2, f.zero());
    for (int t = 0; t < n; ++t) X.a[t] = N(r, t);
    out.push_back(X);
  }
  return out;
}

template <class F>
std::optional<Mat<F>> find_invertible(const LinAlg<F>& L, const std::vector<Mat<F>>& B, std::uint64_t seed) {
  const F& f = L.field();
  if (B.empty()) return std::nullopt;
  if (B[0].rows != B[0].cols) return std::nullopt;
  if (B[0].rows == 0) return B[0];
  auto combo = [&](const std::vector<typename F::E>& c) {
    Mat<F> X = L.zero(B[0].rows, B[0].cols);
    for (size_t i = 0; i < B.size(); ++i)
      if (!f.is_zero(c[i])) X = L.add(X, L.scale(B[i], c[i]));
    return X;
  };
  for (auto& X : B)
    if (L.inverse(X)) return X;
  if constexpr (std::is_same_v<F, GF>) {
    double total = std::pow(double(f.order()), double(B.size()));
    if (total <= 4096) {
      std::vector<typename F::E> c(B.size(), 0);
      while (true) {
        size_t k = 0;
        while (k < c.size() && c[k] + 1 == typename F::E(f.order())) c[k++] = 0;
        if (k == c.size()) break;
        ++c[k];
        auto X = combo(c);
        if (L.inverse(X)) return X;
      }
      return std::nullopt;
    }
  }
  std::mt19937_64 rng(seed);
  for (int tries = 0; tries < 256; ++tries) {
    std::vector<typename F::E> c;
    for (size_t i = 0; i < B.size(); ++i) c.push_back(f.from_int((long long)(rng() % 97) - 48));
    auto X = combo(c);
    if (L.inverse(X)) return X;
  }
  return std::nullopt;
}

template <class F>
std::vector<Mat<F>> hom_space(const FinModule<F>& a, const FinModule<F>& b) {
  require(a.alg_ptr() == b.alg_ptr(), "hom space: modules over different algebras");
  return intertwiner_space(a.la(), a.dim(), b.dim(), a.all_generators(), b.all_generators());
}

template <class F>
std::optional<Mat<F>> find_isomorphism(const FinModule<F>& a, const FinModule<F>& b, std::uint64_t seed) {
  if (a.dim() != b.dim()) return std::nullopt;
  if (a.dim() == 0) return a.la().zero(0, 0);
  return find_invertible(a.la(), hom_space(a, b), seed);
}

template <class F>
std::vector<std::string> equivariance_residuals(const FinModule<F>& a, const FinModule<F>& b, const Mat<F>& X) {
  std::vector<std::string> out;
  auto L = a.la();
  auto ga = a.all_generators(), gb = b.all_generators();
  auto els = FinModule<F>::generator_elements(a.sub());
  for (size_t g = 0; g < ga.size(); ++g)
    if (!L.eq(L.mul(ga[g], X), L.mul(X, gb[g]))) out.push_back("generator " + a.group().str(els[g]));
  return out;
}

template <class F>
Mat<F> generated_submodule(const FinModule<F>& m, const Mat<F>& V) {
  auto L = m.la();
  if (V.rows == 0) return L.zero(0, m.dim());
  Mat<F> U = L.row_basis(V);
  auto gens = m.all_generators();
  while (true) {
    Mat<F> W = U;
    for (auto& g : gens) W = L.vstack(W, L.mul(U, g));
    W = L.row_basis(W);
    if (W.rows == U.rows) return U;
    U = W;
  }
}

template <class F>
std::string module_to_json(const FinModule<F>& m) {
  nlohmann::json j;
  const F& f = m.field();
  auto mat = [&](const Mat<F>& a) {
    nlohmann::json r = nlohmann::json::array();
    for (int i = 0; i < a.rows; ++i) {
      nlohmann::json row = nlohmann::json::array();
      for (int k = 0; k < a.cols; ++k) row.push_back(f.str(a(i, k)));
      r.push_back(row);
    }
    return r;
  };
  j["group"] = m.group().config().name;
  j["levi"] = m.sub().name();
  j["mask"] = m.mask();
  j["field"] = f.name();
  j["dim"] = m.dim();
  j["provenance"] = m.provenance();
  nlohmann::json g = nlohmann::json::object();
  for (int k = 0; k < m.sub().num_gens(); ++k) g[m.sub().gens()[k].name] = mat(m.S()[k]);
  j["generators"] = g;
  j["torsion"] = nlohmann::json::array();
  for (auto& z : m.Z()) j["torsion"].push_back(mat(z));
  j["omega"] = nlohmann::json::array();
  for (auto& o : m.Om()) j["omega"].push_back(mat(o));
  return j.dump();
}

#define PH_INST(F)                                                                                               \
  template class FinModule<F>;                                                                                   \
  template FinModule<F> character(std::shared_ptr<const Hecke<F>>, const std::vector<F::E>&, std::string);       \
  template FinModule<F> trivial_module(std::shared_ptr<const Hecke<F>>);                                         \
  template std::vector<FinModule<F>> all_characters(std::shared_ptr<const Hecke<F>>);                            \
  template FinModule<F> direct_sum(const FinModule<F>&, const FinModule<F>&);                                    \
  template FinModule<F> submodule(const FinModule<F>&, const Mat<F>&);                                           \
  template FinModule<F> quotient(const FinModule<F>&, const Mat<F>&);                                            \
  template FinModule<F> pullback(const FinModule<F>&, std::shared_ptr<const Hecke<F>>,                           \
                                 const std::function<Hecke<F>::Elem(const WElt&)>&, std::string);                \
  template FinModule<F> twist_conjugate(const FinModule<F>&, std::shared_ptr<const Hecke<F>>, const WElt&);      \
  template FinModule<F> twist_length(const FinModule<F>&, const AffSub&);                                        \
  template FinModule<F> twist_iota(const FinModule<F>&);                                                         \
  template RootMask delta_set(const FinModule<F>&, const Algebras<F>&);                                          \
  template FinModule<F> extend(const FinModule<F>&, RootMask, const Algebras<F>&);                               \
  template bool is_supersingular(const FinModule<F>&, const std::vector<WElt>&);                                 \
  template bool is_absolutely_irreducible(const FinModule<F>&);                                                  \
  template std::vector<Mat<F>> intertwiner_space(const LinAlg<F>&, int, int, const std::vector<Mat<F>>&,            \
                                                 const std::vector<Mat<F>>&);                                   \
  template std::optional<Mat<F>> find_invertible(const LinAlg<F>&, const std::vector<Mat<F>>&, std::uint64_t);    \
  template std::vector<Mat<F>> hom_space(const FinModule<F>&, const FinModule<F>&);                              \
  template std::optional<Mat<F>> find_isomorphism(const FinModule<F>&, const FinModule<F>&, std::uint64_t);      \
  template std::vector<std::string> equivariance_residuals(const FinModule<F>&, const FinModule<F>&,             \
                                                           const Mat<F>&);                                       \
  template Mat<F> generated_submodule(const FinModule<F>&, const Mat<F>&);                                       \
  template std::string module_to_json(const FinModule<F>&);

PH_INST(GF)
PH_INST(QQ)

}  // namespace ph
