// SPDX-License-Identifier: Apache-2.0
// Finite-dimensional right modules over H and its Levi subalgebras.
#pragma once

#include <functional>
#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <unordered_map>
#include <string>
#include <vector>

#include "prophecke/hecke.hpp"
#include "prophecke/linalg.hpp"
#include "prophecke/parabolic.hpp"

namespace ph {

// Levi subalgebras of one group, shared by everything built over the field F.
template <class F>
class Algebras {
 public:
  Algebras(std::shared_ptr<const ProPWeyl> G, F field) : G_(std::move(G)), f_(std::move(field)) {}
  const ProPWeyl& group() const { return *G_; }
  std::shared_ptr<const ProPWeyl> group_ptr() const { return G_; }
  const F& field() const { return f_; }
  RootMask full() const { return G_->roots().full_mask(); }

  std::shared_ptr<const AffSub> sub(RootMask m) const {
    std::lock_guard<std::mutex> lk(mu_);
    auto& s = subs_[m];
    if (!s) s = std::make_shared<AffSub>(G_, m);
    return s;
  }
  std::shared_ptr<const Hecke<F>> hecke(RootMask m) const {
    auto s = sub(m);
    std::lock_guard<std::mutex> lk(mu_);
    auto& h = heckes_[m];
    if (!h) h = std::make_shared<Hecke<F>>(s, f_);
    return h;
  }
  std::shared_ptr<const Parabolic> parabolic(RootMask P, RootMask Q) const {
    auto sp = sub(P), sq = sub(Q);
    std::lock_guard<std::mutex> lk(mu_);
    auto& p = pars_[{P, Q}];
    if (!p) p = std::make_shared<Parabolic>(sp, sq);
    return p;
  }
  // -w_Q(Delta_P) for P inside Q.
  RootMask opposite(RootMask P, RootMask Q) const {
    const auto& rs = G_->roots();
    const auto& W = G_->W0();
    int wq = W.longest(Q);
    RootMask out = 0;
    for (int i = 0; i < rs.num_simple(); ++i)
      if (mask_has(P, i)) {
        int r = rs.neg(W.act_root(wq, rs.simple(i)));
        for (int k = 0; k < rs.num_simple(); ++k)
          if (rs.simple(k) == r) out |= RootMask(1) << k;
      }
    return out;
  }
  // W_0 element w_Q w_P.
  int wqwp(RootMask P, RootMask Q) const { return G_->W0().mul(G_->W0().longest(Q), G_->W0().longest(P)); }
  // All subsets of Delta between P and Q.
  std::vector<RootMask> between(RootMask P, RootMask Q) const {
    std::vector<RootMask> out;
    for (RootMask m = 0; m <= full(); ++m)
      if ((m & P) == P && (m & ~Q) == 0) out.push_back(m);
    return out;
  }
  std::string mask_name(RootMask m) const { return sub(m)->name(); }

 private:
  std::shared_ptr<const ProPWeyl> G_;
  F f_;
  mutable std::mutex mu_;
  mutable std::map<RootMask, std::shared_ptr<AffSub>> subs_;
  mutable std::map<RootMask, std::shared_ptr<Hecke<F>>> heckes_;
  mutable std::map<std::pair<RootMask, RootMask>, std::shared_ptr<Parabolic>> pars_;
};

// A right module: generator matrices for T_g (affine simple lifts), T_t (Z_kappa basis), T_omega.
template <class F>
class FinModule {
 public:
  using H = Hecke<F>;
  using M = Mat<F>;
  using E = typename F::E;

  FinModule(std::shared_ptr<const H> alg, int dim, std::vector<M> S, std::vector<M> Z, std::vector<M> Om,
            std::string provenance);
  // Generator matrices taken from the action of T_w on each generator element w.
  static FinModule from_generators(std::shared_ptr<const H> alg, int dim, const std::function<M(const WElt&)>& T_of,
                                   std::string provenance);
  // The generator elements, in the order S, Z, Omega.
  static std::vector<WElt> generator_elements(const AffSub& A);

  const H& algebra() const { return *alg_; }
  std::shared_ptr<const H> alg_ptr() const { return alg_; }
  const AffSub& sub() const { return alg_->sub(); }
  RootMask mask() const { return alg_->sub().mask(); }
  const ProPWeyl& group() const { return alg_->group(); }
  const F& field() const { return alg_->ring(); }
  LinAlg<F> la() const { return LinAlg<F>(alg_->ring()); }
  int dim() const { return dim_; }
  const std::vector<M>& S() const { return S_; }
  const std::vector<M>& Z() const { return Z_; }
  const std::vector<M>& Om() const { return Om_; }
  // All generator matrices in generator_elements order.
  std::vector<M> all_generators() const;
  const std::string& provenance() const { return prov_; }
  void set_provenance(std::string p) { prov_ = std::move(p); }

  M act_len0(const WElt& u) const;
  M act_T(const WElt& w) const;
  M act(const typename H::Elem& x) const;

  // Violated defining relations; empty when the module is valid.
  std::vector<std::string> validate() const;
  bool valid() const { return validate().empty(); }

 private:
  M torsion_mat(const IVec& t) const;
  const M& omega_inv(int i) const;
  struct Cache {
    std::mutex mu;
    std::vector<std::optional<M>> om_inv;
    std::unordered_map<WElt, M, WHash> memo;
  };
  std::shared_ptr<const H> alg_;
  int dim_;
  std::vector<M> S_, Z_, Om_;
  std::string prov_;
  std::shared_ptr<Cache> cache_ = std::make_shared<Cache>();
};

// ---- constructions ---------------------------------------------------------

// One-dimensional module from scalars on the generators (order of generator_elements).
template <class F>
FinModule<F> character(std::shared_ptr<const Hecke<F>> alg, const std::vector<typename F::E>& values,
                       std::string provenance);
// Trivial module T_w -> q^{l(w)}.
template <class F>
FinModule<F> trivial_module(std::shared_ptr<const Hecke<F>> alg);
// All valid characters, by brute force over generator values: every field element over F_{p^k},
// and {0, +-1, +-q} over Q.
template <class F>
std::vector<FinModule<F>> all_characters(std::shared_ptr<const Hecke<F>> alg);
template <class F>
FinModule<F> direct_sum(const FinModule<F>& a, const FinModule<F>& b);
// Submodule on the invariant rows U and quotient by them.
template <class F>
FinModule<F> submodule(const FinModule<F>& m, const Mat<F>& U);
template <class F>
FinModule<F> quotient(const FinModule<F>& m, const Mat<F>& U);
// Pull back along a map of generators: the result sends T_w (w a generator of alg) to m(image(w)).
template <class F>
FinModule<F> pullback(const FinModule<F>& m, std::shared_ptr<const Hecke<F>> alg,
                      const std::function<typename Hecke<F>::Elem(const WElt&)>& image, std::string provenance);
// n sigma for an H_P-module sigma: an H_{P'}-module with (n sigma)(T_w) = sigma(T_{n^{-1} w n}).
template <class F>
FinModule<F> twist_conjugate(const FinModule<F>& sigma, std::shared_ptr<const Hecke<F>> target, const WElt& n);
// sigma_{l - l_P}, with l the length of the ambient Q.
template <class F>
FinModule<F> twist_length(const FinModule<F>& sigma, const AffSub& ambient);
// sigma o iota_P.
template <class F>
FinModule<F> twist_iota(const FinModule<F>& sigma);

// ---- properties ------------------------------------------------------------

template <class F>
RootMask delta_set(const FinModule<F>& sigma, const Algebras<F>& alg);
// e_Q(sigma) for P inside Q inside P(sigma).
template <class F>
FinModule<F> extend(const FinModule<F>& sigma, RootMask Q, const Algebras<F>& alg);
// Generators of Lambda(1) cap W_aff,P_alpha(1) for a simple root alpha.
std::vector<WElt> lambda_aff_generators(const AffSub& A_alpha);
// Classes tested for supersingularity of modules over H_A.
std::vector<WElt> default_classes(const AffSub& A, const std::function<std::shared_ptr<const Parabolic>(RootMask)>& par);
template <class F>
std::vector<WElt> default_classes(const FinModule<F>& m, const Algebras<F>& alg) {
  return default_classes(m.sub(), [&](RootMask p) { return alg.parabolic(p, m.mask()); });
}
template <class F>
bool is_supersingular(const FinModule<F>& pi, const std::vector<WElt>& classes);
template <class F>
bool is_absolutely_irreducible(const FinModule<F>& pi);

// ---- homomorphisms ---------------------------------------------------------

// Basis of {X : A_i X = X B_i for all i} (d1 x d2 matrices).
template <class F>
std::vector<Mat<F>> intertwiner_space(const LinAlg<F>& L, int d1, int d2, const std::vector<Mat<F>>& A,
                                      const std::vector<Mat<F>>& B);
// An invertible linear combination of the given square matrices, if one is found.
template <class F>
std::optional<Mat<F>> find_invertible(const LinAlg<F>& L, const std::vector<Mat<F>>& B, std::uint64_t seed = 0);
// Basis of Hom(a, b): matrices X with A(g) X = X B(g) for all generators g.
template <class F>
std::vector<Mat<F>> hom_space(const FinModule<F>& a, const FinModule<F>& b);
// An invertible intertwiner a -> b, if one is found.
template <class F>
std::optional<Mat<F>> find_isomorphism(const FinModule<F>& a, const FinModule<F>& b, std::uint64_t seed = 0);
// Residuals of A(g) X - X B(g); all zero means X is a homomorphism.
template <class F>
std::vector<std::string> equivariance_residuals(const FinModule<F>& a, const FinModule<F>& b, const Mat<F>& X);
// Invariant subspace generated by the rows of V.
template <class F>
Mat<F> generated_submodule(const FinModule<F>& m, const Mat<F>& V);

// Text format (JSON).
template <class F>
std::string module_to_json(const FinModule<F>& m);

}  // namespace ph
