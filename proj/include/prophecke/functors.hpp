// SPDX-License-Identifier: Apache-2.0
// Parabolic induction (Hom model), its comparison maps, filtrations, Steinberg modules and the adjoints L_P, R_P.
#pragma once

#include <cstdint>
#include <memory>
#include <mutex>
#include <string>
#include <unordered_map>
#include <vector>

#include "prophecke/modrep.hpp"

namespace ph {

enum class Variant { I, Iprime };

// Outcome of one machine check.
struct Check {
  std::string name;
  bool ok = true;
  std::string detail;
};

// I^Q_P(sigma) = Hom_{(H_P^-, j^{-*})}(H_Q, sigma), or I'^Q_P with j^-.
// Carrier: (phi(T_{n_w}))_{w in W_0^P cap W_{0,Q}}, one block of dim sigma per w.
// A function phi is a row vector Phi and phi(Y) = Phi * eval(Y).
template <class F>
class Induced {
 public:
  using H = Hecke<F>;
  using M = Mat<F>;
  using Elem = typename H::Elem;

  Induced(const Algebras<F>& alg, FinModule<F> sigma, RootMask Q, Variant v = Variant::I);

  const Algebras<F>& algebras() const { return *alg_; }
  const FinModule<F>& sigma() const { return sigma_; }
  const Parabolic& par() const { return *pq_; }
  const H& HQ() const { return *HQ_; }
  std::shared_ptr<const H> HQ_ptr() const { return HQ_; }
  RootMask P() const { return sigma_.mask(); }
  RootMask Q() const { return HQ_->sub().mask(); }
  Variant variant() const { return var_; }
  const std::vector<int>& reps() const { return reps_; }
  int block() const { return sigma_.dim(); }
  int dim() const { return int(reps_.size()) * block(); }
  // Position of w in reps(), or -1.
  int rep_index(int w) const;
  // dim x block matrix selecting the block of w.
  M selector(int w) const;
  WElt n(int w) const { return HQ_->group().n(w); }

  M eval(const Elem& Y) const;
  M eval_T(const WElt& w) const;
  const FinModule<F>& module() const { return mod_; }

 private:
  M eval_basis(const WElt& u) const;
  M eval_finite(const WElt& w) const;
  M init_lam_inv() const;
  FinModule<F> make_module() const;

  const Algebras<F>* alg_;
  FinModule<F> sigma_;
  std::shared_ptr<const H> HQ_, HP_;
  std::shared_ptr<const Parabolic> pq_;
  Variant var_;
  std::vector<int> reps_;
  M lam_inv_;  // sigma(T^P_lambda)^{-1}, lambda = lambda_P^-
  struct Cache {
    std::mutex mu;
    std::unordered_map<WElt, M, WHash> basis, tval;
  };
  std::shared_ptr<Cache> cache_ = std::make_shared<Cache>();
  FinModule<F> mod_;
};

// An explicit intertwiner with its equivariance certificate.
template <class F>
struct IsoCert {
  std::string name;
  Mat<F> map;
  std::vector<std::string> residuals;
  bool invertible = false;
  bool ok() const { return invertible && residuals.empty(); }
};

template <class F>
IsoCert<F> certify(std::string name, const FinModule<F>& a, const FinModule<F>& b, const Mat<F>& X);

// Elements of W_P(1) that are P-positive (sign +1) or P-negative (sign -1) in Q, sampled deterministically.
std::vector<WElt> sample_signed(const Parabolic& pq, int sign, int count, std::uint64_t seed);
// Sampled elements of W_A(1) (any sign).
std::vector<WElt> sample_elements(const AffSub& A, int count, std::uint64_t seed);

// ---- inductions and their comparisons --------------------------------------

// I^{P0}_Q(I^Q_P(sigma)) -> I^{P0}_P(sigma), phi -> (X -> phi(X)(1)).
template <class F>
IsoCert<F> transitivity(const Algebras<F>& alg, const FinModule<F>& sigma, RootMask Q, RootMask P0,
                        Variant v = Variant::I);
// All comparison statements among the four inductions for sigma over H_P inside H_Q.
template <class F>
std::vector<Check> comparison_isos(const Algebras<F>& alg, const FinModule<F>& sigma, RootMask Q, std::uint64_t seed);

// ---- filtration by open subsets of W_0^P -----------------------------------

// Open subsets of reps(), as bit masks over rep positions.
template <class F>
std::vector<std::uint32_t> open_subsets(const Induced<F>& ind);
template <class F>
Mat<F> filtration_subspace(const Induced<F>& ind, std::uint32_t A);
// Stability and the subquotient action of E_{o_-}(lambda) for every open A.
template <class F>
std::vector<Check> check_filtration(const Induced<F>& ind, const std::vector<WElt>& lambdas);

// ---- extensions and Steinberg modules --------------------------------------

template <class F>
struct Steinberg {
  RootMask Q = 0, P0 = 0;
  std::shared_ptr<Induced<F>> big;               // I^{P0}_Q(e_Q sigma)
  std::vector<RootMask> larger;                  // Q1 with Q < Q1 <= P0
  std::vector<std::shared_ptr<Induced<F>>> sub;  // I^{P0}_{Q1}(e_{Q1} sigma)
  std::vector<Mat<F>> incl;                      // their inclusions into big
  Mat<F> image;                                  // row basis of the sum of the images
  FinModule<F> module;                           // the cokernel
  Mat<F> complement;                             // rows of big lifting the basis of the cokernel
};

// I^{P0}_{Q1}(e_{Q1} sigma) -> I^{P0}_Q(e_Q sigma), as a matrix on carriers.
template <class F>
Mat<F> inclusion_map(const Induced<F>& small, const Induced<F>& big);
template <class F>
Steinberg<F> steinberg(const Algebras<F>& alg, const FinModule<F>& sigma, RootMask Q, RootMask P0);
// (-1)^l on W_aff,P2(1) and sigma as an (H_P^+, j^+)-module, for P(sigma) = G and Q = P.
template <class F>
std::vector<Check> check_steinberg_characterization(const Algebras<F>& alg, const FinModule<F>& sigma,
                                                    std::uint64_t seed);
// Module over H with T*_w acting diagonally; a and b extended from orthogonal Levis covering Delta.
template <class F>
FinModule<F> tensor_module(const FinModule<F>& a, const FinModule<F>& b);
// I_Q(e_Q sigma) ~ I_Q(triv) (x) e_G(sigma) and I_Q(triv) ~ e_G(I^{P2}_{P2 cap Q}(triv)).
template <class F>
std::vector<Check> tensor_decomposition(const Algebras<F>& alg, const FinModule<F>& sigma, RootMask Q);

// ---- adjoints ---------------------------------------------------------------

template <class F>
struct Adjoint {
  FinModule<F> module;  // over H_P
  Mat<F> carrier;       // rows, in coordinates of pi
};

// L^Q_P(pi) for pi over H_Q: the localization at E_{o_-}(lambda_P^-), realized on the stable image.
template <class F>
Adjoint<F> left_adjoint(const Algebras<F>& alg, const FinModule<F>& pi, RootMask P);
// R^Q_P(pi): the sequence model on the stable image of T_{lambda_{P'}^+}, twisted back by n^{-1}.
template <class F>
Adjoint<F> right_adjoint(const Algebras<F>& alg, const FinModule<F>& pi, RootMask P);
// The functor applied to a homomorphism pi1 -> pi2 (matrix acting on rows).
template <class F>
Mat<F> adjoint_on_map(const Adjoint<F>& a, const Adjoint<F>& b, const Mat<F>& X);

// ---- simple modules ---------------------------------------------------------

// I_R(P, sigma, Q) = I^R_{P(sigma) cap R}(St^{P(sigma) cap R}_Q(sigma)); R = G gives I(P, sigma, Q).
template <class F>
FinModule<F> simple_module(const Algebras<F>& alg, const FinModule<F>& sigma, RootMask Q, RootMask R);

// Two modules are isomorphic (both zero counts as isomorphic).
template <class F>
bool isomorphic(const FinModule<F>& a, const FinModule<F>& b, std::uint64_t seed = 0);

}  // namespace ph
