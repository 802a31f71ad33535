// SPDX-License-Identifier: Apache-2.0
// Levi subalgebras H_P inside H_Q, their signed parts, and the embeddings j.
#pragma once

#include <memory>
#include <string>
#include <vector>

#include "prophecke/hecke.hpp"

namespace ph {

// P inside Q (Q = G unless a relative setting is wanted). Ring free.
class Parabolic {
 public:
  Parabolic(std::shared_ptr<const AffSub> P, std::shared_ptr<const AffSub> Q);

  const AffSub& P() const { return *P_; }
  const AffSub& Q() const { return *Q_; }
  std::shared_ptr<const AffSub> P_ptr() const { return P_; }
  std::shared_ptr<const AffSub> Q_ptr() const { return Q_; }
  const ProPWeyl& group() const { return P_->group(); }
  // Positive roots of Q that are not roots of P.
  const std::vector<int>& outer_roots() const { return outer_; }

  // sign +1: <a, nu> <= 0 on outer roots; sign -1: >= 0. Requires w in W_P(1).
  bool is_signed(const WElt& w, int sign) const;
  bool is_positive(const WElt& w) const { return is_signed(w, +1); }
  bool is_negative(const WElt& w) const { return is_signed(w, -1); }
  // lambda_P^{+} (sign +1) or lambda_P^{-} (sign -1), central in W_P(1).
  const WElt& central_lambda(int sign) const { return sign > 0 ? lam_plus_ : lam_minus_; }
  bool is_central(const WElt& l) const;
  // Smallest k >= 0 with w * lambda^k of the given sign, lambda = central_lambda(sign).
  int shift_to(const WElt& w, int sign) const;
  // Exponent of q(P, w), computed with lambda_0 = (lambda_P^-)^k for the given extra k.
  int q_factor(const WElt& w, int extra = 0) const;
  // Elements of W_0^P (minimal length, w(Delta_P) > 0) inside W_{0,Q}.
  std::vector<int> min_reps() const;

 private:
  std::shared_ptr<const AffSub> P_, Q_;
  std::vector<int> outer_;
  WElt lam_plus_, lam_minus_;
};

// j_P^{Q sign} (star = false) or j_P^{Q sign *} (star = true) from H_P^{Q sign} to H_Q.
template <class R>
typename Hecke<R>::Elem j_map(const Parabolic& pq, const Hecke<R>& HP, const Hecke<R>& HQ, int sign, bool star,
                              const typename Hecke<R>::Elem& x) {
  typename Hecke<R>::Elem c = star ? HP.coords(x, Basis::Tstar) : x;
  for (auto& [w, a] : c)
    require(pq.is_signed(w, sign), std::string("j map: support element ") + pq.group().str(w) +
                                       " is not " + (sign > 0 ? "P-positive" : "P-negative"));
  if (!star) return c;
  return HQ.from_coords(c, Basis::Tstar);
}

// x = y * (T^P_lambda)^{-n} with y in H_P^{sign}; lambda = central_lambda(sign) has length zero in W_P(1).
template <class R>
std::pair<typename Hecke<R>::Elem, int> localize_normal_form(const Parabolic& pq, const Hecke<R>& HP, int sign,
                                                             const typename Hecke<R>::Elem& x) {
  const WElt& l = pq.central_lambda(sign);
  typename Hecke<R>::Elem y = x;
  for (int n = 0; n < 64; ++n) {
    bool ok = true;
    for (auto& [w, a] : y)
      if (!pq.is_signed(w, sign)) ok = false;
    if (ok) return {y, n};
    y = HP.rmul_len0(y, l);
  }
  throw Error("localization did not terminate");
}

}  // namespace ph
