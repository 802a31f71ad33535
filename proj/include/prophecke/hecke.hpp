// SPDX-License-Identifier: Apache-2.0
// The pro-p Iwahori Hecke algebra of a (Levi) subsystem, over an exact ring R.
#pragma once

#include <algorithm>
#include <map>
#include <memory>
#include <mutex>
#include <sstream>
#include <string>
#include <unordered_map>
#include <vector>

#include "prophecke/propweyl.hpp"
#include "prophecke/ring.hpp"

namespace ph {

enum class Basis { T, Tstar, Eo, Eminus, Eprime };

std::string basis_name(Basis b);

template <class R>
class Hecke {
 public:
  using E = typename R::E;
  using Elem = std::unordered_map<WElt, E, WHash>;

  Hecke(std::shared_ptr<const AffSub> A, R ring);

  const AffSub& sub() const { return *A_; }
  std::shared_ptr<const AffSub> sub_ptr() const { return A_; }
  const ProPWeyl& group() const { return A_->group(); }
  const R& ring() const { return ring_; }
  const E& q() const { return q_; }
  // Sign of the alcove-walk crossing rule fixed at construction.
  int calibration() const { return eps_; }

  Elem zero() const { return {}; }
  Elem T(const WElt& w) const { return Elem{{w, ring_.one()}}; }
  Elem one() const { return T(group().identity()); }
  void add_term(Elem& x, const WElt& w, const E& c) const;
  Elem add(const Elem& a, const Elem& b) const;
  Elem sub(const Elem& a, const Elem& b) const;
  Elem scale(const Elem& a, const E& c) const;
  bool eq(const Elem& a, const Elem& b) const;
  bool is_zero(const Elem& a) const { return a.empty(); }

  // x T_{g_j}
  Elem rmul_gen(const Elem& x, int j) const;
  // x T_u and T_u x for u of length zero
  Elem rmul_len0(const Elem& x, const WElt& u) const;
  Elem lmul_len0(const WElt& u, const Elem& x) const;
  Elem mul(const Elem& a, const Elem& b) const;
  Elem pow(const Elem& a, int n) const;
  // c_{g_j} as an element of C[Z_kappa]
  Elem c_elem(int j) const;

  Elem Tstar(const WElt& w) const;
  // Orientations o_- . v are indexed by v in the finite Weyl group of the subsystem.
  int o_minus() const { return 0; }
  int o_plus() const { return group().W0().longest(A_->mask()); }
  int o_act(int o, const WElt& w) const { return group().W0().mul(o, w.v); }
  Elem Eo(int o, const WElt& w) const;
  // E_-(n_v l) = E_{o_- . v^{-1}}(n_v l); E'(n_v l) = E_{o_+ . v^{-1}}(n_v l)
  Elem Eminus(const WElt& w) const { return Eo(group().W0().inv(w.v), w); }
  Elem Eprime(const WElt& w) const { return Eo(group().W0().mul(o_plus(), group().W0().inv(w.v)), w); }
  Elem basis_elem(Basis b, const WElt& w, int o = 0) const;
  Elem iota(const Elem& x) const;
  // sum of E_o over the conjugacy class of a lambda
  Elem z_class(const WElt& lam, int o) const;
  std::vector<WElt> conj_class(const WElt& lam) const;
  // (l(a) + l(b) - l(ab)) / 2
  int q_half_exponent(const WElt& a, const WElt& b) const;

  // Coordinates of x in a unitriangular basis.
  Elem coords(const Elem& x, Basis b, int o = 0) const;
  Elem from_coords(const Elem& c, Basis b, int o = 0) const;

  std::string str(const Elem& x) const;
  Elem parse(const std::string& s) const;
  std::vector<std::pair<WElt, E>> sorted(const Elem& x) const;

 private:
  bool chamber_contains(int o, const WElt& lam, int sign) const;
  bool calibrate(int eps) const;

  std::shared_ptr<const AffSub> A_;
  R ring_;
  E q_;
  int eps_ = 1;
  mutable std::mutex mu_;
  mutable std::unordered_map<WElt, Elem, WHash> tstar_memo_;
  mutable std::map<std::pair<int, WElt>, Elem> eo_memo_;
};

// Map an integral element into another ring.
template <class R>
typename Hecke<R>::Elem map_elem(const Hecke<R>& H, const typename Hecke<ZZ>::Elem& x) {
  typename Hecke<R>::Elem out;
  for (auto& [w, c] : x) H.add_term(out, w, H.ring().from_int(c));
  return out;
}

extern template class Hecke<ZZ>;
extern template class Hecke<QQ>;
extern template class Hecke<GF>;
extern template class Hecke<Zpm>;

}  // namespace ph
