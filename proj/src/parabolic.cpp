// SPDX-License-Identifier: Apache-2.0
#include "prophecke/parabolic.hpp"

#include <numeric>

namespace ph {

Parabolic::Parabolic(std::shared_ptr<const AffSub> P, std::shared_ptr<const AffSub> Q)
    : P_(std::move(P)), Q_(std::move(Q)) {
  require((P_->mask() & ~Q_->mask()) == 0, "parabolic: P must be contained in Q");
  require(&P_->group() == &Q_->group(), "parabolic: P and Q must share W(1)");
  const auto& rs = group().roots();
  for (int a : Q_->posroots())
    if (!rs.in_subsystem(a, P_->mask())) outer_.push_back(a);
  // lambda_0: zero on Delta_P, strictly negative on the outer roots, torsion free
  int r = group().rank();
  IVec best;
  for (int B = 1; B <= 6 && best.empty(); ++B) {
    std::vector<IVec> box{IVec()};
    for (int i = 0; i < r; ++i) {
      std::vector<IVec> nx;
      for (auto& b : box)
        for (int k = -B; k <= B; ++k) {
          IVec c = b;
          c.push_back(k);
          nx.push_back(c);
        }
      box = nx;
    }
    int bestcost = 0;
    for (auto& x : box) {
      bool ok = true;
      for (int i = 0; i < rs.num_simple() && ok; ++i)
        if (mask_has(P_->mask(), i) && rs.pair(rs.simple(i), x) != 0) ok = false;
      int cost = 0;
      for (int a : outer_) {
        int s = rs.pair(a, x);
        if (s >= 0) ok = false;
        cost -= s;
      }
      if (!ok) continue;
      for (int v : x) cost += std::abs(v);
      if (best.empty() || cost < bestcost) {
        best = x;
        bestcost = cost;
      }
    }
  }
  require(!best.empty(), "parabolic: no central lambda found in the search box");
  WElt l0 = group().lam(best);
  // raise to the orbit period of every n_w, w in W_{0,P}
  long long k = 1;
  for (int w : group().W0().parabolic_elements(P_->mask())) {
    WElt p = l0;
    int kw = 1;
    while (!(group().act(w, p) == p)) {
      p = group().mul(p, l0);
      ++kw;
      require(kw < 10000, "parabolic: orbit period not found");
    }
    k *= kw;
  }
  WElt l = group().identity();
  for (long long i = 0; i < k; ++i) l = group().mul(l, l0);
  lam_plus_ = l;
  lam_minus_ = group().inv(l);
  require(is_central(lam_plus_), "parabolic: lambda_P^+ is not central in W_P(1)");
}

bool Parabolic::is_signed(const WElt& w, int sign) const {
  require(P_->contains(w), "element " + group().str(w) + " is not in W_P(1)");
  const auto& rs = group().roots();
  IVec x = group().free_part(w);
  for (int a : outer_) {
    int s = rs.pair(a, x);
    if (sign > 0 ? s > 0 : s < 0) return false;
  }
  return true;
}

bool Parabolic::is_central(const WElt& l) const {
  const auto& G = group();
  auto commutes = [&](const WElt& g) { return G.mul(g, l) == G.mul(l, g); };
  for (auto& g : P_->gens())
    if (!commutes(g.e)) return false;
  for (int i = 0; i < G.rank(); ++i) {
    IVec e(G.rank(), 0);
    e[i] = 1;
    if (!commutes(G.lam(e))) return false;
  }
  for (int i = 0; i < G.trank(); ++i) {
    IVec t(G.trank(), 0);
    t[i] = 1;
    if (!commutes(G.tors(t))) return false;
  }
  for (int i = 0; i < G.roots().num_simple(); ++i)
    if (mask_has(P_->mask(), i) && !commutes(G.n(G.W0().simple(i)))) return false;
  return true;
}

int Parabolic::shift_to(const WElt& w, int sign) const {
  const WElt& l = central_lambda(sign);
  WElt cur = w;
  for (int k = 0; k < 1000; ++k) {
    if (is_signed(cur, sign)) return k;
    cur = group().mul(cur, l);
  }
  throw Error("shift_to: no power of lambda makes the element signed");
}

int Parabolic::q_factor(const WElt& w, int extra) const {
  int k = shift_to(w, -1) + extra;
  WElt l0 = group().identity();
  for (int i = 0; i < k; ++i) l0 = group().mul(l0, lam_minus_);
  int d = Q_->length(w) + Q_->length(l0) - Q_->length(group().mul(w, l0));
  require(d >= 0 && d % 2 == 0, "q(P,w): length defect is not even");
  return d / 2;
}

std::vector<int> Parabolic::min_reps() const {
  std::vector<int> out;
  const auto& W = group().W0();
  for (int w : W.min_left_reps(P_->mask()))
    if (W.in_parabolic(w, Q_->mask())) out.push_back(w);
  return out;
}

}  // namespace ph
