// SPDX-License-Identifier: Apache-2.0
#include "prophecke/hecke.hpp"

#include <set>

namespace ph {

std::string basis_name(Basis b) {
  switch (b) {
    case Basis::T: return "T";
    case Basis::Tstar: return "Tstar";
    case Basis::Eo: return "Eo";
    case Basis::Eminus: return "Eminus";
    case Basis::Eprime: return "Eprime";
  }
  return "?";
}

template <class R>
Hecke<R>::Hecke(std::shared_ptr<const AffSub> A, R ring) : A_(std::move(A)), ring_(std::move(ring)) {
  q_ = ring_.from_int(A_->group().q());
  long long ch = ring_.characteristic();
  if constexpr (std::is_same_v<R, GF>) {
    require(A_->group().q() % ch == 0, "coefficient field characteristic " + std::to_string(ch) +
                                           " differs from the residue characteristic of q");
  }
  if (calibrate(1)) {
    eps_ = 1;
  } else if (calibrate(-1)) {
    eps_ = -1;
  } else {
    throw Error("orientation convention calibration failed");
  }
}

template <class R>
void Hecke<R>::add_term(Elem& x, const WElt& w, const E& c) const {
  if (ring_.is_zero(c)) return;
  auto it = x.find(w);
  if (it == x.end()) {
    x.emplace(w, c);
  } else {
    it->second = ring_.add(it->second, c);
    if (ring_.is_zero(it->second)) x.erase(it);
  }
}

template <class R>
typename Hecke<R>::Elem Hecke<R>::add(const Elem& a, const Elem& b) const {
  Elem r = a;
  for (auto& [w, c] : b) add_term(r, w, c);
  return r;
}

template <class R>
typename Hecke<R>::Elem Hecke<R>::sub(const Elem& a, const Elem& b) const {
  Elem r = a;
  for (auto& [w, c] : b) add_term(r, w, ring_.neg(c));
  return r;
}

template <class R>
typename Hecke<R>::Elem Hecke<R>::scale(const Elem& a, const E& s) const {
  Elem r;
  for (auto& [w, c] : a) add_term(r, w, ring_.mul(c, s));
  return r;
}

template <class R>
bool Hecke<R>::eq(const Elem& a, const Elem& b) const {
  return sub(a, b).empty();
}

template <class R>
typename Hecke<R>::Elem Hecke<R>::rmul_gen(const Elem& x, int j) const {
  Elem y;
  for (auto& [w, c] : x) {
    Step s = A_->step(w, j);
    if (s.up) {
      add_term(y, s.prod, c);
    } else {
      add_term(y, s.prod, ring_.mul(q_, c));
      for (auto& [e, m] : s.extra) add_term(y, e, ring_.mul(ring_.from_int(m), c));
    }
  }
  return y;
}

template <class R>
typename Hecke<R>::Elem Hecke<R>::rmul_len0(const Elem& x, const WElt& u) const {
  Elem y;
  for (auto& [w, c] : x) add_term(y, group().mul(w, u), c);
  return y;
}

template <class R>
typename Hecke<R>::Elem Hecke<R>::lmul_len0(const WElt& u, const Elem& x) const {
  Elem y;
  for (auto& [w, c] : x) add_term(y, group().mul(u, w), c);
  return y;
}

template <class R>
typename Hecke<R>::Elem Hecke<R>::mul(const Elem& a, const Elem& b) const {
  Elem res;
  if (a.empty() || b.empty()) return res;
  for (auto& [w2, c2] : b) {
    Decomp d = A_->decompose(w2);
    Elem x;
    for (auto& [w1, c1] : a) add_term(x, group().mul(w1, d.u), ring_.mul(c1, c2));
    for (int j : d.gens) x = rmul_gen(x, j);
    for (auto& [w, c] : x) add_term(res, w, c);
  }
  return res;
}

template <class R>
typename Hecke<R>::Elem Hecke<R>::pow(const Elem& a, int n) const {
  Elem r = one();
  for (int i = 0; i < n; ++i) r = mul(r, a);
  return r;
}

template <class R>
typename Hecke<R>::Elem Hecke<R>::c_elem(int j) const {
  Elem r;
  for (auto& t : A_->gens()[j].c) add_term(r, group().tors(t.t), ring_.from_int(t.mult));
  return r;
}

template <class R>
typename Hecke<R>::Elem Hecke<R>::Tstar(const WElt& w) const {
  {
    std::lock_guard<std::mutex> lk(mu_);
    auto it = tstar_memo_.find(w);
    if (it != tstar_memo_.end()) return it->second;
  }
  Decomp d = A_->decompose(w);
  Elem x = T(d.u);
  for (int j : d.gens) {
    Elem xc;
    for (auto& t : A_->gens()[j].c)
      for (auto& [v, c] : x) add_term(xc, group().mul(v, group().tors(t.t)), ring_.mul(ring_.from_int(t.mult), c));
    x = sub(rmul_gen(x, j), xc);
  }
  std::lock_guard<std::mutex> lk(mu_);
  tstar_memo_.emplace(w, x);
  return x;
}

template <class R>
typename Hecke<R>::Elem Hecke<R>::Eo(int o, const WElt& w) const {
  auto key = std::make_pair(o, w);
  {
    std::lock_guard<std::mutex> lk(mu_);
    auto it = eo_memo_.find(key);
    if (it != eo_memo_.end()) return it->second;
  }
  const auto& W = group().W0();
  const auto& rs = group().roots();
  Decomp d = A_->decompose(w);
  Elem x = T(d.u);
  int cur = W.mul(o, d.u.v);
  for (int j : d.gens) {
    const auto& g = A_->gens()[j];
    bool pos = rs.positive(W.act_root(cur, g.grad));
    if (eps_ < 0) pos = !pos;
    if (pos) {
      x = rmul_gen(x, j);
    } else {
      Elem xc;
      for (auto& t : g.c)
        for (auto& [v, c] : x) add_term(xc, group().mul(v, group().tors(t.t)), ring_.mul(ring_.from_int(t.mult), c));
      x = sub(rmul_gen(x, j), xc);
    }
    cur = W.mul(cur, g.e.v);
  }
  std::lock_guard<std::mutex> lk(mu_);
  eo_memo_.emplace(key, x);
  return x;
}

template <class R>
typename Hecke<R>::Elem Hecke<R>::basis_elem(Basis b, const WElt& w, int o) const {
  switch (b) {
    case Basis::T: return T(w);
    case Basis::Tstar: return Tstar(w);
    case Basis::Eo: return Eo(o, w);
    case Basis::Eminus: return Eminus(w);
    case Basis::Eprime: return Eprime(w);
  }
  return {};
}

template <class R>
typename Hecke<R>::Elem Hecke<R>::iota(const Elem& x) const {
  Elem r;
  for (auto& [w, c] : x) {
    E s = A_->length(w) % 2 ? ring_.neg(c) : c;
    for (auto& [v, a] : Tstar(w)) add_term(r, v, ring_.mul(a, s));
  }
  return r;
}

template <class R>
std::vector<WElt> Hecke<R>::conj_class(const WElt& lam) const {
  require(group().is_lambda(lam), "conjugacy classes are computed for elements of Lambda(1)");
  std::set<WElt> out;
  for (int v : group().W0().parabolic_elements(A_->mask())) out.insert(group().act(v, lam));
  return {out.begin(), out.end()};
}

template <class R>
typename Hecke<R>::Elem Hecke<R>::z_class(const WElt& lam, int o) const {
  Elem r;
  for (auto& l : conj_class(lam)) r = add(r, Eo(o, l));
  return r;
}

template <class R>
int Hecke<R>::q_half_exponent(const WElt& a, const WElt& b) const {
  int d = A_->length(a) + A_->length(b) - A_->length(group().mul(a, b));
  require(d >= 0 && d % 2 == 0, "length defect is not a nonnegative even number");
  return d / 2;
}

template <class R>
typename Hecke<R>::Elem Hecke<R>::coords(const Elem& x0, Basis b, int o) const {
  Elem x = x0, out;
  while (!x.empty()) {
    WElt best{};
    int bl = -1;
    for (auto& [w, c] : x) {
      int l = A_->length(w);
      if (l > bl || (l == bl && best < w)) {
        bl = l;
        best = w;
      }
    }
    E c = x.at(best);
    add_term(out, best, c);
    Elem be = basis_elem(b, best, o);
    require(be.count(best) && ring_.eq(be.at(best), ring_.one()), "basis element is not unitriangular");
    x = sub(x, scale(be, c));
  }
  return out;
}

template <class R>
typename Hecke<R>::Elem Hecke<R>::from_coords(const Elem& c, Basis b, int o) const {
  Elem r;
  for (auto& [w, a] : c) r = add(r, scale(basis_elem(b, w, o), a));
  return r;
}

template <class R>
std::vector<std::pair<WElt, typename R::E>> Hecke<R>::sorted(const Elem& x) const {
  std::vector<std::pair<WElt, E>> v(x.begin(), x.end());
  std::sort(v.begin(), v.end(), [](auto& a, auto& b) { return a.first < b.first; });
  return v;
}

template <class R>
std::string Hecke<R>::str(const Elem& x) const {
  if (x.empty()) return "0";
  std::ostringstream os;
  bool first = true;
  for (auto& [w, c] : sorted(x)) {
    if (!first) os << " + ";
    first = false;
    os << ring_.str(c) << " * " << group().str(w);
  }
  return os.str();
}

template <class R>
typename Hecke<R>::Elem Hecke<R>::parse(const std::string& s) const {
  Elem r;
  std::string t = s;
  if (t.find_first_not_of(" \t\n") == std::string::npos) return r;
  if (t == "0") return r;
  size_t pos = 0;
  while (pos < t.size()) {
    size_t nx = t.find(" + ", pos);
    std::string term = t.substr(pos, nx == std::string::npos ? std::string::npos : nx - pos);
    pos = nx == std::string::npos ? t.size() : nx + 3;
    size_t star = term.find('*');
    require(star != std::string::npos, "bad term (expected 'coeff * [..]'): " + term);
    std::string cs = term.substr(0, star), ws = term.substr(star + 1);
    cs.erase(std::remove_if(cs.begin(), cs.end(), ::isspace), cs.end());
    E c;
    if constexpr (std::is_same_v<R, GF>) {
      c = ring_.parse(cs);
    } else if constexpr (std::is_same_v<R, QQ>) {
      c = mpq_class(cs);
      c.canonicalize();
    } else {
      c = ring_.from_int(std::stoll(cs));
    }
    WElt w = group().parse(ws);
    require(A_->contains(w), "element outside the algebra: " + ws);
    add_term(r, w, c);
  }
  return r;
}

template <class R>
bool Hecke<R>::chamber_contains(int o, const WElt& lam, int sign) const {
  // o = o_- . v corresponds to the closed chamber v^{-1}(anti-dominant)
  const auto& rs = group().roots();
  IVec x = group().W0().act_lattice(o, group().free_part(lam));
  for (int a : A_->posroots())
    if (sign * rs.pair(a, x) > 0) return false;
  return true;
}

template <class R>
bool Hecke<R>::calibrate(int eps) const {
  int save = eps_;
  auto* self = const_cast<Hecke<R>*>(this);
  self->eps_ = eps;
  bool ok = true;
  const auto& W = group().W0();
  const auto& gens = A_->gens();
  std::vector<int> Wp = W.parabolic_elements(A_->mask());
  // values on n_s
  for (int v : Wp)
    for (size_t j = 0; j < gens.size() && ok; ++j) {
      if (gens[j].affine) continue;
      int s = gens[j].e.v;
      bool up = W.length(W.mul(v, s)) > W.length(v);
      Elem e = Eo(v, gens[j].e);
      Elem want = up ? T(gens[j].e) : Tstar(gens[j].e);
      if (!eq(e, want)) ok = false;
    }
  // values on lambda
  int r = group().rank();
  std::vector<IVec> box{IVec()};
  for (int i = 0; i < r; ++i) {
    std::vector<IVec> nx;
    for (auto& b : box)
      for (int k = -2; k <= 2; ++k) {
        IVec c = b;
        c.push_back(k);
        nx.push_back(c);
      }
    box = nx;
  }
  for (int v : Wp)
    for (auto& x : box) {
      if (!ok) break;
      WElt l = group().lam(x);
      Elem e = Eo(v, l);
      if (chamber_contains(v, l, 1) && !eq(e, T(l))) ok = false;
      if (chamber_contains(v, l, -1) && !eq(e, Tstar(l))) ok = false;
    }
  {
    std::lock_guard<std::mutex> lk(mu_);
    eo_memo_.clear();
  }
  self->eps_ = ok ? eps : save;
  return ok;
}

template class Hecke<ZZ>;
template class Hecke<QQ>;
template class Hecke<GF>;
template class Hecke<Zpm>;

}  // namespace ph
