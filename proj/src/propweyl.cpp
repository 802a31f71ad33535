// SPDX-License-Identifier: Apache-2.0
#include "prophecke/propweyl.hpp"

#include <algorithm>
#include <cstdlib>
#include <deque>
#include <set>
#include <sstream>

#include "prophecke/ring.hpp"

namespace ph {

namespace {

IMat reduce_mod(IMat m, const IVec& orders) {
  for (size_t i = 0; i < m.size(); ++i)
    for (size_t j = 0; j < m[i].size(); ++j) m[i][j] = pmod(m[i][j], orders[i]);
  return m;
}

}  // namespace

ProPWeyl::ProPWeyl(const GroupConfig& cfg) : cfg_(cfg), rs_(cfg.root), w0_(rs_) {
  long long q = cfg.q;
  require(q >= 2, "group config: q must be a prime power >= 2");
  for (long long d = 2; d <= q; ++d)
    if (q % d == 0) {
      p_ = int(d);
      break;
    }
  long long t = q;
  while (t % p_ == 0) t /= p_;
  require(t == 1, "group config: q must be a prime power");
  int r = rs_.rank_lattice(), n = rs_.num_simple();
  if (cfg.zkappa.empty() && cfg.zk_action.empty()) {
    if (q > 2) zk_.assign(r, int(q - 1));
  } else {
    zk_ = cfg.zkappa;
  }
  require(int(zk_.size()) <= MAXR, "group config: torsion rank must be at most 4");
  for (int o : zk_) require(o >= 1 && o <= 255, "group config: cyclic orders must be in 1..255");
  int m = trank();
  // action of simple reflections on Z_kappa
  std::vector<IMat> simple_t(n);
  for (int i = 0; i < n; ++i) {
    if (!cfg.zk_action.empty()) {
      require(int(cfg.zk_action.size()) == n, "group config: zk_action needs one matrix per simple root");
      simple_t[i] = reduce_mod(cfg.zk_action[i], zk_);
    } else {
      require(m == 0 || m == r, "group config: zk_action is required when the torsion rank differs from r");
      simple_t[i] = m == 0 ? IMat{} : reduce_mod(rs_.simple_matrix(i), zk_);
    }
    require(int(simple_t[i].size()) == m, "group config: zk_action has wrong size");
  }
  tmat_.resize(w0_.size());
  for (int v = 0; v < w0_.size(); ++v) {
    IMat a = identity_mat(m);
    for (int i : w0_.word(v)) a = reduce_mod(mat_mul(a, simple_t[i]), zk_);
    tmat_[v] = a;
  }
  // the action must be well defined on W_0: check the braid words through a second route
  for (int v = 0; v < w0_.size(); ++v)
    for (int i = 0; i < n; ++i) {
      int vs = w0_.rmul_simple(v, i);
      IMat a = reduce_mod(mat_mul(tmat_[v], simple_t[i]), zk_);
      require(a == tmat_[vs], "group config: the Z_kappa action does not factor through W_0");
    }
  // n_s^2
  ts_.resize(n);
  for (int i = 0; i < n; ++i) {
    if (!cfg.ns_squares.empty()) {
      require(int(cfg.ns_squares.size()) == n, "group config: ns_squares needs one entry per simple root");
      ts_[i] = cfg.ns_squares[i];
      require(int(ts_[i].size()) == m, "group config: ns_squares entry has wrong size");
      for (int k = 0; k < m; ++k) ts_[i][k] = pmod(ts_[i][k], zk_[k]);
    } else {
      require(m == 0 || m == r, "group config: ns_squares required for a non-split torsion model");
      ts_[i].assign(m, 0);
      if (q % 2 == 1)
        for (int k = 0; k < m; ++k)
          ts_[i][k] = pmod((long long)rs_.root(rs_.simple(i)).coroot[k] * ((q - 1) / 2), zk_[k]);
    }
  }
  // torsion images of coroots
  std::vector<IVec> simple_g(n);
  for (int i = 0; i < n; ++i) {
    if (!cfg.lambda_aff_torsion.empty()) {
      require(int(cfg.lambda_aff_torsion.size()) == n, "group config: lambda_aff needs one entry per simple root");
      simple_g[i] = cfg.lambda_aff_torsion[i];
    } else {
      require(m == 0 || m == r, "group config: lambda_aff required for a non-split torsion model");
      simple_g[i] = m == 0 ? IVec{} : rs_.root(rs_.simple(i)).coroot;
    }
    require(int(simple_g[i].size()) == m, "group config: lambda_aff entry has wrong size");
    for (int k = 0; k < m; ++k) simple_g[i][k] = pmod(simple_g[i][k], zk_[k]);
  }
  rtors_.assign(rs_.num_roots(), IVec());
  std::vector<char> done(rs_.num_roots(), 0);
  for (int v = 0; v < w0_.size(); ++v)
    for (int i = 0; i < n; ++i) {
      int b = w0_.act_root(v, rs_.simple(i));
      if (rtors_[b].empty() && !done[b]) {
        done[b] = done[rs_.neg(b)] = 1;
        IVec g = act_tors(v, simple_g[i]);
        rtors_[b] = g;
        rtors_[rs_.neg(b)] = neg_tors(g);
      }
    }
  // cocycle of the lifts n_v
  int N = w0_.size();
  tau_.assign(size_t(N) * N, IVec(m, 0));
  for (int v1 = 0; v1 < N; ++v1)
    for (int v2 = 0; v2 < N; ++v2) {
      int cur = v1;
      IVec tt(m, 0);
      for (int i : w0_.word(v2)) {
        int nx = w0_.rmul_simple(cur, i);
        IVec moved = act_tors(w0_.simple(i), tt);
        if (w0_.length(nx) < w0_.length(cur)) moved = add_tors(moved, ts_[i]);
        tt = moved;
        cur = nx;
      }
      tau_[size_t(v1) * N + v2] = tt;
    }
  // n_s^2 must be fixed by s and the group law associative on the finite part
  for (int i = 0; i < n; ++i)
    require(act_tors(w0_.simple(i), ts_[i]) == ts_[i], "group config: n_s^2 must be fixed by s");
  for (int a = 0; a < N; ++a)
    for (int b = 0; b < N; ++b)
      for (int c = 0; c < N; ++c) {
        WElt x = mul(mul(this->n(a), this->n(b)), this->n(c));
        WElt y = mul(this->n(a), mul(this->n(b), this->n(c)));
        require(x == y, "group config: the lifts n_v do not satisfy the braid relations");
      }
  for (auto& [name, terms] : cfg.c_override) {
    long long s = 0;
    for (auto& tt : terms) {
      require(int(tt.t.size()) == m, "group config: c." + name + " has a torsion entry of wrong size");
      s += tt.mult;
    }
    require(s == q - 1, "group config: c." + name +
                            " violates the expansion of c (sum of c_s(t) must equal q - 1)");
  }
}

int ProPWeyl::zk_size() const {
  int s = 1;
  for (int o : zk_) s *= o;
  return s;
}

WElt ProPWeyl::n(int v) const {
  WElt w;
  w.v = std::uint16_t(v);
  return w;
}

WElt ProPWeyl::lam(const IVec& x, const IVec& t) const {
  WElt w;
  for (int i = 0; i < rank(); ++i) w.x[i] = i < int(x.size()) ? x[i] : 0;
  for (int i = 0; i < trank(); ++i) w.t[i] = std::uint8_t(i < int(t.size()) ? pmod(t[i], zk_[i]) : 0);
  return w;
}

bool ProPWeyl::is_torsion(const WElt& w) const {
  if (w.v) return false;
  for (int i = 0; i < rank(); ++i)
    if (w.x[i]) return false;
  return true;
}

IVec ProPWeyl::act_tors(int v, const IVec& t) const {
  int m = trank();
  if (m == 0) return {};
  IVec r(m, 0);
  for (int i = 0; i < m; ++i) {
    long long s = 0;
    for (int j = 0; j < m; ++j) s += (long long)tmat_[v][i][j] * t[j];
    r[i] = pmod(s, zk_[i]);
  }
  return r;
}

IVec ProPWeyl::add_tors(const IVec& a, const IVec& b) const {
  IVec r(trank());
  for (int i = 0; i < trank(); ++i) r[i] = pmod((long long)a[i] + b[i], zk_[i]);
  return r;
}

IVec ProPWeyl::neg_tors(const IVec& a) const {
  IVec r(trank());
  for (int i = 0; i < trank(); ++i) r[i] = pmod(-(long long)a[i], zk_[i]);
  return r;
}

WElt ProPWeyl::act(int v, const WElt& l) const {
  IVec x = w0_.act_lattice(v, free_part(l));
  IVec t = act_tors(v, tors_part(l));
  WElt r = lam(x, t);
  r.v = 0;
  return r;
}

WElt ProPWeyl::mul(const WElt& a, const WElt& b) const {
  // n_{v1} l1 n_{v2} l2 = n_{v1 v2} tau(v1,v2) (v2^{-1} l1) l2
  int v2i = w0_.inv(b.v);
  const auto& M = w0_.matrix(v2i);
  WElt r;
  r.v = std::uint16_t(w0_.mul(a.v, b.v));
  int rk = rank();
  for (int i = 0; i < rk; ++i) {
    long long s = b.x[i];
    for (int j = 0; j < rk; ++j) s += (long long)M[i][j] * a.x[j];
    r.x[i] = std::int32_t(s);
  }
  int m = trank();
  if (m) {
    const auto& T = tmat_[v2i];
    const auto& tau = cocycle(a.v, b.v);
    for (int i = 0; i < m; ++i) {
      long long s = (long long)b.t[i] + tau[i];
      for (int j = 0; j < m; ++j) s += (long long)T[i][j] * a.t[j];
      r.t[i] = std::uint8_t(pmod(s, zk_[i]));
    }
  }
  return r;
}

WElt ProPWeyl::inv(const WElt& a) const {
  // (n_v l)^{-1} = n_{v^{-1}} * (-(v l) - tau(v, v^{-1}))
  int vi = w0_.inv(a.v);
  WElt l = act(a.v, a);
  IVec x = free_part(l), t = tors_part(l);
  for (auto& c : x) c = -c;
  t = add_tors(neg_tors(t), neg_tors(cocycle(a.v, vi)));
  WElt r = lam(x, t);
  r.v = std::uint16_t(vi);
  return r;
}

std::vector<IVec> ProPWeyl::all_torsion() const {
  std::vector<IVec> out{IVec(trank(), 0)};
  for (int i = 0; i < trank(); ++i) {
    std::vector<IVec> nx;
    for (auto& t : out)
      for (int k = 0; k < zk_[i]; ++k) {
        IVec u = t;
        u[i] = k;
        nx.push_back(u);
      }
    out = nx;
  }
  return out;
}

std::vector<IVec> ProPWeyl::torsion_span(const std::vector<IVec>& gens) const {
  std::set<IVec> seen{IVec(trank(), 0)};
  std::deque<IVec> todo{IVec(trank(), 0)};
  while (!todo.empty()) {
    IVec a = todo.front();
    todo.pop_front();
    for (auto& g : gens) {
      IVec b = add_tors(a, g);
      if (seen.insert(b).second) todo.push_back(b);
    }
  }
  return {seen.begin(), seen.end()};
}

std::vector<TorsTerm> ProPWeyl::default_c(int root) const {
  std::map<IVec, int> acc;
  IVec g = rtors_[root], cur(trank(), 0);
  for (long long k = 0; k < q() - 1; ++k) {
    acc[cur] += 1;
    cur = add_tors(cur, g);
  }
  std::vector<TorsTerm> out;
  for (auto& [t, m] : acc) out.push_back({t, m});
  return out;
}

std::string ProPWeyl::str(const WElt& w) const {
  std::ostringstream os;
  os << "[";
  const auto& wd = w0_.word(w.v);
  if (wd.empty()) os << "e";
  for (int i : wd) os << (i + 1);
  os << ";";
  for (int i = 0; i < rank(); ++i) os << (i ? "," : "") << w.x[i];
  os << ";";
  for (int i = 0; i < trank(); ++i) os << (i ? "," : "") << int(w.t[i]);
  os << "]";
  return os.str();
}

WElt ProPWeyl::parse(const std::string& s0) const {
  std::string s = s0;
  s.erase(std::remove_if(s.begin(), s.end(), ::isspace), s.end());
  require(s.size() >= 2 && s.front() == '[' && s.back() == ']', "bad element syntax: " + s0);
  s = s.substr(1, s.size() - 2);
  std::vector<std::string> parts;
  std::string cur;
  for (char c : s) {
    if (c == ';') {
      parts.push_back(cur);
      cur.clear();
    } else {
      cur += c;
    }
  }
  parts.push_back(cur);
  require(parts.size() == 3, "bad element syntax: " + s0);
  std::vector<int> word;
  if (parts[0] != "e")
    for (char c : parts[0]) {
      require(c >= '1' && c <= '9', "bad element word: " + s0);
      word.push_back(c - '1');
    }
  auto nums = [&](const std::string& p) {
    IVec out;
    std::string c;
    std::stringstream ss(p);
    while (std::getline(ss, c, ','))
      if (!c.empty()) out.push_back(std::stoi(c));
    return out;
  };
  IVec x = nums(parts[1]), t = nums(parts[2]);
  require(int(x.size()) == rank() && int(t.size()) == trank(), "element has wrong rank: " + s0);
  int v = 0;
  for (int i : word) {
    require(i < rs_.num_simple(), "bad simple index in " + s0);
    v = w0_.rmul_simple(v, i);
  }
  WElt w = lam(x, t);
  w.v = std::uint16_t(v);
  return w;
}

// ---------------------------------------------------------------------------

AffSub::AffSub(std::shared_ptr<const ProPWeyl> G, RootMask mask) : G_(std::move(G)), mask_(mask) {
  const auto& rs = G_->roots();
  const auto& W = G_->W0();
  pos_ = rs.positive_roots_in(mask);
  auto comps = rs.components_of(mask);
  auto comp_of = [&](int i) {
    for (size_t k = 0; k < comps.size(); ++k)
      if (mask_has(comps[k], i)) return int(k);
    return -1;
  };
  const auto& ovr = G_->config().c_override;
  bool whole = mask == rs.full_mask();
  for (int i = 0; i < rs.num_simple(); ++i) {
    if (!mask_has(mask, i)) continue;
    AffGen g;
    g.e = G_->n(W.simple(i));
    g.grad = rs.simple(i);
    g.comp = comp_of(i);
    g.name = "s" + std::to_string(i + 1);
    auto it = ovr.find(g.name);
    g.c = it != ovr.end() ? it->second : G_->default_c(g.grad);
    gens_.push_back(g);
  }
  for (size_t k = 0; k < comps.size(); ++k) {
    int th = rs.highest_root(comps[k]);
    AffGen g;
    IVec cor = rs.root(th).coroot;
    for (auto& c : cor) c = -c;
    // reflection lift conjugated from a simple one, so c stays equivariant
    int wbest = -1, ibest = -1;
    for (int w : W.parabolic_elements(comps[k]))
      for (int i = 0; i < rs.num_simple(); ++i)
        if (mask_has(comps[k], i) && W.act_root(w, rs.simple(i)) == th &&
            (wbest < 0 || W.length(w) < W.length(wbest))) {
          wbest = w;
          ibest = i;
        }
    WElt nw = G_->n(wbest);
    WElt refl = G_->mul(G_->mul(nw, G_->n(W.simple(ibest))), G_->inv(nw));
    g.e = G_->mul(refl, G_->lam(cor));
    const auto& al = G_->config().affine_lifts;
    if (whole && k < al.size()) g.e = G_->mul(g.e, G_->tors(al[k]));
    g.grad = rs.neg(th);
    g.comp = int(k);
    g.affine = true;
    std::string tag;
    for (int i = 0; i < rs.num_simple(); ++i)
      if (mask_has(comps[k], i)) tag += std::to_string(i + 1);
    g.name = (whole && comps.size() == 1) ? "s0" : "s0_" + tag;
    auto it = ovr.find(g.name);
    g.c = it != ovr.end() ? it->second : G_->default_c(g.grad);
    gens_.push_back(g);
  }
  std::vector<IVec> tg;
  for (int a : pos_) tg.push_back(G_->root_torsion(a));
  waff_tors_ = G_->torsion_span(tg);
  int ng = num_gens();
  step_memo_.resize(ng);
  cox_.assign(ng, IVec(ng, 1));
  for (int i = 0; i < ng; ++i)
    for (int j = 0; j < ng; ++j) {
      if (i == j) continue;
      WElt pr = G_->mul(gens_[i].e, gens_[j].e), cur = pr;
      int ord = 0;
      for (int k = 1; k <= 12; ++k) {
        WElt img = cur;
        for (auto& t : img.t) t = 0;
        if (G_->is_torsion(img)) {
          ord = k;
          break;
        }
        cur = G_->mul(cur, pr);
      }
      cox_[i][j] = ord;
    }
  for (int i = 0; i < G_->rank(); ++i) {
    IVec e(G_->rank(), 0);
    e[i] = 1;
    omega_.push_back(decompose(G_->lam(e)).u);
  }
}

bool AffSub::contains(const WElt& w) const { return G_->W0().in_parabolic(w.v, mask_); }

int AffSub::length(const WElt& w) const {
  const auto& rs = G_->roots();
  const auto& W = G_->W0();
  int r = G_->rank(), l = 0;
  for (int a : pos_) {
    const auto& cv = rs.root(a).covec;
    int s = 0;
    for (int i = 0; i < r; ++i) s += cv[i] * w.x[i];
    l += rs.positive(W.act_root(w.v, a)) ? std::abs(s) : std::abs(s + 1);
  }
  return l;
}

Decomp AffSub::decompose(const WElt& w) const {
  {
    std::lock_guard<std::mutex> lk(mu_);
    auto it = dec_memo_.find(w);
    if (it != dec_memo_.end()) return it->second;
  }
  require(contains(w), "element " + G_->str(w) + " is not in W_P(1) for " + name());
  int l = length(w);
  Decomp d;
  if (l == 0) {
    d.u = w;
  } else {
    bool found = false;
    for (int j = 0; j < num_gens() && !found; ++j) {
      WElt c = G_->mul(w, G_->inv(gens_[j].e));
      if (length(c) < l) {
        d = decompose(c);
        d.gens.push_back(j);
        found = true;
      }
    }
    require(found, "no descent found for " + G_->str(w));
  }
  std::lock_guard<std::mutex> lk(mu_);
  dec_memo_.emplace(w, d);
  return d;
}

Step AffSub::step(const WElt& w, int j) const {
  {
    std::lock_guard<std::mutex> lk(mu_);
    auto it = step_memo_[j].find(w);
    if (it != step_memo_[j].end()) return it->second;
  }
  const auto& g = gens_[j];
  Step s;
  s.prod = G_->mul(w, g.e);
  if (length(s.prod) > length(w)) {
    s.up = true;
  } else {
    s.up = false;
    WElt wp = G_->mul(w, G_->inv(g.e));
    std::map<WElt, int> acc;
    for (auto& tt : g.c) acc[G_->mul(G_->mul(wp, G_->tors(tt.t)), g.e)] += tt.mult;
    for (auto& [k, m] : acc)
      if (m) s.extra.push_back({k, m});
  }
  std::lock_guard<std::mutex> lk(mu_);
  step_memo_[j].emplace(w, s);
  return s;
}

std::pair<IVec, IVec> AffSub::omega_coords(const WElt& u) const {
  IVec x = G_->free_part(u);
  WElt P = G_->identity();
  for (int i = 0; i < G_->rank(); ++i) {
    WElt o = x[i] >= 0 ? omega_[i] : G_->inv(omega_[i]);
    for (int k = 0; k < std::abs(x[i]); ++k) P = G_->mul(P, o);
  }
  WElt z = G_->mul(u, G_->inv(P));
  require(G_->is_torsion(z), "length-zero element does not factor through omega generators");
  return {G_->tors_part(z), x};
}

bool AffSub::in_waff(const WElt& w) const {
  if (!contains(w)) return false;
  WElt u = decompose(w).u;
  if (!G_->is_torsion(u)) return false;
  IVec t = G_->tors_part(u);
  return std::find(waff_tors_.begin(), waff_tors_.end(), t) != waff_tors_.end();
}

bool AffSub::bruhat_leq(const WElt& a0, const WElt& b0) const {
  if (!contains(a0) || !contains(b0)) return false;
  if (!in_waff(G_->mul(a0, G_->inv(b0)))) return false;
  WElt a = a0, b = b0;
  while (true) {
    int la = length(a), lb = length(b);
    if (la > lb) return false;
    if (lb == 0) return G_->is_torsion(G_->mul(a, G_->inv(b)));
    int j = decompose(b).gens.back();
    WElt gi = G_->inv(gens_[j].e);
    WElt as = G_->mul(a, gi);
    if (length(as) < la) a = as;
    b = G_->mul(b, gi);
  }
}

std::vector<TorsTerm> AffSub::c_of_reflection(const WElt& r) const {
  int l = length(r);
  require(l % 2 == 1, "c is only defined on lifts of reflections");
  if (l == 1) {
    for (const auto& g : gens_) {
      WElt t = G_->mul(r, G_->inv(g.e));
      if (G_->is_torsion(t)) {
        IVec tt = G_->tors_part(t);
        std::vector<TorsTerm> out;
        for (auto& c : g.c) out.push_back({G_->add_tors(tt, c.t), c.mult});
        return out;
      }
    }
    throw Error("length-one element is not a lift of a simple affine reflection");
  }
  for (const auto& g : gens_) {
    WElt r2 = G_->mul(G_->mul(g.e, r), G_->inv(g.e));
    if (length(r2) < l) {
      auto c2 = c_of_reflection(r2);
      for (auto& c : c2) c.t = G_->act_tors(g.e.v, c.t);
      return c2;
    }
  }
  throw Error("element is not a lift of a reflection");
}

int AffSub::coxeter_order(int i, int j) const { return cox_[i][j]; }

int AffSub::gen_index(const std::string& nm) const {
  for (int j = 0; j < num_gens(); ++j)
    if (gens_[j].name == nm) return j;
  return -1;
}

std::string AffSub::name() const {
  std::string s = "{";
  bool first = true;
  for (int i = 0; i < G_->roots().num_simple(); ++i)
    if (mask_has(mask_, i)) {
      s += (first ? "" : ",") + std::string("a") + std::to_string(i + 1);
      first = false;
    }
  return s + "}";
}

WElt AffSub::w0_lift_longest() const { return G_->n(G_->W0().longest(mask_)); }

}  // namespace ph
