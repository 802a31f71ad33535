// SPDX-License-Identifier: Apache-2.0
#include "prophecke/rootdata.hpp"

#include <algorithm>
#include <deque>

namespace ph {

namespace {

IMat cartan_from_pairing(const IMat& roots, const IMat& coroots) {
  int n = int(roots.size());
  IMat a(n, IVec(n));
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) a[i][j] = dot(roots[i], coroots[j]);
  return a;
}

}  // namespace

RootConfig root_config_for_type(const std::string& type) {
  RootConfig c;
  c.type = type;
  if (type == "A1") {
    c.simple_roots = {{2}};
    c.simple_coroots = {{1}};
  } else if (type == "A1xA1") {
    c.simple_roots = {{2, 0}, {0, 2}};
    c.simple_coroots = {{1, 0}, {0, 1}};
  } else if (type == "A2") {
    c.simple_roots = {{2, -1}, {-1, 2}};
    c.simple_coroots = {{1, 0}, {0, 1}};
  } else if (type.rfind("BC", 0) == 0) {
    throw ScopeError("non-reduced root systems (type BC) are not supported");
  } else {
    throw ScopeError("unknown root system type: " + type);
  }
  c.cartan = cartan_from_pairing(c.simple_roots, c.simple_coroots);
  return c;
}

RootSystem::RootSystem(const RootConfig& cfg) : cfg_(cfg) {
  if (cfg.type.rfind("BC", 0) == 0)
    throw ScopeError("non-reduced root systems (type BC) are not supported");
  n_ = int(cfg.simple_roots.size());
  require(n_ >= 0 && n_ == int(cfg.simple_coroots.size()),
          "root config: simple roots and coroots differ in number");
  require(n_ <= 8, "root config: too many simple roots");
  r_ = n_ ? int(cfg.simple_roots[0].size()) : (cfg.simple_coroots.empty() ? 0 : 0);
  if (n_ == 0) require(false, "root config: at least one simple root is required");
  require(r_ >= 1 && r_ <= MAXR, "root config: lattice rank must be between 1 and 4");
  for (int i = 0; i < n_; ++i)
    require(int(cfg.simple_roots[i].size()) == r_ && int(cfg.simple_coroots[i].size()) == r_,
            "root config: inconsistent lattice rank");
  cartan_ = cartan_from_pairing(cfg.simple_roots, cfg.simple_coroots);
  if (!cfg.cartan.empty())
    require(cfg.cartan == cartan_, "root config: cartan matrix does not match the pairing");
  for (int i = 0; i < n_; ++i)
    for (int j = 0; j < n_; ++j) {
      if (i == j) require(cartan_[i][i] == 2, "root config: cartan diagonal must be 2");
      else {
        require(cartan_[i][j] <= 0, "root config: off-diagonal cartan entries must be <= 0");
        require((cartan_[i][j] == 0) == (cartan_[j][i] == 0),
                "root config: cartan matrix is not symmetrizable");
        require(cartan_[i][j] * cartan_[j][i] <= 3, "root config: not of finite type");
      }
    }

  // Close the simple roots under simple reflections.
  struct Raw {
    IVec coeff, coroot;
  };
  std::map<IVec, IVec> found;
  std::deque<IVec> todo;
  for (int i = 0; i < n_; ++i) {
    IVec e(n_, 0);
    e[i] = 1;
    found[e] = cfg.simple_coroots[i];
    todo.push_back(e);
  }
  while (!todo.empty()) {
    IVec b = todo.front();
    todo.pop_front();
    IVec bc = found[b];
    for (int i = 0; i < n_; ++i) {
      int k = 0;
      for (int j = 0; j < n_; ++j) k += b[j] * cartan_[j][i];
      IVec nb = b;
      nb[i] -= k;
      IVec nc = bc;
      int m = dot(cfg.simple_roots[i], bc);
      for (int a = 0; a < r_; ++a) nc[a] -= m * cfg.simple_coroots[i][a];
      if (!found.count(nb)) {
        found[nb] = nc;
        todo.push_back(nb);
        require(found.size() < 2000, "root config: not of finite type");
      }
    }
  }
  std::vector<Root> pos;
  for (auto& [coeff, cor] : found) {
    bool p = std::all_of(coeff.begin(), coeff.end(), [](int x) { return x >= 0; });
    bool m = std::all_of(coeff.begin(), coeff.end(), [](int x) { return x <= 0; });
    require(p || m, "root config: root with mixed signs");
    if (!p) continue;
    Root rt;
    rt.coeff = coeff;
    rt.coroot = cor;
    rt.covec.assign(r_, 0);
    for (int j = 0; j < n_; ++j)
      for (int a = 0; a < r_; ++a) rt.covec[a] += coeff[j] * cfg.simple_roots[j][a];
    for (int x : coeff) rt.height += x;
    pos.push_back(rt);
  }
  std::sort(pos.begin(), pos.end(), [](const Root& a, const Root& b) {
    if (a.height != b.height) return a.height < b.height;
    return a.coeff < b.coeff;
  });
  for (auto& rt : pos) {
    IVec c2 = rt.coeff;
    for (auto& x : c2) x *= 2;
    require(!found.count(c2), "non-reduced root systems are not supported");
  }
  npos_ = int(pos.size());
  roots_ = pos;
  for (auto& rt : pos) {
    Root m = rt;
    for (auto& x : m.coeff) x = -x;
    for (auto& x : m.covec) x = -x;
    for (auto& x : m.coroot) x = -x;
    m.height = -m.height;
    roots_.push_back(m);
  }
  for (int i = 0; i < int(roots_.size()); ++i) index_[roots_[i].coeff] = i;
  simple_idx_.resize(n_);
  for (int i = 0; i < n_; ++i) {
    IVec e(n_, 0);
    e[i] = 1;
    simple_idx_[i] = index_.at(e);
  }
  perm_.assign(n_, std::vector<int>(roots_.size()));
  smat_.resize(n_);
  for (int i = 0; i < n_; ++i) {
    for (int b = 0; b < int(roots_.size()); ++b) {
      IVec nb = roots_[b].coeff;
      int k = 0;
      for (int j = 0; j < n_; ++j) k += roots_[b].coeff[j] * cartan_[j][i];
      nb[i] -= k;
      perm_[i][b] = index_.at(nb);
    }
    smat_[i] = identity_mat(r_);
    for (int a = 0; a < r_; ++a)
      for (int b = 0; b < r_; ++b) smat_[i][a][b] -= cfg.simple_coroots[i][a] * cfg.simple_roots[i][b];
  }
  // components
  std::vector<int> comp(n_, -1);
  for (int i = 0; i < n_; ++i) {
    if (comp[i] >= 0) continue;
    RootMask m = 0;
    std::deque<int> q{i};
    comp[i] = int(comps_.size());
    while (!q.empty()) {
      int a = q.front();
      q.pop_front();
      m |= 1u << a;
      for (int b = 0; b < n_; ++b)
        if (comp[b] < 0 && cartan_[a][b] != 0) {
          comp[b] = comp[i];
          q.push_back(b);
        }
    }
    comps_.push_back(m);
  }
}

int RootSystem::find(const IVec& coeff) const {
  auto it = index_.find(coeff);
  return it == index_.end() ? -1 : it->second;
}

bool RootSystem::in_subsystem(int root, RootMask m) const {
  const auto& c = roots_[root].coeff;
  for (int j = 0; j < n_; ++j)
    if (c[j] != 0 && !mask_has(m, j)) return false;
  return true;
}

std::vector<int> RootSystem::positive_roots_in(RootMask m) const {
  std::vector<int> out;
  for (int i = 0; i < npos_; ++i)
    if (in_subsystem(i, m)) out.push_back(i);
  return out;
}

int RootSystem::highest_root(RootMask comp) const {
  int best = -1;
  for (int i = 0; i < npos_; ++i)
    if (in_subsystem(i, comp) && (best < 0 || roots_[i].height > roots_[best].height)) best = i;
  return best;
}

std::vector<RootMask> RootSystem::components_of(RootMask m) const {
  std::vector<RootMask> out;
  RootMask seen = 0;
  for (int i = 0; i < n_; ++i) {
    if (!mask_has(m, i) || mask_has(seen, i)) continue;
    RootMask c = 0;
    std::deque<int> q{i};
    seen |= 1u << i;
    while (!q.empty()) {
      int a = q.front();
      q.pop_front();
      c |= 1u << a;
      for (int b = 0; b < n_; ++b)
        if (mask_has(m, b) && !mask_has(seen, b) && cartan_[a][b] != 0) {
          seen |= 1u << b;
          q.push_back(b);
        }
    }
    out.push_back(c);
  }
  return out;
}

bool RootSystem::orthogonal(RootMask a, RootMask b) const {
  for (int i = 0; i < n_; ++i)
    for (int j = 0; j < n_; ++j)
      if (mask_has(a, i) && mask_has(b, j) && cartan_[i][j] != 0) return false;
  return true;
}

WeylGroup::WeylGroup(const RootSystem& rs) : rs_(&rs) {
  int n = rs.num_simple(), nr = rs.num_roots(), npos = rs.num_pos();
  std::map<std::vector<int>, int> index;
  std::vector<int> idp(nr);
  for (int b = 0; b < nr; ++b) idp[b] = b;
  perm_.push_back(idp);
  mat_.push_back(identity_mat(rs.rank_lattice()));
  index[idp] = 0;
  std::vector<int> rtab;
  for (size_t k = 0; k < perm_.size(); ++k) {
    for (int i = 0; i < n; ++i) {
      std::vector<int> np(nr);
      for (int b = 0; b < nr; ++b) np[b] = perm_[k][rs.simple_perm(i)[b]];
      auto it = index.find(np);
      int id;
      if (it == index.end()) {
        id = int(perm_.size());
        index[np] = id;
        perm_.push_back(np);
        mat_.push_back(mat_mul(mat_[k], rs.simple_matrix(i)));
        require(perm_.size() <= 50000, "Weyl group too large");
      } else {
        id = it->second;
      }
      rtab.push_back(id);
    }
  }
  int N = int(perm_.size());
  rs_tab_ = rtab;
  len_.resize(N);
  for (int w = 0; w < N; ++w) {
    int l = 0;
    for (int b = 0; b < npos; ++b)
      if (!rs.positive(perm_[w][b])) ++l;
    len_[w] = l;
  }
  mul_.assign(size_t(N) * N, -1);
  for (int a = 0; a < N; ++a)
    for (int b = 0; b < N; ++b) {
      std::vector<int> np(nr);
      for (int x = 0; x < nr; ++x) np[x] = perm_[a][perm_[b][x]];
      mul_[size_t(a) * N + b] = index.at(np);
    }
  inv_.resize(N);
  for (int a = 0; a < N; ++a)
    for (int b = 0; b < N; ++b)
      if (mul_[size_t(a) * N + b] == 0) inv_[a] = b;
  simple_.resize(n);
  for (int i = 0; i < n; ++i) simple_[i] = rs_tab_[0 * n + i];
  ls_tab_.resize(size_t(N) * n);
  for (int a = 0; a < N; ++a)
    for (int i = 0; i < n; ++i) ls_tab_[size_t(a) * n + i] = mul(simple_[i], a);
  // lexicographically minimal reduced words, by increasing length
  std::vector<int> order(N);
  for (int i = 0; i < N; ++i) order[i] = i;
  std::stable_sort(order.begin(), order.end(), [&](int a, int b) { return len_[a] < len_[b]; });
  word_.assign(N, {});
  for (int w : order) {
    if (len_[w] == 0) continue;
    for (int i = 0; i < n; ++i)
      if (left_descent(w, i)) {
        word_[w] = {i};
        const auto& rest = word_[lmul_simple(i, w)];
        word_[w].insert(word_[w].end(), rest.begin(), rest.end());
        break;
      }
  }
  refl_.assign(npos, -1);
  for (int w = 0; w < N; ++w)
    for (int i = 0; i < n; ++i) {
      int b = perm_[w][rs.simple(i)];
      if (rs.positive(b) && refl_[b] < 0) refl_[b] = mul(mul(w, simple_[i]), inv_[w]);
    }
}

int WeylGroup::from_word(const std::vector<int>& word) const {
  int w = 0;
  for (int i : word) w = rmul_simple(w, i);
  return w;
}

bool WeylGroup::bruhat_leq(int v, int w) const {
  while (true) {
    if (len_[v] > len_[w]) return false;
    if (len_[w] == 0) return v == w;
    int n = rs_->num_simple(), s = -1;
    for (int i = 0; i < n; ++i)
      if (right_descent(w, i)) {
        s = i;
        break;
      }
    int ws = rmul_simple(w, s);
    if (right_descent(v, s)) v = rmul_simple(v, s);
    w = ws;
  }
}

bool WeylGroup::in_parabolic(int w, RootMask m) const {
  for (int i : word_[w])
    if (!mask_has(m, i)) return false;
  return true;
}

std::vector<int> WeylGroup::parabolic_elements(RootMask m) const {
  std::vector<int> out;
  for (int w = 0; w < size(); ++w)
    if (in_parabolic(w, m)) out.push_back(w);
  return out;
}

std::vector<int> WeylGroup::min_left_reps(RootMask m) const {
  std::vector<int> out;
  for (int w = 0; w < size(); ++w) {
    bool ok = true;
    for (int i = 0; i < rs_->num_simple(); ++i)
      if (mask_has(m, i) && !rs_->positive(perm_[w][rs_->simple(i)])) ok = false;
    if (ok) out.push_back(w);
  }
  return out;
}

std::vector<int> WeylGroup::min_right_reps(RootMask m) const {
  std::vector<int> out;
  for (int w = 0; w < size(); ++w) {
    bool ok = true;
    for (int i = 0; i < rs_->num_simple(); ++i)
      if (mask_has(m, i) && !rs_->positive(perm_[inv_[w]][rs_->simple(i)])) ok = false;
    if (ok) out.push_back(w);
  }
  return out;
}

int WeylGroup::longest(RootMask m) const {
  int best = 0;
  for (int w = 0; w < size(); ++w)
    if (in_parabolic(w, m) && len_[w] > len_[best]) best = w;
  return best;
}

}  // namespace ph
