// SPDX-License-Identifier: Apache-2.0
#include "prophecke/oracles.hpp"

#include <deque>
#include <numeric>

namespace ph {

namespace {

// Solve a x = rhs (rows of a are covectors) over Q, free unknowns set to 0.
std::vector<mpq_class> solve_rational(const IMat& a, const std::vector<mpq_class>& rhs, int r) {
  int n = int(a.size());
  std::vector<std::vector<mpq_class>> m(n, std::vector<mpq_class>(r + 1));
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < r; ++j) m[i][j] = a[i][j];
    m[i][r] = rhs[i];
  }
  std::vector<int> piv;
  int row = 0;
  for (int c = 0; c < r && row < n; ++c) {
    int p = -1;
    for (int i = row; i < n; ++i)
      if (sgn(m[i][c]) != 0) p = i;
    if (p < 0) continue;
    std::swap(m[p], m[row]);
    mpq_class inv = 1 / m[row][c];
    for (auto& x : m[row]) x *= inv;
    for (int i = 0; i < n; ++i)
      if (i != row && sgn(m[i][c]) != 0) {
        mpq_class f = m[i][c];
        for (int j = 0; j <= r; ++j) m[i][j] -= f * m[row][j];
      }
    piv.push_back(c);
    ++row;
  }
  for (int i = row; i < n; ++i) require(sgn(m[i][r]) == 0, "alcove oracle: inconsistent base point");
  std::vector<mpq_class> x(r, 0);
  for (int i = 0; i < row; ++i) x[piv[i]] = m[i][r];
  return x;
}

struct Affine {
  IMat M;
  IVec t;
};

}  // namespace

AlcoveOracle::AlcoveOracle(std::shared_ptr<const AffSub> A, int bound) : A_(std::move(A)), bound_(bound) {
  const auto& G = A_->group();
  const auto& rs = G.roots();
  int r = G.rank();
  IMat rows;
  int maxh = 0;
  for (int a : A_->posroots()) maxh = std::max(maxh, rs.root(a).height);
  std::vector<mpq_class> rhs;
  for (int i = 0; i < rs.num_simple(); ++i)
    if (mask_has(A_->mask(), i)) {
      rows.push_back(rs.root(rs.simple(i)).covec);
      rhs.push_back(mpq_class(1, maxh + 1));
    }
  std::vector<mpq_class> b = rows.empty() ? std::vector<mpq_class>(r, 0) : solve_rational(rows, rhs, r);
  mpz_class D = 1;
  for (auto& x : b) D = lcm(D, mpz_class(x.get_den()));
  D_ = D.get_si();
  bary_.resize(r);
  for (int i = 0; i < r; ++i) bary_[i] = mpz_class(b[i] * D).get_si();
  // walls of the base alcove: (root, level)
  std::vector<std::pair<int, int>> walls;
  for (int i = 0; i < rs.num_simple(); ++i)
    if (mask_has(A_->mask(), i)) walls.push_back({rs.simple(i), 0});
  for (RootMask c : rs.components_of(A_->mask())) walls.push_back({rs.highest_root(c), 1});
  std::vector<Affine> refl;
  for (auto [a, k] : walls) {
    const auto& cv = rs.root(a).covec;
    const auto& co = rs.root(a).coroot;
    Affine f{identity_mat(r), IVec(r, 0)};
    for (int i = 0; i < r; ++i) {
      for (int j = 0; j < r; ++j) f.M[i][j] -= co[i] * cv[j];
      f.t[i] = int(k * D_ * co[i]);
    }
    refl.push_back(f);
  }
  auto apply = [&](const Affine& f, const IVec& x) {
    IVec y = mat_vec(f.M, x);
    for (int i = 0; i < r; ++i) y[i] += f.t[i];
    return y;
  };
  std::deque<std::pair<Affine, int>> todo;
  Affine id{identity_mat(r), IVec(r, 0)};
  dist_[bary_] = 0;
  todo.push_back({id, 0});
  while (!todo.empty()) {
    auto [f, d] = todo.front();
    todo.pop_front();
    if (d >= bound_) continue;
    for (auto& s : refl) {
      Affine g{mat_mul(f.M, s.M), apply(f, s.t)};
      IVec key = apply(g, bary_);
      if (dist_.emplace(key, d + 1).second) todo.push_back({g, d + 1});
    }
  }
}

IVec AlcoveOracle::image(const WElt& w) const {
  const auto& G = A_->group();
  IVec x = bary_;
  for (int i = 0; i < G.rank(); ++i) x[i] += int(D_ * w.x[i]);
  return G.W0().act_lattice(w.v, x);
}

std::optional<int> AlcoveOracle::length(const WElt& w) const {
  auto it = dist_.find(image(w));
  if (it == dist_.end()) return std::nullopt;
  return it->second;
}

// ---------------------------------------------------------------------------

RewriteOracle::RewriteOracle(std::shared_ptr<const AffSub> A, const AlcoveOracle& len)
    : A_(std::move(A)), len_(len) {}

WElt RewriteOracle::value(const Word& w) const {
  WElt e = w.u;
  for (int j : w.gens) e = A_->group().mul(e, A_->gens()[j].e);
  return e;
}

int RewriteOracle::len(const WElt& w) const {
  auto l = len_.length(w);
  require(l.has_value(), "rewrite oracle: length bound exceeded");
  return *l;
}

RewriteOracle::Word RewriteOracle::ending_with(const Word& w0, int j) const {
  const auto& G = A_->group();
  std::set<Word> seen{w0};
  std::deque<Word> todo{w0};
  while (!todo.empty()) {
    Word w = todo.front();
    todo.pop_front();
    if (!w.gens.empty() && w.gens.back() == j) return w;
    int n = int(w.gens.size());
    for (int p = 0; p < n; ++p)
      for (int b = 0; b < A_->num_gens(); ++b) {
        int a = w.gens[p];
        if (a == b) continue;
        int m = A_->coxeter_order(a, b);
        if (m == 0 || p + m > n) continue;
        bool alt = true;
        for (int k = 0; k < m; ++k)
          if (w.gens[p + k] != (k % 2 ? b : a)) alt = false;
        if (!alt) continue;
        WElt lhs = G.identity(), rhs = G.identity(), pre = G.identity();
        for (int k = 0; k < m; ++k) {
          lhs = G.mul(lhs, A_->gens()[k % 2 ? b : a].e);
          rhs = G.mul(rhs, A_->gens()[k % 2 ? a : b].e);
        }
        WElt z = G.mul(lhs, G.inv(rhs));
        require(G.is_torsion(z), "rewrite oracle: braid relation fails modulo torsion");
        for (int k = 0; k < p; ++k) pre = G.mul(pre, A_->gens()[w.gens[k]].e);
        Word nw = w;
        nw.u = G.mul(w.u, G.mul(G.mul(pre, z), G.inv(pre)));
        for (int k = 0; k < m; ++k) nw.gens[p + k] = k % 2 ? a : b;
        if (seen.insert(nw).second) todo.push_back(nw);
      }
  }
  throw Error("rewrite oracle: no braid-equivalent word ends with the requested generator");
}

std::map<RewriteOracle::Word, long long> RewriteOracle::times_gen(const std::map<Word, long long>& x,
                                                                   int j) const {
  const auto& G = A_->group();
  const auto& g = A_->gens()[j];
  std::map<Word, long long> y;
  for (auto& [w, c] : x) {
    WElt e = value(w);
    if (len(G.mul(e, g.e)) > int(w.gens.size())) {
      Word nw = w;
      nw.gens.push_back(j);
      y[nw] += c;
      continue;
    }
    Word w2 = ending_with(w, j);
    std::vector<int> prefix(w2.gens.begin(), w2.gens.end() - 1);
    WElt rest = G.identity();
    for (int k : prefix) rest = G.mul(rest, A_->gens()[k].e);
    WElt sq = G.mul(g.e, g.e);
    require(G.is_torsion(sq), "rewrite oracle: generator square is not torsion");
    Word qa{G.mul(w2.u, G.mul(G.mul(rest, sq), G.inv(rest))), prefix};
    y[qa] += c * G.q();
    for (auto& t : g.c) {
      WElt tt = G.tors(t.t);
      Word cw{G.mul(w2.u, G.mul(G.mul(rest, tt), G.inv(rest))), w2.gens};
      y[cw] += c * t.mult;
    }
  }
  for (auto it = y.begin(); it != y.end();) it = it->second == 0 ? y.erase(it) : std::next(it);
  return y;
}

RewriteOracle::Terms RewriteOracle::product(const std::vector<int>& w1, const std::vector<int>& w2) const {
  std::map<Word, long long> x{{Word{A_->group().identity(), {}}, 1}};
  for (int j : w1) x = times_gen(x, j);
  for (int j : w2) x = times_gen(x, j);
  Terms out;
  for (auto& [w, c] : x) out[value(w)] += c;
  for (auto it = out.begin(); it != out.end();) it = it->second == 0 ? out.erase(it) : std::next(it);
  return out;
}

// ---------------------------------------------------------------------------

bool subword_bruhat_w0(const WeylGroup& W, int v, int w) {
  const auto& word = W.word(w);
  int n = int(word.size());
  for (int m = 0; m < (1 << n); ++m) {
    int p = 0;
    for (int k = 0; k < n; ++k)
      if (m >> k & 1) p = W.rmul_simple(p, word[k]);
    if (p == v) return true;
  }
  return false;
}

bool subword_bruhat(const AffSub& A, const WElt& v, const WElt& w) {
  const auto& G = A.group();
  if (!A.contains(v) || !A.contains(w)) return false;
  if (!A.in_waff(G.mul(v, G.inv(w)))) return false;
  Decomp d = A.decompose(w);
  int n = int(d.gens.size());
  require(n <= 16, "subword oracle: word too long");
  for (int m = 0; m < (1 << n); ++m) {
    WElt p = d.u;
    for (int k = 0; k < n; ++k)
      if (m >> k & 1) p = G.mul(p, A.gens()[d.gens[k]].e);
    if (G.is_torsion(G.mul(v, G.inv(p)))) return true;
  }
  return false;
}

}  // namespace ph
