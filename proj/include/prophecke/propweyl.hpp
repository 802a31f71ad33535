// SPDX-License-Identifier: Apache-2.0
// The pro-p extended affine Weyl group W(1) = (n_v, lambda), lambda in Z^r x Z_kappa.
#pragma once

#include <cstring>
#include <functional>
#include <map>
#include <memory>
#include <mutex>
#include <string>
#include <unordered_map>
#include <vector>

#include "prophecke/common.hpp"
#include "prophecke/rootdata.hpp"

namespace ph {

// Canonical form of n_v * lambda with lambda = (x, t).
struct WElt {
  std::uint16_t v = 0;
  std::uint8_t t[MAXR] = {0, 0, 0, 0};
  std::int32_t x[MAXR] = {0, 0, 0, 0};

  bool operator==(const WElt& o) const {
    return v == o.v && std::memcmp(t, o.t, sizeof t) == 0 && std::memcmp(x, o.x, sizeof x) == 0;
  }
  bool operator!=(const WElt& o) const { return !(*this == o); }
  bool operator<(const WElt& o) const {
    if (v != o.v) return v < o.v;
    for (int i = 0; i < MAXR; ++i)
      if (x[i] != o.x[i]) return x[i] < o.x[i];
    for (int i = 0; i < MAXR; ++i)
      if (t[i] != o.t[i]) return t[i] < o.t[i];
    return false;
  }
};

struct WHash {
  size_t operator()(const WElt& w) const {
    std::uint64_t h = 1469598103934665603ull ^ w.v;
    for (int i = 0; i < MAXR; ++i) {
      h = (h ^ std::uint32_t(w.x[i])) * 1099511628211ull;
      h = (h ^ w.t[i]) * 1099511628211ull;
    }
    return size_t(h ^ (h >> 29));
  }
};

// One torsion element with a multiplicity; c-parameters are lists of these.
struct TorsTerm {
  IVec t;
  int mult = 1;
};

struct GroupConfig {
  std::string name;
  RootConfig root;
  long long q = 0;            // prime power
  IVec zkappa;                // cyclic orders
  std::vector<IMat> zk_action;  // per simple reflection, on Z_kappa; empty = lattice matrices
  IMat ns_squares;            // per simple reflection; empty = split default
  IMat lambda_aff_torsion;    // per simple root, torsion generator; empty = coroot mod orders
  IMat affine_lifts;          // per component, torsion part of the affine simple lift; empty = 0
  std::map<std::string, std::vector<TorsTerm>> c_override;
  std::string notes;
};

// Validated group data shared by the algebra and all of its Levi subalgebras.
class ProPWeyl {
 public:
  explicit ProPWeyl(const GroupConfig& cfg);

  const GroupConfig& config() const { return cfg_; }
  const RootSystem& roots() const { return rs_; }
  const WeylGroup& W0() const { return w0_; }
  int rank() const { return rs_.rank_lattice(); }
  int trank() const { return int(zk_.size()); }
  const IVec& zkappa() const { return zk_; }
  long long q() const { return cfg_.q; }
  int p() const { return p_; }
  int zk_size() const;

  WElt identity() const { return WElt{}; }
  WElt n(int v) const;
  WElt lam(const IVec& x, const IVec& t = {}) const;
  WElt tors(const IVec& t) const { return lam(IVec(rank(), 0), t); }
  IVec free_part(const WElt& w) const { return IVec(w.x, w.x + rank()); }
  IVec tors_part(const WElt& w) const { return IVec(w.t, w.t + trank()); }
  bool is_lambda(const WElt& w) const { return w.v == 0; }
  bool is_torsion(const WElt& w) const;

  WElt mul(const WElt& a, const WElt& b) const;
  WElt inv(const WElt& a) const;
  // Conjugation action of v in W_0 on Lambda(1).
  WElt act(int v, const WElt& lam) const;
  IVec act_tors(int v, const IVec& t) const;
  IVec add_tors(const IVec& a, const IVec& b) const;
  IVec neg_tors(const IVec& a) const;
  // n_{v1} n_{v2} = n_{v1 v2} * cocycle(v1, v2)
  const IVec& cocycle(int v1, int v2) const { return tau_[v1 * w0_.size() + v2]; }
  const IVec& ns_square(int i) const { return ts_[i]; }
  // Torsion generator attached to a root (image of its coroot).
  const IVec& root_torsion(int root) const { return rtors_[root]; }
  // All torsion elements, enumerated.
  std::vector<IVec> all_torsion() const;
  // Subgroup of Z_kappa generated by the given elements.
  std::vector<IVec> torsion_span(const std::vector<IVec>& gens) const;
  // Default c-parameter for a reflection lift whose gradient root is given.
  std::vector<TorsTerm> default_c(int root) const;
  std::string str(const WElt& w) const;
  WElt parse(const std::string& s) const;
  int p_of_q() const { return p_; }

 private:
  GroupConfig cfg_;
  RootSystem rs_;
  WeylGroup w0_;
  IVec zk_;
  int p_ = 0;
  std::vector<IMat> tmat_;  // per W0 element
  std::vector<IVec> ts_;
  std::vector<IVec> rtors_;
  std::vector<IVec> tau_;
};

// An affine simple generator of W_aff for a (Levi) subsystem, with its canonical lift.
struct AffGen {
  WElt e;
  int grad = -1;   // root index of the gradient
  int comp = 0;    // index of the irreducible component
  bool affine = false;
  std::string name;
  std::vector<TorsTerm> c;
};

// w = u * g_{gens[0]} * ... * g_{gens[k-1]} with u of length zero.
struct Decomp {
  WElt u;
  std::vector<int> gens;
};

// Result of T_w T_g: either T_{wg} (up) or q T_{wg} + sum mult T_{extra}.
struct Step {
  bool up = true;
  WElt prod;
  std::vector<std::pair<WElt, int>> extra;
};

// Coxeter data of W_A(1) for a set A of simple roots (A = all roots gives W(1) itself).
class AffSub {
 public:
  AffSub(std::shared_ptr<const ProPWeyl> G, RootMask mask);

  const ProPWeyl& group() const { return *G_; }
  std::shared_ptr<const ProPWeyl> group_ptr() const { return G_; }
  RootMask mask() const { return mask_; }
  const std::vector<int>& posroots() const { return pos_; }
  const std::vector<AffGen>& gens() const { return gens_; }
  int num_gens() const { return int(gens_.size()); }
  const std::vector<WElt>& omegas() const { return omega_; }

  bool contains(const WElt& w) const;  // w in W_A(1)
  int length(const WElt& w) const;
  Decomp decompose(const WElt& w) const;
  Step step(const WElt& w, int j) const;
  // Length-zero u = z * omega_1^{x_1} ... omega_r^{x_r}; returns (z, x).
  std::pair<IVec, IVec> omega_coords(const WElt& u) const;
  bool in_waff(const WElt& w) const;   // w in W_aff,A(1)
  bool bruhat_leq(const WElt& a, const WElt& b) const;
  const std::vector<IVec>& waff_torsion() const { return waff_tors_; }
  // c-parameter of a lift of an affine reflection of W_A.
  std::vector<TorsTerm> c_of_reflection(const WElt& r) const;
  // Coxeter matrix entry m(g_i g_j), 0 meaning infinity.
  int coxeter_order(int i, int j) const;
  int gen_index(const std::string& name) const;
  std::string name() const;
  WElt w0_lift_longest() const;

 private:
  std::shared_ptr<const ProPWeyl> G_;
  RootMask mask_;
  std::vector<int> pos_;
  std::vector<AffGen> gens_;
  std::vector<WElt> omega_;
  std::vector<IVec> waff_tors_;
  IMat cox_;
  mutable std::mutex mu_;
  mutable std::unordered_map<WElt, Decomp, WHash> dec_memo_;
  mutable std::vector<std::unordered_map<WElt, Step, WHash>> step_memo_;
};

}  // namespace ph
