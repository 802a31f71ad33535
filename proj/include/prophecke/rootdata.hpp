// SPDX-License-Identifier: Apache-2.0
// Reduced root systems on a cocharacter lattice and their finite Weyl groups.
#pragma once

#include <map>
#include <string>
#include <vector>

#include "prophecke/common.hpp"

namespace ph {

struct RootConfig {
  std::string type;      // "A1", "A1xA1", "A2", ... or "custom"
  IMat cartan;           // optional, checked against the pairing
  IMat simple_roots;     // covectors on Z^r
  IMat simple_coroots;   // vectors in Z^r
};

struct Root {
  IVec coeff;   // in the basis of simple roots
  IVec covec;   // as a covector on Z^r
  IVec coroot;  // as a vector in Z^r
  int height = 0;
};

class RootSystem {
 public:
  explicit RootSystem(const RootConfig& cfg);

  int rank_lattice() const { return r_; }
  int num_simple() const { return n_; }
  int num_pos() const { return npos_; }
  int num_roots() const { return int(roots_.size()); }
  const Root& root(int i) const { return roots_[i]; }
  bool positive(int i) const { return i < npos_; }
  int neg(int i) const { return i < npos_ ? i + npos_ : i - npos_; }
  // Index of the root with the given simple-root coefficients, or -1.
  int find(const IVec& coeff) const;
  int simple(int i) const { return simple_idx_[i]; }
  const IMat& cartan() const { return cartan_; }
  int pair(int root, const IVec& x) const { return dot(roots_[root].covec, x); }
  // Irreducible components of the simple roots.
  const std::vector<RootMask>& components() const { return comps_; }
  RootMask full_mask() const { return (1u << n_) - 1; }
  // Positive roots supported in the given set of simple roots.
  std::vector<int> positive_roots_in(RootMask m) const;
  bool in_subsystem(int root, RootMask m) const;
  // Highest root of an irreducible component.
  int highest_root(RootMask comp) const;
  std::vector<RootMask> components_of(RootMask m) const;
  bool orthogonal(RootMask a, RootMask b) const;
  // Permutation of root indices induced by a simple reflection.
  const std::vector<int>& simple_perm(int i) const { return perm_[i]; }
  const IMat& simple_matrix(int i) const { return smat_[i]; }
  const RootConfig& config() const { return cfg_; }

 private:
  RootConfig cfg_;
  int r_ = 0, n_ = 0, npos_ = 0;
  IMat cartan_;
  std::vector<Root> roots_;
  std::map<IVec, int> index_;
  std::vector<int> simple_idx_;
  std::vector<std::vector<int>> perm_;
  std::vector<IMat> smat_;
  std::vector<RootMask> comps_;
};

RootConfig root_config_for_type(const std::string& type);

// The finite Weyl group, fully enumerated.
class WeylGroup {
 public:
  explicit WeylGroup(const RootSystem& rs);

  const RootSystem& roots() const { return *rs_; }
  int size() const { return int(perm_.size()); }
  int id() const { return 0; }
  int mul(int a, int b) const { return mul_[a * size() + b]; }
  int inv(int a) const { return inv_[a]; }
  int length(int a) const { return len_[a]; }
  int simple(int i) const { return simple_[i]; }
  int rmul_simple(int a, int i) const { return rs_tab_[a * rs_->num_simple() + i]; }
  int lmul_simple(int i, int a) const { return ls_tab_[a * rs_->num_simple() + i]; }
  int act_root(int w, int root) const { return perm_[w][root]; }
  const IMat& matrix(int w) const { return mat_[w]; }
  IVec act_lattice(int w, const IVec& x) const { return mat_vec(mat_[w], x); }
  // Lexicographically minimal reduced word.
  const std::vector<int>& word(int w) const { return word_[w]; }
  int from_word(const std::vector<int>& word) const;
  bool right_descent(int w, int i) const { return len_[rmul_simple(w, i)] < len_[w]; }
  bool left_descent(int w, int i) const { return len_[lmul_simple(i, w)] < len_[w]; }
  // Bruhat order via the lifting property along right descents.
  bool bruhat_leq(int v, int w) const;
  bool in_parabolic(int w, RootMask m) const;
  std::vector<int> parabolic_elements(RootMask m) const;
  // Minimal length representatives of W/W_P (left list) and W_P\W (right list).
  std::vector<int> min_left_reps(RootMask m) const;
  std::vector<int> min_right_reps(RootMask m) const;
  int longest(RootMask m) const;
  // Reflection attached to a root.
  int reflection(int root) const { return refl_[root % rs_->num_pos()]; }

 private:
  const RootSystem* rs_;
  std::vector<std::vector<int>> perm_;
  std::vector<IMat> mat_;
  std::vector<int> len_, inv_, mul_, rs_tab_, ls_tab_, simple_, refl_;
  std::vector<std::vector<int>> word_;
};

}  // namespace ph
