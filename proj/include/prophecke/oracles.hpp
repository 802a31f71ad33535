// SPDX-License-Identifier: Apache-2.0
// Brute-force checkers that share no code path with the algebra they check.
#pragma once

#include <map>
#include <memory>
#include <optional>
#include <set>
#include <vector>

#include "prophecke/hecke.hpp"

namespace ph {

// Gallery distance in the alcove graph, by breadth-first search from the base alcove.
class AlcoveOracle {
 public:
  AlcoveOracle(std::shared_ptr<const AffSub> A, int bound);
  // Length of the image of w, or nullopt if it exceeds the bound.
  std::optional<int> length(const WElt& w) const;
  int bound() const { return bound_; }
  size_t num_alcoves() const { return dist_.size(); }

 private:
  IVec image(const WElt& w) const;
  std::shared_ptr<const AffSub> A_;
  int bound_;
  long long D_ = 1;
  IVec bary_;
  std::map<IVec, int> dist_;
};

// Products of T-words by rewriting with the quadratic and braid relations only.
class RewriteOracle {
 public:
  using Terms = std::map<WElt, long long>;
  RewriteOracle(std::shared_ptr<const AffSub> A, const AlcoveOracle& len);
  // T_{g_{w1[0]}} ... T_{g_{w1[-1]}} T_{g_{w2[0]}} ... as a T-expansion
  Terms product(const std::vector<int>& w1, const std::vector<int>& w2) const;

 private:
  struct Word {
    WElt u;
    std::vector<int> gens;
    bool operator<(const Word& o) const {
      if (!(u == o.u)) return u < o.u;
      return gens < o.gens;
    }
  };
  WElt value(const Word& w) const;
  int len(const WElt& w) const;
  // A word for the same element ending with generator j, via braid moves.
  Word ending_with(const Word& w, int j) const;
  std::map<Word, long long> times_gen(const std::map<Word, long long>& x, int j) const;

  std::shared_ptr<const AffSub> A_;
  const AlcoveOracle& len_;
};

// Bruhat order by the subword property on one reduced word of the larger element.
bool subword_bruhat_w0(const WeylGroup& W, int v, int w);
bool subword_bruhat(const AffSub& A, const WElt& v, const WElt& w);

}  // namespace ph
