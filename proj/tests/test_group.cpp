// SPDX-License-Identifier: Apache-2.0
#include <memory>

#include "doctest.h"
#include "prophecke/config.hpp"
#include "prophecke/oracles.hpp"

using namespace ph;

namespace {
std::shared_ptr<const ProPWeyl> group(const std::string& preset) {
  return std::make_shared<ProPWeyl>(load_config(preset));
}
}  // namespace

TEST_CASE("finite Weyl groups have the expected orders and longest elements") {
  struct Row {
    const char* preset;
    int order, longest;
  };
  for (auto r : {Row{"sl2-p3", 2, 1}, Row{"a1xa1-p2", 4, 2}, Row{"sl3-p2", 6, 3}, Row{"a2-p2", 6, 3}}) {
    auto G = group(r.preset);
    const auto& W = G->W0();
    CAPTURE(r.preset);
    CHECK(W.size() == r.order);
    CHECK(W.length(W.longest(G->roots().full_mask())) == r.longest);
    for (int w = 0; w < W.size(); ++w) {
      CHECK(W.mul(w, W.inv(w)) == W.id());
      CHECK(W.from_word(W.word(w)) == w);
      CHECK(int(W.word(w).size()) == W.length(w));
    }
  }
}

TEST_CASE("A1 x A1 splits into orthogonal components") {
  auto G = group("a1xa1-p3");
  CHECK(G->roots().components().size() == 2);
  CHECK(G->roots().orthogonal(1, 2));
}

TEST_CASE("torsion of the pro-p Iwahori Weyl group") {
  CHECK(group("sl2-p3")->zk_size() == 2);
  CHECK(group("sl2-p2")->zk_size() == 1);
  CHECK(group("sl3-p3")->zk_size() == 4);
}

TEST_CASE("group law on W(1): associativity and inverses on samples") {
  auto G = group("sl3-p3");
  std::vector<WElt> xs = {G->n(1), G->n(G->W0().simple(0)), G->lam({1, -1, 0}, {1, 0}), G->tors({0, 1}),
                          G->mul(G->n(3), G->lam({2, 0, -1}))};
  for (auto& a : xs) {
    CHECK(G->mul(a, G->inv(a)) == G->identity());
    CHECK(G->parse(G->str(a)) == a);
    for (auto& b : xs)
      for (auto& c : xs) CHECK(G->mul(G->mul(a, b), c) == G->mul(a, G->mul(b, c)));
  }
}

TEST_CASE("lengths on affine SL2") {
  auto G = group("sl2-p3");
  auto A = std::make_shared<AffSub>(G, G->roots().full_mask());
  CHECK(A->length(G->identity()) == 0);
  CHECK(A->length(G->n(1)) == 1);
  CHECK(A->length(G->lam({1})) == 2);
  CHECK(A->length(G->lam({-3})) == 6);
  CHECK(A->length(G->tors({1})) == 0);
  for (auto& g : A->gens()) CHECK(A->length(g.e) == 1);
}

TEST_CASE("length agrees with the alcove oracle on a small ball") {
  for (const char* p : {"sl2-p2", "a1xa1-p2", "sl3-p2"}) {
    auto G = group(p);
    auto A = std::make_shared<AffSub>(G, G->roots().full_mask());
    AlcoveOracle O(A, 4);
    for (int v = 0; v < G->W0().size(); ++v)
      for (int a = -1; a <= 1; ++a) {
        IVec x(G->rank(), 0);
        x[0] = a;
        WElt w = G->mul(G->lam(x), G->n(v));
        auto l = O.length(w);
        if (l) CHECK(*l == A->length(w));
      }
  }
}

TEST_CASE("configuration errors are reported") {
  CHECK_THROWS_AS(load_config("no-such-preset"), Error);

  auto j = config_to_json(load_config("sl2-p3"));
  auto bad_q = j;
  bad_q["group"]["q"] = 6;
  CHECK_THROWS_WITH_AS(ProPWeyl(config_from_json(bad_q)), doctest::Contains("prime power"), Error);

  auto bad_sq = j;
  bad_sq["group"]["ns_squares"] = nlohmann::json::array({nlohmann::json::array({1, 0})});
  CHECK_THROWS_AS(ProPWeyl(config_from_json(bad_sq)), Error);

  CHECK(config_digest(config_from_json(j)) == config_digest(load_config("sl2-p3")));
}

TEST_CASE("every preset validates") {
  for (auto& p : preset_names()) {
    CAPTURE(p);
    CHECK_NOTHROW(ProPWeyl(load_config(p)));
  }
}
