// SPDX-License-Identifier: Apache-2.0
#include <memory>
#include <random>

#include "doctest.h"
#include "prophecke/config.hpp"
#include "prophecke/functors.hpp"
#include "prophecke/harness.hpp"

using namespace ph;

namespace {
struct Setup {
  explicit Setup(const std::string& preset)
      : G(std::make_shared<ProPWeyl>(load_config(preset))), alg(G, GF(G->p(), 1)) {}
  std::shared_ptr<const ProPWeyl> G;
  Algebras<GF> alg;
};
}  // namespace

TEST_CASE("characters of H_G for SL2 over F_3") {
  Setup s("sl2-p3");
  auto H = s.alg.hecke(s.alg.full());
  auto chars = all_characters(H);
  REQUIRE(!chars.empty());
  for (size_t i = 0; i < chars.size(); ++i) {
    CHECK(chars[i].dim() == 1);
    CHECK(chars[i].valid());
    CHECK(is_absolutely_irreducible(chars[i]));
    for (size_t j = i + 1; j < chars.size(); ++j) CHECK_FALSE(isomorphic(chars[i], chars[j]));
  }
  CHECK(trivial_module(H).valid());
}

TEST_CASE("random generator matrices are rejected") {
  Setup s("sl2-p3");
  auto H = s.alg.hecke(s.alg.full());
  int n = int(FinModule<GF>::generator_elements(H->sub()).size());
  std::mt19937_64 rng(7);
  int rejected = 0;
  for (int trial = 0; trial < 20; ++trial) {
    std::vector<GF::E> v(n);
    for (auto& x : v) x = GF::E(rng() % 3);
    if (!character(H, v, "random").valid()) ++rejected;
  }
  CHECK(rejected >= 15);
}

TEST_CASE("direct sums are not irreducible and twists are involutions") {
  Setup s("sl3-p2");
  auto H = s.alg.hecke(s.alg.full());
  auto chi = trivial_module(H);
  CHECK_FALSE(is_absolutely_irreducible(direct_sum(chi, chi)));
  auto t = twist_iota(chi);
  CHECK(t.valid());
  CHECK(isomorphic(twist_iota(t), chi));
}

TEST_CASE("induction from the Borel: dimension and validity") {
  for (const char* p : {"sl2-p3", "a1xa1-p2", "sl3-p2"}) {
    Setup s(p);
    auto HB = s.alg.hecke(0);
    auto chi = trivial_module(HB);
    Induced<GF> ind(s.alg, chi, s.alg.full());
    CAPTURE(p);
    CHECK(ind.dim() == s.G->W0().size());
    CHECK(ind.module().valid());
    Induced<GF> ind2(s.alg, chi, s.alg.full(), Variant::Iprime);
    CHECK(ind2.module().valid());
  }
}

TEST_CASE("induction to G of a module over H_G is the module itself") {
  Setup s("sl2-p3");
  auto H = s.alg.hecke(s.alg.full());
  for (auto& chi : all_characters(H)) {
    Induced<GF> ind(s.alg, chi, s.alg.full());
    CHECK(isomorphic(ind.module(), chi));
  }
}

TEST_CASE("L_G and R_G are the identity") {
  Setup s("sl2-p2");
  auto H = s.alg.hecke(s.alg.full());
  for (auto& chi : all_characters(H)) {
    CHECK(isomorphic(left_adjoint(s.alg, chi, s.alg.full()).module, chi));
    CHECK(isomorphic(right_adjoint(s.alg, chi, s.alg.full()).module, chi));
  }
}

TEST_CASE("Steinberg module of the trivial character of SL2 is one-dimensional") {
  Setup s("sl2-p3");
  auto HB = s.alg.hecke(0);
  auto chi = trivial_module(HB);
  RootMask Psig = delta_set(chi, s.alg);
  CHECK(Psig == s.alg.full());
  auto st = steinberg(s.alg, chi, 0, Psig);
  CHECK(st.module.dim() == 1);
  CHECK(st.module.valid());
}

TEST_CASE("module JSON round trip") {
  Setup s("a1xa1-p3");
  auto HB = s.alg.hecke(0);
  for (auto& chi : all_characters(HB)) {
    Induced<GF> ind(s.alg, chi, s.alg.full());
    auto j = nlohmann::json::parse(module_to_json(ind.module()));
    auto back = module_from_json(j, s.alg);
    REQUIRE(back.dim() == ind.dim());
    auto a = back.all_generators(), b = ind.module().all_generators();
    REQUIRE(a.size() == b.size());
    for (size_t i = 0; i < a.size(); ++i) CHECK(back.la().eq(a[i], b[i]));
  }
}
