// SPDX-License-Identifier: Apache-2.0
#include <filesystem>
#include <fstream>
#include <set>

#include "doctest.h"
#include "prophecke/harness.hpp"

using namespace ph;
namespace fs = std::filesystem;

TEST_CASE("registry matches the statement map") {
  std::ifstream in(PH_STATEMENT_MAP);
  REQUIRE(in.good());
  auto j = nlohmann::json::parse(in);
  std::set<std::string> mapped, registered;
  for (auto& f : j["families"]) {
    std::string s = f["suite"];
    CAPTURE(s);
    CHECK(find_suite(s) != nullptr);
    mapped.insert(s);
  }
  for (auto& s : suites())
    if (!s.alias) registered.insert(s.name);
  CHECK(mapped == registered);
  CHECK(find_suite("four-inductions") != nullptr);
}

TEST_CASE("ring parsing") {
  CHECK(parse_ring("Fp", 3).name() == "F3");
  CHECK(parse_ring("F3:2", 3).name() == "F3^2");
  CHECK(parse_ring("Fp:2", 2).k == 2);
  CHECK(parse_ring("Q", 3).is_field());
  CHECK_FALSE(parse_ring("Z", 3).is_field());
  CHECK(parse_ring("Zpm:3", 2).name() == "Z/2^3");
  CHECK_THROWS_AS(parse_ring("F5", 3), Error);
  CHECK_THROWS_AS(parse_ring("Fp:9", 3), ScopeError);
  CHECK_THROWS_AS(parse_ring("R", 3), Error);
}

TEST_CASE("suites respect their ring requirements") {
  CHECK(find_suite("lengths")->accepts(parse_ring("Z", 2)));
  CHECK_FALSE(find_suite("induction")->accepts(parse_ring("Z", 2)));
  CHECK(find_suite("induction")->accepts(parse_ring("Q", 2)));
  CHECK_FALSE(find_suite("adjoint")->accepts(parse_ring("Q", 2)));
}

TEST_CASE("reports are reproducible for a fixed seed") {
  RunOptions o;
  o.preset = "sl2-p3";
  o.seed = 11;
  auto a = report_jsonl(run_suite("basis", o));
  auto b = report_jsonl(run_suite("basis", o));
  CHECK(a == b);
  auto j = nlohmann::json::parse(a.substr(0, a.find('\n')));
  CHECK(j["status"] == "pass");
}

TEST_CASE("unknown suites and presets give error reports") {
  RunOptions o;
  auto r = run_suite("no-such-suite", o);
  CHECK(r.status == "error");
  o.preset = "no-such-preset";
  CHECK(run_suite("lengths", o).status == "error");
}

TEST_CASE("structure cache detects corruption and rebuilds") {
  auto dir = fs::temp_directory_path() / "prophecke-cache-test";
  fs::remove_all(dir);
  auto cfg = load_config("sl2-p3");
  auto G = std::make_shared<ProPWeyl>(cfg);
  Hecke<QQ> H(std::make_shared<AffSub>(G, G->roots().full_mask()), QQ{});
  auto first = structure_cache(dir.string(), cfg, H, 3);
  CHECK_FALSE(first.hit);
  auto second = structure_cache(dir.string(), cfg, H, 3);
  CHECK(second.hit);
  CHECK(second.table == first.table);
  {
    std::ofstream out(first.path, std::ios::app);
    out << "garbage\n";
  }
  auto third = structure_cache(dir.string(), cfg, H, 3);
  CHECK(third.rebuilt);
  CHECK(third.table == first.table);
  fs::remove_all(dir);
}

TEST_CASE("fast suites pass on SL2") {
  for (auto& s : suites()) {
    if (s.alias) continue;
    RunOptions o;
    o.preset = "sl2-p2";
    auto r = run_suite(s.name, o);
    CAPTURE(s.name);
    CAPTURE(r.error);
    CHECK(r.ok());
    CHECK(r.checked > 0);
  }
}
