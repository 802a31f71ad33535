// SPDX-License-Identifier: Apache-2.0
// Acceptance run: twelve criteria, one line each, exact arithmetic throughout.
#include <chrono>
#include <cstdio>
#include <iostream>
#include <string>
#include <vector>

#include "prophecke/harness.hpp"

using namespace ph;

namespace {

struct Run {
  std::string suite, preset, ring;
};

struct Criterion {
  int id;
  std::string title;
  std::vector<Run> runs;
  double limit;  // seconds for all runs together
  // Extra per-run condition on the report, if any.
  std::function<bool(const SuiteReport&)> extra = nullptr;
  std::string extra_name;
};

const std::vector<std::string> kAll = {"sl2-p2", "sl2-p3",   "pgl2-p3", "a1xa1-p2",
                                       "a1xa1-p3", "a2-p2", "sl3-p2",  "sl3-p3"};

std::vector<Run> over(const std::string& suite, const std::vector<std::string>& presets,
                      const std::vector<std::string>& rings = {"Fp"}) {
  std::vector<Run> out;
  for (auto& p : presets)
    for (auto& r : rings) out.push_back({suite, p, r});
  return out;
}

}  // namespace

int main() {
  std::vector<Criterion> cs = {
      {1, "length oracle equivalence (affine A1 to 6, A2 and A1xA1 to 5)", over("lengths", kAll), 10},
      {2, "algebra soundness over Fp and Q", over("algebra", kAll, {"Fp", "Q"}), 30},
      {3, "basis suite: unitriangularity, product formula, values of E_o", over("basis", kAll, {"Fp", "Q"}), 30},
      {4, "length lemmas over the box |x| <= 3", over("length-lemmas", kAll), 60},
      {5, "j maps, image of E, doubly signed elements, localization", over("jmaps", kAll), 30},
      {6, "induction dimensions, transitivity, four-induction comparisons", over("induction", kAll), 60},
      {7, "Bruhat filtration, sum and intersection", over("filtration", kAll), 60},
      {8, "Steinberg characterization and tensor decomposition", over("steinberg", kAll), 60},
      {9, "adjoints of inductions, extensions and Steinberg modules; R-exactness", over("adjoint", kAll), 120},
      {10, "supersingular: z_O centrality, power identity, vanishing adjoints",
       over("supersingular", {"sl2-p2", "sl2-p3", "sl3-p2", "sl3-p3"}), 60,
       [](const SuiteReport& r) {
         return r.notes.contains("supersingular_characters") && r.notes["supersingular_characters"].get<int>() > 0;
       },
       "supersingular characters found"},
      {11, "simple modules I(P, sigma, Q): simplicity, L_R and R_R", over("simple-modules", kAll), 180,
       [](const SuiteReport& r) { return r.notes.contains("triples") && r.notes["triples"].get<int>() > 0; },
       "triples tested"},
      {12, "adjunction Hom dimensions on 50 pairs per preset", over("adjunction", kAll), 60},
  };

  int failed = 0;
  for (auto& c : cs) {
    long long checked = 0, bad = 0;
    std::string first_problem;
    auto t0 = std::chrono::steady_clock::now();
    for (auto& r : c.runs) {
      RunOptions o;
      o.preset = r.preset;
      o.ring = r.ring;
      auto rep = run_suite(r.suite, o);
      checked += rep.checked;
      bad += rep.failed;
      std::string where = r.suite + "/" + r.preset + "/" + rep.ring;
      if (!rep.ok() && first_problem.empty())
        first_problem = where + (rep.error.empty() ? "" : ": " + rep.error) +
                        (rep.counterexamples.empty() ? "" : ": " + rep.counterexamples[0].dump());
      if (rep.ok() && c.extra && !c.extra(rep) && first_problem.empty()) first_problem = where + ": no " + c.extra_name;
      if (!rep.ok() && rep.failed == 0) ++bad;
    }
    double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    bool in_time = secs < c.limit;
    bool ok = first_problem.empty() && in_time;
    if (!ok) ++failed;
    char buf[128];
    std::snprintf(buf, sizeof buf, "%.2fs/%.0fs", secs, c.limit);
    std::cout << "criterion " << c.id << ": " << (ok ? "PASS" : "FAIL") << "  " << c.title << "  [checked " << checked
              << ", failed " << bad << ", " << buf << "]";
    if (!in_time) std::cout << "  over time limit";
    if (!first_problem.empty()) std::cout << "  first problem: " << first_problem.substr(0, 400);
    std::cout << std::endl;
  }
  std::cout << (failed ? "acceptance: FAIL (" + std::to_string(failed) + " criteria)" : "acceptance: PASS") << "\n";
  return failed ? 1 : 0;
}
