// SPDX-License-Identifier: Apache-2.0
// Verification suites, their registry, JSON-lines reports and the structure-constant cache.
#pragma once

#include <cstdint>
#include <functional>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "json.hpp"
#include "prophecke/config.hpp"
#include "prophecke/functors.hpp"

namespace ph {

inline constexpr const char* kVersion = "1.0.0";

// Coefficient ring chosen on the command line: Z, Q, F_{p^k}, Z/p^m.
struct RingSpec {
  enum Kind { Z, Q, F, Zpm } kind = F;
  int p = 0, k = 1, m = 2;
  std::string name() const;
  bool is_field() const { return kind == Q || kind == F; }
  bool char_p() const { return kind == F; }
};
// Accepts Z, Q, Fp, Fp:k, F<p>, F<p>:k, Zpm, Zpm:m; p defaults to the residue characteristic.
RingSpec parse_ring(const std::string& s, int default_p);

// Collects the outcome of every checked instance of one suite.
class Recorder {
 public:
  void check(bool ok, const std::string& what, const nlohmann::json& payload = nullptr);
  void note(const std::string& key, nlohmann::json value) { notes_[key] = std::move(value); }
  long long checked() const { return checked_; }
  long long failed() const { return failed_; }
  const std::vector<nlohmann::json>& failures() const { return failures_; }
  const nlohmann::json& notes() const { return notes_; }

 private:
  long long checked_ = 0, failed_ = 0;
  std::vector<nlohmann::json> failures_;
  nlohmann::json notes_ = nlohmann::json::object();
};

struct SuiteContext {
  std::string preset;
  GroupConfig cfg;
  std::shared_ptr<const ProPWeyl> G;
  RingSpec ring;
  std::uint64_t seed = 0;
  std::optional<std::string> cache_dir;
  Recorder* rec = nullptr;
  void check(bool ok, const std::string& what, const nlohmann::json& payload = nullptr) const {
    rec->check(ok, what, payload);
  }
};

struct SuiteInfo {
  enum Needs { AnyRing, Field, CharP };
  std::string name;
  std::string statement;  // what the suite verifies
  std::function<void(const SuiteContext&)> run;
  Needs needs = AnyRing;
  bool alias = false;  // another name for a suite already listed
  bool accepts(const RingSpec& r) const {
    return needs == AnyRing || (needs == Field && r.is_field()) || (needs == CharP && r.char_p());
  }
};

const std::vector<SuiteInfo>& suites();
const SuiteInfo* find_suite(const std::string& name);

struct SuiteReport {
  std::string suite, statement, preset, digest, ring, status;  // status: pass | fail | error
  std::uint64_t seed = 0;
  long long checked = 0, passed = 0, failed = 0;
  std::vector<nlohmann::json> counterexamples;
  nlohmann::json notes;
  std::string error;
  double seconds = 0;
  bool ok() const { return status == "pass"; }
};

struct RunOptions {
  std::string preset = "sl2-p3";
  std::string ring = "Fp";
  std::uint64_t seed = 0;
  std::optional<std::string> cache_dir;
};

SuiteReport run_suite(const std::string& name, const RunOptions& opt);
// One object per failed instance, then one summary object. Wall time only when asked.
std::string report_jsonl(const SuiteReport& r, bool with_time = false);

// ---- structure-constant cache ----------------------------------------------

// Products T_w T_g for all w with l(w) <= bound and all affine simple lifts g, in the canonical text format.
// Stored as <dir>/<key>.txt with a digest line; a corrupted file is detected, discarded and rebuilt.
struct CacheResult {
  std::string path;
  bool hit = false;      // a valid file was found
  bool rebuilt = false;  // a file was present but failed its digest
  std::vector<std::pair<std::string, std::string>> table;  // (key, product)
};
template <class R>
CacheResult structure_cache(const std::string& dir, const GroupConfig& cfg, const Hecke<R>& H, int bound);
std::string fnv_digest(const std::string& s);

// ---- suite bodies (one per statement family) -------------------------------

void suite_lengths(const SuiteContext& c);
void suite_algebra(const SuiteContext& c);
void suite_basis(const SuiteContext& c);
void suite_length_lemmas(const SuiteContext& c);
void suite_jmaps(const SuiteContext& c);
void suite_modules(const SuiteContext& c);
void suite_induction(const SuiteContext& c);
void suite_filtration(const SuiteContext& c);
void suite_steinberg(const SuiteContext& c);
void suite_adjoint(const SuiteContext& c);
void suite_supersingular(const SuiteContext& c);
void suite_simple_modules(const SuiteContext& c);
void suite_adjunction(const SuiteContext& c);

// ---- module files -------------------------------------------------------------

// Inverse of module_to_json; the algebra is taken from alg by the recorded mask.
template <class F>
FinModule<F> module_from_json(const nlohmann::json& j, const Algebras<F>& alg);

}  // namespace ph
