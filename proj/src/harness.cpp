// SPDX-License-Identifier: Apache-2.0
#include "prophecke/harness.hpp"

#include <chrono>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <set>
#include <sstream>

namespace ph {

using nlohmann::json;

std::string RingSpec::name() const {
  switch (kind) {
    case Z: return "Z";
    case Q: return "Q";
    case F: return k == 1 ? "F" + std::to_string(p) : "F" + std::to_string(p) + "^" + std::to_string(k);
    case Zpm: return "Z/" + std::to_string(p) + "^" + std::to_string(m);
  }
  return "?";
}

RingSpec parse_ring(const std::string& s, int default_p) {
  RingSpec r;
  r.p = default_p;
  auto tail_int = [&](const std::string& t, const std::string& what) {
    try {
      size_t pos = 0;
      int v = std::stoi(t, &pos);
      if (pos != t.size()) throw std::invalid_argument(t);
      return v;
    } catch (const std::exception&) {
      throw Error("ring " + s + ": bad " + what);
    }
  };
  if (s == "Z") {
    r.kind = RingSpec::Z;
  } else if (s == "Q") {
    r.kind = RingSpec::Q;
  } else if (s.rfind("Zpm", 0) == 0) {
    r.kind = RingSpec::Zpm;
    if (s.size() > 3) {
      require(s[3] == ':', "ring " + s + ": expected Zpm:m");
      r.m = tail_int(s.substr(4), "exponent");
    }
  } else if (!s.empty() && s[0] == 'F') {
    r.kind = RingSpec::F;
    std::string rest = s.substr(1);
    auto colon = rest.find(':');
    std::string head = rest.substr(0, colon);
    if (head != "p") r.p = tail_int(head, "characteristic");
    if (colon != std::string::npos) r.k = tail_int(rest.substr(colon + 1), "degree");
    require(r.p == default_p, "ring " + s + ": characteristic must be that of the residue field (" +
                                  std::to_string(default_p) + ")");
    if (r.k < 1 || r.k > 4) throw ScopeError("ring " + s + ": degree must be 1..4");
  } else {
    throw Error("unknown ring " + s + " (expected Z, Q, Fp[:k] or Zpm[:m])");
  }
  return r;
}

void Recorder::check(bool ok, const std::string& what, const json& payload) {
  ++checked_;
  if (ok) return;
  ++failed_;
  if (failures_.size() < 64) {
    json j{{"check", what}};
    if (!payload.is_null()) j["data"] = payload;
    failures_.push_back(std::move(j));
  }
}

const std::vector<SuiteInfo>& suites() {
  using N = SuiteInfo::Needs;
  static const std::vector<SuiteInfo> s = {
      {"lengths", "length formula against alcove distance; Bruhat order against subwords", suite_lengths},
      {"algebra", "associativity, quadratic and braid relations, products against the rewriting oracle",
       suite_algebra},
      {"basis", "unitriangular bases T*, E_o, E_-; product formula; values of E_o on Lambda(1) and n_s; iota",
       suite_basis},
      {"length-lemmas", "length lemmas on Lambda(1), W_0 and P-signed elements", suite_length_lemmas},
      {"jmaps", "j maps: homomorphy, image of E, doubly signed elements, central localizing elements", suite_jmaps},
      {"modules", "module twists, extensions and the commutation of twists", suite_modules, N::Field},
      {"induction", "dimension of I_P, transitivity, comparison of the four inductions, exactness", suite_induction,
       N::Field},
      {"four-inductions", "dimension of I_P, transitivity, comparison of the four inductions, exactness",
       suite_induction, N::Field, true},
      {"filtration", "Bruhat filtration: A_{o_-}-stability, subquotient action, sum and intersection",
       suite_filtration, N::Field},
      {"steinberg", "generalized Steinberg modules: characterization and tensor decomposition", suite_steinberg,
       N::Field},
      {"adjoint", "L_P and R_P against induction, extensions and Steinberg modules; R-exactness", suite_adjoint,
       N::CharP},
      {"supersingular", "z_O: centrality, power identity; vanishing of adjoints on supersingular modules",
       suite_supersingular, N::CharP},
      {"simple-modules", "simplicity of I(P, sigma, Q) and the adjoint case table", suite_simple_modules, N::CharP},
      {"adjunction", "Hom dimensions for the adjunctions L_P -| I_P -| R_P", suite_adjunction, N::Field},
  };
  return s;
}

const SuiteInfo* find_suite(const std::string& name) {
  for (auto& s : suites())
    if (s.name == name) return &s;
  return nullptr;
}

SuiteReport run_suite(const std::string& name, const RunOptions& opt) {
  SuiteReport r;
  r.suite = name;
  r.preset = opt.preset;
  r.seed = opt.seed;
  auto t0 = std::chrono::steady_clock::now();
  Recorder rec;
  try {
    const SuiteInfo* info = find_suite(name);
    require(info != nullptr, "unknown suite " + name);
    r.statement = info->statement;
    SuiteContext c;
    c.preset = opt.preset;
    c.cfg = load_config(opt.preset);
    c.G = std::make_shared<ProPWeyl>(c.cfg);
    c.ring = parse_ring(opt.ring, c.G->p());
    c.seed = opt.seed;
    c.cache_dir = opt.cache_dir;
    c.rec = &rec;
    r.digest = config_digest(c.cfg);
    r.ring = c.ring.name();
    info->run(c);
    r.status = rec.failed() ? "fail" : "pass";
  } catch (const std::exception& e) {
    r.status = "error";
    r.error = e.what();
  }
  if (r.ring.empty()) r.ring = opt.ring;
  r.checked = rec.checked();
  r.failed = rec.failed();
  r.passed = r.checked - r.failed;
  r.counterexamples = rec.failures();
  r.notes = rec.notes();
  r.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  return r;
}

std::string report_jsonl(const SuiteReport& r, bool with_time) {
  std::ostringstream os;
  for (auto& c : r.counterexamples) {
    json j{{"type", "counterexample"}, {"suite", r.suite}, {"preset", r.preset}, {"ring", r.ring}, {"seed", r.seed}};
    j["instance"] = c;
    os << j.dump() << "\n";
  }
  json s{{"type", "summary"},     {"suite", r.suite},     {"statement", r.statement}, {"preset", r.preset},
         {"digest", r.digest},    {"ring", r.ring},       {"seed", r.seed},           {"version", kVersion},
         {"checked", r.checked},  {"passed", r.passed},   {"failed", r.failed},       {"status", r.status}};
  if (!r.notes.empty()) s["notes"] = r.notes;
  if (!r.error.empty()) s["error"] = r.error;
  if (with_time) s["seconds"] = std::round(r.seconds * 1000) / 1000;
  os << s.dump() << "\n";
  return os.str();
}

// ---- cache -------------------------------------------------------------------

std::string fnv_digest(const std::string& s) {
  std::uint64_t h = 1469598103934665603ull;
  for (unsigned char ch : s) h = (h ^ ch) * 1099511628211ull;
  std::ostringstream os;
  os << std::hex << std::setw(16) << std::setfill('0') << h;
  return os.str();
}

template <class R>
CacheResult structure_cache(const std::string& dir, const GroupConfig& cfg, const Hecke<R>& H, int bound) {
  namespace fs = std::filesystem;
  const auto& A = H.sub();
  const auto& G = A.group();
  std::string key = fnv_digest(config_digest(cfg) + "|" + H.ring().name() + "|" + H.ring().str(H.q()) + "|" +
                               std::to_string(A.mask()) + "|" + std::to_string(bound) + "|" + kVersion);
  CacheResult res;
  res.path = (fs::path(dir) / (key + ".txt")).string();

  std::vector<std::pair<std::string, std::string>> table;
  {
    std::vector<WElt> level{G.identity()}, all{G.identity()};
    std::set<WElt> seen(all.begin(), all.end());
    for (int l = 0; l < bound; ++l) {
      std::vector<WElt> next;
      for (auto& w : level)
        for (int j = 0; j < A.num_gens(); ++j) {
          auto st = A.step(w, j);
          if (st.up && seen.insert(st.prod).second) next.push_back(st.prod);
        }
      all.insert(all.end(), next.begin(), next.end());
      level = std::move(next);
    }
    std::sort(all.begin(), all.end());
    for (auto& w : all)
      for (int j = 0; j < A.num_gens(); ++j)
        table.emplace_back(G.str(w) + " * " + A.gens()[j].name, H.str(H.mul(H.T(w), H.T(A.gens()[j].e))));
  }
  std::string body;
  for (auto& [k, v] : table) body += k + "\t" + v + "\n";

  std::error_code ec;
  fs::create_directories(dir, ec);
  if (fs::exists(res.path)) {
    std::ifstream in(res.path);
    std::string magic, dline, rest;
    std::getline(in, magic);
    std::getline(in, dline);
    std::stringstream ss;
    ss << in.rdbuf();
    rest = ss.str();
    if (magic == "prop-hecke structure cache v1" && dline == "digest " + fnv_digest(rest)) {
      res.hit = true;
      std::istringstream ls(rest);
      std::string line;
      while (std::getline(ls, line)) {
        auto tab = line.find('\t');
        if (tab != std::string::npos) res.table.emplace_back(line.substr(0, tab), line.substr(tab + 1));
      }
      return res;
    }
    res.rebuilt = true;
  }
  std::ofstream out(res.path, std::ios::trunc);
  require(bool(out), "cannot write cache file " + res.path);
  out << "prop-hecke structure cache v1\n" << "digest " << fnv_digest(body) << "\n" << body;
  res.table = std::move(table);
  return res;
}

template CacheResult structure_cache(const std::string&, const GroupConfig&, const Hecke<ZZ>&, int);
template CacheResult structure_cache(const std::string&, const GroupConfig&, const Hecke<QQ>&, int);
template CacheResult structure_cache(const std::string&, const GroupConfig&, const Hecke<GF>&, int);
template CacheResult structure_cache(const std::string&, const GroupConfig&, const Hecke<Zpm>&, int);

// ---- module files ------------------------------------------------------------

namespace {

GF::E parse_elem(const GF& f, const std::string& s) { return f.parse(s); }
QQ::E parse_elem(const QQ&, const std::string& s) { return QQ::E(s); }

}  // namespace

template <class F>
FinModule<F> module_from_json(const json& j, const Algebras<F>& alg) {
  try {
    const F& f = alg.field();
    require(j.at("field").get<std::string>() == f.name(),
            "module file: field " + j.at("field").get<std::string>() + " differs from " + f.name());
    require(j.at("group").get<std::string>() == alg.group().config().name,
            "module file: group " + j.at("group").get<std::string>() + " differs from " + alg.group().config().name);
    RootMask mask = j.at("mask").get<RootMask>();
    require((mask & ~alg.full()) == 0, "module file: mask out of range");
    auto H = alg.hecke(mask);
    int dim = j.at("dim").get<int>();
    require(dim >= 0, "module file: negative dimension");
    auto mat = [&](const json& a) {
      Mat<F> m(dim, dim, f.zero());
      require(a.is_array() && int(a.size()) == dim, "module file: matrix has wrong row count");
      for (int i = 0; i < dim; ++i) {
        require(a[i].is_array() && int(a[i].size()) == dim, "module file: matrix has wrong column count");
        for (int k = 0; k < dim; ++k) m(i, k) = parse_elem(f, a[i][k].get<std::string>());
      }
      return m;
    };
    std::vector<Mat<F>> S, Z, Om;
    for (auto& g : H->sub().gens()) {
      require(j.at("generators").contains(g.name), "module file: missing generator " + g.name);
      S.push_back(mat(j["generators"][g.name]));
    }
    for (auto& z : j.at("torsion")) Z.push_back(mat(z));
    for (auto& o : j.at("omega")) Om.push_back(mat(o));
    FinModule<F> m(H, dim, S, Z, Om, j.value("provenance", std::string("file")));
    auto bad = m.validate();
    require(bad.empty(), "module file: violates " + (bad.empty() ? std::string() : bad[0]));
    return m;
  } catch (const json::exception& e) {
    throw Error(std::string("module file: ") + e.what());
  }
}

template FinModule<GF> module_from_json(const json&, const Algebras<GF>&);
template FinModule<QQ> module_from_json(const json&, const Algebras<QQ>&);

}  // namespace ph
