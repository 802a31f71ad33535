// SPDX-License-Identifier: Apache-2.0
// prop-hecke: verification suites and module constructions from the command line.
#include <fstream>
#include <iostream>
#include <sstream>

#include "CLI11.hpp"
#include "prophecke/config.hpp"
#include "prophecke/harness.hpp"

using namespace ph;
using nlohmann::json;

namespace {

struct Common {
  std::string preset = "sl2-p3";
  std::string ring = "Fp";
  std::uint64_t seed = 0;
};

void add_common(CLI::App* app, Common& c) {
  app->add_option("--preset", c.preset, "preset name or path to a group configuration (JSON)");
  app->add_option("--ring", c.ring, "coefficient ring: Q, Fp[:k], Z, Zpm[:m]");
  app->add_option("--seed", c.seed, "random seed");
}

RootMask parse_mask(const std::string& s, RootMask full) {
  if (s == "G" || s == "all") return full;
  if (s == "B" || s == "none") return 0;
  try {
    size_t pos = 0;
    long v = std::stol(s, &pos, 0);
    if (pos == s.size() && v >= 0 && (RootMask(v) & ~full) == 0) return RootMask(v);
  } catch (const std::exception&) {
  }
  throw Error("bad subset of simple roots: " + s + " (a bit mask, or G, or B)");
}

std::string read_file(const std::string& path) {
  std::ifstream in(path);
  require(bool(in), "cannot read " + path);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void emit(const std::string& out, const std::string& text) {
  if (out.empty()) {
    std::cout << text;
    if (!text.empty() && text.back() != '\n') std::cout << "\n";
    return;
  }
  std::ofstream f(out);
  require(bool(f), "cannot write " + out);
  f << text;
}

// Runs fn with a field built from the ring spec: GF for Fp[:k], QQ for Q.
template <class Fn>
void with_module_field(const RingSpec& r, Fn&& fn) {
  if (r.kind == RingSpec::F)
    fn(GF(r.p, r.k));
  else if (r.kind == RingSpec::Q)
    fn(QQ{});
  else
    throw ScopeError("module constructions need a field (Q or Fp[:k]), got " + r.name());
}

// A module from --module FILE or --character K (over the Levi --P).
struct ModuleArgs {
  std::string file;
  int character = -1;
  std::string P = "G";
};

void add_module_args(CLI::App* app, ModuleArgs& m, const std::string& levi_help) {
  app->add_option("--module", m.file, "module file (JSON, as written by this tool)");
  app->add_option("--character", m.character, "index into the brute-force character list instead of --module");
  app->add_option("--P", m.P, levi_help);
}

template <class F>
FinModule<F> load_module(const ModuleArgs& m, const Algebras<F>& A) {
  if (!m.file.empty()) return module_from_json(json::parse(read_file(m.file)), A);
  require(m.character >= 0, "give --module FILE or --character K");
  auto cs = all_characters(A.hecke(parse_mask(m.P, A.full())));
  require(m.character < int(cs.size()),
          "character index out of range (" + std::to_string(cs.size()) + " characters)");
  return cs[m.character];
}

template <class F>
json certificate(const FinModule<F>& m) {
  auto bad = m.validate();
  return json{{"valid", bad.empty()}, {"violations", bad}, {"dim", m.dim()}, {"mask", m.mask()}};
}

template <class F>
std::string module_with_cert(const FinModule<F>& m, json cert) {
  json out{{"module", json::parse(module_to_json(m))}, {"certificate", std::move(cert)}};
  return out.dump(2) + "\n";
}

struct Env {
  GroupConfig cfg;
  std::shared_ptr<ProPWeyl> G;
  RingSpec ring;
};

Env make_env(const Common& c) {
  Env e;
  e.cfg = load_config(c.preset);
  e.G = std::make_shared<ProPWeyl>(e.cfg);
  e.ring = parse_ring(c.ring, e.G->p());
  return e;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"prop-hecke: pro-p Iwahori Hecke algebras, parabolic induction and its adjoints"};
  app.set_version_flag("--version", std::string(kVersion));
  app.require_subcommand(1);

  // verify
  Common vc;
  std::string suite = "all", report, cache;
  bool timing = false;
  auto* verify = app.add_subcommand("verify", "run verification suites");
  add_common(verify, vc);
  verify->add_option("--suite", suite, "suite name or 'all'");
  verify->add_option("--report", report, "append JSON-lines report to this file");
  verify->add_option("--cache", cache, "directory for the structure-constant cache");
  verify->add_flag("--time", timing, "record wall time in the report");

  auto* list = app.add_subcommand("suites", "list the registered suites");

  // mul
  Common mc;
  std::string a_text, b_text, basis = "T";
  int orient = 0;
  auto* mul = app.add_subcommand("mul", "multiply two elements of H");
  add_common(mul, mc);
  mul->add_option("a", a_text, "element, e.g. '1 * [1;0;0]'")->required();
  mul->add_option("b", b_text, "element")->required();
  mul->add_option("--basis", basis, "print coordinates in T, Tstar, Eo, Eminus or Eprime");
  mul->add_option("--orientation", orient, "orientation index for Eo");

  // induce
  Common ic;
  ModuleArgs im;
  std::string iq = "G", variant = "I", iout;
  auto* induce = app.add_subcommand("induce", "parabolic induction I^Q_P or I'^Q_P");
  add_common(induce, ic);
  add_module_args(induce, im, "Levi of the character (bit mask, G or B)");
  induce->add_option("--Q", iq, "target Levi (default G)");
  induce->add_option("--variant", variant, "I or I'");
  induce->add_option("--out", iout, "output file");

  // steinberg
  Common sc;
  ModuleArgs sm;
  std::string sq, sp0 = "", sout;
  auto* stein = app.add_subcommand("steinberg", "generalized Steinberg module St^{P0}_Q(sigma)");
  add_common(stein, sc);
  add_module_args(stein, sm, "Levi of the character (bit mask, G or B)");
  stein->add_option("--Q", sq, "Q with P <= Q <= P(sigma)")->required();
  stein->add_option("--P0", sp0, "P0 (default P(sigma))");
  stein->add_option("--out", sout, "output file");

  // adjoint
  Common ac;
  ModuleArgs am;
  std::string side = "L", ap, aout;
  auto* adj = app.add_subcommand("adjoint", "left (L_P) or right (R_P) adjoint of induction");
  add_common(adj, ac);
  add_module_args(adj, am, "Levi of the input character (bit mask, G or B)");
  adj->add_option("--side", side, "L or R");
  adj->add_option("--to", ap, "target Levi P")->required();
  adj->add_option("--out", aout, "output file");

  // classify
  Common cc;
  ModuleArgs cm;
  std::string cq, cout_file;
  auto* classify = app.add_subcommand("classify", "supersingular characters and the simple modules I(P, sigma, Q)");
  add_common(classify, cc);
  add_module_args(classify, cm, "Levi of the supersingular character");
  classify->add_option("--Q", cq, "with --character/--module: build I(P, sigma, Q)");
  classify->add_option("--out", cout_file, "output file");

  CLI11_PARSE(app, argc, argv);

  try {
    if (*list) {
      for (auto& s : suites())
        std::cout << s.name << (s.alias ? " (alias)" : "") << "\t" << s.statement << "\n";
      return 0;
    }

    if (*verify) {
      std::vector<std::string> names;
      RunOptions opt;
      opt.preset = vc.preset;
      opt.ring = vc.ring;
      opt.seed = vc.seed;
      if (!cache.empty()) opt.cache_dir = cache;
      RingSpec ring = parse_ring(vc.ring, ProPWeyl(load_config(vc.preset)).p());
      if (suite == "all") {
        for (auto& s : suites())
          if (!s.alias) {
            if (s.accepts(ring))
              names.push_back(s.name);
            else
              std::cerr << "skip " << s.name << ": needs " << (s.needs == SuiteInfo::CharP ? "Fp[:k]" : "a field")
                        << "\n";
          }
      } else {
        require(find_suite(suite) != nullptr, "unknown suite " + suite + " (see 'prop-hecke suites')");
        names.push_back(suite);
      }
      std::ofstream rep;
      if (!report.empty()) {
        rep.open(report, std::ios::app);
        require(bool(rep), "cannot open report " + report);
      }
      bool all_ok = true;
      for (auto& n : names) {
        auto r = run_suite(n, opt);
        all_ok = all_ok && r.ok();
        std::cout << (r.ok() ? "PASS " : (r.status == "error" ? "ERROR " : "FAIL ")) << n << " preset=" << r.preset
                  << " ring=" << r.ring << " checked=" << r.checked << " failed=" << r.failed;
        if (timing) std::cout << " seconds=" << r.seconds;
        std::cout << (r.error.empty() ? "" : " error: " + r.error) << "\n";
        for (size_t i = 0; i < r.counterexamples.size() && i < 3; ++i)
          std::cout << "  " << r.counterexamples[i].dump() << "\n";
        if (rep) rep << report_jsonl(r, timing);
      }
      return all_ok ? 0 : 1;
    }

    if (*mul) {
      Env e = make_env(mc);
      auto A = std::make_shared<AffSub>(e.G, e.G->roots().full_mask());
      auto run = [&](auto ring) {
        Hecke<decltype(ring)> H(A, ring);
        auto p = H.mul(H.parse(a_text), H.parse(b_text));
        Basis b = basis == "T" ? Basis::T
                  : basis == "Tstar" ? Basis::Tstar
                  : basis == "Eo" ? Basis::Eo
                  : basis == "Eminus" ? Basis::Eminus
                  : basis == "Eprime" ? Basis::Eprime
                                      : throw Error("unknown basis " + basis);
        std::cout << H.str(b == Basis::T ? p : H.coords(p, b, orient)) << "\n";
      };
      switch (e.ring.kind) {
        case RingSpec::Z: run(ZZ{}); break;
        case RingSpec::Q: run(QQ{}); break;
        case RingSpec::F: run(GF(e.ring.p, e.ring.k)); break;
        case RingSpec::Zpm: run(Zpm(e.ring.p, e.ring.m)); break;
      }
      return 0;
    }

    if (*induce) {
      Env e = make_env(ic);
      int rc = 0;
      with_module_field(e.ring, [&](auto f) {
        using F = decltype(f);
        Algebras<F> A(e.G, f);
        auto sigma = load_module(im, A);
        RootMask Q = parse_mask(iq, A.full());
        require((sigma.mask() & ~Q) == 0, "induce: the module's Levi must lie in Q");
        Induced<F> I(A, sigma, Q, variant == "I" ? Variant::I : Variant::Iprime);
        json cert = certificate(I.module());
        int expect = int(A.parabolic(sigma.mask(), Q)->min_reps().size()) * sigma.dim();
        cert["dimension_formula"] = expect == I.dim();
        cert["variant"] = variant;
        if (!cert["valid"].get<bool>() || !cert["dimension_formula"].get<bool>()) rc = 1;
        emit(iout, module_with_cert(I.module(), cert));
      });
      return rc;
    }

    if (*stein) {
      Env e = make_env(sc);
      int rc = 0;
      with_module_field(e.ring, [&](auto f) {
        using F = decltype(f);
        Algebras<F> A(e.G, f);
        auto sigma = load_module(sm, A);
        RootMask D = delta_set(sigma, A);
        RootMask Q = parse_mask(sq, A.full());
        RootMask P0 = sp0.empty() ? D : parse_mask(sp0, A.full());
        auto st = steinberg(A, sigma, Q, P0);
        json cert = certificate(st.module);
        cert["P_sigma"] = D;
        cert["larger"] = st.larger;
        cert["induced_dim"] = st.big->dim();
        cert["image_rank"] = st.image.rows;
        if (!cert["valid"].get<bool>()) rc = 1;
        emit(sout, module_with_cert(st.module, cert));
      });
      return rc;
    }

    if (*adj) {
      Env e = make_env(ac);
      int rc = 0;
      with_module_field(e.ring, [&](auto f) {
        using F = decltype(f);
        Algebras<F> A(e.G, f);
        auto pi = load_module(am, A);
        RootMask P = parse_mask(ap, A.full());
        require(side == "L" || side == "R", "--side must be L or R");
        auto r = side == "L" ? left_adjoint(A, pi, P) : right_adjoint(A, pi, P);
        json cert = certificate(r.module);
        cert["side"] = side;
        cert["carrier_rank"] = r.carrier.rows;
        if (!cert["valid"].get<bool>()) rc = 1;
        emit(aout, module_with_cert(r.module, cert));
      });
      return rc;
    }

    if (*classify) {
      Env e = make_env(cc);
      require(e.ring.char_p(), "classify needs a field of characteristic p (Fp[:k])");
      int rc = 0;
      with_module_field(e.ring, [&](auto f) {
        using F = decltype(f);
        Algebras<F> A(e.G, f);
        if (!cq.empty()) {
          auto sigma = load_module(cm, A);
          auto classes = default_classes(sigma, A);
          json cert;
          cert["supersingular_relative_to"] = json::array();
          for (auto& l : classes) cert["supersingular_relative_to"].push_back(e.G->str(l));
          bool ss = is_supersingular(sigma, classes);
          cert["supersingular"] = ss;
          if (!ss) std::cerr << "warning: sigma is not supersingular on the tested classes\n";
          auto I = simple_module(A, sigma, parse_mask(cq, A.full()), A.full());
          json c2 = certificate(I);
          c2.update(cert);
          c2["absolutely_irreducible"] = is_absolutely_irreducible(I);
          if (!c2["valid"].get<bool>() || !c2["absolutely_irreducible"].get<bool>()) rc = 1;
          emit(cout_file, module_with_cert(I, c2));
          return;
        }
        std::ostringstream os;
        for (RootMask P : A.between(0, A.full())) {
          auto cs = all_characters(A.hecke(P));
          for (size_t i = 0; i < cs.size(); ++i) {
            if (!is_supersingular(cs[i], default_classes(cs[i], A))) continue;
            RootMask D = delta_set(cs[i], A);
            for (RootMask Q : A.between(P, D)) {
              auto I = simple_module(A, cs[i], Q, A.full());
              bool irr = is_absolutely_irreducible(I);
              if (!irr) rc = 1;
              os << "P=" << A.mask_name(P) << " character=" << i << " P(sigma)=" << A.mask_name(D)
                 << " Q=" << A.mask_name(Q) << " dim=" << I.dim() << (irr ? " simple" : " NOT SIMPLE") << "\n";
            }
          }
        }
        emit(cout_file, os.str());
      });
      return rc;
    }
  } catch (const ScopeError& e) {
    std::cerr << "out of scope: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  return 0;
}
