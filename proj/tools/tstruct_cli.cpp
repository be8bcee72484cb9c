// tstruct: command line front end. JSON in, JSON out.
//
// Exit codes: 0 success or pass, 1 property failure, 2 usage or input error.

#include "tstruct/cech.hpp"
#include "tstruct/duality.hpp"
#include "tstruct/json_io.hpp"
#include "tstruct/suites.hpp"

#include <CLI11.hpp>

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>

using namespace tstruct;

namespace {

struct UsageError : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

struct Globals {
  std::uint64_t seed = kDefaultSeed;
  bool seed_given = false;
  bool quiet = false;
};

Json read_json(const std::string& path) {
  std::string text, source = path.empty() || path == "-" ? "<stdin>" : path;
  if (source == "<stdin>") {
    std::ostringstream ss;
    ss << std::cin.rdbuf();
    text = ss.str();
  } else {
    std::ifstream in(path);
    if (!in) throw UsageError("cannot read " + path);
    std::ostringstream ss;
    ss << in.rdbuf();
    text = ss.str();
  }
  return parse_json(text, source);
}

void emit(const Json& j) { std::cout << dump(with_schema(j)) << "\n"; }

std::pair<int, int> parse_window(const std::string& w) {
  auto pos = w.find("..");
  if (pos == std::string::npos) throw UsageError("window must look like a..b");
  int a = 0, b = 0;
  try {
    std::size_t used = 0;
    std::string lo = w.substr(0, pos), hi = w.substr(pos + 2);
    a = std::stoi(lo, &used);
    if (used != lo.size()) throw std::invalid_argument("");
    b = std::stoi(hi, &used);
    if (used != hi.size()) throw std::invalid_argument("");
  } catch (const std::logic_error&) {
    throw UsageError("window must look like a..b");
  }
  if (b < a) throw UsageError("empty window " + w);
  return {a, b};
}

std::vector<Prime> parse_primes(const std::string& s) {
  std::vector<Prime> ps;
  std::stringstream ss(s);
  std::string item;
  while (std::getline(ss, item, ',')) {
    if (item.empty()) continue;
    unsigned long long v = 0;
    try {
      std::size_t used = 0;
      v = std::stoull(item, &used);
      if (used != item.size()) throw UsageError("bad prime");
    } catch (const std::logic_error&) {
      throw UsageError("bad prime '" + item + "'");
    }
    if (!is_prime(v)) throw UsageError("not a prime: " + item);
    ps.push_back(v);
  }
  return ps;
}

Spectrum spectrum_arg(const std::string& s) {
  if (s.empty() || s == "Z") return Spectrum::integers();
  if (s == "chain2") return Spectrum::from_poset(two_chain_poset());
  return spectrum_from_json(read_json(s));
}

CodimFn checked_codim(const Spectrum& s, const CodimFn& d) {
  auto w = validate_codim_fn(s, d);
  if (!w.holds)
    throw UsageError("not a codimension function at " + s.name(w.witness->first) + " < " + s.name(w.witness->second));
  return d;
}

CodimFn codim_from_json(const Spectrum& s, const Json& j) {
  CodimFn d = height_codim(s);
  if (s.is_integers()) {
    if (j.contains("generic")) d.generic = j["generic"].get<int>();
    if (j.contains("maximal")) d.maximal = j["maximal"].get<int>();
    if (j.contains("overrides"))
      for (auto it = j["overrides"].begin(); it != j["overrides"].end(); ++it)
        d.overrides[s.parse_point(it.key()).v] = it.value().get<int>();
  } else if (j.contains("values")) {
    for (auto it = j["values"].begin(); it != j["values"].end(); ++it)
      d.values.at(s.parse_point(it.key()).v) = it.value().get<int>();
  }
  return checked_codim(s, d);
}

CodimFn codim_arg(const Spectrum& s, const std::string& path) {
  return path.empty() ? checked_codim(s, height_codim(s)) : codim_from_json(s, read_json(path));
}

Json profile_json(const Profile& p) {
  Json a = Json::array();
  for (auto& [d, dp] : p) {
    Json local = Json::array();
    for (auto& [q, l] : dp.local) {
      if (l.is_zero()) continue;
      local.push_back({{"p", q}, {"free", l.free}, {"rational", l.rational}, {"prufer", l.prufer}, {"torsion", l.torsion}});
    }
    a.push_back({{"degree", d}, {"rank", dp.rank}, {"local", local}});
  }
  return a;
}

FormalObject restrict_degrees(const FormalObject& x, std::optional<std::pair<int, int>> w) {
  if (!w) return x;
  FormalObject r;
  for (auto& [d, m] : x.degrees())
    if (d >= w->first && d <= w->second) r.add(d, m);
  return r;
}

Profile restrict_degrees(const Profile& p, std::optional<std::pair<int, int>> w) {
  if (!w) return p;
  Profile r;
  for (auto& [d, dp] : p)
    if (d >= w->first && d <= w->second) r[d] = dp;
  return r;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Sp-filtrations, Cousin conditions and t-structure truncations over Z"};
  app.require_subcommand(1);
  app.fallthrough();
  Globals g;
  std::optional<std::uint64_t> seed_opt;
  app.add_option("--seed", seed_opt, "corpus seed (overrides TSTRUCT_SEED)");
  app.add_flag("--quiet", g.quiet, "no progress on stderr");

  std::string filt_path, cx_path, subset_path, codim_path, at, window, primes = "2,3,5", spectrum, engine = "profile",
                                                                    side = "aisle", suite = "all";
  bool strong = false, count_only = false, cofinite = false, weak_only = false, timings = false;
  int lemma = 1, n = 0, cap = 12;
  SuiteConfig scfg;

  auto* cousin = app.add_subcommand("check-cousin", "weak (and optionally strong) Cousin condition");
  cousin->add_option("-f,--filtration", filt_path, "filtration JSON (default stdin)");
  cousin->add_flag("--strong", strong, "also check the converse direction");

  auto* cm = app.add_subcommand("cm", "Cohen-Macaulay filtration of a codimension function");
  cm->add_option("--spectrum", spectrum, "Z, chain2 or a poset JSON file");
  cm->add_option("--codim", codim_path, "codimension function JSON");

  auto* dual = app.add_subcommand("dual", "dual filtration, checked against orthogonality");
  dual->add_option("-f,--filtration", filt_path, "filtration JSON (default stdin)");
  dual->add_option("--codim", codim_path, "codimension function JSON");

  auto* loc = app.add_subcommand("localize", "restriction to the generalizations of a point");
  loc->add_option("-f,--filtration", filt_path, "filtration JSON (default stdin)");
  loc->add_option("--at", at, "point, e.g. (2) or 0")->required();

  auto* census = app.add_subcommand("census", "enumerate sp-filtrations in a window");
  census->add_option("--spectrum", spectrum, "Z, chain2 or a poset JSON file");
  census->add_option("--window", window, "a..b")->required();
  census->add_flag("--count-only", count_only);
  census->add_option("--primes", primes, "comma separated primes (Spec(Z) only)");
  census->add_flag("--cofinite", cofinite, "include cofinite levels (Spec(Z) only)");
  census->add_flag("--weak-only", weak_only, "only weak Cousin filtrations");

  auto* trunc = app.add_subcommand("truncate", "truncation triangle of a finite filtration");
  trunc->add_option("-f,--filtration", filt_path)->required();
  trunc->add_option("-x,--object", cx_path)->required();
  trunc->add_option("--engine", engine)->check(CLI::IsMember({"profile", "cech", "both"}));
  trunc->add_option("--window", window, "report only degrees a..b");
  trunc->add_option("--cap", cap, "initial exponent cap of the oracle");

  auto* member = app.add_subcommand("member", "aisle or co-aisle membership");
  member->add_option("-f,--filtration", filt_path)->required();
  member->add_option("-x,--object", cx_path)->required();
  member->add_option("--side", side)->check(CLI::IsMember({"aisle", "coaisle"}));

  auto* kash = app.add_subcommand("kashiwara", "the two Kashiwara-type criteria");
  kash->add_option("--lemma", lemma)->check(CLI::IsMember({1, 2}));
  kash->add_option("-z,--subset", subset_path)->required();
  kash->add_option("-x,--object", cx_path)->required();
  kash->add_option("-n", n)->required();

  auto* cmcheck = app.add_subcommand("cm-check", "membership in the Cohen-Macaulay aisle, two ways");
  cmcheck->add_option("-x,--object", cx_path, "complex or object JSON (default stdin)");

  auto* verify = app.add_subcommand("verify", "run a property suite");
  verify->add_option("--suite", suite)->check(CLI::IsMember(suite_names()));
  verify->add_option("--complexes", scfg.complexes, "random complexes in the corpus");
  verify->add_option("--pairs", scfg.pairs, "pairs for the Hom-vanishing check");
  verify->add_option("--samples", scfg.samples, "random objects");
  verify->add_flag("--timings", timings, "include wall-clock seconds (output no longer reproducible)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  try {
    if (const char* env = std::getenv("TSTRUCT_SEED"); env && *env) {
      try {
        std::size_t used = 0;
        g.seed = std::stoull(env, &used);
        if (used != std::strlen(env)) throw UsageError("");
      } catch (const std::logic_error&) {
        throw UsageError("TSTRUCT_SEED must be an unsigned integer");
      }
    }
    if (seed_opt) g.seed = *seed_opt;

    auto filtration = [&] { return filtration_from_json(read_json(filt_path)); };

    if (*cousin) {
      SpFiltration f = filtration();
      auto w = weak_cousin(f);
      Json j = to_json(f.spec, w);
      bool ok = w.holds;
      if (strong) {
        auto s = strong_cousin(f);
        Json sj = to_json(f.spec, s);
        j["strong"] = s.holds;
        j["strongWitnesses"] = sj["witnesses"];
        ok = s.holds;
      }
      emit(j);
      return ok ? 0 : 1;
    }
    if (*cm) {
      Spectrum s = spectrum_arg(spectrum);
      CodimFn d = codim_arg(s, codim_path);
      emit(to_json(cm_filtration(s, d)));
      return 0;
    }
    if (*dual) {
      SpFiltration f = filtration();
      CodimFn d = codim_arg(f.spec, codim_path);
      SpFiltration fd = dual_filtration(f, d);
      Json j = {{"dual", to_json(fd)}};
      if (f.spec.is_integers() && codim_path.empty()) {
        auto chk = dual_formula_check(f);
        j["validated"] = chk.holds;
        if (!chk.holds) {
          j["diagnostic"] = "orthogonality disagrees at k=" + std::to_string(*chk.k) + ", point " + f.spec.name(*chk.point);
          emit(j);
          return 1;
        }
      } else {
        j["validated"] = nullptr;
        j["note"] = "orthogonality validation is available over Spec(Z) with its dualizing complex only";
      }
      emit(j);
      return 0;
    }
    if (*loc) {
      SpFiltration f = filtration();
      emit(to_json(localize(f, f.spec.parse_point(at))));
      return 0;
    }
    if (*census) {
      Spectrum s = spectrum_arg(spectrum);
      auto [a, b] = parse_window(window);
      CensusOptions opt{parse_primes(primes), cofinite};
      auto fs = weak_only ? enumerate_weak_cousin(s, a, b, opt) : enumerate_filtrations(s, a, b, opt);
      Json j = {{"window", {a, b}}, {"count", fs.size()}};
      if (!count_only) {
        Json arr = Json::array();
        for (auto& f : fs) arr.push_back(to_json(f));
        j["filtrations"] = arr;
      }
      emit(j);
      return 0;
    }
    if (*trunc) {
      SpFiltration f = filtration();
      Json xj = read_json(cx_path);
      std::optional<std::pair<int, int>> w;
      if (!window.empty()) w = parse_window(window);
      Json j = {{"engine", engine}};
      bool agree = true;
      if (engine == "profile" || engine == "both") {
        auto t = tau_filtration(f, any_object_from_json(xj));
        j["lower"] = to_json(restrict_degrees(t.lower, w));
        j["upper"] = to_json(restrict_degrees(t.upper, w));
        j["determinate"] = t.determinate;
        j["fg"] = {{"lower", t.lower.is_fg()}, {"upper", t.upper.is_fg()}};
      }
      if (engine == "cech" || engine == "both") {
        if (!xj.is_object() || !xj.contains("minDeg")) throw UsageError("the cech engine needs a complex (minDeg/ranks/diffs)");
        FreeComplex x = complex_from_json(xj);
        auto ps = oracle_primes(f, x);
        auto rep = cech_oracle(f, x, ps, cap);
        Json o = {{"primes", rep.primes},
                  {"exponentCap", rep.exponent_cap},
                  {"stabilized", rep.stabilized},
                  {"lower", profile_json(restrict_degrees(rep.lower, w))},
                  {"upper", profile_json(restrict_degrees(rep.upper, w))}};
        if (engine == "both") {
          auto t = tau_filtration(f, from_free_complex(x));
          std::string d1 = profile_diff(rep.lower, engine_profile(t.lower, rep.primes));
          std::string d2 = profile_diff(rep.upper, engine_profile(t.upper, rep.primes));
          agree = rep.stabilized && d1.empty() && d2.empty();
          j["oracle"] = o;
          j["agree"] = agree;
          if (!agree) j["difference"] = !d1.empty() ? "lower: " + d1 : !d2.empty() ? "upper: " + d2 : "oracle did not stabilize";
        } else {
          for (auto it = o.begin(); it != o.end(); ++it) j[it.key()] = it.value();
        }
      }
      emit(j);
      return agree ? 0 : 1;
    }
    if (*member) {
      SpFiltration f = filtration();
      FormalObject x = any_object_from_json(read_json(cx_path));
      bool in = side == "aisle" ? in_aisle(f, x) : in_coaisle(f, x);
      emit({{"side", side}, {"member", in}});
      return in ? 0 : 1;
    }
    if (*kash) {
      SpSubset z = subset_from_json(Spectrum::integers(), read_json(subset_path));
      FormalObject x = any_object_from_json(read_json(cx_path));
      Json j = {{"lemma", lemma}, {"n", n}};
      bool eq;
      if (lemma == 1) {
        auto r = kashiwara1(z, x, n);
        j["c1"] = r.c1, j["c2"] = r.c2, j["c3"] = r.c3;
        eq = r.equivalent();
      } else {
        auto r = kashiwara2(z, x, n);
        j["c1"] = r.c1, j["c2"] = r.c2;
        eq = r.equivalent();
      }
      j["equivalent"] = eq;
      emit(j);
      return eq ? 0 : 1;
    }
    if (*cmcheck) {
      FormalObject x = any_object_from_json(read_json(cx_path));
      auto r = cm_membership(x);
      emit({{"member", r.by_aisle}, {"byHom", r.by_hom}, {"byAisle", r.by_aisle}, {"agree", r.agree()}});
      return r.agree() ? 0 : 1;
    }
    if (*verify) {
      scfg.seed = g.seed;
      if (!g.quiet) scfg.progress = [](const std::string& s) { std::cerr << s << "\n"; };
      auto rep = run_suite(suite, scfg);
      emit(to_json(rep, timings));
      return rep.pass() ? 0 : 1;
    }
  } catch (const JsonError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::out_of_range& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const nlohmann::json::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  return 2;
}
