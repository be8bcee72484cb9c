#include "tstruct/suites.hpp"

#include "tstruct/cech.hpp"
#include "tstruct/duality.hpp"

#include <algorithm>
#include <chrono>
#include <map>
#include <numeric>
#include <set>
#include <stdexcept>

namespace tstruct {

bool SuiteReport::pass() const {
  return std::all_of(checks.begin(), checks.end(), [](const CheckResult& c) { return c.pass; });
}

bool Criterion::pass() const {
  bool ok = std::all_of(checks.begin(), checks.end(), [](const CheckResult& c) { return c.pass; });
  return ok && (budget_seconds <= 0 || seconds < budget_seconds);
}

Json to_json(const CheckResult& c, bool timings) {
  Json j = {{"name", c.name}, {"pass", c.pass}, {"cases", c.cases}, {"failures", c.failures}, {"detail", c.detail}};
  if (timings) j["seconds"] = c.seconds;
  return j;
}

Json to_json(const SuiteReport& r, bool timings) {
  Json cs = Json::array();
  for (auto& c : r.checks) cs.push_back(to_json(c, timings));
  return {{"suite", r.suite}, {"seed", to_json(BigInt(r.seed))}, {"pass", r.pass()}, {"checks", cs}};
}

FinPoset two_chain_poset() { return FinPoset({"0", "m"}, {{0, 1}}); }

namespace {

using Clock = std::chrono::steady_clock;

const std::vector<Prime> kWindowPrimes{2, 3, 5};

std::string show(const SpFiltration& f) { return dump(to_json(f)); }
std::string show(const FreeComplex& x) { return dump(to_json(x)); }
std::string show(const FormalObject& x) { return describe(x); }

// Records one case; keeps the first failure message.
void expect(CheckResult& r, bool ok, const std::function<std::string()>& why) {
  ++r.cases;
  if (ok) return;
  ++r.failures;
  if (r.pass) r.detail = why();
  r.pass = false;
}

template <class F>
CheckResult timed(const std::string& name, F&& body) {
  CheckResult r;
  r.name = name;
  auto t0 = Clock::now();
  try {
    body(r);
  } catch (const std::exception& e) {
    r.pass = false;
    ++r.failures;
    r.detail = std::string("exception: ") + e.what();
  }
  r.seconds = std::chrono::duration<double>(Clock::now() - t0).count();
  if (r.pass && r.detail.empty()) r.detail = std::to_string(r.cases) + " cases";
  return r;
}

std::vector<std::pair<std::string, FinPoset>> poset_family() {
  return {
      {"empty", FinPoset({}, {})},
      {"point", FinPoset({"a"}, {})},
      {"chain2", two_chain_poset()},
      {"chain3", FinPoset({"a", "b", "c"}, {{0, 1}, {1, 2}})},
      {"chain4", FinPoset({"a", "b", "c", "d"}, {{0, 1}, {1, 2}, {2, 3}})},
      {"vee", FinPoset({"a", "b", "c"}, {{0, 2}, {1, 2}})},
      {"wedge", FinPoset({"a", "b", "c"}, {{0, 1}, {0, 2}})},
      {"diamond", FinPoset({"a", "b", "c", "d"}, {{0, 1}, {0, 2}, {1, 3}, {2, 3}})},
      {"chain2+point", FinPoset({"a", "b", "c"}, {{0, 1}})},
      {"chain2+chain2", FinPoset({"a", "b", "c", "d"}, {{0, 1}, {2, 3}})},
      {"zigzag", FinPoset({"a", "b", "c", "d"}, {{0, 2}, {1, 2}, {1, 3}})},
      {"broom", FinPoset({"a", "b", "c", "d"}, {{0, 1}, {1, 2}, {0, 3}})},
  };
}

bool up_closed_mask(const FinPoset& p, std::uint64_t m) {
  for (auto [a, b] : p.covers())
    if ((m >> a & 1) && !(m >> b & 1)) return false;
  return true;
}

std::vector<Point> points_of(const Spectrum& s) {
  std::vector<Point> pts;
  for (std::size_t i = 0; i < s.poset().size(); ++i) pts.push_back({i});
  return pts;
}

// Generic point, the given primes and one fresh prime.
std::vector<Point> z_points(std::vector<Prime> ps) {
  std::sort(ps.begin(), ps.end());
  ps.erase(std::unique(ps.begin(), ps.end()), ps.end());
  std::vector<Point> pts{Point{0}};
  for (Prime p : ps) pts.push_back({p});
  pts.push_back({fresh_prime(ps)});
  return pts;
}

std::vector<Prime> filtration_primes(const SpFiltration& f) {
  std::vector<Prime> ps = mentioned_primes(f.tail);
  for (auto& l : f.levels) {
    auto m = mentioned_primes(l);
    ps.insert(ps.end(), m.begin(), m.end());
  }
  auto m = mentioned_primes(f.head);
  ps.insert(ps.end(), m.begin(), m.end());
  return ps;
}

std::string key(const SpFiltration& f) { return show(f); }

// ---- shared data, built on first use ----

struct Context {
  explicit Context(SuiteConfig c) : cfg(std::move(c)) {}

  SuiteConfig cfg;
  Spectrum Z = Spectrum::integers();

  std::optional<std::vector<SpFiltration>> census_, cofinite_census_;
  std::optional<std::vector<FreeComplex>> complexes_;
  std::optional<std::vector<FormalObject>> cx_objects_, fg_objects_, objects_;

  // Spec(Z), window [-3,3], levels Whole or finite subsets of {2,3,5}.
  const std::vector<SpFiltration>& census() {
    if (!census_) census_ = enumerate_filtrations(Z, -3, 3, CensusOptions{kWindowPrimes, false});
    return *census_;
  }
  const std::vector<SpFiltration>& cofinite_census() {
    if (!cofinite_census_) cofinite_census_ = enumerate_filtrations(Z, -2, 2, CensusOptions{kWindowPrimes, true});
    return *cofinite_census_;
  }
  std::vector<SpFiltration> weak_census() {
    std::vector<SpFiltration> r;
    for (auto& f : census())
      if (weak_cousin(f).holds) r.push_back(f);
    return r;
  }
  std::vector<SpFiltration> violating_census() {
    std::vector<SpFiltration> r;
    for (auto& f : census())
      if (!weak_cousin(f).holds) r.push_back(f);
    return r;
  }
  const std::vector<FreeComplex>& complexes() {
    if (!complexes_) complexes_ = complex_corpus(cfg.seed, cfg.complexes);
    return *complexes_;
  }
  const std::vector<FormalObject>& cx_objects() {
    if (!cx_objects_) {
      cx_objects_.emplace();
      for (auto& x : complexes()) cx_objects_->push_back(from_free_complex(x));
    }
    return *cx_objects_;
  }
  const std::vector<FormalObject>& fg_objects() {
    if (!fg_objects_) fg_objects_ = fg_object_corpus(cfg.seed, cfg.samples);
    return *fg_objects_;
  }
  const std::vector<FormalObject>& objects() {
    if (!objects_) {
      auto rng = make_stream(cfg.seed, "object");
      objects_.emplace();
      for (int i = 0; i < cfg.samples; ++i) objects_->push_back(random_object(rng));
    }
    return *objects_;
  }
  // First n complexes as objects, then n general objects.
  std::vector<FormalObject> mixed(int n) {
    std::vector<FormalObject> r;
    for (int i = 0; i < n && i < static_cast<int>(cx_objects().size()); ++i) r.push_back(cx_objects()[i]);
    for (int i = 0; i < n && i < static_cast<int>(objects().size()); ++i) r.push_back(objects()[i]);
    return r;
  }
  void progress(const std::string& s) const {
    if (cfg.progress) cfg.progress(s);
  }
};

// ================= spectrum =================

CheckResult check_closure_laws(Context&) {
  return timed("spectrum.closure_laws", [&](CheckResult& r) {
    for (auto& [name, P] : poset_family()) {
      Spectrum s = Spectrum::from_poset(P);
      const std::uint64_t n = P.size();
      auto to_pts = [&](std::uint64_t m) {
        std::vector<Point> v;
        for (std::uint64_t i = 0; i < n; ++i)
          if (m >> i & 1) v.push_back({i});
        return v;
      };
      for (std::uint64_t a = 0; a < (std::uint64_t{1} << n); ++a) {
        SpSubset ca = specialization_closure(s, to_pts(a));
        SpSubset cca = specialization_closure(s, to_pts(ca.mask));
        expect(r, cca == ca, [&] { return name + ": closure not idempotent"; });
        expect(r, (a & ~ca.mask) == 0, [&] { return name + ": closure not extensive"; });
        expect(r, up_closed_mask(P, ca.mask), [&] { return name + ": closure not specialization closed"; });
        for (std::uint64_t b = a;; b = (b + 1) | a) {
          SpSubset cb = specialization_closure(s, to_pts(b));
          expect(r, (ca.mask & ~cb.mask) == 0, [&] { return name + ": closure not monotone"; });
          if (b == (std::uint64_t{1} << n) - 1) break;
        }
      }
    }
  });
}

CheckResult check_open_closed(Context&) {
  return timed("spectrum.open_closed_vs_components", [&](CheckResult& r) {
    for (auto& [name, P] : poset_family()) {
      Spectrum s = Spectrum::from_poset(P);
      auto comps = connected_components(s);
      std::uint64_t covered = 0;
      for (auto& c : comps) {
        expect(r, (covered & c.mask) == 0, [&] { return name + ": components overlap"; });
        covered |= c.mask;
      }
      expect(r, covered == P.full_mask(), [&] { return name + ": components do not cover"; });
      for (std::uint64_t m = 0; m <= P.full_mask(); ++m) {
        if (!up_closed_mask(P, m)) continue;
        bool union_of = true;
        for (auto& c : comps)
          if ((m & c.mask) != 0 && (m & c.mask) != c.mask) union_of = false;
        auto w = is_open_closed(s, SpSubset::of_mask(m));
        expect(r, w.holds == union_of, [&] { return name + ": open-closed disagrees with components"; });
        expect(r, w.holds == !w.witness.has_value(), [&] { return name + ": witness inconsistent"; });
      }
    }
    expect(r, connected_components(Spectrum::integers()).size() == 1, [] { return "Spec(Z) not connected"; });
  });
}

CheckResult check_generalizations(Context&) {
  return timed("spectrum.immediate_generalizations", [&](CheckResult& r) {
    for (auto& [name, P] : poset_family()) {
      Spectrum s = Spectrum::from_poset(P);
      for (std::size_t q = 0; q < P.size(); ++q) {
        for (auto p : immediate_generalizations(s, {q})) {
          bool below = p.v != q && (P.down(static_cast<int>(q)) >> p.v & 1);
          expect(r, below, [&] { return name + ": generalization not strictly below"; });
          std::uint64_t between = P.up(static_cast<int>(p.v)) & P.down(static_cast<int>(q));
          between &= ~((std::uint64_t{1} << p.v) | (std::uint64_t{1} << q));
          expect(r, between == 0, [&] { return name + ": point strictly between"; });
        }
        // completeness: every strictly-below point with nothing between is listed
        auto gens = immediate_generalizations(s, {q});
        for (std::size_t p = 0; p < P.size(); ++p) {
          if (p == q || !(P.down(static_cast<int>(q)) >> p & 1)) continue;
          std::uint64_t between = P.up(static_cast<int>(p)) & P.down(static_cast<int>(q));
          between &= ~((std::uint64_t{1} << p) | (std::uint64_t{1} << q));
          bool listed = std::find(gens.begin(), gens.end(), Point{p}) != gens.end();
          expect(r, listed == (between == 0), [&] { return name + ": cover missing"; });
        }
      }
    }
    auto g = immediate_generalizations(Spectrum::integers(), {7});
    expect(r, g.size() == 1 && g[0] == Point{0}, [] { return "Spec(Z): (7) should cover only 0"; });
  });
}

// Every validated d has d(y)-d(x) equal to the length of each maximal chain from x to y.
CheckResult check_codim_chains(Context&) {
  return timed("spectrum.codim_catenary", [&](CheckResult& r) {
    for (auto& [name, P] : poset_family()) {
      Spectrum s = Spectrum::from_poset(P);
      const int n = static_cast<int>(P.size());
      if (n == 0) continue;
      std::vector<std::vector<int>> up(n);
      for (auto [a, b] : P.covers()) up[a].push_back(b);
      // lengths of all maximal chains x -> y
      std::vector<std::vector<std::set<int>>> lens(n, std::vector<std::set<int>>(n));
      std::function<void(int, int, int)> walk = [&](int x, int cur, int len) {
        lens[x][cur].insert(len);
        for (int nx : up[cur]) walk(x, nx, len + 1);
      };
      for (int x = 0; x < n; ++x) walk(x, x, 0);
      std::vector<int> vals(n, 0);
      int validated = 0;
      std::function<void(int)> gen = [&](int i) {
        if (i == n) {
          CodimFn d;
          d.values = vals;
          if (!validate_codim_fn(s, d).holds) return;
          ++validated;
          for (int x = 0; x < n; ++x)
            for (int y = 0; y < n; ++y)
              for (int l : lens[x][y])
                expect(r, vals[y] - vals[x] == l, [&] { return name + ": codimension not catenary"; });
          return;
        }
        for (int v = 0; v <= 3; ++v) {
          vals[i] = v;
          gen(i + 1);
        }
      };
      gen(0);
      expect(r, validated > 0 || name == "broom", [&] { return name + ": no codimension function validated"; });
    }
    expect(r, validate_codim_fn(Spectrum::integers(), CodimFn::integers_default()).holds,
           [] { return "default codimension on Spec(Z) rejected"; });
  });
}

// ================= filtration =================

std::vector<CodimFn> validated_codims(const Spectrum& s) {
  std::vector<CodimFn> out;
  const int n = static_cast<int>(s.poset().size());
  std::vector<int> vals(n, 0);
  std::function<void(int)> gen = [&](int i) {
    if (i == n) {
      CodimFn d;
      d.values = vals;
      if (validate_codim_fn(s, d).holds) out.push_back(d);
      return;
    }
    for (int v = 0; v <= 3; ++v) {
      vals[i] = v;
      gen(i + 1);
    }
  };
  gen(0);
  return out;
}

CheckResult check_cm_cousin(Context& ctx) {
  return timed("filtration.cm_cousin", [&](CheckResult& r) {
    for (auto& [name, P] : poset_family()) {
      Spectrum s = Spectrum::from_poset(P);
      for (auto& d : validated_codims(s)) {
        auto f = cm_filtration(s, d);
        expect(r, weak_cousin(f).holds && strong_cousin(f).holds, [&] { return name + ": " + show(f); });
      }
    }
    auto f = cm_filtration(ctx.Z, CodimFn::integers_default());
    expect(r, weak_cousin(f).holds && strong_cousin(f).holds, [&] { return "Spec(Z): " + show(f); });
  });
}

CheckResult check_dual_involution(Context& ctx) {
  return timed("filtration.dual_involution", [&](CheckResult& r) {
    const CodimFn d = CodimFn::integers_default();
    for (auto& f : ctx.weak_census()) {
      auto dd = dual_filtration(dual_filtration(f, d), d);
      expect(r, dd == f, [&] { return show(f) + " -> " + show(dd); });
    }
  });
}

std::vector<std::pair<std::string, Spectrum>> poset_spectra() {
  std::vector<std::pair<std::string, Spectrum>> r;
  for (auto& [name, P] : poset_family()) r.emplace_back(name, Spectrum::from_poset(P));
  return r;
}

CheckResult check_localize_cousin(Context& ctx) {
  return timed("filtration.localize_weak_cousin", [&](CheckResult& r) {
    for (auto& [name, s] : poset_spectra()) {
      for (auto& f : enumerate_filtrations(s, -1, 1)) {
        bool all = true;
        for (auto q : points_of(s)) all = all && weak_cousin(localize(f, q)).holds;
        expect(r, all == weak_cousin(f).holds, [&] { return name + ": " + show(f); });
      }
    }
    for (auto& f : ctx.census()) {
      bool all = true;
      for (auto q : z_points(filtration_primes(f))) all = all && weak_cousin(localize(f, q)).holds;
      expect(r, all == weak_cousin(f).holds, [&] { return "Spec(Z): " + show(f); });
    }
  });
}

// Discreteness: weak Cousin filtrations stabilize to open-closed values, and
// on connected spectra the nonconstant ones run from everything to nothing.
std::vector<std::pair<std::string, std::vector<SpFiltration>>> discreteness_families(Context& ctx) {
  std::vector<std::pair<std::string, std::vector<SpFiltration>>> fams;
  fams.emplace_back("Spec(Z)", ctx.census());
  fams.emplace_back("Spec(Z) cofinite", ctx.cofinite_census());
  for (auto& [name, s] : poset_spectra()) fams.emplace_back(name, enumerate_filtrations(s, -1, 1));
  return fams;
}

CheckResult check_stabilization(Context& ctx) {
  return timed("filtration.stabilization_open_closed", [&](CheckResult& r) {
    for (auto& [name, fs] : discreteness_families(ctx))
      for (auto& f : fs) {
        auto st = stabilization_report(f);
        if (!st.weak_cousin) continue;
        expect(r, st.bottom_open_closed && st.intersection_open_closed, [&] { return name + ": " + show(f); });
      }
  });
}

CheckResult check_connected_discreteness(Context& ctx) {
  return timed("filtration.connected_whole_to_empty", [&](CheckResult& r) {
    for (auto& [name, fs] : discreteness_families(ctx))
      for (auto& f : fs) {
        auto st = stabilization_report(f);
        if (!st.weak_cousin || !st.connected || st.constant) continue;
        bool ok = is_whole(f.spec, f.tail) && st.eventually_empty && st.discreteness_holds;
        expect(r, ok, [&] { return name + ": " + show(f); });
      }
  });
}

CheckResult check_constant_cousin(Context& ctx) {
  return timed("filtration.constant_cousin_is_open_closed", [&](CheckResult& r) {
    std::vector<std::pair<std::string, Spectrum>> spaces{{"Spec(Z)", ctx.Z}};
    for (auto& p : poset_spectra()) spaces.push_back(p);
    for (auto& [name, s] : spaces) {
      for (auto& z : subset_universe(s, kWindowPrimes, s.is_integers())) {
        auto f = constant_filtration(s, z);
        bool wc = weak_cousin(f).holds, oc = is_open_closed(s, z).holds;
        expect(r, wc == oc, [&] { return name + ": " + describe(s, z); });
        auto bc = bousfield_class(f);
        expect(r, bc && bc->z == z && bc->open_closed == oc, [&] { return name + ": bousfield class"; });
      }
    }
  });
}

CheckResult check_lattice_laws(Context& ctx) {
  return timed("filtration.meet_shift_laws", [&](CheckResult& r) {
    const auto& c = ctx.census();
    auto rng = make_stream(ctx.cfg.seed, "lattice");
    std::uniform_int_distribution<std::size_t> pick(0, c.size() - 1);
    for (int t = 0; t < 400; ++t) {
      const auto &a = c[pick(rng)], &b = c[pick(rng)], &d = c[pick(rng)];
      expect(r, meet(a, a) == a, [&] { return "meet not idempotent: " + show(a); });
      expect(r, meet(a, b) == meet(b, a), [&] { return "meet not commutative"; });
      expect(r, meet(meet(a, b), d) == meet(a, meet(b, d)), [&] { return "meet not associative"; });
      for (int k = -2; k <= 2; ++k) {
        auto s = shift(a, k);
        bool ok = true;
        for (int i = -8; i <= 8; ++i) ok = ok && s.at(i) == a.at(i - k);
        expect(r, ok, [&] { return "shift levels wrong: " + show(a); });
      }
      for (int i = -8; i <= 8; ++i)
        expect(r, meet(a, b).at(i) == (a.at(i) & b.at(i)), [&] { return "meet is not levelwise"; });
    }
  });
}

}  // namespace

std::vector<SpFiltration> brute_force_census(const Spectrum& spec, int a, int b) {
  std::vector<SpSubset> U;
  if (spec.is_integers()) {
    U.push_back(SpSubset::whole(spec));
    for (unsigned m = 0; m < (1u << kWindowPrimes.size()); ++m) {
      std::vector<Prime> ps;
      for (std::size_t i = 0; i < kWindowPrimes.size(); ++i)
        if (m >> i & 1) ps.push_back(kWindowPrimes[i]);
      U.push_back(SpSubset::finite(ps));
    }
  } else {
    const FinPoset& P = spec.poset();
    for (std::uint64_t m = 0; m <= P.full_mask(); ++m)
      if (up_closed_mask(P, m)) U.push_back(SpSubset::of_mask(m));
  }
  const int w = b - a + 1;
  std::map<std::string, SpFiltration> found;
  std::vector<std::size_t> idx(w, 0);
  while (true) {
    bool decreasing = true;
    for (int i = 0; i + 1 < w; ++i) decreasing = decreasing && subset(U[idx[i + 1]], U[idx[i]]);
    if (decreasing) {
      std::vector<SpSubset> lv;
      for (int i = 0; i < w; ++i) lv.push_back(U[idx[i]]);
      auto f = make_filtration(spec, lv.front(), a, lv, SpSubset::empty());
      found.emplace(key(f), f);
    }
    int i = 0;
    while (i < w && ++idx[i] == U.size()) idx[i++] = 0;
    if (i == w) break;
  }
  for (auto& z : U) {
    auto f = constant_filtration(spec, z);
    found.emplace(key(f), f);
  }
  std::vector<SpFiltration> out;
  for (auto& [k, f] : found) out.push_back(f);
  return out;
}

namespace {

CheckResult check_census(Context& ctx) {
  return timed("filtration.census_vs_brute_force", [&](CheckResult& r) {
    auto same = [&](const std::string& name, const Spectrum& s, int a, int b) {
      auto got = enumerate_filtrations(s, a, b);
      auto want = brute_force_census(s, a, b);
      std::set<std::string> g, w;
      for (auto& f : got) g.insert(key(f));
      for (auto& f : want) w.insert(key(f));
      expect(r, g.size() == got.size(), [&] { return name + ": census has duplicates"; });
      expect(r, g == w, [&] {
        return name + " [" + std::to_string(a) + "," + std::to_string(b) + "]: census " + std::to_string(g.size()) +
               " vs brute force " + std::to_string(w.size());
      });
      std::set<std::string> wc;
      for (auto& f : enumerate_weak_cousin(s, a, b)) wc.insert(key(f));
      std::set<std::string> wc_want;
      for (auto& f : want)
        if (weak_cousin(f).holds) wc_want.insert(key(f));
      expect(r, wc == wc_want, [&] { return name + ": weak Cousin census differs from filtered brute force"; });
    };
    for (auto& [name, s] : poset_spectra())
      for (int width = 1; width <= 3; ++width) same(name, s, 0, width - 1);
    same("Spec(Z)", ctx.Z, -1, 1);
  });
}

// Reads phi back from the membership of the generators R/p[-j] in its aisle.
SpFiltration read_back(const SpFiltration& phi, int a, int b) {
  const Spectrum& s = phi.spec;
  std::vector<SpSubset> lv;
  for (int j = a - 1; j <= b + 1; ++j) {
    if (s.is_integers()) {
      auto pts = z_points(kWindowPrimes);
      auto member = [&](Point p) {
        FormalObject g = p.v == 0 ? FormalObject::stalk(j, ElementaryModule({Atom::free(1)}))
                                  : from_free_complex(FreeComplex::koszul({static_cast<long long>(p.v)}, j));
        return in_aisle(phi, g);
      };
      std::vector<Prime> in, out;
      for (auto& p : pts)
        if (p.v != 0) (member(p) ? in : out).push_back(p.v);
      bool fresh_in = std::find(in.begin(), in.end(), pts.back().v) != in.end();
      std::erase(in, pts.back().v);
      std::erase(out, pts.back().v);
      SpSubset z = fresh_in ? SpSubset::cofinite(out) : SpSubset::finite(in);
      if (member(Point{0})) z.generic = true;
      lv.push_back(z);
    } else {
      std::uint64_t m = 0;
      for (auto p : points_of(s))
        if (in_aisle_by_supports(phi, {{j, closed_point_set(s, p)}})) m |= std::uint64_t{1} << p.v;
      lv.push_back(SpSubset::of_mask(m));
    }
  }
  return make_filtration(s, lv.front(), a - 1, lv, lv.back());
}

CheckResult check_round_trip_poset(Context&) {
  return timed("classification.round_trip_chain2", [&](CheckResult& r) {
    Spectrum s = Spectrum::from_poset(two_chain_poset());
    for (auto [a, b] : {std::pair{-2, 2}, std::pair{0, 1}})
      for (auto& f : enumerate_filtrations(s, a, b)) {
        auto g = read_back(f, a, b);
        expect(r, g == f, [&] { return show(f) + " read back as " + show(g); });
      }
  });
}

CheckResult check_round_trip_z(Context& ctx) {
  return timed("classification.round_trip_Z", [&](CheckResult& r) {
    for (auto& f : ctx.census()) {
      auto g = read_back(f, -3, 3);
      expect(r, g == f, [&] { return show(f) + " read back as " + show(g); });
    }
    for (auto& f : ctx.cofinite_census()) {
      auto g = read_back(f, -2, 2);
      expect(r, g == f, [&] { return show(f) + " read back as " + show(g); });
    }
  });
}

// ================= zmodules =================

CheckResult check_euler(Context& ctx) {
  return timed("zmodules.euler_characteristic", [&](CheckResult& r) {
    for (auto& x : ctx.complexes()) {
      long long terms = 0, hom = 0;
      for (int d = x.min_degree; d <= x.max_degree(); ++d) terms += (d % 2 == 0 ? 1 : -1) * x.rank_at(d);
      for (auto& [d, m] : homology(x)) hom += (d % 2 == 0 ? 1 : -1) * m.rank;
      expect(r, terms == hom, [&] { return show(x); });
    }
  });
}

CheckResult check_koszul(Context& ctx) {
  return timed("zmodules.koszul", [&](CheckResult& r) {
    auto rng = make_stream(ctx.cfg.seed, "koszul");
    std::uniform_int_distribution<int> len(1, 3), val(-20, 20);
    for (int t = 0; t < 300; ++t) {
      std::vector<long long> gens(len(rng));
      for (auto& g : gens) g = val(rng);
      long long g0 = 0;
      for (auto g : gens) g0 = std::gcd(g0, g);
      auto x = FreeComplex::koszul(gens, 0);
      validate(x);
      SpSubset v = SpSubset::whole(ctx.Z);
      if (g0 != 0) {
        std::vector<Prime> ps;
        for (auto [p, e] : factor(static_cast<std::uint64_t>(g0))) ps.push_back(p);
        v = SpSubset::finite(ps);
      }
      auto h = homology(x);
      for (auto& [d, m] : h) expect(r, subset(support(m), v), [&] { return "support outside V(a): " + show(x); });
      FgZModule h0 = h.count(0) ? h.at(0) : FgZModule{};
      expect(r, h0 == FgZModule::cyclic(BigInt(g0)), [&] { return "H^0 != Z/(a): " + show(x); });
    }
  });
}

CheckResult check_top_index(Context& ctx) {
  return timed("zmodules.top_index", [&](CheckResult& r) {
    for (auto& x : ctx.complexes())
      for (Point p : {Point{0}, Point{2}, Point{3}, Point{5}}) {
        bool ok = true;
        try {
          top_indices(x, p);
        } catch (const std::logic_error&) {
          ok = false;
        }
        expect(r, ok, [&] { return "m != h at " + ctx.Z.name(p) + ": " + show(x); });
      }
  });
}

// Hom and Ext^1 from 0 -> Z -n-> Z -> Z/n -> 0: kernel and cokernel of n on B, by counting.
CheckResult check_hom_ext_tables(Context&) {
  return timed("zmodules.hom_ext_tables", [&](CheckResult& r) {
    std::vector<std::pair<Prime, int>> cyc{{0, 0}};
    for (Prime p = 2; p <= 1024; ++p) {
      if (!is_prime(p)) continue;
      long long q = p;
      for (int e = 1; q <= 1024; ++e, q *= p) cyc.push_back({p, e});
    }
    auto order = [](std::pair<Prime, int> c) { return c.first == 0 ? 0LL : static_cast<long long>(ipow(c.first, c.second)); };
    auto atom = [](std::pair<Prime, int> c) { return c.first == 0 ? Atom::free(1) : Atom::torsion(c.first, c.second); };
    for (auto& a : cyc)
      for (auto& b : cyc) {
        long long n = order(a), m = order(b);
        FgZModule hom, ext;
        if (n == 0) {
          hom = b.first == 0 ? FgZModule::free(1) : FgZModule::cyclic(m);
        } else if (m == 0) {
          ext = FgZModule::cyclic(n);
        } else {
          long long ker = 0;
          std::vector<char> image(m, 0);
          for (long long x = 0; x < m; ++x) {
            long long y = (n % m) * x % m;
            if (y == 0) ++ker;
            image[y] = 1;
          }
          long long im = std::count(image.begin(), image.end(), 1);
          hom = FgZModule::cyclic(ker);  // subgroups and quotients of cyclic groups are cyclic
          ext = FgZModule::cyclic(m / im);
        }
        HomExt he = hom_ext(atom(a), atom(b));
        bool ok = he.hom.is_fg() && he.ext.is_fg() && he.hom.to_fg() == hom && he.ext.to_fg() == ext;
        expect(r, ok, [&] { return "Hom/Ext(" + describe(atom(a)) + ", " + describe(atom(b)) + ")"; });
      }
  });
}

// ================= truncation =================

bool is_zero_obj(const FormalObject& x) { return x.is_zero(); }

CheckResult check_contract(Context& ctx) {
  return timed("truncation.contract", [&](CheckResult& r) {
    auto xs = ctx.mixed(40);
    for (auto& f : ctx.census())
      for (auto& x : xs) {
        auto t = tau_filtration(f, x);
        if (!t.determinate) continue;
        bool ok = in_aisle(f, t.lower) && in_coaisle(f, t.upper) && orthogonality_check(f, t.upper, -4, 4).holds;
        expect(r, ok, [&] { return show(f) + " on " + show(x); });
      }
  });
}

CheckResult check_idempotence(Context& ctx) {
  return timed("truncation.idempotence", [&](CheckResult& r) {
    auto xs = ctx.mixed(20);
    for (auto& f : ctx.census())
      for (auto& x : xs) {
        auto t = tau_filtration(f, x);
        auto tl = tau_filtration(f, t.lower), tu = tau_filtration(f, t.upper);
        bool ok = tl.lower == t.lower && is_zero_obj(tl.upper) && is_zero_obj(tu.lower) && tu.upper == t.upper;
        expect(r, ok, [&] { return show(f) + " on " + show(x); });
      }
  });
}

CheckResult check_shift(Context& ctx) {
  return timed("truncation.shift_equivariance", [&](CheckResult& r) {
    auto xs = ctx.mixed(20);
    for (auto& f : ctx.census())
      for (auto& x : xs) {
        auto t = tau_filtration(f, x);
        auto s = tau_filtration(shift(f, -1), x.shifted(1));
        expect(r, s.lower == t.lower.shifted(1) && s.upper == t.upper.shifted(1),
               [&] { return show(f) + " on " + show(x); });
      }
  });
}

std::vector<std::pair<int, SpSubset>> local_supports(const FormalObject& x, Point q) {
  std::vector<std::pair<int, SpSubset>> out;
  const FormalObject xq = localize(x, q);
  for (auto& [d, m] : xq.degrees()) {
    SpSubset s = m.support();
    std::uint64_t mask = 0;
    if (s.generic) mask |= 1;
    if (q.v != 0 && s.maximals.contains(q.v)) mask |= 2;
    out.push_back({d, SpSubset::of_mask(mask)});
  }
  return out;
}

CheckResult check_localization(Context& ctx) {
  return timed("truncation.localization", [&](CheckResult& r) {
    auto xs = ctx.mixed(20);
    for (auto& f : ctx.census())
      for (auto& x : xs) {
        auto ps = filtration_primes(f);
        auto xp = x.mentioned_primes();
        ps.insert(ps.end(), xp.begin(), xp.end());
        bool in = in_aisle(f, x), all_local = true;
        for (auto q : z_points(ps)) {
          bool local = in_aisle_by_supports(localize(f, q), local_supports(x, q));
          all_local = all_local && local;
          expect(r, !in || (local && in_aisle(f, localize(x, q))),
                 [&] { return "localization at " + ctx.Z.name(q) + " leaves the aisle: " + show(f); });
        }
        expect(r, in == all_local, [&] { return "aisle not detected locally: " + show(f) + " on " + show(x); });
      }
  });
}

CheckResult check_sufficiency(Context& ctx) {
  return timed("truncation.weak_cousin_sufficiency", [&](CheckResult& r) {
    auto wc = ctx.weak_census();
    std::size_t k = 0;
    for (auto& f : wc) {
      ctx.progress("sufficiency " + std::to_string(++k) + "/" + std::to_string(wc.size()));
      for (auto& x : ctx.cx_objects()) {
        auto t = tau_filtration(f, x);
        bool ok = t.determinate && t.lower.is_fg() && t.upper.is_fg() && in_aisle(f, t.lower) &&
                  in_coaisle(f, t.upper) && orthogonality_check(f, t.upper, -4, 4).holds;
        expect(r, ok, [&] { return show(f) + " on " + show(x); });
      }
    }
  });
}

CheckResult check_necessity(Context& ctx) {
  return timed("truncation.weak_cousin_necessity", [&](CheckResult& r) {
    for (auto& f : ctx.violating_census()) {
      auto w = weak_cousin(f).witnesses.front();
      auto rep = cousin_failure_witness(f, w.j, w.q.v);
      expect(r, !rep.lower_fg && !rep.upper_fg && !rep.lower_offenders.empty() && !rep.upper_offenders.empty(),
             [&] { return show(f); });
    }
  });
}

int pointwise_length(const SpFiltration& f) {
  int len = 0;
  for (auto q : z_points(filtration_primes(f))) len = std::max(len, localize(f, q).length());
  return len;
}

CheckResult check_two_step(Context& ctx) {
  return timed("truncation.two_step_finite_generation", [&](CheckResult& r) {
    for (auto& f : ctx.weak_census()) {
      if (pointwise_length(f) > 2) continue;
      for (auto& x : ctx.cx_objects()) {
        auto t = tau_filtration(f, x);
        expect(r, t.lower.is_fg() && t.upper.is_fg(), [&] { return show(f) + " on " + show(x); });
      }
    }
  });
}

CheckResult check_degree_bound(Context& ctx) {
  return timed("truncation.degree_bound", [&](CheckResult& r) {
    auto xs = ctx.mixed(40);
    for (auto& f : ctx.census())
      for (auto& x : xs) {
        if (x.is_zero()) continue;
        int j = *x.min_degree();
        auto t = tau_filtration(f, x);
        bool ok = (t.lower.is_zero() || *t.lower.min_degree() >= j) && (t.upper.is_zero() || *t.upper.min_degree() >= j);
        expect(r, ok, [&] { return show(f) + " on " + show(x); });
      }
  });
}

// ================= orthogonality =================

// Hom(Z/m[-i], Y[k]) = 0 for all k <= 0, from the Hom/Ext tables.
bool right_orthogonal(long long m, int i, const FormalObject& y) {
  std::vector<Atom> gens;
  for (auto [p, e] : factor(static_cast<std::uint64_t>(m))) gens.push_back(Atom::torsion(p, e));
  for (auto& g : gens)
    for (auto& [b, mod] : y.degrees()) {
      HomExt he = hom_ext(ElementaryModule({g}), mod);
      if (i >= b && !he.hom.is_zero()) return false;
      if (i - 1 >= b && !he.ext.is_zero()) return false;
    }
  return true;
}

CheckResult check_radical(Context& ctx) {
  return timed("orthogonality.radical_invariance", [&](CheckResult& r) {
    auto ys = ctx.mixed(60);
    for (long long m = 2; m <= 72; ++m) {
      long long rad = 1;
      std::vector<Prime> ps;
      for (auto [p, e] : factor(static_cast<std::uint64_t>(m))) rad *= static_cast<long long>(p), ps.push_back(p);
      for (int i = -2; i <= 2; ++i) {
        auto f = single_level(ctx.Z, i, SpSubset::finite(ps));
        for (auto& y : ys) {
          bool a = right_orthogonal(m, i, y), b = right_orthogonal(rad, i, y), c = in_coaisle(f, y);
          expect(r, a == b && b == c, [&] {
            return "Z/" + std::to_string(m) + "[" + std::to_string(-i) + "] against " + show(y);
          });
        }
      }
    }
  });
}

// The aisle generated by X: phi_X(j) is the union of supp H^i(X) over i >= j.
SpFiltration generated_filtration(const FormalObject& x) {
  const Spectrum Z = Spectrum::integers();
  if (x.is_zero()) return constant_filtration(Z, SpSubset::empty());
  int lo = *x.min_degree(), hi = *x.max_degree();
  std::vector<SpSubset> lv(hi - lo + 1);
  SpSubset acc;
  for (int j = hi; j >= lo; --j) {
    acc = acc | x.at(j).support();
    lv[j - lo] = acc;
  }
  return make_filtration(Z, acc, lo, lv, SpSubset::empty());
}

CheckResult check_hom_vanishing(Context& ctx) {
  return timed("orthogonality.hom_vanishing", [&](CheckResult& r) {
    auto rng = make_stream(ctx.cfg.seed, "hom_vanishing");
    long long both_true = 0;
    for (int t = 0; t < ctx.cfg.pairs; ++t) {
      FreeComplex x = random_free_complex(rng);
      FormalObject y = random_object(rng);
      if (t % 2 == 0) {
        // right orthogonal to X by construction, sometimes shifted off the boundary
        y = tau_filtration(generated_filtration(from_free_complex(x)), y).upper;
        int s = std::uniform_int_distribution<int>(-1, 1)(rng);
        y = y.shifted(s);
      }
      auto rep = hom_vanishing_crosscheck(x, y);
      both_true += rep.cond1 && rep.cond3;
      expect(r, rep.agree(), [&] { return show(x) + " against " + show(y); });
    }
    if (r.pass) r.detail = std::to_string(r.cases) + " pairs, " + std::to_string(both_true) + " orthogonal";
  });
}

CheckResult check_upper_orthogonal(Context& ctx) {
  return timed("orthogonality.upper_truncations", [&](CheckResult& r) {
    for (auto& f : ctx.census())
      for (auto& y : ctx.mixed(10)) {
        auto t = tau_filtration(f, y);
        auto rep = orthogonality_check(f, t.upper, -4, 4);
        expect(r, rep.holds, [&] { return show(f) + " on " + show(y); });
        // whatever is not orthogonal must fail the coaisle test as well
        auto direct = orthogonality_check(f, y, -4, 4);
        expect(r, direct.holds == in_coaisle(f, y), [&] { return "coaisle test vs Hom tables: " + show(f) + " on " + show(y); });
      }
  });
}

// ================= oracle =================

std::string compare(const FormalObject& lower, const FormalObject& upper, const CechReport& rep) {
  if (!rep.stabilized) return "oracle did not stabilize";
  auto d1 = profile_diff(rep.lower, engine_profile(lower, rep.primes));
  if (!d1.empty()) return "lower: " + d1;
  auto d2 = profile_diff(rep.upper, engine_profile(upper, rep.primes));
  if (!d2.empty()) return "upper: " + d2;
  return {};
}

CheckResult check_oracle_gamma(Context& ctx) {
  return timed("oracle.rgamma_rq", [&](CheckResult& r) {
    for (auto& z : subset_universe(ctx.Z, kWindowPrimes)) {
      auto f = constant_filtration(ctx.Z, z);
      for (std::size_t i = 0; i < ctx.complexes().size(); ++i) {
        const auto& x = ctx.complexes()[i];
        const auto& xo = ctx.cx_objects()[i];
        auto rep = cech_oracle(f, x, oracle_primes(f, x), ctx.cfg.exponent_cap);
        std::string d = compare(rgamma(z, xo), rq(z, xo), rep);
        expect(r, d.empty(), [&] { return describe(ctx.Z, z) + " on " + show(x) + ": " + d; });
      }
    }
  });
}

CheckResult check_oracle_single(Context& ctx) {
  return timed("oracle.tau_single", [&](CheckResult& r) {
    for (auto& z : subset_universe(ctx.Z, kWindowPrimes)) {
      if (z.is_empty()) continue;
      ctx.progress("oracle tau_single " + describe(ctx.Z, z));
      for (int i = -3; i <= 3; ++i) {
        auto f = single_level(ctx.Z, i, z);
        for (std::size_t k = 0; k < ctx.complexes().size(); ++k) {
          const auto& x = ctx.complexes()[k];
          auto t = tau_single(i, z, ctx.cx_objects()[k]);
          std::string d = compare(t.lower, t.upper, cech_oracle(f, x, oracle_primes(f, x), ctx.cfg.exponent_cap));
          expect(r, d.empty(), [&] { return show(f) + " on " + show(x) + ": " + d; });
        }
      }
    }
  });
}

CheckResult check_oracle_filtration(Context& ctx) {
  return timed("oracle.tau_filtration", [&](CheckResult& r) {
    auto wc = ctx.weak_census();
    std::size_t n = 0;
    for (auto& f : wc) {
      ctx.progress("oracle tau_filtration " + std::to_string(++n) + "/" + std::to_string(wc.size()));
      for (std::size_t k = 0; k < ctx.complexes().size(); ++k) {
        const auto& x = ctx.complexes()[k];
        auto t = tau_filtration(f, ctx.cx_objects()[k]);
        std::string d = compare(t.lower, t.upper, cech_oracle(f, x, oracle_primes(f, x), ctx.cfg.exponent_cap));
        expect(r, d.empty(), [&] { return show(f) + " on " + show(x) + ": " + d; });
      }
    }
  });
}

// Weak Cousin failures: the oracle sees the Prufer group below and the localization above.
CheckResult check_oracle_necessity(Context& ctx) {
  return timed("oracle.necessity_divisible_parts", [&](CheckResult& r) {
    for (auto& f : ctx.violating_census()) {
      auto w = weak_cousin(f).witnesses.front();
      const Prime q = w.q.v;
      auto rep55 = cousin_failure_witness(f, w.j, q);
      FreeComplex x = FreeComplex::stalk(w.j - 1, 1);
      auto rep = cech_oracle(f, x, oracle_primes(f, x), ctx.cfg.exponent_cap);
      std::string d = compare(rep55.truncation.lower, rep55.truncation.upper, rep);
      expect(r, d.empty(), [&] { return show(f) + ": " + d; });
      bool prufer = false, rational = false;
      for (auto& [deg, dp] : rep.lower)
        if (dp.local.count(q) && dp.local.at(q).prufer > 0) prufer = true;
      for (auto& [deg, dp] : rep.upper)
        if (dp.local.count(q) && dp.local.at(q).rational > 0) rational = true;
      expect(r, prufer && rational, [&] { return "no divisible part detected: " + show(f); });
    }
  });
}

// ================= duality =================

CheckResult check_dual_involution_objects(Context& ctx) {
  return timed("duality.involution", [&](CheckResult& r) {
    for (auto& x : ctx.fg_objects()) expect(r, dualize(dualize(x)) == x, [&] { return show(x); });
    for (auto& x : ctx.cx_objects()) expect(r, dualize(dualize(x)) == x, [&] { return show(x); });
  });
}

CheckResult check_codim(Context& ctx) {
  return timed("duality.codim_from_dualizing", [&](CheckResult& r) {
    CodimFn d = dualizing_codim();
    CodimFn from;
    from.generic = codim_from_dualizing(Point{0});
    from.maximal = codim_from_dualizing(Point{2});
    for (Prime p : {2ull, 3ull, 5ull, 7ull, 11ull, 1000003ull, 18446744073709551557ull}) {
      int v = codim_from_dualizing(Point{p});
      expect(r, v == 1 && v == d(ctx.Z, Point{p}), [&] { return "d((" + std::to_string(p) + ")) = " + std::to_string(v); });
      if (v != from.maximal) from.overrides[p] = v;
    }
    expect(r, from.generic == 0 && d(ctx.Z, Point{0}) == 0, [] { return "d(0) != 0"; });
    expect(r, validate_codim_fn(ctx.Z, from).holds, [] { return "recovered function is not a codimension function"; });
  });
}

CheckResult check_cm_membership(Context& ctx) {
  return timed("duality.cm_membership", [&](CheckResult& r) {
    long long members = 0;
    auto run = [&](const FormalObject& x) {
      auto m = cm_membership(x);
      members += m.by_aisle;
      expect(r, m.agree(), [&] { return show(x); });
    };
    for (auto& x : ctx.fg_objects()) run(x);
    for (auto& x : ctx.cx_objects()) run(x);
    if (r.pass) r.detail = std::to_string(r.cases) + " cases, " + std::to_string(members) + " members";
  });
}

std::vector<SpSubset> kashiwara_supports() {
  return {SpSubset::empty(), SpSubset::whole(Spectrum::integers()), SpSubset::finite({2}), SpSubset::finite({3}),
          SpSubset::finite({2, 3}), SpSubset::finite({2, 3, 5}), SpSubset::finite({7})};
}

CheckResult check_kashiwara1(Context& ctx) {
  return timed("duality.kashiwara1", [&](CheckResult& r) {
    long long holds = 0;
    for (auto& x : ctx.fg_objects())
      for (auto& z : kashiwara_supports())
        for (int n = -2; n <= 2; ++n) {
          auto k = kashiwara1(z, x, n);
          holds += k.c1;
          expect(r, k.equivalent(), [&] { return describe(ctx.Z, z) + ", n=" + std::to_string(n) + ": " + show(x); });
        }
    if (r.pass) r.detail = std::to_string(r.cases) + " cases, " + std::to_string(holds) + " satisfied";
  });
}

CheckResult check_kashiwara2(Context& ctx) {
  return timed("duality.kashiwara2", [&](CheckResult& r) {
    long long holds = 0;
    for (auto& x : ctx.fg_objects())
      for (auto& z : kashiwara_supports())
        for (int n = -2; n <= 2; ++n) {
          auto k = kashiwara2(z, x, n);
          holds += k.c1;
          expect(r, k.equivalent(), [&] { return describe(ctx.Z, z) + ", n=" + std::to_string(n) + ": " + show(x); });
        }
    if (r.pass) r.detail = std::to_string(r.cases) + " cases, " + std::to_string(holds) + " satisfied";
  });
}

CheckResult check_dual_canonical(Context& ctx) {
  return timed("duality.dual_of_canonical", [&](CheckResult& r) {
    const CodimFn d = dualizing_codim();
    const auto cm = cm_filtration(ctx.Z, d);
    auto got = dual_filtration(canonical_filtration(ctx.Z, 0), d);
    expect(r, got == cm, [&] { return show(got); });
    for (int n = -3; n <= 3; ++n) {
      auto g = dual_filtration(canonical_filtration(ctx.Z, n), d);
      expect(r, g == shift(cm, -n), [&] { return "n=" + std::to_string(n) + ": " + show(g); });
    }
  });
}

CheckResult check_dual_validate(Context& ctx) {
  return timed("duality.dual_filtration_validate", [&](CheckResult& r) {
    std::vector<FormalObject> samples(ctx.fg_objects().begin(),
                                      ctx.fg_objects().begin() + std::min<std::size_t>(60, ctx.fg_objects().size()));
    for (int i = 0; i < 30 && i < static_cast<int>(ctx.cx_objects().size()); ++i) samples.push_back(ctx.cx_objects()[i]);
    for (auto& f : ctx.census()) {
      auto v = dual_filtration_validate(f, samples);
      expect(r, v.holds, [&] {
        std::string s = show(f);
        if (!v.formula.holds) s += ": formula differs at k=" + std::to_string(*v.formula.k);
        if (v.mismatch) s += ": mismatch on " + show(*v.mismatch);
        return s;
      });
    }
  });
}

// ================= registry =================

using CheckFn = CheckResult (*)(Context&);

const std::map<std::string, std::vector<CheckFn>>& registry() {
  static const std::map<std::string, std::vector<CheckFn>> m{
      {"spectrum", {check_closure_laws, check_open_closed, check_generalizations, check_codim_chains}},
      {"filtration",
       {check_cm_cousin, check_dual_involution, check_localize_cousin, check_stabilization,
        check_connected_discreteness, check_constant_cousin, check_lattice_laws, check_census, check_round_trip_poset,
        check_round_trip_z}},
      {"zmodules", {check_euler, check_koszul, check_top_index, check_hom_ext_tables}},
      {"truncation",
       {check_contract, check_idempotence, check_shift, check_localization, check_sufficiency, check_necessity,
        check_two_step, check_degree_bound}},
      {"orthogonality", {check_radical, check_hom_vanishing, check_upper_orthogonal}},
      {"oracle", {check_oracle_gamma, check_oracle_single, check_oracle_filtration, check_oracle_necessity}},
      {"duality",
       {check_dual_involution_objects, check_codim, check_cm_membership, check_kashiwara1, check_kashiwara2,
        check_dual_canonical, check_dual_validate}},
  };
  return m;
}

}  // namespace

const std::vector<std::string>& suite_names() {
  static const std::vector<std::string> names{"spectrum",      "filtration", "zmodules", "truncation",
                                              "orthogonality", "oracle",     "duality",  "all"};
  return names;
}

SuiteReport run_suite(const std::string& name, const SuiteConfig& cfg) {
  if (std::find(suite_names().begin(), suite_names().end(), name) == suite_names().end())
    throw std::invalid_argument("unknown suite '" + name + "'");
  Context ctx{cfg};
  SuiteReport rep{name, cfg.seed, {}};
  for (auto& s : suite_names()) {
    if (s == "all" || (name != "all" && s != name)) continue;
    for (auto fn : registry().at(s)) {
      rep.checks.push_back(fn(ctx));
      ctx.progress(rep.checks.back().name + (rep.checks.back().pass ? " ok" : " FAILED"));
    }
  }
  return rep;
}

std::vector<Criterion> run_acceptance(const SuiteConfig& cfg) {
  Context ctx{cfg};
  struct Spec {
    int id;
    const char* title;
    double budget;
    std::vector<CheckFn> checks;
  };
  const std::vector<Spec> specs{
      {1, "classification round trip", 10, {check_round_trip_poset, check_round_trip_z}},
      {2, "weak Cousin necessity", 30, {check_necessity, check_oracle_necessity}},
      {3, "weak Cousin sufficiency", 300, {check_sufficiency}},
      {4, "engine/oracle agreement", 0, {check_oracle_gamma, check_oracle_single, check_oracle_filtration, check_oracle_necessity}},
      {5, "Hom-vanishing equivalence", 0, {check_hom_vanishing}},
      {6, "top index", 0, {check_top_index}},
      {7, "duality", 0, {check_dual_involution_objects, check_codim, check_cm_membership, check_kashiwara1, check_kashiwara2}},
      {8, "dual filtration", 0, {check_dual_canonical, check_dual_validate}},
      {9, "discreteness", 0, {check_stabilization, check_connected_discreteness, check_constant_cousin}},
  };
  std::vector<Criterion> out;
  for (auto& s : specs) {
    Criterion c{s.id, s.title, s.budget, {}, 0};
    // corpora are built before the clock starts
    (void)ctx.census();
    (void)ctx.cx_objects();
    for (auto fn : s.checks) {
      c.checks.push_back(fn(ctx));
      c.seconds += c.checks.back().seconds;
    }
    ctx.progress("criterion " + std::to_string(s.id) + (c.pass() ? " pass" : " FAIL"));
    out.push_back(std::move(c));
  }
  return out;
}

}  // namespace tstruct
