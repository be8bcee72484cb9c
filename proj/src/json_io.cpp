#include "tstruct/json_io.hpp"

#include <limits>

namespace tstruct {
namespace {

[[noreturn]] void fail(const std::string& path, const std::string& msg) {
  throw JsonError((path.empty() ? std::string("/") : path) + ": " + msg);
}

const Json& field(const Json& j, const char* key, const std::string& path) {
  if (!j.is_object()) fail(path, "expected an object");
  auto it = j.find(key);
  if (it == j.end()) fail(path, std::string("missing \"") + key + "\"");
  return *it;
}

std::string sub(const std::string& path, const std::string& key) { return path + "/" + key; }
std::string sub(const std::string& path, std::size_t i) { return path + "/" + std::to_string(i); }

long long as_int(const Json& j, const std::string& path) {
  if (j.is_number_integer()) return j.get<long long>();
  if (j.is_string()) {
    BigInt n = bigint_from_json(j, path);
    if (n > std::numeric_limits<long long>::max() || n < std::numeric_limits<long long>::min())
      fail(path, "integer out of range");
    return static_cast<long long>(n);
  }
  fail(path, "expected an integer");
}

int as_small(const Json& j, const std::string& path, long long lo = -1000000, long long hi = 1000000) {
  long long v = as_int(j, path);
  if (v < lo || v > hi) fail(path, "value out of range");
  return static_cast<int>(v);
}

const Json& as_array(const Json& j, const std::string& path) {
  if (!j.is_array()) fail(path, "expected an array");
  return j;
}

Prime as_prime(const Json& j, const std::string& path) {
  long long v = as_int(j, path);
  if (v < 2 || !is_prime(static_cast<std::uint64_t>(v))) fail(path, "not a prime");
  return static_cast<Prime>(v);
}

std::vector<Prime> prime_list(const Json& j, const std::string& path) {
  std::vector<Prime> ps;
  const Json& a = as_array(j, path);
  for (std::size_t i = 0; i < a.size(); ++i) ps.push_back(as_prime(a[i], sub(path, i)));
  return ps;
}

Json primes_json(const std::vector<Prime>& ps) {
  Json a = Json::array();
  for (Prime p : ps) a.push_back(to_json(BigInt(p)));
  return a;
}

template <class F>
auto wrap(const std::string& path, F&& f) {
  try {
    return f();
  } catch (const JsonError&) {
    throw;
  } catch (const std::invalid_argument& e) {
    fail(path, e.what());
  }
}

}  // namespace

Json parse_json(const std::string& text, const std::string& source) {
  try {
    return Json::parse(text);
  } catch (const Json::parse_error& e) {
    std::size_t line = 1, col = 1;
    for (std::size_t i = 0; i + 1 < e.byte && i < text.size(); ++i) {
      if (text[i] == '\n') {
        ++line;
        col = 1;
      } else {
        ++col;
      }
    }
    throw JsonError(source + ":" + std::to_string(line) + ":" + std::to_string(col) + ": malformed JSON");
  }
}

std::string dump(const Json& j) { return j.dump(); }

Json with_schema(const Json& j) {
  Json r = Json::object();
  r["schema"] = kSchema;
  for (auto it = j.begin(); it != j.end(); ++it)
    if (it.key() != "schema") r[it.key()] = it.value();
  return r;
}

Json to_json(const BigInt& n) {
  static const BigInt limit = BigInt(1) << 53;
  if (abs(n) < limit) return static_cast<long long>(n);
  return n.str();
}

BigInt bigint_from_json(const Json& j, const std::string& path) {
  if (j.is_number_integer()) return BigInt(j.get<long long>());
  if (j.is_string()) {
    const std::string& s = j.get_ref<const std::string&>();
    std::size_t i = (!s.empty() && s[0] == '-') ? 1 : 0;
    if (i == s.size()) fail(path, "expected a decimal integer");
    for (std::size_t k = i; k < s.size(); ++k)
      if (s[k] < '0' || s[k] > '9') fail(path, "expected a decimal integer");
    return BigInt(s);
  }
  fail(path, "expected an integer");
}

// ---- spectra and subsets ----

Json to_json(const Spectrum& s) {
  if (s.is_integers()) return "Z";
  Json pts = Json::array(), covers = Json::array();
  for (auto& id : s.poset().ids()) pts.push_back({{"id", id}});
  for (auto [a, b] : s.poset().covers()) covers.push_back({s.poset().ids()[a], s.poset().ids()[b]});
  return {{"points", pts}, {"covers", covers}};
}

FinPoset poset_from_json(const Json& j, const std::string& path) {
  std::vector<std::string> ids;
  const Json& pts = as_array(field(j, "points", path), sub(path, "points"));
  for (std::size_t i = 0; i < pts.size(); ++i) {
    const std::string p = sub(sub(path, "points"), i);
    const Json& id = pts[i].is_string() ? pts[i] : field(pts[i], "id", p);
    if (!id.is_string()) fail(p, "point id must be a string");
    ids.push_back(id.get<std::string>());
  }
  std::vector<std::pair<int, int>> covers;
  if (j.contains("covers")) {
    const Json& cs = as_array(j["covers"], sub(path, "covers"));
    for (std::size_t i = 0; i < cs.size(); ++i) {
      const std::string p = sub(sub(path, "covers"), i);
      if (!cs[i].is_array() || cs[i].size() != 2 || !cs[i][0].is_string() || !cs[i][1].is_string())
        fail(p, "a cover is a pair of point ids");
      auto idx = [&](const Json& x) {
        auto it = std::find(ids.begin(), ids.end(), x.get<std::string>());
        if (it == ids.end()) fail(p, "unknown point '" + x.get<std::string>() + "'");
        return static_cast<int>(it - ids.begin());
      };
      covers.emplace_back(idx(cs[i][0]), idx(cs[i][1]));
    }
  }
  return wrap(path, [&] { return FinPoset(ids, covers); });
}

Spectrum spectrum_from_json(const Json& j, const std::string& path) {
  if (j.is_string()) {
    const std::string& s = j.get_ref<const std::string&>();
    if (s == "Z" || s == "integers") return Spectrum::integers();
    fail(path, "unknown spectrum '" + s + "'");
  }
  if (j.is_object() && j.contains("poset")) return spectrum_from_json(j["poset"], sub(path, "poset"));
  return Spectrum::from_poset(poset_from_json(j, path));
}

Json to_json(const PrimeSet& ps) {
  return {{"kind", ps.cofinite ? "cofinite" : "finite"}, {"primes", primes_json(ps.primes)}};
}

PrimeSet prime_set_from_json(const Json& j, const std::string& path) {
  const Json& kind = field(j, "kind", path);
  if (!kind.is_string()) fail(sub(path, "kind"), "expected a string");
  const std::string k = kind.get<std::string>();
  if (k == "all") return PrimeSet::all();
  std::vector<Prime> ps = j.contains("primes") ? prime_list(j["primes"], sub(path, "primes")) : std::vector<Prime>{};
  if (k == "finite") return PrimeSet::finite(ps);
  if (k == "cofinite") return PrimeSet::cofinite_except(ps);
  fail(sub(path, "kind"), "expected finite, cofinite or all");
}

Json to_json(const Spectrum& s, const SpSubset& z) {
  if (!s.is_integers()) {
    Json pts = Json::array();
    for (std::size_t i = 0; i < s.poset().size(); ++i)
      if (z.mask >> i & 1) pts.push_back(s.poset().ids()[i]);
    return {{"kind", "points"}, {"points", pts}};
  }
  if (z.generic) return {{"kind", "whole"}};
  return {{"kind", z.maximals.cofinite ? "cofinite" : "finite"}, {"primes", primes_json(z.maximals.primes)}};
}

SpSubset subset_from_json(const Spectrum& s, const Json& j, const std::string& path) {
  const Json& kind = field(j, "kind", path);
  if (!kind.is_string()) fail(sub(path, "kind"), "expected a string");
  const std::string k = kind.get<std::string>();
  SpSubset z;
  if (k == "whole") {
    z = SpSubset::whole(s);
  } else if (k == "empty") {
    z = SpSubset::empty();
  } else if (k == "finite" || k == "cofinite") {
    if (!s.is_integers()) fail(path, "finite/cofinite subsets need Spec(Z); use \"points\"");
    auto ps = prime_list(field(j, "primes", path), sub(path, "primes"));
    z = k == "finite" ? SpSubset::finite(ps) : SpSubset::cofinite(ps);
  } else if (k == "points") {
    const Json& pts = as_array(field(j, "points", path), sub(path, "points"));
    std::vector<Point> ps;
    for (std::size_t i = 0; i < pts.size(); ++i) {
      if (!pts[i].is_string()) fail(sub(sub(path, "points"), i), "expected a point name");
      ps.push_back(wrap(sub(sub(path, "points"), i), [&] { return s.parse_point(pts[i].get<std::string>()); }));
    }
    z = specialization_closure(s, ps);
    if (!s.is_integers()) {
      std::uint64_t exact = 0;
      for (auto p : ps) exact |= std::uint64_t{1} << p.v;
      if (exact != z.mask) fail(path, "points do not form a specialization-closed set");
    }
  } else {
    fail(sub(path, "kind"), "expected whole, empty, finite, cofinite or points");
  }
  if (!is_valid_subset(s, z)) fail(path, "invalid subset for this spectrum");
  return z;
}

// ---- filtrations ----

Json to_json(const SpFiltration& phi) {
  return {{"spectrum", to_json(phi.spec)},
          {"tail", to_json(phi.spec, phi.tail)},
          {"window", {{"start", phi.start}, {"end", phi.end}}},
          {"levels",
           [&] {
             Json a = Json::array();
             for (auto& l : phi.levels) a.push_back(to_json(phi.spec, l));
             return a;
           }()},
          {"head", to_json(phi.spec, phi.head)}};
}

SpFiltration filtration_from_json(const Json& j, const std::string& path) {
  Spectrum s = j.contains("spectrum") ? spectrum_from_json(j["spectrum"], sub(path, "spectrum")) : Spectrum::integers();
  SpSubset tail = j.contains("tail") ? subset_from_json(s, j["tail"], sub(path, "tail")) : SpSubset::whole(s);
  SpSubset head = j.contains("head") ? subset_from_json(s, j["head"], sub(path, "head")) : SpSubset::empty();
  int start = 0;
  if (j.contains("window")) start = as_small(field(j["window"], "start", sub(path, "window")), sub(path, "window/start"));
  std::vector<SpSubset> levels;
  if (j.contains("levels")) {
    const Json& ls = as_array(j["levels"], sub(path, "levels"));
    for (std::size_t i = 0; i < ls.size(); ++i) levels.push_back(subset_from_json(s, ls[i], sub(sub(path, "levels"), i)));
  }
  if (j.contains("window") && j["window"].contains("end")) {
    int end = as_small(j["window"]["end"], sub(path, "window/end"));
    if (end - start + 1 != static_cast<int>(levels.size())) fail(sub(path, "window"), "window does not match the number of levels");
  }
  return wrap(path, [&] { return make_filtration(s, tail, start, levels, head); });
}

// ---- complexes and modules ----

Json to_json(const FreeComplex& x) {
  Json diffs = Json::array();
  for (auto& d : x.diffs) {
    Json m = Json::array();
    for (int r = 0; r < d.rows; ++r) {
      Json row = Json::array();
      for (int c = 0; c < d.cols; ++c) row.push_back(to_json(d(r, c)));
      m.push_back(row);
    }
    diffs.push_back(m);
  }
  return {{"minDeg", x.min_degree}, {"ranks", x.ranks}, {"diffs", diffs}};
}

FreeComplex complex_from_json(const Json& j, const std::string& path) {
  FreeComplex x;
  x.min_degree = as_small(field(j, "minDeg", path), sub(path, "minDeg"));
  const Json& rs = as_array(field(j, "ranks", path), sub(path, "ranks"));
  for (std::size_t i = 0; i < rs.size(); ++i) x.ranks.push_back(as_small(rs[i], sub(sub(path, "ranks"), i), 0, 10000));
  const Json& ds = j.contains("diffs") ? as_array(j["diffs"], sub(path, "diffs")) : Json::array();
  if (x.ranks.size() > 0 && ds.size() + 1 != x.ranks.size()) fail(sub(path, "diffs"), "expected one matrix per consecutive pair of terms");
  for (std::size_t i = 0; i < ds.size(); ++i) {
    const std::string p = sub(sub(path, "diffs"), i);
    Matrix m(x.ranks[i + 1], x.ranks[i]);
    const Json& rows = as_array(ds[i], p);
    if (static_cast<int>(rows.size()) != m.rows && !(m.rows == 0 && rows.empty())) fail(p, "wrong number of rows");
    for (int r = 0; r < m.rows; ++r) {
      const Json& row = as_array(rows[r], sub(p, r));
      if (static_cast<int>(row.size()) != m.cols) fail(sub(p, r), "wrong number of columns");
      for (int c = 0; c < m.cols; ++c) m(r, c) = bigint_from_json(row[c], sub(sub(p, r), c));
    }
    x.diffs.push_back(std::move(m));
  }
  wrap(path, [&] {
    validate(x);
    return 0;
  });
  return x;
}

Json to_json(const FgZModule& m) {
  Json t = Json::array();
  for (auto& part : m.torsion) t.push_back({{"p", to_json(BigInt(part.p))}, {"e", part.e}, {"mult", part.mult}});
  return {{"rank", m.rank}, {"torsion", t}, {"text", describe(m)}};
}

Json to_json(const Atom& a) {
  switch (a.kind) {
    case AtomKind::Free:
      return {{"kind", "free"}, {"rank", a.mult}};
    case AtomKind::Localized:
      return {{"kind", "localized"}, {"inverted", to_json(a.set)}, {"rank", a.mult}};
    case AtomKind::Torsion:
      return {{"kind", "torsion"}, {"p", to_json(BigInt(a.p))}, {"e", a.e}, {"mult", a.mult}};
    case AtomKind::Prufer:
      return {{"kind", "prufer"}, {"primes", to_json(a.set)}, {"mult", a.mult}};
  }
  return {};
}

Atom atom_from_json(const Json& j, const std::string& path) {
  const Json& kind = field(j, "kind", path);
  if (!kind.is_string()) fail(sub(path, "kind"), "expected a string");
  const std::string k = kind.get<std::string>();
  auto mult = [&](const char* key) { return j.contains(key) ? as_small(j[key], sub(path, key), 0, 1000000) : 1; };
  if (k == "free") return Atom::free(mult("rank"));
  if (k == "localized")
    return Atom::localized(prime_set_from_json(field(j, "inverted", path), sub(path, "inverted")), mult("rank"));
  if (k == "torsion")
    return Atom::torsion(as_prime(field(j, "p", path), sub(path, "p")), as_small(field(j, "e", path), sub(path, "e"), 1, 4096),
                         mult("mult"));
  if (k == "prufer") return Atom::prufer(prime_set_from_json(field(j, "primes", path), sub(path, "primes")), mult("mult"));
  fail(sub(path, "kind"), "expected free, localized, torsion or prufer");
}

Json to_json(const ElementaryModule& m) {
  Json a = Json::array();
  for (auto& atom : m.atoms()) a.push_back(to_json(atom));
  return a;
}

Json to_json(const FormalObject& x) {
  Json ds = Json::array();
  for (auto& [d, m] : x.degrees()) ds.push_back({{"degree", d}, {"atoms", to_json(m)}, {"text", describe(m)}});
  Json r = {{"degrees", ds}};
  if (!x.certificates.empty()) {
    Json cs = Json::array();
    for (auto& c : x.certificates) {
      Json cj = {{"degree", c.degree}, {"sub", to_json(c.sub)}, {"quot", to_json(c.quot)}};
      if (c.resolved) cj["resolved"] = to_json(*c.resolved);
      cs.push_back(cj);
    }
    r["certificates"] = cs;
  }
  return r;
}

FormalObject object_from_json(const Json& j, const std::string& path) {
  FormalObject x;
  const Json& ds = as_array(field(j, "degrees", path), sub(path, "degrees"));
  auto module = [&](const Json& a, const std::string& p) {
    std::vector<Atom> atoms;
    const Json& arr = as_array(a, p);
    for (std::size_t k = 0; k < arr.size(); ++k) atoms.push_back(atom_from_json(arr[k], sub(p, k)));
    return ElementaryModule(atoms);
  };
  for (std::size_t i = 0; i < ds.size(); ++i) {
    const std::string p = sub(sub(path, "degrees"), i);
    x.add(as_small(field(ds[i], "degree", p), sub(p, "degree")), module(field(ds[i], "atoms", p), sub(p, "atoms")));
  }
  if (j.contains("certificates")) {
    const Json& cs = as_array(j["certificates"], sub(path, "certificates"));
    for (std::size_t i = 0; i < cs.size(); ++i) {
      const std::string p = sub(sub(path, "certificates"), i);
      ExtensionCertificate c{as_small(field(cs[i], "degree", p), sub(p, "degree")),
                             module(field(cs[i], "sub", p), sub(p, "sub")),
                             module(field(cs[i], "quot", p), sub(p, "quot")), std::nullopt};
      if (cs[i].contains("resolved")) c.resolved = module(cs[i]["resolved"], sub(p, "resolved"));
      x.certificates.push_back(std::move(c));
    }
  }
  return x;
}

FormalObject any_object_from_json(const Json& j) {
  if (j.is_object() && j.contains("minDeg")) return from_free_complex(complex_from_json(j));
  return object_from_json(j);
}

Json to_json(const Spectrum& s, const CousinReport& r) {
  Json ws = Json::array();
  for (auto& w : r.witnesses) ws.push_back({w.j, s.name(w.q), s.name(w.p)});
  return {{"weak", r.holds}, {"witnesses", ws}};
}

}  // namespace tstruct
