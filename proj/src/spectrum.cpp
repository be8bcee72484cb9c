#include "tstruct/spectrum.hpp"

#include <algorithm>
#include <bit>
#include <functional>
#include <numeric>
#include <set>

namespace tstruct {
namespace {

std::vector<Prime> sorted_unique(std::vector<Prime> v) {
  std::sort(v.begin(), v.end());
  v.erase(std::unique(v.begin(), v.end()), v.end());
  return v;
}

std::vector<Prime> set_and(const std::vector<Prime>& a, const std::vector<Prime>& b) {
  std::vector<Prime> r;
  std::set_intersection(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(r));
  return r;
}
std::vector<Prime> set_or(const std::vector<Prime>& a, const std::vector<Prime>& b) {
  std::vector<Prime> r;
  std::set_union(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(r));
  return r;
}
std::vector<Prime> set_minus(const std::vector<Prime>& a, const std::vector<Prime>& b) {
  std::vector<Prime> r;
  std::set_difference(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(r));
  return r;
}

}  // namespace

// ---- PrimeSet ----

PrimeSet PrimeSet::finite(std::vector<Prime> ps) { return {false, sorted_unique(std::move(ps))}; }
PrimeSet PrimeSet::cofinite_except(std::vector<Prime> ps) { return {true, sorted_unique(std::move(ps))}; }

bool PrimeSet::contains(Prime p) const {
  bool listed = std::binary_search(primes.begin(), primes.end(), p);
  return cofinite ? !listed : listed;
}

std::optional<Prime> PrimeSet::first() const {
  if (!cofinite) {
    if (primes.empty()) return std::nullopt;
    return primes.front();
  }
  return fresh_prime(primes);
}

PrimeSet operator&(const PrimeSet& a, const PrimeSet& b) {
  if (!a.cofinite && !b.cofinite) return {false, set_and(a.primes, b.primes)};
  if (!a.cofinite) return {false, set_minus(a.primes, b.primes)};
  if (!b.cofinite) return {false, set_minus(b.primes, a.primes)};
  return {true, set_or(a.primes, b.primes)};
}

PrimeSet operator|(const PrimeSet& a, const PrimeSet& b) {
  if (!a.cofinite && !b.cofinite) return {false, set_or(a.primes, b.primes)};
  if (!a.cofinite) return {true, set_minus(b.primes, a.primes)};
  if (!b.cofinite) return {true, set_minus(a.primes, b.primes)};
  return {true, set_and(a.primes, b.primes)};
}

PrimeSet complement(const PrimeSet& a) { return {!a.cofinite, a.primes}; }
PrimeSet operator-(const PrimeSet& a, const PrimeSet& b) { return a & complement(b); }
bool subset(const PrimeSet& a, const PrimeSet& b) { return (a - b).empty(); }

// ---- FinPoset ----

FinPoset::FinPoset(std::vector<std::string> ids, std::vector<std::pair<int, int>> covers)
    : ids_(std::move(ids)), covers_(std::move(covers)) {
  const int n = static_cast<int>(ids_.size());
  if (ids_.size() > kMaxPoints) throw SpectrumError("poset has more than 64 points");
  std::set<std::string> seen(ids_.begin(), ids_.end());
  if (static_cast<int>(seen.size()) != n) throw SpectrumError("duplicate point identifier");
  std::sort(covers_.begin(), covers_.end());
  if (std::adjacent_find(covers_.begin(), covers_.end()) != covers_.end())
    throw SpectrumError("duplicate covering pair");
  below_.assign(n, 0);
  for (auto [p, q] : covers_) {
    if (p < 0 || q < 0 || p >= n || q >= n) throw SpectrumError("cover references unknown point");
    if (p == q) throw SpectrumError("point covers itself");
    below_[q] |= std::uint64_t{1} << p;
  }
  // down-closure by memoized DFS; state 1 = in progress (cycle detection)
  down_.assign(n, 0);
  std::vector<int> state(n, 0);
  std::function<void(int)> visit = [&](int q) {
    if (state[q] == 2) return;
    if (state[q] == 1) throw SpectrumError("covering relation has a cycle");
    state[q] = 1;
    std::uint64_t d = std::uint64_t{1} << q;
    for (int p = 0; p < n; ++p) {
      if (below_[q] >> p & 1) {
        visit(p);
        d |= down_[p];
      }
    }
    down_[q] = d;
    state[q] = 2;
  };
  for (int q = 0; q < n; ++q) visit(q);
  up_.assign(n, 0);
  for (int q = 0; q < n; ++q)
    for (int p = 0; p < n; ++p)
      if (down_[q] >> p & 1) up_[p] |= std::uint64_t{1} << q;
  for (auto [p, q] : covers_) {
    std::uint64_t strictly_between = (down_[q] & ~(std::uint64_t{1} << q)) & (up_[p] & ~(std::uint64_t{1} << p));
    if (strictly_between)
      throw SpectrumError("covering pair (" + ids_[p] + "," + ids_[q] + ") is implied transitively");
  }
}

int FinPoset::index_of(const std::string& id) const {
  auto it = std::find(ids_.begin(), ids_.end(), id);
  if (it == ids_.end()) throw SpectrumError("unknown point '" + id + "'");
  return static_cast<int>(it - ids_.begin());
}

std::uint64_t FinPoset::full_mask() const {
  return size() == 64 ? ~std::uint64_t{0} : (std::uint64_t{1} << size()) - 1;
}

// ---- Spectrum ----

Spectrum Spectrum::from_poset(FinPoset p) {
  Spectrum s;
  s.poset_ = std::make_shared<const FinPoset>(std::move(p));
  return s;
}

const FinPoset& Spectrum::poset() const {
  if (!poset_) throw SpectrumError("Spec(Z) has no finite poset");
  return *poset_;
}

bool Spectrum::operator==(const Spectrum& o) const {
  if (is_integers() || o.is_integers()) return is_integers() == o.is_integers();
  return poset_ == o.poset_ || *poset_ == *o.poset_;
}

std::string Spectrum::name(Point p) const {
  if (is_integers()) return p.v == 0 ? "0" : "(" + std::to_string(p.v) + ")";
  return poset().ids().at(p.v);
}

Point Spectrum::parse_point(const std::string& s) const {
  if (!is_integers()) return {static_cast<std::uint64_t>(poset().index_of(s))};
  if (s == "0") return {0};
  std::string digits = s;
  if (digits.size() > 2 && digits.front() == '(' && digits.back() == ')')
    digits = digits.substr(1, digits.size() - 2);
  if (digits.empty() || !std::all_of(digits.begin(), digits.end(), [](char c) { return c >= '0' && c <= '9'; }))
    throw SpectrumError("unknown point '" + s + "'");
  std::uint64_t v = 0;
  try {
    v = std::stoull(digits);
  } catch (const std::exception&) {
    throw SpectrumError("point out of range '" + s + "'");
  }
  if (!is_prime(v)) throw SpectrumError("not a prime: " + s);
  return {v};
}

bool Spectrum::contains_point(Point p) const {
  if (is_integers()) return p.v == 0 || is_prime(p.v);
  return p.v < poset().size();
}

// ---- SpSubset ----

SpSubset SpSubset::whole(const Spectrum& s) {
  if (s.is_integers()) return {true, PrimeSet::all(), 0};
  return of_mask(s.poset().full_mask());
}

SpSubset operator&(const SpSubset& a, const SpSubset& b) {
  return {a.generic && b.generic, a.maximals & b.maximals, a.mask & b.mask};
}
SpSubset operator|(const SpSubset& a, const SpSubset& b) {
  return {a.generic || b.generic, a.maximals | b.maximals, a.mask | b.mask};
}
bool subset(const SpSubset& a, const SpSubset& b) {
  return (!a.generic || b.generic) && subset(a.maximals, b.maximals) && (a.mask & ~b.mask) == 0;
}

bool contains(const Spectrum& s, const SpSubset& z, Point p) {
  if (s.is_integers()) return p.v == 0 ? z.generic : z.maximals.contains(p.v);
  return z.mask >> p.v & 1;
}

bool is_whole(const Spectrum& s, const SpSubset& z) {
  if (s.is_integers()) return z.generic && z.maximals.is_all();
  return z.mask == s.poset().full_mask();
}

bool is_valid_subset(const Spectrum& s, const SpSubset& z) {
  if (s.is_integers()) {
    if (z.mask != 0) return false;
    if (z.generic && !z.maximals.is_all()) return false;
    return std::all_of(z.maximals.primes.begin(), z.maximals.primes.end(), [](Prime p) { return is_prime(p); });
  }
  const auto& P = s.poset();
  if (z.generic || !z.maximals.empty() || (z.mask & ~P.full_mask())) return false;
  for (std::size_t i = 0; i < P.size(); ++i)
    if ((z.mask >> i & 1) && (P.up(i) & ~z.mask)) return false;
  return true;
}

SpSubset closed_point_set(const Spectrum& s, Point p) {
  if (s.is_integers()) return p.v == 0 ? SpSubset::whole(s) : SpSubset::finite({p.v});
  return SpSubset::of_mask(s.poset().up(static_cast<int>(p.v)));
}

std::string describe(const Spectrum& s, const SpSubset& z) {
  if (s.is_integers()) {
    if (z.generic) return "Spec(Z)";
    std::string r = z.maximals.cofinite ? "all maximals except {" : "{";
    for (std::size_t i = 0; i < z.maximals.primes.size(); ++i)
      r += (i ? "," : "") + std::to_string(z.maximals.primes[i]);
    return r + "}";
  }
  std::string r = "{";
  bool first = true;
  for (std::size_t i = 0; i < s.poset().size(); ++i) {
    if (z.mask >> i & 1) {
      r += (first ? "" : ",") + s.poset().ids()[i];
      first = false;
    }
  }
  return r + "}";
}

SpSubset specialization_closure(const Spectrum& s, const std::vector<Point>& pts) {
  SpSubset r;
  for (Point p : pts) {
    if (!s.contains_point(p)) throw SpectrumError("point not in spectrum");
    r = r | closed_point_set(s, p);
  }
  return r;
}

std::vector<Point> immediate_generalizations(const Spectrum& s, Point q) {
  if (!s.contains_point(q)) throw SpectrumError("point not in spectrum");
  if (s.is_integers()) return q.v == 0 ? std::vector<Point>{} : std::vector<Point>{Point{0}};
  std::vector<Point> r;
  std::uint64_t b = s.poset().below(static_cast<int>(q.v));
  for (std::size_t i = 0; i < s.poset().size(); ++i)
    if (b >> i & 1) r.push_back({i});
  return r;
}

PairWitness is_open_closed(const Spectrum& s, const SpSubset& z) {
  if (s.is_integers()) {
    if (!z.generic) {
      if (auto q = z.maximals.first()) return {false, std::make_pair(Point{*q}, Point{0})};
    }
    return {};
  }
  const auto& P = s.poset();
  for (std::size_t q = 0; q < P.size(); ++q) {
    if (!(z.mask >> q & 1)) continue;
    std::uint64_t missing = P.below(static_cast<int>(q)) & ~z.mask;
    if (missing) return {false, std::make_pair(Point{q}, Point{static_cast<std::uint64_t>(std::countr_zero(missing))})};
  }
  return {};
}

std::vector<SpSubset> connected_components(const Spectrum& s) {
  if (s.is_integers()) return {SpSubset::whole(s)};
  const auto& P = s.poset();
  std::vector<int> parent(P.size());
  std::iota(parent.begin(), parent.end(), 0);
  std::function<int(int)> find = [&](int x) { return parent[x] == x ? x : parent[x] = find(parent[x]); };
  for (auto [p, q] : P.covers()) parent[find(p)] = find(q);
  std::map<int, std::uint64_t> comps;
  for (std::size_t i = 0; i < P.size(); ++i) comps[find(static_cast<int>(i))] |= std::uint64_t{1} << i;
  std::vector<SpSubset> r;
  for (auto& [root, m] : comps) r.push_back(SpSubset::of_mask(m));
  std::sort(r.begin(), r.end(), [](const SpSubset& a, const SpSubset& b) {
    return std::countr_zero(a.mask) < std::countr_zero(b.mask);
  });
  return r;
}

int CodimFn::operator()(const Spectrum& s, Point p) const {
  if (s.is_integers()) {
    if (p.v == 0) return generic;
    auto it = overrides.find(p.v);
    return it == overrides.end() ? maximal : it->second;
  }
  if (values.size() != s.poset().size()) throw SpectrumError("codimension function is not total");
  return values.at(p.v);
}

PairWitness validate_codim_fn(const Spectrum& s, const CodimFn& d) {
  if (s.is_integers()) {
    for (auto [p, v] : d.overrides)
      if (v != d.generic + 1) return {false, std::make_pair(Point{0}, Point{p})};
    if (d.maximal != d.generic + 1) {
      std::vector<Prime> taken;
      for (auto& kv : d.overrides) taken.push_back(kv.first);
      return {false, std::make_pair(Point{0}, Point{fresh_prime(taken)})};
    }
    return {};
  }
  if (d.values.size() != s.poset().size()) throw SpectrumError("codimension function is not total");
  for (auto [p, q] : s.poset().covers())
    if (d.values[q] != d.values[p] + 1)
      return {false, std::make_pair(Point{static_cast<std::uint64_t>(p)}, Point{static_cast<std::uint64_t>(q)})};
  return {};
}

std::vector<int> heights(const Spectrum& s) {
  if (s.is_integers()) throw SpectrumError("heights: finite posets only");
  const auto& P = s.poset();
  const int n = static_cast<int>(P.size());
  std::vector<int> h(n, -1);
  std::function<int(int)> height = [&](int q) {
    if (h[q] >= 0) return h[q];
    int best = 0;
    for (int p = 0; p < n; ++p)
      if (P.below(q) >> p & 1) best = std::max(best, height(p) + 1);
    return h[q] = best;
  };
  for (int q = 0; q < n; ++q) height(q);
  return h;
}

CodimFn height_codim(const Spectrum& s) {
  if (s.is_integers()) return CodimFn::integers_default();
  CodimFn d;
  d.values = heights(s);
  return d;
}

int krull_dimension(const Spectrum& s) {
  if (s.is_integers()) return 1;
  if (s.poset().size() == 0) return -1;
  auto h = heights(s);
  return *std::max_element(h.begin(), h.end());
}

std::vector<Point> minimal_points(const Spectrum& s) {
  if (s.is_integers()) return {Point{0}};
  std::vector<Point> r;
  for (std::size_t i = 0; i < s.poset().size(); ++i)
    if (s.poset().below(static_cast<int>(i)) == 0) r.push_back({i});
  return r;
}

std::vector<Prime> mentioned_primes(const SpSubset& z) { return z.maximals.primes; }

}  // namespace tstruct
