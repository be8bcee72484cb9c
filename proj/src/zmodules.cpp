#include "tstruct/zmodules.hpp"

#include <algorithm>
#include <bit>
#include <sstream>

namespace tstruct {
namespace {

std::vector<TorsionPart> normalize(std::vector<TorsionPart> ts) {
  std::sort(ts.begin(), ts.end(), [](auto& x, auto& y) { return std::tie(x.p, x.e) < std::tie(y.p, y.e); });
  std::vector<TorsionPart> out;
  for (auto& t : ts) {
    if (t.mult == 0 || t.e == 0) continue;
    if (!out.empty() && out.back().p == t.p && out.back().e == t.e)
      out.back().mult += t.mult;
    else
      out.push_back(t);
  }
  return out;
}

auto atom_key(const Atom& a) { return std::tie(a.kind, a.set, a.p, a.e); }

const SpSubset kWhole{true, PrimeSet::all(), 0};

}  // namespace

// ---- FgZModule ----

FgZModule FgZModule::cyclic(const BigInt& n) {
  if (n == 0) return free(1);
  return from_invariants(0, {n});
}

FgZModule FgZModule::from_invariants(int rank, const std::vector<BigInt>& ds) {
  FgZModule m{rank, {}};
  for (const auto& d : ds) {
    if (d == 0) {
      ++m.rank;
      continue;
    }
    if (boost::multiprecision::abs(d) == 1) continue;
    for (auto [p, e] : factor(d)) m.torsion.push_back({p, e, 1});
  }
  m.torsion = normalize(std::move(m.torsion));
  return m;
}

std::vector<Prime> FgZModule::torsion_primes() const {
  std::vector<Prime> ps;
  for (auto& t : torsion)
    if (ps.empty() || ps.back() != t.p) ps.push_back(t.p);
  return ps;
}

FgZModule direct_sum(const FgZModule& a, const FgZModule& b) {
  FgZModule r{a.rank + b.rank, a.torsion};
  r.torsion.insert(r.torsion.end(), b.torsion.begin(), b.torsion.end());
  r.torsion = normalize(std::move(r.torsion));
  return r;
}

FgZModule direct_sum_power(const FgZModule& a, int k) {
  FgZModule r{a.rank * k, a.torsion};
  for (auto& t : r.torsion) t.mult *= k;
  r.torsion = normalize(std::move(r.torsion));
  return r;
}

std::string describe(const FgZModule& m) {
  if (m.is_zero()) return "0";
  std::ostringstream os;
  bool first = true;
  auto sep = [&] {
    if (!first) os << " + ";
    first = false;
  };
  if (m.rank) {
    sep();
    os << "Z";
    if (m.rank > 1) os << "^" << m.rank;
  }
  for (auto& t : m.torsion) {
    sep();
    os << "Z/" << t.p;
    if (t.e > 1) os << "^" << t.e;
    if (t.mult > 1) os << " x" << t.mult;
  }
  return os.str();
}

SpSubset support(const FgZModule& m) {
  if (m.rank > 0) return kWhole;
  return SpSubset::finite(m.torsion_primes());
}

std::vector<Point> associated_primes(const FgZModule& m) {
  std::vector<Point> r;
  if (m.rank > 0) r.push_back(Point{0});
  for (Prime p : m.torsion_primes()) r.push_back(Point{p});
  return r;
}

// ---- FreeComplex ----

int FreeComplex::rank_at(int deg) const {
  int i = deg - min_degree;
  if (i < 0 || i >= static_cast<int>(ranks.size())) return 0;
  return ranks[i];
}

Matrix FreeComplex::diff_at(int deg) const {
  int i = deg - min_degree;
  if (i >= 0 && i < static_cast<int>(diffs.size())) return diffs[i];
  return Matrix(rank_at(deg + 1), rank_at(deg));
}

FreeComplex FreeComplex::stalk(int deg, int rank) { return {deg, {rank}, {}}; }

FreeComplex FreeComplex::koszul(const std::vector<long long>& gens, int top_degree) {
  const int r = static_cast<int>(gens.size());
  if (r > 16) throw ModuleError("too many Koszul generators");
  // Subsets of {0..r-1} of each size, in increasing numeric order.
  std::vector<std::vector<unsigned>> by_size(r + 1);
  for (unsigned s = 0; s < (1u << r); ++s) by_size[std::popcount(s)].push_back(s);
  auto index_in = [&](int k, unsigned s) {
    auto& v = by_size[k];
    return static_cast<int>(std::lower_bound(v.begin(), v.end(), s) - v.begin());
  };
  FreeComplex x;
  x.min_degree = top_degree - r;
  for (int i = r; i >= 0; --i) x.ranks.push_back(static_cast<int>(by_size[i].size()));
  // Degree top-i holds the i-th exterior power; the differential lowers i.
  for (int i = r; i >= 1; --i) {
    Matrix d(static_cast<int>(by_size[i - 1].size()), static_cast<int>(by_size[i].size()));
    for (int c = 0; c < d.cols; ++c) {
      unsigned s = by_size[i][c];
      int pos = 0;
      for (int k = 0; k < r; ++k) {
        if (!(s >> k & 1)) continue;
        long long sign = (pos % 2 == 0) ? 1 : -1;
        d(index_in(i - 1, s & ~(1u << k)), c) = sign * gens[k];
        ++pos;
      }
    }
    x.diffs.push_back(std::move(d));
  }
  return x;
}

void validate(const FreeComplex& x) {
  const int n = static_cast<int>(x.ranks.size());
  for (int r : x.ranks)
    if (r < 0) throw ModuleError("negative rank");
  if (static_cast<int>(x.diffs.size()) != std::max(0, n - 1))
    throw ModuleError("expected one differential between consecutive terms");
  for (int i = 0; i + 1 < n; ++i) {
    const Matrix& d = x.diffs[i];
    if (d.rows != x.ranks[i + 1] || d.cols != x.ranks[i])
      throw ModuleError("differential " + std::to_string(i) + " has the wrong shape");
  }
  for (int i = 0; i + 2 < n; ++i)
    if (!(x.diffs[i + 1] * x.diffs[i]).is_zero())
      throw ModuleError("d*d != 0 at degree " + std::to_string(x.min_degree + i));
}

std::map<int, FgZModule> homology(const FreeComplex& x) {
  validate(x);
  std::map<int, FgZModule> h;
  std::vector<SmithForm> snf;
  for (auto& d : x.diffs) snf.push_back(smith_normal_form(d, false));
  const int n = static_cast<int>(x.ranks.size());
  for (int i = 0; i < n; ++i) {
    int out = i < n - 1 ? snf[i].rank() : 0;
    int in = i > 0 ? snf[i - 1].rank() : 0;
    std::vector<BigInt> inv;
    if (i > 0) inv = snf[i - 1].invariants;
    FgZModule m = FgZModule::from_invariants(x.ranks[i] - out - in, inv);
    // invariants are nonzero, so from_invariants only adds torsion
    h[x.min_degree + i] = m;
  }
  return h;
}

FreeComplex dual_complex(const FreeComplex& x) {
  FreeComplex d;
  d.min_degree = -x.max_degree();
  d.ranks.assign(x.ranks.rbegin(), x.ranks.rend());
  for (auto it = x.diffs.rbegin(); it != x.diffs.rend(); ++it) d.diffs.push_back(it->transpose());
  if (x.ranks.empty()) d.min_degree = 0;
  return d;
}

FreeComplex shift(const FreeComplex& x, int k) {
  FreeComplex r = x;
  r.min_degree -= k;
  return r;
}

std::pair<FgZModule, FgZModule> tor(const FgZModule& a, const FgZModule& b) {
  FgZModule t0{a.rank * b.rank, {}}, t1;
  for (auto t : a.torsion) t0.torsion.push_back({t.p, t.e, t.mult * b.rank});
  for (auto t : b.torsion) t0.torsion.push_back({t.p, t.e, t.mult * a.rank});
  for (auto& s : a.torsion)
    for (auto& t : b.torsion)
      if (s.p == t.p) {
        TorsionPart g{s.p, std::min(s.e, t.e), s.mult * t.mult};
        t0.torsion.push_back(g);
        t1.torsion.push_back(g);
      }
  t0.torsion = normalize(std::move(t0.torsion));
  t1.torsion = normalize(std::move(t1.torsion));
  return {t0, t1};
}

TopIndices top_indices(const FreeComplex& x, Point p) {
  auto h = homology(x);
  TopIndices r;
  for (auto& [deg, m] : h) {
    bool in_supp = m.rank > 0;
    if (p.v != 0)
      for (auto& t : m.torsion) in_supp = in_supp || t.p == p.v;
    if (in_supp) r.m = deg;
  }
  for (int deg = x.min_degree; deg <= x.max_degree(); ++deg) {
    Matrix out = x.diff_at(deg), in = x.diff_at(deg - 1);
    int dim = p.v == 0 ? x.rank_at(deg) - rank_rational(out) - rank_rational(in)
                       : x.rank_at(deg) - rank_mod_p(out, p.v) - rank_mod_p(in, p.v);
    if (dim > 0) r.h = deg;
  }
  if (r.m != r.h) throw std::logic_error("top index mismatch: m_p differs from h_p");
  return r;
}

// ---- Atoms ----

bool Atom::is_fg() const {
  return kind == AtomKind::Free || kind == AtomKind::Torsion || (kind == AtomKind::Localized && set.empty());
}

ElementaryModule::ElementaryModule(std::vector<Atom> atoms) {
  for (auto& a : atoms) {
    if (a.mult < 0) throw ModuleError("negative multiplicity");
    if (a.kind == AtomKind::Localized && a.set.empty()) a.kind = AtomKind::Free;
    if (a.kind == AtomKind::Free) a.set = {};
    if (a.kind != AtomKind::Torsion) a.p = 0, a.e = 0;
    if (a.kind == AtomKind::Torsion && !is_prime(a.p)) throw ModuleError("torsion atom needs a prime");
    if (a.kind == AtomKind::Torsion && a.e <= 0) continue;
    if (a.kind == AtomKind::Prufer && a.set.empty()) continue;
    if (a.mult == 0) continue;
    atoms_.push_back(a);
  }
  std::sort(atoms_.begin(), atoms_.end(), [](const Atom& x, const Atom& y) { return atom_key(x) < atom_key(y); });
  std::vector<Atom> merged;
  for (auto& a : atoms_) {
    if (!merged.empty() && atom_key(merged.back()) == atom_key(a))
      merged.back().mult += a.mult;
    else
      merged.push_back(a);
  }
  atoms_ = std::move(merged);
}

ElementaryModule ElementaryModule::from_fg(const FgZModule& m) {
  std::vector<Atom> as{Atom::free(m.rank)};
  for (auto& t : m.torsion) as.push_back(Atom::torsion(t.p, t.e, t.mult));
  return ElementaryModule(as);
}

bool ElementaryModule::is_fg() const {
  return std::all_of(atoms_.begin(), atoms_.end(), [](const Atom& a) { return a.is_fg(); });
}

FgZModule ElementaryModule::to_fg() const {
  if (!is_fg()) throw ModuleError("module is not finitely generated");
  FgZModule m;
  for (auto& a : atoms_) {
    if (a.kind == AtomKind::Free) m.rank += a.mult;
    if (a.kind == AtomKind::Torsion) m.torsion.push_back({a.p, a.e, a.mult});
  }
  m.torsion = normalize(std::move(m.torsion));
  return m;
}

SpSubset support(const Atom& a) {
  switch (a.kind) {
    case AtomKind::Free:
    case AtomKind::Localized:
      return kWhole;
    case AtomKind::Torsion:
      return SpSubset::finite({a.p});
    case AtomKind::Prufer:
      return SpSubset{false, a.set, 0};
  }
  return {};
}

SpSubset ElementaryModule::support() const {
  SpSubset s;
  for (auto& a : atoms_) s = s | tstruct::support(a);
  return s;
}

std::vector<Prime> ElementaryModule::mentioned_primes() const {
  std::vector<Prime> ps;
  for (auto& a : atoms_) {
    ps.insert(ps.end(), a.set.primes.begin(), a.set.primes.end());
    if (a.kind == AtomKind::Torsion) ps.push_back(a.p);
  }
  std::sort(ps.begin(), ps.end());
  ps.erase(std::unique(ps.begin(), ps.end()), ps.end());
  return ps;
}

ElementaryModule ElementaryModule::operator+(const ElementaryModule& o) const {
  std::vector<Atom> as = atoms_;
  as.insert(as.end(), o.atoms_.begin(), o.atoms_.end());
  return ElementaryModule(std::move(as));
}

ElementaryModule ElementaryModule::times(int k) const {
  std::vector<Atom> as = atoms_;
  for (auto& a : as) a.mult *= k;
  return ElementaryModule(std::move(as));
}

namespace {

std::string describe_set(const PrimeSet& s) {
  std::ostringstream os;
  if (s.cofinite) os << "all";
  if (s.cofinite && !s.primes.empty()) os << " except ";
  os << "{";
  for (std::size_t i = 0; i < s.primes.size(); ++i) os << (i ? "," : "") << s.primes[i];
  os << "}";
  if (s.cofinite && s.primes.empty()) return "all";
  return os.str();
}

}  // namespace

std::string describe(const Atom& a) {
  std::ostringstream os;
  switch (a.kind) {
    case AtomKind::Free:
      os << "Z";
      break;
    case AtomKind::Localized:
      os << "Z[1/" << describe_set(a.set) << "]";
      break;
    case AtomKind::Torsion:
      os << "Z/" << a.p;
      if (a.e > 1) os << "^" << a.e;
      break;
    case AtomKind::Prufer:
      os << "Prufer" << describe_set(a.set);
      break;
  }
  if (a.mult > 1) os << " x" << a.mult;
  return os.str();
}

std::string describe(const ElementaryModule& m) {
  if (m.is_zero()) return "0";
  std::string s;
  for (auto& a : m.atoms()) s += (s.empty() ? "" : " + ") + describe(a);
  return s;
}

HomExt hom_ext(const Atom& a, const Atom& b) {
  if (!a.is_fg()) throw ModuleError("unsupported pair: source " + describe(a) + " is not finitely generated");
  HomExt r;
  if (a.kind == AtomKind::Free) {
    Atom h = b;
    h.mult *= a.mult;
    r.hom = ElementaryModule({h});
    return r;
  }
  const int m = a.mult * b.mult;
  const Prime p = a.p;
  switch (b.kind) {
    case AtomKind::Free:
      r.ext = ElementaryModule({Atom::torsion(p, a.e, m)});
      break;
    case AtomKind::Localized:
      if (!b.set.contains(p)) r.ext = ElementaryModule({Atom::torsion(p, a.e, m)});
      break;
    case AtomKind::Torsion:
      if (b.p == p) {
        r.hom = ElementaryModule({Atom::torsion(p, std::min(a.e, b.e), m)});
        r.ext = r.hom;
      }
      break;
    case AtomKind::Prufer:
      if (b.set.contains(p)) r.hom = ElementaryModule({Atom::torsion(p, a.e, m)});
      break;
  }
  return r;
}

HomExt hom_ext(const ElementaryModule& a, const ElementaryModule& b) {
  HomExt r;
  for (auto& x : a.atoms())
    for (auto& y : b.atoms()) {
      HomExt t = hom_ext(x, y);
      r.hom = r.hom + t.hom;
      r.ext = r.ext + t.ext;
    }
  return r;
}

KerCoker mult_ker_coker(const Atom& b, const BigInt& d) {
  KerCoker r;
  if (d == 0) {
    r.ker = r.coker = ElementaryModule({b});
    return r;
  }
  auto fs = factor(d);
  std::vector<Atom> ker, coker;
  switch (b.kind) {
    case AtomKind::Free:
      for (auto [p, v] : fs) coker.push_back(Atom::torsion(p, v, b.mult));
      break;
    case AtomKind::Localized:
      for (auto [p, v] : fs)
        if (!b.set.contains(p)) coker.push_back(Atom::torsion(p, v, b.mult));
      break;
    case AtomKind::Torsion:
      for (auto [p, v] : fs)
        if (p == b.p) {
          ker.push_back(Atom::torsion(p, std::min(v, b.e), b.mult));
          coker.push_back(Atom::torsion(p, std::min(v, b.e), b.mult));
        }
      break;
    case AtomKind::Prufer:
      for (auto [p, v] : fs)
        if (b.set.contains(p)) ker.push_back(Atom::torsion(p, v, b.mult));
      break;
  }
  r.ker = ElementaryModule(ker);
  r.coker = ElementaryModule(coker);
  return r;
}

}  // namespace tstruct
