#include "tstruct/derived.hpp"

#include <algorithm>
#include <sstream>

namespace tstruct {

// ---- FormalObject ----

FormalObject::FormalObject(std::initializer_list<std::pair<const int, ElementaryModule>> init) {
  for (auto& [d, m] : init) add(d, m);
}

FormalObject FormalObject::stalk(int degree, const ElementaryModule& m) {
  FormalObject x;
  x.add(degree, m);
  return x;
}

void FormalObject::add(int degree, const ElementaryModule& m) {
  if (m.is_zero()) return;
  auto it = degrees_.find(degree);
  if (it == degrees_.end())
    degrees_.emplace(degree, m);
  else
    it->second = it->second + m;
}

const ElementaryModule& FormalObject::at(int degree) const {
  static const ElementaryModule zero;
  auto it = degrees_.find(degree);
  return it == degrees_.end() ? zero : it->second;
}

bool FormalObject::is_fg() const {
  return std::all_of(degrees_.begin(), degrees_.end(), [](auto& kv) { return kv.second.is_fg(); });
}

std::optional<int> FormalObject::min_degree() const {
  if (degrees_.empty()) return std::nullopt;
  return degrees_.begin()->first;
}

std::optional<int> FormalObject::max_degree() const {
  if (degrees_.empty()) return std::nullopt;
  return degrees_.rbegin()->first;
}

std::vector<Prime> FormalObject::mentioned_primes() const {
  std::vector<Prime> ps;
  for (auto& [d, m] : degrees_) {
    auto q = m.mentioned_primes();
    ps.insert(ps.end(), q.begin(), q.end());
  }
  std::sort(ps.begin(), ps.end());
  ps.erase(std::unique(ps.begin(), ps.end()), ps.end());
  return ps;
}

FormalObject FormalObject::shifted(int k) const {
  FormalObject r;
  for (auto& [d, m] : degrees_) r.add(d - k, m);
  r.certificates = certificates;
  for (auto& c : r.certificates) c.degree -= k;
  return r;
}

FormalObject FormalObject::operator+(const FormalObject& o) const {
  FormalObject r = *this;
  for (auto& [d, m] : o.degrees_) r.add(d, m);
  r.certificates.insert(r.certificates.end(), o.certificates.begin(), o.certificates.end());
  return r;
}

bool FormalObject::has_unresolved() const {
  return std::any_of(certificates.begin(), certificates.end(), [](auto& c) { return !c.resolved; });
}

std::string describe(const FormalObject& x) {
  if (x.is_zero()) return "0";
  std::ostringstream os;
  bool first = true;
  for (auto& [d, m] : x.degrees()) {
    os << (first ? "" : ", ") << d << ": " << describe(m);
    first = false;
  }
  return "{" + os.str() + "}";
}

FormalObject from_free_complex(const FreeComplex& x) {
  FormalObject r;
  for (auto& [d, h] : homology(x)) r.add(d, ElementaryModule::from_fg(h));
  return r;
}

// ---- local cohomology and localization ----

namespace {

void require_integers(const SpSubset& z) {
  if (z.mask != 0) throw DerivedError("subset is not a subset of Spec(Z)");
}

GammaPair gamma_atom(const SpSubset& z, const Atom& a) {
  if (z.generic) return {ElementaryModule({a}), {}};
  const PrimeSet& zm = z.maximals;
  switch (a.kind) {
    case AtomKind::Free:
      return {{}, ElementaryModule({Atom::prufer(zm, a.mult)})};
    case AtomKind::Localized:
      return {{}, ElementaryModule({Atom::prufer(zm - a.set, a.mult)})};
    case AtomKind::Torsion:
      if (zm.contains(a.p)) return {ElementaryModule({a}), {}};
      return {};
    case AtomKind::Prufer:
      return {ElementaryModule({Atom::prufer(a.set & zm, a.mult)}), {}};
  }
  return {};
}

ElementaryModule rq_atom(const SpSubset& z, const Atom& a) {
  if (z.generic) return {};
  const PrimeSet& zm = z.maximals;
  switch (a.kind) {
    case AtomKind::Free:
      return ElementaryModule({Atom::localized(zm, a.mult)});
    case AtomKind::Localized:
      return ElementaryModule({Atom::localized(a.set | zm, a.mult)});
    case AtomKind::Torsion:
      return zm.contains(a.p) ? ElementaryModule() : ElementaryModule({a});
    case AtomKind::Prufer:
      return ElementaryModule({Atom::prufer(a.set - zm, a.mult)});
  }
  return {};
}

// A / Gamma_Z(A).
ElementaryModule quotient_atom(const SpSubset& z, const Atom& a) {
  if (z.generic) return {};
  switch (a.kind) {
    case AtomKind::Free:
    case AtomKind::Localized:
      return ElementaryModule({a});
    case AtomKind::Torsion:
      return z.maximals.contains(a.p) ? ElementaryModule() : ElementaryModule({a});
    case AtomKind::Prufer:
      return ElementaryModule({Atom::prufer(a.set - z.maximals, a.mult)});
  }
  return {};
}

void require_resolved(const FormalObject& x) {
  if (x.has_unresolved()) throw DerivedError("object carries an unresolved extension certificate");
}

}  // namespace

GammaPair gamma_and_r1(const SpSubset& z, const ElementaryModule& e) {
  require_integers(z);
  GammaPair r;
  for (auto& a : e.atoms()) {
    GammaPair g = gamma_atom(z, a);
    r.gamma = r.gamma + g.gamma;
    r.r1 = r.r1 + g.r1;
  }
  return r;
}

FormalObject rgamma(const SpSubset& z, const FormalObject& x) {
  require_resolved(x);
  FormalObject r;
  for (auto& [d, m] : x.degrees()) {
    GammaPair g = gamma_and_r1(z, m);
    r.add(d, g.gamma);
    r.add(d + 1, g.r1);
  }
  return r;
}

FormalObject rq(const SpSubset& z, const FormalObject& x) {
  require_resolved(x);
  require_integers(z);
  FormalObject r;
  for (auto& [d, m] : x.degrees())
    for (auto& a : m.atoms()) r.add(d, rq_atom(z, a));
  return r;
}

FormalObject localize(const FormalObject& x, Point q) {
  require_resolved(x);
  const PrimeSet inv = q.v == 0 ? PrimeSet::all() : PrimeSet::cofinite_except({q.v});
  const PrimeSet keep = q.v == 0 ? PrimeSet::none() : PrimeSet::finite({q.v});
  FormalObject r;
  for (auto& [d, m] : x.degrees())
    for (auto& a : m.atoms()) {
      switch (a.kind) {
        case AtomKind::Free:
        case AtomKind::Localized:
          r.add(d, ElementaryModule({Atom::localized(a.set | inv, a.mult)}));
          break;
        case AtomKind::Torsion:
          if (keep.contains(a.p)) r.add(d, ElementaryModule({a}));
          break;
        case AtomKind::Prufer:
          r.add(d, ElementaryModule({Atom::prufer(a.set & keep, a.mult)}));
          break;
      }
    }
  return r;
}

TruncationResult tau_single(int i, const SpSubset& z, const FormalObject& x) {
  require_resolved(x);
  require_integers(z);
  TruncationResult r;
  for (auto& [d, m] : x.degrees()) {
    for (auto& a : m.atoms()) {
      if (d > i) {
        r.upper.add(d, ElementaryModule({a}));
      } else if (d == i) {
        r.lower.add(d, gamma_atom(z, a).gamma);
        r.upper.add(d, quotient_atom(z, a));
      } else {
        GammaPair g = gamma_atom(z, a);
        r.lower.add(d, g.gamma);
        r.lower.add(d + 1, g.r1);
        r.upper.add(d, rq_atom(z, a));
      }
    }
  }
  return r;
}

TruncationResult tau_filtration(const SpFiltration& phi, const FormalObject& x) {
  if (!phi.spec.is_integers()) throw DerivedError("truncation is implemented over Spec(Z)");
  if (!phi.is_finite()) throw DerivedError("truncation needs a finite filtration");
  require_resolved(x);
  if (phi.is_constant()) return {rgamma(phi.tail, x), rq(phi.tail, x), true};
  auto [s, n] = *phi.interval();
  TruncationResult r;
  FormalObject cur = x;
  for (int i = s; i <= n; ++i) {
    TruncationResult step = tau_single(i, phi.at(i), cur);
    r.lower = r.lower + step.lower;
    r.determinate = r.determinate && step.determinate;
    cur = std::move(step.upper);
  }
  r.upper = std::move(cur);
  return r;
}

bool in_aisle(const SpFiltration& phi, const FormalObject& x) {
  for (auto& [d, m] : x.degrees())
    if (!subset(m.support(), phi.at(d))) return false;
  return true;
}

bool in_coaisle(const SpFiltration& phi, const FormalObject& x) {
  require_resolved(x);
  const int hi = phi.is_constant() ? phi.start - 1 : phi.end;
  for (int j = phi.start - 1; j <= hi; ++j) {
    FormalObject g = rgamma(phi.at(j), x);
    if (g.min_degree() && *g.min_degree() <= j) return false;
  }
  return phi.head.is_empty() || rgamma(phi.head, x).is_zero();
}

namespace {

// Hom or Ext^1 from a generator A placed in degree i into B placed in degree b,
// after shifting B by some m <= 0.
std::optional<OrthogonalityWitness> generator_test(const Atom& a, Point prime, int i, const ElementaryModule& b,
                                                   int bdeg) {
  for (auto& atom : b.atoms()) {
    HomExt he = hom_ext(a, atom);
    if (bdeg <= i && !he.hom.is_zero()) return OrthogonalityWitness{i, prime, bdeg - i, bdeg, false, he.hom};
    if (bdeg <= i - 1 && !he.ext.is_zero())
      return OrthogonalityWitness{i, prime, bdeg - i + 1, bdeg, true, he.ext};
  }
  return std::nullopt;
}

std::optional<OrthogonalityWitness> generator_vs_object(const Atom& a, Point prime, int i, const FormalObject& y) {
  for (auto& [b, m] : y.degrees())
    if (auto w = generator_test(a, prime, i, m, b)) return w;
  return std::nullopt;
}

}  // namespace

OrthogonalityReport orthogonality_check(const SpFiltration& phi, const FormalObject& y, int lo, int hi) {
  require_resolved(y);
  std::vector<Prime> ps = y.mentioned_primes();
  for (int j = lo - 1; j <= hi + 1; ++j) {
    auto m = mentioned_primes(phi.at(j));
    ps.insert(ps.end(), m.begin(), m.end());
  }
  std::sort(ps.begin(), ps.end());
  ps.erase(std::unique(ps.begin(), ps.end()), ps.end());
  Prime fresh = fresh_prime(ps);
  ps.push_back(fresh);

  OrthogonalityReport rep;
  for (int i = lo; i <= hi; ++i) {
    const SpSubset& z = phi.at(i);
    if (z.generic) {
      if (auto w = generator_vs_object(Atom::free(1), Point{0}, i, y)) {
        rep.holds = false;
        rep.witness = w;
        return rep;
      }
    }
    for (Prime p : ps) {
      if (!z.maximals.contains(p)) continue;
      if (auto w = generator_vs_object(Atom::torsion(p, 1), Point{p}, i, y)) {
        rep.holds = false;
        rep.witness = w;
        return rep;
      }
    }
  }
  return rep;
}

HomVanishingReport hom_vanishing_crosscheck(const FreeComplex& x, const FormalObject& y) {
  require_resolved(y);
  validate(x);
  HomVanishingReport rep{true, true};

  // Hom(X, B) is the dual complex tensored with B. The dual splits into free
  // stalks and two-term pieces Z --d--> Z read off its Smith forms.
  const FreeComplex xd = dual_complex(x);
  std::map<int, int> stalks;
  std::vector<std::pair<int, BigInt>> pieces;  // (source degree, d)
  std::vector<int> rk(xd.ranks.size() + 1, 0);
  for (std::size_t k = 0; k < xd.diffs.size(); ++k) {
    SmithForm sf = smith_normal_form(xd.diffs[k], false);
    rk[k] = sf.rank();
    for (auto& d : sf.invariants) pieces.push_back({xd.min_degree + static_cast<int>(k), d});
  }
  for (std::size_t k = 0; k < xd.ranks.size(); ++k) {
    int in = k > 0 ? rk[k - 1] : 0;
    int out = k < xd.diffs.size() ? rk[k] : 0;
    int free = xd.ranks[k] - in - out;
    if (free > 0) stalks[xd.min_degree + static_cast<int>(k)] = free;
  }
  for (auto& [b, mod] : y.degrees()) {
    for (auto& atom : mod.atoms()) {
      const int top = -b;  // H^k(Hom(X, B)) must vanish for k <= -b
      bool bad = false;
      for (auto& [k, n] : stalks) bad = bad || (k <= top && n > 0);
      for (auto& [k, d] : pieces) {
        KerCoker kc = mult_ker_coker(atom, d);
        bad = bad || (k <= top && !kc.ker.is_zero()) || (k + 1 <= top && !kc.coker.is_zero());
      }
      if (bad) rep.cond1 = false;
    }
  }

  for (auto& [j, h] : homology(x)) {
    if (h.is_zero()) continue;
    std::vector<std::pair<Atom, Point>> gens;
    if (h.rank > 0)
      gens.push_back({Atom::free(1), Point{0}});
    else
      for (Prime p : h.torsion_primes()) gens.push_back({Atom::torsion(p, 1), Point{p}});
    for (auto& [a, pt] : gens)
      if (generator_vs_object(a, pt, j, y)) rep.cond3 = false;
  }
  return rep;
}

CousinFailureReport cousin_failure_witness(const SpFiltration& phi, int j, Prime q) {
  if (!phi.spec.is_integers()) throw DerivedError("hypothesis violated: spectrum is not Spec(Z)");
  if (!is_prime(q) || !phi.at(j).maximals.contains(q))
    throw DerivedError("hypothesis violated: q is not in phi(j)");
  if (phi.at(j - 1).generic) throw DerivedError("hypothesis violated: the generic point lies in phi(j-1)");
  CousinFailureReport rep;
  rep.truncation = tau_filtration(phi, FormalObject::stalk(j - 1, ElementaryModule({Atom::free(1)})));
  auto offenders = [](const FormalObject& x, std::vector<std::pair<int, Atom>>& out) {
    for (auto& [d, m] : x.degrees())
      for (auto& a : m.atoms())
        if (!a.is_fg()) out.push_back({d, a});
  };
  offenders(rep.truncation.lower, rep.lower_offenders);
  offenders(rep.truncation.upper, rep.upper_offenders);
  rep.lower_fg = rep.lower_offenders.empty();
  rep.upper_fg = rep.upper_offenders.empty();
  return rep;
}

}  // namespace tstruct
