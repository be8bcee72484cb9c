#include "tstruct/duality.hpp"

#include <algorithm>

namespace tstruct {
namespace {

const Spectrum& zspec() {
  static const Spectrum s = Spectrum::integers();
  return s;
}

const SpFiltration& cm() {
  static const SpFiltration f = cm_filtration(zspec(), dualizing_codim());
  return f;
}

Atom residue_field(Point q) { return q.v == 0 ? Atom::free(1) : Atom::torsion(q.v, 1); }

FgZModule residue_module(Point q) { return q.v == 0 ? FgZModule::free(1) : FgZModule::cyclic(BigInt(q.v)); }

bool in_support(const ElementaryModule& m, Point q) { return contains(zspec(), m.support(), q); }

void require_fg(const FormalObject& x) {
  if (!x.is_fg()) throw DualityError("object is not finitely generated");
  if (x.has_unresolved()) throw DualityError("object carries an unresolved extension certificate");
}

// Generic point plus the given primes and one prime outside them.
std::vector<Point> witness_points(std::vector<Prime> ps) {
  std::sort(ps.begin(), ps.end());
  ps.erase(std::unique(ps.begin(), ps.end()), ps.end());
  Prime f = fresh_prime(ps);
  std::vector<Point> pts{Point{0}};
  for (Prime p : ps) pts.push_back(Point{p});
  pts.push_back(Point{f});
  return pts;
}

std::vector<Prime> concat(std::vector<Prime> a, const std::vector<Prime>& b) {
  a.insert(a.end(), b.begin(), b.end());
  return a;
}

}  // namespace

CodimFn dualizing_codim() { return CodimFn::integers_default(); }

FormalObject dualize(const FormalObject& x) {
  require_fg(x);
  FormalObject r;
  for (auto& [a, m] : x.degrees()) {
    FgZModule f = m.to_fg();
    r.add(-a, ElementaryModule::from_fg(FgZModule::free(f.rank)));
    r.add(1 - a, ElementaryModule::from_fg(FgZModule{0, f.torsion}));
  }
  return r;
}

int codim_from_dualizing(Point p) {
  SpSubset v = closed_point_set(zspec(), p);
  FormalObject g = rgamma(v, FormalObject::stalk(0, ElementaryModule({Atom::free(1)})));
  if (!g.min_degree()) throw std::logic_error("local cohomology of the dualizing complex vanishes");
  return *g.min_degree();
}

CmMembership cm_membership(const FormalObject& x) {
  require_fg(x);
  CmMembership r{true, in_aisle(cm(), x)};
  // X[i] has M_a in degree a - i; Hom_D(M[-(a-i)], Z) is Ext^{a-i}(M, Z).
  for (auto& [a, m] : x.degrees())
    for (auto& atom : m.atoms()) {
      HomExt he = hom_ext(atom, Atom::free(1));
      if (a >= 0 && !he.hom.is_zero()) r.by_hom = false;
      if (a - 1 >= 0 && !he.ext.is_zero()) r.by_hom = false;
    }
  return r;
}

Kashiwara1Report kashiwara1(const SpSubset& z, const FormalObject& x, int n) {
  require_fg(x);
  if (!z.generic && z.maximals.cofinite) throw DualityError("Z must be Whole or finite");
  Kashiwara1Report r{true, true, true};

  FormalObject g = rgamma(z, x);
  r.c1 = !g.min_degree() || *g.min_degree() > n;

  const FormalObject xd = dualize(x);
  auto pts = witness_points(concat(xd.mentioned_primes(), z.maximals.primes));
  std::vector<Point> zpts;
  for (auto& p : pts)
    if (contains(zspec(), z, p)) zpts.push_back(p);

  for (auto& [k, hk] : xd.degrees()) {
    for (auto& q : pts) {
      if (!in_support(hk, q)) continue;
      for (auto& p : zpts) {
        auto [t0, t1] = tor(residue_module(q), residue_module(p));
        if (!subset(support(t0), cm().at(k + n))) r.c2 = false;
        if (!subset(support(t1), cm().at(k + n - 1))) r.c2 = false;
      }
      if (contains(zspec(), z, q) && !contains(zspec(), cm().at(k + n), q)) r.c3 = false;
    }
  }
  return r;
}

Kashiwara2Report kashiwara2(const SpSubset& z, const FormalObject& x, int n) {
  require_fg(x);
  if (!z.generic && z.maximals.cofinite) throw DualityError("Z must be Whole or finite");
  Kashiwara2Report r{tau_single(n, z, x).lower.is_fg(), true};
  const FormalObject xd = dualize(x);
  auto pts = witness_points(concat(xd.mentioned_primes(), z.maximals.primes));
  for (auto& [k, hk] : xd.degrees())
    for (auto& q : pts) {
      if (!in_support(hk, q)) continue;
      if (contains(zspec(), z, q)) continue;
      SpSubset vq = closed_point_set(zspec(), q);
      if (!subset(vq & z, cm().at(k + n))) r.c2 = false;
    }
  return r;
}

DualFormulaCheck dual_formula_check(const SpFiltration& phi) {
  if (!phi.spec.is_integers()) throw DualityError("duality is implemented over Spec(Z)");
  const SpFiltration phid = dual_filtration(phi, dualizing_codim());
  std::vector<Prime> ps = mentioned_primes(phi.tail);
  ps = concat(ps, mentioned_primes(phi.head));
  for (auto& l : phi.levels) ps = concat(ps, mentioned_primes(l));
  auto pts = witness_points(ps);

  auto formula_member = [&](int k, Point q) {
    const Atom a = residue_field(q);
    for (int j = -k; j <= 2 - k; ++j) {
      const SpSubset& zj = phi.at(j);
      for (auto& p : pts) {
        if (!contains(zspec(), zj, p)) continue;
        FormalObject y = dualize(FormalObject::stalk(j, ElementaryModule({residue_field(p)})));
        for (auto& [b, m] : y.degrees())
          for (auto& atom : m.atoms()) {
            HomExt he = hom_ext(a, atom);
            if (b == k && !he.hom.is_zero()) return false;
            if (b == k - 1 && !he.ext.is_zero()) return false;
          }
      }
    }
    return true;
  };

  int lo = std::min(phid.start, phi.start) - 4 - std::max(0, phi.end - phi.start);
  int hi = std::max(phid.end, phi.end) + 4 + std::max(0, phi.end - phi.start);
  DualFormulaCheck r;
  for (int k = lo; k <= hi; ++k)
    for (auto& q : pts)
      if (formula_member(k, q) != contains(zspec(), phid.at(k), q)) {
        r.holds = false;
        r.k = k;
        r.point = q;
        return r;
      }
  return r;
}

DualValidation dual_filtration_validate(const SpFiltration& phi, const std::vector<FormalObject>& samples) {
  DualValidation r;
  r.formula = dual_formula_check(phi);
  r.holds = r.formula.holds;
  const SpFiltration phid = dual_filtration(phi, dualizing_codim());
  for (auto& x : samples) {
    ++r.checked;
    if (in_coaisle(phi, x) != in_aisle(phid, dualize(x))) {
      r.holds = false;
      if (!r.mismatch) r.mismatch = x;
    }
  }
  return r;
}

}  // namespace tstruct
