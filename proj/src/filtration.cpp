#include "tstruct/filtration.hpp"

#include <algorithm>
#include <cmath>
#include <set>

namespace tstruct {
namespace {

using Key = std::tuple<int, int, SpSubset, std::vector<SpSubset>, SpSubset>;
Key key_of(const SpFiltration& f) { return {f.start, f.end, f.tail, f.levels, f.head}; }

// Weak Cousin on one step: q in cur  =>  generalizations of q in prev.
void weak_step(const Spectrum& s, int j, const SpSubset& prev, const SpSubset& cur,
               std::vector<CousinWitness>& out) {
  if (s.is_integers()) {
    if (prev.generic || cur.maximals.empty()) return;
    if (cur.maximals.cofinite) {
      out.push_back({j, Point{*cur.maximals.first()}, Point{0}});
    } else {
      for (Prime q : cur.maximals.primes) out.push_back({j, Point{q}, Point{0}});
    }
    return;
  }
  const auto& P = s.poset();
  for (std::size_t q = 0; q < P.size(); ++q) {
    if (!(cur.mask >> q & 1)) continue;
    std::uint64_t missing = P.below(static_cast<int>(q)) & ~prev.mask;
    for (std::size_t p = 0; p < P.size(); ++p)
      if (missing >> p & 1) out.push_back({j, Point{q}, Point{p}});
  }
}

// Converse: p in prev, (p, q) covering  =>  q in cur.
void converse_step(const Spectrum& s, int j, const SpSubset& prev, const SpSubset& cur,
                   std::vector<CousinWitness>& out) {
  if (s.is_integers()) {
    if (!prev.generic || cur.maximals.is_all()) return;
    out.push_back({j, Point{*complement(cur.maximals).first()}, Point{0}});
    return;
  }
  for (auto [p, q] : s.poset().covers())
    if ((prev.mask >> p & 1) && !(cur.mask >> q & 1))
      out.push_back({j, Point{static_cast<std::uint64_t>(q)}, Point{static_cast<std::uint64_t>(p)}});
}

std::vector<int> checked_indices(const SpFiltration& phi) {
  if (phi.is_constant()) return {phi.start - 1};
  std::vector<int> js;
  for (int j = phi.start - 1; j <= phi.end + 1; ++j) js.push_back(j);
  if (!phi.head.is_empty()) js.push_back(phi.end + 2);
  return js;
}

template <class Step>
CousinReport run_steps(const SpFiltration& phi, Step step) {
  CousinReport r;
  for (int j : checked_indices(phi)) step(phi.spec, j, phi.at(j - 1), phi.at(j), r.witnesses);
  r.holds = r.witnesses.empty();
  return r;
}

bool weak_pair_ok(const Spectrum& s, const SpSubset& prev, const SpSubset& cur) {
  std::vector<CousinWitness> w;
  weak_step(s, 0, prev, cur, w);
  return w.empty();
}

std::vector<SpSubset> all_subsets_of(const std::vector<Prime>& primes, bool cofinite) {
  std::vector<SpSubset> r;
  const std::size_t n = primes.size();
  for (std::uint64_t m = 0; m < (std::uint64_t{1} << n); ++m) {
    std::vector<Prime> pick;
    for (std::size_t i = 0; i < n; ++i)
      if (m >> i & 1) pick.push_back(primes[i]);
    r.push_back(cofinite ? SpSubset::cofinite(pick) : SpSubset::finite(pick));
  }
  return r;
}

void check_cap(std::size_t universe, int width, double cap) {
  if (width <= 0) return;
  if (std::pow(static_cast<double>(universe), width) > cap)
    throw FiltrationError("census window too large for the configured cap");
}

}  // namespace

const SpSubset& SpFiltration::at(int j) const {
  if (j < start) return tail;
  if (j > end) return head;
  return levels[static_cast<std::size_t>(j - start)];
}

std::optional<std::pair<int, int>> SpFiltration::interval() const {
  if (is_constant()) return std::nullopt;
  return std::make_pair(start - 1, levels.empty() ? start - 1 : end);
}

int SpFiltration::length() const {
  auto iv = interval();
  return iv ? iv->second - iv->first + 1 : 0;
}

SpFiltration make_filtration(const Spectrum& spec, SpSubset tail, int start, std::vector<SpSubset> levels,
                             SpSubset head) {
  auto check = [&](const SpSubset& z) {
    if (!is_valid_subset(spec, z)) throw FiltrationError("invalid subset " + describe(spec, z));
  };
  check(tail);
  check(head);
  for (auto& z : levels) check(z);
  const SpSubset* prev = &tail;
  for (auto& z : levels) {
    if (!subset(z, *prev)) throw FiltrationError("not decreasing");
    prev = &z;
  }
  if (!subset(head, *prev)) throw FiltrationError("not decreasing");

  SpFiltration f;
  f.spec = spec;
  f.tail = std::move(tail);
  f.head = std::move(head);
  std::size_t lo = 0, hi = levels.size();
  while (lo < hi && levels[lo] == f.tail) ++lo;
  while (hi > lo && levels[hi - 1] == f.head) --hi;
  f.levels.assign(levels.begin() + static_cast<long>(lo), levels.begin() + static_cast<long>(hi));
  f.start = start + static_cast<int>(lo);
  f.end = f.start + static_cast<int>(f.levels.size()) - 1;
  if (f.levels.empty() && f.tail == f.head) {
    f.start = 0;
    f.end = -1;
  }
  return f;
}

SpFiltration constant_filtration(const Spectrum& spec, const SpSubset& z) {
  return make_filtration(spec, z, 0, {}, z);
}

SpFiltration canonical_filtration(const Spectrum& spec, int n) {
  return make_filtration(spec, SpSubset::whole(spec), n + 1, {}, SpSubset::empty());
}

SpFiltration single_level(const Spectrum& spec, int i, const SpSubset& z) {
  return make_filtration(spec, z, i + 1, {}, SpSubset::empty());
}

CousinReport weak_cousin(const SpFiltration& phi) { return run_steps(phi, weak_step); }

CousinReport strong_cousin_converse(const SpFiltration& phi) { return run_steps(phi, converse_step); }

CousinReport strong_cousin(const SpFiltration& phi) {
  CousinReport a = weak_cousin(phi), b = strong_cousin_converse(phi);
  a.witnesses.insert(a.witnesses.end(), b.witnesses.begin(), b.witnesses.end());
  a.holds = a.witnesses.empty();
  return a;
}

SpFiltration localize(const SpFiltration& phi, Point q) {
  const Spectrum& s = phi.spec;
  if (!s.contains_point(q)) throw SpectrumError("point not in spectrum");
  std::vector<std::string> ids;
  std::vector<std::pair<int, int>> covers;
  std::function<SpSubset(const SpSubset&)> restrict;
  if (s.is_integers()) {
    ids.push_back("0");
    if (q.v != 0) {
      ids.push_back(s.name(q));
      covers.push_back({0, 1});
    }
    Prime p = q.v;
    restrict = [p](const SpSubset& z) {
      std::uint64_t m = 0;
      if (z.generic) m |= 1;
      if (p != 0 && z.maximals.contains(p)) m |= 2;
      return SpSubset::of_mask(m);
    };
  } else {
    const auto& P = s.poset();
    std::uint64_t dn = P.down(static_cast<int>(q.v));
    std::vector<int> index(P.size(), -1);
    for (std::size_t i = 0; i < P.size(); ++i) {
      if (dn >> i & 1) {
        index[i] = static_cast<int>(ids.size());
        ids.push_back(P.ids()[i]);
      }
    }
    for (auto [a, b] : P.covers())
      if (index[a] >= 0 && index[b] >= 0) covers.push_back({index[a], index[b]});
    restrict = [index](const SpSubset& z) {
      std::uint64_t m = 0;
      for (std::size_t i = 0; i < index.size(); ++i)
        if (index[i] >= 0 && (z.mask >> i & 1)) m |= std::uint64_t{1} << index[i];
      return SpSubset::of_mask(m);
    };
  }
  Spectrum local = Spectrum::from_poset(FinPoset(ids, covers));
  std::vector<SpSubset> lv;
  for (auto& z : phi.levels) lv.push_back(restrict(z));
  return make_filtration(local, restrict(phi.tail), phi.start, lv, restrict(phi.head));
}

SpFiltration cm_filtration(const Spectrum& spec, const CodimFn& d) {
  if (!validate_codim_fn(spec, d).holds) throw FiltrationError("invalid codimension function");
  if (spec.is_integers())
    return make_filtration(spec, SpSubset::whole(spec), d.generic, {SpSubset::cofinite({})}, SpSubset::empty());
  const auto& P = spec.poset();
  if (P.size() == 0) return constant_filtration(spec, SpSubset::empty());
  int lo = d.values[0], hi = d.values[0];
  for (int v : d.values) {
    lo = std::min(lo, v);
    hi = std::max(hi, v);
  }
  std::vector<SpSubset> lv;
  for (int i = lo; i < hi; ++i) {
    std::uint64_t m = 0;
    for (std::size_t p = 0; p < P.size(); ++p)
      if (d.values[p] > i) m |= std::uint64_t{1} << p;
    lv.push_back(SpSubset::of_mask(m));
  }
  return make_filtration(spec, SpSubset::whole(spec), lo, lv, SpSubset::empty());
}

PrimeSet classify_maximals(std::vector<Prime> mentioned, const std::function<bool(Prime)>& pred) {
  std::sort(mentioned.begin(), mentioned.end());
  mentioned.erase(std::unique(mentioned.begin(), mentioned.end()), mentioned.end());
  std::vector<Prime> yes, no;
  for (Prime p : mentioned) (pred(p) ? yes : no).push_back(p);
  if (pred(fresh_prime(mentioned))) return PrimeSet::cofinite_except(no);
  return PrimeSet::finite(yes);
}

SpFiltration dual_filtration(const SpFiltration& phi, const CodimFn& d) {
  if (!phi.is_finite()) throw FiltrationError("dual filtration needs a finite filtration");
  const Spectrum& s = phi.spec;
  SpFiltration cm = cm_filtration(s, d);
  int dmin, dmax;
  if (s.is_integers()) {
    dmin = d.generic;
    dmax = d.generic + 1;
  } else if (s.poset().size() == 0) {
    dmin = dmax = 0;
  } else {
    dmin = *std::min_element(d.values.begin(), d.values.end());
    dmax = *std::max_element(d.values.begin(), d.values.end());
  }
  const int i_lo = phi.start - 1;
  const int i_hi = phi.is_constant() ? phi.start - 1 : phi.end;
  const bool head_nonempty = !phi.head.is_empty();

  auto value = [&](int k) -> SpSubset {
    if (s.is_integers()) {
      std::vector<Prime> mentioned = mentioned_primes(phi.tail);
      for (auto& z : phi.levels) {
        auto m = mentioned_primes(z);
        mentioned.insert(mentioned.end(), m.begin(), m.end());
      }
      auto m = mentioned_primes(phi.head);
      mentioned.insert(mentioned.end(), m.begin(), m.end());
      auto ok_prime = [&](Prime p) {
        for (int i = i_lo; i <= i_hi; ++i)
          if (phi.at(i).maximals.contains(p) && !cm.at(k + i).maximals.contains(p)) return false;
        return !(head_nonempty && phi.head.maximals.contains(p));
      };
      bool generic_ok = true;
      for (int i = i_lo; i <= i_hi; ++i) generic_ok = generic_ok && subset(phi.at(i), cm.at(k + i));
      generic_ok = generic_ok && !head_nonempty;
      PrimeSet maxs = classify_maximals(mentioned, ok_prime);
      if (generic_ok) {
        if (!maxs.is_all()) throw std::logic_error("dual filtration level is not specialization closed");
        return SpSubset::whole(s);
      }
      return SpSubset{false, maxs, 0};
    }
    const auto& P = s.poset();
    std::uint64_t m = 0;
    for (std::size_t q = 0; q < P.size(); ++q) {
      std::uint64_t vq = P.up(static_cast<int>(q));
      bool ok = !(head_nonempty && (vq & phi.head.mask));
      for (int i = i_lo; ok && i <= i_hi; ++i) ok = (vq & phi.at(i).mask & ~cm.at(k + i).mask) == 0;
      if (ok) m |= std::uint64_t{1} << q;
    }
    return SpSubset::of_mask(m);
  };

  const int k_lo = dmin - i_hi - 1;
  const int k_hi = dmax - i_lo;
  std::vector<SpSubset> lv;
  for (int k = k_lo + 1; k < k_hi; ++k) lv.push_back(value(k));
  return make_filtration(s, value(k_lo), k_lo + 1, lv, value(k_hi));
}

StabilizationReport stabilization_report(const SpFiltration& phi) {
  StabilizationReport r;
  r.constant = phi.is_constant();
  r.j0 = r.constant ? 0 : phi.start - 1;
  r.bottom = phi.tail;
  r.bottom_open_closed = is_open_closed(phi.spec, phi.tail).holds;
  r.intersection = phi.head;
  r.intersection_open_closed = is_open_closed(phi.spec, phi.head).holds;
  r.separated = phi.head.is_empty();
  r.eventually_empty = phi.head.is_empty();
  r.connected = connected_components(phi.spec).size() == 1;
  r.weak_cousin = weak_cousin(phi).holds;
  bool premise = r.connected && r.weak_cousin && !r.constant;
  r.discreteness_holds = !premise || (is_whole(phi.spec, phi.tail) && r.eventually_empty);
  return r;
}

SpFiltration meet(const SpFiltration& a, const SpFiltration& b) {
  if (!(a.spec == b.spec)) throw FiltrationError("spectrum mismatch");
  int lo = std::min(a.start, b.start), hi = std::max(a.end, b.end);
  std::vector<SpSubset> lv;
  for (int j = lo; j <= hi; ++j) lv.push_back(a.at(j) & b.at(j));
  return make_filtration(a.spec, a.tail & b.tail, lo, lv, a.head & b.head);
}

SpFiltration shift(const SpFiltration& phi, int k) {
  if (phi.is_constant()) return phi;
  SpFiltration r = phi;
  r.start += k;
  r.end += k;
  return r;
}

std::optional<BousfieldClass> bousfield_class(const SpFiltration& phi) {
  if (!phi.is_constant()) return std::nullopt;
  return BousfieldClass{phi.tail, is_open_closed(phi.spec, phi.tail).holds};
}

std::vector<SpSubset> subset_universe(const Spectrum& spec, const std::vector<Prime>& primes, bool include_cofinite) {
  if (spec.is_integers()) {
    std::vector<Prime> ps = primes;
    std::sort(ps.begin(), ps.end());
    ps.erase(std::unique(ps.begin(), ps.end()), ps.end());
    std::vector<SpSubset> r{SpSubset::whole(spec)};
    for (auto& z : all_subsets_of(ps, false)) r.push_back(z);
    if (include_cofinite)
      for (auto& z : all_subsets_of(ps, true)) r.push_back(z);
    return r;
  }
  const auto& P = spec.poset();
  if (P.size() > 20) throw FiltrationError("poset too large to enumerate its up-sets");
  std::vector<SpSubset> r;
  for (std::uint64_t m = 0; m < (std::uint64_t{1} << P.size()); ++m) {
    SpSubset z = SpSubset::of_mask(m);
    if (is_valid_subset(spec, z)) r.push_back(z);
  }
  return r;
}

namespace {

std::vector<SpFiltration> enumerate_impl(const Spectrum& spec, int a, int b, const CensusOptions& opt,
                                         bool weak_only) {
  if (b < a) throw FiltrationError("empty census window");
  auto U = subset_universe(spec, opt.primes, opt.include_cofinite);
  check_cap(U.size(), b - a + 1, opt.cap);
  std::vector<SpFiltration> out;
  std::set<Key> seen;
  auto emit = [&](SpFiltration f) {
    if (seen.insert(key_of(f)).second) out.push_back(std::move(f));
  };
  std::vector<SpSubset> chosen;
  std::function<void()> dfs = [&]() {
    if (static_cast<int>(chosen.size()) == b - a + 1) {
      emit(make_filtration(spec, chosen.front(), a, chosen, SpSubset::empty()));
      return;
    }
    for (const auto& z : U) {
      const SpSubset& prev = chosen.empty() ? z : chosen.back();
      if (!subset(z, prev)) continue;
      if (weak_only && !weak_pair_ok(spec, prev, z)) continue;
      chosen.push_back(z);
      dfs();
      chosen.pop_back();
    }
  };
  dfs();
  for (const auto& z : U)
    if (!weak_only || weak_pair_ok(spec, z, z)) emit(constant_filtration(spec, z));
  return out;
}

}  // namespace

std::vector<SpFiltration> enumerate_filtrations(const Spectrum& spec, int a, int b, const CensusOptions& opt) {
  return enumerate_impl(spec, a, b, opt, false);
}

std::vector<SpFiltration> enumerate_weak_cousin(const Spectrum& spec, int a, int b, const CensusOptions& opt) {
  return enumerate_impl(spec, a, b, opt, true);
}

bool in_aisle_by_supports(const SpFiltration& phi, const std::vector<std::pair<int, SpSubset>>& supports) {
  for (auto& [deg, s] : supports)
    if (!subset(s, phi.at(deg))) return false;
  return true;
}

}  // namespace tstruct
