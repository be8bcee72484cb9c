#include "tstruct/cech.hpp"

#include <algorithm>
#include <numeric>
#include <set>
#include <sstream>

namespace tstruct {

bool DegreeProfile::is_zero() const {
  if (rank != 0) return false;
  for (auto& [p, l] : local)
    if (!l.is_zero()) return false;
  return true;
}

namespace {

// ---------------------------------------------------------------------------
// Rational matrices

struct RMat {
  int rows = 0, cols = 0;
  std::vector<Rational> a;
  RMat() = default;
  RMat(int r, int c) : rows(r), cols(c), a(static_cast<std::size_t>(r) * c) {}
  Rational& operator()(int i, int j) { return a[static_cast<std::size_t>(i) * cols + j]; }
  const Rational& operator()(int i, int j) const { return a[static_cast<std::size_t>(i) * cols + j]; }
  static RMat identity(int n) {
    RMat m(n, n);
    for (int i = 0; i < n; ++i) m(i, i) = 1;
    return m;
  }
};

RMat mul(const RMat& x, const RMat& y) {
  RMat r(x.rows, y.cols);
  for (int i = 0; i < x.rows; ++i)
    for (int k = 0; k < x.cols; ++k) {
      if (x(i, k) == 0) continue;
      for (int j = 0; j < y.cols; ++j)
        if (y(k, j) != 0) r(i, j) += x(i, k) * y(k, j);
    }
  return r;
}

RMat select_rows(const RMat& m, const std::vector<int>& idx) {
  RMat r(static_cast<int>(idx.size()), m.cols);
  for (int i = 0; i < r.rows; ++i)
    for (int j = 0; j < m.cols; ++j) r(i, j) = m(idx[i], j);
  return r;
}

RMat select_cols(const RMat& m, const std::vector<int>& idx) {
  RMat r(m.rows, static_cast<int>(idx.size()));
  for (int i = 0; i < m.rows; ++i)
    for (int j = 0; j < r.cols; ++j) r(i, j) = m(i, idx[j]);
  return r;
}

// Reduced row echelon form in place; returns pivot columns.
std::vector<int> rref(RMat& m) {
  std::vector<int> piv;
  int row = 0;
  for (int c = 0; c < m.cols && row < m.rows; ++c) {
    int p = -1;
    for (int i = row; i < m.rows; ++i)
      if (m(i, c) != 0) {
        p = i;
        break;
      }
    if (p < 0) continue;
    if (p != row)
      for (int j = 0; j < m.cols; ++j) std::swap(m(p, j), m(row, j));
    Rational inv = 1 / m(row, c);
    for (int j = c; j < m.cols; ++j) m(row, j) *= inv;
    for (int i = 0; i < m.rows; ++i) {
      if (i == row || m(i, c) == 0) continue;
      Rational f = m(i, c);
      for (int j = c; j < m.cols; ++j)
        if (m(row, j) != 0) m(i, j) -= f * m(row, j);
    }
    piv.push_back(c);
    ++row;
  }
  return piv;
}

int rank_of(RMat m) { return static_cast<int>(rref(m).size()); }

RMat nullspace(const RMat& m) {
  RMat r = m;
  auto piv = rref(r);
  std::vector<int> free;
  for (int c = 0, k = 0; c < m.cols; ++c) {
    if (k < static_cast<int>(piv.size()) && piv[k] == c)
      ++k;
    else
      free.push_back(c);
  }
  RMat n(m.cols, static_cast<int>(free.size()));
  for (int f = 0; f < n.cols; ++f) {
    n(free[f], f) = 1;
    for (int k = 0; k < static_cast<int>(piv.size()); ++k) n(piv[k], f) = -r(k, free[f]);
  }
  return n;
}

// Some X with A X = Y; the system must be consistent.
RMat solve(const RMat& A, const RMat& Y) {
  RMat aug(A.rows, A.cols + Y.cols);
  for (int i = 0; i < A.rows; ++i) {
    for (int j = 0; j < A.cols; ++j) aug(i, j) = A(i, j);
    for (int j = 0; j < Y.cols; ++j) aug(i, A.cols + j) = Y(i, j);
  }
  auto piv = rref(aug);
  RMat x(A.cols, Y.cols);
  for (int k = 0; k < static_cast<int>(piv.size()); ++k) {
    if (piv[k] >= A.cols) throw std::logic_error("inconsistent linear system in the Cech oracle");
    for (int j = 0; j < Y.cols; ++j) x(piv[k], j) = aug(k, A.cols + j);
  }
  return x;
}

bool is_unit_at(const Rational& q, Prime p) {
  return q != 0 && boost::multiprecision::numerator(q) % p != 0;
}

// Integer matrix with the same column span over Z_(p): each column times the
// lcm of its denominators (prime to p by construction).
Matrix clear_denominators(const RMat& m) {
  Matrix r(m.rows, m.cols);
  for (int j = 0; j < m.cols; ++j) {
    BigInt l = 1;
    for (int i = 0; i < m.rows; ++i) l = boost::multiprecision::lcm(l, boost::multiprecision::denominator(m(i, j)));
    for (int i = 0; i < m.rows; ++i)
      r(i, j) = boost::multiprecision::numerator(m(i, j)) * (l / boost::multiprecision::denominator(m(i, j)));
  }
  return r;
}

// ---------------------------------------------------------------------------
// Complexes of Z_(p)- and Q-coordinates. A Q coordinate never maps into a
// lattice coordinate; lattice-to-lattice entries are p-integral.

using Types = std::vector<char>;  // 1 = rational coordinate

struct Mixed {
  int lo = 0;
  std::vector<Types> ty;
  std::vector<RMat> d;  // d[k] leaves degree lo+k

  int hi() const { return lo + static_cast<int>(ty.size()) - 1; }
  bool in_range(int n) const { return n >= lo && n <= hi(); }
  int dim(int n) const { return in_range(n) ? static_cast<int>(ty[n - lo].size()) : 0; }
  Types types(int n) const { return in_range(n) ? ty[n - lo] : Types{}; }
  RMat D(int n) const {
    if (in_range(n) && n + 1 <= hi()) return d[n - lo];
    return RMat(dim(n + 1), dim(n));
  }
};

using ChainMap = std::map<int, RMat>;  // degree -> matrix into the target

RMat map_at(const ChainMap& g, int n, int rows, int cols) {
  auto it = g.find(n);
  return it == g.end() ? RMat(rows, cols) : it->second;
}

// Build a complex over [lo, hi] from per-degree callbacks.
template <class TypesFn, class DiffFn>
Mixed build(int lo, int hi, TypesFn types, DiffFn diff) {
  Mixed m;
  m.lo = lo;
  if (hi < lo) {
    m.lo = 0;
    return m;
  }
  for (int n = lo; n <= hi; ++n) m.ty.push_back(types(n));
  for (int n = lo; n < hi; ++n) m.d.push_back(diff(n));
  return m;
}

void put(RMat& dst, int r0, int c0, const RMat& src, int sign = 1) {
  for (int i = 0; i < src.rows; ++i)
    for (int j = 0; j < src.cols; ++j)
      if (src(i, j) != 0) dst(r0 + i, c0 + j) = sign > 0 ? src(i, j) : Rational(-src(i, j));
}

Types concat(Types a, const Types& b) {
  a.insert(a.end(), b.begin(), b.end());
  return a;
}

Mixed from_free(const FreeComplex& x) {
  return build(
      x.min_degree, x.max_degree(), [&](int n) { return Types(x.rank_at(n), 0); },
      [&](int n) {
        Matrix m = x.diff_at(n);
        RMat r(m.rows, m.cols);
        for (int i = 0; i < m.rows; ++i)
          for (int j = 0; j < m.cols; ++j) r(i, j) = Rational(m(i, j));
        return r;
      });
}

// Fiber of U -> U tensor Q: degree n holds U^n + Q U^{n-1}; returns the projection to U.
std::pair<Mixed, ChainMap> cech_fiber(const Mixed& u) {
  Mixed k = build(
      u.lo, u.hi() + 1, [&](int n) { return concat(u.types(n), Types(u.dim(n - 1), 1)); },
      [&](int n) {
        RMat r(u.dim(n + 1) + u.dim(n), u.dim(n) + u.dim(n - 1));
        put(r, 0, 0, u.D(n));
        put(r, u.dim(n + 1), 0, RMat::identity(u.dim(n)));
        put(r, u.dim(n + 1), u.dim(n), u.D(n - 1), -1);
        return r;
      });
  ChainMap f;
  for (int n = k.lo; n <= k.hi(); ++n) {
    RMat r(u.dim(n), k.dim(n));
    put(r, 0, 0, RMat::identity(u.dim(n)));
    f[n] = r;
  }
  return {k, f};
}

struct Kernel {
  RMat basis;  // columns
  Types types;
};

// ker(A) inside the mixed module with coordinate types t: a Z_(p)-basis of
// the lattice part (lifted) followed by a Q-basis of the divisible part.
Kernel mixed_kernel(const RMat& A, const Types& t) {
  RMat N = nullspace(A);
  std::vector<int> lat;
  for (int i = 0; i < static_cast<int>(t.size()); ++i)
    if (!t[i]) lat.push_back(i);
  RMat NL = select_rows(N, lat);
  RMat V0 = mul(N, nullspace(NL));

  SmithForm sf = smith_normal_form(clear_denominators(NL), true);
  const int r = sf.rank();
  RMat S(static_cast<int>(lat.size()), r);
  for (int i = 0; i < S.rows; ++i)
    for (int j = 0; j < r; ++j) S(i, j) = Rational(sf.Uinv(i, j));
  RMat lifts = r > 0 ? mul(N, solve(NL, S)) : RMat(N.rows, 0);

  Kernel ker;
  ker.basis = RMat(N.rows, r + V0.cols);
  put(ker.basis, 0, 0, lifts);
  put(ker.basis, 0, r, V0);
  ker.types = Types(r, 0);
  ker.types.resize(r + V0.cols, 1);
  return ker;
}

// Smart truncation tau_{<= i} of k, with the restricted map f.
std::pair<Mixed, ChainMap> truncate_below(const Mixed& k, const ChainMap& f, int i) {
  if (i < k.lo) return {Mixed{}, ChainMap{}};
  if (i >= k.hi()) return {k, f};
  Kernel ker = mixed_kernel(k.D(i), k.types(i));
  Mixed t = build(
      k.lo, i, [&](int n) { return n < i ? k.types(n) : ker.types; },
      [&](int n) { return n + 1 < i ? k.D(n) : solve(ker.basis, k.D(n)); });
  ChainMap ft;
  for (int n = k.lo; n <= i; ++n) {
    auto it = f.find(n);
    if (it == f.end()) continue;
    ft[n] = n < i ? it->second : mul(it->second, ker.basis);
  }
  return {t, ft};
}

// cone(f: t -> u): degree n holds t^{n+1} + u^n. Returns the inclusion of u.
Mixed cone(const Mixed& t, const ChainMap& f, const Mixed& u) {
  const int lo = std::min(t.lo - 1, u.lo);
  const int hi = std::max(t.hi() - 1, u.hi());
  return build(
      lo, hi, [&](int n) { return concat(t.types(n + 1), u.types(n)); },
      [&](int n) {
        RMat r(t.dim(n + 2) + u.dim(n + 1), t.dim(n + 1) + u.dim(n));
        put(r, 0, 0, t.D(n + 1), -1);
        put(r, t.dim(n + 2), 0, map_at(f, n + 1, u.dim(n + 1), t.dim(n + 1)));
        put(r, t.dim(n + 2), t.dim(n + 1), u.D(n));
        return r;
      });
}

ChainMap into_cone(const ChainMap& g, const Mixed& t, const Mixed& c, const Mixed& x, const Mixed& u) {
  ChainMap r;
  for (int n = c.lo; n <= c.hi(); ++n) {
    RMat m(c.dim(n), x.dim(n));
    put(m, t.dim(n + 1), 0, map_at(g, n, u.dim(n), x.dim(n)));
    r[n] = m;
  }
  return r;
}

RMat drop_row(const RMat& m, int r) {
  RMat o(m.rows - 1, m.cols);
  for (int i = 0, k = 0; i < m.rows; ++i) {
    if (i == r) continue;
    for (int j = 0; j < m.cols; ++j) o(k, j) = m(i, j);
    ++k;
  }
  return o;
}

RMat drop_col(const RMat& m, int c) {
  RMat o(m.rows, m.cols - 1);
  for (int i = 0; i < m.rows; ++i)
    for (int j = 0, k = 0; j < m.cols; ++j) {
      if (j == c) continue;
      o(i, k++) = m(i, j);
    }
  return o;
}

// Cancels unit pivots (lattice to lattice) and nonzero rational-to-rational
// entries; g is a chain map into m and is carried along.
void minimize(Mixed& m, Prime p, ChainMap* g, const Mixed* x) {
  for (int n = m.lo; n < m.hi(); ++n) {
    for (;;) {
      RMat& d = m.d[n - m.lo];
      const Types& tc = m.ty[n - m.lo];
      const Types& tr = m.ty[n + 1 - m.lo];
      int pr = -1, pc = -1;
      for (int i = 0; i < d.rows && pr < 0; ++i)
        for (int j = 0; j < d.cols; ++j) {
          const Rational& v = d(i, j);
          if (v == 0 || tr[i] != tc[j]) continue;
          if (tr[i] || is_unit_at(v, p)) {
            pr = i;
            pc = j;
            break;
          }
        }
      if (pr < 0) break;
      const Rational piv = d(pr, pc);
      RMat nd(d.rows - 1, d.cols - 1);
      for (int i = 0, ii = 0; i < d.rows; ++i) {
        if (i == pr) continue;
        Rational f = d(i, pc) / piv;
        for (int j = 0, jj = 0; j < d.cols; ++j) {
          if (j == pc) continue;
          nd(ii, jj) = f == 0 ? d(i, j) : Rational(d(i, j) - f * d(pr, j));
          ++jj;
        }
        ++ii;
      }
      if (g) {
        const int xd_n = x->dim(n), xd_n1 = x->dim(n + 1);
        auto& gn = (*g)[n];
        if (gn.rows == 0 && gn.cols == 0) gn = RMat(m.dim(n), xd_n);
        auto& gn1 = (*g)[n + 1];
        if (gn1.rows == 0 && gn1.cols == 0) gn1 = RMat(m.dim(n + 1), xd_n1);
        for (int i = 0; i < gn1.rows; ++i) {
          if (i == pr || d(i, pc) == 0) continue;
          Rational f = d(i, pc) / piv;
          for (int j = 0; j < gn1.cols; ++j) gn1(i, j) -= f * gn1(pr, j);
        }
        gn = drop_row(gn, pc);
        gn1 = drop_row(gn1, pr);
      }
      if (n - 1 >= m.lo) m.d[n - 1 - m.lo] = drop_row(m.d[n - 1 - m.lo], pc);
      if (n + 1 < m.hi()) m.d[n + 1 - m.lo] = drop_col(m.d[n + 1 - m.lo], pr);
      d = std::move(nd);
      m.ty[n - m.lo].erase(m.ty[n - m.lo].begin() + pc);
      m.ty[n + 1 - m.lo].erase(m.ty[n + 1 - m.lo].begin() + pr);
    }
  }
  // Trim empty ends.
  while (!m.ty.empty() && m.ty.front().empty()) {
    if (g) g->erase(m.lo);
    m.ty.erase(m.ty.begin());
    if (!m.d.empty()) m.d.erase(m.d.begin());
    ++m.lo;
  }
  while (!m.ty.empty() && m.ty.back().empty()) {
    if (g) g->erase(m.hi());
    m.ty.pop_back();
    if (!m.d.empty()) m.d.pop_back();
  }
  if (m.ty.empty()) m.lo = 0;
}

// fiber(g: x -> u): degree n holds x^n + u^{n-1}.
Mixed fiber(const Mixed& x, const ChainMap& g, const Mixed& u) {
  int lo = x.ty.empty() ? u.lo + 1 : (u.ty.empty() ? x.lo : std::min(x.lo, u.lo + 1));
  int hi = x.ty.empty() ? u.hi() + 1 : (u.ty.empty() ? x.hi() : std::max(x.hi(), u.hi() + 1));
  if (x.ty.empty() && u.ty.empty()) return Mixed{};
  return build(
      lo, hi, [&](int n) { return concat(x.types(n), u.types(n - 1)); },
      [&](int n) {
        RMat r(x.dim(n + 1) + u.dim(n), x.dim(n) + u.dim(n - 1));
        put(r, 0, 0, x.D(n));
        put(r, x.dim(n + 1), 0, map_at(g, n, u.dim(n), x.dim(n)));
        put(r, x.dim(n + 1), x.dim(n), u.D(n - 1), -1);
        return r;
      });
}

enum class LocalLevel { Empty, HasP, Whole };

LocalLevel localize_level(const SpSubset& z, Prime p) {
  if (z.generic) return LocalLevel::Whole;
  if (z.maximals.cofinite) throw CechError("the oracle needs finite levels");
  return z.maximals.contains(p) ? LocalLevel::HasP : LocalLevel::Empty;
}

struct Step {
  LocalLevel level;
  bool truncate;
  int i;
};

// One composition step: u <- cone(tau_{<=i} RGamma_Z u -> u).
void apply_step(Mixed& u, ChainMap& g, const Mixed& x, const Step& s, Prime p) {
  if (s.level == LocalLevel::Empty || u.ty.empty()) return;
  Mixed k;
  ChainMap f;
  if (s.level == LocalLevel::Whole) {
    k = u;
    for (int n = u.lo; n <= u.hi(); ++n) f[n] = RMat::identity(u.dim(n));
  } else {
    std::tie(k, f) = cech_fiber(u);
  }
  Mixed t = k;
  ChainMap ft = f;
  if (s.truncate) std::tie(t, ft) = truncate_below(k, f, s.i);
  if (t.ty.empty()) return;
  Mixed c = cone(t, ft, u);
  ChainMap gc = into_cone(g, t, c, x, u);
  minimize(c, p, &gc, &x);
  u = std::move(c);
  g = std::move(gc);
}

struct LocalShape {
  int rank = 0;
  LocalInvariants inv;
};

// Observables of a minimized complex at p.
std::map<int, LocalShape> observe(const Mixed& c, Prime p, int& max_exponent) {
  std::map<int, LocalShape> out;
  if (c.ty.empty()) return out;
  std::map<int, int> dim_mod_p;
  auto lattice_block_rank = [&](int n) {
    RMat d = c.D(n);
    Types tr = c.types(n + 1), tc = c.types(n);
    std::vector<int> ri, ci;
    for (int i = 0; i < static_cast<int>(tr.size()); ++i)
      if (!tr[i]) ri.push_back(i);
    for (int j = 0; j < static_cast<int>(tc.size()); ++j)
      if (!tc[j]) ci.push_back(j);
    Matrix m(static_cast<int>(ri.size()), static_cast<int>(ci.size()));
    for (int i = 0; i < m.rows; ++i)
      for (int j = 0; j < m.cols; ++j) m(i, j) = reduce_mod(d(ri[i], ci[j]), BigInt(p));
    return rank_mod_p(m, p);
  };
  for (int n = c.lo - 1; n <= c.hi(); ++n) {
    Types t = c.types(n);
    int lat = static_cast<int>(std::count(t.begin(), t.end(), 0));
    dim_mod_p[n] = lat - lattice_block_rank(n) - lattice_block_rank(n - 1);
  }
  for (int n = c.lo; n <= c.hi(); ++n) {
    LocalShape s;
    s.rank = c.dim(n) - rank_of(c.D(n)) - rank_of(c.D(n - 1));
    Kernel ker = mixed_kernel(c.D(n), c.types(n));
    const int a0 = static_cast<int>(std::count(ker.types.begin(), ker.types.end(), 0));
    std::vector<int> lcols;
    Types tin = c.types(n - 1);
    for (int j = 0; j < static_cast<int>(tin.size()); ++j)
      if (!tin[j]) lcols.push_back(j);
    int rk = 0;
    if (a0 > 0 && !lcols.empty()) {
      RMat coords = solve(ker.basis, select_cols(c.D(n - 1), lcols));
      std::vector<int> first(a0);
      std::iota(first.begin(), first.end(), 0);
      SmithForm sf = smith_normal_form(clear_denominators(select_rows(coords, first)), false);
      rk = sf.rank();
      for (auto& dk : sf.invariants) {
        int v = valuation(dk, p);
        if (v > 0) {
          s.inv.torsion.push_back(v);
          max_exponent = std::max(max_exponent, v);
        }
      }
    }
    s.inv.free = a0 - rk;
    s.inv.rational = s.rank - s.inv.free;
    std::sort(s.inv.torsion.begin(), s.inv.torsion.end());
    out[n] = s;
  }
  for (int n = c.lo - 1; n <= c.hi(); ++n) {
    auto count_t = [&](int k) {
      auto it = out.find(k);
      return it == out.end() ? 0 : static_cast<int>(it->second.inv.torsion.size());
    };
    auto free_at = [&](int k) {
      auto it = out.find(k);
      return it == out.end() ? 0 : it->second.inv.free;
    };
    int c1 = dim_mod_p[n] - free_at(n) - count_t(n) - count_t(n + 1);
    if (c1 < 0) throw std::logic_error("negative Prufer rank in the Cech oracle");
    if (c1 > 0) out[n + 1].inv.prufer = c1;
  }
  return out;
}

void merge_into(Profile& prof, const std::map<int, LocalShape>& obs, Prime p) {
  for (auto& [n, s] : obs) {
    if (s.rank == 0 && s.inv.is_zero()) continue;
    auto& dp = prof[n];
    dp.rank = s.rank;
    dp.local[p] = s.inv;
  }
}

void normalize(Profile& prof, const std::vector<Prime>& primes) {
  for (auto it = prof.begin(); it != prof.end();) {
    for (Prime p : primes) it->second.local[p];
    if (it->second.is_zero())
      it = prof.erase(it);
    else
      ++it;
  }
}

}  // namespace

std::vector<Prime> oracle_primes(const SpFiltration& phi, const FreeComplex& x) {
  std::vector<Prime> ps{2, 3, 5};
  for (auto& [d, h] : homology(x)) {
    auto t = h.torsion_primes();
    ps.insert(ps.end(), t.begin(), t.end());
  }
  auto add = [&](const SpSubset& z) {
    auto m = mentioned_primes(z);
    ps.insert(ps.end(), m.begin(), m.end());
  };
  add(phi.tail);
  add(phi.head);
  for (auto& z : phi.levels) add(z);
  std::sort(ps.begin(), ps.end());
  ps.erase(std::unique(ps.begin(), ps.end()), ps.end());
  return ps;
}

CechReport cech_oracle(const SpFiltration& phi, const FreeComplex& x, const std::vector<Prime>& primes,
                       int exponent_cap) {
  if (!phi.spec.is_integers()) throw CechError("the oracle works over Spec(Z)");
  if (!phi.is_finite()) throw CechError("the oracle needs a finite filtration");
  validate(x);
  auto finite_level = [](const SpSubset& z) { return z.generic || !z.maximals.cofinite; };
  bool ok = finite_level(phi.tail) && finite_level(phi.head);
  for (auto& z : phi.levels) ok = ok && finite_level(z);
  if (!ok) throw CechError("the oracle needs levels that are Whole or finite");

  CechReport rep;
  rep.primes = primes;
  int max_exp = 0;
  const Mixed mx = from_free(x);
  for (Prime p : primes) {
    std::vector<Step> st;
    if (phi.is_constant()) {
      st.push_back({localize_level(phi.tail, p), false, 0});
    } else {
      auto [s, n] = *phi.interval();
      for (int i = s; i <= n; ++i) st.push_back({localize_level(phi.at(i), p), true, i});
    }
    Mixed u = mx;
    ChainMap g;
    for (int n = mx.lo; n <= mx.hi(); ++n) g[n] = RMat::identity(mx.dim(n));
    for (auto& s : st) apply_step(u, g, mx, s, p);
    Mixed low = fiber(mx, g, u);
    minimize(low, p, nullptr, nullptr);
    merge_into(rep.upper, observe(u, p, max_exp), p);
    merge_into(rep.lower, observe(low, p, max_exp), p);
  }
  normalize(rep.upper, primes);
  normalize(rep.lower, primes);
  // Reduction mod p^t stabilizes once t exceeds every torsion exponent.
  rep.exponent_cap = exponent_cap;
  while (max_exp >= rep.exponent_cap && rep.exponent_cap < 48) rep.exponent_cap = std::min(48, rep.exponent_cap * 2);
  rep.stabilized = max_exp < rep.exponent_cap;
  return rep;
}

Profile engine_profile(const FormalObject& x, const std::vector<Prime>& primes) {
  Profile prof;
  for (auto& [d, m] : x.degrees()) {
    DegreeProfile dp;
    for (Prime p : primes) dp.local[p];
    for (auto& a : m.atoms()) {
      switch (a.kind) {
        case AtomKind::Free:
          dp.rank += a.mult;
          for (Prime p : primes) dp.local[p].free += a.mult;
          break;
        case AtomKind::Localized:
          dp.rank += a.mult;
          for (Prime p : primes) (a.set.contains(p) ? dp.local[p].rational : dp.local[p].free) += a.mult;
          break;
        case AtomKind::Prufer:
          for (Prime p : primes)
            if (a.set.contains(p)) dp.local[p].prufer += a.mult;
          break;
        case AtomKind::Torsion:
          if (dp.local.count(a.p))
            for (int k = 0; k < a.mult; ++k) dp.local[a.p].torsion.push_back(a.e);
          break;
      }
    }
    for (auto& [p, l] : dp.local) std::sort(l.torsion.begin(), l.torsion.end());
    if (!dp.is_zero()) prof[d] = dp;
  }
  return prof;
}

std::string profile_diff(const Profile& expected, const Profile& got) {
  std::set<int> degs;
  for (auto& [d, _] : expected) degs.insert(d);
  for (auto& [d, _] : got) degs.insert(d);
  static const DegreeProfile zero;
  for (int d : degs) {
    auto e = expected.count(d) ? expected.at(d) : zero;
    auto g = got.count(d) ? got.at(d) : zero;
    if (e.rank != g.rank) {
      std::ostringstream os;
      os << "degree " << d << ": rank " << e.rank << " vs " << g.rank;
      return os.str();
    }
    std::set<Prime> ps;
    for (auto& [p, _] : e.local) ps.insert(p);
    for (auto& [p, _] : g.local) ps.insert(p);
    for (Prime p : ps) {
      LocalInvariants a = e.local.count(p) ? e.local.at(p) : LocalInvariants{};
      LocalInvariants b = g.local.count(p) ? g.local.at(p) : LocalInvariants{};
      if (!(a == b)) {
        std::ostringstream os;
        os << "degree " << d << ", prime " << p << ": free " << a.free << "/" << b.free << ", rational "
           << a.rational << "/" << b.rational << ", prufer " << a.prufer << "/" << b.prufer << ", torsion "
           << a.torsion.size() << "/" << b.torsion.size();
        return os.str();
      }
    }
  }
  return {};
}

}  // namespace tstruct
