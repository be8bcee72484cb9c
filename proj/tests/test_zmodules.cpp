#include "tstruct/corpus.hpp"
#include "tstruct/zmodules.hpp"

#include <doctest.h>

#include <random>

using namespace tstruct;

namespace {

// Rank over F_p by elimination on residues, kept separate from the library.
int rank_fp(const Matrix& m, long long p) {
  std::vector<std::vector<long long>> a(m.rows, std::vector<long long>(m.cols));
  for (int i = 0; i < m.rows; ++i)
    for (int j = 0; j < m.cols; ++j) {
      BigInt r = m(i, j) % p;
      if (r < 0) r += p;
      a[i][j] = static_cast<long long>(r);
    }
  auto inv = [p](long long x) {
    long long r = 1, e = p - 2;
    for (x %= p; e; e >>= 1, x = x * x % p)
      if (e & 1) r = r * x % p;
    return r;
  };
  int rank = 0;
  for (int c = 0; c < m.cols && rank < m.rows; ++c) {
    int piv = -1;
    for (int i = rank; i < m.rows; ++i)
      if (a[i][c]) piv = i;
    if (piv < 0) continue;
    std::swap(a[piv], a[rank]);
    long long iv = inv(a[rank][c]);
    for (int i = 0; i < m.rows; ++i) {
      if (i == rank || !a[i][c]) continue;
      long long f = a[i][c] * iv % p;
      for (int j = 0; j < m.cols; ++j) a[i][j] = ((a[i][j] - f * a[rank][j]) % p + p) % p;
    }
    ++rank;
  }
  return rank;
}

int count_parts(const FgZModule& m, Prime p) {
  int n = 0;
  for (auto& t : m.torsion)
    if (t.p == p) n += t.mult;
  return n;
}

std::map<int, FgZModule> nonzero_homology(const FreeComplex& x) {
  std::map<int, FgZModule> h;
  for (auto& [d, m] : homology(x))
    if (!m.is_zero()) h[d] = m;
  return h;
}

}  // namespace

TEST_CASE("Smith normal form of a known matrix") {
  Matrix m = Matrix::from_rows({{2, 4, 4}, {-6, 6, 12}, {10, -4, -16}});
  auto s = smith_normal_form(m);
  REQUIRE(s.invariants.size() == 3);
  CHECK(s.invariants[0] == 2);
  CHECK(s.invariants[1] == 6);
  CHECK(s.invariants[2] == 12);
}

TEST_CASE("Smith normal form: D = U M V with a divisibility chain") {
  std::mt19937_64 rng(3);
  for (int t = 0; t < 200; ++t) {
    int r = 1 + rng() % 4, c = 1 + rng() % 4;
    Matrix m(r, c);
    for (auto& x : m.a) x = static_cast<long long>(rng() % 41) - 20;
    auto s = smith_normal_form(m);
    Matrix d = s.U * m * s.V;
    for (int i = 0; i < r; ++i)
      for (int j = 0; j < c; ++j) {
        BigInt want = (i == j && i < s.rank()) ? s.invariants[i] : BigInt(0);
        CHECK(d(i, j) == want);
      }
    CHECK(s.U * s.Uinv == Matrix::identity(r));
    CHECK(s.V * s.Vinv == Matrix::identity(c));
    for (int i = 0; i + 1 < s.rank(); ++i) CHECK(s.invariants[i + 1] % s.invariants[i] == 0);
    CHECK(s.rank() == rank_rational(m));
  }
}

TEST_CASE("homology satisfies universal coefficients mod p") {
  // dim H^j(X/p) = rank H^j + #p-parts of H^j + #p-parts of H^{j+1}
  for (const auto& x : complex_corpus(kDefaultSeed, 150)) {
    auto h = homology(x);
    auto at = [&](int j) { return h.count(j) ? h.at(j) : FgZModule{}; };
    for (long long p : {2, 3, 5}) {
      for (int j = x.min_degree; j <= x.max_degree(); ++j) {
        int dim = x.rank_at(j) - rank_fp(x.diff_at(j), p) - rank_fp(x.diff_at(j - 1), p);
        CHECK(dim == at(j).rank + count_parts(at(j), p) + count_parts(at(j + 1), p));
      }
    }
  }
}

TEST_CASE("Koszul complexes") {
  auto h = nonzero_homology(FreeComplex::koszul({4}));
  REQUIRE(h.size() == 1);
  CHECK(h.at(0) == FgZModule::cyclic(4));
  CHECK(nonzero_homology(FreeComplex::koszul({2, 3})).empty());
  auto h2 = nonzero_homology(FreeComplex::koszul({6, 10}));
  REQUIRE(h2.count(0));
  CHECK(h2.at(0) == FgZModule::cyclic(2));
}

TEST_CASE("shift and dual of complexes") {
  FreeComplex k = FreeComplex::koszul({12});
  auto h = nonzero_homology(shift(k, 1));
  REQUIRE(h.count(-1));
  CHECK(h.at(-1) == FgZModule::cyclic(12));
  // Hom(Z/12, Z) = 0 and Ext^1 = Z/12, one degree up
  auto hd = nonzero_homology(dual_complex(k));
  REQUIRE(hd.size() == 1);
  CHECK(hd.begin()->first == 1);
}

TEST_CASE("Tor of cyclic groups") {
  auto [t0, t1] = tor(FgZModule::cyclic(4), FgZModule::cyclic(6));
  CHECK(t0 == FgZModule::cyclic(2));
  CHECK(t1 == FgZModule::cyclic(2));
  auto [u0, u1] = tor(FgZModule::free(2), FgZModule::cyclic(9));
  CHECK(u0 == direct_sum_power(FgZModule::cyclic(9), 2));
  CHECK(u1.is_zero());
}

TEST_CASE("Hom and Ext between atoms") {
  auto a = hom_ext(Atom::torsion(2, 2), Atom::torsion(2, 1));
  CHECK(a.hom == ElementaryModule({Atom::torsion(2, 1)}));
  CHECK(a.ext == ElementaryModule({Atom::torsion(2, 1)}));
  auto b = hom_ext(Atom::torsion(2, 1), Atom::free(1));
  CHECK(b.hom.is_zero());
  CHECK(b.ext == ElementaryModule({Atom::torsion(2, 1)}));
  auto c = hom_ext(Atom::torsion(3, 1), Atom::prufer(PrimeSet::finite({3})));
  CHECK(c.hom == ElementaryModule({Atom::torsion(3, 1)}));
  CHECK(c.ext.is_zero());
  auto d = hom_ext(Atom::free(1), Atom::localized(PrimeSet::finite({5}), 2));
  CHECK(d.hom == ElementaryModule({Atom::localized(PrimeSet::finite({5}), 2)}));
  CHECK_THROWS_AS(hom_ext(Atom::prufer(PrimeSet::all()), Atom::free(1)), ModuleError);
}

TEST_CASE("top indices agree on the corpus") {
  for (const auto& x : complex_corpus(kDefaultSeed, 100))
    for (Point p : {Point{0}, Point{2}, Point{3}, Point{5}}) {
      auto t = top_indices(x, p);
      CHECK(t.m == t.h);
    }
}

TEST_CASE("invalid complexes are rejected") {
  FreeComplex x;
  x.min_degree = 0;
  x.ranks = {1, 1, 1};
  x.diffs = {Matrix::from_rows({{2}}), Matrix::from_rows({{3}})};
  CHECK_THROWS_AS(validate(x), ModuleError);
}
