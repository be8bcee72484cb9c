#include "tstruct/spectrum.hpp"
#include "tstruct/suites.hpp"

#include <doctest.h>

#include <random>

using namespace tstruct;

namespace {

bool trial_prime(std::uint64_t n) {
  if (n < 2) return false;
  for (std::uint64_t d = 2; d * d <= n; ++d)
    if (n % d == 0) return false;
  return true;
}

PrimeSet random_prime_set(std::mt19937_64& rng) {
  static const std::vector<Prime> pool{2, 3, 5, 7, 11, 13};
  std::vector<Prime> ps;
  for (Prime p : pool)
    if (rng() % 2) ps.push_back(p);
  return rng() % 2 ? PrimeSet::finite(ps) : PrimeSet::cofinite_except(ps);
}

FinPoset vee() { return FinPoset({"a", "b", "m"}, {{0, 2}, {1, 2}}); }

}  // namespace

TEST_CASE("primality agrees with trial division") {
  for (std::uint64_t n = 0; n < 5000; ++n) REQUIRE(is_prime(n) == trial_prime(n));
  CHECK(is_prime(18446744073709551557ULL));
  CHECK_FALSE(is_prime(18446744073709551555ULL));
}

TEST_CASE("factorization multiplies back") {
  std::mt19937_64 rng(7);
  for (int t = 0; t < 300; ++t) {
    std::uint64_t n = rng() % 1000000000ULL + 1;
    BigInt prod = 1;
    for (auto [p, e] : factor(n)) {
      CHECK(trial_prime(p));
      prod *= ipow(p, e);
    }
    CHECK(prod == n);
  }
}

TEST_CASE("prime set operations are pointwise") {
  std::mt19937_64 rng(11);
  for (int t = 0; t < 400; ++t) {
    PrimeSet a = random_prime_set(rng), b = random_prime_set(rng);
    for (Prime p : {2, 3, 5, 7, 11, 13, 17, 19}) {
      CHECK((a & b).contains(p) == (a.contains(p) && b.contains(p)));
      CHECK((a | b).contains(p) == (a.contains(p) || b.contains(p)));
      CHECK((a - b).contains(p) == (a.contains(p) && !b.contains(p)));
      CHECK(complement(a).contains(p) == !a.contains(p));
    }
  }
}

TEST_CASE("points of Spec(Z) parse and print") {
  Spectrum z = Spectrum::integers();
  CHECK(z.name(Point{0}) == "0");
  CHECK(z.name(Point{7}) == "(7)");
  CHECK(z.parse_point("(7)") == Point{7});
  CHECK(z.parse_point("0") == Point{0});
  CHECK_THROWS_AS(z.parse_point("(4)"), SpectrumError);
}

TEST_CASE("closed sets over Z") {
  Spectrum z = Spectrum::integers();
  SpSubset v0 = closed_point_set(z, Point{0});
  CHECK(is_whole(z, v0));
  SpSubset v2 = closed_point_set(z, Point{2});
  CHECK(contains(z, v2, Point{2}));
  CHECK_FALSE(contains(z, v2, Point{3}));
  CHECK_FALSE(contains(z, v2, Point{0}));
  // a set with the generic point but missing a prime is not specialization closed
  CHECK_FALSE(is_valid_subset(z, SpSubset{true, PrimeSet::finite({2}), 0}));
  CHECK_FALSE(is_open_closed(z, v2).holds);
  CHECK(is_open_closed(z, SpSubset::whole(z)).holds);
  CHECK(is_open_closed(z, SpSubset::empty()).holds);
  CHECK(krull_dimension(z) == 1);
}

TEST_CASE("vee poset") {
  Spectrum s = Spectrum::from_poset(vee());
  CHECK(connected_components(s).size() == 1);
  auto gens = immediate_generalizations(s, Point{2});
  CHECK(gens.size() == 2);
  CHECK(minimal_points(s).size() == 2);
  CHECK(krull_dimension(s) == 1);
  // a up-set containing only {m}: closed, not open
  SpSubset m = closed_point_set(s, Point{2});
  CHECK_FALSE(is_open_closed(s, m).holds);
}

TEST_CASE("components of a disjoint union are open and closed") {
  Spectrum s = Spectrum::from_poset(FinPoset({"0", "m", "x"}, {{0, 1}}));
  auto comps = connected_components(s);
  REQUIRE(comps.size() == 2);
  for (auto& c : comps) CHECK(is_open_closed(s, c).holds);
}

TEST_CASE("codimension functions") {
  Spectrum c = Spectrum::from_poset(two_chain_poset());
  CodimFn good;
  good.values = {0, 1};
  CHECK(validate_codim_fn(c, good).holds);
  CodimFn bad;
  bad.values = {0, 2};
  CHECK_FALSE(validate_codim_fn(c, bad).holds);
  CHECK(validate_codim_fn(Spectrum::integers(), CodimFn::integers_default()).holds);
}
