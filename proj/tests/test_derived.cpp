#include "tstruct/cech.hpp"
#include "tstruct/corpus.hpp"
#include "tstruct/derived.hpp"

#include <doctest.h>

using namespace tstruct;

namespace {

const Spectrum Z = Spectrum::integers();

ElementaryModule em(std::vector<Atom> a) { return ElementaryModule(std::move(a)); }
FormalObject Z0() { return FormalObject::stalk(0, em({Atom::free(1)})); }

}  // namespace

TEST_CASE("local cohomology of Z") {
  auto g = rgamma(SpSubset::finite({2}), Z0());
  CHECK(g == FormalObject::stalk(1, em({Atom::prufer(PrimeSet::finite({2}))})));
  auto q = rq(SpSubset::finite({2}), Z0());
  CHECK(q == FormalObject::stalk(0, em({Atom::localized(PrimeSet::finite({2}), 1)})));
  CHECK(rgamma(SpSubset::empty(), Z0()).is_zero());
  CHECK(rgamma(SpSubset::whole(Z), Z0()) == Z0());
  CHECK(rq(SpSubset::whole(Z), Z0()).is_zero());
  // maximal ideals only: the derived torsion is Q/Z in degree 1
  auto gm = rgamma(SpSubset::cofinite({}), Z0());
  CHECK(gm == FormalObject::stalk(1, em({Atom::prufer(PrimeSet::all())})));
}

TEST_CASE("local cohomology of torsion and localized atoms") {
  auto t = FormalObject::stalk(0, em({Atom::torsion(3, 2), Atom::torsion(5, 1)}));
  CHECK(rgamma(SpSubset::finite({3}), t) == FormalObject::stalk(0, em({Atom::torsion(3, 2)})));
  CHECK(rq(SpSubset::finite({3}), t) == FormalObject::stalk(0, em({Atom::torsion(5, 1)})));
  auto l = FormalObject::stalk(0, em({Atom::localized(PrimeSet::finite({2}), 1)}));
  CHECK(rgamma(SpSubset::finite({2}), l).is_zero());
}

TEST_CASE("homology of a free complex") {
  auto x = from_free_complex(FreeComplex::koszul({6}, 2));
  CHECK(x == FormalObject::stalk(2, em({Atom::torsion(2, 1), Atom::torsion(3, 1)})));
  CHECK(x.is_fg());
  CHECK(x.shifted(1).min_degree() == 1);
}

TEST_CASE("truncation of Z[0] at a single prime") {
  // aisle generated by Z/2 in degrees <= 0
  auto t = tau_single(0, SpSubset::finite({2}), Z0());
  CHECK(t.determinate);
  CHECK(t.lower.is_zero());
  CHECK(t.upper == Z0());
  auto u = tau_single(1, SpSubset::finite({2}), Z0());
  CHECK(u.lower == FormalObject::stalk(1, em({Atom::prufer(PrimeSet::finite({2}))})));
  CHECK_FALSE(u.lower.is_fg());
}

TEST_CASE("truncation triangle invariants on the corpus") {
  auto objs = fg_object_corpus(kDefaultSeed, 60);
  const SpFiltration phis[] = {
      canonical_filtration(Z, 0),
      make_filtration(Z, SpSubset::whole(Z), -1, {SpSubset::finite({2, 3})}, SpSubset::empty()),
      make_filtration(Z, SpSubset::whole(Z), 0, {SpSubset::cofinite({5}), SpSubset::finite({7})}, SpSubset::empty()),
  };
  for (const auto& phi : phis)
    for (const auto& x : objs) {
      auto t = tau_filtration(phi, x);
      REQUIRE(t.determinate);
      CHECK(in_aisle(phi, t.lower));
      CHECK(in_coaisle(phi, t.upper));
      auto again = tau_filtration(phi, t.lower);
      CHECK(again.lower == t.lower);
      CHECK(again.upper.is_zero());
      CHECK(orthogonality_check(phi, t.upper, -4, 4).holds);
    }
}

TEST_CASE("a weak Cousin violation yields a non finitely generated vertex") {
  auto phi = make_filtration(Z, SpSubset::whole(Z), 0, {SpSubset::finite({2}), SpSubset::finite({2})},
                             SpSubset::empty());
  auto w = cousin_failure_witness(phi, 1, 2);
  CHECK_FALSE((w.lower_fg && w.upper_fg));
  CHECK((!w.lower_offenders.empty() || !w.upper_offenders.empty()));
}

TEST_CASE("engine and Cech oracle agree") {
  const SpFiltration phis[] = {
      canonical_filtration(Z, 1),
      make_filtration(Z, SpSubset::whole(Z), 0, {SpSubset::finite({2}), SpSubset::finite({2})}, SpSubset::empty()),
      make_filtration(Z, SpSubset::whole(Z), -1, {SpSubset::finite({3, 5})}, SpSubset::empty()),
  };
  for (const auto& phi : phis)
    for (const auto& x : complex_corpus(kDefaultSeed, 25)) {
      auto ps = oracle_primes(phi, x);
      auto rep = cech_oracle(phi, x, ps);
      REQUIRE(rep.stabilized);
      auto t = tau_filtration(phi, from_free_complex(x));
      CHECK(profile_diff(rep.lower, engine_profile(t.lower, rep.primes)) == "");
      CHECK(profile_diff(rep.upper, engine_profile(t.upper, rep.primes)) == "");
    }
}

TEST_CASE("localization of objects") {
  auto x = FormalObject::stalk(0, em({Atom::free(1), Atom::torsion(2, 1), Atom::torsion(3, 1)}));
  auto at2 = localize(x, Point{2});
  CHECK(at2 == FormalObject::stalk(0, em({Atom::localized(PrimeSet::cofinite_except({2}), 1), Atom::torsion(2, 1)})));
  auto gen = localize(x, Point{0});
  CHECK(gen == FormalObject::stalk(0, em({Atom::localized(PrimeSet::all(), 1)})));
}
