#include "tstruct/filtration.hpp"
#include "tstruct/suites.hpp"

#include <doctest.h>

#include <functional>

using namespace tstruct;

namespace {

const Spectrum Z = Spectrum::integers();

// Independent census over Spec(Z): levels are Whole or subsets of {2,3,5},
// encoded as 8 (Whole) or a bitmask. Counts decreasing sequences on the window.
struct ZCensus {
  long long all = 0, weak = 0;
};

ZCensus count_z(int width) {
  auto le = [](int a, int b) { return b == 8 || (a != 8 && (a & b) == a); };
  auto nonempty = [](int a) { return a != 0; };
  ZCensus c;
  std::vector<int> s(width);
  std::function<void(int)> rec = [&](int i) {
    if (i == width) {
      ++c.all;
      bool weak = !(nonempty(s[0]) && s[0] != 8);
      for (int j = 1; j < width; ++j) weak = weak && !(nonempty(s[j]) && s[j - 1] != 8);
      c.weak += weak;
      return;
    }
    for (int v = 0; v <= 8; ++v)
      if (i == 0 || le(v, s[i - 1])) s[i] = v, rec(i + 1);
  };
  rec(0);
  // constants other than the empty one: Whole (weak Cousin) and 7 finite sets
  c.all += 8;
  c.weak += 1;
  return c;
}

SpFiltration cousin_counterexample() {
  return make_filtration(Z, SpSubset::whole(Z), 0, {SpSubset::finite({2}), SpSubset::finite({2})},
                         SpSubset::empty());
}

}  // namespace

TEST_CASE("canonical form") {
  auto f = make_filtration(Z, SpSubset::whole(Z), -2, {SpSubset::whole(Z), SpSubset::finite({3})}, SpSubset::empty());
  CHECK(f.start == -1);
  CHECK(f.end == -1);
  CHECK(f.at(-5) == SpSubset::whole(Z));
  CHECK(f.at(-1) == SpSubset::finite({3}));
  CHECK(f.at(0).is_empty());
  REQUIRE(f.interval());
  CHECK(*f.interval() == std::pair{-2, -1});
  CHECK(f.length() == 2);
  CHECK_THROWS_AS(make_filtration(Z, SpSubset::finite({2}), 0, {SpSubset::whole(Z)}, SpSubset::empty()),
                  FiltrationError);
}

TEST_CASE("census over Spec(Z) matches an independent count") {
  for (auto [a, b] : {std::pair{0, 1}, {-1, 1}, {-3, 3}}) {
    auto want = count_z(b - a + 1);
    CHECK(enumerate_filtrations(Z, a, b).size() == static_cast<std::size_t>(want.all));
    CHECK(enumerate_weak_cousin(Z, a, b).size() == static_cast<std::size_t>(want.weak));
  }
  // frozen values from the count above
  CHECK(count_z(7).all == 1304);
  CHECK(count_z(7).weak == 51);
}

TEST_CASE("census over the two-point chain") {
  Spectrum c = Spectrum::from_poset(two_chain_poset());
  // up-sets {} < {m} < {0,m}: 6 decreasing pairs plus two nonempty constants
  CHECK(enumerate_filtrations(c, 0, 1).size() == 8);
  CHECK(brute_force_census(c, 0, 1).size() == 8);
  CHECK(enumerate_filtrations(c, -2, 2).size() == brute_force_census(c, -2, 2).size());
}

TEST_CASE("weak Cousin witness") {
  auto r = weak_cousin(cousin_counterexample());
  CHECK_FALSE(r.holds);
  REQUIRE(r.witnesses.size() == 1);
  CHECK(r.witnesses[0] == CousinWitness{1, Point{2}, Point{0}});
  CHECK(weak_cousin(canonical_filtration(Z, 3)).holds);
  CHECK(weak_cousin(cm_filtration(Z, CodimFn::integers_default())).holds);
}

TEST_CASE("strong Cousin") {
  // canonical: generic and maximals drop out together, so the converse fails
  CHECK_FALSE(strong_cousin_converse(canonical_filtration(Z)).holds);
  CHECK(strong_cousin(cm_filtration(Z, CodimFn::integers_default())).holds);
}

TEST_CASE("Cohen-Macaulay filtration over Z") {
  auto cm = cm_filtration(Z, CodimFn::integers_default());
  CHECK(is_whole(Z, cm.at(-1)));
  CHECK_FALSE(contains(Z, cm.at(0), Point{0}));
  CHECK(contains(Z, cm.at(0), Point{101}));
  CHECK(cm.at(1).is_empty());
}

TEST_CASE("dual filtration is an involution on weak Cousin filtrations") {
  auto d = CodimFn::integers_default();
  for (const auto& f : enumerate_weak_cousin(Z, -3, 3)) CHECK(dual_filtration(dual_filtration(f, d), d) == f);
  CHECK(dual_filtration(canonical_filtration(Z), d) == cm_filtration(Z, d));
}

TEST_CASE("shift and meet") {
  auto f = cousin_counterexample();
  for (int k = -3; k <= 3; ++k)
    for (int j = -5; j <= 5; ++j) CHECK(shift(f, k).at(j) == f.at(j - k));
  auto g = canonical_filtration(Z, 0);
  auto m = meet(f, g);
  for (int j = -4; j <= 4; ++j) CHECK(m.at(j) == (f.at(j) & g.at(j)));
  CHECK(meet(f, f) == f);
}

TEST_CASE("localization preserves weak Cousin") {
  for (const auto& f : enumerate_weak_cousin(Z, -2, 2))
    for (Point q : {Point{0}, Point{2}, Point{7}}) CHECK(weak_cousin(localize(f, q)).holds);
}

TEST_CASE("discreteness on the census") {
  for (const auto& f : enumerate_weak_cousin(Z, -3, 3)) {
    auto r = stabilization_report(f);
    CHECK(r.bottom_open_closed);
    CHECK(r.discreteness_holds);
  }
  auto b = bousfield_class(constant_filtration(Z, SpSubset::finite({2})));
  REQUIRE(b);
  CHECK_FALSE(b->open_closed);
  CHECK_FALSE(weak_cousin(constant_filtration(Z, SpSubset::finite({2}))).holds);
}
