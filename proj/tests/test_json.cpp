#include "tstruct/corpus.hpp"
#include "tstruct/json_io.hpp"
#include "tstruct/suites.hpp"

#include <doctest.h>

#include <fstream>
#include <sstream>

using namespace tstruct;

namespace {

Json fixture(const std::string& name) {
  std::ifstream in(std::string(TSTRUCT_FIXTURES) + "/" + name);
  std::ostringstream ss;
  ss << in.rdbuf();
  return parse_json(ss.str(), name);
}

}  // namespace

TEST_CASE("fixtures parse") {
  auto f = filtration_from_json(fixture("cousin_violation.json"));
  auto r = weak_cousin(f);
  CHECK(dump(to_json(f.spec, r)) == R"js({"weak":false,"witnesses":[[1,"(2)","0"]]})js");
  auto x = complex_from_json(fixture("z0_complex.json"));
  CHECK(from_free_complex(x) == FormalObject::stalk(0, ElementaryModule({Atom::free(1)})));
  auto p = poset_from_json(fixture("chain2.json"));
  CHECK(p == two_chain_poset());
}

TEST_CASE("syntax errors carry a location") {
  try {
    (void)fixture("bad_syntax.json");
    FAIL("no error");
  } catch (const JsonError& e) {
    CHECK(std::string(e.what()).find("bad_syntax.json:3:") == 0);
  }
}

TEST_CASE("type errors carry a path") {
  auto j = fixture("cousin_violation.json");
  j["levels"][1]["primes"] = Json::array({4});
  CHECK_THROWS_AS(filtration_from_json(j), JsonError);
  j = fixture("cousin_violation.json");
  j["window"]["end"] = "one";
  try {
    (void)filtration_from_json(j);
    FAIL("no error");
  } catch (const JsonError& e) {
    CHECK(std::string(e.what()).find("window") != std::string::npos);
  }
}

TEST_CASE("big integers survive a round trip") {
  BigInt big = BigInt(1) << 80;
  Json j = to_json(big);
  CHECK(j.is_string());
  CHECK(bigint_from_json(j) == big);
  CHECK(to_json(BigInt(12)).is_number_integer());
}

TEST_CASE("filtrations round trip") {
  Spectrum z = Spectrum::integers();
  for (const auto& f : enumerate_filtrations(z, -1, 1, {{2, 3}, true})) CHECK(filtration_from_json(to_json(f)) == f);
  Spectrum c = Spectrum::from_poset(two_chain_poset());
  for (const auto& f : enumerate_filtrations(c, -1, 1)) CHECK(filtration_from_json(to_json(f)) == f);
}

TEST_CASE("objects and complexes round trip") {
  std::mt19937_64 rng = make_stream(kDefaultSeed, "json");
  for (int i = 0; i < 100; ++i) {
    auto x = random_object(rng);
    CHECK(object_from_json(to_json(x)) == x);
  }
  for (const auto& c : complex_corpus(kDefaultSeed, 50)) {
    auto back = complex_from_json(to_json(c));
    CHECK(back.min_degree == c.min_degree);
    CHECK(back.ranks == c.ranks);
    CHECK(back.diffs == c.diffs);
  }
}

TEST_CASE("schema tag comes first") {
  Json j = with_schema(Json{{"a", 1}});
  CHECK(j.begin().key() == "schema");
  CHECK(j["schema"] == kSchema);
}

TEST_CASE("suite reports are reproducible") {
  SuiteConfig cfg;
  cfg.complexes = 20;
  cfg.pairs = 10;
  cfg.samples = 10;
  auto a = dump(to_json(run_suite("spectrum", cfg)));
  auto b = dump(to_json(run_suite("spectrum", cfg)));
  CHECK(a == b);
  CHECK_THROWS_AS(run_suite("nope", cfg), std::invalid_argument);
}
