// JSON-string bindings; the Python package converts to and from dicts.
#include "tstruct/duality.hpp"
#include "tstruct/json_io.hpp"
#include "tstruct/suites.hpp"

#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

namespace py = pybind11;
using namespace tstruct;

namespace {

Json parse(const std::string& s) { return parse_json(s, "<python>"); }
std::string out(const Json& j) { return dump(j); }

}  // namespace

PYBIND11_MODULE(_tstruct, m) {
  m.doc() = "sp-filtrations and t-structure truncations over Spec(Z)";
  m.attr("SCHEMA") = kSchema;
  m.attr("DEFAULT_SEED") = kDefaultSeed;

  py::register_exception<JsonError>(m, "JsonError", PyExc_ValueError);

  m.def("weak_cousin", [](const std::string& f) {
    auto phi = filtration_from_json(parse(f));
    return out(to_json(phi.spec, weak_cousin(phi)));
  });
  m.def("strong_cousin", [](const std::string& f) {
    auto phi = filtration_from_json(parse(f));
    return out(to_json(phi.spec, strong_cousin(phi)));
  });
  m.def("localize", [](const std::string& f, const std::string& at) {
    auto phi = filtration_from_json(parse(f));
    return out(to_json(localize(phi, phi.spec.parse_point(at))));
  });
  m.def("cm_filtration", [](const std::string& spectrum) {
    Spectrum s = spectrum_from_json(parse(spectrum));
    return out(to_json(cm_filtration(s, height_codim(s))));
  }, py::arg("spectrum") = "\"Z\"");
  m.def("dual_filtration", [](const std::string& f) {
    auto phi = filtration_from_json(parse(f));
    return out(to_json(dual_filtration(phi, height_codim(phi.spec))));
  });
  m.def("census", [](const std::string& spectrum, int a, int b, std::vector<Prime> primes, bool cofinite, bool weak_only) {
    Spectrum s = spectrum_from_json(parse(spectrum));
    CensusOptions opt{std::move(primes), cofinite};
    auto fs = weak_only ? enumerate_weak_cousin(s, a, b, opt) : enumerate_filtrations(s, a, b, opt);
    Json arr = Json::array();
    for (auto& f : fs) arr.push_back(to_json(f));
    return out(arr);
  }, py::arg("spectrum"), py::arg("a"), py::arg("b"), py::arg("primes") = std::vector<Prime>{2, 3, 5},
        py::arg("cofinite") = false, py::arg("weak_only") = false);
  m.def("truncate", [](const std::string& f, const std::string& x) {
    auto t = tau_filtration(filtration_from_json(parse(f)), any_object_from_json(parse(x)));
    return out(Json{{"lower", to_json(t.lower)}, {"upper", to_json(t.upper)}, {"determinate", t.determinate}});
  });
  m.def("in_aisle", [](const std::string& f, const std::string& x) {
    return in_aisle(filtration_from_json(parse(f)), any_object_from_json(parse(x)));
  });
  m.def("in_coaisle", [](const std::string& f, const std::string& x) {
    return in_coaisle(filtration_from_json(parse(f)), any_object_from_json(parse(x)));
  });
  m.def("homology", [](const std::string& x) { return out(to_json(any_object_from_json(parse(x)))); });
  m.def("dualize", [](const std::string& x) { return out(to_json(dualize(any_object_from_json(parse(x))))); });
  m.def("cm_membership", [](const std::string& x) {
    auto r = cm_membership(any_object_from_json(parse(x)));
    return py::make_tuple(r.by_hom, r.by_aisle);
  });
  m.def("kashiwara1", [](const std::string& z, const std::string& x, int n) {
    auto r = kashiwara1(subset_from_json(Spectrum::integers(), parse(z)), any_object_from_json(parse(x)), n);
    return py::make_tuple(r.c1, r.c2, r.c3);
  });
  m.def("kashiwara2", [](const std::string& z, const std::string& x, int n) {
    auto r = kashiwara2(subset_from_json(Spectrum::integers(), parse(z)), any_object_from_json(parse(x)), n);
    return py::make_tuple(r.c1, r.c2);
  });
  m.def("run_suite", [](const std::string& name, std::uint64_t seed, int complexes, int pairs, int samples) {
    SuiteConfig cfg;
    cfg.seed = seed, cfg.complexes = complexes, cfg.pairs = pairs, cfg.samples = samples;
    SuiteReport r;
    {
      py::gil_scoped_release release;
      r = run_suite(name, cfg);
    }
    return out(to_json(r));
  }, py::arg("name"), py::arg("seed") = kDefaultSeed, py::arg("complexes") = 500, py::arg("pairs") = 200,
        py::arg("samples") = 200);
}
