#pragma once

#include "tstruct/derived.hpp"

#include <nlohmann/json.hpp>

#include <stdexcept>
#include <string>

namespace tstruct {

using Json = nlohmann::ordered_json;

inline constexpr const char* kSchema = "tstruct/1";

// Malformed or ill-typed input; the message starts with the location.
struct JsonError : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

// Throws JsonError with line and column on syntax errors.
Json parse_json(const std::string& text, const std::string& source = "<input>");
std::string dump(const Json& j);

// Copy of j with "schema" as its first key.
Json with_schema(const Json& j);

// Integers beyond 53 bits become decimal strings.
Json to_json(const BigInt& n);
BigInt bigint_from_json(const Json& j, const std::string& path = "");

Json to_json(const Spectrum& s);
Spectrum spectrum_from_json(const Json& j, const std::string& path = "");
// Poset schema: {"points":[{"id":...}], "covers":[[lower, upper]]}.
FinPoset poset_from_json(const Json& j, const std::string& path = "");

Json to_json(const Spectrum& s, const SpSubset& z);
SpSubset subset_from_json(const Spectrum& s, const Json& j, const std::string& path = "");

Json to_json(const PrimeSet& ps);
PrimeSet prime_set_from_json(const Json& j, const std::string& path = "");

Json to_json(const SpFiltration& phi);
SpFiltration filtration_from_json(const Json& j, const std::string& path = "");

Json to_json(const FreeComplex& x);
FreeComplex complex_from_json(const Json& j, const std::string& path = "");

Json to_json(const FgZModule& m);
Json to_json(const Atom& a);
Atom atom_from_json(const Json& j, const std::string& path = "");
Json to_json(const ElementaryModule& m);
Json to_json(const FormalObject& x);
FormalObject object_from_json(const Json& j, const std::string& path = "");

// A FormalObject document, or a FreeComplex document converted by homology.
FormalObject any_object_from_json(const Json& j);

Json to_json(const Spectrum& s, const CousinReport& r);

}  // namespace tstruct
