#pragma once

#include "tstruct/derived.hpp"

#include <cstdint>
#include <random>
#include <string_view>
#include <vector>

namespace tstruct {

inline constexpr std::uint64_t kDefaultSeed = 20260401;

struct ComplexLimits {
  int max_terms = 6;
  int max_rank = 3;
  int max_entry = 20;
  int lo_degree = -3;
  int hi_degree = 3;
};

// Independent stream per (seed, tag).
std::mt19937_64 make_stream(std::uint64_t seed, std::string_view tag);

// Split complex of stalks and arrows Z -a-> Z, conjugated termwise by random
// unimodular matrices while entries stay within the limit.
FreeComplex random_free_complex(std::mt19937_64& rng, const ComplexLimits& lim = {});

// Free and torsion atoms over {2,3,5,7} in degrees [-3,3].
FormalObject random_fg_object(std::mt19937_64& rng);

// Any atom kind, including localized and Prufer summands.
FormalObject random_object(std::mt19937_64& rng);

std::vector<FreeComplex> complex_corpus(std::uint64_t seed, int n, const ComplexLimits& lim = {});
std::vector<FormalObject> fg_object_corpus(std::uint64_t seed, int n);

}  // namespace tstruct
