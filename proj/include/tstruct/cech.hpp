#pragma once

#include "tstruct/derived.hpp"

#include <map>
#include <string>
#include <vector>

namespace tstruct {

// p-local shape of a module: Z_(p)^free + Q^rational + Prufer_p^prufer + torsion.
struct LocalInvariants {
  int free = 0;
  int rational = 0;
  int prufer = 0;
  std::vector<int> torsion;  // exponents, sorted, with repetition

  bool is_zero() const { return free == 0 && rational == 0 && prufer == 0 && torsion.empty(); }
  bool operator==(const LocalInvariants&) const = default;
};

struct DegreeProfile {
  int rank = 0;  // dimension over Q after tensoring
  std::map<Prime, LocalInvariants> local;

  bool is_zero() const;
  bool operator==(const DegreeProfile&) const = default;
};

// Nonzero degrees only.
using Profile = std::map<int, DegreeProfile>;

struct CechReport {
  Profile lower;
  Profile upper;
  std::vector<Prime> primes;
  int exponent_cap = 12;
  bool stabilized = true;
};

struct CechError : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

// Chain-level truncation of X along a finite filtration whose levels are Whole
// or finite sets of primes, computed prime by prime from the Cech complexes
// Z -> Z[1/m] localized at p.
CechReport cech_oracle(const SpFiltration& phi, const FreeComplex& x, const std::vector<Prime>& primes,
                       int exponent_cap = 12);

// {2,3,5}, the torsion primes of H(X) and every prime named by phi.
std::vector<Prime> oracle_primes(const SpFiltration& phi, const FreeComplex& x);

// What the oracle should see for an engine object.
Profile engine_profile(const FormalObject& x, const std::vector<Prime>& primes);

// Empty when equal, otherwise a short description of the first difference.
std::string profile_diff(const Profile& expected, const Profile& got);

}  // namespace tstruct
