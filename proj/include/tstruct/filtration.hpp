#pragma once

#include "tstruct/spectrum.hpp"

#include <functional>
#include <optional>
#include <string>
#include <tuple>
#include <vector>

namespace tstruct {

struct FiltrationError : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

// phi(j) = tail for j < start, levels[j - start] for start <= j <= end, head for j > end.
// Canonical form: levels.front() != tail, levels.back() != head; a constant
// filtration is stored with start = 0, end = -1.
struct SpFiltration {
  Spectrum spec;
  int start = 0;
  int end = -1;
  SpSubset tail;
  std::vector<SpSubset> levels;
  SpSubset head;

  const SpSubset& at(int j) const;
  bool is_constant() const { return levels.empty() && tail == head; }
  // Finite: constant, or empty from some degree on.
  bool is_finite() const { return is_constant() || head.is_empty(); }
  // Determined interval [s, n]; nullopt for constant filtrations.
  std::optional<std::pair<int, int>> interval() const;
  int length() const;

  bool operator==(const SpFiltration& o) const {
    return spec == o.spec && start == o.start && end == o.end && tail == o.tail && levels == o.levels &&
           head == o.head;
  }
};

SpFiltration make_filtration(const Spectrum& spec, SpSubset tail, int start, std::vector<SpSubset> levels,
                             SpSubset head);
SpFiltration constant_filtration(const Spectrum& spec, const SpSubset& z);
// Whole for j <= n, empty afterwards.
SpFiltration canonical_filtration(const Spectrum& spec, int n = 0);
// Z for j <= i, empty afterwards.
SpFiltration single_level(const Spectrum& spec, int i, const SpSubset& z);

struct CousinWitness {
  int j;
  Point q;  // in phi(j)
  Point p;  // immediate generalization of q
  bool operator==(const CousinWitness&) const = default;
};

struct CousinReport {
  bool holds = true;
  std::vector<CousinWitness> witnesses;
};

CousinReport weak_cousin(const SpFiltration& phi);
// Converse direction only: p in phi(j-1) with q outside phi(j).
CousinReport strong_cousin_converse(const SpFiltration& phi);
// Both directions.
CousinReport strong_cousin(const SpFiltration& phi);

SpFiltration localize(const SpFiltration& phi, Point q);
SpFiltration cm_filtration(const Spectrum& spec, const CodimFn& d);
SpFiltration dual_filtration(const SpFiltration& phi, const CodimFn& d);

struct StabilizationReport {
  int j0;
  SpSubset bottom;
  bool bottom_open_closed;
  SpSubset intersection;
  bool intersection_open_closed;
  bool separated;
  bool eventually_empty;
  bool connected;
  bool weak_cousin;
  bool constant;
  // Connected, weak Cousin, nonconstant  =>  bottom is everything and eventually empty.
  bool discreteness_holds;
};

StabilizationReport stabilization_report(const SpFiltration& phi);

SpFiltration meet(const SpFiltration& a, const SpFiltration& b);
// Levels of the result equal phi(i - k).
SpFiltration shift(const SpFiltration& phi, int k);

struct BousfieldClass {
  SpSubset z;
  bool open_closed;
};
std::optional<BousfieldClass> bousfield_class(const SpFiltration& phi);

// Candidate level values for enumeration. Over Z: everything, finite sets of
// `primes`, and (optionally) cofinite sets excluding subsets of `primes`.
std::vector<SpSubset> subset_universe(const Spectrum& spec, const std::vector<Prime>& primes = {},
                                      bool include_cofinite = false);

struct CensusOptions {
  std::vector<Prime> primes{2, 3, 5};
  bool include_cofinite = false;
  double cap = 5e7;  // bound on |universe|^(window width)
};

// Decreasing tuples phi(a) >= ... >= phi(b) with tail phi(a) and head empty,
// together with the constant filtrations, duplicate-free and canonical.
std::vector<SpFiltration> enumerate_filtrations(const Spectrum& spec, int a, int b, const CensusOptions& opt = {});
std::vector<SpFiltration> enumerate_weak_cousin(const Spectrum& spec, int a, int b, const CensusOptions& opt = {});

// Aisle membership from supports, one subset per degree.
bool in_aisle_by_supports(const SpFiltration& phi, const std::vector<std::pair<int, SpSubset>>& supports);

// Evaluates pred on every relevant maximal ideal of Z and returns the resulting
// subset: the mentioned primes are tested individually, a fresh prime stands
// for all the others.
PrimeSet classify_maximals(std::vector<Prime> mentioned, const std::function<bool(Prime)>& pred);

}  // namespace tstruct
