#pragma once

#include "tstruct/arith.hpp"

#include <compare>
#include <map>
#include <memory>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace tstruct {

struct SpectrumError : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

// A finite or cofinite set of maximal ideals of Z.
struct PrimeSet {
  bool cofinite = false;
  std::vector<Prime> primes;  // listed (finite) or excluded (cofinite), sorted

  static PrimeSet none() { return {}; }
  static PrimeSet all() { return {true, {}}; }
  static PrimeSet finite(std::vector<Prime> ps);
  static PrimeSet cofinite_except(std::vector<Prime> ps);

  bool contains(Prime p) const;
  bool empty() const { return !cofinite && primes.empty(); }
  bool is_all() const { return cofinite && primes.empty(); }
  // Smallest member; nullopt when empty.
  std::optional<Prime> first() const;

  auto operator<=>(const PrimeSet&) const = default;
};

PrimeSet operator&(const PrimeSet& a, const PrimeSet& b);
PrimeSet operator|(const PrimeSet& a, const PrimeSet& b);
PrimeSet operator-(const PrimeSet& a, const PrimeSet& b);
PrimeSet complement(const PrimeSet& a);
bool subset(const PrimeSet& a, const PrimeSet& b);

// Finite poset of primes given by its covering pairs (p below q).
class FinPoset {
 public:
  static constexpr std::size_t kMaxPoints = 64;

  FinPoset() = default;
  FinPoset(std::vector<std::string> ids, std::vector<std::pair<int, int>> covers);

  std::size_t size() const { return ids_.size(); }
  const std::vector<std::string>& ids() const { return ids_; }
  const std::vector<std::pair<int, int>>& covers() const { return covers_; }
  int index_of(const std::string& id) const;

  std::uint64_t up(int i) const { return up_[i]; }       // points >= i
  std::uint64_t down(int i) const { return down_[i]; }   // points <= i
  std::uint64_t below(int i) const { return below_[i]; } // immediate generalizations
  std::uint64_t full_mask() const;

  bool operator==(const FinPoset& o) const { return ids_ == o.ids_ && covers_ == o.covers_; }

 private:
  std::vector<std::string> ids_;
  std::vector<std::pair<int, int>> covers_;
  std::vector<std::uint64_t> up_, down_, below_;
};

// Over Spec(Z): value 0 is the generic point, otherwise a prime. Over a poset: an index.
struct Point {
  std::uint64_t v = 0;
  auto operator<=>(const Point&) const = default;
};

class Spectrum {
 public:
  static Spectrum integers() { return Spectrum(); }
  static Spectrum from_poset(FinPoset p);

  bool is_integers() const { return !poset_; }
  const FinPoset& poset() const;

  std::string name(Point p) const;
  Point parse_point(const std::string& s) const;
  bool contains_point(Point p) const;

  bool operator==(const Spectrum& o) const;

 private:
  std::shared_ptr<const FinPoset> poset_;
};

// Specialization-closed subset. Over Z the fields `generic`/`maximals` are used,
// over a poset only `mask`; unused fields stay empty so lattice operations need no spectrum.
struct SpSubset {
  bool generic = false;
  PrimeSet maximals;
  std::uint64_t mask = 0;

  static SpSubset empty() { return {}; }
  static SpSubset whole(const Spectrum& s);
  static SpSubset finite(std::vector<Prime> ps) { return {false, PrimeSet::finite(std::move(ps)), 0}; }
  static SpSubset cofinite(std::vector<Prime> ps) {
    return {false, PrimeSet::cofinite_except(std::move(ps)), 0};
  }
  static SpSubset of_mask(std::uint64_t m) { return {false, {}, m}; }

  bool is_empty() const { return !generic && maximals.empty() && mask == 0; }
  auto operator<=>(const SpSubset&) const = default;
};

SpSubset operator&(const SpSubset& a, const SpSubset& b);
SpSubset operator|(const SpSubset& a, const SpSubset& b);
bool subset(const SpSubset& a, const SpSubset& b);
bool contains(const Spectrum& s, const SpSubset& z, Point p);
bool is_whole(const Spectrum& s, const SpSubset& z);
bool is_valid_subset(const Spectrum& s, const SpSubset& z);
SpSubset closed_point_set(const Spectrum& s, Point p);  // V(p)
std::string describe(const Spectrum& s, const SpSubset& z);

SpSubset specialization_closure(const Spectrum& s, const std::vector<Point>& pts);
std::vector<Point> immediate_generalizations(const Spectrum& s, Point q);

struct PairWitness {
  bool holds = true;
  std::optional<std::pair<Point, Point>> witness;
};

// Witness: (p in Z, generalization of p outside Z).
PairWitness is_open_closed(const Spectrum& s, const SpSubset& z);
std::vector<SpSubset> connected_components(const Spectrum& s);

// Codimension function. Over Z: d(0)=generic, d((p))=maximal unless overridden.
struct CodimFn {
  int generic = 0;
  int maximal = 1;
  std::map<Prime, int> overrides;
  std::vector<int> values;  // poset case

  static CodimFn integers_default() { return {}; }
  int operator()(const Spectrum& s, Point p) const;
};

// Witness: a covering pair (p, q) with d(q) != d(p) + 1.
PairWitness validate_codim_fn(const Spectrum& s, const CodimFn& d);
int krull_dimension(const Spectrum& s);
// Length of the longest chain below each point (posets only).
std::vector<int> heights(const Spectrum& s);
// The default over Z; the height on a poset, which may fail validation.
CodimFn height_codim(const Spectrum& s);
std::vector<Point> minimal_points(const Spectrum& s);
// Primes mentioned explicitly by z (listed or excluded).
std::vector<Prime> mentioned_primes(const SpSubset& z);

}  // namespace tstruct
