#pragma once

#include "tstruct/filtration.hpp"
#include "tstruct/zmodules.hpp"

#include <map>
#include <optional>
#include <string>
#include <vector>

namespace tstruct {

struct DerivedError : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

struct ExtensionCertificate {
  int degree;
  ElementaryModule sub;
  ElementaryModule quot;
  std::optional<ElementaryModule> resolved;
  bool operator==(const ExtensionCertificate&) const = default;
};

// An object of D(Z) recorded by its homology, degree -> module (zero degrees omitted).
class FormalObject {
 public:
  FormalObject() = default;
  FormalObject(std::initializer_list<std::pair<const int, ElementaryModule>> init);

  static FormalObject stalk(int degree, const ElementaryModule& m);

  void add(int degree, const ElementaryModule& m);
  const ElementaryModule& at(int degree) const;
  const std::map<int, ElementaryModule>& degrees() const { return degrees_; }

  bool is_zero() const { return degrees_.empty(); }
  bool is_fg() const;
  std::optional<int> min_degree() const;
  std::optional<int> max_degree() const;
  std::vector<Prime> mentioned_primes() const;

  // X[k]: degree j holds X^{j+k}.
  FormalObject shifted(int k) const;
  FormalObject operator+(const FormalObject& o) const;

  std::vector<ExtensionCertificate> certificates;
  bool has_unresolved() const;

  bool operator==(const FormalObject& o) const {
    return degrees_ == o.degrees_ && certificates == o.certificates;
  }

 private:
  std::map<int, ElementaryModule> degrees_;
};

std::string describe(const FormalObject& x);

FormalObject from_free_complex(const FreeComplex& x);

struct GammaPair {
  ElementaryModule gamma;
  ElementaryModule r1;
};

// Z is a subset of Spec(Z).
GammaPair gamma_and_r1(const SpSubset& z, const ElementaryModule& e);
FormalObject rgamma(const SpSubset& z, const FormalObject& x);
FormalObject rq(const SpSubset& z, const FormalObject& x);
// X tensored with the local ring at q (Q at the generic point).
FormalObject localize(const FormalObject& x, Point q);

struct TruncationResult {
  FormalObject lower;
  FormalObject upper;
  bool determinate = true;
};

// Truncation for the aisle with Z in degrees <= i and nothing above.
TruncationResult tau_single(int i, const SpSubset& z, const FormalObject& x);
// Finite filtrations over Spec(Z).
TruncationResult tau_filtration(const SpFiltration& phi, const FormalObject& x);

bool in_aisle(const SpFiltration& phi, const FormalObject& x);
bool in_coaisle(const SpFiltration& phi, const FormalObject& x);

struct OrthogonalityWitness {
  int generator_degree;  // the generator is R/p placed in this degree
  Point prime;
  int m;                 // shift of the target
  int target_degree;     // degree of the offending summand of Y
  bool ext;              // Ext^1 rather than Hom
  ElementaryModule value;
};

struct OrthogonalityReport {
  bool holds = true;
  std::optional<OrthogonalityWitness> witness;
};

// Hom(R/p[-i], Y[m]) = 0 for p in phi(i), i in [lo, hi], m <= 0.
OrthogonalityReport orthogonality_check(const SpFiltration& phi, const FormalObject& y, int lo, int hi);

struct HomVanishingReport {
  bool cond1;  // Hom(X, Y[i]) = 0 for all i <= 0, from the Hom complex
  bool cond3;  // vanishing against R/p[-j] for p minimal in supp H^j(X)
  bool agree() const { return cond1 == cond3; }
};

HomVanishingReport hom_vanishing_crosscheck(const FreeComplex& x, const FormalObject& y);

struct CousinFailureReport {
  TruncationResult truncation;
  bool lower_fg;
  bool upper_fg;
  std::vector<std::pair<int, Atom>> lower_offenders;
  std::vector<std::pair<int, Atom>> upper_offenders;
};

// p = Generic, q = (prime) with q in phi(j) and Generic outside phi(j-1).
CousinFailureReport cousin_failure_witness(const SpFiltration& phi, int j, Prime q);

}  // namespace tstruct
