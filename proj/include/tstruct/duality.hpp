#pragma once

#include "tstruct/derived.hpp"

#include <optional>
#include <string>
#include <vector>

namespace tstruct {

struct DualityError : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

// The dualizing complex of Z is the stalk Z[0]; its codimension function is
// 0 at the generic point and 1 at every maximal ideal.
CodimFn dualizing_codim();

// RHom(-, Z): M in degree a goes to Hom(M, Z) in degree -a and Ext^1(M, Z) in degree 1-a.
FormalObject dualize(const FormalObject& x);

// Least degree where RGamma_{V(p)} Z[0] is nonzero.
int codim_from_dualizing(Point p);

struct CmMembership {
  bool by_hom;     // Hom(X[i], D) = 0 for i >= 0
  bool by_aisle;   // X in the aisle of the Cohen-Macaulay filtration
  bool agree() const { return by_hom == by_aisle; }
};

CmMembership cm_membership(const FormalObject& x);

struct Kashiwara1Report {
  bool c1, c2, c3;
  bool equivalent() const { return c1 == c2 && c2 == c3; }
};

struct Kashiwara2Report {
  bool c1, c2;
  bool equivalent() const { return c1 == c2; }
};

// Z is Whole or a finite set of maximal ideals; X is finitely generated.
Kashiwara1Report kashiwara1(const SpSubset& z, const FormalObject& x, int n);
Kashiwara2Report kashiwara2(const SpSubset& z, const FormalObject& x, int n);

// Dual filtration recomputed from its defining orthogonality: q lies in
// phi^d(k) iff Hom(R/q[-k], RHom(R/p[-j], D)) = 0 for all j and p in phi(j).
// Returns the first level where the closed formula disagrees.
struct DualFormulaCheck {
  bool holds = true;
  std::optional<int> k;
  std::optional<Point> point;
};
DualFormulaCheck dual_formula_check(const SpFiltration& phi);

struct DualValidation {
  bool holds = true;
  int checked = 0;
  DualFormulaCheck formula;
  std::optional<FormalObject> mismatch;  // X with in_coaisle(phi, X) != in_aisle(phi^d, dual X)
};

DualValidation dual_filtration_validate(const SpFiltration& phi, const std::vector<FormalObject>& samples);

}  // namespace tstruct
