#pragma once

#include "tstruct/spectrum.hpp"

#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace tstruct {

struct ModuleError : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

// Dense row-major integer matrix; shape is kept even when a dimension is zero.
struct Matrix {
  int rows = 0;
  int cols = 0;
  std::vector<BigInt> a;

  Matrix() = default;
  Matrix(int r, int c) : rows(r), cols(c), a(static_cast<std::size_t>(r) * c) {}
  static Matrix identity(int n);
  static Matrix from_rows(const std::vector<std::vector<long long>>& rows, int cols = -1);

  BigInt& operator()(int i, int j) { return a[static_cast<std::size_t>(i) * cols + j]; }
  const BigInt& operator()(int i, int j) const { return a[static_cast<std::size_t>(i) * cols + j]; }

  Matrix transpose() const;
  bool is_zero() const;
  bool operator==(const Matrix&) const = default;
};

Matrix operator*(const Matrix& x, const Matrix& y);

struct SmithForm {
  // Positive invariant factors d1 | d2 | ... ; their count is the rank.
  std::vector<BigInt> invariants;
  // D = U * M * V, with U * Uinv = I and V * Vinv = I. Empty unless requested.
  Matrix U, V, Uinv, Vinv;
  int rank() const { return static_cast<int>(invariants.size()); }
};

SmithForm smith_normal_form(const Matrix& m, bool transforms = true);

// Rank over Q, and over F_p; both by plain Gaussian elimination.
int rank_rational(const Matrix& m);
int rank_mod_p(const Matrix& m, Prime p);

struct TorsionPart {
  Prime p;
  int e;
  int mult;
  auto operator<=>(const TorsionPart&) const = default;
};

// Z^rank plus torsion summands Z/p^e, in normal form.
struct FgZModule {
  int rank = 0;
  std::vector<TorsionPart> torsion;

  static FgZModule free(int r) { return {r, {}}; }
  static FgZModule cyclic(const BigInt& n);  // Z/n; Z for n = 0
  // rank plus the cyclic factors Z/d for each d (units dropped).
  static FgZModule from_invariants(int rank, const std::vector<BigInt>& ds);

  bool is_zero() const { return rank == 0 && torsion.empty(); }
  std::vector<Prime> torsion_primes() const;
  bool operator==(const FgZModule&) const = default;
};

FgZModule direct_sum(const FgZModule& a, const FgZModule& b);
FgZModule direct_sum_power(const FgZModule& a, int k);
std::string describe(const FgZModule& m);

SpSubset support(const FgZModule& m);
// Torsion primes, plus Generic when rank > 0.
std::vector<Point> associated_primes(const FgZModule& m);

// Bounded complex of finite free Z-modules; diffs[i] maps degree min_degree+i
// to min_degree+i+1 and has ranks[i+1] rows, ranks[i] columns.
struct FreeComplex {
  int min_degree = 0;
  std::vector<int> ranks;
  std::vector<Matrix> diffs;

  int max_degree() const { return min_degree + static_cast<int>(ranks.size()) - 1; }
  int rank_at(int deg) const;
  // Differential leaving degree deg (a zero matrix outside the stored range).
  Matrix diff_at(int deg) const;
  static FreeComplex stalk(int deg, int rank);
  // Koszul complex of the sequence, concentrated in degrees top-r .. top.
  static FreeComplex koszul(const std::vector<long long>& gens, int top_degree = 0);
};

// Throws ModuleError on shape mismatch or d*d != 0.
void validate(const FreeComplex& x);
std::map<int, FgZModule> homology(const FreeComplex& x);
// The Hom complex into Z, with the same sign-free convention: degree k holds (X^{-k})^*.
FreeComplex dual_complex(const FreeComplex& x);
FreeComplex shift(const FreeComplex& x, int k);  // X[k]: degree j holds X^{j+k}

// Tor_0 and Tor_1.
std::pair<FgZModule, FgZModule> tor(const FgZModule& a, const FgZModule& b);

// nullopt stands for minus infinity.
struct TopIndices {
  std::optional<int> m;
  std::optional<int> h;
};
TopIndices top_indices(const FreeComplex& x, Point p);

// Atoms of the elementary class over Z.
enum class AtomKind { Free = 0, Localized = 1, Torsion = 2, Prufer = 3 };

struct Atom {
  AtomKind kind = AtomKind::Free;
  PrimeSet set;  // inverted primes (Localized) or Prufer primes
  Prime p = 0;   // Torsion
  int e = 0;     // Torsion
  int mult = 1;

  static Atom free(int r) { return {AtomKind::Free, {}, 0, 0, r}; }
  static Atom localized(PrimeSet s, int r) { return {AtomKind::Localized, std::move(s), 0, 0, r}; }
  static Atom torsion(Prime p, int e, int m = 1) { return {AtomKind::Torsion, {}, p, e, m}; }
  static Atom prufer(PrimeSet s, int m = 1) { return {AtomKind::Prufer, std::move(s), 0, 0, m}; }

  bool is_fg() const;
  auto operator<=>(const Atom&) const = default;
};

// Canonical direct sum of atoms: sorted, merged, zero summands removed,
// Localized(empty) rewritten as Free.
class ElementaryModule {
 public:
  ElementaryModule() = default;
  explicit ElementaryModule(std::vector<Atom> atoms);
  static ElementaryModule from_fg(const FgZModule& m);

  const std::vector<Atom>& atoms() const { return atoms_; }
  bool is_zero() const { return atoms_.empty(); }
  bool is_fg() const;
  // Requires is_fg().
  FgZModule to_fg() const;
  SpSubset support() const;
  std::vector<Prime> mentioned_primes() const;

  ElementaryModule operator+(const ElementaryModule& o) const;
  ElementaryModule times(int k) const;
  auto operator<=>(const ElementaryModule&) const = default;

 private:
  std::vector<Atom> atoms_;
};

std::string describe(const Atom& a);
std::string describe(const ElementaryModule& m);
SpSubset support(const Atom& a);

struct HomExt {
  ElementaryModule hom;
  ElementaryModule ext;
};

// Hom and Ext^1 from a finitely generated source; throws ModuleError otherwise.
HomExt hom_ext(const Atom& a, const Atom& b);
HomExt hom_ext(const ElementaryModule& a, const ElementaryModule& b);

struct KerCoker {
  ElementaryModule ker;
  ElementaryModule coker;
};

// Kernel and cokernel of multiplication by d on an atom.
KerCoker mult_ker_coker(const Atom& b, const BigInt& d);

}  // namespace tstruct
