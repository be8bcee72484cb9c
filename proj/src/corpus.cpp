#include "tstruct/corpus.hpp"

#include <algorithm>
#include <array>
#include <functional>

namespace tstruct {
namespace {

constexpr std::array<long long, 16> kMultipliers{0, 1, 2, 3, 4, 5, 6, 7, 8, 9, 10, 12, 15, 16, 18, 20};
constexpr std::array<Prime, 4> kPrimes{2, 3, 5, 7};

int uniform(std::mt19937_64& rng, int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(rng); }

struct Unimodular {
  Matrix p, pinv;
};

Unimodular random_unimodular(std::mt19937_64& rng, int n, int ops) {
  Unimodular u{Matrix::identity(n), Matrix::identity(n)};
  if (n < 2) {
    if (n == 1 && uniform(rng, 0, 1)) u.p(0, 0) = u.pinv(0, 0) = -1;
    return u;
  }
  for (int k = 0; k < ops; ++k) {
    int i = uniform(rng, 0, n - 1), j = uniform(rng, 0, n - 2);
    if (j >= i) ++j;
    int c = uniform(rng, -2, 2);
    if (c == 0) c = 1;
    for (int col = 0; col < n; ++col) u.p(i, col) += c * u.p(j, col);
    for (int row = 0; row < n; ++row) u.pinv(row, j) -= c * u.pinv(row, i);
  }
  return u;
}

bool within(const Matrix& m, int bound) {
  return std::all_of(m.a.begin(), m.a.end(), [&](const BigInt& x) { return abs(x) <= bound; });
}

PrimeSet random_prime_set(std::mt19937_64& rng) {
  std::vector<Prime> ps;
  for (Prime p : kPrimes)
    if (uniform(rng, 0, 2) == 0) ps.push_back(p);
  if (uniform(rng, 0, 3) == 0) return PrimeSet::cofinite_except(ps);
  if (ps.empty()) ps.push_back(kPrimes[uniform(rng, 0, 3)]);
  return PrimeSet::finite(ps);
}

Atom random_fg_atom(std::mt19937_64& rng) {
  if (uniform(rng, 0, 2) == 0) return Atom::free(uniform(rng, 1, 2));
  return Atom::torsion(kPrimes[uniform(rng, 0, 3)], uniform(rng, 1, 3), uniform(rng, 1, 2));
}

FormalObject random_with(std::mt19937_64& rng, const std::function<Atom()>& atom) {
  FormalObject x;
  int lo = uniform(rng, -3, 3), hi = std::min(3, lo + uniform(rng, 0, 3));
  for (int d = lo; d <= hi; ++d) {
    int n = uniform(rng, 0, 2);
    std::vector<Atom> as;
    for (int k = 0; k < n; ++k) as.push_back(atom());
    x.add(d, ElementaryModule(as));
  }
  return x;
}

}  // namespace

std::mt19937_64 make_stream(std::uint64_t seed, std::string_view tag) {
  std::uint64_t h = 1469598103934665603ull;
  for (unsigned char c : tag) h = (h ^ c) * 1099511628211ull;
  std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                    static_cast<std::uint32_t>(h), static_cast<std::uint32_t>(h >> 32)};
  return std::mt19937_64(seq);
}

FreeComplex random_free_complex(std::mt19937_64& rng, const ComplexLimits& lim) {
  const int span = lim.hi_degree - lim.lo_degree + 1;
  const int terms = uniform(rng, 1, std::min(lim.max_terms, span));
  FreeComplex x;
  x.min_degree = uniform(rng, lim.lo_degree, lim.hi_degree - terms + 1);

  // stalks[i], arrows[i] leaving term i, arrow multipliers
  std::vector<int> stalks(terms), arrows(terms, 0);
  std::vector<std::vector<long long>> mult(terms);
  for (int i = 0; i < terms; ++i) {
    int incoming = i > 0 ? arrows[i - 1] : 0;
    int room = lim.max_rank - incoming;
    arrows[i] = i + 1 < terms ? uniform(rng, 0, room) : 0;
    stalks[i] = uniform(rng, 0, std::min(room - arrows[i], 2));
    for (int k = 0; k < arrows[i]; ++k) mult[i].push_back(kMultipliers[uniform(rng, 0, kMultipliers.size() - 1)]);
    x.ranks.push_back(incoming + stalks[i] + arrows[i]);
  }

  std::vector<Matrix> base;
  for (int i = 0; i + 1 < terms; ++i) {
    Matrix d(x.ranks[i + 1], x.ranks[i]);
    int target = stalks[i + 1] + arrows[i + 1];
    for (int k = 0; k < arrows[i]; ++k) d(target + k, stalks[i] + k) = mult[i][k];
    base.push_back(std::move(d));
  }

  for (int attempt = 0; attempt < 40; ++attempt) {
    int ops = std::max(0, 4 - attempt / 10);
    std::vector<Unimodular> us;
    for (int r : x.ranks) us.push_back(random_unimodular(rng, r, ops));
    std::vector<Matrix> diffs;
    bool ok = true;
    for (int i = 0; i + 1 < terms && ok; ++i) {
      diffs.push_back(us[i + 1].p * base[i] * us[i].pinv);
      ok = within(diffs.back(), lim.max_entry);
    }
    if (ok) {
      x.diffs = std::move(diffs);
      return x;
    }
  }
  x.diffs = std::move(base);
  return x;
}

FormalObject random_fg_object(std::mt19937_64& rng) {
  return random_with(rng, [&] { return random_fg_atom(rng); });
}

FormalObject random_object(std::mt19937_64& rng) {
  return random_with(rng, [&] {
    switch (uniform(rng, 0, 3)) {
      case 0:
        return Atom::localized(random_prime_set(rng), uniform(rng, 1, 2));
      case 1:
        return Atom::prufer(random_prime_set(rng), uniform(rng, 1, 2));
      default:
        return random_fg_atom(rng);
    }
  });
}

std::vector<FreeComplex> complex_corpus(std::uint64_t seed, int n, const ComplexLimits& lim) {
  auto rng = make_stream(seed, "complex");
  std::vector<FreeComplex> out;
  out.reserve(n);
  for (int i = 0; i < n; ++i) out.push_back(random_free_complex(rng, lim));
  return out;
}

std::vector<FormalObject> fg_object_corpus(std::uint64_t seed, int n) {
  auto rng = make_stream(seed, "fg-object");
  std::vector<FormalObject> out;
  out.reserve(n);
  for (int i = 0; i < n; ++i) out.push_back(random_fg_object(rng));
  return out;
}

}  // namespace tstruct
