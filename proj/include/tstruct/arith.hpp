#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <cstdint>
#include <utility>
#include <vector>

namespace tstruct {

using BigInt = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;
using Prime = std::uint64_t;

// Deterministic for every 64-bit input.
bool is_prime(std::uint64_t n);

// Prime factorization as (prime, exponent) pairs in increasing order.
// Throws std::domain_error when a prime factor does not fit in 64 bits.
std::vector<std::pair<Prime, int>> factor(std::uint64_t n);
std::vector<std::pair<Prime, int>> factor(const BigInt& n);

// Exponent of p in n; n must be nonzero.
int valuation(const BigInt& n, Prime p);
int valuation(const Rational& q, Prime p);

// Smallest prime not contained in the sorted list `avoid`.
Prime fresh_prime(const std::vector<Prime>& avoid);

BigInt ipow(Prime p, int e);

// Image of q in Z/m; the denominator must be invertible mod m.
BigInt reduce_mod(const Rational& q, const BigInt& m);

BigInt inverse_mod(const BigInt& a, const BigInt& m);

}  // namespace tstruct
