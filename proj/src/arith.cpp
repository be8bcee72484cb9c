#include "tstruct/arith.hpp"

#include <algorithm>
#include <numeric>
#include <stdexcept>

namespace tstruct {
namespace {

using u64 = std::uint64_t;
using u128 = unsigned __int128;

u64 mulmod(u64 a, u64 b, u64 m) { return static_cast<u64>(static_cast<u128>(a) * b % m); }

u64 powmod(u64 a, u64 e, u64 m) {
  u64 r = 1 % m;
  a %= m;
  while (e) {
    if (e & 1) r = mulmod(r, a, m);
    a = mulmod(a, a, m);
    e >>= 1;
  }
  return r;
}

bool miller_rabin(u64 n, u64 a) {
  if (a % n == 0) return true;
  u64 d = n - 1;
  int s = 0;
  while ((d & 1) == 0) {
    d >>= 1;
    ++s;
  }
  u64 x = powmod(a, d, n);
  if (x == 1 || x == n - 1) return true;
  for (int i = 1; i < s; ++i) {
    x = mulmod(x, x, n);
    if (x == n - 1) return true;
  }
  return false;
}

u64 pollard_rho(u64 n) {
  if (n % 2 == 0) return 2;
  for (u64 c = 1;; ++c) {
    auto f = [&](u64 x) { return (mulmod(x, x, n) + c) % n; };
    u64 x = 2, y = 2, d = 1;
    while (d == 1) {
      x = f(x);
      y = f(f(y));
      d = std::gcd(x > y ? x - y : y - x, n);
    }
    if (d != n) return d;
  }
}

void factor_into(u64 n, std::vector<u64>& out) {
  if (n == 1) return;
  if (is_prime(n)) {
    out.push_back(n);
    return;
  }
  u64 d = pollard_rho(n);
  factor_into(d, out);
  factor_into(n / d, out);
}

std::vector<std::pair<Prime, int>> group(std::vector<u64> ps) {
  std::sort(ps.begin(), ps.end());
  std::vector<std::pair<Prime, int>> res;
  for (u64 p : ps) {
    if (!res.empty() && res.back().first == p)
      ++res.back().second;
    else
      res.push_back({p, 1});
  }
  return res;
}

}  // namespace

bool is_prime(std::uint64_t n) {
  if (n < 2) return false;
  for (u64 p : {2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37}) {
    if (n % p == 0) return n == p;
  }
  for (u64 a : {2, 325, 9375, 28178, 450775, 9780504, 1795265022}) {
    if (!miller_rabin(n, a)) return false;
  }
  return true;
}

std::vector<std::pair<Prime, int>> factor(std::uint64_t n) {
  if (n == 0) throw std::domain_error("factor: zero");
  std::vector<u64> ps;
  for (u64 p = 2; p < 100 && p * p <= n; ++p) {
    while (n % p == 0) {
      ps.push_back(p);
      n /= p;
    }
  }
  factor_into(n, ps);
  return group(ps);
}

std::vector<std::pair<Prime, int>> factor(const BigInt& n0) {
  BigInt n = boost::multiprecision::abs(n0);
  if (n == 0) throw std::domain_error("factor: zero");
  if (n <= std::numeric_limits<u64>::max()) return factor(static_cast<u64>(n));
  std::vector<u64> ps;
  for (u64 p = 2; p < 100000; ++p) {
    if (n % p == 0) {
      while (n % p == 0) {
        ps.push_back(p);
        n /= p;
      }
      if (n <= std::numeric_limits<u64>::max()) break;
    }
  }
  if (n > std::numeric_limits<u64>::max())
    throw std::domain_error("factor: prime factor exceeds 64 bits");
  factor_into(static_cast<u64>(n), ps);
  return group(ps);
}

int valuation(const BigInt& n, Prime p) {
  if (n == 0) throw std::domain_error("valuation of zero");
  BigInt m = n;
  int v = 0;
  while (m % p == 0) {
    m /= p;
    ++v;
  }
  return v;
}

int valuation(const Rational& q, Prime p) {
  return valuation(boost::multiprecision::numerator(q), p) -
         valuation(boost::multiprecision::denominator(q), p);
}

Prime fresh_prime(const std::vector<Prime>& avoid) {
  for (Prime p = 2;; ++p) {
    if (is_prime(p) && !std::binary_search(avoid.begin(), avoid.end(), p)) return p;
  }
}

BigInt ipow(Prime p, int e) {
  BigInt r = 1;
  for (int i = 0; i < e; ++i) r *= p;
  return r;
}

BigInt inverse_mod(const BigInt& a0, const BigInt& m) {
  BigInt a = a0 % m;
  if (a < 0) a += m;
  BigInt g = m, x = 0, x1 = 1, r = a;
  // extended Euclid on (m, a)
  while (r != 0) {
    BigInt q = g / r;
    BigInt t = g - q * r;
    g = r;
    r = t;
    t = x - q * x1;
    x = x1;
    x1 = t;
  }
  if (g != 1) throw std::domain_error("inverse_mod: not invertible");
  x %= m;
  if (x < 0) x += m;
  return x;
}

BigInt reduce_mod(const Rational& q, const BigInt& m) {
  BigInt num = boost::multiprecision::numerator(q) % m;
  if (num < 0) num += m;
  BigInt r = num * inverse_mod(boost::multiprecision::denominator(q), m) % m;
  return r;
}

}  // namespace tstruct
