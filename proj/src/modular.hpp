#pragma once

// Dense polynomial arithmetic over Z/pZ for word-sized primes p < 2^31.

#include <cstdint>
#include <random>
#include <utility>
#include <vector>

#include "lehmer/int_poly.hpp"

namespace lehmer::detail {

using u64 = std::uint64_t;
using ModPoly = std::vector<u64>;  // lowest degree first, no trailing zeros

inline u64 mulm(u64 a, u64 b, u64 p) { return a * b % p; }
inline u64 addm(u64 a, u64 b, u64 p) { return (a + b) % p; }
inline u64 subm(u64 a, u64 b, u64 p) { return (a + p - b) % p; }

u64 powm(u64 a, u64 e, u64 p);
u64 invm(u64 a, u64 p);

inline void trim(ModPoly& a) {
  while (!a.empty() && a.back() == 0) a.pop_back();
}
inline int deg(const ModPoly& a) { return static_cast<int>(a.size()) - 1; }

ModPoly reduce(const IntPoly& f, u64 p);
ModPoly mul(const ModPoly& a, const ModPoly& b, u64 p);
ModPoly add(const ModPoly& a, const ModPoly& b, u64 p);
ModPoly sub(const ModPoly& a, const ModPoly& b, u64 p);
ModPoly scale(const ModPoly& a, u64 s, u64 p);
ModPoly monic(const ModPoly& a, u64 p);
ModPoly derivative(const ModPoly& a, u64 p);
void divmod(const ModPoly& a, const ModPoly& b, u64 p, ModPoly& q, ModPoly& r);
ModPoly rem(const ModPoly& a, const ModPoly& b, u64 p);
ModPoly quo(const ModPoly& a, const ModPoly& b, u64 p);
/// Monic gcd.
ModPoly gcd(ModPoly a, ModPoly b, u64 p);
/// s*a + t*b = gcd (monic); returns gcd.
ModPoly ext_gcd(const ModPoly& a, const ModPoly& b, u64 p, ModPoly& s, ModPoly& t);
ModPoly powmod(const ModPoly& base, const BigInt& e, const ModPoly& m, u64 p);

bool is_squarefree(const ModPoly& f, u64 p);

/// Distinct-degree factorization of a monic squarefree f: pairs (product of all
/// irreducible factors of degree k, k).
std::vector<std::pair<ModPoly, int>> distinct_degree(ModPoly f, u64 p);
/// Splits a product of irreducibles of equal degree k (odd p).
std::vector<ModPoly> equal_degree(const ModPoly& g, int k, u64 p, std::mt19937_64& rng);
/// Monic irreducible factors of a monic squarefree f.
std::vector<ModPoly> factor_squarefree(const ModPoly& f, u64 p, std::mt19937_64& rng);

/// Odd primes in increasing order, starting from 3.
const std::vector<u64>& small_primes();

}  // namespace lehmer::detail
