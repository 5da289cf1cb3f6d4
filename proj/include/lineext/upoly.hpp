#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "lineext/mpoly.hpp"

namespace lineext {

/// Dense univariate polynomial over Z, coefficients from degree 0 upward.
/// The leading coefficient is nonzero (the zero polynomial is empty).
struct UPoly {
  std::vector<mpz_class> c;

  UPoly() = default;
  explicit UPoly(std::vector<mpz_class> coeffs);

  int degree() const { return static_cast<int>(c.size()) - 1; }
  bool is_zero() const { return c.empty(); }
  const mpz_class& lead() const { return c.back(); }
  mpz_class content() const;
  UPoly primitive() const;  // positive leading coefficient
  UPoly derivative() const;
  mpq_class evaluate(const mpq_class& x) const;
  std::string to_string(const std::string& var = "x") const;

  bool operator==(const UPoly&) const = default;
  friend UPoly operator*(const UPoly& a, const UPoly& b);
};

/// A polynomial that uses at most one variable, as a UPoly.
UPoly to_upoly(const MPoly& f);
MPoly to_mpoly(const UPoly& u, const std::string& var);

bool is_prime(std::int64_t n);

/// Irreducibility over F_p via distinct-degree (Rabin) testing. Polynomials
/// of degree <= 0 after reduction are not irreducible.
bool fp_irreducible(const UPoly& h, std::int64_t p);
/// Reference: trial division by every monic polynomial of degree
/// 1..deg/2 over F_p (root check for degree <= 3).
bool fp_irreducible_bruteforce(const UPoly& h, std::int64_t p);

/// Primitive gcd over Q[x] (positive leading coefficient).
UPoly gcd(const UPoly& a, const UPoly& b);
/// Exact quotient over Q, returned primitive; throws if b does not divide a.
UPoly divide_exact(const UPoly& a, const UPoly& b);
UPoly squarefree_part(const UPoly& u);

/// Number of distinct real roots in (lo, hi]; an absent bound is infinite.
int sturm_real_roots(const UPoly& u, const std::optional<mpq_class>& lo = std::nullopt,
                     const std::optional<mpq_class>& hi = std::nullopt);

/// Complete factorization into primitive Q-irreducible integer polynomials,
/// repeated by multiplicity, sorted by degree then coefficients. Throws
/// DomainError if deg u exceeds max_degree.
std::vector<UPoly> rational_factors(const UPoly& u, int max_degree = 12);

}  // namespace lineext
