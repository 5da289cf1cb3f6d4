#pragma once

#include <gmpxx.h>

#include <string>
#include <vector>

#include "lineext/mpoly.hpp"
#include "lineext/upoly.hpp"

namespace lineext {

/// The field Q[t]/(q) for an irreducible q in Z[t]. Elements are coefficient
/// vectors of length deg q over Q (powers of t from 0 upward).
class NumberField {
 public:
  using Elem = std::vector<mpq_class>;
  /// K[x] polynomials, coefficients from degree 0 upward, no trailing zeros.
  using Poly = std::vector<Elem>;

  /// q must be irreducible of degree >= 1 (not checked).
  explicit NumberField(UPoly q);

  const UPoly& modulus() const { return q_; }
  int degree() const { return q_.degree(); }

  Elem zero() const { return Elem(static_cast<std::size_t>(degree()), 0); }
  Elem from(const mpq_class& c) const;
  /// The class of t.
  Elem generator() const;

  bool is_zero(const Elem& a) const;
  Elem add(const Elem& a, const Elem& b) const;
  Elem sub(const Elem& a, const Elem& b) const;
  Elem mul(const Elem& a, const Elem& b) const;
  /// Throws DomainError on zero.
  Elem inv(const Elem& a) const;

  /// f evaluated at the given point (one element per variable of f).
  Elem evaluate(const MPoly& f, const std::vector<Elem>& point) const;
  /// f as a polynomial in variable v with the other variables evaluated.
  Poly evaluate_in(const MPoly& f, std::size_t v, const std::vector<Elem>& point) const;

  /// Monic gcd in K[x].
  Poly gcd(Poly a, Poly b) const;
  /// Quotient of a by b in K[x] (remainder discarded).
  Poly quotient(Poly a, const Poly& b) const;
  Poly derivative(const Poly& a) const;
  /// a / gcd(a, a'), monic.
  Poly squarefree(const Poly& a) const;

  std::string to_string(const Elem& a, const std::string& t = "t") const;

 private:
  void trim(Poly& p) const;
  Poly rem(Poly a, const Poly& b) const;

  UPoly q_;
};

}  // namespace lineext
