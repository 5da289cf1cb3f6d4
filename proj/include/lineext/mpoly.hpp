#pragma once

#include <gmpxx.h>

#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

namespace lineext {

using Monomial = std::vector<int>;

/// Sparse multivariate polynomial with arbitrary-precision integer
/// coefficients over a fixed list of variable names. Zero coefficients are
/// never stored. Terms are keyed by exponent vector in lexicographic order
/// (variable 0 most significant), so terms().rbegin() is the lex-leading term.
class MPoly {
 public:
  using Terms = std::map<Monomial, mpz_class>;

  MPoly() = default;
  explicit MPoly(std::vector<std::string> vars) : vars_(std::move(vars)) {}

  static MPoly constant(std::vector<std::string> vars, const mpz_class& c);
  static MPoly variable(std::vector<std::string> vars, std::size_t i);
  static MPoly monomial(std::vector<std::string> vars, Monomial e, const mpz_class& c);

  const std::vector<std::string>& vars() const { return vars_; }
  std::size_t arity() const { return vars_.size(); }
  const Terms& terms() const { return terms_; }
  std::size_t term_count() const { return terms_.size(); }

  bool is_zero() const { return terms_.empty(); }
  bool is_constant() const;
  /// The constant term (0 if absent).
  mpz_class constant_term() const;

  int total_degree() const;  // -1 for zero
  int degree(std::size_t v) const;  // -1 for zero
  bool uses(std::size_t v) const { return degree(v) > 0; }
  /// Index of a variable name; throws DomainError if absent.
  std::size_t index_of(std::string_view name) const;

  void add_term(const Monomial& e, const mpz_class& c);

  MPoly operator-() const;
  MPoly& operator+=(const MPoly& o);
  MPoly& operator-=(const MPoly& o);
  MPoly& operator*=(const MPoly& o);
  MPoly& operator*=(const mpz_class& c);
  friend MPoly operator+(MPoly a, const MPoly& b) { return a += b; }
  friend MPoly operator-(MPoly a, const MPoly& b) { return a -= b; }
  friend MPoly operator*(const MPoly& a, const MPoly& b);
  friend MPoly operator*(MPoly a, const mpz_class& c) { return a *= c; }
  bool operator==(const MPoly& o) const { return vars_ == o.vars_ && terms_ == o.terms_; }

  MPoly pow(unsigned e) const;

  /// gcd of the integer coefficients (positive; 0 for the zero polynomial).
  mpz_class content() const;
  /// Divided by its integer content, with positive leading coefficient.
  MPoly primitive() const;
  /// Sign-normalized so the graded-lex leading coefficient is positive.
  MPoly normalized() const;
  /// Graded-lex leading term.
  std::pair<Monomial, mpz_class> leading_term() const;

  /// Coefficients of v^0, v^1, ..., v^deg as polynomials over the same
  /// variables (with exponent of v equal to 0).
  std::vector<MPoly> coefficients_in(std::size_t v) const;
  /// Inverse of coefficients_in().
  static MPoly from_coefficients(const std::vector<MPoly>& cs, std::size_t v);

  MPoly derivative(std::size_t v) const;
  /// Replaces variable v by a polynomial over the same variables.
  MPoly substitute(std::size_t v, const MPoly& value) const;
  MPoly evaluate(std::size_t v, const mpz_class& value) const;
  /// Evaluates the named variables; they are removed from the result's
  /// variable list.
  MPoly substitute(const std::map<std::string, mpz_class>& assignment) const;
  mpq_class evaluate(const std::vector<mpq_class>& point) const;

  /// The same polynomial over another variable list. Variables are matched
  /// by name; a used variable missing from `vars` is an error.
  MPoly with_vars(const std::vector<std::string>& vars) const;
  /// Keeps only the variables that occur.
  MPoly drop_unused_vars() const;

  std::string to_string() const;

 private:
  void check_same_ring(const MPoly& o) const;

  std::vector<std::string> vars_;
  Terms terms_;
};

/// Reads "a^4*b^2 + a^4*b - 3*a^3*b^2 - ..." (also accepts implicit
/// products by juxtaposition with '*', parentheses, and integer powers of
/// parenthesized expressions). When `vars` is empty the variables are the
/// identifiers in order of first appearance.
MPoly parse_mpoly(std::string_view text, std::vector<std::string> vars = {});

/// {"vars": [...], "terms": [[[e...], "coef"], ...]} in graded-lex order.
nlohmann::json to_json(const MPoly& f);
MPoly mpoly_from_json(const nlohmann::json& j);

/// Exact quotient f/g if g divides f in Z[vars].
std::optional<MPoly> divide_exact(const MPoly& f, const MPoly& g);

/// Normalized greatest common divisor (positive graded-lex leading coefficient).
MPoly gcd(const MPoly& f, const MPoly& g);

/// gcd of the coefficients of f viewed as a polynomial in v.
MPoly content_in(const MPoly& f, std::size_t v);

/// Pseudo-remainder of f by g with respect to v.
MPoly pseudo_remainder(const MPoly& f, const MPoly& g, std::size_t v);

/// Resultant with respect to v (Sylvester determinant, fraction-free).
MPoly resultant(const MPoly& f, const MPoly& g, std::size_t v);

/// Product of the distinct irreducible factors (up to integer content).
MPoly squarefree_part(const MPoly& f);

/// True iff f = c * g for a nonzero rational c.
bool associated(const MPoly& f, const MPoly& g);

}  // namespace lineext
