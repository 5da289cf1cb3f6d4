#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <chrono>
#include <random>

#include "lineext/error.hpp"
#include "lineext/irreducible.hpp"
#include "lineext/mpoly.hpp"
#include "lineext/polytope.hpp"
#include "lineext/upoly.hpp"

using namespace lineext;

namespace {

const char* kANO = "a^4*b^2 + a^4*b - 3*a^3*b^2 - 3*a^3*b + a^2*b^2 + 2*a^2*b - 2*a*b - a + 1";

MPoly random_poly(std::mt19937& rng, const std::vector<std::string>& vars, int max_deg, int terms) {
  std::uniform_int_distribution<int> coef(-5, 5);
  std::uniform_int_distribution<int> exp(0, max_deg);
  MPoly f(vars);
  for (int t = 0; t < terms; ++t) {
    Monomial e(vars.size());
    int total = 0;
    for (auto& x : e) {
      x = std::min(exp(rng), max_deg - total);
      total += x;
    }
    f.add_term(e, coef(rng));
  }
  return f;
}

MPoly nonconstant(std::mt19937& rng, const std::vector<std::string>& vars, int max_deg) {
  for (;;) {
    MPoly f = random_poly(rng, vars, max_deg, 4);
    if (!f.is_zero() && !f.is_constant()) return f;
  }
}

UPoly upoly(std::vector<long> c) {
  std::vector<mpz_class> z;
  for (long x : c) z.emplace_back(x);
  return UPoly(z);
}

}  // namespace

TEST_CASE("parse and print") {
  const MPoly f = parse_mpoly(kANO);
  CHECK(f.to_string() == kANO);
  CHECK(parse_mpoly(f.to_string(), f.vars()) == f);
  CHECK(mpoly_from_json(to_json(f)) == f);
  CHECK(parse_mpoly("(x+y)*(x-y)", {"x", "y"}) == parse_mpoly("x^2 - y^2", {"x", "y"}));
  CHECK(parse_mpoly("(a+1)^3", {"a"}) == parse_mpoly("a^3 + 3*a^2 + 3*a + 1", {"a"}));
  CHECK_THROWS_AS(parse_mpoly("a +* b"), DomainError);
}

TEST_CASE("substitution") {
  const MPoly f = parse_mpoly(kANO);
  const MPoly g = f.substitute({{"a", mpz_class(-1)}});
  CHECK(g == parse_mpoly("5*b^2 + 8*b + 2", {"b"}));
  CHECK(f * MPoly::constant(f.vars(), 1) == f);
  const MPoly x = MPoly::variable({"x", "y"}, 0);
  const MPoly y = MPoly::variable({"x", "y"}, 1);
  CHECK(f.substitute(0, MPoly::variable(f.vars(), 0)) == f);
  CHECK(((x + y) * (x - y)).substitute(1, x) == MPoly({"x", "y"}));
  CHECK_THROWS_AS(x + parse_mpoly("z"), DomainError);
}

TEST_CASE("ring laws on random polynomials") {
  std::mt19937 rng(1);
  const std::vector<std::string> vars{"a", "b", "c"};
  for (int t = 0; t < 200; ++t) {
    const MPoly f = random_poly(rng, vars, 6, 6);
    const MPoly g = random_poly(rng, vars, 6, 6);
    const MPoly h = random_poly(rng, vars, 6, 6);
    CHECK((f + g) + h == f + (g + h));
    CHECK(f + g == g + f);
    CHECK((f * g) * h == f * (g * h));
    CHECK(f * g == g * f);
    CHECK(f * (g + h) == f * g + f * h);
    CHECK((f - f).is_zero());
    if (!g.is_zero()) {
      const auto q = divide_exact(f * g, g);
      REQUIRE(q);
      CHECK(*q == f);
    }
  }
}

TEST_CASE("gcd, resultant and squarefree part") {
  const std::vector<std::string> v{"a", "b"};
  const MPoly p = parse_mpoly("a^2 - a - 1", v);
  const MPoly q = parse_mpoly("a*b + 1", v);
  const MPoly r = parse_mpoly("b^2 + 3", v);
  CHECK(associated(gcd(p * q, q * r), q));
  CHECK(associated(squarefree_part(p * p * q), p * q));
  // Res_b(ab + 1, b^2 + 3) = 3a^2 + 1 up to sign.
  CHECK(associated(resultant(q, r, 1), parse_mpoly("3*a^2 + 1", v)));
  CHECK(associated(content_in(p * q, 1), p));
}

TEST_CASE("Newton polytope of the ANO polynomial") {
  const NewtonPolytope P = newton_polytope(parse_mpoly(kANO));
  const std::vector<LatticePoint> expected{{0, 0}, {1, 0}, {2, 2}, {4, 1}, {4, 2}};
  CHECK(P.vertices == expected);
  CHECK(gao_coprime_test(parse_mpoly(kANO)));
}

TEST_CASE("Newton polytope examples") {
  CHECK(newton_polytope(parse_mpoly("a^2*b^3")).vertices == std::vector<LatticePoint>{{2, 3}});
  CHECK(newton_polytope(parse_mpoly("x + y + 1")).vertices == std::vector<LatticePoint>{{0, 0}, {0, 1}, {1, 0}});
  // Interior and edge points are not vertices.
  CHECK(newton_polytope(parse_mpoly("1 + x + x^2 + y^2 + x^2*y^2 + x*y", {"x", "y"})).vertices ==
        std::vector<LatticePoint>{{0, 0}, {0, 2}, {2, 0}, {2, 2}});
  CHECK(newton_polytope(parse_mpoly("1 + x + y + z + x*y*z")).vertices.size() == 5);
  CHECK_THROWS_AS(newton_polytope(MPoly({"x"})), DomainError);
  CHECK_THROWS_AS(newton_polytope(parse_mpoly("w + x + y + z")), DomainError);
  CHECK_FALSE(gao_coprime_test(parse_mpoly("x^2*y^2")));
  CHECK(gao_coprime_test(parse_mpoly("x + 1")));
}

TEST_CASE("Minkowski sums") {
  const std::vector<std::string> v{"x", "y"};
  const auto px = newton_polytope(parse_mpoly("x", v));
  const auto py = newton_polytope(parse_mpoly("y", v));
  CHECK(minkowski_sum(px, py).vertices == std::vector<LatticePoint>{{1, 1}});
  const auto f = newton_polytope(parse_mpoly("x + 1", v));
  const auto g = newton_polytope(parse_mpoly("y + 1", v));
  CHECK(minkowski_sum(f, g).vertices == std::vector<LatticePoint>{{0, 0}, {0, 1}, {1, 0}, {1, 1}});
  const auto origin = newton_polytope(parse_mpoly("1 + 0*x", v));
  const auto ano = newton_polytope(parse_mpoly(kANO));
  CHECK(minkowski_sum(ano, origin) == ano);
  CHECK_THROWS_AS(minkowski_sum(ano, newton_polytope(parse_mpoly("x + y + z"))), DomainError);
}

TEST_CASE("Ostrowski: P(fg) = P(f) + P(g) on 1000 random pairs") {
  std::mt19937 rng(7);
  int checked = 0;
  for (int t = 0; t < 1000; ++t) {
    const std::vector<std::string> vars = t % 3 == 0 ? std::vector<std::string>{"a", "b", "c"}
                                                      : std::vector<std::string>{"a", "b"};
    const MPoly f = nonconstant(rng, vars, 4);
    const MPoly g = nonconstant(rng, vars, 4);
    CHECK(newton_polytope(f * g) == minkowski_sum(newton_polytope(f), newton_polytope(g)));
    ++checked;
  }
  CHECK(checked == 1000);
}

TEST_CASE("fp_irreducible") {
  CHECK(fp_irreducible(upoly({2, 8, 5}), 7));  // no roots mod 7
  CHECK_FALSE(fp_irreducible(upoly({0, 0, 1}), 7));
  CHECK_FALSE(fp_irreducible(upoly({1, 0, 1}), 5));  // roots 2 and 3
  CHECK(fp_irreducible(upoly({1, 0, 1}), 3));
  // x^4 + 1 has no roots mod 3 but splits into two quadratics.
  CHECK_FALSE(fp_irreducible(upoly({1, 0, 0, 0, 1}), 3));
  CHECK_THROWS_AS(fp_irreducible(upoly({1, 1}), 9), DomainError);
}

TEST_CASE("fp_irreducible agrees with trial division") {
  std::mt19937 rng(3);
  for (std::int64_t p : {2, 3, 5, 7}) {
    for (int t = 0; t < 300; ++t) {
      std::uniform_int_distribution<int> deg(1, 6);
      std::uniform_int_distribution<long> c(0, p - 1);
      std::vector<long> coeffs(static_cast<std::size_t>(deg(rng)) + 1);
      for (auto& x : coeffs) x = c(rng);
      coeffs.back() = 1;
      const UPoly h = upoly(coeffs);
      CHECK(fp_irreducible(h, p) == fp_irreducible_bruteforce(h, p));
    }
  }
}

TEST_CASE("specialization certificate") {
  const MPoly f = parse_mpoly(kANO);
  CHECK(z_irreducible_by_specialization(f, "b", {{"a", mpz_class(-1)}}, 7) == SpecializationResult::Certified);
  const MPoly g = parse_mpoly("(a+b)*(a-b)");
  for (long x = -3; x <= 3; ++x) {
    for (std::int64_t p : {3, 5, 7, 11}) {
      CHECK(z_irreducible_by_specialization(g, "a", {{"b", mpz_class(x)}}, p) == SpecializationResult::Unknown);
    }
  }
  // a*b^2 + b + 1 loses its leading coefficient at a = 0.
  CHECK(z_irreducible_by_specialization(parse_mpoly("a*b^2 + b + 1"), "b", {{"a", mpz_class(0)}}, 7) ==
        SpecializationResult::Unknown);
  // The content a is invisible after fixing a; the certificate must not fire.
  CHECK(z_irreducible_by_specialization(parse_mpoly("a*b^2 + a"), "b", {{"a", mpz_class(1)}}, 3) ==
        SpecializationResult::Unknown);
}

TEST_CASE("absolutely_irreducible examples") {
  const auto ano = absolutely_irreducible(parse_mpoly(kANO));
  CHECK(ano.status == IrreducibilityStatus::Certified);
  CHECK(absolutely_irreducible(parse_mpoly("x + y")).status == IrreducibilityStatus::Certified);
  // Splits over Q(sqrt 5).
  CHECK_FALSE(absolutely_irreducible(parse_mpoly("a^2 - 5*b^2")).certified());
  // Irreducible over Q, not over Q(i).
  CHECK_FALSE(absolutely_irreducible(parse_mpoly("a^2 + b^2")).certified());
  CHECK_FALSE(absolutely_irreducible(parse_mpoly("a^4 + b^4 + 2*a^2*b^2 + 1 - 1")).certified());
  CHECK_FALSE(absolutely_irreducible(parse_mpoly("7")).certified());
}

TEST_CASE("affine shifts decide polytopes with a common factor") {
  // Both hulls have vertex coordinates sharing a factor before shifting.
  const MPoly bdk = parse_mpoly(
      "a^4 - 3*a^3*b + 4*a^2*b^2 - 3*a*b^3 + b^4 - 3*a^3 + 5*a^2*b - 5*a*b^2 + 2*b^3 + 2*a^2 - 2*a*b + b^2");
  CHECK_FALSE(gao_coprime_test(bdk));
  const auto c = absolutely_irreducible(bdk);
  CHECK(c.certified());
  CHECK_FALSE(c.change.empty());
}

TEST_CASE("soundness: never Certified on 1000 random products") {
  const auto t0 = std::chrono::steady_clock::now();
  std::mt19937 rng(11);
  const std::vector<std::string> vars{"a", "b"};
  int certified = 0;
  for (int t = 0; t < 1000; ++t) {
    const MPoly f = nonconstant(rng, vars, 2);
    const MPoly g = nonconstant(rng, vars, 2);
    const MPoly h = f * g;
    if (h.total_degree() > 4) continue;
    certified += absolutely_irreducible(h).certified();
  }
  CHECK(certified == 0);
  CHECK(std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count() < 30.0);
}

TEST_CASE("sturm_real_roots") {
  const UPoly q = upoly({-1, -2, 4});  // 4c^2 - 2c - 1
  CHECK(sturm_real_roots(q) == 2);
  CHECK(sturm_real_roots(upoly({1, 0, 1})) == 0);
  const UPoly cc = upoly({0, -1, 1});  // c(c - 1)
  CHECK(sturm_real_roots(cc) == 2);
  CHECK(sturm_real_roots(cc, mpq_class(0), mpq_class(1)) == 1);
  CHECK(sturm_real_roots(upoly({0, 0, 1})) == 1);  // squarefree part taken
  CHECK_THROWS_AS(sturm_real_roots(UPoly()), DomainError);
}

TEST_CASE("rational_factors") {
  auto product = [](const std::vector<UPoly>& fs) {
    UPoly p = upoly({1});
    for (const auto& f : fs) p = p * f;
    return p;
  };
  CHECK(rational_factors(upoly({-1, 0, 1})) == std::vector<UPoly>{upoly({-1, 1}), upoly({1, 1})});
  CHECK(rational_factors(upoly({2, 8, 5})).size() == 1);
  const auto f = rational_factors(upoly({0, 0, -5, 0, 1}));
  CHECK(f == std::vector<UPoly>{upoly({0, 1}), upoly({0, 1}), upoly({-5, 0, 1})});
  // (x^2 + x + 1)(x^3 - 2)(2x - 3), no rational root in the quadratic or cubic.
  const UPoly u = upoly({1, 1, 1}) * upoly({-2, 0, 0, 1}) * upoly({-3, 2});
  const auto g = rational_factors(u);
  CHECK(g.size() == 3);
  CHECK(product(g) == u);
  CHECK_THROWS_AS(rational_factors(upoly(std::vector<long>(14, 1))), DomainError);
}
