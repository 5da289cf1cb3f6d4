// Randomized laws. Runs on its own: `test_properties` (doctest filters apply).
#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <random>

#include "lineext/arrangement.hpp"
#include "lineext/catalog.hpp"
#include "lineext/extend.hpp"
#include "lineext/mpoly.hpp"
#include "lineext/symmetry.hpp"
#include "lineext/upoly.hpp"

using namespace lineext;

namespace {

MPoly random_poly(std::mt19937& rng, const std::vector<std::string>& vars) {
  std::uniform_int_distribution<int> coef(-9, 9), exp(0, 3), terms(0, 5);
  MPoly f(vars);
  const int n = terms(rng);
  for (int t = 0; t < n; ++t) {
    Monomial e(vars.size());
    for (auto& x : e) x = exp(rng);
    f.add_term(e, coef(rng));
  }
  return f;
}

mpq_class random_point(std::mt19937& rng) {
  std::uniform_int_distribution<int> num(-20, 20), den(1, 7);
  mpq_class q(num(rng), den(rng));
  q.canonicalize();
  return q;
}

// Same arrangement with lines and points renamed and lines shuffled.
Arrangement relabel(const Arrangement& a, std::mt19937& rng) {
  std::vector<std::vector<Label>> lines;
  for (const auto& l : a.lines()) {
    std::vector<Label> renamed;
    for (const auto& p : l) renamed.push_back("q" + p);
    std::shuffle(renamed.begin(), renamed.end(), rng);
    lines.push_back(renamed);
  }
  std::shuffle(lines.begin(), lines.end(), rng);
  return Arrangement(lines);
}

}  // namespace

TEST_CASE("ring laws") {
  std::mt19937 rng(11);
  const std::vector<std::string> vars{"x", "y", "z"};
  for (int i = 0; i < 300; ++i) {
    const MPoly a = random_poly(rng, vars), b = random_poly(rng, vars), c = random_poly(rng, vars);
    CHECK(a + b == b + a);
    CHECK(a * b == b * a);
    CHECK((a + b) + c == a + (b + c));
    CHECK((a * b) * c == a * (b * c));
    CHECK(a * (b + c) == a * b + a * c);
    CHECK((a - a).is_zero());
    CHECK(a * MPoly::constant(vars, 1) == a);
    CHECK((a * MPoly(vars)).is_zero());
    if (!b.is_zero()) {
      const auto q = divide_exact(a * b, b);
      REQUIRE(q);
      CHECK(*q == a);
    }
    // Evaluation is a ring homomorphism.
    const std::vector<mpq_class> pt{random_point(rng), random_point(rng), random_point(rng)};
    CHECK((a * b + c).evaluate(pt) == a.evaluate(pt) * b.evaluate(pt) + c.evaluate(pt));
  }
}

TEST_CASE("canonical form agrees with find_isomorphism on the k=5 census") {
  std::mt19937 rng(5);
  const CensusReport r = enumerate_census(5, ten3_catalog());
  REQUIRE(r.members.size() == 23);
  std::vector<Arrangement> arrs;
  for (const auto& m : r.members) arrs.push_back(m.arrangement);
  // Relabeled copies give isomorphic pairs.
  const std::size_t n = arrs.size();
  for (std::size_t i = 0; i < n; ++i) arrs.push_back(relabel(arrs[i], rng));

  for (std::size_t i = 0; i < arrs.size(); ++i) {
    for (std::size_t j = i + 1; j < arrs.size(); ++j) {
      const bool same_form = canonical_form(arrs[i]) == canonical_form(arrs[j]);
      const auto iso = find_isomorphism(arrs[i], arrs[j]);
      CHECK(same_form == iso.has_value());
      CHECK(same_form == (i % n == j % n));
      if (iso) CHECK(verify_isomorphism(arrs[i], arrs[j], *iso));
    }
  }
}

TEST_CASE("Sturm counts match the constructed roots") {
  std::mt19937 rng(3);
  std::uniform_int_distribution<int> root(-30, 30), count(1, 6), extra(0, 2);
  for (int trial = 0; trial < 200; ++trial) {
    std::vector<int> roots;
    const int k = count(rng);
    for (int i = 0; i < k; ++i) roots.push_back(root(rng));
    UPoly u({1});
    for (int r : roots) u = u * UPoly({-r, 1});
    // Factors x^2 + c with c > 0 add no real roots.
    for (int i = extra(rng); i > 0; --i) u = u * UPoly({1 + i, 0, 1});
    std::sort(roots.begin(), roots.end());
    roots.erase(std::unique(roots.begin(), roots.end()), roots.end());
    CHECK(sturm_real_roots(u) == static_cast<int>(roots.size()));

    const int cut = root(rng);
    const auto below = std::count_if(roots.begin(), roots.end(), [&](int r) { return r <= cut; });
    CHECK(sturm_real_roots(u, std::nullopt, mpq_class(cut)) == below);
    CHECK(sturm_real_roots(u, mpq_class(cut), std::nullopt) == static_cast<int>(roots.size()) - below);
  }
}

TEST_CASE("extension then deletion gives back the configuration") {
  for (const auto& e : ten3_catalog()) {
    for (int k = 3; k <= 5; ++k) {
      for (const auto& l : ol_ext(k, e.arrangement)) {
        const Arrangement ext = add_line(e.arrangement, l);
        CHECK(remove_line(ext, ext.line_count() - 1) == e.arrangement);
      }
    }
  }
}
