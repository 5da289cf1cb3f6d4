#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <chrono>
#include <map>
#include <numeric>
#include <random>

#include "lineext/arrangement.hpp"
#include "lineext/catalog.hpp"
#include "lineext/error.hpp"
#include "lineext/extend.hpp"
#include "lineext/symmetry.hpp"

using namespace lineext;

namespace {

std::vector<std::uint32_t> point_masks(const Arrangement& a) {
  std::map<Label, std::uint32_t> m;
  for (std::size_t i = 0; i < a.line_count(); ++i) {
    for (const auto& p : a.line(i)) m[p] |= 1u << i;
  }
  std::vector<std::uint32_t> out;
  for (const auto& [p, mask] : m) out.push_back(mask);
  std::sort(out.begin(), out.end());
  return out;
}

std::uint32_t permute(std::uint32_t mask, const std::vector<int>& perm) {
  std::uint32_t out = 0;
  for (std::size_t i = 0; i < perm.size(); ++i) {
    if (mask >> i & 1u) out |= 1u << perm[i];
  }
  return out;
}

// Counts line bijections carrying the point set of a onto that of b (each
// point is identified with the set of lines through it). Stops after `limit`.
std::uint64_t bruteforce_isomorphisms(const Arrangement& a, const Arrangement& b, std::uint64_t limit) {
  if (a.line_count() != b.line_count()) return 0;
  const auto pa = point_masks(a);
  const auto pb = point_masks(b);
  if (pa.size() != pb.size()) return 0;
  std::vector<int> perm(a.line_count());
  std::iota(perm.begin(), perm.end(), 0);
  std::uint64_t found = 0;
  std::vector<std::uint32_t> img(pa.size());
  do {
    for (std::size_t i = 0; i < pa.size(); ++i) img[i] = permute(pa[i], perm);
    std::sort(img.begin(), img.end());
    if (img == pb && ++found >= limit) break;
  } while (std::next_permutation(perm.begin(), perm.end()));
  return found;
}

Arrangement relabel(const Arrangement& a, std::mt19937& rng) {
  std::vector<std::size_t> order(a.line_count());
  std::iota(order.begin(), order.end(), 0);
  std::shuffle(order.begin(), order.end(), rng);
  auto pts = a.points();
  auto shuffled = pts;
  std::shuffle(shuffled.begin(), shuffled.end(), rng);
  std::map<Label, Label> rename;
  for (std::size_t i = 0; i < pts.size(); ++i) rename[pts[i]] = "q" + shuffled[i];
  std::vector<std::vector<Label>> lines;
  for (std::size_t i : order) {
    std::vector<Label> l;
    for (const auto& p : a.line(i)) l.push_back(rename.at(p));
    std::shuffle(l.begin(), l.end(), rng);
    lines.push_back(l);
  }
  return Arrangement(lines);
}

// Map given by its point part; the line map is whatever the points force.
ArrangementMap from_point_map(const Arrangement& from, const Arrangement& to,
                              const std::map<Label, Label>& points) {
  ArrangementMap m;
  m.point_map = points;
  for (const auto& l : from.lines()) {
    std::vector<Label> img;
    for (const auto& p : l) img.push_back(points.at(p));
    std::sort(img.begin(), img.end());
    int target = -1;
    for (std::size_t j = 0; j < to.line_count(); ++j) {
      auto t = to.line(j);
      std::sort(t.begin(), t.end());
      if (t == img) target = static_cast<int>(j);
    }
    m.line_map.push_back(target);
  }
  return m;
}

std::vector<Arrangement> small_corpus() {
  std::vector<Arrangement> out{fano_entry().arrangement};
  for (const auto& e : nine3_catalog()) {
    for (std::size_t i = 0; i < 9; ++i) out.push_back(remove_line(e.arrangement, i));
  }
  for (const auto& e : ten3_catalog()) {
    out.push_back(remove_line(remove_line(e.arrangement, 9), 0));
    out.push_back(remove_line(remove_line(e.arrangement, 5), 2));
  }
  return out;
}

}  // namespace

TEST_CASE("automorphism orders of the (10_3) configurations") {
  const auto t0 = std::chrono::steady_clock::now();
  const std::uint64_t expected[] = {120, 12, 4, 24, 2, 6, 3, 3, 4, 10};
  const auto& cat = ten3_catalog();
  for (std::size_t j = 0; j < 10; ++j) {
    CAPTURE(cat[j].name);
    const PermGroup g = automorphism_group(cat[j].arrangement);
    CHECK(g.order == expected[j]);
    CHECK(g.elements.size() == g.order);
    for (const auto& m : g.generators) CHECK(verify_isomorphism(cat[j].arrangement, cat[j].arrangement, m));
    CHECK(generated_group(cat[j].arrangement, g.generators).order == g.order);
  }
  CHECK(automorphism_group(fano_entry().arrangement).order == 168);
  CHECK(automorphism_group(catalog_entry("(9_3)_1").arrangement).order == 108);
  const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  CHECK(secs < 10.0);
}

TEST_CASE("Aut((10_3)_1) has the element orders of S5") {
  const PermGroup g = automorphism_group(catalog_entry("(10_3)_1").arrangement);
  // S5: 10 transpositions and 15 double transpositions of order 2, 20
  // 3-cycles, 30 4-cycles, 24 5-cycles, 20 products of a 3-cycle and a
  // disjoint transposition.
  const std::map<int, std::uint64_t> s5{{1, 1}, {2, 25}, {3, 20}, {4, 30}, {5, 24}, {6, 20}};
  CHECK(g.element_order_histogram == s5);
  CHECK_FALSE(g.abelian);
}

TEST_CASE("Aut((10_3)_1.AEIKO) has order 20 with the element orders of F20") {
  const PermGroup g = automorphism_group(named_arrangement("(10_3)_1.AEIKO"));
  const std::map<int, std::uint64_t> f20{{1, 1}, {2, 5}, {4, 10}, {5, 4}};
  CHECK(g.order == 20);
  CHECK(g.element_order_histogram == f20);
}

TEST_CASE("automorphism counts agree with brute force on small arrangements") {
  for (const auto& a : small_corpus()) {
    if (a.line_count() > 8) continue;
    CHECK(automorphism_group(a).order == bruteforce_isomorphisms(a, a, ~0ull));
  }
}

TEST_CASE("find_isomorphism agrees with brute force on arrangements of at most 8 lines") {
  const auto corpus = small_corpus();
  int isomorphic = 0;
  for (std::size_t i = 0; i < corpus.size(); ++i) {
    for (std::size_t j = i; j < corpus.size(); ++j) {
      const auto& a = corpus[i];
      const auto& b = corpus[j];
      const auto w = find_isomorphism(a, b);
      const bool oracle = bruteforce_isomorphisms(a, b, 1) > 0;
      CHECK(w.has_value() == oracle);
      if (w) {
        ++isomorphic;
        CHECK(verify_isomorphism(a, b, *w));
      }
    }
  }
  CHECK(isomorphic > static_cast<int>(corpus.size()));  // some non-trivial pairs
}

TEST_CASE("reference map (10_3)_5.BDL -> (10_3)_5.BIK") {
  const Arrangement a = named_arrangement("(10_3)_5.BDL");
  const Arrangement b = named_arrangement("(10_3)_5.BIK");
  ArrangementMap m;
  m.point_map = {{"0", "8"}, {"1", "6"}, {"2", "I"}, {"3", "7"}, {"4", "B"}, {"5", "9"}, {"6", "3"},
                 {"7", "0"}, {"8", "K"}, {"9", "2"}, {"B", "1"}, {"D", "4"}, {"L", "5"}};
  m.line_map = {2, 7, 8, 4, 10, 9, 6, 0, 5, 3, 1};
  CHECK(verify_isomorphism(a, b, m));
  CHECK(from_point_map(a, b, m.point_map) == m);

  const auto w = find_isomorphism(a, b);
  REQUIRE(w);
  CHECK(verify_isomorphism(a, b, *w));
  CHECK(canonical_form(a) == canonical_form(b));
}

TEST_CASE("reference map (10_3)_1.AEM -> (10_3)_6.KLO") {
  const Arrangement a = named_arrangement("(10_3)_1.AEM");
  const Arrangement b = named_arrangement("(10_3)_6.KLO");
  const std::map<Label, Label> points{{"0", "2"}, {"1", "5"}, {"2", "O"}, {"3", "7"}, {"4", "K"},
                                      {"5", "3"}, {"6", "4"}, {"7", "1"}, {"8", "L"}, {"9", "6"},
                                      {"A", "9"}, {"E", "0"}, {"M", "8"}};
  // The printed line map sends two lines to L7; the point map determines
  // the correct one.
  const ArrangementMap m = from_point_map(a, b, points);
  CHECK(std::find(m.line_map.begin(), m.line_map.end(), -1) == m.line_map.end());
  CHECK(verify_isomorphism(a, b, m));
  const LinePerm printed = {7, 8, 1, 6, 10, 5, 6, 2, 4, 0, 3};
  int differing = 0;
  for (std::size_t i = 0; i < printed.size(); ++i) differing += printed[i] != m.line_map[i];
  CHECK(differing == 1);

  const auto w = find_isomorphism(a, b);
  REQUIRE(w);
  CHECK(verify_isomorphism(a, b, *w));
}

TEST_CASE("reference map (9_3)_1.CDI -> (9_3)_1.CFH") {
  const Arrangement a = named_arrangement("(9_3)_1.CDI");
  const Arrangement b = named_arrangement("(9_3)_1.CFH");
  const std::map<Label, Label> points{{"0", "4"}, {"1", "3"}, {"2", "1"}, {"3", "2"}, {"4", "6"}, {"5", "8"},
                                      {"6", "0"}, {"7", "5"}, {"8", "7"}, {"C", "C"}, {"D", "F"}, {"I", "H"}};
  CHECK(verify_isomorphism(a, b, from_point_map(a, b, points)));
  const auto w = find_isomorphism(a, b);
  REQUIRE(w);
  CHECK(verify_isomorphism(a, b, *w));
}

TEST_CASE("(9_3)_1.CDG, CDH and CFG are isomorphic") {
  const Arrangement cdg = named_arrangement("(9_3)_1.CDG");
  const Arrangement cdh = named_arrangement("(9_3)_1.CDH");
  const Arrangement cfg = named_arrangement("(9_3)_1.CFG");
  CHECK(canonical_form(cdg) == canonical_form(cdh));
  CHECK(canonical_form(cdh) == canonical_form(cfg));
  for (const auto* p : {&cdh, &cfg}) {
    const auto w = find_isomorphism(cdg, *p);
    REQUIRE(w);
    CHECK(verify_isomorphism(cdg, *p, *w));
  }
  CHECK(canonical_form(cdg) != canonical_form(named_arrangement("(9_3)_1.CDI")));
}

TEST_CASE("verify_isomorphism rejects broken maps") {
  const Arrangement a = catalog_entry("(10_3)_3").arrangement;
  const auto id = find_isomorphism(a, a);
  REQUIRE(id);
  ArrangementMap bad = *id;
  std::swap(bad.line_map[0], bad.line_map[1]);
  CHECK_FALSE(verify_isomorphism(a, a, bad));
  bad = *id;
  bad.line_map[0] = bad.line_map[1];
  CHECK_FALSE(verify_isomorphism(a, a, bad));
}

TEST_CASE("identity is a witness for (A, A)") {
  for (const auto& e : ten3_catalog()) {
    ArrangementMap id;
    for (const auto& p : e.arrangement.points()) id.point_map[p] = p;
    id.line_map.resize(e.arrangement.line_count());
    std::iota(id.line_map.begin(), id.line_map.end(), 0);
    CHECK(verify_isomorphism(e.arrangement, e.arrangement, id));
    CHECK(find_isomorphism(e.arrangement, e.arrangement).has_value());
  }
}

TEST_CASE("canonical form and group order are relabeling invariant") {
  std::mt19937 rng(2024);
  for (const auto& e : ten3_catalog()) {
    const auto c = canonical_form(e.arrangement);
    const auto order = automorphism_group(e.arrangement).order;
    for (int t = 0; t < 5; ++t) {
      const Arrangement r = relabel(e.arrangement, rng);
      CHECK(canonical_form(r) == c);
      CHECK(automorphism_group(r).order == order);
    }
  }
  const Arrangement ano = named_arrangement("(10_3)_5.ANO");
  CHECK(canonical_form(relabel(ano, rng)) == canonical_form(ano));
  CHECK(canonical_form(ano).hex() == canonical_form(relabel(ano, rng)).hex());
}

TEST_CASE("the ten (10_3) configurations are pairwise non-isomorphic") {
  const auto& cat = ten3_catalog();
  for (std::size_t i = 0; i < cat.size(); ++i) {
    for (std::size_t j = i + 1; j < cat.size(); ++j) {
      CHECK(canonical_form(cat[i].arrangement) != canonical_form(cat[j].arrangement));
      CHECK_FALSE(find_isomorphism(cat[i].arrangement, cat[j].arrangement));
    }
  }
}

TEST_CASE("orbit representatives") {
  const auto& e1 = catalog_entry("(10_3)_1");
  const PermGroup g1 = automorphism_group(e1.arrangement);
  const auto five = valid_extensions(e1.arrangement, 5);
  CHECK(orbit_representatives(g1, five).size() == 1);

  const auto& e4 = catalog_entry("(10_3)_4");
  const auto three = valid_extensions(e4.arrangement, 3);
  CHECK(orbit_representatives(automorphism_group(e4.arrangement), three).size() == 11);

  PermGroup trivial;
  trivial.elements = {LinePerm{0, 1, 2, 3, 4, 5, 6, 7, 8, 9}};
  CHECK(orbit_representatives(trivial, three) == three);

  // A proper subset of an orbit is not stable under the group.
  const std::vector<ExtensionLine> partial(five.begin(), five.begin() + 1);
  if (five.size() > 1) CHECK_THROWS_AS(orbit_representatives(g1, partial), DomainError);
}
