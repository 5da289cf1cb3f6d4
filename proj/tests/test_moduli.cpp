#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <fstream>
#include <map>
#include <random>
#include <set>
#include <sstream>

#include "lineext/catalog.hpp"
#include "lineext/error.hpp"
#include "lineext/extend.hpp"
#include "lineext/moduli.hpp"
#include "lineext/symmetry.hpp"

using namespace lineext;

namespace {

const char* kANO = "a^4*b^2 + a^4*b - 3*a^3*b^2 - 3*a^3*b + a^2*b^2 + 2*a^2*b - 2*a*b - a + 1";

std::string read_file(const std::string& path) {
  std::ifstream in(path);
  REQUIRE(in.good());
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

Classification classify_named(const std::string& name, TriplePoints policy = TriplePoints::AllowForced) {
  const Arrangement a = named_arrangement(name);
  ClassifyOptions opt;
  opt.triple_points = policy;
  return classify(reduce(build(a, auto_plan(a)), policy == TriplePoints::Forbid), opt);
}

MPoly dot(const Coords& p, const Coords& l) { return p[0] * l[0] + p[1] * l[1] + p[2] * l[2]; }

struct TableRow {
  std::string name;
  std::string counts;  // "|M| |M^C|"
  std::vector<std::string> partners;
};

std::string full_name(const std::string& short_name) {
  const auto dot_at = short_name.find('.');
  return "(10_3)_" + short_name.substr(0, dot_at) + short_name.substr(dot_at);
}

std::vector<TableRow> reducible_table() {
  std::istringstream in(read_file(LINEEXT_DATA_DIR "/reducible_table.txt"));
  std::vector<TableRow> rows;
  std::string line;
  while (std::getline(in, line)) {
    if (line.empty() || line[0] == '#') continue;
    std::istringstream ss(line);
    TableRow r;
    std::string n, a, b, p;
    ss >> n >> a >> b;
    r.name = full_name(n);
    r.counts = a + " " + b;
    while (ss >> p) r.partners.push_back(full_name(p));
    rows.push_back(std::move(r));
  }
  return rows;
}

}  // namespace

TEST_CASE("Fano plane and (10_3)_4 have no real realization") {
  const Arrangement fano({{"1", "2", "3"}, {"1", "4", "5"}, {"1", "6", "7"}, {"2", "4", "6"},
                          {"2", "5", "7"}, {"3", "4", "7"}, {"3", "5", "6"}});
  CHECK(classify(reduce(build(fano, auto_plan(fano)))).verdict == Verdict::Empty);
  const Arrangement c4 = catalog_entry("(10_3)_4").arrangement;
  CHECK(classify(reduce(build(c4, auto_plan(c4)))).verdict == Verdict::Empty);
}

TEST_CASE("(10_3)_5.ANO: irreducible curve, auto and reference plans agree") {
  const Arrangement ano = named_arrangement("(10_3)_5.ANO");
  const Classification c = classify(reduce(build(ano, auto_plan(ano))));
  CHECK(c.verdict == Verdict::Irreducible);
  CHECK(c.dim == 1);
  REQUIRE(c.witness);
  CHECK(c.witness->valid);

  const ConstructionPlan reference = parse_plan(read_file(LINEEXT_DATA_DIR "/ano_reference.plan"));
  const ModuliPresentation m = reduce(build(ano, reference));
  CHECK(m.params == std::vector<std::string>{"a", "b"});
  REQUIRE(m.reduced.size() == 1);
  CHECK(associated(m.reduced[0], parse_mpoly(kANO, m.params)));
  const Classification cp = classify(m);
  CHECK(cp.verdict == Verdict::Irreducible);
  CHECK(cp.dim == 1);
}

TEST_CASE("(10_3)_7.ADO: two conjugate curves") {
  const Classification c = classify_named("(10_3)_7.ADO");
  CHECK(c.verdict == Verdict::Reducible);
  CHECK(c.components_over_c == 2);
  CHECK(c.components_mod_conjugation == 2);
  CHECK(c.dim == 1);
  REQUIRE(c.witness);
  CHECK(c.witness->valid);
}

TEST_CASE("(10_3)_1.AEIKO is one-dimensional with two components") {
  const Classification c = classify_named("(10_3)_1.AEIKO");
  CHECK(c.verdict == Verdict::Reducible);
  CHECK(c.components_over_c == 2);
  CHECK(c.dim == 1);
  REQUIRE(c.witness);
  CHECK(c.witness->valid);
}

TEST_CASE("auto_plan parameter counts") {
  // Three lines in general position: a two-dimensional space.
  const Arrangement triangle({{}, {}, {}});
  const ModuliPresentation t = reduce(build(triangle, auto_plan(triangle)));
  CHECK(t.params.size() == 2);
  CHECK(t.constraints.empty());
  const Classification ct = classify(t);
  CHECK(ct.verdict == Verdict::Irreducible);
  CHECK(ct.dim == 2);

  const ModuliPresentation m1 = build(catalog_entry("(10_3)_1").arrangement, auto_plan(catalog_entry("(10_3)_1").arrangement));
  CHECK(m1.params.size() == 3);
  CHECK(m1.constraints.empty());
}

TEST_CASE("verdicts do not depend on labels") {
  std::mt19937 rng(7);
  for (const char* n : {"(10_3)_5.ANO", "(10_3)_7.ADO", "(10_3)_3.BDIL", "(10_3)_8.AEIM"}) {
    CAPTURE(n);
    const Arrangement a = named_arrangement(n);
    const Classification base = classify(reduce(build(a, auto_plan(a))));
    for (int trial = 0; trial < 2; ++trial) {
      std::vector<std::vector<Label>> lines(a.lines().begin(), a.lines().end());
      std::shuffle(lines.begin(), lines.end(), rng);
      const Arrangement b(lines);
      const Classification c = classify(reduce(build(b, auto_plan(b))));
      CHECK(c.verdict == base.verdict);
      CHECK(c.dim == base.dim);
      CHECK(c.counts() == base.counts());
    }
  }
}

TEST_CASE("reduce strips nondegeneracy factors") {
  const std::vector<std::string> vars{"a", "c"};
  ModuliPresentation m;
  m.params = vars;
  m.constraints = {parse_mpoly("c*(4*c^2 - 2*a*c - a^2)", vars)};
  m.nondegeneracy = {parse_mpoly("c", vars)};
  const ModuliPresentation r = reduce(m);
  REQUIRE(r.reduced.size() == 1);
  CHECK(associated(r.reduced[0], parse_mpoly("4*c^2 - 2*a*c - a^2", vars)));

  // A constraint that is itself a nondegeneracy factor empties the space.
  ModuliPresentation e = m;
  e.constraints = {parse_mpoly("c^2", vars)};
  CHECK(classify(e).verdict == Verdict::Empty);
}

TEST_CASE("constructed coordinates satisfy the incidences symbolically") {
  for (const char* n : {"(10_3)_5.ANO", "(10_3)_7.ADO", "(10_3)_2.AENO"}) {
    CAPTURE(n);
    const Arrangement a = named_arrangement(n);
    const ModuliPresentation m = build(a, auto_plan(a));
    std::map<std::string, Coords> points, lines;
    for (const auto& e : m.elements) (e.kind == ElementKind::Point ? points : lines)[e.name] = e.coords;
    REQUIRE(lines.size() == a.line_count());
    REQUIRE(points.size() == a.point_count());
    for (std::size_t i = 0; i < a.line_count(); ++i) {
      const Coords& l = lines.at(a.names()[i]);
      for (const auto& [p, coords] : points) {
        const MPoly d = dot(coords, l);
        const auto& members = a.line(i);
        if (std::find(members.begin(), members.end(), p) != members.end()) {
          bool explained = d.is_zero();
          for (const auto& f : m.constraints) explained = explained || divide_exact(d, f).has_value();
          CHECK(explained);
        } else {
          CHECK_FALSE(d.is_zero());
        }
      }
    }
  }
}

TEST_CASE("conjugation_count") {
  CHECK(conjugation_count({ComponentOrbit{"Q(sqrt(5))", 2, 2, false, ""}}) == 2);
  CHECK(conjugation_count({ComponentOrbit{"Q(i)", 2, 0, false, ""}}) == 1);
  CHECK(conjugation_count({ComponentOrbit{"Q", 1, 1, false, ""}, ComponentOrbit{"Q", 1, 1, false, ""}}) == 2);
  CHECK(conjugation_count({ComponentOrbit{"Q", 1, 1, false, ""}, ComponentOrbit{"Q", 1, 1, false, ""}}, {{0, 1}}) ==
        1);
  CHECK(conjugation_count({ComponentOrbit{"Q(sqrt(-3))", 2, 0, true, ""}}) == 1);
  CHECK(conjugation_count({ComponentOrbit{"K", 4, 2, false, ""}}) == 3);
  CHECK_THROWS_AS(conjugation_count({ComponentOrbit{"Q", 1, 2, false, ""}}), DomainError);
  CHECK_THROWS_AS(conjugation_count({ComponentOrbit{"K", 3, 0, false, ""}}), DomainError);
}

TEST_CASE("conjugation counts stay within bounds") {
  for (const auto& r : reducible_table()) {
    if (r.counts == "inf inf") continue;
    std::istringstream ss(r.counts);
    int c = 0, mc = 0;
    ss >> c >> mc;
    CHECK(mc <= c);
    CHECK(2 * mc >= c);
  }
}

TEST_CASE("NumberField arithmetic in Q(sqrt 5)") {
  const NumberField k(UPoly({-5, 0, 1}));
  const auto t = k.generator();
  CHECK(k.mul(t, t) == k.from(5));
  const auto one = k.from(1);
  const auto u = k.add(one, t);
  CHECK(k.mul(u, k.inv(u)) == one);
  // The golden ratio satisfies x^2 = x + 1.
  const auto phi = k.mul(u, k.from(mpq_class(1, 2)));
  CHECK(k.mul(phi, phi) == k.add(phi, one));
  CHECK_THROWS_AS(k.inv(k.zero()), DomainError);

  const MPoly f = parse_mpoly("x^2 - x - 1", {"x"});
  CHECK(k.is_zero(k.evaluate(f, {phi})));
}

TEST_CASE("triple point policies") {
  struct Case {
    const char* name;
    std::string counts;
  };
  for (const Case& c : {Case{"(10_3)_5.DKMN", "2 2"}, Case{"(10_3)_7.AEIO", "2 2"}}) {
    CAPTURE(c.name);
    CHECK(classify_named(c.name, TriplePoints::Forbid).verdict == Verdict::Empty);
    const Classification af = classify_named(c.name);
    REQUIRE(af.counts());
    CHECK(std::to_string(af.counts()->first) + " " + std::to_string(af.counts()->second) == c.counts);
    CHECK_FALSE(af.allowed_triple_points.empty());
    REQUIRE(af.witness);
    CHECK(af.witness->valid);
  }
  CHECK(classify_named("(10_3)_5.DKMN").allowed_triple_points == std::vector<std::string>{"L1, L8, L10"});
  CHECK(classify_named("(10_3)_7.AEIO").allowed_triple_points == std::vector<std::string>{"L1, L6, L7"});
  // Allowing every triple point admits a second one that the forced policy rejects.
  CHECK(classify_named("(10_3)_7.AEIO", TriplePoints::Allow).allowed_triple_points.size() == 2);

  CHECK(classify_named("(10_3)_1.AEIK", TriplePoints::Forbid).verdict == Verdict::Empty);
  const Classification aeik = classify_named("(10_3)_1.AEIK");
  CHECK(aeik.verdict == Verdict::Reducible);
  CHECK(aeik.dim == 1);

  // A triple point on one component only must not be allowed.
  CHECK(classify_named("(10_3)_10.BDH").verdict == Verdict::Irreducible);
  CHECK(classify_named("(10_3)_10.BDH", TriplePoints::Allow).verdict == Verdict::Reducible);

  CHECK(parse_triple_points("allow-forced") == TriplePoints::AllowForced);
  CHECK(to_string(TriplePoints::Forbid) == "forbid");
  CHECK_THROWS_AS(parse_triple_points("sometimes"), DomainError);
}

TEST_CASE("reducible moduli table") {
  const auto rows = reducible_table();
  REQUIRE(rows.size() == 74);
  std::vector<std::string> names;
  for (const auto& r : rows) names.push_back(r.name);
  const auto results = classify_batch(names);
  REQUIRE(results.size() == rows.size());
  int matched = 0;
  for (std::size_t i = 0; i < rows.size(); ++i) {
    CAPTURE(rows[i].name);
    REQUIRE(results[i].classification);
    const Classification& c = *results[i].classification;
    REQUIRE(c.witness);
    CHECK(c.witness->valid);
    if (rows[i].counts == "inf inf") {
      CHECK(c.verdict == Verdict::Reducible);
      CHECK(c.dim == 1);
      continue;
    }
    REQUIRE(c.counts());
    const std::string got = std::to_string(c.counts()->first) + " " + std::to_string(c.counts()->second);
    CHECK(got == rows[i].counts);
    matched += got == rows[i].counts;
  }
  CHECK(matched == 73);
}

TEST_CASE("isomorphic partners in the table are isomorphic") {
  int pairs = 0;
  for (const auto& r : reducible_table()) {
    for (const auto& p : r.partners) {
      CAPTURE(r.name);
      CAPTURE(p);
      CHECK(find_isomorphism(named_arrangement(r.name), named_arrangement(p)).has_value());
      ++pairs;
    }
  }
  CHECK(pairs > 0);
}

TEST_CASE("classify_batch: serial and parallel agree") {
  std::vector<std::string> names;
  for (const auto& m : enumerate_census(5, ten3_catalog()).members) names.push_back(m.name);
  const auto s = classify_batch(names, {}, Exec::Serial);
  const auto p = classify_batch(names, {}, Exec::Parallel);
  REQUIRE(s.size() == p.size());
  for (std::size_t i = 0; i < s.size(); ++i) {
    CHECK(s[i].name == p[i].name);
    REQUIRE(s[i].classification);
    REQUIRE(p[i].classification);
    CHECK(to_json(*s[i].classification) == to_json(*p[i].classification));
  }
}

TEST_CASE("census classification k=5") {
  const CensusReport census = enumerate_census(5, ten3_catalog());
  const CensusClassification t = classify_census(census, ten3_catalog());
  const auto row = [&](TallyRow r) { return t.per_config[static_cast<std::size_t>(r)]; };
  CHECK(row(TallyRow::Irreducible) == std::vector<int>{0, 0, 0, 0, 0, 0, 0, 0, 0, 1});
  CHECK(row(TallyRow::Empty) == std::vector<int>{0, 1, 2, 1, 5, 2, 2, 3, 3, 2});
  CHECK(row(TallyRow::Unknown) == std::vector<int>(10, 0));
  CHECK(t.total[static_cast<std::size_t>(TallyRow::Irreducible)] +
            t.total[static_cast<std::size_t>(TallyRow::Empty)] +
            t.total[static_cast<std::size_t>(TallyRow::ReducibleIrreducibleModConjugation)] +
            t.total[static_cast<std::size_t>(TallyRow::ReducibleModConjugation)] ==
        census.total);
  CHECK(tally_table(census, t).find("unknown") != std::string::npos);
}

TEST_CASE("plan DSL and build errors") {
  const ConstructionPlan p = parse_plan("basis P1 [1:0:0]\n# comment\nmeet X = L1 ^ L2\nfree P5 2\n");
  REQUIRE(p.steps.size() == 3);
  CHECK(p.steps[0].kind == StepKind::Basis);
  CHECK(p.steps[1].operands == std::vector<std::string>{"L1", "L2"});
  CHECK(p.steps[2].params == 2);
  CHECK(parse_plan(to_text(p)).steps.size() == 3);

  CHECK_THROWS_AS(parse_plan("teleport P1"), DomainError);
  CHECK_THROWS_AS(parse_plan("meet X = L1"), DomainError);

  const Arrangement ano = named_arrangement("(10_3)_5.ANO");
  CHECK_THROWS_AS(build(ano, parse_plan("meet A = L1 ^ L4\n")), DomainError);  // unplaced operands
  CHECK_THROWS_AS(build(ano, parse_plan("basis Q [1:0:0]\n")), DomainError);   // unknown name
  CHECK_THROWS_AS(build(ano, ConstructionPlan{}), DomainError);               // nothing placed
}
