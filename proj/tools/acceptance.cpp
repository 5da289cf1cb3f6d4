// Acceptance report: one PASS/FAIL line per criterion, tolerances inline.
// Exit status is the number of failing lines.
#include <algorithm>
#include <chrono>
#include <cstdlib>
#include <fstream>
#include <functional>
#include <iostream>
#include <map>
#include <numeric>
#include <random>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "lineext/arrangement.hpp"
#include "lineext/catalog.hpp"
#include "lineext/error.hpp"
#include "lineext/extend.hpp"
#include "lineext/irreducible.hpp"
#include "lineext/moduli.hpp"
#include "lineext/mpoly.hpp"
#include "lineext/polytope.hpp"
#include "lineext/symmetry.hpp"

using namespace lineext;

namespace {

struct Outcome {
  bool pass = true;
  std::vector<std::string> notes;

  void expect(bool ok, const std::string& what) {
    if (!ok) {
      pass = false;
      notes.push_back("FAILED " + what);
    }
  }
};

template <typename T>
std::string join(const std::vector<T>& v) {
  std::ostringstream out;
  for (std::size_t i = 0; i < v.size(); ++i) out << (i ? "," : "") << v[i];
  return out.str();
}

// Incidence check that does not go through the library: every line of `a`
// must land on a line of `b` with the same point set under the point map.
bool incidence_preserved(const Arrangement& a, const Arrangement& b, const ArrangementMap& m) {
  if (a.line_count() != b.line_count() || m.line_map.size() != a.line_count()) return false;
  std::set<int> targets(m.line_map.begin(), m.line_map.end());
  if (targets.size() != a.line_count() || *targets.begin() < 0) return false;
  std::set<Label> images;
  for (const auto& [p, q] : m.point_map) images.insert(q);
  if (images.size() != m.point_map.size() || m.point_map.size() != a.point_count()) return false;
  for (std::size_t i = 0; i < a.line_count(); ++i) {
    std::set<Label> img;
    for (const auto& p : a.line(i)) {
      const auto it = m.point_map.find(p);
      if (it == m.point_map.end()) return false;
      img.insert(it->second);
    }
    const auto& target = b.line(static_cast<std::size_t>(m.line_map[i]));
    if (img != std::set<Label>(target.begin(), target.end())) return false;
  }
  return true;
}

// Per line, the sorted multiplicities of its points; sorted over lines.
// Equal for isomorphic arrangements, so unequal values settle a pair.
std::vector<std::vector<int>> line_profile(const Arrangement& a) {
  std::vector<std::vector<int>> out;
  for (const auto& l : a.lines()) {
    std::vector<int> mult;
    for (const auto& p : l) mult.push_back(static_cast<int>(a.multiplicity(p)));
    std::sort(mult.begin(), mult.end());
    out.push_back(mult);
  }
  std::sort(out.begin(), out.end());
  return out;
}

// Line bijections carrying point masks of a onto those of b.
bool bruteforce_isomorphic(const Arrangement& a, const Arrangement& b) {
  if (a.line_count() != b.line_count()) return false;
  if (line_profile(a) != line_profile(b)) return false;
  const auto masks = [](const Arrangement& x) {
    std::map<Label, std::uint32_t> m;
    for (std::size_t i = 0; i < x.line_count(); ++i) {
      for (const auto& p : x.line(i)) m[p] |= 1u << i;
    }
    std::vector<std::uint32_t> out;
    for (const auto& [p, mask] : m) out.push_back(mask);
    std::sort(out.begin(), out.end());
    return out;
  };
  const auto pa = masks(a), pb = masks(b);
  if (pa.size() != pb.size()) return false;
  std::vector<int> perm(a.line_count());
  std::iota(perm.begin(), perm.end(), 0);
  std::vector<std::uint32_t> img(pa.size());
  do {
    for (std::size_t i = 0; i < pa.size(); ++i) {
      std::uint32_t out = 0;
      for (std::size_t j = 0; j < perm.size(); ++j) {
        if (pa[i] >> j & 1u) out |= 1u << perm[j];
      }
      img[i] = out;
    }
    std::sort(img.begin(), img.end());
    if (img == pb) return true;
  } while (std::next_permutation(perm.begin(), perm.end()));
  return false;
}

ArrangementMap from_point_map(const Arrangement& from, const Arrangement& to, const std::map<Label, Label>& points) {
  ArrangementMap m;
  m.point_map = points;
  for (const auto& l : from.lines()) {
    std::set<Label> img;
    for (const auto& p : l) img.insert(points.at(p));
    int target = -1;
    for (std::size_t j = 0; j < to.line_count(); ++j) {
      if (std::set<Label>(to.line(j).begin(), to.line(j).end()) == img) target = static_cast<int>(j);
    }
    m.line_map.push_back(target);
  }
  return m;
}

Classification classify_default(const Arrangement& a) { return classify(reduce(build(a, auto_plan(a)))); }

// ---- criteria ----------------------------------------------------------------

Outcome automorphism_orders() {
  Outcome o;
  const std::vector<std::uint64_t> want{120, 12, 4, 24, 2, 6, 3, 3, 4, 10};
  std::vector<std::uint64_t> got;
  for (const auto& e : ten3_catalog()) got.push_back(automorphism_group(e.arrangement).order);
  o.expect(got == want, "(10_3) orders");
  const auto fano = automorphism_group(fano_entry().arrangement).order;
  const auto nine = automorphism_group(catalog_entry("(9_3)_1").arrangement).order;
  o.expect(fano == 168, "Fano 168");
  o.expect(nine == 108, "(9_3)_1 108");
  o.notes.push_back("orders " + join(got) + "; Fano " + std::to_string(fano) + "; (9_3)_1 " + std::to_string(nine));
  return o;
}

Outcome census3() {
  Outcome o;
  const CensusReport r = enumerate_census(3, ten3_catalog());
  o.expect(r.per_config_counts == std::vector<int>{4, 17, 42, 11, 76, 30, 50, 50, 39, 17}, "per-config counts");
  o.expect(r.subtotal == 336, "subtotal 336");
  o.expect(r.cross_identifications == 15, "15 cross identifications");
  o.expect(r.total == 321, "total 321");
  o.notes.push_back("counts " + join(r.per_config_counts) + "; subtotal " + std::to_string(r.subtotal) + "; cross " +
                    std::to_string(r.cross_identifications) + "; total " + std::to_string(r.total));
  return o;
}

Outcome census45() {
  Outcome o;
  const CensusReport r4 = enumerate_census(4, ten3_catalog());
  o.expect(r4.subtotal == 188, "k=4 subtotal 188");
  o.expect(r4.total == 151, "k=4 total 151");
  o.expect(r4.cross_identifications == 37, "k=4 37 identifications");
  const CensusReport r5 = enumerate_census(5, ten3_catalog());
  o.expect(r5.per_config_counts == std::vector<int>{1, 1, 2, 1, 5, 2, 2, 3, 3, 3}, "k=5 per-config counts");
  o.expect(r5.total == 23, "k=5 total 23");
  o.expect(r5.identification_count() == 0, "k=5 no identifications");
  o.notes.push_back("k=4 " + std::to_string(r4.subtotal) + "/" + std::to_string(r4.total) + " (" +
                    std::to_string(r4.cross_identifications) + " identified); k=5 " + join(r5.per_config_counts) +
                    " total " + std::to_string(r5.total));
  return o;
}

Outcome nine3() {
  Outcome o;
  const CensusReport r = nine3_census();
  int first = 0;
  for (const auto& m : r.members) first += m.config == 0;
  o.expect(first == 2, "(9_3)_1 contributes 2 classes");
  o.expect(r.total == 11, "grand total 11");
  const auto witness = [&](const char* x, const char* y) {
    const Arrangement a = named_arrangement(x), b = named_arrangement(y);
    const auto w = find_isomorphism(a, b);
    o.expect(w && incidence_preserved(a, b, *w), std::string(x) + " ~ " + y);
  };
  witness("(9_3)_1.CDI", "(9_3)_1.CFH");
  witness("(9_3)_1.CDG", "(9_3)_1.CDH");
  witness("(9_3)_1.CDG", "(9_3)_1.CFG");
  o.notes.push_back("(9_3)_1 classes " + std::to_string(first) + "; total " + std::to_string(r.total));
  return o;
}

Outcome isomorphism_witnesses() {
  Outcome o;
  {
    const Arrangement a = named_arrangement("(10_3)_5.BDL"), b = named_arrangement("(10_3)_5.BIK");
    ArrangementMap m;
    m.point_map = {{"0", "8"}, {"1", "6"}, {"2", "I"}, {"3", "7"}, {"4", "B"}, {"5", "9"}, {"6", "3"},
                   {"7", "0"}, {"8", "K"}, {"9", "2"}, {"B", "1"}, {"D", "4"}, {"L", "5"}};
    m.line_map = {2, 7, 8, 4, 10, 9, 6, 0, 5, 3, 1};
    o.expect(incidence_preserved(a, b, m), "reference BDL -> BIK");
    const auto w = find_isomorphism(a, b);
    o.expect(w && incidence_preserved(a, b, *w), "computed BDL -> BIK");
  }
  {
    // The printed line map repeats L7; the point map fixes it.
    const Arrangement a = named_arrangement("(10_3)_1.AEM"), b = named_arrangement("(10_3)_6.KLO");
    const std::map<Label, Label> points{{"0", "2"}, {"1", "5"}, {"2", "O"}, {"3", "7"}, {"4", "K"},
                                        {"5", "3"}, {"6", "4"}, {"7", "1"}, {"8", "L"}, {"9", "6"},
                                        {"A", "9"}, {"E", "0"}, {"M", "8"}};
    o.expect(incidence_preserved(a, b, from_point_map(a, b, points)), "reference AEM -> KLO");
    const auto w = find_isomorphism(a, b);
    o.expect(w && incidence_preserved(a, b, *w), "computed AEM -> KLO");
  }
  {
    const Arrangement a = named_arrangement("(9_3)_1.CDI"), b = named_arrangement("(9_3)_1.CFH");
    const std::map<Label, Label> points{{"0", "4"}, {"1", "3"}, {"2", "1"}, {"3", "2"}, {"4", "6"}, {"5", "8"},
                                        {"6", "0"}, {"7", "5"}, {"8", "7"}, {"C", "C"}, {"D", "F"}, {"I", "H"}};
    o.expect(incidence_preserved(a, b, from_point_map(a, b, points)), "reference CDI -> CFH");
    const auto w = find_isomorphism(a, b);
    o.expect(w && incidence_preserved(a, b, *w), "computed CDI -> CFH");
  }

  // Every arrangement of at most 8 lines reachable from the catalog by deletions.
  std::vector<Arrangement> corpus{fano_entry().arrangement};
  for (const auto& e : nine3_catalog()) {
    for (std::size_t i = 0; i < 9; ++i) corpus.push_back(remove_line(e.arrangement, i));
  }
  for (const auto& e : ten3_catalog()) {
    for (std::size_t i = 0; i < 10; ++i) {
      for (std::size_t j = i + 1; j < 10; ++j) corpus.push_back(remove_line(remove_line(e.arrangement, j), i));
    }
  }
  int pairs = 0, disagreements = 0, isomorphic = 0;
  for (std::size_t i = 0; i < corpus.size(); ++i) {
    for (std::size_t j = i; j < corpus.size(); ++j) {
      const auto w = find_isomorphism(corpus[i], corpus[j]);
      if (w) {
        ++isomorphic;
        if (!incidence_preserved(corpus[i], corpus[j], *w)) ++disagreements;
      }
      if (w.has_value() != bruteforce_isomorphic(corpus[i], corpus[j])) ++disagreements;
      ++pairs;
    }
  }
  o.expect(disagreements == 0, "brute-force oracle");
  o.notes.push_back(std::to_string(corpus.size()) + " arrangements, " + std::to_string(pairs) + " pairs (" +
                    std::to_string(isomorphic) + " isomorphic), " + std::to_string(disagreements) +
                    " disagreements");
  return o;
}

MPoly random_factor(std::mt19937& rng, const std::vector<std::string>& vars) {
  std::uniform_int_distribution<int> coef(-5, 5), deg(1, 2), e(0, 2);
  for (;;) {
    const int d = deg(rng);
    MPoly f(vars);
    for (int t = 0; t < 4; ++t) {
      const int i = std::min(e(rng), d);
      const int j = std::min(e(rng), d - i);
      f.add_term({i, j}, coef(rng));
    }
    if (!f.is_zero() && !f.is_constant()) return f;
  }
}

Outcome polynomials() {
  Outcome o;
  const std::vector<std::string> vars{"a", "b"};
  const MPoly ano =
      parse_mpoly("a^4*b^2 + a^4*b - 3*a^3*b^2 - 3*a^3*b + a^2*b^2 + 2*a^2*b - 2*a*b - a + 1", vars);
  const auto verts = newton_polytope(ano).vertices;
  o.expect(verts == std::vector<LatticePoint>{{0, 0}, {1, 0}, {2, 2}, {4, 1}, {4, 2}}, "ANO Newton vertices");

  const MPoly special = ano.substitute({{"a", -1}});
  o.expect(associated(special, parse_mpoly("5*b^2 + 8*b + 2", {"b"})), "a = -1 gives 5b^2 + 8b + 2");
  o.expect(z_irreducible_by_specialization(ano, "b", {{"a", -1}}, 7) == SpecializationResult::Certified,
           "certified mod 7");
  o.expect(absolutely_irreducible(ano).status == IrreducibilityStatus::Certified, "ANO constraint Certified");

  std::mt19937 rng(2024);
  int certified_products = 0;
  for (int i = 0; i < 1000; ++i) {
    const MPoly f = random_factor(rng, vars) * random_factor(rng, vars);
    certified_products += absolutely_irreducible(f).certified();
  }
  o.expect(certified_products == 0, "no product certified");

  int ostrowski = 0;
  for (int i = 0; i < 1000; ++i) {
    const MPoly f = random_factor(rng, vars), g = random_factor(rng, vars);
    ostrowski += newton_polytope(f * g) == minkowski_sum(newton_polytope(f), newton_polytope(g));
  }
  o.expect(ostrowski == 1000, "Ostrowski on 1000 pairs");
  o.notes.push_back("products certified " + std::to_string(certified_products) + "/1000; Ostrowski " +
                    std::to_string(ostrowski) + "/1000");
  return o;
}

Outcome moduli_examples(const std::string& data_dir) {
  Outcome o;
  const auto report = [&](const std::string& name, const Classification& c) {
    o.notes.push_back(name + " " + to_string(c));
  };
  const Classification fano = classify_default(fano_entry().arrangement);
  o.expect(fano.verdict == Verdict::Empty, "Fano Empty");
  const Classification c4 = classify_default(catalog_entry("(10_3)_4").arrangement);
  o.expect(c4.verdict == Verdict::Empty, "(10_3)_4 Empty");

  const Arrangement ano_arr = named_arrangement("(10_3)_5.ANO");
  const Classification ano = classify_default(ano_arr);
  report("ANO", ano);
  o.expect(ano.verdict == Verdict::Irreducible && ano.dim == 1, "ANO Irreducible dim 1");

  const Classification ado = classify_default(named_arrangement("(10_3)_7.ADO"));
  report("ADO", ado);
  o.expect(ado.verdict == Verdict::Reducible && ado.components_over_c == 2 && ado.components_mod_conjugation == 2 &&
               ado.dim == 1,
           "ADO Reducible(2, 2, dim 1)");

  const Classification aeiko = classify_default(named_arrangement("(10_3)_1.AEIKO"));
  report("AEIKO", aeiko);
  o.expect(aeiko.verdict == Verdict::FinitePoints && aeiko.count_over_c == 2 && aeiko.count_mod_conjugation == 2,
           "AEIKO FinitePoints(2, 2)");

  std::ifstream in(data_dir + "/ano_reference.plan");
  std::stringstream text;
  text << in.rdbuf();
  const ModuliPresentation m = reduce(build(ano_arr, parse_plan(text.str())));
  const MPoly expected =
      parse_mpoly("a^4*b^2 + a^4*b - 3*a^3*b^2 - 3*a^3*b + a^2*b^2 + 2*a^2*b - 2*a*b - a + 1", m.params);
  o.expect(m.reduced.size() == 1 && associated(m.reduced[0], expected), "reference-plan ANO polynomial");
  return o;
}

Outcome sampled_table(const std::string& data_dir) {
  Outcome o;
  std::ifstream in(data_dir + "/reducible_table.txt");
  std::vector<std::string> names, want;
  std::string line;
  while (std::getline(in, line)) {
    if (line.empty() || line[0] == '#') continue;
    std::istringstream ss(line);
    std::string n, a, b;
    ss >> n >> a >> b;
    const auto dot = n.find('.');
    names.push_back("(10_3)_" + n.substr(0, dot) + n.substr(dot));
    want.push_back(a + " " + b);
  }
  const auto results = classify_batch(names);
  int reproduced = 0, unknown = 0, contradicted = 0;
  std::map<std::string, std::string> outcome;
  for (std::size_t i = 0; i < names.size(); ++i) {
    const auto& c = results[i].classification;
    std::string got = "unknown";
    if (c && c->verdict != Verdict::Unknown) {
      if (c->verdict == Verdict::FinitePoints) {
        got = std::to_string(c->count_over_c) + " " + std::to_string(c->count_mod_conjugation);
      } else if (c->dim > 0) {
        got = "inf inf";
      } else {
        got = to_string(*c);
      }
      if (c->witness && !c->witness->valid) got += " (invalid witness)";
    }
    if (got == "unknown") {
      ++unknown;
    } else if (got == want[i]) {
      ++reproduced;
    } else {
      ++contradicted;
      o.notes.push_back(names[i] + " expected " + want[i] + " got " + got);
    }
    outcome[names[i]] = got == want[i] ? "ok" : got;
  }
  const int rows = static_cast<int>(names.size());
  o.expect(rows >= 10, "at least 10 rows");
  o.expect(10 * reproduced >= 6 * rows, "at least 6 of 10 reproduced");
  o.expect(contradicted == 0, "none contradicted");
  for (const char* n : {"(10_3)_3.BDIL", "(10_3)_5.AFLO", "(10_3)_8.AEIM", "(10_3)_7.AEIM"}) {
    o.expect(outcome.count(n) && outcome[n] == "ok", std::string(n) + " reproduced");
  }
  o.notes.push_back(std::to_string(reproduced) + "/" + std::to_string(rows) + " reproduced, " +
                    std::to_string(unknown) + " unknown, " + std::to_string(contradicted) + " contradicted");
  return o;
}

Outcome property_suite(const std::string& exe) {
  Outcome o;
  const std::string cmd = "\"" + exe + "\" --minimal > /dev/null 2>&1";
  const int rc = std::system(cmd.c_str());
  o.expect(rc == 0, "standalone property suite exit status 0");
  o.notes.push_back(exe + " exit " + std::to_string(rc));
  return o;
}

}  // namespace

int main(int argc, char** argv) {
  std::string data_dir = LINEEXT_DATA_DIR;
  std::string properties = LINEEXT_PROPERTY_SUITE;
  for (int i = 1; i + 1 < argc; ++i) {
    const std::string flag = argv[i];
    if (flag == "--data") data_dir = argv[++i];
    if (flag == "--properties") properties = argv[++i];
  }

  struct Criterion {
    std::string name;
    double limit_s;  // 0: no runtime bound
    std::function<Outcome()> run;
  };
  const std::vector<Criterion> criteria{
      {"automorphism orders", 10, automorphism_orders},
      {"census k=3", 300, census3},
      {"census k=4 and k=5", 0, census45},
      {"(9_3) census", 0, nine3},
      {"isomorphism witnesses", 0, isomorphism_witnesses},
      {"polynomial suite", 30, polynomials},
      {"moduli worked examples", 0, [&] { return moduli_examples(data_dir); }},
      {"sampled classification table", 0, [&] { return sampled_table(data_dir); }},
      {"property suites", 120, [&] { return property_suite(properties); }},
  };

  int failed = 0;
  for (const auto& c : criteria) {
    const auto t0 = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = c.run();
    } catch (const std::exception& e) {
      o.expect(false, std::string("exception: ") + e.what());
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    if (c.limit_s > 0) o.expect(secs < c.limit_s, "runtime < " + std::to_string(static_cast<int>(c.limit_s)) + " s");
    failed += !o.pass;
    std::ostringstream time;
    time.precision(2);
    time << std::fixed << secs;
    std::cout << (o.pass ? "PASS " : "FAIL ") << c.name << " [" << time.str() << " s"
              << (c.limit_s > 0 ? ", limit " + std::to_string(static_cast<int>(c.limit_s)) + " s" : "") << "]\n";
    for (const auto& n : o.notes) std::cout << "     " << n << "\n";
  }
  return failed;
}
