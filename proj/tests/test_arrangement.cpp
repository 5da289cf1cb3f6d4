#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <set>
#include <sstream>

#include "lineext/arrangement.hpp"
#include "lineext/catalog.hpp"
#include "lineext/error.hpp"
#include "lineext/symmetry.hpp"

using namespace lineext;

namespace {

const char* kFano = R"(
L1 L2 L3 L4 L5 L6 L7
P1 P1 P1 P2 P2 P3 P3
P2 P4 P6 P4 P5 P4 P5
P3 P5 P7 P6 P7 P7 P6
)";

// Empty cells are written as "-".
const char* kANO = R"(
L1 L2 L3 L4 L5 L6 L7 L8 L9 L10 L11
1  1  1  8  2  3  2  4  3  5   A
2  4  6  9  4  7  5  6  6  7   N
3  5  7  0  8  8  9  9  0  0   O
A  -  -  A  -  -  N  O  N  O   -
)";

const char* kADO = R"(
L1 L2 L3 L4 L5 L6 L7 L8 L9 L10 L11
1  1  1  2  4  6  5  3  7  2   A
2  4  6  8  8  9  7  5  3  4   D
3  5  7  9  0  0  8  9  0  6   O
A  D  -  D  A  -  -  -  O  O   -
)";

// Double point labels of the ten (10_3) configurations, one row per label,
// one "i-j" line pair per configuration.
const char* kLabels[] = {
    "A 1-4 1-4 1-4 1-4 1-4 1-4 1-5 1-5 1-5 1-6",
    "B 1-9 1-9 1-9 1-9 1-8 1-8 1-6 1-6 1-6 1-7",
    "C 1-10 1-10 1-10 1-10 1-10 1-10 1-7 1-8 1-7 1-8",
    "D 2-4 2-4 2-4 2-4 2-4 2-4 2-4 2-4 2-4 2-4",
    "E 2-7 2-6 2-6 2-6 2-6 2-6 2-6 2-6 2-6 2-5",
    "F 2-8 2-7 2-7 2-8 2-9 2-7 2-9 2-7 2-9 2-6",
    "G 3-4 3-4 3-4 3-4 3-4 3-4 3-4 3-4 3-4 3-4",
    "H 3-5 3-5 3-5 3-5 3-5 3-5 3-5 3-5 3-5 3-5",
    "I 3-6 3-8 3-8 3-7 3-7 3-9 3-8 3-9 3-8 3-9",
    "J 5-8 5-8 5-8 5-8 5-9 5-8 4-9 4-10 4-10 4-10",
    "K 5-10 5-10 5-10 5-10 5-10 5-9 5-8 5-10 5-8 5-8",
    "L 6-7 6-7 6-7 6-7 6-7 6-7 6-7 6-10 6-7 6-10",
    "M 6-9 6-9 6-10 6-10 6-8 6-10 7-10 7-8 7-10 7-9",
    "N 7-10 7-10 7-9 7-9 7-9 7-9 8-10 7-9 8-9 7-10",
    "O 8-9 8-9 8-9 8-9 8-10 8-10 9-10 8-9 9-10 8-9",
};

std::set<std::set<Label>> line_sets(const Arrangement& a) {
  std::set<std::set<Label>> out;
  for (const auto& l : a.lines()) out.emplace(l.begin(), l.end());
  return out;
}

// Brute force over all pairs of lines.
std::vector<DoublePoint> doubles_bruteforce(const Arrangement& a) {
  std::vector<DoublePoint> out;
  for (std::size_t i = 0; i < a.line_count(); ++i) {
    for (std::size_t j = i + 1; j < a.line_count(); ++j) {
      bool common = false;
      for (const auto& p : a.line(i)) {
        const auto& l = a.line(j);
        common = common || std::find(l.begin(), l.end(), p) != l.end();
      }
      if (!common) out.emplace_back(static_cast<int>(i), static_cast<int>(j));
    }
  }
  return out;
}

}  // namespace

TEST_CASE("parse_table reads the Fano table") {
  const Arrangement fano = parse_table(kFano);
  CHECK(fano.line_count() == 7);
  for (const auto& l : fano.lines()) CHECK(l.size() == 3);
  CHECK(fano.point_count() == 7);
  CHECK(is_n3_configuration(fano));
  CHECK(doubles(fano).empty());
  CHECK(doubles_bruteforce(fano).empty());
}

TEST_CASE("parse_table: single column and errors") {
  const Arrangement one = parse_table("L1\nP1\nP2\nP3\n");
  REQUIRE(one.line_count() == 1);
  CHECK(one.line(0) == std::vector<Label>{"P1", "P2", "P3"});
  CHECK_THROWS_AS(one.validate(), DomainError);

  CHECK_THROWS_AS(parse_table(""), DomainError);
  CHECK_THROWS_AS(parse_table("L1 L2\n1 1\n1 2\n"), DomainError);       // repeated point in a column
  CHECK_THROWS_AS(parse_table("L1 L2\n1 1\n2 2\n3 4\n"), DomainError);  // two shared points
}

TEST_CASE("emit_table and parse_table round-trip") {
  for (const auto& e : ten3_catalog()) {
    const std::string text = emit_table(e.arrangement);
    const Arrangement back = parse_table(text);
    CHECK(back == e.arrangement);
    CHECK(emit_table(back) == text);
  }
  const Arrangement ano = parse_table(kANO);
  CHECK(parse_table(emit_table(ano)) == ano);
  CHECK(arrangement_from_json(to_json(ano)) == ano);
}

TEST_CASE("(10_3)_5.ANO table") {
  const Arrangement ano = parse_table(kANO);
  CHECK(ano.line_count() == 11);
  CHECK(ano.line(10) == std::vector<Label>{"A", "N", "O"});
  CHECK_FALSE(is_n3_configuration(ano));
  CHECK(ano.point_count() == 13);
  CHECK_FALSE(is_reductive(ano));

  // The extension built from the catalog has the same lines.
  CHECK(line_sets(named_arrangement("(10_3)_5.ANO")) == line_sets(ano));
}

TEST_CASE("(10_3)_7.ADO table") {
  CHECK(line_sets(named_arrangement("(10_3)_7.ADO")) == line_sets(parse_table(kADO)));
}

TEST_CASE("doubles of the (10_3) configurations match the label table") {
  const auto& cat = ten3_catalog();
  REQUIRE(cat.size() == 10);
  for (std::size_t j = 0; j < 10; ++j) {
    const auto& e = cat[j];
    CAPTURE(e.name);
    CHECK(is_n3_configuration(e.arrangement));
    CHECK_FALSE(is_reductive(e.arrangement));
    const auto ds = doubles(e.arrangement);
    CHECK(ds.size() == 15);
    CHECK(ds == doubles_bruteforce(e.arrangement));
    CHECK(std::is_sorted(ds.begin(), ds.end()));

    std::set<DoublePoint> from_table;
    for (const char* row : kLabels) {
      std::istringstream in(row);
      std::string label, cell;
      in >> label;
      for (std::size_t c = 0; c <= j; ++c) in >> cell;
      const auto dash = cell.find('-');
      const DoublePoint d(std::stoi(cell.substr(0, dash)) - 1, std::stoi(cell.substr(dash + 1)) - 1);
      CHECK(e.double_of(label) == d);
      CHECK(e.label_of(d) == label);
      from_table.insert(d);
    }
    CHECK(from_table == std::set<DoublePoint>(ds.begin(), ds.end()));
  }
}

TEST_CASE("doubles: small arrangement with a disjoint pair") {
  // Lines 0 and 1 share no point; every other pair meets once.
  const Arrangement a({{"1", "2", "3"}, {"4", "5", "6"}, {"1", "4", "7"}, {"2", "5", "7"}});
  const auto ds = doubles(a);
  CHECK(std::find(ds.begin(), ds.end(), DoublePoint(0, 1)) != ds.end());
  CHECK(ds == doubles_bruteforce(a));
}

TEST_CASE("add_line and remove_line") {
  const auto& e5 = catalog_entry("(10_3)_5");
  const ExtensionLine ano = extension_from_letters(e5, "ANO");
  CHECK(valid_extension(e5.arrangement, ano));
  const Arrangement ext = add_line(e5.arrangement, ano, e5.labels_in_doubles_order());
  CHECK(ext.line_count() == 11);

  // Incidences among the old lines are unchanged; consumed doubles now meet
  // in their new points.
  for (std::size_t i = 0; i < 10; ++i) {
    for (std::size_t j = i + 1; j < 10; ++j) {
      const auto before = e5.arrangement.meet(i, j);
      const auto after = ext.meet(i, j);
      if (before) {
        CHECK(after == before);
      } else {
        const DoublePoint d(static_cast<int>(i), static_cast<int>(j));
        const bool consumed = std::find(ano.begin(), ano.end(), d) != ano.end();
        CHECK(after.has_value() == consumed);
        if (after) CHECK(*after == e5.label_of(d));
      }
    }
  }
  // Deletion undoes the extension exactly, labels included.
  CHECK(remove_line(ext, 10) == e5.arrangement);
  CHECK(find_isomorphism(remove_line(ext, 10), e5.arrangement).has_value());

  CHECK_THROWS_AS(remove_line(ext, 11), DomainError);
  // A and J share L1.
  CHECK_THROWS_AS(add_line(e5.arrangement, make_extension_line({e5.double_of("A"), e5.double_of("B")})),
                  DomainError);
}

TEST_CASE("adding an empty line gives a reductive arrangement") {
  const auto& e = catalog_entry("(10_3)_1");
  const Arrangement a = add_line(e.arrangement, {});
  CHECK(a.line_count() == 11);
  CHECK(a.line(10).empty());
  CHECK(is_reductive(a));
  CHECK(remove_line(a, 10) == e.arrangement);
}

TEST_CASE("remove_line drops points left on two lines") {
  const Arrangement a = catalog_entry("(10_3)_1").arrangement;
  const auto removed = a.line(0);
  const Arrangement b = remove_line(a, 0);
  CHECK(b.line_count() == 9);
  for (const auto& p : removed) {
    for (const auto& l : b.lines()) CHECK(std::find(l.begin(), l.end(), p) == l.end());
  }
  CHECK(b.point_count() == 7);

  // Points of multiplicity 4 survive the deletion with multiplicity 3.
  const Arrangement q({{"X", "1", "2"}, {"X", "3", "4"}, {"X", "5", "6"}, {"X", "7", "8"}});
  const Arrangement r = remove_line(q, 0);
  CHECK(r.multiplicity("X") == 3);
}

TEST_CASE("make_extension_line rejects repeats") {
  CHECK_THROWS_AS(make_extension_line({DoublePoint(0, 3), DoublePoint(0, 3)}), DomainError);
  const auto l = make_extension_line({DoublePoint(5, 6), DoublePoint(0, 3)});
  CHECK(l.front() == DoublePoint(0, 3));
}

TEST_CASE("six doubles never fit on a new line of a 10-line configuration") {
  for (const auto& e : ten3_catalog()) {
    const auto ds = doubles(e.arrangement);
    // Six pairwise line-disjoint doubles would need 12 distinct lines.
    std::vector<int> pick(ds.size(), 0);
    std::fill(pick.end() - 6, pick.end(), 1);
    do {
      ExtensionLine l;
      for (std::size_t i = 0; i < ds.size(); ++i) {
        if (pick[i]) l.push_back(ds[i]);
      }
      CHECK_FALSE(valid_extension(e.arrangement, l));
    } while (std::next_permutation(pick.begin(), pick.end()));
  }
}
