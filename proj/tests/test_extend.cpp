#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <chrono>
#include <numeric>
#include <set>

#include "lineext/arrangement.hpp"
#include "lineext/catalog.hpp"
#include "lineext/error.hpp"
#include "lineext/extend.hpp"
#include "lineext/symmetry.hpp"

using namespace lineext;

namespace {

const CensusReport& census(int k) {
  static const CensusReport r3 = enumerate_census(3, ten3_catalog());
  static const CensusReport r4 = enumerate_census(4, ten3_catalog());
  static const CensusReport r5 = enumerate_census(5, ten3_catalog());
  return k == 3 ? r3 : k == 4 ? r4 : r5;
}

void check_report_invariants(const CensusReport& r) {
  CHECK(r.subtotal == std::accumulate(r.per_config_counts.begin(), r.per_config_counts.end(), 0));
  CHECK(r.raw == std::accumulate(r.per_config_raw.begin(), r.per_config_raw.end(), 0));
  CHECK(r.raw - r.self_exchanges == r.subtotal);
  CHECK(r.subtotal - r.cross_identifications == r.total);
  CHECK(static_cast<int>(r.members.size()) == r.total);
  CHECK(static_cast<int>(r.identifications.size()) == r.identification_count());

  std::set<CanonicalForm> forms;
  for (const auto& m : r.members) {
    CHECK_FALSE(is_reductive(m.arrangement));
    forms.insert(canonical_form(m.arrangement));
  }
  CHECK(forms.size() == r.members.size());

  for (const auto& id : r.identifications) {
    const Arrangement kept = named_arrangement(id.kept);
    const Arrangement removed = named_arrangement(id.removed);
    CHECK(verify_isomorphism(kept, removed, id.witness));
    // Only flagged arrangements can be identified.
    const std::size_t n = kept.line_count() - 1;
    CHECK(exchange_flag(kept, n));
    CHECK(exchange_flag(removed, n));
  }
}

}  // namespace

TEST_CASE("census k=3") {
  const auto t0 = std::chrono::steady_clock::now();
  const CensusReport& r = census(3);
  CHECK(std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count() < 300.0);
  CHECK(r.per_config_counts == std::vector<int>{4, 17, 42, 11, 76, 30, 50, 50, 39, 17});
  CHECK(r.raw == 337);
  CHECK(r.self_exchanges == 1);
  CHECK(r.subtotal == 336);
  CHECK(r.cross_identifications == 15);
  CHECK(r.total == 321);
  check_report_invariants(r);

  // The one self-exchange is the known pair inside (10_3)_5.
  int self = 0;
  for (const auto& id : r.identifications) {
    if (!id.same_config) continue;
    ++self;
    const std::set<std::string> pair{id.kept, id.removed};
    CHECK(pair == std::set<std::string>{"(10_3)_5.BDL", "(10_3)_5.BIK"});
  }
  CHECK(self == 1);
}

TEST_CASE("census k=4") {
  const CensusReport& r = census(4);
  CHECK(r.per_config_counts == std::vector<int>{2, 8, 21, 5, 45, 16, 25, 30, 24, 12});
  CHECK(r.subtotal == 188);
  CHECK(r.cross_identifications == 37);
  CHECK(r.total == 151);
  check_report_invariants(r);
}

TEST_CASE("census k=5") {
  const CensusReport& r = census(5);
  CHECK(r.per_config_counts == std::vector<int>{1, 1, 2, 1, 5, 2, 2, 3, 3, 3});
  CHECK(r.total == 23);
  CHECK(r.identification_count() == 0);
  check_report_invariants(r);
}

TEST_CASE("k=5 census is complete: brute force over all 5-subsets of doubles") {
  std::vector<CanonicalForm> brute;
  for (const auto& e : ten3_catalog()) {
    const auto ds = doubles(e.arrangement);
    std::vector<int> pick(ds.size(), 0);
    std::fill(pick.end() - 5, pick.end(), 1);
    do {
      ExtensionLine l;
      for (std::size_t i = 0; i < ds.size(); ++i) {
        if (pick[i]) l.push_back(ds[i]);
      }
      if (valid_extension(e.arrangement, l)) brute.push_back(canonical_form(add_line(e.arrangement, l)));
    } while (std::next_permutation(pick.begin(), pick.end()));
  }
  std::sort(brute.begin(), brute.end());
  brute.erase(std::unique(brute.begin(), brute.end()), brute.end());

  std::vector<CanonicalForm> census_forms;
  for (const auto& m : census(5).members) census_forms.push_back(canonical_form(m.arrangement));
  std::sort(census_forms.begin(), census_forms.end());
  CHECK(census_forms == brute);
}

TEST_CASE("serial and parallel censuses agree") {
  for (int k : {3, 5}) {
    const CensusReport s = enumerate_census(k, ten3_catalog(), Exec::Serial);
    CHECK(to_json(s) == to_json(census(k)));
    CHECK(census_table(s) == census_table(census(k)));
  }
  CHECK(to_json(nine3_census(Exec::Serial)) == to_json(nine3_census(Exec::Parallel)));
}

TEST_CASE("(9_3) census") {
  const CensusReport r = nine3_census();
  CHECK(r.total == 11);
  int from_first = 0;
  for (const auto& m : r.members) from_first += m.config == 0;
  CHECK(from_first == 2);
  check_report_invariants(r);

  // The two classes from (9_3)_1 are those of CDI and CDG.
  std::set<CanonicalForm> first;
  for (const auto& m : r.members) {
    if (m.config == 0) first.insert(canonical_form(m.arrangement));
  }
  CHECK(first.count(canonical_form(named_arrangement("(9_3)_1.CDI"))) == 1);
  CHECK(first.count(canonical_form(named_arrangement("(9_3)_1.CDG"))) == 1);

  // The reference names of the other nine all appear as distinct classes.
  std::set<CanonicalForm> all;
  for (const auto& m : r.members) all.insert(canonical_form(m.arrangement));
  for (const char* n : {"(9_3)_2.DFI", "(9_3)_2.CFI", "(9_3)_2.ADF", "(9_3)_3.BDF", "(9_3)_3.ACG", "(9_3)_3.AEG",
                        "(9_3)_3.ADG", "(9_3)_3.BEG"}) {
    CAPTURE(n);
    CHECK(all.count(canonical_form(named_arrangement(n))) == 1);
  }
}

TEST_CASE("ol_ext counts per configuration") {
  const auto& cat = ten3_catalog();
  const std::vector<int> k5{1, 1, 2, 1, 5, 2, 2, 3, 3, 3};
  for (std::size_t j = 0; j < cat.size(); ++j) {
    CHECK(static_cast<int>(ol_ext(5, cat[j].arrangement).size()) == k5[j]);
  }
  CHECK(ol_ext(3, catalog_entry("(10_3)_4").arrangement).size() == 11);
  CHECK(ol_ext(6, catalog_entry("(10_3)_1").arrangement).empty());
}

TEST_CASE("valid_extension") {
  const auto& e7 = catalog_entry("(10_3)_7");
  CHECK(valid_extension(e7.arrangement, extension_from_letters(e7, "ADO")));
  // A and B both lie on L1.
  CHECK_FALSE(valid_extension(e7.arrangement, make_extension_line({e7.double_of("A"), e7.double_of("B")})));
  CHECK_THROWS_AS(extension_from_letters(e7, "AAD"), DomainError);
}

TEST_CASE("name_arrangement sorts the letters") {
  const auto& e7 = catalog_entry("(10_3)_7");
  CHECK(name_arrangement(e7, extension_from_letters(e7, "ADO")) == "(10_3)_7.ADO");
  CHECK(name_arrangement(e7, extension_from_letters(e7, "OAD")) == "(10_3)_7.ADO");
  const auto& e1 = catalog_entry("(10_3)_1");
  CHECK(name_arrangement(e1, extension_from_letters(e1, "AEIKO")) == "(10_3)_1.AEIKO");
}

TEST_CASE("extension and deletion are inverse") {
  for (const auto& e : ten3_catalog()) {
    for (const auto& l : ol_ext(4, e.arrangement)) {
      const Arrangement ext = add_line(e.arrangement, l);
      CHECK(find_isomorphism(remove_line(ext, ext.line_count() - 1), e.arrangement).has_value());
    }
  }
}
