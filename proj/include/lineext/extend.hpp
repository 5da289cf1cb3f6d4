#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include <json.hpp>

#include "lineext/arrangement.hpp"
#include "lineext/catalog.hpp"
#include "lineext/symmetry.hpp"

namespace lineext {

enum class Exec { Serial, Parallel };

/// Every valid extension line through exactly k doubles of `a`, in
/// lexicographic order.
std::vector<ExtensionLine> valid_extensions(const Arrangement& a, int k);

/// Orbit representatives of the valid k-subsets of doubles under Aut(a).
std::vector<ExtensionLine> ol_ext(int k, const Arrangement& a);
std::vector<ExtensionLine> ol_ext(int k, const Arrangement& a, const PermGroup& aut);

/// One arrangement of a census.
struct CensusMember {
  std::string name;
  int config = 0;  // index into the catalog span
  ExtensionLine line;
  Arrangement arrangement;
  bool flagged = false;  // deleting some original line yields an (n_3) configuration
};

/// A census member found isomorphic to an earlier one.
struct Identification {
  std::string kept;
  std::string removed;
  bool same_config = false;
  ArrangementMap witness;  // kept -> removed
};

struct CensusReport {
  int k = 0;
  std::vector<std::string> config_names;
  std::vector<int> per_config_raw;     // orbit representatives per configuration
  std::vector<int> per_config_counts;  // per_config_raw minus self-exchanges
  int raw = 0;                         // sum of per_config_raw
  int self_exchanges = 0;              // identifications within one configuration
  int cross_identifications = 0;       // identifications across configurations
  int subtotal = 0;                    // sum of per_config_counts
  int total = 0;                       // isomorphism classes
  int flagged = 0;                     // size of the flag set
  std::vector<Identification> identifications;
  std::vector<CensusMember> members;   // one per class, in catalog then name order

  int identification_count() const { return self_exchanges + cross_identifications; }
};

/// Extension census over `catalog`: orbit representatives per entry, the
/// flag set, canonical-form deduplication inside it, and a verified witness
/// for every identification.
CensusReport enumerate_census(int k, std::span<const CatalogEntry> catalog, Exec exec = Exec::Parallel);

/// The k=3 census over the three (9_3) configurations.
CensusReport nine3_census(Exec exec = Exec::Parallel);

/// True iff deleting one of the first `original_lines` lines leaves an
/// (n_3) configuration.
bool exchange_flag(const Arrangement& extended, std::size_t original_lines);

nlohmann::json to_json(const CensusReport& r);
/// Plain-text table: one column per configuration, rows for counts.
std::string census_table(const CensusReport& r);

}  // namespace lineext
