#pragma once

#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "lineext/arrangement.hpp"

namespace lineext {

/// A named configuration with letter labels for its double points.
struct CatalogEntry {
  std::string name;        // "(10_3)_7", "(9_3)_1", "fano"
  Arrangement arrangement;
  std::vector<DoublePoint> labeled_doubles;  // labeled_doubles[i] carries double_labels[i]
  std::vector<Label> double_labels;
  int expected_aut_order = 0;

  /// Label of a double point; throws DomainError if it has none.
  const Label& label_of(const DoublePoint& d) const;
  /// Double point carrying a label; throws DomainError if unknown.
  const DoublePoint& double_of(std::string_view label) const;
  /// Labels indexed like doubles(arrangement), as add_line() expects.
  std::vector<Label> labels_in_doubles_order() const;
};

const std::vector<CatalogEntry>& ten3_catalog();
const std::vector<CatalogEntry>& nine3_catalog();
const CatalogEntry& fano_entry();

/// Looks up "(10_3)_7", "10_3_7", "(9_3)_1" or "fano". Throws DomainError.
const CatalogEntry& catalog_entry(std::string_view name);
std::vector<std::string> catalog_names();

/// Extension line through the doubles named by the letters of `letters`
/// (e.g. "ADO"); multi-letter labels are not supported here.
ExtensionLine extension_from_letters(const CatalogEntry& entry, std::string_view letters);

/// Entry plus the extension line, with fresh points named by the catalog labels.
Arrangement extend_entry(const CatalogEntry& entry, const ExtensionLine& line);

/// Resolves names such as "(10_3)_7.ADO" to an arrangement; a bare catalog
/// name yields the configuration itself.
Arrangement named_arrangement(std::string_view name);

/// "(10_3)_7.ADO": the entry name, a dot, and the sorted labels.
std::string name_arrangement(const CatalogEntry& entry, const ExtensionLine& line);

}  // namespace lineext
