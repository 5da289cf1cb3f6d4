#pragma once

#include <compare>
#include <cstdint>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include <json.hpp>

#include "lineext/arrangement.hpp"

namespace lineext {

/// Line i of the source goes to line line_map[i] of the target.
using LinePerm = std::vector<int>;

/// Point and line bijections that preserve incidence.
struct ArrangementMap {
  std::map<Label, Label> point_map;
  LinePerm line_map;

  bool operator==(const ArrangementMap&) const = default;
};

/// {"point_map": {...}, "line_map": {"L1": "L3", ...}} using the line names
/// of the two arrangements.
nlohmann::json to_json(const ArrangementMap& m, const Arrangement& from, const Arrangement& to);

/// Checks the map against both arrangements directly: bijectivity of both
/// parts and p in line_i iff point_map(p) in line_{line_map(i)}.
bool verify_isomorphism(const Arrangement& from, const Arrangement& to, const ArrangementMap& m);

/// Extends a line bijection to a point bijection, if it preserves incidence.
std::optional<ArrangementMap> induced_map(const Arrangement& from, const Arrangement& to,
                                          const LinePerm& line_map);

/// Backtracking over line bijections, pruned by per-line multiplicity
/// fingerprints and by consistency of the induced point map.
std::optional<ArrangementMap> find_isomorphism(const Arrangement& a, const Arrangement& b);

/// Every isomorphism a -> b.
std::vector<ArrangementMap> all_isomorphisms(const Arrangement& a, const Arrangement& b);

/// A group of automorphisms acting on line indices.
struct PermGroup {
  std::vector<ArrangementMap> generators;
  std::vector<LinePerm> elements;  // sorted; the identity is elements.front()
  std::uint64_t order = 1;
  std::map<int, std::uint64_t> element_order_histogram;
  bool abelian = true;
};

/// The full automorphism group, with a small generating set.
PermGroup automorphism_group(const Arrangement& a);

/// The group generated by the given automorphisms of `a` (closure by
/// breadth-first multiplication). Throws if the closure exceeds `max_order`.
PermGroup generated_group(const Arrangement& a, std::vector<ArrangementMap> generators,
                          std::uint64_t max_order = 10000);

LinePerm compose(const LinePerm& outer, const LinePerm& inner);
int permutation_order(const LinePerm& p);

/// Relabeling-invariant serialization of the isomorphism class.
struct CanonicalForm {
  std::vector<std::uint8_t> bytes;

  std::string hex() const;
  auto operator<=>(const CanonicalForm&) const = default;
};

/// Minimum certificate over the leaves of an individualization-refinement
/// search on the point/line incidence graph.
CanonicalForm canonical_form(const Arrangement& a);

/// Image of an extension line under a line permutation.
ExtensionLine apply(const LinePerm& g, const ExtensionLine& line);

/// One representative per orbit of `group` on `lines`, the lexicographically
/// least member, in ascending order. Throws DomainError if some group
/// element maps a member of `lines` outside the list.
std::vector<ExtensionLine> orbit_representatives(const PermGroup& group,
                                                 std::span<const ExtensionLine> lines);

}  // namespace lineext
