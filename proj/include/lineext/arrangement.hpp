#pragma once

#include <compare>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

namespace lineext {

using Label = std::string;

/// An unordered pair of line indices whose lines have no common point.
/// Stored with first < second.
struct DoublePoint {
  int first = 0;
  int second = 0;

  DoublePoint() = default;
  DoublePoint(int a, int b) : first(a < b ? a : b), second(a < b ? b : a) {}

  auto operator<=>(const DoublePoint&) const = default;
};

/// A candidate new line, given by the double points it passes through.
/// Kept sorted ascending; see make_extension_line().
using ExtensionLine = std::vector<DoublePoint>;

/// Sorts and deduplicates; throws DomainError on a repeated member.
ExtensionLine make_extension_line(std::vector<DoublePoint> members);

/// A combinatorial line arrangement: an ordered list of lines, each a set of
/// point labels. Two distinct lines share at most one label.
///
/// The constructor checks the pairwise-intersection and distinct-label
/// invariants only. The "every point lies on at least three lines"
/// convention is checked by validate(), so that intermediate surgery states
/// stay representable.
class Arrangement {
 public:
  Arrangement() = default;
  explicit Arrangement(std::vector<std::vector<Label>> lines,
                       std::vector<std::string> names = {});

  std::size_t line_count() const { return lines_.size(); }
  const std::vector<std::vector<Label>>& lines() const { return lines_; }
  const std::vector<Label>& line(std::size_t i) const { return lines_.at(i); }
  const std::vector<std::string>& names() const { return names_; }

  /// Point labels in order of first appearance (line by line).
  std::vector<Label> points() const;
  std::size_t point_count() const { return points().size(); }
  int multiplicity(const Label& p) const;
  bool incident(const Label& p, std::size_t line) const;

  /// The common point of lines i and j, if any.
  std::optional<Label> meet(std::size_t i, std::size_t j) const;

  /// Throws DomainError unless every point lies on at least three lines.
  void validate() const;

  bool operator==(const Arrangement&) const = default;

 private:
  std::vector<std::vector<Label>> lines_;
  std::vector<std::string> names_;
};

/// Default header name of line i ("L1", "L2", ...).
std::string default_line_name(std::size_t i);

// ---- incidence queries and surgery ----------------------------------------

/// All pairs of lines with empty intersection, lexicographic by index.
std::vector<DoublePoint> doubles(const Arrangement& a);

/// Fresh labels for the doubles of `a`, in doubles() order: A, B, C, ...
/// skipping labels already used by points of `a`.
std::vector<Label> default_double_labels(const Arrangement& a);

/// One-line extension through the given double points. Each consumed double
/// becomes a new point, added to both of its lines and to the new line.
/// `labels` (indexed like doubles(a)) names the new points; when empty,
/// default_double_labels(a) is used.
Arrangement add_line(const Arrangement& a, const ExtensionLine& line,
                     std::span<const Label> labels = {});

/// Deletes line i. Points left on exactly two lines become unnamed double
/// points and are removed from the remaining lines.
Arrangement remove_line(const Arrangement& a, std::size_t i);

/// True iff some line carries at most two points.
bool is_reductive(const Arrangement& a);

/// True iff #lines == #points, every line has 3 points and every point lies
/// on 3 lines.
bool is_n3_configuration(const Arrangement& a);

/// Whether the members of `line` are doubles of `a` that pairwise share no
/// line (so that adding the line keeps an arrangement).
bool valid_extension(const Arrangement& a, const ExtensionLine& line);

// ---- text and JSON forms ---------------------------------------------------

/// Parses the arrangement-table format: a header row of line names, then
/// rows of point labels, one column per line. Cells are matched to columns
/// by their horizontal position under the header; a row with exactly one
/// token per column is read positionally. "-" or "." marks an empty cell.
Arrangement parse_table(std::string_view text);

/// Emits a column-aligned arrangement table that parse_table() reads back.
std::string emit_table(const Arrangement& a);

nlohmann::json to_json(const Arrangement& a);
Arrangement arrangement_from_json(const nlohmann::json& j);

// ---- bitmask view used by the search kernels ------------------------------

/// Points as bitmasks over line indices. Requires at most 64 lines.
struct IncidenceMasks {
  int lines = 0;
  std::vector<Label> point_labels;        // same order as Arrangement::points()
  std::vector<std::uint64_t> point_masks;  // bit i set iff point on line i
};

IncidenceMasks incidence_masks(const Arrangement& a);

}  // namespace lineext
