#pragma once

#include <array>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include <json.hpp>

#include "lineext/arrangement.hpp"
#include "lineext/extend.hpp"
#include "lineext/irreducible.hpp"
#include "lineext/mpoly.hpp"
#include "lineext/numfield.hpp"

namespace lineext {

enum class ElementKind { Point, Line };

using Coords = std::array<MPoly, 3>;

/// A placed point or line with homogeneous coordinates over the parameter
/// ring. Coordinates are primitive (common polynomial content removed).
struct ProjElement {
  ElementKind kind = ElementKind::Point;
  std::string name;  // point label or line name
  Coords coords;
};

enum class StepKind { Basis, Meet, Join, Free };

struct PlanStep {
  StepKind kind = StepKind::Free;
  std::string name;                   // as written in the plan
  std::vector<std::string> operands;  // Meet/Join: the two placed elements
  /// Basis: required. Free: optional explicit coordinates whose
  /// identifiers become parameters.
  std::optional<std::array<std::string, 3>> coords;
  int params = -1;  // Free without coordinates: fresh parameter count (-1 infers)
};

/// Ordered placement of every point and line of an arrangement.
struct ConstructionPlan {
  std::vector<PlanStep> steps;
};

/// Reads the plan DSL, one step per line ('#' starts a comment):
///   basis P9 [1:0:0]
///   meet O = L8 ^ L10
///   join L11 = A + N
///   free P5 2
///   free L1 [-a:0:1]
/// Points may be written with or without a "P" prefix. Throws DomainError
/// on malformed lines; names are resolved later by build().
ConstructionPlan parse_plan(std::string_view text);
std::string to_text(const ConstructionPlan& plan);
nlohmann::json to_json(const ConstructionPlan& plan);

/// Greedy plan: every projective basis of four points (or four lines) whose
/// general position is forced by the incidences is tried; after the basis,
/// determined elements are placed first and otherwise the free element with
/// the most placed incidences (then the longest determined cascade, then
/// the lowest index). The plan with the fewest parameters, then fewest
/// constraints, wins. Throws DomainError when no forced basis exists.
ConstructionPlan auto_plan(const Arrangement& a);

/// Three lines with no common point in the arrangement. They meet in a new
/// triple point exactly when `det` vanishes.
struct TripleCondition {
  std::string lines;  // "L1, L8, L10"
  MPoly det;
};

struct ModuliPresentation {
  Arrangement arrangement;
  ConstructionPlan plan;
  std::vector<std::string> params;
  std::vector<ProjElement> elements;  // in placement order
  std::vector<MPoly> constraints;     // incidence polynomials f_i
  std::vector<MPoly> nondegeneracy;   // g_j, each required nonzero
  /// Line triples that may become concurrent; identically concurrent triples
  /// are listed in forced_concurrency instead.
  std::vector<TripleCondition> concurrency;
  std::vector<std::string> forced_concurrency;
  std::vector<MPoly> reduced;         // h_i, filled by reduce()
  bool is_reduced = false;
  bool reduced_with_triples = false;  // whether reduce() also divided by concurrency dets
  /// Some required non-incidence holds identically; no realization exists.
  std::optional<std::string> degenerate;
  /// False when a free element had to use a coordinate chart that may miss
  /// realizations (emptiness and point counts are then not certified).
  bool complete_chart = true;
};

/// Incremental exact construction. Determined elements are cross products;
/// free elements are pencils spanned by anchors they must differ from.
/// Throws DomainError on unknown names, references to unplaced elements,
/// elements placed twice or never, or a degenerate basis.
ModuliPresentation build(const Arrangement& a, const ConstructionPlan& plan);

/// Removes from each constraint every factor shared with a nondegeneracy
/// polynomial (and, with `triples`, a concurrency determinant), collapses
/// repeated factors, drops duplicates and constraints divisible by another
/// one.
ModuliPresentation reduce(ModuliPresentation m, bool triples = false);

// ---- classification ---------------------------------------------------------

/// A Galois orbit of irreducible components (or of points). `size` members
/// over C, `real` of them fixed by complex conjugation.
struct ComponentOrbit {
  std::string field = "Q";  // field of definition of each member
  int size = 1;
  int real = 1;
  bool self_connected = false;  // members meet at a nondegenerate point
  std::string description;
};

/// Number of classes modulo complex conjugation after merging: orbits
/// joined by `merges` (pairs of indices), or self-connected, count once;
/// otherwise an orbit counts real + (size - real) / 2. Throws DomainError on
/// inconsistent orbit data.
int conjugation_count(const std::vector<ComponentOrbit>& orbits,
                      const std::vector<std::pair<std::size_t, std::size_t>>& merges = {});

/// An algebraic point of the parameter space: coordinates in Q[t]/(q).
struct Witness {
  UPoly minpoly;
  std::vector<NumberField::Elem> values;  // one per parameter
  bool valid = false;                     // re-validated against the arrangement
};

enum class Verdict { Empty, Irreducible, Reducible, FinitePoints, Unknown };

struct Classification {
  Verdict verdict = Verdict::Unknown;
  int dim = -1;
  int components_over_c = 0;
  int components_mod_conjugation = 0;
  int count_over_c = 0;
  int count_mod_conjugation = 0;
  int real_count = 0;
  std::string reason;
  std::vector<ComponentOrbit> orbits;
  std::optional<Witness> witness;
  /// New triple points accepted under the chosen policy.
  std::vector<std::string> allowed_triple_points;

  /// (|M|, |M mod conjugation|) as the tables report them, when defined.
  std::optional<std::pair<int, int>> counts() const;
};

enum class TriplePoints {
  Allow,        // only point/line non-incidences are enforced
  Forbid,       // every new triple point is a degeneracy
  AllowForced,  // forbidden unless it occurs on the whole moduli space
};

struct ClassifyOptions {
  IrreducibilityOptions irreducibility;
  /// Treatment of new triple points (three lines that share no point of the
  /// arrangement meeting anyway).
  TriplePoints triple_points = TriplePoints::AllowForced;
  /// Square-free d tried for splitting over Q(sqrt(d)).
  std::vector<long> quadratic_fields = {-1, 2, -2, 3, -3, 5, -5, 6, -6, 7, -7, 10, -10, 11, -11,
                                        13, -13, 14, -14, 15, -15, 17, -17, 19, -19};
  int max_shifts = 8;         // separating linear forms tried by the point solver
  int max_factor_degree = 64; // degree cap for rational_factors in elimination
};

/// Reduces first if needed.
Classification classify(const ModuliPresentation& m, const ClassifyOptions& opt = {});

/// Outcome of one arrangement in a batch run.
struct BatchResult {
  std::string name;
  std::optional<Classification> classification;
  std::string error;  // set when the plan or the build failed
  int params = 0;
};

/// Auto plan, build and classify for each named arrangement (see
/// named_arrangement). Arrangements are independent, so the parallel path
/// distributes them over threads; results keep the input order.
std::vector<BatchResult> classify_batch(const std::vector<std::string>& names,
                                        const ClassifyOptions& opt = {}, Exec exec = Exec::Parallel);

/// Checks a parameter point against the incidence structure: exact
/// incidences where the arrangement has them and no other point-on-line
/// incidences. With `check_triples`, also no new triple points other than
/// those named in `exempt`.
bool validate_realization(const ModuliPresentation& m, const Witness& w, bool check_triples = false,
                          const std::vector<std::string>& exempt = {});

/// Rows of the census classification tables.
enum class TallyRow { Irreducible, Empty, ReducibleIrreducibleModConjugation, ReducibleModConjugation, Unknown };
inline constexpr std::size_t kTallyRows = 5;

/// Row for one classification; a single point counts as irreducible.
TallyRow tally_row(const Classification& c);

struct CensusClassification {
  int k = 0;
  std::vector<std::string> config_names;
  /// Every arrangement counted in the census subtotal, by configuration.
  std::vector<BatchResult> results;
  std::vector<int> config_of;  // parallel to results
  std::vector<bool> is_class;  // parallel to results; true for class representatives
  std::array<std::vector<int>, kTallyRows> per_config;
  std::array<int, kTallyRows> subtotal{};
  std::array<int, kTallyRows> total{};
};

/// Classifies every arrangement behind the census subtotal (after
/// self-exchanges) and tallies the rows per configuration, over the
/// subtotal and over isomorphism classes.
CensusClassification classify_census(const CensusReport& census, std::span<const CatalogEntry> catalog,
                                     const ClassifyOptions& opt = {}, Exec exec = Exec::Parallel);

/// Table in the layout of the census tables, with an Unknown row.
std::string tally_table(const CensusReport& census, const CensusClassification& t);
nlohmann::json to_json(const CensusClassification& t);
std::string to_string(TallyRow r);

std::string to_string(TriplePoints p);
/// "allow", "forbid" or "allow-forced"; throws DomainError otherwise.
TriplePoints parse_triple_points(std::string_view s);

std::string to_string(Verdict v);
std::string to_string(const Classification& c);
nlohmann::json to_json(const ModuliPresentation& m);
nlohmann::json to_json(const Classification& c);

}  // namespace lineext
