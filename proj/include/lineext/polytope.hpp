#pragma once

#include <vector>

#include "lineext/mpoly.hpp"

namespace lineext {

using LatticePoint = std::vector<long>;

/// Convex hull of a finite lattice point set, stored by its extreme points
/// (sorted ascending).
struct NewtonPolytope {
  std::size_t dimension = 0;  // ambient dimension
  std::vector<LatticePoint> vertices;

  bool operator==(const NewtonPolytope&) const = default;
};

/// Extreme points of the convex hull of `points` (ambient dimension <= 3).
std::vector<LatticePoint> hull_vertices(std::vector<LatticePoint> points);

/// Throws DomainError for the zero polynomial or arity > 3.
NewtonPolytope newton_polytope(const MPoly& f);

/// Throws DomainError on a dimension mismatch.
NewtonPolytope minkowski_sum(const NewtonPolytope& p, const NewtonPolytope& q);

/// gcd of all coordinates of all vertices of P_f equals 1.
bool gao_coprime_test(const MPoly& f);

}  // namespace lineext
