#include "lineext/polytope.hpp"

#include <algorithm>
#include <array>
#include <numeric>

#include "lineext/error.hpp"

namespace lineext {

namespace {

using P2 = std::array<long, 2>;
using P3 = std::array<long, 3>;

long cross2(const P2& o, const P2& a, const P2& b) {
  return (a[0] - o[0]) * (b[1] - o[1]) - (a[1] - o[1]) * (b[0] - o[0]);
}

// Andrew's monotone chain; strict turns only, so collinear points are dropped.
std::vector<P2> hull2(std::vector<P2> pts) {
  std::sort(pts.begin(), pts.end());
  pts.erase(std::unique(pts.begin(), pts.end()), pts.end());
  if (pts.size() <= 2) return pts;
  std::vector<P2> h(2 * pts.size());
  std::size_t k = 0;
  for (const auto& p : pts) {
    while (k >= 2 && cross2(h[k - 2], h[k - 1], p) <= 0) --k;
    h[k++] = p;
  }
  for (std::size_t i = pts.size() - 1, t = k + 1; i-- > 0;) {
    while (k >= t && cross2(h[k - 2], h[k - 1], pts[i]) <= 0) --k;
    h[k++] = pts[i];
  }
  h.resize(k - 1);
  return h;
}

P3 sub(const P3& a, const P3& b) { return {a[0] - b[0], a[1] - b[1], a[2] - b[2]}; }
P3 cross(const P3& a, const P3& b) {
  return {a[1] * b[2] - a[2] * b[1], a[2] * b[0] - a[0] * b[2], a[0] * b[1] - a[1] * b[0]};
}
long dot(const P3& a, const P3& b) { return a[0] * b[0] + a[1] * b[1] + a[2] * b[2]; }

// Vertices of a planar point set in R^3 with plane normal n.
std::vector<P3> planar_vertices(const std::vector<P3>& pts, const P3& n) {
  std::size_t drop = 0;
  for (std::size_t i = 1; i < 3; ++i) {
    if (std::abs(n[i]) > std::abs(n[drop])) drop = i;
  }
  std::vector<P2> proj;
  for (const auto& p : pts) {
    P2 q{};
    std::size_t j = 0;
    for (std::size_t i = 0; i < 3; ++i) {
      if (i != drop) q[j++] = p[i];
    }
    proj.push_back(q);
  }
  std::vector<P3> out;
  for (const auto& q : hull2(proj)) {
    for (std::size_t i = 0; i < pts.size(); ++i) {
      if (proj[i] == q) {
        out.push_back(pts[i]);
        break;
      }
    }
  }
  return out;
}

std::vector<P3> hull3(std::vector<P3> pts) {
  std::sort(pts.begin(), pts.end());
  pts.erase(std::unique(pts.begin(), pts.end()), pts.end());
  if (pts.size() <= 2) return pts;
  // Affine dimension.
  const P3 o = pts[0];
  std::size_t i1 = 1;
  P3 d1 = sub(pts[i1], o);
  P3 n{0, 0, 0};
  for (std::size_t i = 2; i < pts.size(); ++i) {
    n = cross(d1, sub(pts[i], o));
    if (n != P3{0, 0, 0}) break;
  }
  if (n == P3{0, 0, 0}) {
    // Collinear: the two extreme points along d1.
    auto key = [&](const P3& p) { return dot(sub(p, o), d1); };
    auto [lo, hi] = std::minmax_element(pts.begin(), pts.end(), [&](const P3& a, const P3& b) { return key(a) < key(b); });
    return {*lo, *hi};
  }
  bool planar = std::all_of(pts.begin(), pts.end(), [&](const P3& p) { return dot(n, sub(p, o)) == 0; });
  if (planar) return planar_vertices(pts, n);

  // Full-dimensional: collect the vertices of every supporting plane.
  std::vector<P3> out;
  const std::size_t m = pts.size();
  for (std::size_t i = 0; i < m; ++i) {
    for (std::size_t j = i + 1; j < m; ++j) {
      for (std::size_t k = j + 1; k < m; ++k) {
        const P3 nn = cross(sub(pts[j], pts[i]), sub(pts[k], pts[i]));
        if (nn == P3{0, 0, 0}) continue;
        bool pos = false, neg = false;
        std::vector<P3> face;
        for (const auto& p : pts) {
          const long s = dot(nn, sub(p, pts[i]));
          if (s > 0) pos = true;
          if (s < 0) neg = true;
          if (s == 0) face.push_back(p);
          if (pos && neg) break;
        }
        if (pos && neg) continue;
        for (const auto& v : planar_vertices(face, nn)) out.push_back(v);
      }
    }
  }
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

}  // namespace

std::vector<LatticePoint> hull_vertices(std::vector<LatticePoint> points) {
  if (points.empty()) return {};
  const std::size_t dim = points.front().size();
  if (dim > 3) throw DomainError("hulls are supported in dimension <= 3");
  std::vector<P3> pts;
  for (const auto& p : points) {
    if (p.size() != dim) throw DomainError("mixed dimensions in point set");
    P3 q{0, 0, 0};
    for (std::size_t i = 0; i < dim; ++i) q[i] = p[i];
    pts.push_back(q);
  }
  std::vector<LatticePoint> out;
  for (const auto& q : hull3(std::move(pts))) out.emplace_back(q.begin(), q.begin() + static_cast<long>(dim));
  std::sort(out.begin(), out.end());
  return out;
}

NewtonPolytope newton_polytope(const MPoly& f) {
  if (f.is_zero()) throw DomainError("the zero polynomial has no Newton polytope");
  if (f.arity() > 3) throw DomainError("Newton polytopes are supported for at most 3 variables");
  std::vector<LatticePoint> pts;
  for (const auto& [e, c] : f.terms()) pts.emplace_back(e.begin(), e.end());
  return {f.arity(), hull_vertices(std::move(pts))};
}

NewtonPolytope minkowski_sum(const NewtonPolytope& p, const NewtonPolytope& q) {
  if (p.dimension != q.dimension) throw DomainError("Minkowski sum of polytopes of different dimension");
  std::vector<LatticePoint> pts;
  for (const auto& a : p.vertices) {
    for (const auto& b : q.vertices) {
      LatticePoint s(a.size());
      for (std::size_t i = 0; i < a.size(); ++i) s[i] = a[i] + b[i];
      pts.push_back(std::move(s));
    }
  }
  return {p.dimension, hull_vertices(std::move(pts))};
}

bool gao_coprime_test(const MPoly& f) {
  long g = 0;
  for (const auto& v : newton_polytope(f).vertices) {
    for (long x : v) g = std::gcd(g, x);
  }
  return g == 1;
}

}  // namespace lineext
