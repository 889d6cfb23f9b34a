#include "tempered/polygon.hpp"

#include <algorithm>
#include <numeric>
#include <set>

#include "tempered/error.hpp"

namespace tempered {

namespace {

long cross(const LatticePoint& o, const LatticePoint& a, const LatticePoint& b) {
  return static_cast<long>(a[0] - o[0]) * (b[1] - o[1]) - static_cast<long>(a[1] - o[1]) * (b[0] - o[0]);
}

}  // namespace

long NewtonPolygon::twice_area() const {
  long s = 0;
  for (std::size_t i = 0; i < vertices.size(); ++i) {
    const auto& p = vertices[i];
    const auto& q = vertices[(i + 1) % vertices.size()];
    s += static_cast<long>(p[0]) * q[1] - static_cast<long>(q[0]) * p[1];
  }
  return s;
}

bool NewtonPolygon::contains(const LatticePoint& p) const {
  for (const auto& e : edges)
    if (cross(e.start, e.end, p) < 0) return false;
  return true;
}

bool NewtonPolygon::is_interior(const LatticePoint& p) const {
  for (const auto& e : edges)
    if (cross(e.start, e.end, p) <= 0) return false;
  return true;
}

NewtonPolygon convex_lattice_polygon(std::vector<LatticePoint> pts) {
  std::sort(pts.begin(), pts.end());
  pts.erase(std::unique(pts.begin(), pts.end()), pts.end());
  if (pts.size() < 3) throw Error(ErrorCode::DegeneratePolygon, "support has fewer than three points");

  // Andrew's monotone chain; strict turns drop collinear points.
  std::vector<LatticePoint> hull(2 * pts.size());
  std::size_t k = 0;
  for (const auto& p : pts) {
    while (k >= 2 && cross(hull[k - 2], hull[k - 1], p) <= 0) --k;
    hull[k++] = p;
  }
  for (std::size_t i = pts.size() - 1, t = k + 1; i-- > 0;) {
    while (k >= t && cross(hull[k - 2], hull[k - 1], pts[i]) <= 0) --k;
    hull[k++] = pts[i];
  }
  hull.resize(k - 1);
  if (hull.size() < 3) throw Error(ErrorCode::DegeneratePolygon, "support is contained in a line");

  NewtonPolygon poly;
  poly.vertices = hull;
  for (std::size_t i = 0; i < hull.size(); ++i) {
    const auto& a = hull[i];
    const auto& b = hull[(i + 1) % hull.size()];
    int dx = b[0] - a[0], dy = b[1] - a[1];
    int len = std::gcd(std::abs(dx), std::abs(dy));
    poly.edges.push_back({a, b, {dx / len, dy / len}, len});
    for (int t = 0; t < len; ++t) poly.boundary_points.push_back({a[0] + t * dx / len, a[1] + t * dy / len});
  }

  int xmin = hull[0][0], xmax = hull[0][0], ymin = hull[0][1], ymax = hull[0][1];
  for (const auto& v : hull) {
    xmin = std::min(xmin, v[0]);
    xmax = std::max(xmax, v[0]);
    ymin = std::min(ymin, v[1]);
    ymax = std::max(ymax, v[1]);
  }
  for (int x = xmin; x <= xmax; ++x)
    for (int y = ymin; y <= ymax; ++y)
      if (poly.is_interior({x, y})) poly.interior_points.push_back({x, y});
  return poly;
}

NewtonPolygon newton_polygon(const LaurentPolynomial& p) {
  if (p.empty()) throw Error(ErrorCode::DegeneratePolygon, "empty polynomial");
  std::vector<LatticePoint> support;
  for (const auto& [e, c] : p.terms()) support.push_back(e);
  return convex_lattice_polygon(std::move(support));
}

std::vector<EdgePolynomial> edge_polynomials(const LaurentPolynomial& p, const NewtonPolygon& polygon) {
  std::vector<EdgePolynomial> out;
  for (const auto& e : polygon.edges) {
    EdgePolynomial ep{e, {}};
    for (int t = 0; t <= e.lattice_length; ++t)
      ep.coeffs.push_back(p.coefficient({e.start[0] + t * e.direction[0], e.start[1] + t * e.direction[1]}));
    out.push_back(std::move(ep));
  }
  return out;
}

}  // namespace tempered
