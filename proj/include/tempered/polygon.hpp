#pragma once

#include <vector>

#include "tempered/laurent.hpp"

namespace tempered {

using LatticePoint = Exponent;

struct PolygonEdge {
  LatticePoint start;
  LatticePoint end;
  LatticePoint direction;  // primitive, counterclockwise around the polygon
  int lattice_length = 0;
};

/// Convex lattice polygon with its lattice points enumerated.
struct NewtonPolygon {
  std::vector<LatticePoint> vertices;         // counterclockwise, no collinear triples
  std::vector<LatticePoint> boundary_points;  // counterclockwise from vertices[0]
  std::vector<LatticePoint> interior_points;  // lexicographic order
  std::vector<PolygonEdge> edges;

  /// Twice the Euclidean area (an integer for lattice polygons).
  long twice_area() const;
  int genus() const { return static_cast<int>(interior_points.size()); }
  bool is_interior(const LatticePoint& p) const;
  bool contains(const LatticePoint& p) const;
};

/// Convex hull of a point set. Throws DegeneratePolygon if the points lie on a line.
NewtonPolygon convex_lattice_polygon(std::vector<LatticePoint> points);

/// Newton polygon of p. Throws DegeneratePolygon for 0- or 1-dimensional support.
NewtonPolygon newton_polygon(const LaurentPolynomial& p);

struct EdgePolynomial {
  PolygonEdge edge;
  /// coeffs[t] is the coefficient of p at edge.start + t*edge.direction.
  std::vector<Coefficient> coeffs;
  int degree() const { return static_cast<int>(coeffs.size()) - 1; }
};

std::vector<EdgePolynomial> edge_polynomials(const LaurentPolynomial& p, const NewtonPolygon& polygon);

}  // namespace tempered
