#pragma once

#include <complex>
#include <iosfwd>
#include <span>
#include <vector>

#include "frwmono/errors.hpp"

namespace frwmono {

using cplx = std::complex<double>;

/// Piecewise-linear path in complex time. A closed loop stores its base
/// point twice: vertices.front() == vertices.back().
struct PolygonalPath {
    std::vector<cplx> vertices;

    bool closed(double tol = 1e-12) const;
    double length() const;
};

PolygonalPath inverse(const PolygonalPath& p);

/// Joins b after a; throws PathMismatch unless a ends where b starts.
PolygonalPath concat(const PolygonalPath& a, const PolygonalPath& b);

/// Loop word g1 g2 g1^-1 g2^-1 (g1 traversed first); both loops must be
/// closed and share their base point.
PolygonalPath commutator_path(const PolygonalPath& g1, const PolygonalPath& g2);

/// Hexagon from the origin around +-i pi/sqrt(2): vertices
/// {0, 6/5+6/5 i, 6/5+(sqrt(2)pi-6/5) i, sqrt(2)pi i, ...} mirrored back to 0;
/// sign -1 negates every vertex (the loop around the opposite pole).
PolygonalPath hexagon_path(int sign);

/// Stemmed unit-square loop around t_star: 0 -> t1 -> t2 -> t3 -> t4 -> t1 -> 0
/// with corners t_star + (+-1 +- i); sign -1 negates every vertex.
PolygonalPath spoon_path(cplx t_star, int sign);

/// Axis-aligned square of the given half side centered on `center`,
/// entered by a straight stem from the origin to its lower-left corner.
PolygonalPath square_path(cplx center, double half_side);

double min_distance(const PolygonalPath& p, std::span<const cplx> points);

/// Winding number of a closed path around z0 (summed argument increments).
int winding_number(const PolygonalPath& p, cplx z0);

/// Text format: one "re im" vertex per line, '#' starts a comment,
/// an optional trailing "closed" line closes the loop onto its first vertex.
PolygonalPath read_path(std::istream& in);
void write_path(std::ostream& out, const PolygonalPath& p);

} // namespace frwmono
