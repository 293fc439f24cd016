#include "frwmono/cpath.hpp"

#include <algorithm>
#include <cmath>
#include <istream>
#include <numbers>
#include <ostream>
#include <sstream>

namespace frwmono {

bool PolygonalPath::closed(double tol) const {
    return vertices.size() >= 2 && std::abs(vertices.front() - vertices.back()) <= tol;
}

double PolygonalPath::length() const {
    double s = 0;
    for (size_t i = 1; i < vertices.size(); ++i) s += std::abs(vertices[i] - vertices[i - 1]);
    return s;
}

PolygonalPath inverse(const PolygonalPath& p) {
    PolygonalPath r = p;
    std::reverse(r.vertices.begin(), r.vertices.end());
    return r;
}

PolygonalPath concat(const PolygonalPath& a, const PolygonalPath& b) {
    if (a.vertices.empty() || b.vertices.empty())
        throw PathMismatch("concat: empty path");
    if (std::abs(a.vertices.back() - b.vertices.front()) > 1e-12)
        throw PathMismatch("concat: second path does not start where the first ends");
    PolygonalPath r = a;
    r.vertices.insert(r.vertices.end(), b.vertices.begin() + 1, b.vertices.end());
    return r;
}

PolygonalPath commutator_path(const PolygonalPath& g1, const PolygonalPath& g2) {
    if (!g1.closed() || !g2.closed())
        throw PathMismatch("commutator_path: loops must be closed");
    if (std::abs(g1.vertices.front() - g2.vertices.front()) > 1e-12)
        throw PathMismatch("commutator_path: loops must share their base point");
    return concat(concat(concat(g1, g2), inverse(g1)), inverse(g2));
}

PolygonalPath hexagon_path(int sign) {
    const double c = 1.2;
    const double h = std::numbers::sqrt2 * std::numbers::pi;
    PolygonalPath p{{cplx(0, 0), cplx(c, c), cplx(c, h - c), cplx(0, h),
                     cplx(-c, h - c), cplx(-c, c), cplx(0, 0)}};
    if (sign < 0)
        for (auto& v : p.vertices) v = -v;
    return p;
}

PolygonalPath spoon_path(cplx t_star, int sign) {
    cplx t1 = t_star + cplx(-1, -1), t2 = t_star + cplx(1, -1);
    cplx t3 = t_star + cplx(1, 1), t4 = t_star + cplx(-1, 1);
    PolygonalPath p{{cplx(0, 0), t1, t2, t3, t4, t1, cplx(0, 0)}};
    if (sign < 0)
        for (auto& v : p.vertices) v = -v;
    return p;
}

PolygonalPath square_path(cplx center, double half_side) {
    double h = half_side;
    cplx t1 = center + cplx(-h, -h), t2 = center + cplx(h, -h);
    cplx t3 = center + cplx(h, h), t4 = center + cplx(-h, h);
    return PolygonalPath{{cplx(0, 0), t1, t2, t3, t4, t1, cplx(0, 0)}};
}

namespace {

double point_segment_distance(cplx z, cplx a, cplx b) {
    cplx d = b - a;
    double len2 = std::norm(d);
    if (len2 == 0.0) return std::abs(z - a);
    double t = ((z - a) * std::conj(d)).real() / len2;
    t = std::clamp(t, 0.0, 1.0);
    return std::abs(z - (a + t * d));
}

} // namespace

double min_distance(const PolygonalPath& p, std::span<const cplx> points) {
    double best = std::numeric_limits<double>::infinity();
    for (size_t i = 1; i < p.vertices.size(); ++i)
        for (cplx z : points)
            best = std::min(best, point_segment_distance(z, p.vertices[i - 1], p.vertices[i]));
    return best;
}

int winding_number(const PolygonalPath& p, cplx z0) {
    if (!p.closed()) throw PathMismatch("winding_number: path is not closed");
    double total = 0;
    for (size_t i = 1; i < p.vertices.size(); ++i) {
        cplx a = p.vertices[i - 1] - z0, b = p.vertices[i] - z0;
        total += std::arg(b / a);
    }
    return static_cast<int>(std::lround(total / (2 * std::numbers::pi)));
}

PolygonalPath read_path(std::istream& in) {
    PolygonalPath p;
    bool close = false;
    std::string line;
    while (std::getline(in, line)) {
        auto hash = line.find('#');
        if (hash != std::string::npos) line.erase(hash);
        std::istringstream ls(line);
        std::string first;
        if (!(ls >> first)) continue;
        if (first == "closed") {
            close = true;
            continue;
        }
        double re = std::stod(first), im = 0;
        ls >> im;
        p.vertices.emplace_back(re, im);
    }
    if (p.vertices.empty()) throw PathMismatch("read_path: no vertices");
    if (close && std::abs(p.vertices.front() - p.vertices.back()) > 0)
        p.vertices.push_back(p.vertices.front());
    return p;
}

void write_path(std::ostream& out, const PolygonalPath& p) {
    size_t n = p.vertices.size();
    bool close = p.closed() && n >= 2;
    size_t last = close ? n - 1 : n;
    out.precision(17);
    for (size_t i = 0; i < last; ++i)
        out << p.vertices[i].real() << " " << p.vertices[i].imag() << "\n";
    if (close) out << "closed\n";
}

} // namespace frwmono
