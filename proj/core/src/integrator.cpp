#include "frwmono/integrator.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "frwmono/errors.hpp"

namespace frwmono {

namespace {

// Fehlberg's 13-stage 7(8) tableau.
constexpr int NS = 13;

constexpr double C[NS] = {0.0,       2.0 / 27, 1.0 / 9, 1.0 / 6, 5.0 / 12, 1.0 / 2, 5.0 / 6,
                          1.0 / 6,   2.0 / 3,  1.0 / 3, 1.0,     0.0,      1.0};

constexpr double A1[] = {2.0 / 27};
constexpr double A2[] = {1.0 / 36, 1.0 / 12};
constexpr double A3[] = {1.0 / 24, 0.0, 1.0 / 8};
constexpr double A4[] = {5.0 / 12, 0.0, -25.0 / 16, 25.0 / 16};
constexpr double A5[] = {1.0 / 20, 0.0, 0.0, 1.0 / 4, 1.0 / 5};
constexpr double A6[] = {-25.0 / 108, 0.0, 0.0, 125.0 / 108, -65.0 / 27, 125.0 / 54};
constexpr double A7[] = {31.0 / 300, 0.0, 0.0, 0.0, 61.0 / 225, -2.0 / 9, 13.0 / 900};
constexpr double A8[] = {2.0, 0.0, 0.0, -53.0 / 6, 704.0 / 45, -107.0 / 9, 67.0 / 90, 3.0};
constexpr double A9[] = {-91.0 / 108, 0.0,       0.0,        23.0 / 108, -976.0 / 135,
                         311.0 / 54,  -19.0 / 60, 17.0 / 6,   -1.0 / 12};
constexpr double A10[] = {2383.0 / 4100, 0.0,          0.0,           -341.0 / 164,
                          4496.0 / 1025, -301.0 / 82,  2133.0 / 4100, 45.0 / 82,
                          45.0 / 164,    18.0 / 41};
constexpr double A11[] = {3.0 / 205, 0.0, 0.0, 0.0,       0.0,       -6.0 / 41,
                          -3.0 / 205, -3.0 / 41, 3.0 / 41, 6.0 / 41, 0.0};
constexpr double A12[] = {-1777.0 / 4100, 0.0,         0.0,           -341.0 / 164,
                          4496.0 / 1025,  -289.0 / 82, 2193.0 / 4100, 51.0 / 82,
                          33.0 / 164,     12.0 / 41,   0.0,           1.0};

const double* AROW[NS] = {nullptr, A1, A2, A3, A4, A5, A6, A7, A8, A9, A10, A11, A12};

// 8th-order weights (the propagated solution).
constexpr double B8[NS] = {0.0, 0.0, 0.0,        0.0,       0.0,        34.0 / 105, 9.0 / 35,
                           9.0 / 35, 9.0 / 280, 9.0 / 280, 0.0,        41.0 / 840, 41.0 / 840};

constexpr double ERRW = 41.0 / 840; // err = ERRW * (k0 + k10 - k11 - k12)

} // namespace

void integrate_segment(const OdeRhs& f, cplx a, cplx b, Eigen::VectorXcd& y,
                       const IntegratorConfig& cfg, const StepObserver* observer) {
    const cplx dir = b - a;
    if (std::abs(dir) == 0.0) return;

    const Eigen::Index n = y.size();
    std::vector<Eigen::VectorXcd> k(NS, Eigen::VectorXcd(n));
    Eigen::VectorXcd ytmp(n), ynew(n);

    double s = 0.0;
    double dt = std::min(cfg.initial_step, 1.0);
    long steps = 0;

    while (s < 1.0) {
        if (++steps > cfg.max_steps)
            throw Error("integrate_segment: step limit exceeded");
        dt = std::min(dt, 1.0 - s);
        if (dt < cfg.min_step) {
            std::ostringstream os;
            os << "integrate_segment: step size " << dt << " below min_step at s=" << s;
            throw StepUnderflow(os.str());
        }

        // Stages; t = a + (s + c_i*dt) * dir, chain rule gives the dir factor.
        f(a + s * dir, y, k[0]);
        k[0] *= dir;
        for (int i = 1; i < NS; ++i) {
            ytmp = y;
            const double* arow = AROW[i];
            for (int j = 0; j < i; ++j)
                if (arow[j] != 0.0) ytmp.noalias() += (dt * arow[j]) * k[j];
            f(a + (s + C[i] * dt) * dir, ytmp, k[i]);
            k[i] *= dir;
        }

        ynew = y;
        for (int i = 0; i < NS; ++i)
            if (B8[i] != 0.0) ynew.noalias() += (dt * B8[i]) * k[i];

        double errnorm = 0.0;
        for (Eigen::Index q = 0; q < n; ++q) {
            const double e = std::abs(k[0][q] + k[10][q] - k[11][q] - k[12][q]) * (ERRW * dt);
            const double scale = cfg.atol + cfg.rtol * std::max(std::abs(y[q]), std::abs(ynew[q]));
            errnorm = std::max(errnorm, e / scale);
        }

        if (errnorm <= 1.0) {
            s += dt;
            y.swap(ynew);
            if (observer) (*observer)(a + s * dir, y);
        }
        const double fac = errnorm > 0.0 ? 0.9 * std::pow(errnorm, -1.0 / 8.0) : 5.0;
        dt *= std::clamp(fac, 0.2, 5.0);
    }
}

void integrate_path(const OdeRhs& f, const PolygonalPath& path, Eigen::VectorXcd& y,
                    const IntegratorConfig& cfg, const StepObserver* observer) {
    if (path.vertices.size() < 2) throw PathMismatch("integrate_path: path has no segments");
    for (std::size_t i = 0; i + 1 < path.vertices.size(); ++i)
        integrate_segment(f, path.vertices[i], path.vertices[i + 1], y, cfg, observer);
}

void check_clearance(const PolygonalPath& path, std::span<const cplx> singularities,
                     const IntegratorConfig& cfg) {
    if (singularities.empty()) return;
    const double d = min_distance(path, singularities);
    if (d < cfg.clearance) {
        std::ostringstream os;
        os << "path passes within " << d << " of a singularity (clearance " << cfg.clearance
           << ")";
        throw SingularityTooClose(os.str());
    }
}

} // namespace frwmono
