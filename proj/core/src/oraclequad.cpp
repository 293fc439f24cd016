#include "frwmono/oraclequad.hpp"

#include <cmath>

#include "frwmono/errors.hpp"

namespace frwmono {

namespace {

const cplx I(0.0, 1.0);
const double SQ2 = std::sqrt(2.0);

// States: q1 p1 f1 f1' f2 f2' g1 g1' g2 g2' F14 F15 F229 F230 F321 F322 K.
constexpr int NS = 17;

Eigen::VectorXcd oracle_ivp(cplx p1) {
    Eigen::VectorXcd y = Eigen::VectorXcd::Zero(NS);
    y[1] = p1;
    y[2] = 1.0; // f1
    y[5] = 1.0; // f2'
    y[6] = 1.0; // g1
    y[9] = 1.0; // g2'
    return y;
}

QuadratureResult run_oracle(const OdeRhs& rhs, const Eigen::VectorXcd& y0,
                            const PolygonalPath& loop_p, const PolygonalPath& loop_m,
                            const IntegratorConfig& cfg) {
    const PolygonalPath loop = commutator_path(loop_p, loop_m);
    Eigen::VectorXcd y = y0;

    QuadratureResult res{cplx(0.0, 0.0), 0.0, 0.0};
    cplx k_prev = y0[16];
    StepObserver obs = [&res, &k_prev](cplx, const Eigen::VectorXcd& s) {
        res.abs_scale += std::abs(s[16] - k_prev);
        k_prev = s[16];
        const cplx wf = s[2] * s[5] - s[4] * s[3];
        const cplx wg = s[6] * s[9] - s[8] * s[7];
        const double drift = std::max(std::abs(wf - 1.0), std::abs(wg - 1.0));
        res.wronskian_drift = std::max(res.wronskian_drift, drift);
        if (drift > 1e-8)
            throw WronskianDrift("quadrature carrier Wronskian left 1 beyond 1e-8");
    };
    integrate_path(rhs, loop, y, cfg, &obs);
    res.K = y[16];
    return res;
}

} // namespace

QuadratureResult k436_k1(cplx Lambda, cplx lambda, double m, const PolygonalPath& loop_p,
                         const PolygonalPath& loop_m, const IntegratorConfig& cfg) {
    const cplx s = std::sqrt(Lambda);
    const double m2 = m * m, m4 = m2 * m2, m6 = m4 * m2;
    OdeRhs rhs = [=](cplx, const Eigen::VectorXcd& y, Eigen::VectorXcd& dy) {
        const cplx q1 = y[0], p1 = y[1];
        const cplx f1 = y[2], f1d = y[3], f2 = y[4], f2d = y[5];
        const cplx g1 = y[6], g1d = y[7], g2 = y[8], g2d = y[9];
        const cplx F14 = y[10], F15 = y[11], F229 = y[12], F230 = y[13];
        const cplx F321 = y[14], F322 = y[15];

        const cplx af = -1.0 - 3.0 * Lambda * q1 * q1;
        const cplx ag = -1.0 + m2 * q1 * q1;
        const cplx tau = I * s * q1; // tanh(t/sqrt(2)) continued along the path
        const cplx G13 = f1 * F15 - F14 * f2;
        const cplx G215 = 6.0 * F229 * g1 + Lambda * F230 * g2;
        const cplx G311 = f2 * F321 - f1 * F322;
        const cplx core =
            3.0 * Lambda * m2 * G13 * g1 * g1 - (9.0 * Lambda * m2 * G13 * G13 + G215 * g1) * tau;

        dy.resize(NS);
        dy[0] = p1;
        dy[1] = -q1 - Lambda * q1 * q1 * q1;
        dy[2] = f1d;
        dy[3] = af * f1;
        dy[4] = f2d;
        dy[5] = af * f2;
        dy[6] = g1d;
        dy[7] = ag * g1;
        dy[8] = g2d;
        dy[9] = ag * g2;
        dy[10] = f1 * g1 * g1 * tau;
        dy[11] = f2 * g1 * g1 * tau;
        dy[12] = g2 * (lambda * Lambda * g1 * g1 * g1 - 2.0 * m4 * G13 * g1 * tau);
        dy[13] = 12.0 * m4 * G13 * g1 * g1 * tau / Lambda - 6.0 * lambda * g1 * g1 * g1 * g1;
        dy[14] = f1 * core;
        dy[15] = f2 * core;
        dy[16] = 20.0 * g1 *
                 (-3.0 * Lambda * g1 * (2.0 * m6 * G13 * G13 + lambda * G215 * g1) +
                  2.0 * m4 * (G13 * G215 + 2.0 * G311 * g1) * tau) /
                 (Lambda * Lambda);
    };
    return run_oracle(rhs, oracle_ivp(-I / (SQ2 * s)), loop_p, loop_m, cfg);
}

QuadratureResult k436_k0(cplx Lambda, cplx lambda, double m, const PolygonalPath& loop_p,
                         const PolygonalPath& loop_m, const IntegratorConfig& cfg) {
    const cplx s = std::sqrt(Lambda);
    const cplx p10 = SQ2 / s;
    const double m2 = m * m, m4 = m2 * m2, m6 = m4 * m2;
    OdeRhs rhs = [=](cplx, const Eigen::VectorXcd& y, Eigen::VectorXcd& dy) {
        const cplx q1 = y[0], p1 = y[1];
        const cplx f1 = y[2], f1d = y[3], f2 = y[4], f2d = y[5];
        const cplx g1 = y[6], g1d = y[7], g2 = y[8], g2d = y[9];
        const cplx F14 = y[10], F15 = y[11], F229 = y[12], F230 = y[13];
        const cplx F321 = y[14], F322 = y[15];

        const cplx sn = q1 / p10; // sn(t, i) continued along the path
        const cplx af = -3.0 * Lambda * q1 * q1;
        const cplx ag = m2 * q1 * q1;
        const cplx G13 = -f1 * F15 + F14 * f2;
        const cplx G215 = 6.0 * F229 * g1 / Lambda + F230 * g2;
        const cplx G311 = f2 * F321 + f1 * F322;
        const cplx core =
            3.0 * m2 * G13 * g1 * g1 + (-18.0 * m2 * G13 * G13 + G215 * g1) * sn;

        dy.resize(NS);
        dy[0] = p1;
        dy[1] = -Lambda * q1 * q1 * q1;
        dy[2] = f1d;
        dy[3] = af * f1;
        dy[4] = f2d;
        dy[5] = af * f2;
        dy[6] = g1d;
        dy[7] = ag * g1;
        dy[8] = g2d;
        dy[9] = ag * g2;
        dy[10] = f1 * g1 * g1 * sn;
        dy[11] = f2 * g1 * g1 * sn;
        dy[12] = g2 * (lambda * Lambda * g1 * g1 * g1 - 4.0 * m4 * G13 * g1 * sn);
        dy[13] = -6.0 * lambda * g1 * g1 * g1 * g1 + 24.0 * m4 * G13 * g1 * g1 * sn / Lambda;
        dy[14] = f1 * core;
        dy[15] = -f2 * core;
        dy[16] = 20.0 * g1 *
                 (-3.0 * g1 * (-4.0 * m6 * G13 * G13 + lambda * Lambda * G215 * g1) +
                  4.0 * m4 * (G13 * G215 + 2.0 * G311 * g1) * sn) /
                 Lambda;
    };
    return run_oracle(rhs, oracle_ivp(p10), loop_p, loop_m, cfg);
}

Eigen::Vector4cd eval_f_pair_k1(cplx t) {
    const cplx u = t / SQ2;
    const cplx sech = 1.0 / std::cosh(u);
    const cplx sech2 = sech * sech;
    const cplx th = std::tanh(u);
    Eigen::Vector4cd f;
    f[0] = sech2;
    f[1] = -SQ2 * sech2 * th;
    f[2] = (3.0 * t * sech2 + SQ2 * (std::sinh(SQ2 * t) + 3.0 * th)) / 8.0;
    f[3] = (6.0 * sech2 + 2.0 * std::cosh(SQ2 * t) - 3.0 * SQ2 * t * sech2 * th) / 8.0;
    return f;
}

} // namespace frwmono
