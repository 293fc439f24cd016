#include "frwmono/frwmodel.hpp"

#include <cmath>

#include "frwmono/errors.hpp"

namespace frwmono {

namespace {

const cplx I(0.0, 1.0);
const double SQ2 = std::sqrt(2.0);

void add_term(std::vector<PolyTerm>& terms, cplx coeff, std::vector<int> exps) {
    if (coeff != cplx(0.0, 0.0)) terms.push_back(PolyTerm{coeff, ExponentVector{std::move(exps)}});
}

} // namespace

PolyVectorField frw_field(const FrwParams& prm) {
    const double k = static_cast<double>(prm.curvature);
    const double m2 = prm.m * prm.m;
    PolyVectorField X;
    X.n = 4;
    X.components.resize(4);
    add_term(X.components[0], cplx(1.0, 0.0), {0, 0, 1, 0});
    add_term(X.components[1], cplx(1.0, 0.0), {0, 0, 0, 1});
    add_term(X.components[2], cplx(-k, 0.0), {1, 0, 0, 0});
    add_term(X.components[2], -prm.Lambda, {3, 0, 0, 0});
    add_term(X.components[2], cplx(m2, 0.0), {1, 2, 0, 0});
    add_term(X.components[3], cplx(-k, 0.0), {0, 1, 0, 0});
    add_term(X.components[3], -prm.lambda, {0, 3, 0, 0});
    add_term(X.components[3], cplx(m2, 0.0), {2, 1, 0, 0});
    return X;
}

cplx hamiltonian(const FrwParams& prm, const Eigen::VectorXcd& z) {
    if (z.size() != 4) throw ShapeMismatch("hamiltonian: state must have 4 components");
    const cplx q1 = z[0], q2 = z[1], p1 = z[2], p2 = z[3];
    const double k = static_cast<double>(prm.curvature);
    const double m2 = prm.m * prm.m;
    return 0.5 * (p1 * p1 + p2 * p2) + 0.5 * k * (q1 * q1 + q2 * q2) +
           prm.Lambda * q1 * q1 * q1 * q1 / 4.0 - 0.5 * m2 * q1 * q1 * q2 * q2 +
           prm.lambda * q2 * q2 * q2 * q2 / 4.0;
}

double RationalParam::value(double m) const {
    return coeff.convert_to<double>() * m * m;
}

RationalParam mu(const Rat& p) {
    const Rat den = (p + 1) * (p + 2);
    if (den == 0) throw PoleInFamily("mu: pole at p = -1 or p = -2");
    return RationalParam{Rat(-2) / den};
}

RationalParam mu1(const Rat& p) {
    const Rat den = (12 * p + 1) * (12 * p + 7);
    if (den == 0) throw PoleInFamily("mu1: pole at p = -1/12 or p = -7/12");
    return RationalParam{Rat(-72) / den};
}

RationalParam mu2(const Rat& p) {
    const Rat den = p * (2 * p - 1);
    if (den == 0) throw PoleInFamily("mu2: pole at p = 0 or p = 1/2");
    return RationalParam{Rat(-1) / den};
}

RationalParam mu3(const Rat& p) {
    const Rat den = (4 * p + 1) * (4 * p + 3);
    if (den == 0) throw PoleInFamily("mu3: pole at p = -1/4 or p = -3/4");
    return RationalParam{Rat(-8) / den};
}

ParticularSolution sol1(cplx Lambda, double window) {
    if (Lambda == cplx(0.0, 0.0)) throw Error("sol1: Lambda must be nonzero");
    const cplx s = std::sqrt(Lambda);
    ParticularSolution sol;
    sol.ivp = Eigen::VectorXcd::Zero(4);
    sol.ivp[2] = -I / (SQ2 * s);
    sol.t_star = I * M_PI / SQ2;
    for (int j = 0;; ++j) {
        const double y = M_PI * (2 * j + 1) / SQ2;
        if (y > window) break;
        sol.singularities.push_back(cplx(0.0, y));
        sol.singularities.push_back(cplx(0.0, -y));
    }
    return sol;
}

Eigen::VectorXcd sol1_eval(cplx Lambda, cplx t) {
    const cplx s = std::sqrt(Lambda);
    const cplx u = t / SQ2;
    const cplx sech = 1.0 / std::cosh(u);
    Eigen::VectorXcd z = Eigen::VectorXcd::Zero(4);
    z[0] = -I / s * std::tanh(u);
    z[2] = -I / (SQ2 * s) * sech * sech;
    return z;
}

double sn_quarter_period() {
    double a = 1.0, b = 1.0 / SQ2;
    for (int it = 0; it < 40; ++it) {
        const double an = 0.5 * (a + b);
        b = std::sqrt(a * b);
        a = an;
    }
    return M_PI / (2.0 * a) / SQ2;
}

ParticularSolution sol2(cplx Lambda, double window) {
    if (Lambda == cplx(0.0, 0.0)) throw Error("sol2: Lambda must be nonzero");
    const cplx s = std::sqrt(Lambda);
    ParticularSolution sol;
    sol.ivp = Eigen::VectorXcd::Zero(4);
    sol.ivp[2] = SQ2 / s;
    const double Ki = sn_quarter_period();
    sol.t_star = cplx(Ki, Ki);
    const int span = static_cast<int>(window / (2.0 * Ki)) + 2;
    for (int p = -span; p <= span; ++p)
        for (int q = -span; q <= span; ++q) {
            const cplx pole = sol.t_star + 2.0 * Ki * cplx(p, q);
            if (std::abs(pole) <= window) sol.singularities.push_back(pole);
        }
    return sol;
}

std::vector<DarbouxPoint> darboux_points(cplx Lambda, cplx lambda, double m) {
    if (Lambda == cplx(0.0, 0.0) || lambda == cplx(0.0, 0.0))
        throw Error("darboux_points: Lambda and lambda must be nonzero");
    const double m2 = m * m;
    const cplx m4(m2 * m2, 0.0);
    const cplx den = lambda * Lambda - m4;
    if (den == cplx(0.0, 0.0))
        throw DegenerateDarboux("darboux_points: lambda*Lambda = m^4");

    std::vector<DarbouxPoint> pts;
    const cplx a2_axis1 = -m2 / Lambda;
    const cplx a2_mixed = (3.0 * lambda * Lambda + 2.0 * lambda * m2 + 2.0 * Lambda * m2 + m4) / den;
    const cplx a2_axis2 = -m2 / lambda;

    const cplx r1 = 1.0 / std::sqrt(Lambda);
    pts.push_back({r1, 0.0, a2_axis1, 2});
    pts.push_back({-r1, 0.0, a2_axis1, 2});

    const cplx c1 = std::sqrt((lambda + m2) / den);
    const cplx c2 = std::sqrt((Lambda + m2) / den);
    pts.push_back({c1, c2, a2_mixed, 3});
    pts.push_back({c1, -c2, a2_mixed, 3});
    pts.push_back({-c1, c2, a2_mixed, 3});
    pts.push_back({-c1, -c2, a2_mixed, 3});

    const cplx r2 = 1.0 / std::sqrt(lambda);
    pts.push_back({0.0, r2, a2_axis2, 4});
    pts.push_back({0.0, -r2, a2_axis2, 4});
    return pts;
}

Rat alpha23_exact(const Rat& a, const Rat& b) {
    const Rat den = a * b - 1;
    if (den == 0) throw DegenerateDarboux("alpha23_exact: ab = 1");
    return (3 * a * b + 2 * a + 2 * b + 1) / den;
}

std::vector<SetWitness> table_membership(const Rat& alpha) {
    using boost::multiprecision::cpp_int;
    std::vector<SetWitness> out;
    const Rat t = 8 * alpha + 1;
    if (t < 0) return out;
    const cpp_int U = numerator(t), V = denominator(t);
    const cpp_int ru = sqrt(U), rv = sqrt(V);
    if (ru * ru != U || rv * rv != V) return out;
    const Rat r(ru, rv);

    auto add = [&out](const char* name, std::initializer_list<Rat> cands) {
        bool have = false;
        long long best = 0;
        for (const Rat& c : cands) {
            if (denominator(c) != 1) continue;
            const long long w = numerator(c).convert_to<long long>();
            if (!have || std::llabs(w) < std::llabs(best) ||
                (std::llabs(w) == std::llabs(best) && w > best)) {
                best = w;
                have = true;
            }
        }
        if (have) out.push_back(SetWitness{name, best});
    };
    add("S1", {(Rat(-4) + 3 * r) / 12, (Rat(-4) - 3 * r) / 12});
    add("S2", {(Rat(1) + r) / 4, (Rat(1) - r) / 4});
    add("S3", {(Rat(-2) + r) / 4, (Rat(-2) - r) / 4});
    return out;
}

Eigen::Matrix4cd expected_monodromy_form(MuFamily fam, double a, int sign) {
    Eigen::Matrix4cd M = Eigen::Matrix4cd::Identity();
    switch (fam) {
    case MuFamily::mu2:
        break;
    case MuFamily::mu3:
        M(1, 1) = -1.0;
        M(3, 3) = -1.0;
        break;
    case MuFamily::mu1: {
        const double s = sign >= 0 ? 1.0 : -1.0;
        const cplx w = s * cplx(a, -a);
        M(1, 1) = cplx(0.5, -0.5);
        M(1, 3) = w;
        M(3, 1) = -1.0 / (2.0 * w);
        M(3, 3) = cplx(0.5, 0.5);
        break;
    }
    }
    return M;
}

TemplateFit fit_mu1_template(const Eigen::Matrix4cd& M, int sign) {
    const double s = sign >= 0 ? 1.0 : -1.0;
    TemplateFit fit;
    fit.a = s * (M(1, 3).real() - M(1, 3).imag()) / 2.0;
    const Eigen::Matrix4cd T = expected_monodromy_form(MuFamily::mu1, fit.a, sign);
    fit.residual = (M - T).cwiseAbs().maxCoeff();
    return fit;
}

} // namespace frwmono
