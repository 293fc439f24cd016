#pragma once

#include <string>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

#include "frwmono/polyfield.hpp"

namespace frwmono {

using Rat = boost::multiprecision::cpp_rational;

/// H = (p1^2+p2^2)/2 + k(q1^2+q2^2)/2 + Lambda q1^4/4 - m^2 q1^2 q2^2 / 2
///     + lambda q2^4/4, state ordered (q1, q2, p1, p2).
struct FrwParams {
    int curvature = 1; // k in {-1, 0, +1}
    cplx Lambda = cplx(1.0, 0.0);
    cplx lambda = cplx(1.0, 0.0);
    double m = 1.0;
};

PolyVectorField frw_field(const FrwParams& prm);
cplx hamiltonian(const FrwParams& prm, const Eigen::VectorXcd& z);

/// Exact rational multiple of m^2.
struct RationalParam {
    Rat coeff;
    double value(double m = 1.0) const;
};

RationalParam mu(const Rat& p);  // -2 m^2 / ((p+1)(p+2))
RationalParam mu1(const Rat& p); // -72 m^2 / ((12p+1)(12p+7))
RationalParam mu2(const Rat& p); // -m^2 / (p(2p-1))
RationalParam mu3(const Rat& p); // -8 m^2 / ((4p+1)(4p+3))

struct ParticularSolution {
    Eigen::VectorXcd ivp;            // state at t = 0
    cplx t_star;                     // nearest singularity
    std::vector<cplx> singularities; // lattice points with |t| <= window
};

/// k=+1 straight-axis solution (tanh/sech pair), poles i pi (2j+1)/sqrt(2).
ParticularSolution sol1(cplx Lambda, double window = 25.0);
Eigen::VectorXcd sol1_eval(cplx Lambda, cplx t);

/// k=0 homographic solution sqrt(2/Lambda)(sn(t,i), 0, cn dn, 0);
/// poles t* + 2 K_i (p + i q), t* = K_i (1+i).
ParticularSolution sol2(cplx Lambda, double window = 25.0);

/// Real quarter period K_i of sn(., i); t* = K_i (1 + i).
double sn_quarter_period();

struct DarbouxPoint {
    cplx c1, c2;
    cplx alpha2; // non-trivial eigenvalue of V4'' at the point (the other is 3)
    int family;  // 2: (+-Lambda^{-1/2},0); 3: mixed; 4: (0,+-lambda^{-1/2})
};

/// The eight solutions of V4'(c) = c. Throws DegenerateDarboux if
/// lambda*Lambda = m^4 (the mixed family blows up).
std::vector<DarbouxPoint> darboux_points(cplx Lambda, cplx lambda, double m = 1.0);

/// alpha_23 eigenvalue in units of m^2: (3ab+2a+2b+1)/(ab-1) for a = Lambda/m^2,
/// b = lambda/m^2. Throws DegenerateDarboux when ab = 1.
Rat alpha23_exact(const Rat& a, const Rat& b);

struct SetWitness {
    std::string set; // "S1", "S2" or "S3"
    long long p;
};

/// Exact membership of alpha in S1 = {(1+12p)(7+12p)/72}, S2 = {p(2p-1)},
/// S3 = {(1+4p)(3+4p)/8} over integer p, solving each quadratic exactly.
/// Witness is the integer root of smallest |p| (positive on ties).
std::vector<SetWitness> table_membership(const Rat& alpha);

enum class MuFamily { mu1, mu2, mu3 };

/// First-order monodromy template around +-t* for Lambda = mu_i(p), Eq. (3.9):
/// mu2 -> Id, mu3 -> diag(1,-1,1,-1), mu1 -> free real parameter a in the
/// (q2,p2) block. sign picks the pole (+1 for t*, -1 for -t*).
Eigen::Matrix4cd expected_monodromy_form(MuFamily fam, double a = 1.0, int sign = +1);

struct TemplateFit {
    double a = 0.0;
    double residual = 0.0;
};

/// Fits the mu1 template parameter a to a numeric monodromy matrix and
/// reports the sup-norm residual.
TemplateFit fit_mu1_template(const Eigen::Matrix4cd& M, int sign = +1);

// ---- exact sweep over the exceptional families (classify.cpp) ----

struct SweepHit {
    int i, j; // families: Lambda = mu_i(p), lambda = mu_j(q)
    int p, q;
    Rat alpha;
    std::string set;
    long long witness;
};

struct FamilyLine {
    int i, j;
    bool fixed_q; // true: column q = fixed, varying p; false: row p = fixed
    int fixed;
    Rat alpha;
    std::string set;
    long long witness;
};

struct ClassifyReport {
    int p_min, p_max, q_min, q_max;
    std::vector<std::array<int, 4>> degenerate; // (i,j,p,q) with ab = 1
    std::vector<SweepHit> hits;                 // ordered by (i,j,p,q,set)
    std::vector<FamilyLine> families;           // full rows/columns
    std::vector<SweepHit> isolated;             // hits outside any family
};

/// Sweeps alpha_23(mu_i(p), mu_j(q)) for i <= j over the integer window and
/// collects table memberships, full families, and isolated hits.
ClassifyReport classify_k0(int p_min, int p_max, int q_min, int q_max);

/// Deterministic text report (findings, known integrable list, open list,
/// then a [csv] section with one row per hit).
std::string render_classify_report(const ClassifyReport& rep);

} // namespace frwmono
