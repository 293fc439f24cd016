#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <array>
#include <complex>
#include <cstdio>
#include <fstream>
#include <numbers>
#include <random>
#include <sstream>
#include <sys/wait.h>

#include "frwmono/frwmodel.hpp"
#include "frwmono/jetflow.hpp"
#include "frwmono/linmono.hpp"
#include "frwmono/oraclequad.hpp"

using namespace frwmono;

namespace {

SymMap random_sym_map(int n, int in_deg, int out_deg, std::mt19937& rng) {
    std::uniform_real_distribution<double> u(-1.0, 1.0);
    SymMap f{n, in_deg, out_deg,
             Eigen::MatrixXcd(sym_dim(n, out_deg), sym_dim(n, in_deg))};
    for (Eigen::Index r = 0; r < f.m.rows(); ++r)
        for (Eigen::Index c = 0; c < f.m.cols(); ++c) f.m(r, c) = cplx(u(rng), u(rng));
    return f;
}

Eigen::VectorXcd random_vec(int n, std::mt19937& rng, double scale = 1.0) {
    std::uniform_real_distribution<double> u(-scale, scale);
    Eigen::VectorXcd v(n);
    for (int i = 0; i < n; ++i) v[i] = cplx(u(rng), u(rng));
    return v;
}

PolyVectorField random_quadratic_field(int n, std::mt19937& rng, double scale = 0.3) {
    std::uniform_real_distribution<double> u(-scale, scale);
    PolyVectorField X;
    X.n = n;
    X.components.resize(n);
    for (int i = 0; i < n; ++i)
        for (int d = 0; d <= 2; ++d)
            for (const auto& mono : monomial_basis(n, d))
                X.components[i].push_back({cplx(u(rng), u(rng)), mono});
    return X;
}

double rel_err(const Eigen::MatrixXcd& got, const Eigen::MatrixXcd& want) {
    const double scale = std::max(1e-300, sup_norm(want));
    return sup_norm(got - want) / scale;
}

} // namespace

TEST_SUITE("symtensor") {

TEST_CASE("dimensions and counting") {
    CHECK(binomial(5, 2) == 10);
    CHECK(binomial(8, 0) == 1);
    const std::array<int, 2> a23{2, 3};
    CHECK(multinomial(5, a23) == 10);
    const std::array<int, 3> a112{1, 1, 2};
    CHECK(multinomial(4, a112) == 12);

    const int d[5] = {4, 10, 20, 35, 56};
    int total = 0;
    for (int k = 1; k <= 5; ++k) {
        CHECK(sym_dim(4, k) == d[k - 1]);
        total += d[k - 1];
    }
    CHECK(total == 125);
    CHECK(sym_dim(2, 3) == 4);
    CHECK(sym_dim(1, 7) == 1);
}

TEST_CASE("monomial basis order and index round trip") {
    const auto& b22 = monomial_basis(2, 2);
    REQUIRE(b22.size() == 3);
    CHECK(b22[0].exponents == std::vector<int>{2, 0});
    CHECK(b22[1].exponents == std::vector<int>{1, 1});
    CHECK(b22[2].exponents == std::vector<int>{0, 2});

    const auto& b45 = monomial_basis(4, 5);
    REQUIRE(static_cast<int>(b45.size()) == 56);
    for (int i = 0; i < 56; ++i) {
        CHECK(b45[i].degree() == 5);
        CHECK(basis_index(4, 5, b45[i].exponents) == i);
    }
    // descending first coordinate: (5,0,0,0) first, (0,0,0,5) last
    CHECK(b45.front().exponents == std::vector<int>{5, 0, 0, 0});
    CHECK(b45.back().exponents == std::vector<int>{0, 0, 0, 5});
}

TEST_CASE("faa coefficients and partitions") {
    const std::array<int, 2> p14{1, 4};
    const std::array<int, 2> p23{2, 3};
    const std::array<int, 3> p122{1, 2, 2};
    const std::array<int, 3> p113{1, 1, 3};
    CHECK(faa_coeff(p14) == 5);
    CHECK(faa_coeff(p23) == 10);
    CHECK(faa_coeff(p122) == 15);
    CHECK(faa_coeff(p113) == 10);

    CHECK(partitions(5).size() == 7);
    long long bell = 0;
    for (const auto& parts : partitions(8)) bell += faa_coeff(parts);
    CHECK(bell == 4140);
}

TEST_CASE("sym_power convolution identity") {
    std::mt19937 rng(7);
    const Eigen::VectorXcd u = random_vec(4, rng);
    const SymVector u2 = sym_power(u, 2), u3 = sym_power(u, 3);
    const SymVector prod = sym_vec_product(u2, u3);
    const SymVector u5 = sym_power(u, 5);
    REQUIRE(prod.deg == 5);
    CHECK((prod.coeffs - u5.coeffs).cwiseAbs().maxCoeff() <
          1e-12 * u5.coeffs.cwiseAbs().maxCoeff());
}

TEST_CASE("identity map products") {
    const SymMap id1 = identity_map(4, 1);
    const SymMap id2 = sym_map_product(id1, id1);
    CHECK(id2.in_deg == 2);
    CHECK(id2.out_deg == 2);
    CHECK((id2.m - Eigen::MatrixXcd::Identity(10, 10)).cwiseAbs().maxCoeff() == 0.0);

    const SymMap z = zero_map(4, 2, 1);
    CHECK(z.m.rows() == 4);
    CHECK(z.m.cols() == 10);
    CHECK(z.m.cwiseAbs().maxCoeff() == 0.0);
}

TEST_CASE("sym_map_product laws") {
    std::mt19937 rng(11);
    const SymMap F = random_sym_map(3, 1, 1, rng);
    const SymMap G = random_sym_map(3, 2, 1, rng);
    const SymMap H = random_sym_map(3, 1, 2, rng);

    const SymMap FG = sym_map_product(F, G), GF = sym_map_product(G, F);
    CHECK(rel_err(FG.m, GF.m) < 1e-13);

    const SymMap a = sym_map_product(sym_map_product(F, G), H);
    const SymMap b = sym_map_product(F, sym_map_product(G, H));
    CHECK(rel_err(a.m, b.m) < 1e-12);
}

TEST_CASE("sym_map_product defining property") {
    std::mt19937 rng(13);
    for (int trial = 0; trial < 5; ++trial) {
        const SymMap F = random_sym_map(4, 2, 1, rng);
        const SymMap G = random_sym_map(4, 3, 2, rng);
        const Eigen::VectorXcd u = random_vec(4, rng);
        const SymMap FG = sym_map_product(F, G);
        const SymVector lhs = apply(FG, sym_power(u, 5));
        const SymVector rhs =
            sym_vec_product(apply(F, sym_power(u, 2)), apply(G, sym_power(u, 3)));
        CHECK((lhs.coeffs - rhs.coeffs).cwiseAbs().maxCoeff() <
              1e-12 * rhs.coeffs.cwiseAbs().maxCoeff());
    }
}

} // symtensor

TEST_SUITE("cpath") {

TEST_CASE("hexagon geometry") {
    const PolygonalPath h = hexagon_path(+1);
    REQUIRE(h.vertices.size() == 7);
    CHECK(h.closed());
    const cplx pole(0.0, std::numbers::pi / std::numbers::sqrt2);
    CHECK(winding_number(h, pole) == 1);
    CHECK(winding_number(h, -pole) == 0);
    CHECK(winding_number(hexagon_path(-1), -pole) == 1);

    const std::vector<cplx> poles{pole, -pole, 3.0 * pole, -3.0 * pole};
    CHECK(min_distance(h, poles) > 0.3);
}

TEST_CASE("spoon geometry") {
    const cplx ts = sol2(cplx(-1.0, 0.0)).t_star;
    const PolygonalPath s = spoon_path(ts, +1);
    REQUIRE(s.vertices.size() == 7);
    CHECK(s.closed());
    CHECK(winding_number(s, ts) == 1);
    CHECK(winding_number(s, -ts) == 0);
}

TEST_CASE("square path") {
    const PolygonalPath s = square_path(cplx(2.0, 2.0), 0.5);
    CHECK(s.closed());
    CHECK(winding_number(s, cplx(2.0, 2.0)) == 1);
}

TEST_CASE("inverse, concat, commutator word") {
    const PolygonalPath g1 = hexagon_path(+1), g2 = hexagon_path(-1);
    const PolygonalPath c = commutator_path(g1, g2);
    REQUIRE(c.vertices.size() == 25);
    CHECK(c.closed());
    // g1 traversed first, then g2, then the inverses
    CHECK(std::abs(c.vertices[1] - g1.vertices[1]) == 0.0);
    CHECK(std::abs(c.vertices[7] - g2.vertices[1]) == 0.0);
    CHECK(std::abs(c.vertices[13] - g1.vertices[5]) == 0.0);
    CHECK(c.length() == doctest::Approx(2 * g1.length() + 2 * g2.length()));

    const PolygonalPath detached{{cplx(5, 5), cplx(6, 6)}};
    CHECK_THROWS_AS(concat(g1, detached), PathMismatch);
    CHECK_THROWS_AS(commutator_path(detached, g2), PathMismatch);
}

TEST_CASE("path io round trip") {
    const PolygonalPath h = hexagon_path(+1);
    std::stringstream ss;
    write_path(ss, h);
    const PolygonalPath r = read_path(ss);
    REQUIRE(r.vertices.size() == h.vertices.size());
    for (size_t i = 0; i < h.vertices.size(); ++i)
        CHECK(std::abs(r.vertices[i] - h.vertices[i]) < 1e-15);

    std::stringstream bad("# only a comment\n");
    CHECK_THROWS_AS(read_path(bad), PathMismatch);
}

} // cpath

TEST_SUITE("polyfield") {

TEST_CASE("frw field components") {
    const FrwParams prm{1, cplx(-0.5, 0.0), cplx(-0.25, 0.0), 1.0};
    const PolyVectorField X = frw_field(prm);
    CHECK(X.degree() == 3);
    std::mt19937 rng(3);
    const Eigen::VectorXcd z = random_vec(4, rng);
    const Eigen::VectorXcd v = X.eval(z);
    const cplx q1 = z[0], q2 = z[1];
    CHECK(std::abs(v[0] - z[2]) < 1e-14);
    CHECK(std::abs(v[1] - z[3]) < 1e-14);
    CHECK(std::abs(v[2] - (-q1 - prm.Lambda * q1 * q1 * q1 + q1 * q2 * q2)) < 1e-13);
    CHECK(std::abs(v[3] - (-q2 - prm.lambda * q2 * q2 * q2 + q1 * q1 * q2)) < 1e-13);
}

TEST_CASE("derivative tensors give the exact Taylor expansion") {
    std::mt19937 rng(17);
    FrwParams prm{1, cplx(-0.4, 0.1), cplx(0.3, -0.2), 1.0};
    const PolyVectorField X = frw_field(prm);
    const Eigen::VectorXcd p = random_vec(4, rng), u = random_vec(4, rng);
    const auto A = deriv_tensors(X, p, 5);
    REQUIRE(A.size() == 5);
    CHECK(A[3].m.cwiseAbs().maxCoeff() == 0.0); // cubic field: A_4 = A_5 = 0
    CHECK(A[4].m.cwiseAbs().maxCoeff() == 0.0);

    Eigen::VectorXcd taylor = X.eval(p);
    double fact = 1.0;
    for (int j = 1; j <= 3; ++j) {
        fact *= j;
        taylor += apply(A[j - 1], sym_power(u, j)).coeffs / fact;
    }
    const Eigen::VectorXcd direct = X.eval(p + u);
    CHECK((taylor - direct).cwiseAbs().maxCoeff() < 1e-12 * direct.cwiseAbs().maxCoeff());
}

} // polyfield

TEST_SUITE("integrator") {

TEST_CASE("polynomial quadrature is exact") {
    // t^q has an 8th-order-exact update for q <= 7
    for (int q = 1; q <= 7; ++q) {
        const OdeRhs f = [q](cplx t, const Eigen::VectorXcd&, Eigen::VectorXcd& dy) {
            dy[0] = static_cast<double>(q) * std::pow(t, q - 1);
        };
        Eigen::VectorXcd y(1);
        y[0] = 0.0;
        IntegratorConfig cfg;
        cfg.initial_step = 1.0; // force single-step path
        cfg.rtol = 1e-3;
        integrate_segment(f, cplx(0, 0), cplx(1, 0), y, cfg);
        CHECK(std::abs(y[0] - 1.0) < 1e-12);
    }
}

TEST_CASE("exponential along real and complex segments") {
    const OdeRhs f = [](cplx, const Eigen::VectorXcd& y, Eigen::VectorXcd& dy) { dy = y; };
    Eigen::VectorXcd y(1);
    y[0] = 1.0;
    IntegratorConfig cfg;
    integrate_segment(f, cplx(0, 0), cplx(1, 0), y, cfg);
    CHECK(std::abs(y[0] - std::exp(1.0)) < 1e-12);

    y[0] = 1.0;
    integrate_segment(f, cplx(0, 0), cplx(0, std::numbers::pi), y, cfg);
    CHECK(std::abs(y[0] - cplx(-1.0, 0.0)) < 1e-11);
}

TEST_CASE("path integration and observer") {
    const OdeRhs f = [](cplx, const Eigen::VectorXcd& y, Eigen::VectorXcd& dy) { dy = y; };
    PolygonalPath p{{cplx(0, 0), cplx(0.5, 0.5), cplx(1.0, 0.0)}};
    Eigen::VectorXcd y(1);
    y[0] = 1.0;
    int calls = 0;
    const StepObserver obs = [&](cplx, const Eigen::VectorXcd&) { ++calls; };
    IntegratorConfig cfg;
    integrate_path(f, p, y, cfg, &obs);
    CHECK(std::abs(y[0] - std::exp(1.0)) < 1e-11); // path end is t = 1
    CHECK(calls > 0);

    PolygonalPath degenerate{{cplx(0, 0)}};
    CHECK_THROWS_AS(integrate_path(f, degenerate, y, cfg), PathMismatch);
}

TEST_CASE("clearance check") {
    const PolygonalPath h = hexagon_path(+1);
    const std::vector<cplx> far{cplx(10.0, 10.0)};
    IntegratorConfig cfg;
    CHECK_NOTHROW(check_clearance(h, far, cfg));
    const std::vector<cplx> on_path{cplx(1.2, 1.2)};
    CHECK_THROWS_AS(check_clearance(h, on_path, cfg), SingularityTooClose);
}

} // integrator

TEST_SUITE("jetflow") {

TEST_CASE("identity jet and flatten round trip") {
    std::mt19937 rng(23);
    const Eigen::VectorXcd base = random_vec(4, rng);
    JetState jet = identity_jet(base, 3);
    CHECK(jet.Y(1).m.isApprox(Eigen::MatrixXcd::Identity(4, 4)));
    CHECK(jet.Y(2).m.cwiseAbs().maxCoeff() == 0.0);
    CHECK(jet.Y(3).m.cwiseAbs().maxCoeff() == 0.0);

    jet.blocks[1] = random_sym_map(4, 2, 1, rng);
    jet.blocks[2] = random_sym_map(4, 3, 1, rng);
    const Eigen::VectorXcd flat = jet_flatten(jet);
    CHECK(flat.size() == static_cast<Eigen::Index>(jet_flat_size(4, 3)));
    const JetState back = jet_unflatten(flat, 4, 3, jet.t);
    CHECK((back.base - jet.base).cwiseAbs().maxCoeff() == 0.0);
    for (int k = 1; k <= 3; ++k)
        CHECK((back.Y(k).m - jet.Y(k).m).cwiseAbs().maxCoeff() == 0.0);
}

TEST_CASE("hierarchy right-hand side matches the hand formulas") {
    std::mt19937 rng(29);
    std::vector<SymMap> A, Y;
    for (int j = 1; j <= 3; ++j) A.push_back(random_sym_map(2, j, 1, rng));
    for (int k = 1; k <= 3; ++k) Y.push_back(random_sym_map(2, k, 1, rng));
    const auto dY = ve_blocks_rhs(A, Y);
    REQUIRE(dY.size() == 3);

    const Eigen::MatrixXcd d1 = A[0].m * Y[0].m;
    CHECK(rel_err(dY[0].m, d1) < 1e-14);

    const Eigen::MatrixXcd d2 = A[0].m * Y[1].m + A[1].m * sym_map_product(Y[0], Y[0]).m;
    CHECK(rel_err(dY[1].m, d2) < 1e-13);

    const Eigen::MatrixXcd d3 = A[0].m * Y[2].m +
                                3.0 * A[1].m * sym_map_product(Y[0], Y[1]).m +
                                A[2].m * sym_map_product(sym_map_product(Y[0], Y[0]), Y[0]).m;
    CHECK(rel_err(dY[2].m, d3) < 1e-13);
}

TEST_CASE("scalar riccati flow has a closed-form jet") {
    // x' = x^2 flows to x/(1-tx); d^k/dx^k = k! t^(k-1) (1-tx)^(-k-1)
    PolyVectorField X;
    X.n = 1;
    X.components.resize(1);
    X.components[0].push_back({cplx(1.0, 0.0), ExponentVector{{2}}});

    Eigen::VectorXcd ivp(1);
    ivp[0] = 0.1;
    const PolygonalPath seg{{cplx(0, 0), cplx(1.0, 0.0)}};
    IntegratorConfig cfg;
    const JetState jet = integrate_jet(X, ivp, seg, 5, cfg);

    const cplx x0 = 0.1, t = 1.0;
    const cplx den = 1.0 - t * x0;
    CHECK(std::abs(jet.base[0] - x0 / den) < 1e-13);
    double fact = 1.0;
    for (int k = 1; k <= 5; ++k) {
        fact *= k;
        const cplx want = fact * std::pow(t, k - 1) / std::pow(den, k + 1);
        CHECK(std::abs(jet.Y(k).m(0, 0) - want) < 1e-10 * std::abs(want));
    }
}

TEST_CASE("finite-difference oracle agrees with the transported jet") {
    std::mt19937 rng(31);
    const PolyVectorField X = random_quadratic_field(2, rng);
    const Eigen::VectorXcd ivp = random_vec(2, rng, 0.3);
    const PolygonalPath seg{{cplx(0, 0), cplx(0.5, 0.2)}};
    IntegratorConfig cfg;
    const JetState jet = integrate_jet(X, ivp, seg, 3, cfg);
    for (int k = 1; k <= 3; ++k) {
        const SymMap fd = flow_fd_oracle(X, ivp, seg, k, 0.02, cfg);
        CHECK(rel_err(fd.m, jet.Y(k).m) < 1e-3);
    }
}

} // jetflow

TEST_SUITE("linmono") {

TEST_CASE("block layout") {
    BlockFundamental M{4, 5, Eigen::MatrixXcd::Identity(125, 125)};
    CHECK(M.size() == 125);
    CHECK(M.group_offset(5) == 0);
    CHECK(M.group_offset(4) == 56);
    CHECK(M.group_offset(3) == 91);
    CHECK(M.group_offset(2) == 111);
    CHECK(M.group_offset(1) == 121);
}

TEST_CASE("bell assembly of the identity jet is the identity") {
    std::mt19937 rng(37);
    const JetState jet = identity_jet(random_vec(4, rng), 5);
    const BlockFundamental Phi = assemble_phi(jet);
    CHECK((Phi.m - Eigen::MatrixXcd::Identity(125, 125)).cwiseAbs().maxCoeff() == 0.0);
}

TEST_CASE("assembly blocks follow the multiset formula") {
    std::mt19937 rng(41);
    JetState jet = identity_jet(random_vec(3, rng), 5);
    for (int k = 1; k <= 5; ++k) jet.blocks[k - 1] = random_sym_map(3, k, 1, rng);
    const BlockFundamental Phi = assemble_phi(jet);

    // diagonal: Y_1^(r); (2,3) block: 3 Y_1 . Y_2; (1,c): Y_c
    const SymMap y11 = sym_map_product(jet.Y(1), jet.Y(1));
    const auto blk = [&](int r, int c) {
        return Phi.m.block(Phi.group_offset(r), Phi.group_offset(c), sym_dim(3, r),
                           sym_dim(3, c));
    };
    CHECK(rel_err(blk(1, 1), jet.Y(1).m) == 0.0); // order-1 corner is Y_1 itself
    CHECK(rel_err(blk(2, 2), y11.m) < 1e-14);
    CHECK(rel_err(blk(2, 3), 3.0 * sym_map_product(jet.Y(1), jet.Y(2)).m) < 1e-13);
    CHECK(rel_err(blk(1, 4), jet.Y(4).m) < 1e-14);
    CHECK(blk(3, 2).cwiseAbs().maxCoeff() == 0.0); // r > c vanishes
}

TEST_CASE("system matrix blocks") {
    std::mt19937 rng(43);
    std::vector<SymMap> A;
    for (int j = 1; j <= 5; ++j) A.push_back(random_sym_map(2, j, 1, rng));
    const BlockFundamental S = system_matrix(A, 5);

    const SymMap id = identity_map(2, 1);
    const SymMap id2 = sym_map_product(id, id);
    const SymMap id4 = sym_map_product(id2, id2);
    const auto blk = [&](int r, int c) {
        return S.m.block(S.group_offset(r), S.group_offset(c), sym_dim(2, r), sym_dim(2, c));
    };
    CHECK(rel_err(blk(3, 5), 10.0 * sym_map_product(A[2], id2).m) < 1e-13);
    CHECK(rel_err(blk(5, 5), 5.0 * sym_map_product(A[0], id4).m) < 1e-13);
    CHECK(rel_err(blk(1, 3), A[2].m) < 1e-14);
    CHECK(blk(3, 1).cwiseAbs().maxCoeff() == 0.0);
}

TEST_CASE("assembled fundamental matrix satisfies the linear system") {
    std::mt19937 rng(47);
    const PolyVectorField X = random_quadratic_field(2, rng);
    const Eigen::VectorXcd ivp = random_vec(2, rng, 0.3);
    IntegratorConfig cfg;
    const double h = 1e-4;
    const auto phi_at = [&](double t) {
        const PolygonalPath seg{{cplx(0, 0), cplx(t, 0)}};
        return assemble_phi(integrate_jet(X, ivp, seg, 4, cfg));
    };
    const BlockFundamental Pm = phi_at(0.5 - h), Pp = phi_at(0.5 + h), P0 = phi_at(0.5);
    const PolygonalPath seg{{cplx(0, 0), cplx(0.5, 0)}};
    const JetState jet = integrate_jet(X, ivp, seg, 4, cfg);
    const BlockFundamental S = system_matrix(deriv_tensors(X, jet.base, 4), 4);

    const Eigen::MatrixXcd fd = (Pp.m - Pm.m) / (2 * h);
    CHECK(sup_norm(fd - S.m * P0.m) < 1e-6);
}

TEST_CASE("restriction is multiplicative") {
    std::mt19937 rng(53);
    JetState j1 = identity_jet(random_vec(2, rng), 3), j2 = j1;
    for (int k = 1; k <= 3; ++k) {
        j1.blocks[k - 1] = random_sym_map(2, k, 1, rng);
        j2.blocks[k - 1] = random_sym_map(2, k, 1, rng);
    }
    const BlockFundamental P1 = assemble_phi(j1), P2 = assemble_phi(j2);
    BlockFundamental P12{2, 3, P2.m * P1.m};
    for (int k = 1; k <= 3; ++k) {
        const Eigen::MatrixXcd want = restrict_order(P2, k) * restrict_order(P1, k);
        CHECK(rel_err(restrict_order(P12, k), want) < 1e-12);
    }
    CHECK(restrict_order(P1, 3).rows() == P1.m.rows());
}

TEST_CASE("jet row capping and survivor order") {
    BlockFundamental M{2, 2, Eigen::MatrixXcd::Identity(5, 5)};
    M.m(3, 0) = cplx(1.0, 2.0);    // row 1 of the bottom block, degree-2 group
    M.m(4, 1) = cplx(0.0, 5e-9);   // row 2, degree-2 group
    M.m(4, 4) = 1.0 + 1e-12;       // below cap, zeroed
    const JetRow jr = jet_row(M, 1e-9);
    CHECK(jr.rows.rows() == 2);
    CHECK(jr.rows.cols() == 5);
    REQUIRE(jr.survivors.size() == 2);
    CHECK(jr.survivors[0].row == 1);
    CHECK(jr.survivors[0].col == 1);
    CHECK(jr.survivors[0].col_degree == 2);
    CHECK(jr.survivors[0].col_in_group == 1);
    CHECK(jr.survivors[1].row == 2);
    CHECK(jr.survivors[1].col == 2);
    CHECK(jr.survivors[1].col_in_group == 2);
    CHECK(std::abs(jr.rows(1, 4)) == 0.0);
}

TEST_CASE("obstruction entry selection") {
    JetRow jr;
    jr.n = 4;
    jr.order = 5;
    jr.cap = 1e-9;
    const cplx v(0.0, -847.0), w(0.0, 966.0), x(0.0, 1077.0), big(0.0, -4369.0);
    jr.survivors = {
        {4, 36, 5, 36, v},  {2, 38, 5, 38, -w}, {4, 41, 5, 41, w},
        {2, 45, 5, 45, -x}, {4, 50, 5, 50, x},  {2, 56, 5, 56, big},
    };
    CHECK(std::abs(k436_entry(jr) - v) == 0.0);

    JetRow empty;
    empty.order = 5;
    empty.survivors = {{2, 56, 5, 56, big}};
    CHECK_THROWS_AS(k436_entry(empty), NoObstruction);
}

TEST_CASE("matrix csv round trip") {
    std::mt19937 rng(59);
    Eigen::MatrixXcd m(3, 5);
    for (int r = 0; r < 3; ++r)
        for (int c = 0; c < 5; ++c)
            m(r, c) = cplx(std::uniform_real_distribution<double>(-1, 1)(rng),
                           std::uniform_real_distribution<double>(-1, 1)(rng));
    std::stringstream ss;
    write_matrix_csv(ss, m);
    const Eigen::MatrixXcd back = read_matrix_csv(ss);
    REQUIRE(back.rows() == 3);
    REQUIRE(back.cols() == 5);
    CHECK(sup_norm(back - m) < 1e-15);
}

} // linmono

TEST_SUITE("frwmodel") {

TEST_CASE("rational families") {
    CHECK(mu(Rat(0)).value() == doctest::Approx(-1.0));
    CHECK(mu(Rat(1)).value() == doctest::Approx(-1.0 / 3));
    CHECK(mu(Rat(3)).value(2.0) == doctest::Approx(-0.4)); // scales with m^2
    CHECK(mu1(Rat(2)).coeff == Rat(-72, 775));
    CHECK(mu2(Rat(1)).value() == doctest::Approx(-1.0));
    CHECK(mu3(Rat(0)).value() == doctest::Approx(-8.0 / 3));
    CHECK_THROWS_AS(mu2(Rat(0)), PoleInFamily);
    CHECK_THROWS_AS(mu(Rat(-1)), PoleInFamily);
}

TEST_CASE("tanh solution solves the flow and conserves energy") {
    const cplx Lambda(-0.17, 0.0);
    const FrwParams prm{1, Lambda, cplx(-0.9, 0.0), 1.0};
    const ParticularSolution sol = sol1(Lambda);
    CHECK((sol.ivp - sol1_eval(Lambda, cplx(0, 0))).cwiseAbs().maxCoeff() < 1e-14);
    CHECK(std::abs(sol.t_star - cplx(0.0, std::numbers::pi / std::numbers::sqrt2)) < 1e-14);

    const PolyVectorField X = frw_field(prm);
    const OdeRhs rhs = [&X](cplx, const Eigen::VectorXcd& y, Eigen::VectorXcd& dy) {
        dy = X.eval(y);
    };
    IntegratorConfig cfg;
    Eigen::VectorXcd y = sol.ivp;
    const PolygonalPath seg{{cplx(0, 0), cplx(1.2, 0.7)}};
    integrate_path(rhs, seg, y, cfg);
    CHECK((y - sol1_eval(Lambda, cplx(1.2, 0.7))).cwiseAbs().maxCoeff() < 1e-10);

    const cplx H0 = hamiltonian(prm, sol.ivp);
    CHECK(std::abs(H0 - cplx(-1.0 / (4.0 * Lambda.real()), 0.0)) < 1e-13);
    for (cplx t : {cplx(0.4, 0.9), cplx(-1.0, 0.3)})
        CHECK(std::abs(hamiltonian(prm, sol1_eval(Lambda, t)) - H0) < 1e-12);
}

TEST_CASE("sn solution period, poles and energy") {
    const double Ki = sn_quarter_period();
    CHECK(Ki == doctest::Approx(1.3110287771460596).epsilon(1e-13));
    const cplx Lambda(-0.27, 0.0);
    const ParticularSolution sol = sol2(Lambda);
    CHECK(std::abs(sol.t_star - Ki * cplx(1.0, 1.0)) < 1e-13);
    // every lattice point sits at t* + 2 Ki (p + i q)
    for (cplx s : sol.singularities) {
        const cplx rel = (s - sol.t_star) / (2 * Ki);
        CHECK(std::abs(rel.real() - std::round(rel.real())) < 1e-9);
        CHECK(std::abs(rel.imag() - std::round(rel.imag())) < 1e-9);
    }
    const FrwParams prm{0, Lambda, cplx(-1.0, 0.0), 1.0};
    CHECK(std::abs(hamiltonian(prm, sol.ivp) - 1.0 / Lambda) < 1e-12);

    // the orbit is periodic with period 4 K_i on the real axis
    const PolyVectorField X = frw_field(prm);
    const OdeRhs rhs = [&X](cplx, const Eigen::VectorXcd& y, Eigen::VectorXcd& dy) {
        dy = X.eval(y);
    };
    IntegratorConfig cfg;
    Eigen::VectorXcd y = sol.ivp;
    const PolygonalPath seg{{cplx(0, 0), cplx(4 * Ki, 0)}};
    integrate_path(rhs, seg, y, cfg);
    CHECK((y - sol.ivp).cwiseAbs().maxCoeff() < 1e-10);
}

TEST_CASE("darboux points satisfy the fixed-point equation") {
    const cplx Lambda(-0.31, 0.0), lambda(-0.83, 0.0);
    const double m = 1.0;
    const auto pts = darboux_points(Lambda, lambda, m);
    REQUIRE(pts.size() == 8);
    int fam2 = 0, fam3 = 0, fam4 = 0;
    for (const auto& d : pts) {
        const cplx g1 = Lambda * d.c1 * d.c1 * d.c1 - m * m * d.c1 * d.c2 * d.c2;
        const cplx g2 = lambda * d.c2 * d.c2 * d.c2 - m * m * d.c1 * d.c1 * d.c2;
        CHECK(std::abs(g1 - d.c1) < 1e-12);
        CHECK(std::abs(g2 - d.c2) < 1e-12);

        Eigen::Matrix2cd hess;
        hess << 3.0 * Lambda * d.c1 * d.c1 - m * m * d.c2 * d.c2, -2.0 * m * m * d.c1 * d.c2,
            -2.0 * m * m * d.c1 * d.c2, 3.0 * lambda * d.c2 * d.c2 - m * m * d.c1 * d.c1;
        const auto ev = hess.eigenvalues();
        const bool near0 = std::abs(ev[0] - cplx(3, 0)) < 1e-10;
        const cplx other = near0 ? ev[1] : ev[0];
        CHECK(std::abs((near0 ? ev[0] : ev[1]) - cplx(3, 0)) < 1e-10);
        CHECK(std::abs(other - d.alpha2) < 1e-10);
        fam2 += d.family == 2;
        fam3 += d.family == 3;
        fam4 += d.family == 4;
    }
    CHECK(fam2 == 2);
    CHECK(fam3 == 4);
    CHECK(fam4 == 2);

    CHECK_THROWS_AS(darboux_points(cplx(2.0, 0.0), cplx(0.5, 0.0), 1.0), DegenerateDarboux);
}

TEST_CASE("alpha23 agrees with the mixed darboux eigenvalue") {
    const Rat a(-31, 100), b(-83, 100);
    const Rat alpha = alpha23_exact(a, b);
    const auto pts = darboux_points(cplx(-0.31, 0.0), cplx(-0.83, 0.0));
    for (const auto& d : pts)
        if (d.family == 3)
            CHECK(std::abs(d.alpha2 - cplx(static_cast<double>(alpha), 0.0)) < 1e-10);
    CHECK_THROWS_AS(alpha23_exact(Rat(2), Rat(1, 2)), DegenerateDarboux);
}

TEST_CASE("table membership witnesses") {
    auto single = [](const Rat& alpha) {
        const auto w = table_membership(alpha);
        REQUIRE(w.size() == 1);
        return w.front();
    };
    CHECK(single(Rat(21)).set == "S2");
    CHECK(single(Rat(21)).p == -3);
    CHECK(single(Rat(35, 8)).set == "S3");
    CHECK(single(Rat(35, 8)).p == 1);
    CHECK(single(Rat(7, 72)).set == "S1");
    CHECK(single(Rat(7, 72)).p == 0);
    CHECK(single(Rat(0)).p == 0);
    CHECK(single(Rat(1)).p == 1); // positive root wins the tie
    CHECK(table_membership(Rat(2)).empty());
    CHECK(table_membership(Rat(6)).size() == 1); // 6 = p(2p-1) at p = 2
}

TEST_CASE("monodromy templates") {
    const Eigen::Matrix4cd id = expected_monodromy_form(MuFamily::mu2);
    CHECK((id - Eigen::Matrix4cd::Identity()).cwiseAbs().maxCoeff() == 0.0);
    const Eigen::Matrix4cd d = expected_monodromy_form(MuFamily::mu3);
    CHECK(std::abs(d(1, 1) - cplx(-1, 0)) == 0.0);
    CHECK(std::abs(d(3, 3) - cplx(-1, 0)) == 0.0);
    CHECK(std::abs(d(0, 0) - cplx(1, 0)) == 0.0);

    const double a = 0.659621;
    const Eigen::Matrix4cd t = expected_monodromy_form(MuFamily::mu1, a);
    const TemplateFit fit = fit_mu1_template(t);
    CHECK(fit.a == doctest::Approx(a).epsilon(1e-12));
    CHECK(fit.residual < 1e-12);
    // unit determinant in the (q2, p2) block
    const cplx det = t(1, 1) * t(3, 3) - t(1, 3) * t(3, 1);
    CHECK(std::abs(det - cplx(1, 0)) < 1e-12);
}

} // frwmodel

TEST_SUITE("classify") {

TEST_CASE("window stability and known findings") {
    const ClassifyReport r = classify_k0(-10, 10, -10, 10);
    REQUIRE(r.degenerate.size() == 1);
    CHECK(r.degenerate[0] == std::array<int, 4>{2, 2, 1, 1});

    int fam12 = 0, fam22 = 0, fam23 = 0;
    for (const auto& f : r.families) {
        if (f.i == 1 && f.j == 2) ++fam12;
        if (f.i == 2 && f.j == 2) ++fam22;
        if (f.i == 2 && f.j == 3) ++fam23;
        CHECK(f.alpha == Rat(1));
        CHECK(f.set == "S2");
    }
    CHECK(fam12 == 1);
    CHECK(fam22 == 2);
    CHECK(fam23 == 1);

    REQUIRE(r.isolated.size() == 7);
    int with_alpha21 = 0, with_alpha358 = 0, with_alpha6 = 0;
    for (const auto& h : r.isolated) {
        if (h.alpha == Rat(21)) {
            ++with_alpha21;
            CHECK(h.witness == -3);
        }
        if (h.alpha == Rat(35, 8)) {
            ++with_alpha358;
            CHECK(h.set == "S3");
        }
        if (h.alpha == Rat(6)) ++with_alpha6;
    }
    CHECK(with_alpha21 == 2);
    CHECK(with_alpha358 == 2);
    CHECK(with_alpha6 == 2);

    // the same isolated hits appear in a smaller window
    const ClassifyReport small = classify_k0(-9, 9, -9, 9);
    CHECK(small.isolated.size() == 7);
    CHECK(small.families.size() == r.families.size());
}

TEST_CASE("report rendering is deterministic") {
    const std::string a = render_classify_report(classify_k0(-6, 6, -6, 6));
    const std::string b = render_classify_report(classify_k0(-6, 6, -6, 6));
    CHECK(a == b);
    CHECK(a.find("R_22") != std::string::npos);
    CHECK(a.find("[csv]") != std::string::npos);
}

} // classify

TEST_SUITE("oraclequad") {

TEST_CASE("closed-form carrier pair") {
    std::mt19937 rng(61);
    std::uniform_real_distribution<double> u(-1.0, 1.0);
    for (int trial = 0; trial < 6; ++trial) {
        const cplx t(u(rng) * 1.5, u(rng) * 0.8);
        const Eigen::Vector4cd f = eval_f_pair_k1(t);
        // identity normalization at t = 0 checked by the Wronskian being 1
        const cplx wr = f[0] * f[3] - f[2] * f[1];
        CHECK(std::abs(wr - cplx(1, 0)) < 1e-12);

        // both solve y'' = (-1 + 3 tanh^2(t/sqrt 2)) y
        const cplx a = -1.0 + 3.0 * std::pow(std::tanh(t / std::numbers::sqrt2), 2);
        const double h = 1e-5;
        const Eigen::Vector4cd fp = eval_f_pair_k1(t + h), fm = eval_f_pair_k1(t - h);
        CHECK(std::abs((fp[0] - 2.0 * f[0] + fm[0]) / (h * h) - a * f[0]) < 1e-5);
        CHECK(std::abs((fp[2] - 2.0 * f[2] + fm[2]) / (h * h) - a * f[2]) < 1e-5);
    }
    const Eigen::Vector4cd f0 = eval_f_pair_k1(cplx(0, 0));
    CHECK(std::abs(f0[0] - cplx(1, 0)) < 1e-14);
    CHECK(std::abs(f0[1]) < 1e-14);
    CHECK(std::abs(f0[2]) < 1e-14);
    CHECK(std::abs(f0[3] - cplx(1, 0)) < 1e-14);
}

TEST_CASE("commuting monodromies leave no obstruction entry") {
    // Lambda = lambda = mu(1) = -1/3 is integrable: the order-5 commutator
    // monodromy is the identity to integration accuracy
    const FrwParams prm{1, cplx(-1.0 / 3, 0.0), cplx(-1.0 / 3, 0.0), 1.0};
    const PolyVectorField X = frw_field(prm);
    const ParticularSolution sol = sol1(prm.Lambda);
    IntegratorConfig cfg;
    const BlockFundamental M1 = monodromy(X, sol.ivp, hexagon_path(+1), 5, cfg, sol.singularities);
    const BlockFundamental M2 = monodromy(X, sol.ivp, hexagon_path(-1), 5, cfg, sol.singularities);
    const BlockFundamental Mc{4, 5, commutator_monodromy(M1.m, M2.m)};
    const JetRow jr = jet_row(Mc, 1e-9);
    CHECK(jr.survivors.empty());
    CHECK_THROWS_AS(k436_entry(jr), NoObstruction);
}

TEST_CASE("quadrature vanishes at an integrable pair") {
    IntegratorConfig cfg;
    const QuadratureResult r = k436_k1(cplx(-1, 0), cplx(-1, 0), 1.0, hexagon_path(+1),
                                       hexagon_path(-1), cfg);
    CHECK(r.abs_scale > 1.0);
    CHECK(std::abs(r.K) < 1e-9 * r.abs_scale);
    CHECK(r.wronskian_drift < 1e-10);
}

} // oraclequad

TEST_SUITE("cli") {

int run_cli(const std::string& args, std::string* out = nullptr) {
    const std::string cmd = std::string(FRWMONO_CLI_PATH) + " " + args + " 2>/dev/null";
    FILE* p = popen(cmd.c_str(), "r");
    REQUIRE(p != nullptr);
    std::string text;
    char buf[4096];
    size_t got;
    while ((got = fread(buf, 1, sizeof buf, p)) > 0) text.append(buf, got);
    const int status = pclose(p);
    if (out) *out = text;
    return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
}

TEST_CASE("classify subcommand") {
    std::string out;
    CHECK(run_cli("classify --p-min -5 --p-max 5 --q-min -5 --q-max 5", &out) == 0);
    CHECK(out.find("R_22") != std::string::npos);
    CHECK(out.find("[csv]") != std::string::npos);
}

TEST_CASE("bad arguments exit with 2") {
    CHECK(run_cli("no-such-subcommand") == 2);
    CHECK(run_cli("monodromy --case k1") == 2); // missing required Lambda/lambda
    CHECK(run_cli("sweep --case bogus --p-min 2 --p-max 2") == 2);
}

TEST_CASE("numerical failure exits with 3") {
    // a path through the pole trips the clearance check
    const char* file = "/tmp/frwmono_test_badpath.txt";
    {
        std::ofstream f(file);
        f << "0 0\n0 4.44288293816\n0 0\n";
    }
    CHECK(run_cli(std::string("paths validate --case k1 --path ") + file) == 3);
}

TEST_CASE("paths list") {
    std::string out;
    CHECK(run_cli("paths list", &out) == 0);
    CHECK(out.find("hexagon+") != std::string::npos);
    CHECK(out.find("spoon-") != std::string::npos);
}

TEST_CASE("svg chart with per-series scaling from config") {
    const char* cfg = "/tmp/frwmono_test_svgcfg.txt";
    {
        std::ofstream f(cfg);
        f << "scale-comm_k2 = 0.5\n";
    }
    const std::string svg = "/tmp/frwmono_test_chart.svg";
    CHECK(run_cli("sweep --case k1 --p-min 2 --p-max 3 --p-step 1 --order 2 --config " +
                  std::string(cfg) + " --out /tmp/frwmono_test_sweep.csv --svg " + svg) == 0);
    std::ifstream f(svg);
    std::stringstream ss;
    ss << f.rdbuf();
    CHECK(ss.str().find("<svg") != std::string::npos);
    CHECK(ss.str().find("polyline") != std::string::npos);
    CHECK(ss.str().find("comm_k2 (x0.5)") != std::string::npos);
    // CSV stays raw: column header unchanged
    std::ifstream c("/tmp/frwmono_test_sweep.csv");
    std::string l1, l2;
    std::getline(c, l1);
    std::getline(c, l2);
    CHECK(l2 == "p,dev_k1,dev_k2,comm_k1,comm_k2,error");
}

TEST_CASE("config file provides defaults, flags override") {
    const char* cfg = "/tmp/frwmono_test_cfg.txt";
    {
        std::ofstream f(cfg);
        f << "# defaults\np-min = -3\np-max = 3\nq-min = -3\nq-max = 3\n";
    }
    std::string a, b;
    CHECK(run_cli(std::string("classify --config ") + cfg, &a) == 0);
    CHECK(a.find("p in [-3, 3]") != std::string::npos);
    CHECK(run_cli(std::string("classify --config ") + cfg + " --p-min -4", &b) == 0);
    CHECK(b.find("p in [-4, 3]") != std::string::npos);
}

} // cli
