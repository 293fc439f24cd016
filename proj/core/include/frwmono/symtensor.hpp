#pragma once

#include <complex>
#include <span>
#include <vector>

#include <Eigen/Dense>

#include "frwmono/errors.hpp"

namespace frwmono {

using cplx = std::complex<double>;

long long binomial(int n, int k);
long long multinomial(int k, std::span<const int> alpha);

/// Dimension binom(n+k-1, n-1) of the degree-k symmetric power of C^n.
int sym_dim(int n, int k);

struct ExponentVector {
    std::vector<int> exponents;

    int degree() const;
    bool operator==(const ExponentVector&) const = default;
};

/// Exponent vectors of the degree-k monomials over n variables, ordered
/// graded-lexicographically with the first coordinate descending:
/// for n=2, k=2 this is (2,0), (1,1), (0,2). Cached per (n,k).
const std::vector<ExponentVector>& monomial_basis(int n, int k);

/// Position of `exps` inside monomial_basis(n, k).
int basis_index(int n, int k, std::span<const int> exps);

/// Element of S^deg(C^n) in power coordinates: the coordinate at exponent
/// alpha carries the multinomial weight, i.e. sym_power(u,k)[alpha] =
/// multinomial(k; alpha) * u^alpha.
struct SymVector {
    int n = 0;
    int deg = 0;
    Eigen::VectorXcd coeffs;
};

/// Linear map S^in_deg(C^n) -> S^out_deg(C^n) stored densely;
/// m has sym_dim(n, out_deg) rows and sym_dim(n, in_deg) columns.
struct SymMap {
    int n = 0;
    int in_deg = 0;
    int out_deg = 0;
    Eigen::MatrixXcd m;
};

SymMap identity_map(int n, int deg);
SymMap zero_map(int n, int in_deg, int out_deg);

/// k-fold symmetric power of u in power coordinates.
SymVector sym_power(const Eigen::VectorXcd& u, int k);

/// Symmetric product of two symmetric vectors; in power coordinates this is
/// the plain convolution over exponent vectors, so
/// sym_power(u,a) (.) sym_power(u,b) = sym_power(u,a+b).
SymVector sym_vec_product(const SymVector& x, const SymVector& y);

SymVector apply(const SymMap& F, const SymVector& x);

/// Symmetric product of linear maps, defined by
/// (F (.) G)(u^(a+b)) = F(u^a) (.) G(u^b) for every u.
/// The contraction pattern is cached per operand shape.
SymMap sym_map_product(const SymMap& F, const SymMap& G);

/// Number of set partitions of sum(parts) labeled elements into blocks of
/// the given sizes: k! / (prod parts[i]! * prod multiplicity!).
long long faa_coeff(std::span<const int> parts);

/// All partitions of k into positive parts, each sorted ascending;
/// deterministic enumeration order.
const std::vector<std::vector<int>>& partitions(int k);

} // namespace frwmono
