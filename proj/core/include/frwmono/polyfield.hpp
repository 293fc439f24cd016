#pragma once

#include <vector>

#include "frwmono/symtensor.hpp"

namespace frwmono {

struct PolyTerm {
    cplx coeff;
    ExponentVector exps;
};

/// Polynomial vector field on C^n: component i is a sum of monomial terms.
struct PolyVectorField {
    int n = 0;
    std::vector<std::vector<PolyTerm>> components; // size n

    int degree() const;
    Eigen::VectorXcd eval(const Eigen::VectorXcd& x) const;
};

/// Derivative tensors of X at `point` in power coordinates:
/// A_j[i, beta] = d^beta X_i(point) for |beta| = j (not divided by j!), so
/// X(point + u) = X(point) + sum_j (1/j!) A_j sym_power(u, j).
/// Returns A_1..A_kmax; entries with j > degree(X) are identically zero.
std::vector<SymMap> deriv_tensors(const PolyVectorField& X, const Eigen::VectorXcd& point,
                                  int kmax);

} // namespace frwmono
