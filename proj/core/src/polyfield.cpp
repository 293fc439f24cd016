#include "frwmono/polyfield.hpp"

namespace frwmono {

int PolyVectorField::degree() const {
    int d = 0;
    for (const auto& comp : components)
        for (const auto& t : comp) d = std::max(d, t.exps.degree());
    return d;
}

Eigen::VectorXcd PolyVectorField::eval(const Eigen::VectorXcd& x) const {
    if (static_cast<int>(x.size()) != n) throw ShapeMismatch("PolyVectorField::eval: wrong point size");
    Eigen::VectorXcd out = Eigen::VectorXcd::Zero(n);
    for (int i = 0; i < n; ++i) {
        for (const auto& t : components[i]) {
            cplx v = t.coeff;
            for (int l = 0; l < n; ++l)
                for (int d = 0; d < t.exps.exponents[l]; ++d) v *= x[l];
            out[i] += v;
        }
    }
    return out;
}

std::vector<SymMap> deriv_tensors(const PolyVectorField& X, const Eigen::VectorXcd& point,
                                  int kmax) {
    if (static_cast<int>(point.size()) != X.n)
        throw ShapeMismatch("deriv_tensors: point size does not match field");
    std::vector<SymMap> A;
    A.reserve(kmax);
    for (int j = 1; j <= kmax; ++j) {
        const auto& bas = monomial_basis(X.n, j);
        SymMap Aj{X.n, j, 1, Eigen::MatrixXcd::Zero(X.n, bas.size())};
        for (int i = 0; i < X.n; ++i) {
            for (const auto& t : X.components[i]) {
                const auto& e = t.exps.exponents;
                for (size_t col = 0; col < bas.size(); ++col) {
                    const auto& be = bas[col].exponents;
                    bool ok = true;
                    for (int l = 0; l < X.n; ++l)
                        if (e[l] < be[l]) { ok = false; break; }
                    if (!ok) continue;
                    // d^beta (x^e) = prod_l e_l (e_l-1) ... (e_l-beta_l+1) x^(e-beta)
                    cplx v = t.coeff;
                    for (int l = 0; l < X.n; ++l) {
                        for (int d = 0; d < be[l]; ++d) v *= static_cast<double>(e[l] - d);
                        for (int d = 0; d < e[l] - be[l]; ++d) v *= point[l];
                    }
                    Aj.m(i, static_cast<Eigen::Index>(col)) += v;
                }
            }
        }
        A.push_back(std::move(Aj));
    }
    return A;
}

} // namespace frwmono
