#include "frwmono/jetflow.hpp"

#include <algorithm>
#include <cmath>
#include <map>

#include "frwmono/errors.hpp"

namespace frwmono {

JetState identity_jet(const Eigen::VectorXcd& base, int order) {
    if (order < 1) throw ShapeMismatch("identity_jet: order must be >= 1");
    JetState jet;
    jet.n = static_cast<int>(base.size());
    jet.order = order;
    jet.t = cplx(0.0, 0.0);
    jet.base = base;
    jet.blocks.push_back(identity_map(jet.n, 1));
    for (int k = 2; k <= order; ++k) jet.blocks.push_back(zero_map(jet.n, k, 1));
    return jet;
}

std::vector<SymMap> ve_blocks_rhs(std::span<const SymMap> A, std::span<const SymMap> Y) {
    const int order = static_cast<int>(Y.size());
    if (order < 1) throw ShapeMismatch("ve_blocks_rhs: empty jet");
    const int n = Y[0].n;
    const int jmax = static_cast<int>(A.size());

    // Products of blocks over ascending part lists, memoized by shared prefix.
    std::map<std::vector<int>, SymMap> memo;
    auto product_of = [&](const std::vector<int>& parts, auto&& self) -> const SymMap& {
        if (parts.size() == 1) return Y[static_cast<std::size_t>(parts[0]) - 1];
        if (auto it = memo.find(parts); it != memo.end()) return it->second;
        std::vector<int> prefix(parts.begin(), parts.end() - 1);
        const SymMap& left = self(prefix, self);
        SymMap r = sym_map_product(left, Y[static_cast<std::size_t>(parts.back()) - 1]);
        return memo.emplace(parts, std::move(r)).first->second;
    };

    std::vector<SymMap> out;
    out.reserve(static_cast<std::size_t>(order));
    for (int k = 1; k <= order; ++k) {
        SymMap dY = zero_map(n, k, 1);
        for (const auto& parts : partitions(k)) {
            const int j = static_cast<int>(parts.size());
            if (j > jmax) continue;
            const SymMap& P = product_of(parts, product_of);
            const double c = static_cast<double>(faa_coeff(parts));
            dY.m.noalias() += c * (A[static_cast<std::size_t>(j) - 1].m * P.m);
        }
        out.push_back(std::move(dY));
    }
    return out;
}

JetState ve_rhs(const PolyVectorField& X, const JetState& jet) {
    JetState out;
    out.n = jet.n;
    out.order = jet.order;
    out.t = jet.t;
    out.base = X.eval(jet.base);
    const auto A = deriv_tensors(X, jet.base, std::min(jet.order, X.degree()));
    out.blocks = ve_blocks_rhs(A, jet.blocks);
    return out;
}

std::size_t jet_flat_size(int n, int order) {
    std::size_t total = static_cast<std::size_t>(n);
    for (int k = 1; k <= order; ++k)
        total += static_cast<std::size_t>(n) * static_cast<std::size_t>(sym_dim(n, k));
    return total;
}

Eigen::VectorXcd jet_flatten(const JetState& jet) {
    Eigen::VectorXcd v(static_cast<Eigen::Index>(jet_flat_size(jet.n, jet.order)));
    v.head(jet.n) = jet.base;
    Eigen::Index at = jet.n;
    for (const auto& blk : jet.blocks) {
        const Eigen::Index sz = blk.m.size();
        v.segment(at, sz) = Eigen::Map<const Eigen::VectorXcd>(blk.m.data(), sz);
        at += sz;
    }
    return v;
}

JetState jet_unflatten(const Eigen::VectorXcd& v, int n, int order, cplx t) {
    if (v.size() != static_cast<Eigen::Index>(jet_flat_size(n, order)))
        throw ShapeMismatch("jet_unflatten: vector length does not match (n, order)");
    JetState jet;
    jet.n = n;
    jet.order = order;
    jet.t = t;
    jet.base = v.head(n);
    Eigen::Index at = n;
    for (int k = 1; k <= order; ++k) {
        SymMap blk = zero_map(n, k, 1);
        const Eigen::Index sz = blk.m.size();
        Eigen::Map<Eigen::VectorXcd>(blk.m.data(), sz) = v.segment(at, sz);
        at += sz;
        jet.blocks.push_back(std::move(blk));
    }
    return jet;
}

JetState integrate_jet(const PolyVectorField& X, const Eigen::VectorXcd& ivp,
                       const PolygonalPath& path, int order, const IntegratorConfig& cfg,
                       std::span<const cplx> singularities, const StepObserver* observer) {
    if (!singularities.empty()) check_clearance(path, singularities, cfg);
    const int n = static_cast<int>(ivp.size());
    Eigen::VectorXcd y = jet_flatten(identity_jet(ivp, order));
    OdeRhs rhs = [&X, n, order](cplx t, const Eigen::VectorXcd& s, Eigen::VectorXcd& ds) {
        ds = jet_flatten(ve_rhs(X, jet_unflatten(s, n, order, t)));
    };
    integrate_path(rhs, path, y, cfg, observer);
    return jet_unflatten(y, n, order, path.vertices.back());
}

namespace {

// Central-difference stencils; weights omit the 1/h^d factor.
const std::vector<std::pair<int, double>>& stencil(int d) {
    static const std::vector<std::vector<std::pair<int, double>>> table = {
        {{0, 1.0}},
        {{1, 0.5}, {-1, -0.5}},
        {{1, 1.0}, {0, -2.0}, {-1, 1.0}},
        {{2, 0.5}, {1, -1.0}, {-1, 1.0}, {-2, -0.5}},
    };
    if (d < 0 || d > 3) throw ShapeMismatch("flow_fd_oracle: stencil order out of range");
    return table[static_cast<std::size_t>(d)];
}

} // namespace

SymMap flow_fd_oracle(const PolyVectorField& X, const Eigen::VectorXcd& ivp,
                      const PolygonalPath& path, int k, double h, const IntegratorConfig& cfg) {
    if (k < 1 || k > 3) throw ShapeMismatch("flow_fd_oracle: only k <= 3 supported");
    const int n = static_cast<int>(ivp.size());

    std::map<std::vector<int>, Eigen::VectorXcd> cache;
    auto flow_at = [&](const std::vector<int>& off) -> const Eigen::VectorXcd& {
        if (auto it = cache.find(off); it != cache.end()) return it->second;
        Eigen::VectorXcd y = ivp;
        for (int l = 0; l < n; ++l) y[l] += h * static_cast<double>(off[l]);
        OdeRhs rhs = [&X](cplx, const Eigen::VectorXcd& s, Eigen::VectorXcd& ds) {
            ds = X.eval(s);
        };
        integrate_path(rhs, path, y, cfg);
        return cache.emplace(off, std::move(y)).first->second;
    };

    SymMap out = zero_map(n, k, 1);
    const auto& bas = monomial_basis(n, k);
    std::vector<int> off(static_cast<std::size_t>(n));
    for (std::size_t col = 0; col < bas.size(); ++col) {
        const auto& beta = bas[col].exponents;
        Eigen::VectorXcd acc = Eigen::VectorXcd::Zero(n);
        // walk the tensor product of the per-coordinate stencils
        std::vector<std::size_t> pick(static_cast<std::size_t>(n), 0);
        while (true) {
            double w = 1.0;
            for (int l = 0; l < n; ++l) {
                const auto& st = stencil(beta[static_cast<std::size_t>(l)]);
                off[static_cast<std::size_t>(l)] = st[pick[static_cast<std::size_t>(l)]].first;
                w *= st[pick[static_cast<std::size_t>(l)]].second;
            }
            acc += w * flow_at(off);
            int l = 0;
            for (; l < n; ++l) {
                const auto& st = stencil(beta[static_cast<std::size_t>(l)]);
                if (++pick[static_cast<std::size_t>(l)] < st.size()) break;
                pick[static_cast<std::size_t>(l)] = 0;
            }
            if (l == n) break;
        }
        out.m.col(static_cast<Eigen::Index>(col)) = acc / std::pow(h, k);
    }
    return out;
}

} // namespace frwmono
