#pragma once

#include <span>
#include <vector>

#include "frwmono/integrator.hpp"
#include "frwmono/polyfield.hpp"
#include "frwmono/symtensor.hpp"

namespace frwmono {

/// Truncated jet of the flow map at a point: base orbit plus the derivative
/// blocks Y_k[i, beta] = d^beta Phi_i, |beta| = k, k = 1..order.
struct JetState {
    int n = 0;
    int order = 0;
    cplx t;
    Eigen::VectorXcd base;
    std::vector<SymMap> blocks; // blocks[k-1] : S^k -> S^1

    const SymMap& Y(int k) const { return blocks.at(static_cast<std::size_t>(k) - 1); }
};

/// Jet of the identity map: Y_1 = Id, higher blocks zero.
JetState identity_jet(const Eigen::VectorXcd& base, int order);

/// Right-hand sides of the variational hierarchy
///   dY_k = sum_j A_j . sum_{partitions of k into j parts} c * (Y_i1 ⊙ ... ⊙ Y_ij)
/// where c is the Faa di Bruno coefficient of the partition. A holds the
/// derivative tensors of the field at the current base point; tensors beyond
/// A.size() are treated as zero.
std::vector<SymMap> ve_blocks_rhs(std::span<const SymMap> A, std::span<const SymMap> Y);

JetState ve_rhs(const PolyVectorField& X, const JetState& jet);

std::size_t jet_flat_size(int n, int order);
Eigen::VectorXcd jet_flatten(const JetState& jet);
JetState jet_unflatten(const Eigen::VectorXcd& v, int n, int order, cplx t);

/// Transport the jet along the path. When singularities are supplied the path
/// is pre-checked against cfg.clearance.
JetState integrate_jet(const PolyVectorField& X, const Eigen::VectorXcd& ivp,
                       const PolygonalPath& path, int order, const IntegratorConfig& cfg,
                       std::span<const cplx> singularities = {},
                       const StepObserver* observer = nullptr);

/// Central-difference approximation of Y_k for the flow along the path
/// (k <= 3). Slow; intended as an independent check of the jet transport.
SymMap flow_fd_oracle(const PolyVectorField& X, const Eigen::VectorXcd& ivp,
                      const PolygonalPath& path, int k, double h, const IntegratorConfig& cfg);

} // namespace frwmono
