#pragma once

#include "frwmono/cpath.hpp"
#include "frwmono/integrator.hpp"

namespace frwmono {

struct QuadratureResult {
    cplx K;                 // nested quadrature value at the loop end
    double abs_scale;       // accumulated |dK| along the loop (zero-test scale)
    double wronskian_drift; // max |W - 1| of the two first-order Wronskians
};

/// Nested-quadrature evaluation of the order-5 obstruction entry along the
/// commutator loop of loop_p and loop_m (loop_p traversed first); k=+1 case
/// along the tanh/sech solution. Throws WronskianDrift if either first-order
/// Wronskian leaves 1 by more than 1e-8.
QuadratureResult k436_k1(cplx Lambda, cplx lambda, double m, const PolygonalPath& loop_p,
                         const PolygonalPath& loop_m, const IntegratorConfig& cfg);

/// Same for the k=0 case along the Jacobi-sn solution (spoon loops).
QuadratureResult k436_k0(cplx Lambda, cplx lambda, double m, const PolygonalPath& loop_p,
                         const PolygonalPath& loop_m, const IntegratorConfig& cfg);

/// Identity-normalized solutions of the k=+1 f-equation, closed forms:
/// returns (f1, f1', f2, f2') at t. Used to validate the quadrature carrier.
Eigen::Vector4cd eval_f_pair_k1(cplx t);

/// Quadrature value / jet-transport entry; the two methods agree exactly.
inline constexpr double k436_jet_normalization = 1.0;

} // namespace frwmono
