#pragma once

#include <stdexcept>
#include <string>

namespace frwmono {

struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Dimension or degree of an operand does not match the operation.
struct ShapeMismatch : Error { using Error::Error; };

/// Path endpoints do not line up (concatenation of disconnected segments).
struct PathMismatch : Error { using Error::Error; };

/// Adaptive step size fell below the minimum while error control kept rejecting.
struct StepUnderflow : Error { using Error::Error; };

/// A path passes closer to a known singularity than the configured clearance.
struct SingularityTooClose : Error { using Error::Error; };

/// Unit Wronskian of a fundamental pair drifted beyond tolerance during quadrature.
struct WronskianDrift : Error { using Error::Error; };

/// A rational parameter family was evaluated at a pole of its defining fraction.
struct PoleInFamily : Error { using Error::Error; };

/// Darboux point degenerates (lambda*Lambda = m^4): middle points escape to infinity.
struct DegenerateDarboux : Error { using Error::Error; };

/// No jet-row entry survives the cap: monodromies commute at this order.
struct NoObstruction : Error { using Error::Error; };

} // namespace frwmono
