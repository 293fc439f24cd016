#pragma once

#include <functional>
#include <span>

#include "frwmono/cpath.hpp"
#include "frwmono/symtensor.hpp"

namespace frwmono {

struct IntegratorConfig {
    double rtol = 1e-12;
    double atol = 1e-14;
    double initial_step = 1e-2; // in segment parameter units
    double min_step = 1e-12;
    double clearance = 0.3; // required distance from known singularities
    long max_steps = 2000000;
};

/// dy = f(t, y); t moves along a straight complex segment.
using OdeRhs = std::function<void(cplx t, const Eigen::VectorXcd& y, Eigen::VectorXcd& dy)>;

/// Called after every accepted step.
using StepObserver = std::function<void(cplx t, const Eigen::VectorXcd& y)>;

/// Embedded Fehlberg 7(8) pair, 13 stages, propagating the 8th-order value.
/// Throws StepUnderflow when error control pushes the step below min_step.
void integrate_segment(const OdeRhs& f, cplx a, cplx b, Eigen::VectorXcd& y,
                       const IntegratorConfig& cfg, const StepObserver* observer = nullptr);

void integrate_path(const OdeRhs& f, const PolygonalPath& path, Eigen::VectorXcd& y,
                    const IntegratorConfig& cfg, const StepObserver* observer = nullptr);

/// Throws SingularityTooClose if the path passes any of the points closer
/// than cfg.clearance.
void check_clearance(const PolygonalPath& path, std::span<const cplx> singularities,
                     const IntegratorConfig& cfg);

} // namespace frwmono
