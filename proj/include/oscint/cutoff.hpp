#pragma once

#include <span>
#include <vector>

#include "oscint/errors.hpp"
#include "oscint/grid.hpp"

namespace oscint {

enum class CutoffProfile {
    smooth_bump,     ///< exp(1 - 1/(1 - u^2)) on (-1,1); C-infinity
    poly_spline_c3,  ///< (1 - u^2)^4 on (-1,1); piecewise polynomial, C^3
};

/// Axis-aligned box cutoff: a tensor product of one 1-D profile per axis,
/// equal to 1 at the center and 0 outside the box.
struct CutoffSpec {
    int kappa = 1;
    std::vector<double> box_center;  ///< length 2*kappa
    double box_halfwidth = 1.0;
    CutoffProfile profile = CutoffProfile::smooth_bump;
};

class Cutoff {
public:
    explicit Cutoff(CutoffSpec spec);

    const CutoffSpec& spec() const { return spec_; }
    int dim() const { return static_cast<int>(spec_.box_center.size()); }
    double lo(int axis) const { return spec_.box_center[static_cast<std::size_t>(axis)] - spec_.box_halfwidth; }
    double hi(int axis) const { return spec_.box_center[static_cast<std::size_t>(axis)] + spec_.box_halfwidth; }

    /// One tensor factor.
    double axis_value(int axis, double t) const;
    double operator()(std::span<const double> point) const;

    GridFunction to_grid(int samples_per_axis) const;

    /// The 1-D profile on normalized coordinates, exposed for oracle checks.
    static double profile_value(CutoffProfile profile, double u);

private:
    CutoffSpec spec_;
};

/// Builds the cutoff, validating the spec.
Cutoff make_cutoff(const CutoffSpec& spec);

}  // namespace oscint
