#include "oscint/cutoff.hpp"

#include <cmath>

namespace oscint {

Cutoff::Cutoff(CutoffSpec spec) : spec_(std::move(spec)) {
    if (spec_.kappa < 1) throw validation_error("cutoff: kappa must be >= 1");
    if (static_cast<int>(spec_.box_center.size()) != 2 * spec_.kappa)
        throw validation_error("cutoff: box_center must have 2*kappa entries");
    if (!(spec_.box_halfwidth > 0.0)) throw validation_error("cutoff: halfwidth must be > 0");
}

double Cutoff::profile_value(CutoffProfile profile, double u) {
    const double u2 = u * u;
    if (u2 >= 1.0) return 0.0;
    switch (profile) {
        case CutoffProfile::smooth_bump:
            return std::exp(1.0 - 1.0 / (1.0 - u2));
        case CutoffProfile::poly_spline_c3: {
            const double s = 1.0 - u2;
            const double s2 = s * s;
            return s2 * s2;
        }
    }
    return 0.0;
}

double Cutoff::axis_value(int axis, double t) const {
    const double u = (t - spec_.box_center[static_cast<std::size_t>(axis)]) / spec_.box_halfwidth;
    return profile_value(spec_.profile, u);
}

double Cutoff::operator()(std::span<const double> point) const {
    if (static_cast<int>(point.size()) != dim())
        throw argument_error("cutoff: point dimension mismatch");
    double v = 1.0;
    for (int a = 0; a < dim(); ++a) {
        v *= axis_value(a, point[static_cast<std::size_t>(a)]);
        if (v == 0.0) return 0.0;
    }
    return v;
}

GridFunction Cutoff::to_grid(int samples_per_axis) const {
    std::vector<double> lo(static_cast<std::size_t>(dim()));
    std::vector<double> hi(static_cast<std::size_t>(dim()));
    for (int a = 0; a < dim(); ++a) {
        lo[static_cast<std::size_t>(a)] = this->lo(a);
        hi[static_cast<std::size_t>(a)] = this->hi(a);
    }
    return GridFunction::sample(lo, hi, samples_per_axis,
                                [this](std::span<const double> pt) {
                                    return std::complex<double>((*this)(pt), 0.0);
                                });
}

Cutoff make_cutoff(const CutoffSpec& spec) { return Cutoff(spec); }

}  // namespace oscint
