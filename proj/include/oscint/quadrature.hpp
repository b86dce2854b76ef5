#pragma once

#include <complex>
#include <cstdint>
#include <functional>
#include <optional>
#include <span>
#include <vector>

#include "oscint/cutoff.hpp"
#include "oscint/grid.hpp"
#include "oscint/polynomial.hpp"

namespace oscint {

/// Controls the adaptive panel subdivision. Panels are split (all axes at
/// once) until the local phase variation
///     lambda * (panel diameter) * max|grad P|
/// drops below 2*pi*nodes_per_axis/10 * phase_margin. The error estimate
/// comes from comparing each accepted panel against its 2^dim children
/// (one further global refinement); the refined value is the one reported.
struct RefinementPolicy {
    int nodes_per_axis = 8;      ///< Gauss-Legendre order per axis per panel
    double phase_margin = 1.0;   ///< 1.0 = the default threshold
    int min_depth = 2;           ///< initial uniform splits of the box
    int max_depth = 48;
    long long max_panels = 60'000'000;  ///< accepted-panel budget
    int threads = 1;             ///< worker pool size hint

    double phase_threshold() const {
        return 2.0 * 3.14159265358979323846 * nodes_per_axis / 10.0 * phase_margin;
    }
};

struct QuadratureResult {
    std::complex<double> value;
    double abs_error_estimate = 0.0;
    long long panels_used = 0;
    long long nodes_total = 0;
};

/// Thrown when the panel budget runs out; carries the truncated estimate.
class panel_budget_error : public numeric_error {
public:
    panel_budget_error(const std::string& msg, QuadratureResult partial)
        : numeric_error(msg), partial_(partial) {}
    const QuadratureResult& partial() const { return partial_; }

private:
    QuadratureResult partial_;
};

/// One factor f_j: either sampled data (multilinear interpolation, zero
/// outside its box) or an analytic callable. The acceptance checks use
/// analytic factors where pointwise exactness matters.
class Factor {
public:
    static Factor from_grid(GridFunction g);
    static Factor analytic(std::function<std::complex<double>(std::span<const double>)> fn);
    static Factor one();  ///< constant 1

    std::complex<double> operator()(std::span<const double> u) const;
    bool is_grid() const { return grid_.has_value(); }
    const GridFunction& grid() const { return *grid_; }

private:
    std::optional<GridFunction> grid_;
    std::function<std::complex<double>(std::span<const double>)> fn_;
};

/// I(lambda P; f1, f2, f3) = integral over the cutoff box of
/// e^{i lambda P(x,y)} f1(x) f2(y) f3(x+y) eta(x,y) dx dy, for P in
/// 2*kappa variables (x block then y block).
QuadratureResult integrate_oscillatory(double lambda, const Polynomial& P, const Factor& f1,
                                       const Factor& f2, const Factor& f3, const Cutoff& eta,
                                       const RefinementPolicy& policy = {});

/// GridFunction overload; additionally checks that f3's box covers the
/// sumset of f1's and f2's boxes intersected with the cutoff support.
QuadratureResult integrate_oscillatory(double lambda, const Polynomial& P, const GridFunction& f1,
                                       const GridFunction& f2, const GridFunction& f3,
                                       const Cutoff& eta, const RefinementPolicy& policy = {});

/// integral over [0,1]^m of e^{i p(t)} dt for an m-variable polynomial.
QuadratureResult unit_cube_oscillatory(const Polynomial& p, const RefinementPolicy& policy = {});

/// The van der Corput bound shape (sum_{0<|alpha|<=d} |c_alpha|)^{-1/d},
/// without the constant; d is the actual degree of p. A constant polynomial
/// has no oscillation to exploit: value = +infinity, no_oscillation = true.
struct VdcBound {
    double value = 0.0;
    bool no_oscillation = false;
};
VdcBound vdc_bound(const Polynomial& p);

/// Max observed ratio |integral of e^{i lambda p}| / vdc_bound(lambda p) over
/// a seeded sample of unit-coefficient polynomials of degree d in m
/// variables, per lambda and overall.
struct EmpiricalConstant {
    double max_ratio = 0.0;
    std::vector<double> lambda_values;
    std::vector<double> per_lambda_max;
};
EmpiricalConstant empirical_C(int d, int m, int num_polys, std::span<const double> lambdas,
                              std::uint64_t seed, const RefinementPolicy& policy = {});

/// Deterministic Gauss-Legendre nodes and weights on [0, 1].
void gauss_legendre_01(int n, std::vector<double>& nodes, std::vector<double>& weights);

}  // namespace oscint
