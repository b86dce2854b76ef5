#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <span>
#include <utility>
#include <vector>

#include "oscint/degeneracy.hpp"
#include "oscint/quadrature.hpp"

namespace oscint {

/// Least-squares power law |I| ~ C * lambda^{-epsilon_hat} on log-log axes.
struct PowerLawFit {
    double log_C = 0.0;
    double epsilon_hat = 0.0;
    double r_squared = 0.0;
};
PowerLawFit fit_power_law(std::span<const double> lambdas, std::span<const double> magnitudes);

struct DecayFit {
    std::vector<double> lambdas;
    std::vector<double> magnitudes;
    double log_C = 0.0;
    double epsilon_hat = 0.0;
    double r_squared = 0.0;
    std::pair<int, int> window{0, -1};  ///< inclusive index range actually fitted
};

struct SweepRow {
    double lambda = 0.0;
    double abs_I = 0.0;
    double err_est = 0.0;
    long long panels = 0;
};

struct SweepResult {
    DecayFit fit;
    std::vector<SweepRow> rows;
};

/// Geometric grid of `points` values from lo to hi inclusive.
std::vector<double> geometric_grid(double lo, double hi, int points);

/// Runs the oscillatory integral over a geometric lambda grid (>= 8 points
/// inside [10, 1e4]) and fits the decay exponent. Points on the quadrature
/// noise floor (|I| <= 10 * error estimate) are excluded from the fit;
/// fewer than 4 usable points is an error.
SweepResult lambda_sweep(const Polynomial& P, const Factor& f1, const Factor& f2,
                         const Factor& f3, const Cutoff& eta, std::span<const double> lambda_grid,
                         const RefinementPolicy& policy = {});

enum class SublevelMethod { grid, monte_carlo };

struct SublevelReport {
    double epsilon = 0.0;
    double measure_estimate = 0.0;
    double stderr_estimate = 0.0;  ///< monte_carlo only; 0 for grid
    SublevelMethod method = SublevelMethod::grid;
    long long samples = 0;
};

/// Measure of {z in box : |Q(z)| < epsilon}. The grid method counts midpoints
/// of an n x ... x n lattice with n = round(samples^(1/dim)); monte_carlo
/// samples uniformly and reports the binomial standard error. A degree-zero Q
/// follows the degenerate convention: full box if |Q| < epsilon, else zero.
SublevelReport sublevel_measure(const Polynomial& Q, std::span<const double> lo,
                                std::span<const double> hi, double epsilon, SublevelMethod method,
                                long long samples, std::uint64_t seed);

/// Fits delta_hat from log(measure) against log(epsilon).
struct SublevelFit {
    double delta_hat = 0.0;
    std::vector<SublevelReport> reports;
};
SublevelFit sublevel_exponent_fit(const Polynomial& Q, std::span<const double> lo,
                                  std::span<const double> hi, std::span<const double> epsilons,
                                  SublevelMethod method, long long samples, std::uint64_t seed);

/// The optimized exponent 2*rho*delta/(rho + delta) from balancing a
/// sublevel-set bound of order delta against an oscillatory bound of order
/// rho; increasing in each argument and at most 2*min(rho, delta).
double lemma_first_exponent(double rho, double delta);

/// P = sum_j p_j o pi_j, the general degenerate polynomial for this triple.
Polynomial assemble_degenerate(const ProjectionTriple& triple, const Polynomial& p1,
                               const Polynomial& p2, const Polynomial& p3);

/// True when the triple equals the canonical (x, y, x+y) maps within tol.
bool is_canonical_triple(const ProjectionTriple& triple, double tol = 1e-12);

/// Extremizing factors f_j = e^{-i lambda p_j} for a degenerate phase,
/// sampled on the given boxes. With P = sum p_j o pi_j the integrand of
/// I(lambda P; f1, f2, f3) collapses to the cutoff pointwise, so |I| is
/// lambda-independent up to quadrature (and sampling) error.
std::array<GridFunction, 3> degenerate_counterexample(
    const ProjectionTriple& triple, const Polynomial& p1, const Polynomial& p2,
    const Polynomial& p3, double lambda, const std::array<std::vector<double>, 3>& box_lo,
    const std::array<std::vector<double>, 3>& box_hi, int samples_per_axis);

/// Same extremizers as exact callables (no sampling error).
std::array<Factor, 3> counterexample_factors(const Polynomial& p1, const Polynomial& p2,
                                             const Polynomial& p3, double lambda);

/// Lambda sweep of the counterexample family: the factors are rebuilt
/// analytically at every lambda, so the fitted exponent measures only
/// quadrature noise.
SweepResult counterexample_sweep(const ProjectionTriple& triple, const Polynomial& p1,
                                 const Polynomial& p2, const Polynomial& p3, const Cutoff& eta,
                                 std::span<const double> lambda_grid,
                                 const RefinementPolicy& policy = {});

/// Least-squares reconstruction of components p_j with P = sum p_j o pi_j.
/// Empty when P is not degenerate for the triple (residual above tol).
std::optional<std::array<Polynomial, 3>> reconstruct_components(const Polynomial& P,
                                                                const ProjectionTriple& triple,
                                                                int d, double tol = 1e-8);

}  // namespace oscint
