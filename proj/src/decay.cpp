#include "oscint/decay.hpp"

#include <algorithm>
#include <cmath>

#include "oscint/rng.hpp"

namespace oscint {

PowerLawFit fit_power_law(std::span<const double> lambdas, std::span<const double> magnitudes) {
    if (lambdas.size() != magnitudes.size())
        throw argument_error("fit_power_law: length mismatch");
    const std::size_t n = lambdas.size();
    if (n < 4) throw argument_error("fit_power_law: need at least 4 points");
    double sx = 0.0, sy = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        if (!(lambdas[i] > 0.0)) throw argument_error("fit_power_law: lambdas must be positive");
        if (!(magnitudes[i] > 0.0))
            throw argument_error("fit_power_law: non-positive magnitude in fit window");
        sx += std::log(lambdas[i]);
        sy += std::log(magnitudes[i]);
    }
    const double mx = sx / static_cast<double>(n);
    const double my = sy / static_cast<double>(n);
    double sxx = 0.0, sxy = 0.0, syy = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        const double dx = std::log(lambdas[i]) - mx;
        const double dy = std::log(magnitudes[i]) - my;
        sxx += dx * dx;
        sxy += dx * dy;
        syy += dy * dy;
    }
    if (sxx <= 0.0) throw argument_error("fit_power_law: lambdas are all equal");
    const double slope = sxy / sxx;

    PowerLawFit fit;
    fit.epsilon_hat = -slope;
    fit.log_C = my - slope * mx;
    double ss_res = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        const double pred = fit.log_C + slope * std::log(lambdas[i]);
        const double r = std::log(magnitudes[i]) - pred;
        ss_res += r * r;
    }
    fit.r_squared = syy <= 1e-300 ? 1.0 : std::max(0.0, 1.0 - ss_res / syy);
    return fit;
}

std::vector<double> geometric_grid(double lo, double hi, int points) {
    if (!(lo > 0.0) || !(hi > lo) || points < 2)
        throw argument_error("geometric_grid: need 0 < lo < hi and at least 2 points");
    std::vector<double> out(static_cast<std::size_t>(points));
    const double ratio = std::log(hi / lo) / static_cast<double>(points - 1);
    for (int i = 0; i < points; ++i) out[static_cast<std::size_t>(i)] = lo * std::exp(ratio * i);
    out.back() = hi;
    return out;
}

namespace {

void validate_lambda_grid(std::span<const double> grid) {
    if (grid.size() < 8)
        throw validation_error("lambda grid: need at least 8 points");
    for (std::size_t i = 0; i < grid.size(); ++i) {
        if (grid[i] < 10.0 - 1e-9 || grid[i] > 1e4 + 1e-6)
            throw validation_error("lambda grid: points must lie in [10, 1e4]");
        if (i > 0 && !(grid[i] > grid[i - 1]))
            throw validation_error("lambda grid: points must be strictly increasing");
    }
    const double r0 = grid[1] / grid[0];
    for (std::size_t i = 2; i < grid.size(); ++i) {
        const double r = grid[i] / grid[i - 1];
        if (std::abs(r - r0) > 1e-6 * r0)
            throw validation_error("lambda grid: spacing must be geometric");
    }
}

DecayFit fit_from_rows(const std::vector<SweepRow>& rows) {
    DecayFit fit;
    std::vector<char> usable(rows.size(), 0);
    for (std::size_t i = 0; i < rows.size(); ++i) {
        fit.lambdas.push_back(rows[i].lambda);
        fit.magnitudes.push_back(rows[i].abs_I);
        const bool above_floor = rows[i].abs_I > 10.0 * rows[i].err_est;
        usable[i] = (rows[i].lambda >= 10.0 && above_floor) ? 1 : 0;
    }
    int lo = -1, hi = -1;
    std::vector<double> ls, ms;
    for (std::size_t i = 0; i < rows.size(); ++i) {
        if (!usable[i]) continue;
        if (lo < 0) lo = static_cast<int>(i);
        hi = static_cast<int>(i);
        ls.push_back(rows[i].lambda);
        ms.push_back(rows[i].abs_I);
    }
    if (ls.size() < 4)
        throw numeric_error("lambda sweep: fewer than 4 usable points after noise-floor "
                            "exclusions (insufficient data)");
    const PowerLawFit pf = fit_power_law(ls, ms);
    fit.log_C = pf.log_C;
    fit.epsilon_hat = pf.epsilon_hat;
    fit.r_squared = pf.r_squared;
    fit.window = {lo, hi};
    return fit;
}

}  // namespace

SweepResult lambda_sweep(const Polynomial& P, const Factor& f1, const Factor& f2,
                         const Factor& f3, const Cutoff& eta, std::span<const double> lambda_grid,
                         const RefinementPolicy& policy) {
    validate_lambda_grid(lambda_grid);
    SweepResult out;
    out.rows.reserve(lambda_grid.size());
    for (double lambda : lambda_grid) {
        const QuadratureResult r = integrate_oscillatory(lambda, P, f1, f2, f3, eta, policy);
        out.rows.push_back({lambda, std::abs(r.value), r.abs_error_estimate, r.panels_used});
    }
    out.fit = fit_from_rows(out.rows);
    return out;
}

SublevelReport sublevel_measure(const Polynomial& Q, std::span<const double> lo,
                                std::span<const double> hi, double epsilon, SublevelMethod method,
                                long long samples, std::uint64_t seed) {
    const int dim = Q.num_vars();
    if (static_cast<int>(lo.size()) != dim || static_cast<int>(hi.size()) != dim)
        throw argument_error("sublevel_measure: box dimension must match Q's variables");
    if (!(epsilon > 0.0)) throw argument_error("sublevel_measure: epsilon must be > 0");
    double volume = 1.0;
    for (int a = 0; a < dim; ++a) {
        if (!(lo[static_cast<std::size_t>(a)] < hi[static_cast<std::size_t>(a)]))
            throw argument_error("sublevel_measure: box must have lo < hi");
        volume *= hi[static_cast<std::size_t>(a)] - lo[static_cast<std::size_t>(a)];
    }

    SublevelReport rep;
    rep.epsilon = epsilon;
    rep.method = method;
    rep.samples = samples;

    if (Q.total_degree() <= 0) {
        // Degree zero: the set is all of the box or empty.
        const double c = Q.is_zero() ? 0.0 : Q.coeffs().begin()->second;
        rep.measure_estimate = std::abs(c) < epsilon ? volume : 0.0;
        rep.samples = 0;
        return rep;
    }

    if (method == SublevelMethod::grid) {
        const int n = std::max(
            1, static_cast<int>(std::llround(std::pow(static_cast<double>(samples),
                                                      1.0 / static_cast<double>(dim)))));
        rep.samples = 1;
        for (int a = 0; a < dim; ++a) rep.samples *= n;
        std::vector<double> pt(static_cast<std::size_t>(dim), 0.0);
        long long hits = 0;
        std::vector<int> idx(static_cast<std::size_t>(dim), 0);
        for (long long s = 0; s < rep.samples; ++s) {
            long long rest = s;
            for (int a = dim - 1; a >= 0; --a) {
                idx[static_cast<std::size_t>(a)] = static_cast<int>(rest % n);
                rest /= n;
            }
            for (int a = 0; a < dim; ++a) {
                const double step = (hi[static_cast<std::size_t>(a)] - lo[static_cast<std::size_t>(a)]) / n;
                pt[static_cast<std::size_t>(a)] =
                    lo[static_cast<std::size_t>(a)] + step * (idx[static_cast<std::size_t>(a)] + 0.5);
            }
            if (std::abs(Q.eval(pt)) < epsilon) ++hits;
        }
        rep.measure_estimate = volume * static_cast<double>(hits) / static_cast<double>(rep.samples);
        return rep;
    }

    SplitMix64 rng(seed);
    long long hits = 0;
    std::vector<double> pt(static_cast<std::size_t>(dim), 0.0);
    for (long long s = 0; s < samples; ++s) {
        for (int a = 0; a < dim; ++a)
            pt[static_cast<std::size_t>(a)] =
                rng.uniform(lo[static_cast<std::size_t>(a)], hi[static_cast<std::size_t>(a)]);
        if (std::abs(Q.eval(pt)) < epsilon) ++hits;
    }
    const double p = static_cast<double>(hits) / static_cast<double>(samples);
    rep.measure_estimate = volume * p;
    rep.stderr_estimate = volume * std::sqrt(std::max(0.0, p * (1.0 - p) / static_cast<double>(samples)));
    return rep;
}

SublevelFit sublevel_exponent_fit(const Polynomial& Q, std::span<const double> lo,
                                  std::span<const double> hi, std::span<const double> epsilons,
                                  SublevelMethod method, long long samples, std::uint64_t seed) {
    SublevelFit out;
    std::vector<double> es, ms;
    for (std::size_t i = 0; i < epsilons.size(); ++i) {
        const SublevelReport rep =
            sublevel_measure(Q, lo, hi, epsilons[i], method, samples, seed + i);
        out.reports.push_back(rep);
        if (rep.measure_estimate > 0.0) {
            es.push_back(rep.epsilon);
            ms.push_back(rep.measure_estimate);
        }
    }
    if (es.size() < 2) throw numeric_error("sublevel_exponent_fit: not enough nonzero measures");
    // Slope of log(measure) vs log(epsilon).
    double sx = 0.0, sy = 0.0;
    for (std::size_t i = 0; i < es.size(); ++i) {
        sx += std::log(es[i]);
        sy += std::log(ms[i]);
    }
    const double mx = sx / static_cast<double>(es.size());
    const double my = sy / static_cast<double>(es.size());
    double sxx = 0.0, sxy = 0.0;
    for (std::size_t i = 0; i < es.size(); ++i) {
        const double dx = std::log(es[i]) - mx;
        sxx += dx * dx;
        sxy += dx * (std::log(ms[i]) - my);
    }
    out.delta_hat = sxy / sxx;
    return out;
}

double lemma_first_exponent(double rho, double delta) {
    if (!(rho > 0.0) || !(delta > 0.0))
        throw argument_error("lemma_first_exponent: both arguments must be positive");
    return 2.0 * rho * delta / (rho + delta);
}

Polynomial assemble_degenerate(const ProjectionTriple& triple, const Polynomial& p1,
                               const Polynomial& p2, const Polynomial& p3) {
    const std::array<const Polynomial*, 3> ps = {&p1, &p2, &p3};
    Polynomial out(2 * triple.kappa, 0);
    for (int j = 0; j < 3; ++j) {
        if (ps[static_cast<std::size_t>(j)]->num_vars() != triple.kappa)
            throw argument_error("assemble_degenerate: p_j must have kappa variables");
        out = out + pullback(*ps[static_cast<std::size_t>(j)], triple.maps[static_cast<std::size_t>(j)]);
    }
    return out;
}

bool is_canonical_triple(const ProjectionTriple& triple, double tol) {
    const ProjectionTriple c = canonical_triple(triple.kappa);
    for (int j = 0; j < 3; ++j) {
        if (triple.maps[static_cast<std::size_t>(j)].rows() != c.maps[static_cast<std::size_t>(j)].rows() ||
            triple.maps[static_cast<std::size_t>(j)].cols() != c.maps[static_cast<std::size_t>(j)].cols())
            return false;
        if ((triple.maps[static_cast<std::size_t>(j)] - c.maps[static_cast<std::size_t>(j)])
                .cwiseAbs()
                .maxCoeff() > tol)
            return false;
    }
    return true;
}

std::array<Factor, 3> counterexample_factors(const Polynomial& p1, const Polynomial& p2,
                                             const Polynomial& p3, double lambda) {
    auto make = [lambda](Polynomial p) {
        return Factor::analytic([p = std::move(p), lambda](std::span<const double> u) {
            const double phase = -lambda * p.eval(u);
            return std::complex<double>(std::cos(phase), std::sin(phase));
        });
    };
    return {make(p1), make(p2), make(p3)};
}

std::array<GridFunction, 3> degenerate_counterexample(
    const ProjectionTriple& triple, const Polynomial& p1, const Polynomial& p2,
    const Polynomial& p3, double lambda, const std::array<std::vector<double>, 3>& box_lo,
    const std::array<std::vector<double>, 3>& box_hi, int samples_per_axis) {
    if (!is_canonical_triple(triple))
        throw argument_error(
            "degenerate_counterexample: triple must be canonical (normalize first)");
    const std::array<const Polynomial*, 3> ps = {&p1, &p2, &p3};
    std::array<GridFunction, 3> out;
    for (int j = 0; j < 3; ++j) {
        const Polynomial& p = *ps[static_cast<std::size_t>(j)];
        if (p.num_vars() != triple.kappa)
            throw argument_error("degenerate_counterexample: p_j must have kappa variables");
        out[static_cast<std::size_t>(j)] = GridFunction::sample(
            box_lo[static_cast<std::size_t>(j)], box_hi[static_cast<std::size_t>(j)],
            samples_per_axis, [&p, lambda](std::span<const double> u) {
                const double phase = -lambda * p.eval(u);
                return std::complex<double>(std::cos(phase), std::sin(phase));
            });
    }
    return out;
}

SweepResult counterexample_sweep(const ProjectionTriple& triple, const Polynomial& p1,
                                 const Polynomial& p2, const Polynomial& p3, const Cutoff& eta,
                                 std::span<const double> lambda_grid,
                                 const RefinementPolicy& policy) {
    if (!is_canonical_triple(triple))
        throw argument_error("counterexample_sweep: triple must be canonical (normalize first)");
    validate_lambda_grid(lambda_grid);
    const Polynomial P = assemble_degenerate(triple, p1, p2, p3);
    SweepResult out;
    for (double lambda : lambda_grid) {
        const auto factors = counterexample_factors(p1, p2, p3, lambda);
        const QuadratureResult r =
            integrate_oscillatory(lambda, P, factors[0], factors[1], factors[2], eta, policy);
        out.rows.push_back({lambda, std::abs(r.value), r.abs_error_estimate, r.panels_used});
    }
    out.fit = fit_from_rows(out.rows);
    return out;
}

std::optional<std::array<Polynomial, 3>> reconstruct_components(const Polynomial& P,
                                                                const ProjectionTriple& triple,
                                                                int d, double tol) {
    triple.validate();
    if (P.num_vars() != 2 * triple.kappa)
        throw argument_error("reconstruct_components: P must have 2*kappa variables");
    const MonomialBasis ambient = MonomialBasis::build(2 * triple.kappa, d);
    const MonomialBasis small = MonomialBasis::build(triple.kappa, d);

    Eigen::MatrixXd G(ambient.dimension(), 3 * small.dimension());
    Eigen::Index col = 0;
    for (int j = 0; j < 3; ++j)
        for (const auto& mi : small.monomials)
            G.col(col++) = ambient.to_vector(
                pullback(Polynomial::monomial(mi, 1.0), triple.maps[static_cast<std::size_t>(j)]));

    const Eigen::VectorXd v = ambient.to_vector(P);
    const Eigen::VectorXd c = G.bdcSvd(Eigen::ComputeThinU | Eigen::ComputeThinV).solve(v);
    if ((G * c - v).norm() > tol * (1.0 + v.norm())) return std::nullopt;

    std::array<Polynomial, 3> out = {Polynomial(triple.kappa, d), Polynomial(triple.kappa, d),
                                     Polynomial(triple.kappa, d)};
    col = 0;
    for (int j = 0; j < 3; ++j) {
        for (const auto& mi : small.monomials) {
            const double coeff = c(col++);
            if (std::abs(coeff) > Polynomial::kPruneTol)
                out[static_cast<std::size_t>(j)].add_coeff(mi, coeff);
        }
    }
    return out;
}

}  // namespace oscint
