// Acceptance suite: runs every acceptance criterion end to end and prints one
// PASS/FAIL line per criterion. Exit status is the number of failures.

#include <chrono>
#include <cmath>
#include <complex>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <functional>
#include <sstream>
#include <string>
#include <vector>

#include "oscint/decay.hpp"
#include "oscint/degeneracy.hpp"
#include "oscint/experiment.hpp"
#include "oscint/quadrature.hpp"
#include "oscint/rng.hpp"
#include "oscint/slicing.hpp"

using namespace oscint;
namespace fs = std::filesystem;

namespace {

int g_failures = 0;

class Criterion {
public:
    Criterion(int number, std::string title)
        : number_(number), title_(std::move(title)),
          start_(std::chrono::steady_clock::now()) {}

    void check(bool ok, const std::string& detail) {
        if (!ok) {
            failed_ = true;
            details_ += (details_.empty() ? "" : "; ") + detail;
        }
    }

    void note(const std::string& text) { notes_ += (notes_.empty() ? "" : "; ") + text; }

    ~Criterion() {
        const double secs =
            std::chrono::duration<double>(std::chrono::steady_clock::now() - start_).count();
        if (failed_) {
            ++g_failures;
            std::printf("FAIL criterion %2d: %s [%.1fs] -- %s\n", number_, title_.c_str(), secs,
                        details_.c_str());
        } else {
            std::printf("PASS criterion %2d: %s [%.1fs]%s%s\n", number_, title_.c_str(), secs,
                        notes_.empty() ? "" : " -- ", notes_.c_str());
        }
        std::fflush(stdout);
    }

private:
    int number_;
    std::string title_;
    std::string notes_;
    std::string details_;
    bool failed_ = false;
    std::chrono::steady_clock::time_point start_;
};

std::string fmt(double v) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.6g", v);
    return buf;
}

Polynomial random_poly_upto(SplitMix64& rng, int num_vars, int degree) {
    const MonomialBasis b = MonomialBasis::build(num_vars, degree);
    Polynomial p(num_vars, degree);
    for (const auto& mi : b.monomials) p.set_coeff(mi, rng.normal());
    return p;
}

/// Dense least-squares distance to the span of all pullback generators;
/// independent of the orthonormal-basis path used by nd_norm.
double nd_oracle(const Polynomial& P, int kappa, int d, const ProjectionTriple& triple) {
    const MonomialBasis ambient = MonomialBasis::build(2 * kappa, d);
    const MonomialBasis small = MonomialBasis::build(kappa, d);
    Eigen::MatrixXd G(ambient.dimension(), 3 * small.dimension());
    Eigen::Index col = 0;
    for (int j = 0; j < 3; ++j)
        for (const auto& mi : small.monomials)
            G.col(col++) = ambient.to_vector(
                pullback(Polynomial::monomial(mi, 1.0), triple.maps[static_cast<std::size_t>(j)]));
    const Eigen::VectorXd v = ambient.to_vector(P);
    const Eigen::VectorXd c = G.bdcSvd(Eigen::ComputeThinU | Eigen::ComputeThinV).solve(v);
    return (G * c - v).norm();
}

std::complex<double> simpson_1d(const std::function<std::complex<double>(double)>& f, double a,
                                double b, int half_n) {
    const int n = 2 * half_n;
    const double h = (b - a) / n;
    std::complex<double> sum = f(a) + f(b);
    for (int i = 1; i < n; ++i) sum += ((i % 2 == 1) ? 4.0 : 2.0) * f(a + h * i);
    return sum * (h / 3.0);
}

Cutoff default_cutoff_k1() {
    CutoffSpec spec;
    spec.kappa = 1;
    spec.box_center = {0.0, 0.0};
    spec.box_halfwidth = 1.0;
    return make_cutoff(spec);
}

void criterion_1_oracle_equivalence() {
    Criterion crit(1, "nd norm agrees with the dense Gram least-squares oracle");
    SplitMix64 rng(1001);
    const ProjectionTriple triple = canonical_triple(1);
    double worst = 0.0;
    int count = 0;
    for (int d = 1; d <= 4; ++d) {
        const DegenerateBasis basis = build_degenerate_basis(1, d, triple);
        for (int t = 0; t < 50; ++t) {
            const Polynomial P = random_poly_upto(rng, 2, d);
            const double got = nd_norm(P, basis).nd_value;
            const double want = nd_oracle(P, 1, d, triple);
            worst = std::max(worst, std::abs(got - want));
            ++count;
        }
    }
    crit.check(count == 200, "expected 200 samples");
    crit.check(worst <= 1e-9, "max deviation " + fmt(worst) + " > 1e-9");
    crit.note("max deviation " + fmt(worst) + " over 200 polynomials");
}

void criterion_2_exact_values() {
    Criterion crit(2, "exact quotient norms: ||xy|| = 0, ||x^2 y|| = 1/sqrt(2)");
    const DegenerateBasis basis = build_degenerate_basis(1, 3, canonical_triple(1));
    const double nd_xy = nd_norm(Polynomial::monomial({1, 1}, 1.0), basis).nd_value;
    const double nd_x2y = nd_norm(Polynomial::monomial({2, 1}, 1.0), basis).nd_value;
    crit.check(nd_xy <= 1e-10, "||xy||_nd = " + fmt(nd_xy) + " > 1e-10");
    crit.check(std::abs(nd_x2y - 1.0 / std::sqrt(2.0)) <= 1e-9,
               "||x^2 y||_nd = " + fmt(nd_x2y) + " not 1/sqrt(2) within 1e-9");
    crit.note("||xy|| = " + fmt(nd_xy) + ", ||x^2 y|| = " + fmt(nd_x2y));
}

void criterion_3_dimensions() {
    Criterion crit(3, "degenerate-space dimensions 3, 6, 9 inside 3, 6, 10");
    const ProjectionTriple triple = canonical_triple(1);
    const int dims[3] = {build_degenerate_basis(1, 1, triple).dim(),
                         build_degenerate_basis(1, 2, triple).dim(),
                         build_degenerate_basis(1, 3, triple).dim()};
    const int full[3] = {MonomialBasis::build(2, 1).dimension(),
                         MonomialBasis::build(2, 2).dimension(),
                         MonomialBasis::build(2, 3).dimension()};
    crit.check(dims[0] == 3 && dims[1] == 6 && dims[2] == 9,
               "degenerate dims " + std::to_string(dims[0]) + "," + std::to_string(dims[1]) + "," +
                   std::to_string(dims[2]));
    crit.check(full[0] == 3 && full[1] == 6 && full[2] == 10,
               "ambient dims " + std::to_string(full[0]) + "," + std::to_string(full[1]) + "," +
                   std::to_string(full[2]));
}

void criterion_4_quadrature_exactness() {
    Criterion crit(4, "separable quadrature matches the 1-D oracle product");
    const Cutoff eta = default_cutoff_k1();
    RefinementPolicy policy;
    policy.threads = 1;

    // lambda = 0 recovers the cutoff integral within the reported estimate
    const QuadratureResult r0 = integrate_oscillatory(
        0.0, Polynomial::zero(2, 1), Factor::one(), Factor::one(), Factor::one(), eta, policy);
    const auto bump = [&](double t) { return std::complex<double>(eta.axis_value(0, t), 0.0); };
    const double eta_1d = simpson_1d(bump, -1.0, 1.0, 50000).real();
    const double eta_int = eta_1d * eta_1d;
    crit.check(std::abs(std::abs(r0.value) - eta_int) <= std::max(r0.abs_error_estimate, 1e-10),
               "lambda=0 deviation " + fmt(std::abs(std::abs(r0.value) - eta_int)) +
                   " above estimate " + fmt(r0.abs_error_estimate));

    // P = x at lambda = 50 against the separable 1-D oracle product
    Polynomial P(2, 1);
    P.set_coeff({1, 0}, 1.0);
    const double lambda = 50.0;
    const QuadratureResult r = integrate_oscillatory(lambda, P, Factor::one(), Factor::one(),
                                                     Factor::one(), eta, policy);
    const auto osc = [&](double t) {
        return std::complex<double>(std::cos(lambda * t), std::sin(lambda * t)) *
               eta.axis_value(0, t);
    };
    const std::complex<double> want = simpson_1d(osc, -1.0, 1.0, 100000) * eta_1d;
    const double dev = std::abs(r.value - want);
    crit.check(dev <= 1e-6, "separable deviation " + fmt(dev) + " > 1e-6");
    crit.note("separable deviation " + fmt(dev) + ", lambda=0 err " +
              fmt(std::abs(std::abs(r0.value) - eta_int)));
}

void criterion_5_vdc_envelope() {
    Criterion crit(5, "van der Corput envelope bounded with no lambda growth");
    const std::vector<double> lambdas_m1 = {10.0, 100.0, 1000.0, 10000.0};
    const std::vector<double> lambdas_m2 = {10.0, 100.0, 1000.0};
    RefinementPolicy policy;
    policy.threads = 1;
    policy.phase_margin = 2.0;
    RefinementPolicy heavy = policy;
    heavy.phase_margin = 4.0;  // the single 2-D lambda = 1e4 spot checks

    double global_max = 0.0;
    double worst_slope = -10.0;
    int poly_count = 0;
    for (int d = 1; d <= 4; ++d) {
        // m = 1: the full lambda ladder
        const EmpiricalConstant e1 = empirical_C(d, 1, 15, lambdas_m1, 2000 + d, policy);
        poly_count += 15;
        global_max = std::max(global_max, e1.max_ratio);
        {
            // slope of log max-ratio against log lambda
            double sx = 0, sy = 0, sxx = 0, sxy = 0;
            const int n = static_cast<int>(lambdas_m1.size());
            for (int i = 0; i < n; ++i) {
                const double x = std::log(lambdas_m1[static_cast<std::size_t>(i)]);
                const double y = std::log(e1.per_lambda_max[static_cast<std::size_t>(i)]);
                sx += x;
                sy += y;
                sxx += x * x;
                sxy += x * y;
            }
            const double slope = (n * sxy - sx * sy) / (n * sxx - sx * sx);
            worst_slope = std::max(worst_slope, slope);
        }

        // m = 2 up to lambda = 1e3 on the shared sample
        const EmpiricalConstant e2 = empirical_C(d, 2, 10, lambdas_m2, 3000 + d, policy);
        poly_count += 10;
        global_max = std::max(global_max, e2.max_ratio);
        {
            double sx = 0, sy = 0, sxx = 0, sxy = 0;
            const int n = static_cast<int>(lambdas_m2.size());
            for (int i = 0; i < n; ++i) {
                const double x = std::log(lambdas_m2[static_cast<std::size_t>(i)]);
                const double y = std::log(e2.per_lambda_max[static_cast<std::size_t>(i)]);
                sx += x;
                sy += y;
                sxx += x * x;
                sxy += x * y;
            }
            const double slope = (n * sxy - sx * sy) / (n * sxx - sx * sx);
            worst_slope = std::max(worst_slope, slope);
        }

        // one 2-D polynomial per degree at lambda = 1e4 (boundedness only)
        const std::vector<double> top = {10000.0};
        const EmpiricalConstant spot = empirical_C(d, 2, 1, top, 3000 + d, heavy);
        global_max = std::max(global_max, spot.max_ratio);
    }
    crit.check(global_max <= 10.0, "max ratio " + fmt(global_max) + " > 10");
    crit.check(worst_slope <= 0.15,
               "ratio grows with lambda (slope " + fmt(worst_slope) + " > 0.15)");
    crit.note("max ratio " + fmt(global_max) + ", worst growth slope " + fmt(worst_slope) +
              " over " + std::to_string(poly_count) + " polynomials");
}

void criterion_6_decay() {
    Criterion crit(6, "decay of I(lambda x^2 y) over [10, 1e4]: eps > 0.1, r2 > 0.9");
    const Cutoff eta = default_cutoff_k1();
    Polynomial P(2, 3);
    P.set_coeff({2, 1}, 1.0);
    RefinementPolicy policy;
    policy.threads = 1;
    policy.phase_margin = 3.0;
    const auto grid = geometric_grid(10.0, 1e4, 16);
    const SweepResult sweep =
        lambda_sweep(P, Factor::one(), Factor::one(), Factor::one(), eta, grid, policy);
    crit.check(sweep.fit.epsilon_hat > 0.1,
               "epsilon_hat = " + fmt(sweep.fit.epsilon_hat) + " <= 0.1");
    crit.check(sweep.fit.r_squared > 0.9, "r_squared = " + fmt(sweep.fit.r_squared) + " <= 0.9");

    // Monotone-envelope sanity: |I| * lambda^(eps/2) beyond lambda = 100
    // stays within 10x its value at the first such point.
    double ref = -1.0, worst = 0.0;
    for (const auto& row : sweep.rows) {
        if (row.lambda < 100.0) continue;
        const double v = row.abs_I * std::pow(row.lambda, sweep.fit.epsilon_hat / 2.0);
        if (ref < 0.0) ref = v;
        worst = std::max(worst, v);
    }
    crit.check(worst <= 10.0 * ref, "envelope ratio " + fmt(worst / ref) + " > 10");
    crit.note("epsilon_hat = " + fmt(sweep.fit.epsilon_hat) +
              ", r2 = " + fmt(sweep.fit.r_squared));
}

void criterion_7_counterexample() {
    Criterion crit(7, "degenerate phases show no decay");
    const ProjectionTriple triple = canonical_triple(1);
    const Cutoff eta = default_cutoff_k1();
    RefinementPolicy policy;
    policy.threads = 1;
    policy.phase_margin = 2.0;

    // the explicit xy construction
    Polynomial phalf(1, 2), p3(1, 2);
    phalf.set_coeff({2}, -0.5);
    p3.set_coeff({2}, 0.5);
    {
        const Polynomial P = assemble_degenerate(triple, phalf, phalf, p3);
        std::vector<double> vals, errs;
        for (double lambda : {10.0, 1000.0}) {
            const auto f = counterexample_factors(phalf, phalf, p3, lambda);
            const QuadratureResult r =
                integrate_oscillatory(lambda, P, f[0], f[1], f[2], eta, policy);
            vals.push_back(std::abs(r.value));
            errs.push_back(r.abs_error_estimate);
        }
        const double dev = std::abs(vals[0] - vals[1]);
        crit.check(dev <= 2.0 * (errs[0] + errs[1]),
                   "xy counterexample |I(10)| vs |I(1e3)| deviation " + fmt(dev) +
                       " > 2*(err sum) " + fmt(2.0 * (errs[0] + errs[1])));
    }

    // a random degenerate polynomial with reconstructed components
    {
        SplitMix64 rng(777);
        Polynomial q1(1, 3), q2(1, 3), q3(1, 3);
        for (int e = 0; e <= 3; ++e) {
            q1.set_coeff({e}, rng.uniform(-0.5, 0.5));
            q2.set_coeff({e}, rng.uniform(-0.5, 0.5));
            q3.set_coeff({e}, rng.uniform(-0.5, 0.5));
        }
        const Polynomial P = assemble_degenerate(triple, q1, q2, q3);
        const auto rec = reconstruct_components(P, triple, 3);
        crit.check(rec.has_value(), "reconstruction of a degenerate polynomial failed");
        if (rec.has_value()) {
            std::vector<double> vals, errs;
            for (double lambda : {10.0, 1000.0}) {
                const auto f = counterexample_factors((*rec)[0], (*rec)[1], (*rec)[2], lambda);
                const QuadratureResult r =
                    integrate_oscillatory(lambda, P, f[0], f[1], f[2], eta, policy);
                vals.push_back(std::abs(r.value));
                errs.push_back(r.abs_error_estimate);
            }
            const double dev = std::abs(vals[0] - vals[1]);
            crit.check(dev <= 2.0 * (errs[0] + errs[1]),
                       "reconstructed counterexample deviation " + fmt(dev) + " > " +
                           fmt(2.0 * (errs[0] + errs[1])));
        }
    }

    // flat sweep exponent
    const auto grid = geometric_grid(10.0, 1000.0, 8);
    const SweepResult sweep = counterexample_sweep(triple, phalf, phalf, p3, eta, grid, policy);
    crit.check(std::abs(sweep.fit.epsilon_hat) <= 0.02,
               "counterexample epsilon_hat = " + fmt(sweep.fit.epsilon_hat) + " not within 0.02");
    crit.note("counterexample epsilon_hat = " + fmt(sweep.fit.epsilon_hat));
}

void criterion_8_sublevel() {
    Criterion crit(8, "sublevel scaling: sqrt(eps) strips and delta >= 1/3 - 0.1");
    Polynomial qx2(2, 2);
    qx2.set_coeff({2, 0}, 1.0);
    const std::vector<double> lo = {0.0, 0.0}, hi = {1.0, 1.0};
    double worst = 0.0;
    for (double eps : {0.04, 0.01, 0.0025}) {
        const SublevelReport rep =
            sublevel_measure(qx2, lo, hi, eps, SublevelMethod::grid, 4000LL * 4000LL, 1);
        worst = std::max(worst, std::abs(rep.measure_estimate - std::sqrt(eps)));
    }
    crit.check(worst <= 1e-3, "x^2 strip deviation " + fmt(worst) + " > 1e-3");

    Polynomial qx2y(2, 3);
    qx2y.set_coeff({2, 1}, 1.0);
    const std::vector<double> eps = {1e-1, 1e-2, 1e-3, 1e-4};
    const SublevelFit fit =
        sublevel_exponent_fit(qx2y, lo, hi, eps, SublevelMethod::grid, 2000LL * 2000LL, 1);
    crit.check(fit.delta_hat >= 1.0 / 3.0 - 0.1,
               "delta_hat = " + fmt(fit.delta_hat) + " < 1/3 - 0.1");
    crit.note("strip deviation " + fmt(worst) + ", delta_hat = " + fmt(fit.delta_hat));
}

void criterion_9_frust() {
    Criterion crit(9, "two-point slicing is sound on 50 random instances");
    int witnesses = 0;
    for (std::uint64_t s = 0; s < 50; ++s) {
        const int n = 256;
        const int D = 1 + static_cast<int>(s % 3);
        const FrustInstance inst =
            make_frust_instance(n, D, 0.15 + 0.01 * static_cast<double>(s % 7), 4200 + s);
        const double r = inst.E.measure();
        SliceWitness w;
        try {
            w = frust_find(inst.E, inst.f, inst.fp, inst.R);
        } catch (const std::exception& e) {
            crit.check(false, "instance " + std::to_string(s) + ": " + e.what());
            continue;
        }
        ++witnesses;

        double mG = 0.0, mG1 = 0.0, devG = 0.0, devG1 = 0.0;
        for (int i = 0; i < n; ++i) {
            if (w.G[static_cast<std::size_t>(i)]) {
                mG += 1.0;
                devG = std::max(devG, (inst.f.row(i).transpose() - w.a).norm());
            }
            if (w.G1[static_cast<std::size_t>(i)]) {
                mG1 += 1.0;
                devG1 = std::max(devG1, (inst.fp.row(i).transpose() - w.a).norm());
            }
        }
        if (devG > 1.5 * inst.R || devG1 > 1.5 * inst.R)
            crit.check(false, "instance " + std::to_string(s) + " violates the (3/2)R bound");
        if (mG / n < r / 4.0 - 1.0 / n || mG1 / n < r / 4.0 - 1.0 / n)
            crit.check(false, "instance " + std::to_string(s) + " slice measure below r/4 - 1/n");

        // brute-force oracle: the good set really is nonempty
        std::vector<int> row(static_cast<std::size_t>(n), 0), col(static_cast<std::size_t>(n), 0);
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j)
                if (inst.E.at(i, j)) {
                    ++row[static_cast<std::size_t>(i)];
                    ++col[static_cast<std::size_t>(j)];
                }
        bool nonempty = false;
        const double need = r / 4.0 * n;
        for (int i = 0; i < n && !nonempty; ++i)
            for (int j = 0; j < n; ++j)
                if (inst.E.at(i, j) && row[static_cast<std::size_t>(i)] >= need &&
                    col[static_cast<std::size_t>(j)] >= need) {
                    nonempty = true;
                    break;
                }
        if (!nonempty)
            crit.check(false, "instance " + std::to_string(s) + ": oracle says good set empty");
    }
    crit.check(witnesses == 50, "only " + std::to_string(witnesses) + " witnesses of 50");
    crit.note("50 witnesses, exact (3/2)R and r/4 - 1/n checks");
}

void criterion_10_cousin() {
    Criterion crit(10, "joint approximation: gauge identity and slice measures");
    SplitMix64 rng(6100);
    for (int trial = 0; trial < 10; ++trial) {
        const int n = 256;
        const int d = 1 + trial % 3;
        Polynomial p0(1, d), q0(1, d);
        for (int e = 0; e <= d; ++e) {
            p0.set_coeff({e}, rng.uniform(-1.0, 1.0));
            q0.set_coeff({e}, rng.uniform(-1.0, 1.0));
        }
        Polynomial P2(2, d);
        for (const auto& [mi, c] : p0.coeffs()) P2.add_coeff({mi[0], 0}, -c);
        for (const auto& [mi, c] : q0.coeffs()) P2.add_coeff({0, mi[0]}, -c);

        DiscretizedSet E(n);
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j) E.set(i, j, rng.uniform() > 0.3);
        Eigen::MatrixXd f(n, 1), g(n, 1);
        for (int i = 0; i < n; ++i) {
            const double x = (i + 0.5) / n;
            f(i, 0) = p0.eval(std::span<const double>(&x, 1)) + rng.uniform(-0.4, 0.4);
            g(i, 0) = q0.eval(std::span<const double>(&x, 1)) + rng.uniform(-0.4, 0.4);
        }

        CousinResult res;
        try {
            res = cousin_approximate(E, f, g, {P2}, d);
        } catch (const std::exception& e) {
            crit.check(false, std::string("pipeline failed: ") + e.what());
            continue;
        }

        const Polynomial gauge = res.Q1[0] + res.Q2[0] + res.p[0] + res.q[0];
        if (coeff_norms(gauge).full > 1e-8)
            crit.check(false, "gauge residual " + fmt(coeff_norms(gauge).full) + " > 1e-8");

        double m1 = 0.0, m2 = 0.0;
        for (int i = 0; i < n; ++i) {
            m1 += res.E1[static_cast<std::size_t>(i)];
            m2 += res.E2[static_cast<std::size_t>(i)];
        }
        const double eps = E.measure();
        if (m1 / n < eps / 4.0 - 1.0 / n || m2 / n < eps / 4.0 - 1.0 / n)
            crit.check(false, "slice measures below eps/4 - 1/n");
        if (res.bound > res.guarantee)
            crit.check(false, "realized bound exceeds the (3/2)R guarantee");
    }
    crit.note("10 constructed instances, known splits");
}

void criterion_11_seminorm() {
    Criterion crit(11, "split-seminorm constant: positive, reproducible, quotient-invariant");
    const SeminormEstimate est = estimate_seminorm_constant(3, 10000, 20260810);
    const SeminormEstimate again = estimate_seminorm_constant(3, 10000, 20260810);
    crit.check(est.c_hat > 0.0, "c_hat not positive");
    crit.check(est.c_hat == again.c_hat && est.worst_case == again.worst_case,
               "estimate not reproducible under the fixed seed");

    SplitMix64 rng(31337);
    const ProjectionTriple t4 = canonical_triple(2);
    double worst = 0.0;
    for (int trial = 0; trial < 8; ++trial) {
        const Polynomial D = assemble_degenerate(t4, random_poly_upto(rng, 2, 3),
                                                 random_poly_upto(rng, 2, 3),
                                                 random_poly_upto(rng, 2, 3));
        const double v = seminorm_sum_quotient(est.worst_case + D, 3);
        worst = std::max(worst, std::abs(v - est.c_hat));
    }
    crit.check(worst <= 1e-8,
               "degenerate perturbation moved the seminorm sum by " + fmt(worst));
    crit.note("c_hat = " + fmt(est.c_hat) + ", max perturbation drift " + fmt(worst));
}

void criterion_12_cli_determinism() {
    Criterion crit(12, "CLI experiments are byte-identical under config + seed");
    const fs::path dir = fs::temp_directory_path() / "oscint_acceptance_cli";
    fs::remove_all(dir);
    fs::create_directories(dir);

    const fs::path poly = dir / "x2y.poly";
    {
        std::ofstream out(poly);
        out << "2 1 : 1.0\n";
    }
    const fs::path qpoly = dir / "q.poly";
    {
        std::ofstream out(qpoly);
        out << "2 1 : 1.0\n";
    }

    struct Experiment {
        std::string command;
        std::string config;
        std::string artifact;
    };
    const std::vector<Experiment> experiments = {
        {"decay",
         "[decay]\npolynomial = x2y.poly\nkappa = 1\nd = 3\nlambda_min = 10\n"
         "lambda_max = 200\nlambda_points = 8\nseed = 5\nthreads = 1\n",
         "decay.csv"},
        {"sublevel",
         "[sublevel]\npolynomial = q.poly\nepsilons = 0.1 0.01 0.001\nmethod = monte_carlo\n"
         "samples = 100000\nseed = 5\n",
         "sublevel.csv"},
        {"norm", "[norm]\npolynomial = x2y.poly\nkappa = 1\nd = 3\nseed = 5\n", "norm.csv"},
        {"counterexample",
         "[counterexample]\nkappa = 1\nd = 2\nseed = 5\nlambdas = 10 100\ngrid_n = 256\n"
         "threads = 1\n",
         "counterexample.csv"},
        {"lemma-frust", "[lemma-frust]\nn = 128\nD = 1\nR = 0.25\nseed = 5\n", "lemma_frust.csv"},
        {"lemma-cousin", "[lemma-cousin]\nn = 128\nD = 1\nd = 2\nseed = 5\n", "lemma_cousin.csv"},
        {"seminorm-const", "[seminorm-const]\nd = 2\nsamples = 500\nseed = 5\n",
         "seminorm_const.csv"},
    };

    for (const auto& exp : experiments) {
        const fs::path cfg = dir / (exp.command + ".cfg");
        {
            std::ofstream out(cfg);
            out << exp.config;
        }
        RunOptions opt;
        opt.out_dir = dir.string();
        opt.threads = 1;
        const int rc1 = run_command(exp.command, cfg.string(), opt);
        std::ifstream first(dir / exp.artifact, std::ios::binary);
        std::stringstream s1;
        s1 << first.rdbuf();
        const int rc2 = run_command(exp.command, cfg.string(), opt);
        std::ifstream second(dir / exp.artifact, std::ios::binary);
        std::stringstream s2;
        s2 << second.rdbuf();
        if (rc1 != 0 || rc2 != 0)
            crit.check(false, exp.command + " exited nonzero");
        else if (s1.str() != s2.str() || s1.str().empty())
            crit.check(false, exp.command + " output not byte-identical");

        // worker-count invariance for the quadrature-heavy command
        if (exp.command == "decay") {
            RunOptions opt2 = opt;
            opt2.threads = 3;
            run_command(exp.command, cfg.string(), opt2);
            std::ifstream third(dir / exp.artifact, std::ios::binary);
            std::stringstream s3;
            s3 << third.rdbuf();
            if (s3.str() != s1.str())
                crit.check(false, "decay output changed with the worker count");
        }
    }
    crit.note(std::to_string(experiments.size()) + " experiments re-run byte-identically");
}

}  // namespace

int main() {
    std::printf("acceptance suite (%s)\n", kVersion);
    criterion_1_oracle_equivalence();
    criterion_2_exact_values();
    criterion_3_dimensions();
    criterion_4_quadrature_exactness();
    criterion_5_vdc_envelope();
    criterion_6_decay();
    criterion_7_counterexample();
    criterion_8_sublevel();
    criterion_9_frust();
    criterion_10_cousin();
    criterion_11_seminorm();
    criterion_12_cli_determinism();
    if (g_failures == 0)
        std::printf("all 12 acceptance criteria passed\n");
    else
        std::printf("%d acceptance criteria FAILED\n", g_failures);
    return g_failures;
}
