#include "oscint/phase.hpp"

#include <cmath>

namespace oscint {

double binomial(int n, int k) {
    if (k < 0 || k > n) return 0.0;
    double out = 1.0;
    for (int i = 1; i <= k; ++i) out = out * static_cast<double>(n - k + i) / static_cast<double>(i);
    return std::round(out);
}

PhaseTriple PhaseTriple::zeros(int degree, double lo, double hi, int samples) {
    PhaseTriple t;
    t.degree = degree;
    for (int j = 0; j <= degree; ++j) {
        t.theta1.push_back(GridFunction::constant({lo}, {hi}, samples, {0.0, 0.0}));
        t.theta2.push_back(GridFunction::constant({lo}, {hi}, samples, {0.0, 0.0}));
        t.theta3.push_back(GridFunction::constant({lo}, {hi}, samples, {0.0, 0.0}));
    }
    return t;
}

void PhaseTriple::validate() const {
    const std::size_t want = static_cast<std::size_t>(degree) + 1;
    if (theta1.size() != want || theta2.size() != want || theta3.size() != want)
        throw validation_error("phase triple: each family needs degree+1 coefficient functions");
    for (const auto* fam : {&theta1, &theta2, &theta3}) {
        for (const auto& g : *fam) {
            if (g.dim() != 1) throw validation_error("phase triple: coefficient grids must be 1-D");
            if (!g.is_real(0.0)) throw validation_error("phase triple: phases must be real-valued");
        }
    }
}

namespace {

double theta_lookup(const GridFunction& g, double t) {
    if (t < g.lo()[0] || t > g.hi()[0])
        throw validation_error("phase_coefficients: lookup point outside theta grid coverage");
    return g.nearest(t).real();
}

}  // namespace

std::map<std::pair<int, int>, double> phase_coefficients(const PhaseTriple& phases,
                                                         const Polynomial& P, double lambda,
                                                         double x2, double y2) {
    phases.validate();
    if (P.num_vars() != 4)
        throw argument_error("phase_coefficients: P must have 4 variables (x1, x2, y1, y2)");
    const int d = phases.degree;

    // p_jk(x2, y2): coefficient polynomials of x_1^j y_1^k. Inner variables
    // sit at indices {0, 2} in the (x1, x2, y1, y2) layout.
    const std::vector<int> inner = {0, 2};
    auto by_inner = decompose_by_vars(P, inner);

    std::map<std::pair<int, int>, double> psi;
    const double pt[2] = {x2, y2};
    for (int j = 0; j <= d; ++j) {
        for (int k = 0; j + k <= d; ++k) {
            double v = 0.0;
            if (k == 0) v += theta_lookup(phases.theta1[static_cast<std::size_t>(j)], x2);
            if (j == 0) v += theta_lookup(phases.theta2[static_cast<std::size_t>(k)], y2);
            v += binomial(j + k, k) *
                 theta_lookup(phases.theta3[static_cast<std::size_t>(j + k)], x2 + y2);
            auto it = by_inner.find(MultiIndex{j, k});
            if (it != by_inner.end()) v += lambda * it->second.eval(std::span<const double>(pt, 2));
            psi[{j, k}] = v;
        }
    }
    return psi;
}

}  // namespace oscint
