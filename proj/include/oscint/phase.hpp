#pragma once

#include <map>
#include <utility>
#include <vector>

#include "oscint/grid.hpp"
#include "oscint/polynomial.hpp"

namespace oscint {

/// The three families of phase coefficient functions
///   phi_1(x_1,x_2) = sum_j theta1[j](x_2) x_1^j
///   phi_2(y_1,y_2) = sum_k theta2[k](y_2) y_1^k
///   phi_3(s_1,s_2) = sum_l theta3[l](s_2) s_1^l          (s = x + y)
/// sampled on a common 1-D grid. The theta are merely measurable data, so
/// they are looked up by nearest sample.
struct PhaseTriple {
    int degree = 0;                    ///< d; each family has d+1 entries
    std::vector<GridFunction> theta1;  ///< functions of x_2
    std::vector<GridFunction> theta2;  ///< functions of y_2
    std::vector<GridFunction> theta3;  ///< functions of x_2 + y_2

    /// All three families identically zero on [lo, hi] (n samples).
    static PhaseTriple zeros(int degree, double lo, double hi, int samples);

    /// Checks lengths, 1-D grids, and realness of every sample.
    void validate() const;
};

/// Coefficients psi_{jk}(x_2, y_2) of x_1^j y_1^k in the combined phase
/// lambda*P + phi_1 + phi_2 + phi_3, for all 0 <= j+k <= d:
///   psi_jk = [k=0] theta1[j](x_2) + [j=0] theta2[k](y_2)
///          + C(j+k, k) theta3[j+k](x_2+y_2) + lambda * p_jk(x_2, y_2),
/// where p_jk are the (x_2,y_2)-coefficient polynomials of P.
/// P must be a 4-variable polynomial in (x_1, x_2, y_1, y_2) layout.
/// Throws if any lookup point falls outside the theta grids.
std::map<std::pair<int, int>, double> phase_coefficients(const PhaseTriple& phases,
                                                         const Polynomial& P, double lambda,
                                                         double x2, double y2);

double binomial(int n, int k);

}  // namespace oscint
