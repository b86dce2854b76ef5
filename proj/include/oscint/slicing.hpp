#pragma once

#include <Eigen/Dense>
#include <iosfwd>
#include <string>
#include <vector>

#include "oscint/polynomial.hpp"

namespace oscint {

/// Thrown when a slicing construction cannot be carried out at the current
/// grid resolution (cannot occur for data satisfying the continuous
/// hypotheses once n is large enough, but must be signaled).
class resolution_error : public numeric_error {
public:
    using numeric_error::numeric_error;
};

/// Subset of [0,1]^2 discretized as an n x n cell mask; cell (i, j) is the
/// square with midpoint ((i+0.5)/n, (j+0.5)/n).
struct DiscretizedSet {
    int n = 0;
    std::vector<std::uint8_t> mask;  ///< row-major, mask[i*n + j]

    DiscretizedSet() = default;
    DiscretizedSet(int n_, bool filled = false);

    bool at(int i, int j) const { return mask[static_cast<std::size_t>(i) * n + j] != 0; }
    void set(int i, int j, bool v) { mask[static_cast<std::size_t>(i) * n + j] = v ? 1 : 0; }
    double measure() const;
};

/// File format: a line with n, then n lines of n characters '0'/'1'.
DiscretizedSet read_discretized_set(std::istream& in, const std::string& filename = "<stream>");
DiscretizedSet read_discretized_set_file(const std::string& path);
void write_discretized_set(std::ostream& out, const DiscretizedSet& set);

/// Output of the two-point slicing construction: a center a with
/// |f(x) - a| <= (3/2) R on the column slice G and |f'(x') - a| <= (3/2) R on
/// the row slice G1, both of measure >= r/4 - 1/n.
struct SliceWitness {
    int x0_index = 0;
    int x0p_index = 0;
    Eigen::VectorXd a;
    std::vector<std::uint8_t> G;   ///< slice of E at x0' (subset of the first axis)
    std::vector<std::uint8_t> G1;  ///< slice of E at x0 (subset of the second axis)
    double R_used = 0.0;
};

/// Two-point slicing: given |f(x) - f'(x')| <= R on E with measure(E) = r >
/// 4/n, selects the lexicographically smallest pair (x0, x0') in E whose row
/// and column slices both have measure >= r/4, and returns the midpoint
/// center a = (f(x0) + f'(x0'))/2.
///
/// f and fp hold one R^D row per grid cell (n rows, D columns).
SliceWitness frust_find(const DiscretizedSet& E, const Eigen::MatrixXd& f,
                        const Eigen::MatrixXd& fp, double R);

/// Result of the joint polynomial approximation construction.
struct CousinResult {
    std::vector<Polynomial> Q1, Q2;  ///< one 1-variable polynomial per component
    std::vector<std::uint8_t> E1, E2;
    double bound = 0.0;         ///< realized max |f - Q1| over E1
    double guarantee = 0.0;     ///< the proof bound (3/2) R
    std::vector<Polynomial> p, q;  ///< the splitting minimizers found in step 1
    Eigen::VectorXd a;
    double split_sup = 0.0;     ///< achieved sup |P - p - q| over the square
};

/// From |f(x) + g(y) + P(x,y)| <= 1 on E (measure epsilon), produces
/// polynomials Q1, Q2 of degree <= d and slices E1, E2 of measure >=
/// epsilon/4 - 1/n with |f - Q1| small on E1 and |g - Q2| small on E2:
/// (1) split P as p(x) + q(y) by least squares on a tensor quadrature grid,
/// (2) apply frust_find to f + p and -(g + q) with R = 1 + achieved sup,
/// (3) shift by the frust center: Q1 = -p + a, Q2 = -q - a.
CousinResult cousin_approximate(const DiscretizedSet& E, const Eigen::MatrixXd& f,
                                const Eigen::MatrixXd& g, const std::vector<Polynomial>& P,
                                int d);

}  // namespace oscint
