#pragma once

#include <Eigen/Dense>
#include <iosfwd>
#include <map>
#include <span>
#include <string>
#include <vector>

#include "oscint/errors.hpp"

namespace oscint {

/// Exponent tuple of a monomial; entry i is the power of variable i.
using MultiIndex = std::vector<int>;

int total_degree(const MultiIndex& mi);

/// Graded-lexicographic order: lower total degree first, ties broken
/// lexicographically. Keying the coefficient map this way makes iteration
/// (and therefore every accumulated sum) deterministic.
struct GradedLexLess {
    bool operator()(const MultiIndex& a, const MultiIndex& b) const;
};

/// Sparse real polynomial in a fixed number of variables.
///
/// Canonical form: no explicit zeros are stored, and arithmetic results are
/// pruned of coefficients below 1e-14 (float dust from cancellation). The
/// degree cap is the ambient degree bound d of the space P(d) the polynomial
/// lives in; the actual total degree may be smaller.
///
/// Variable convention for 2*kappa variables: (x_1..x_kappa, y_1..y_kappa).
/// The inner pair used by the P0/P* split is (x_1, y_1) = indices {0, kappa}.
class Polynomial {
public:
    using CoeffMap = std::map<MultiIndex, double, GradedLexLess>;

    Polynomial() : num_vars_(0), degree_cap_(0) {}
    Polynomial(int num_vars, int degree_cap);

    static Polynomial zero(int num_vars, int degree_cap = 0);
    static Polynomial constant(int num_vars, double value);
    static Polynomial monomial(MultiIndex exponents, double coeff);

    int num_vars() const { return num_vars_; }
    int degree_cap() const { return degree_cap_; }
    /// Actual total degree; -1 for the zero polynomial.
    int total_degree() const;

    const CoeffMap& coeffs() const { return coeffs_; }
    double coeff(const MultiIndex& mi) const;
    void set_coeff(const MultiIndex& mi, double value);
    /// Adds into an existing coefficient (used when assembling results).
    void add_coeff(const MultiIndex& mi, double value);

    bool is_zero() const { return coeffs_.empty(); }
    std::size_t term_count() const { return coeffs_.size(); }

    double eval(std::span<const double> point) const;
    double eval(const Eigen::VectorXd& point) const;

    Polynomial operator+(const Polynomial& rhs) const;
    Polynomial operator-(const Polynomial& rhs) const;
    Polynomial operator*(const Polynomial& rhs) const;
    Polynomial operator*(double scalar) const;
    Polynomial operator-() const { return *this * -1.0; }

    /// Equality is coefficient-map equality; degree caps are not compared.
    bool operator==(const Polynomial& rhs) const;

    /// Drops coefficients with |c| < tol. Arithmetic applies this with the
    /// canonical tolerance 1e-14.
    void prune(double tol = kPruneTol);

    std::string to_string() const;

    static constexpr double kPruneTol = 1e-14;

private:
    void check_index(const MultiIndex& mi) const;

    int num_vars_;
    int degree_cap_;
    CoeffMap coeffs_;
};

inline Polynomial operator*(double scalar, const Polynomial& p) { return p * scalar; }

/// Composition p(pi * z) for a linear map pi: R^{cols} -> R^{rows};
/// p must have rows variables, the result has cols variables.
Polynomial pullback(const Polynomial& p, const Eigen::MatrixXd& pi);

/// Substitutes values for the listed variables; the result lives in the
/// remaining variables, in their original relative order.
Polynomial freeze(const Polynomial& p, std::span<const int> fixed_vars,
                  std::span<const double> values);

/// Splits p by total degree in the selected variables; entry k collects the
/// monomials of selected-degree exactly k. The parts sum to p coefficient-
/// exactly. With no selection, all variables are selected.
std::vector<Polynomial> homogeneous_parts(const Polynomial& p,
                                          std::span<const int> selected_vars = {});

struct CoeffNorms {
    double full;  ///< l2 norm of all coefficients.
    double nc;    ///< l2 norm omitting the constant term.
};
CoeffNorms coeff_norms(const Polynomial& p);

/// P0 is the restriction of p to x_1 = y_1 = 0, expressed in the remaining
/// (outer) variables; pstar_full = p - P0 vanishes on that slice. Requires
/// num_vars = 2*kappa with kappa >= 2.
struct InnerOuterSplit {
    Polynomial P0;          ///< in the 2*(kappa-1) outer variables
    Polynomial Pstar;       ///< in all 2*kappa variables
    std::vector<int> inner_vars;
    std::vector<int> outer_vars;
};
InnerOuterSplit split_P0_Pstar(const Polynomial& p, int kappa);

/// Embeds a polynomial in the outer variables back into the full space.
Polynomial embed_in_vars(const Polynomial& p, int full_num_vars,
                         std::span<const int> var_positions);

/// Collects p as sum_gamma c_gamma(outer) * inner^gamma: keys are the inner
/// multi-indices, values the outer-variable coefficient polynomials.
std::map<MultiIndex, Polynomial, GradedLexLess> decompose_by_vars(
    const Polynomial& p, std::span<const int> inner_vars);

/// Text format: one monomial per line, "e_1 e_2 ... e_m : coefficient".
/// '#' comments and blank lines are ignored; the exponent count of the first
/// monomial fixes the variable count.
Polynomial read_polynomial(std::istream& in, const std::string& filename = "<stream>");
Polynomial read_polynomial_file(const std::string& path);
void write_polynomial(std::ostream& out, const Polynomial& p);

}  // namespace oscint
