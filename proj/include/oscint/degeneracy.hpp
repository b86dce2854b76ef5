#pragma once

#include <Eigen/Dense>
#include <array>
#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

#include "oscint/polynomial.hpp"

namespace oscint {

/// Three surjective linear maps R^{2 kappa} -> R^kappa in general position
/// (pairwise transverse nullspaces).
struct ProjectionTriple {
    int kappa = 0;
    std::array<Eigen::MatrixXd, 3> maps;

    /// Throws validation_error naming the failing map or pair.
    void validate() const;
};

/// pi_1(x,y) = x, pi_2(x,y) = y, pi_3(x,y) = x + y.
ProjectionTriple canonical_triple(int kappa);

ProjectionTriple read_projection_triple(std::istream& in, const std::string& filename = "<stream>");
ProjectionTriple read_projection_triple_file(const std::string& path);
void write_projection_triple(std::ostream& out, const ProjectionTriple& t);

/// The monomials of degree <= degree in num_vars variables, in graded-lex
/// order; coefficient vectors of polynomials are taken in this basis, where
/// the coefficient l2 norm is the P(d) norm.
struct MonomialBasis {
    int num_vars = 0;
    int degree = 0;
    std::vector<MultiIndex> monomials;

    static MonomialBasis build(int num_vars, int degree);
    int dimension() const { return static_cast<int>(monomials.size()); }
    int index_of(const MultiIndex& mi) const;  ///< -1 if absent
    Eigen::VectorXd to_vector(const Polynomial& p) const;
    Polynomial from_vector(const Eigen::VectorXd& v, double prune_tol = Polynomial::kPruneTol) const;
};

/// Orthonormal basis of the span of all pullbacks of monomials of degree
/// <= d under the three projections: the subspace of degenerate polynomials
/// inside P(d).
class DegenerateBasis {
public:
    DegenerateBasis() = default;
    DegenerateBasis(int kappa, int d, ProjectionTriple triple, MonomialBasis ambient,
                    Eigen::MatrixXd vectors);

    int kappa() const { return kappa_; }
    int d() const { return d_; }
    int dim() const { return static_cast<int>(vectors_.cols()); }
    const ProjectionTriple& triple() const { return triple_; }
    const MonomialBasis& ambient() const { return ambient_; }
    /// ambient_dim x dim, orthonormal columns.
    const Eigen::MatrixXd& vectors() const { return vectors_; }

private:
    int kappa_ = 0;
    int d_ = 0;
    ProjectionTriple triple_;
    MonomialBasis ambient_;
    Eigen::MatrixXd vectors_;
};

/// Rank decisions use modified Gram-Schmidt with re-orthogonalization and
/// this absolute drop tolerance against unit-normalized generators.
inline constexpr double kRankDropTol = 1e-10;

DegenerateBasis build_degenerate_basis(int kappa, int d, const ProjectionTriple& triple);

/// Orthonormal basis of the orthogonal complement of the degenerate space.
Eigen::MatrixXd complement_basis(const DegenerateBasis& basis);

/// Distance from P to the degenerate subspace in the coefficient l2 norm,
/// with the decomposition P = nearest_degenerate + residual.
struct QuotientNormReport {
    double nd_value = 0.0;
    Polynomial residual;
    Polynomial nearest_degenerate;
};
QuotientNormReport nd_norm(const Polynomial& P, const DegenerateBasis& basis);

/// The polynomial Q(x_2, y_2) = ||P_{(x_2,y_2)}||_nd^2 of degree <= 2d, for a
/// 4-variable P in (x_1, x_2, y_1, y_2) layout; inner_basis is a kappa = 1
/// basis describing degeneracy of the frozen (x_1, y_1) polynomial.
Polynomial nd_norm_squared_poly(const Polynomial& P, const DegenerateBasis& inner_basis);

/// Same shape with the norm modulo constants instead: the square of the nc
/// norm of the frozen polynomial, as a polynomial in the outer variables.
Polynomial nc_norm_squared_poly(const Polynomial& P, int inner_degree_cap);

/// Orthogonal projection of a homogeneous degree-k polynomial in 2 variables
/// onto span{x^k, y^k, (x+y)^k}. Uniqueness conventions: q3 = 0 when k = 1,
/// q2 = q3 = 0 when k = 0.
struct Rank3Projection {
    double q1 = 0.0, q2 = 0.0, q3 = 0.0;
    Polynomial residual;
};
Rank3Projection rank3_project(const Polynomial& p);

/// Invertible changes of coordinates carrying a general-position triple to
/// the canonical one: T_ranges[j] * maps[j] * T_domain = canonical maps[j]
/// entrywise (x, y, x + y).
struct NormalizationResult {
    ProjectionTriple canonical;
    Eigen::MatrixXd T_domain;                  ///< 2 kappa x 2 kappa
    std::array<Eigen::MatrixXd, 3> T_ranges;   ///< kappa x kappa each
};
NormalizationResult normalize_projections(const ProjectionTriple& triple);

/// Direct evaluation of the two-term seminorm for a 4-variable polynomial:
/// ||P*||_{P(d)} + ||P0||_nd, with P = P0 + P* the split at x_1 = y_1 = 0 and
/// ||P0||_nd the outer-variable quotient norm.
double seminorm_sum(const Polynomial& P, int d);

/// The same quantity minimized over degenerate shifts of P; this descends to
/// the quotient space, so perturbing P by any degenerate polynomial leaves
/// the value unchanged up to roundoff.
double seminorm_sum_quotient(const Polynomial& P, int d);

/// Sampled lower envelope of seminorm_sum_quotient over the unit sphere of
/// the quotient (random directions in the orthogonal complement of the
/// degenerate space, plus projected-gradient refinement). Not a certified
/// minimum.
struct SeminormEstimate {
    double c_hat = 0.0;
    Polynomial worst_case;
    int quotient_dim = 0;
    int samples_used = 0;
};
SeminormEstimate estimate_seminorm_constant(int d, int num_samples, std::uint64_t seed);

void write_degenerate_basis(std::ostream& out, const DegenerateBasis& basis);
void write_degenerate_basis_file(const std::string& path, const DegenerateBasis& basis);
DegenerateBasis read_degenerate_basis(std::istream& in, const std::string& filename = "<stream>");
DegenerateBasis read_degenerate_basis_file(const std::string& path);

}  // namespace oscint
