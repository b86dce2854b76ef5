#include "oscint/degeneracy.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <functional>
#include <limits>
#include <istream>
#include <ostream>
#include <sstream>

#include "oscint/rng.hpp"

namespace oscint {

namespace {

Eigen::MatrixXd nullspace_basis(const Eigen::MatrixXd& m) {
    Eigen::FullPivLU<Eigen::MatrixXd> lu(m);
    lu.setThreshold(1e-10);
    return lu.kernel();
}

int numeric_rank(const Eigen::MatrixXd& m) {
    if (m.size() == 0) return 0;
    Eigen::FullPivLU<Eigen::MatrixXd> lu(m);
    lu.setThreshold(1e-10);
    return static_cast<int>(lu.rank());
}

/// Two-pass modified Gram-Schmidt; candidates are normalized before the drop
/// decision so the tolerance is absolute against unit generators.
Eigen::MatrixXd orthonormalize_columns(const Eigen::MatrixXd& candidates, double drop_tol) {
    const Eigen::Index n = candidates.rows();
    Eigen::MatrixXd basis(n, candidates.cols());
    Eigen::Index r = 0;
    for (Eigen::Index c = 0; c < candidates.cols(); ++c) {
        Eigen::VectorXd v = candidates.col(c);
        const double norm0 = v.norm();
        if (norm0 <= drop_tol) continue;
        v /= norm0;
        for (int pass = 0; pass < 2; ++pass)
            for (Eigen::Index k = 0; k < r; ++k) v -= basis.col(k).dot(v) * basis.col(k);
        const double norm1 = v.norm();
        if (norm1 > drop_tol) basis.col(r++) = v / norm1;
    }
    return basis.leftCols(r);
}

}  // namespace

void ProjectionTriple::validate() const {
    if (kappa <= 0) throw validation_error("projection triple: kappa must be positive");
    for (int j = 0; j < 3; ++j) {
        const auto& m = maps[static_cast<std::size_t>(j)];
        if (m.rows() != kappa || m.cols() != 2 * kappa)
            throw validation_error("projection triple: map " + std::to_string(j + 1) +
                                   " must be kappa x 2*kappa");
        if (numeric_rank(m) != kappa)
            throw validation_error("projection triple: map " + std::to_string(j + 1) +
                                   " is not surjective (rank < kappa)");
    }
    for (int i = 0; i < 3; ++i) {
        for (int j = i + 1; j < 3; ++j) {
            Eigen::MatrixXd ni = nullspace_basis(maps[static_cast<std::size_t>(i)]);
            Eigen::MatrixXd nj = nullspace_basis(maps[static_cast<std::size_t>(j)]);
            Eigen::MatrixXd joint(2 * kappa, ni.cols() + nj.cols());
            joint << ni, nj;
            if (numeric_rank(joint) != 2 * kappa)
                throw validation_error("projection triple: nullspaces of maps " +
                                       std::to_string(i + 1) + " and " + std::to_string(j + 1) +
                                       " are not transverse");
        }
    }
}

ProjectionTriple canonical_triple(int kappa) {
    ProjectionTriple t;
    t.kappa = kappa;
    const auto id = Eigen::MatrixXd::Identity(kappa, kappa);
    const auto zero = Eigen::MatrixXd::Zero(kappa, kappa);
    t.maps[0] = Eigen::MatrixXd(kappa, 2 * kappa);
    t.maps[0] << id, zero;
    t.maps[1] = Eigen::MatrixXd(kappa, 2 * kappa);
    t.maps[1] << zero, id;
    t.maps[2] = Eigen::MatrixXd(kappa, 2 * kappa);
    t.maps[2] << id, id;
    return t;
}

ProjectionTriple read_projection_triple(std::istream& in, const std::string& filename) {
    std::vector<std::vector<std::vector<double>>> blocks(1);
    std::string line;
    long line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        const auto hash = line.find('#');
        if (hash != std::string::npos) line.erase(hash);
        std::istringstream ls(line);
        std::vector<double> row;
        double x = 0.0;
        while (ls >> x) row.push_back(x);
        if (row.empty()) {
            if (!blocks.back().empty()) blocks.emplace_back();
            continue;
        }
        blocks.back().push_back(std::move(row));
    }
    while (!blocks.empty() && blocks.back().empty()) blocks.pop_back();
    if (blocks.size() != 3)
        throw parse_error(filename, line_no,
                          "expected three blank-line separated matrices, got " +
                              std::to_string(blocks.size()));
    ProjectionTriple t;
    for (int j = 0; j < 3; ++j) {
        const auto& rows = blocks[static_cast<std::size_t>(j)];
        const std::size_t ncols = rows.front().size();
        for (const auto& r : rows)
            if (r.size() != ncols)
                throw parse_error(filename, line_no, "ragged matrix in block " + std::to_string(j + 1));
        if (ncols != 2 * rows.size())
            throw parse_error(filename, line_no,
                              "matrix in block " + std::to_string(j + 1) + " is not kappa x 2*kappa");
        Eigen::MatrixXd m(rows.size(), ncols);
        for (std::size_t r = 0; r < rows.size(); ++r)
            for (std::size_t c = 0; c < ncols; ++c) m(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(c)) = rows[r][c];
        t.maps[static_cast<std::size_t>(j)] = m;
        if (j == 0) t.kappa = static_cast<int>(rows.size());
        if (static_cast<int>(rows.size()) != t.kappa)
            throw parse_error(filename, line_no, "matrices have inconsistent shapes");
    }
    return t;
}

ProjectionTriple read_projection_triple_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw parse_error(path, 0, "cannot open file");
    return read_projection_triple(in, path);
}

void write_projection_triple(std::ostream& out, const ProjectionTriple& t) {
    char buf[64];
    for (int j = 0; j < 3; ++j) {
        const auto& m = t.maps[static_cast<std::size_t>(j)];
        for (Eigen::Index r = 0; r < m.rows(); ++r) {
            for (Eigen::Index c = 0; c < m.cols(); ++c) {
                std::snprintf(buf, sizeof(buf), "%.17g", m(r, c));
                out << buf << (c + 1 == m.cols() ? "" : " ");
            }
            out << '\n';
        }
        if (j < 2) out << '\n';
    }
}

MonomialBasis MonomialBasis::build(int num_vars, int degree) {
    MonomialBasis b;
    b.num_vars = num_vars;
    b.degree = degree;
    MultiIndex mi(static_cast<std::size_t>(num_vars), 0);
    // Enumerate all exponent tuples with total degree <= degree, then sort
    // graded-lex to match the polynomial coefficient order.
    std::function<void(int, int)> rec = [&](int pos, int remaining) {
        if (pos == num_vars) {
            b.monomials.push_back(mi);
            return;
        }
        for (int e = 0; e <= remaining; ++e) {
            mi[static_cast<std::size_t>(pos)] = e;
            rec(pos + 1, remaining - e);
        }
        mi[static_cast<std::size_t>(pos)] = 0;
    };
    rec(0, degree);
    std::sort(b.monomials.begin(), b.monomials.end(), GradedLexLess{});
    return b;
}

int MonomialBasis::index_of(const MultiIndex& mi) const {
    auto it = std::lower_bound(monomials.begin(), monomials.end(), mi, GradedLexLess{});
    if (it == monomials.end() || *it != mi) return -1;
    return static_cast<int>(it - monomials.begin());
}

Eigen::VectorXd MonomialBasis::to_vector(const Polynomial& p) const {
    if (p.num_vars() != num_vars)
        throw argument_error("monomial basis: polynomial variable count mismatch");
    Eigen::VectorXd v = Eigen::VectorXd::Zero(dimension());
    for (const auto& [mi, c] : p.coeffs()) {
        const int i = index_of(mi);
        if (i < 0) throw argument_error("monomial basis: polynomial degree exceeds basis degree");
        v(i) = c;
    }
    return v;
}

Polynomial MonomialBasis::from_vector(const Eigen::VectorXd& v, double prune_tol) const {
    if (v.size() != dimension()) throw argument_error("monomial basis: vector length mismatch");
    Polynomial p(num_vars, degree);
    for (int i = 0; i < dimension(); ++i) {
        if (std::abs(v(i)) >= prune_tol) p.set_coeff(monomials[static_cast<std::size_t>(i)], v(i));
    }
    return p;
}

DegenerateBasis::DegenerateBasis(int kappa, int d, ProjectionTriple triple, MonomialBasis ambient,
                                 Eigen::MatrixXd vectors)
    : kappa_(kappa), d_(d), triple_(std::move(triple)), ambient_(std::move(ambient)),
      vectors_(std::move(vectors)) {}

DegenerateBasis build_degenerate_basis(int kappa, int d, const ProjectionTriple& triple) {
    if (d < 0) throw argument_error("build_degenerate_basis: d must be >= 0");
    triple.validate();
    if (triple.kappa != kappa)
        throw argument_error("build_degenerate_basis: kappa does not match the triple");

    const MonomialBasis ambient = MonomialBasis::build(2 * kappa, d);
    const MonomialBasis small = MonomialBasis::build(kappa, d);

    Eigen::MatrixXd generators(ambient.dimension(), 3 * small.dimension());
    Eigen::Index col = 0;
    for (int j = 0; j < 3; ++j) {
        for (const auto& mi : small.monomials) {
            const Polynomial g = pullback(Polynomial::monomial(mi, 1.0),
                                          triple.maps[static_cast<std::size_t>(j)]);
            generators.col(col++) = ambient.to_vector(g);
        }
    }
    Eigen::MatrixXd basis = orthonormalize_columns(generators, kRankDropTol);
    return DegenerateBasis(kappa, d, triple, ambient, std::move(basis));
}

Eigen::MatrixXd complement_basis(const DegenerateBasis& basis) {
    const int n = basis.ambient().dimension();
    const auto& B = basis.vectors();
    Eigen::MatrixXd candidates(n, n);
    for (int i = 0; i < n; ++i) {
        Eigen::VectorXd e = Eigen::VectorXd::Unit(n, i);
        candidates.col(i) = e - B * (B.transpose() * e);
    }
    return orthonormalize_columns(candidates, kRankDropTol);
}

QuotientNormReport nd_norm(const Polynomial& P, const DegenerateBasis& basis) {
    if (P.num_vars() != 2 * basis.kappa())
        throw argument_error("nd_norm: polynomial must have 2*kappa variables");
    Eigen::VectorXd v;
    try {
        v = basis.ambient().to_vector(P);
    } catch (const argument_error&) {
        throw argument_error("nd_norm: polynomial degree exceeds basis degree d");
    }
    const auto& B = basis.vectors();
    const Eigen::VectorXd proj = B * (B.transpose() * v);
    const Eigen::VectorXd res = v - proj;

    QuotientNormReport out;
    out.nd_value = res.norm();
    out.residual = basis.ambient().from_vector(res);
    out.nearest_degenerate = P - out.residual;
    return out;
}

namespace {

/// Shared core of the symbolic Q builders: expresses P (4 variables, layout
/// (x1, x2, y1, y2)) as sum_gamma c_gamma(x2,y2) * (x1,y1)^gamma and returns
/// sum_i (sum_gamma W(gamma,i) c_gamma)^2 for the orthonormal columns W of
/// the chosen inner subspace.
Polynomial squared_norm_poly(const Polynomial& P, const MonomialBasis& inner_space,
                             const Eigen::MatrixXd& W) {
    const std::vector<int> inner_vars = {0, 2};
    auto parts = decompose_by_vars(P, inner_vars);

    std::vector<Polynomial> coeff_polys(static_cast<std::size_t>(inner_space.dimension()),
                                        Polynomial(2, 0));
    for (const auto& [mi, poly] : parts) {
        const int idx = inner_space.index_of(mi);
        if (idx < 0)
            throw argument_error("squared_norm_poly: inner degree of P exceeds basis degree");
        coeff_polys[static_cast<std::size_t>(idx)] = poly;
    }

    Polynomial Q(2, 0);
    for (Eigen::Index i = 0; i < W.cols(); ++i) {
        Polynomial s(2, 0);
        for (Eigen::Index g = 0; g < W.rows(); ++g) {
            const double w = W(g, i);
            if (w != 0.0) s = s + coeff_polys[static_cast<std::size_t>(g)] * w;
        }
        Q = Q + s * s;
    }
    return Q;
}

}  // namespace

Polynomial nd_norm_squared_poly(const Polynomial& P, const DegenerateBasis& inner_basis) {
    if (P.num_vars() != 4)
        throw argument_error("nd_norm_squared_poly: P must have 4 variables");
    if (inner_basis.kappa() != 1)
        throw argument_error("nd_norm_squared_poly: inner basis must have kappa = 1");
    const Eigen::MatrixXd W = complement_basis(inner_basis);
    return squared_norm_poly(P, inner_basis.ambient(), W);
}

Polynomial nc_norm_squared_poly(const Polynomial& P, int inner_degree_cap) {
    if (P.num_vars() != 4)
        throw argument_error("nc_norm_squared_poly: P must have 4 variables");
    const MonomialBasis inner_space = MonomialBasis::build(2, inner_degree_cap);
    // Complement of the constants: every non-constant inner monomial.
    Eigen::MatrixXd W(inner_space.dimension(), inner_space.dimension() - 1);
    Eigen::Index col = 0;
    for (int i = 0; i < inner_space.dimension(); ++i) {
        if (total_degree(inner_space.monomials[static_cast<std::size_t>(i)]) == 0) continue;
        W.col(col++) = Eigen::VectorXd::Unit(inner_space.dimension(), i);
    }
    return squared_norm_poly(P, inner_space, W);
}

Rank3Projection rank3_project(const Polynomial& p) {
    if (p.num_vars() != 2) throw argument_error("rank3_project: polynomial must have 2 variables");
    const int k = std::max(p.total_degree(), 0);
    for (const auto& [mi, c] : p.coeffs())
        if (total_degree(mi) != k)
            throw argument_error("rank3_project: polynomial is not homogeneous");

    const Polynomial xk = Polynomial::monomial({k, 0}, 1.0);
    const Polynomial yk = Polynomial::monomial({0, k}, 1.0);
    Eigen::MatrixXd sum_map(1, 2);
    sum_map << 1.0, 1.0;
    const Polynomial sk = pullback(Polynomial::monomial({k}, 1.0), sum_map);

    const MonomialBasis space = MonomialBasis::build(2, k);
    const Eigen::VectorXd vp = space.to_vector(p);

    Rank3Projection out;
    if (k == 0) {
        out.q1 = p.coeff(MultiIndex{0, 0});
        out.residual = Polynomial(2, 0);
        return out;
    }
    if (k == 1) {
        out.q1 = p.coeff(MultiIndex{1, 0});
        out.q2 = p.coeff(MultiIndex{0, 1});
        out.residual = Polynomial(2, 1);
        return out;
    }
    Eigen::MatrixXd G(space.dimension(), 3);
    G.col(0) = space.to_vector(xk);
    G.col(1) = space.to_vector(yk);
    G.col(2) = space.to_vector(sk);
    const Eigen::Vector3d q = (G.transpose() * G).ldlt().solve(G.transpose() * vp);
    out.q1 = q(0);
    out.q2 = q(1);
    out.q3 = q(2);
    out.residual = p - (xk * out.q1 + yk * out.q2 + sk * out.q3);
    out.residual.prune(1e-12);
    return out;
}

NormalizationResult normalize_projections(const ProjectionTriple& triple) {
    triple.validate();
    const int k = triple.kappa;

    // Adapted coordinates: the x block spans null(pi_2), the y block spans
    // null(pi_1), so pi_1 kills y and pi_2 kills x.
    const Eigen::MatrixXd n1 = nullspace_basis(triple.maps[0]);
    const Eigen::MatrixXd n2 = nullspace_basis(triple.maps[1]);
    Eigen::MatrixXd t0(2 * k, 2 * k);
    t0 << n2, n1;

    // pi_3 in the adapted coordinates: A x + B y with A, B invertible by
    // transversality of null(pi_3) with the other two nullspaces.
    const Eigen::MatrixXd prod3 = triple.maps[2] * t0;
    const Eigen::MatrixXd A = prod3.leftCols(k);
    const Eigen::MatrixXd B = prod3.rightCols(k);
    Eigen::FullPivLU<Eigen::MatrixXd> luA(A), luB(B);
    luA.setThreshold(1e-10);
    luB.setThreshold(1e-10);
    if (!luA.isInvertible())
        throw validation_error("normalize_projections: nullspaces of maps 1 and 3 are not transverse");
    if (!luB.isInvertible())
        throw validation_error("normalize_projections: nullspaces of maps 2 and 3 are not transverse");

    Eigen::MatrixXd t_dom(2 * k, 2 * k);
    t_dom.leftCols(k) = t0.leftCols(k) * luA.inverse();
    t_dom.rightCols(k) = t0.rightCols(k) * luB.inverse();

    const Eigen::MatrixXd D = triple.maps[0] * t_dom.leftCols(k);
    const Eigen::MatrixXd E = triple.maps[1] * t_dom.rightCols(k);

    NormalizationResult out;
    out.canonical = canonical_triple(k);
    out.T_domain = t_dom;
    out.T_ranges[0] = D.inverse();
    out.T_ranges[1] = E.inverse();
    out.T_ranges[2] = Eigen::MatrixXd::Identity(k, k);
    return out;
}

namespace {

/// Coefficient-space machinery behind the two-term seminorm: selector of the
/// P* component, restriction to the outer plane, and orthonormal bases for
/// the degenerate space W, its P*-image W*, and the outer degenerate space.
struct SeminormContext {
    MonomialBasis ambient;       // 4 variables, degree <= d
    MonomialBasis outer;         // 2 variables, degree <= d
    Eigen::MatrixXd W;           // degenerate space, orthonormal columns
    Eigen::MatrixXd complement;  // orthogonal complement of W
    Eigen::MatrixXd Wstar;       // {D - D0 : D degenerate}
    Eigen::MatrixXd Wouter;      // degenerate space of the outer plane
    std::vector<int> inner_degree;  // per ambient monomial: degree in (x1, y1)
    Eigen::MatrixXd restrict_outer; // outer_dim x ambient_dim

    explicit SeminormContext(int d) {
        const ProjectionTriple triple = canonical_triple(2);
        DegenerateBasis deg4 = build_degenerate_basis(2, d, triple);
        ambient = deg4.ambient();
        W = deg4.vectors();
        complement = complement_basis(deg4);

        DegenerateBasis deg2 = build_degenerate_basis(1, d, canonical_triple(1));
        outer = deg2.ambient();
        Wouter = deg2.vectors();

        inner_degree.reserve(static_cast<std::size_t>(ambient.dimension()));
        for (const auto& mi : ambient.monomials) inner_degree.push_back(mi[0] + mi[2]);

        restrict_outer = Eigen::MatrixXd::Zero(outer.dimension(), ambient.dimension());
        for (int i = 0; i < ambient.dimension(); ++i) {
            const auto& mi = ambient.monomials[static_cast<std::size_t>(i)];
            if (mi[0] == 0 && mi[2] == 0) {
                const int o = outer.index_of(MultiIndex{mi[1], mi[3]});
                restrict_outer(o, i) = 1.0;
            }
        }

        Eigen::MatrixXd images = W;
        for (Eigen::Index c = 0; c < images.cols(); ++c)
            for (int i = 0; i < ambient.dimension(); ++i)
                if (inner_degree[static_cast<std::size_t>(i)] == 0) images(i, c) = 0.0;
        Wstar = orthonormalize_columns(images, kRankDropTol);
    }

    Eigen::VectorXd star_part(const Eigen::VectorXd& v) const {
        Eigen::VectorXd s = v;
        for (int i = 0; i < ambient.dimension(); ++i)
            if (inner_degree[static_cast<std::size_t>(i)] == 0) s(i) = 0.0;
        return s;
    }

    double term_star_quotient(const Eigen::VectorXd& v) const {
        const Eigen::VectorXd s = star_part(v);
        return (s - Wstar * (Wstar.transpose() * s)).norm();
    }

    double term_star_direct(const Eigen::VectorXd& v) const { return star_part(v).norm(); }

    double term_outer(const Eigen::VectorXd& v) const {
        const Eigen::VectorXd o = restrict_outer * v;
        return (o - Wouter * (Wouter.transpose() * o)).norm();
    }
};

}  // namespace

double seminorm_sum(const Polynomial& P, int d) {
    if (P.num_vars() != 4) throw argument_error("seminorm_sum: P must have 4 variables");
    const SeminormContext ctx(d);
    const Eigen::VectorXd v = ctx.ambient.to_vector(P);
    return ctx.term_star_direct(v) + ctx.term_outer(v);
}

double seminorm_sum_quotient(const Polynomial& P, int d) {
    if (P.num_vars() != 4) throw argument_error("seminorm_sum_quotient: P must have 4 variables");
    const SeminormContext ctx(d);
    const Eigen::VectorXd v = ctx.ambient.to_vector(P);
    return ctx.term_star_quotient(v) + ctx.term_outer(v);
}

SeminormEstimate estimate_seminorm_constant(int d, int num_samples, std::uint64_t seed) {
    if (d < 1) throw argument_error("estimate_seminorm_constant: d must be >= 1");
    const SeminormContext ctx(d);
    const Eigen::MatrixXd& C = ctx.complement;
    const int qdim = static_cast<int>(C.cols());
    if (qdim == 0) {
        // Everything of this degree is degenerate (true for d = 1); the unit
        // sphere of the quotient is empty and the bound is vacuous.
        SeminormEstimate out;
        out.c_hat = std::numeric_limits<double>::infinity();
        out.worst_case = Polynomial(4, d);
        return out;
    }

    // Both seminorm terms are norms of linear images of the quotient
    // coordinates; precompute those maps.
    const int n = ctx.ambient.dimension();
    Eigen::MatrixXd L1(n, qdim);
    Eigen::MatrixXd L2(ctx.outer.dimension(), qdim);
    for (int c = 0; c < qdim; ++c) {
        const Eigen::VectorXd s = ctx.star_part(C.col(c));
        L1.col(c) = s - ctx.Wstar * (ctx.Wstar.transpose() * s);
        const Eigen::VectorXd o = ctx.restrict_outer * C.col(c);
        L2.col(c) = o - ctx.Wouter * (ctx.Wouter.transpose() * o);
    }
    const Eigen::MatrixXd M1 = L1.transpose() * L1;
    const Eigen::MatrixXd M2 = L2.transpose() * L2;

    const auto value = [&](const Eigen::VectorXd& u) {
        return std::sqrt(std::max(0.0, u.dot(M1 * u))) + std::sqrt(std::max(0.0, u.dot(M2 * u)));
    };

    SplitMix64 rng(seed);
    Eigen::VectorXd best = Eigen::VectorXd::Unit(qdim, 0);
    double best_val = value(best);
    int used = 0;
    for (int s = 0; s < num_samples; ++s) {
        Eigen::VectorXd u(qdim);
        for (int i = 0; i < qdim; ++i) u(i) = rng.normal();
        const double norm = u.norm();
        if (norm < 1e-12) continue;
        u /= norm;
        ++used;
        const double val = value(u);
        if (val < best_val) {
            best_val = val;
            best = u;
        }
    }

    // The l2 combination sqrt(t1^2 + t2^2) brackets the sum within sqrt(2),
    // and its sphere minimum is an eigenvalue problem; its minimizer is a
    // strong starting point for refining the actual sum.
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> eig(M1 + M2);
    Eigen::VectorXd u_eig = eig.eigenvectors().col(0);
    if (value(u_eig) < best_val) {
        best_val = value(u_eig);
        best = u_eig;
    }

    // Projected gradient descent on the sphere with backtracking.
    const double mu2 = 1e-24;  // smoothing of the norm kinks
    Eigen::VectorXd u = best;
    double fu = best_val;
    double step = 0.1;
    for (int it = 0; it < 400; ++it) {
        const double t1 = std::sqrt(u.dot(M1 * u) + mu2);
        const double t2 = std::sqrt(u.dot(M2 * u) + mu2);
        Eigen::VectorXd g = (M1 * u) / t1 + (M2 * u) / t2;
        g -= g.dot(u) * u;
        if (g.norm() < 1e-13) break;
        bool moved = false;
        for (int bt = 0; bt < 30; ++bt) {
            Eigen::VectorXd cand = (u - step * g).normalized();
            const double fc = value(cand);
            if (fc < fu) {
                u = cand;
                fu = fc;
                moved = true;
                break;
            }
            step *= 0.5;
        }
        if (!moved) break;
        step = std::min(step * 2.0, 1.0);
    }
    if (fu < best_val) {
        best_val = fu;
        best = u;
    }

    SeminormEstimate out;
    out.c_hat = best_val;
    out.worst_case = ctx.ambient.from_vector(C * best);
    out.quotient_dim = qdim;
    out.samples_used = used;
    return out;
}

void write_degenerate_basis(std::ostream& out, const DegenerateBasis& basis) {
    out << basis.kappa() << ' ' << basis.d() << ' ' << basis.ambient().dimension() << ' '
        << basis.dim() << '\n';
    char buf[64];
    const auto& B = basis.vectors();
    for (Eigen::Index c = 0; c < B.cols(); ++c) {
        for (Eigen::Index r = 0; r < B.rows(); ++r) {
            std::snprintf(buf, sizeof(buf), "%.17g", B(r, c));
            out << buf << (r + 1 == B.rows() ? "" : " ");
        }
        out << '\n';
    }
}

void write_degenerate_basis_file(const std::string& path, const DegenerateBasis& basis) {
    std::ofstream out(path);
    if (!out) throw numeric_error("cannot open output file " + path);
    write_degenerate_basis(out, basis);
}

DegenerateBasis read_degenerate_basis(std::istream& in, const std::string& filename) {
    int kappa = 0, d = 0, ambient_dim = 0, dim = 0;
    if (!(in >> kappa >> d >> ambient_dim >> dim))
        throw parse_error(filename, 1, "bad basis header");
    const MonomialBasis ambient = MonomialBasis::build(2 * kappa, d);
    if (ambient.dimension() != ambient_dim)
        throw parse_error(filename, 1, "ambient dimension does not match kappa and d");
    Eigen::MatrixXd B(ambient_dim, dim);
    for (int c = 0; c < dim; ++c)
        for (int r = 0; r < ambient_dim; ++r)
            if (!(in >> B(r, c))) throw parse_error(filename, 2 + c, "not enough basis entries");
    return DegenerateBasis(kappa, d, canonical_triple(kappa), ambient, std::move(B));
}

DegenerateBasis read_degenerate_basis_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw parse_error(path, 0, "cannot open file");
    return read_degenerate_basis(in, path);
}

}  // namespace oscint
