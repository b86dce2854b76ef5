#include "oscint/slicing.hpp"

#include <cmath>
#include <fstream>
#include <istream>
#include <ostream>

#include "oscint/quadrature.hpp"

namespace oscint {

DiscretizedSet::DiscretizedSet(int n_, bool filled) : n(n_) {
    if (n <= 0) throw argument_error("discretized set: n must be positive");
    mask.assign(static_cast<std::size_t>(n) * static_cast<std::size_t>(n), filled ? 1 : 0);
}

double DiscretizedSet::measure() const {
    std::size_t count = 0;
    for (auto v : mask) count += v != 0;
    return static_cast<double>(count) / (static_cast<double>(n) * static_cast<double>(n));
}

DiscretizedSet read_discretized_set(std::istream& in, const std::string& filename) {
    int n = 0;
    if (!(in >> n) || n <= 0) throw parse_error(filename, 1, "bad grid resolution header");
    std::string row;
    std::getline(in, row);  // rest of header line
    DiscretizedSet set(n);
    for (int i = 0; i < n; ++i) {
        if (!std::getline(in, row)) throw parse_error(filename, 2 + i, "missing mask row");
        if (static_cast<int>(row.size()) < n)
            throw parse_error(filename, 2 + i, "mask row shorter than n");
        for (int j = 0; j < n; ++j) {
            const char c = row[static_cast<std::size_t>(j)];
            if (c != '0' && c != '1')
                throw parse_error(filename, 2 + i, "mask rows must consist of '0'/'1'");
            set.set(i, j, c == '1');
        }
    }
    return set;
}

DiscretizedSet read_discretized_set_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw parse_error(path, 0, "cannot open file");
    return read_discretized_set(in, path);
}

void write_discretized_set(std::ostream& out, const DiscretizedSet& set) {
    out << set.n << '\n';
    for (int i = 0; i < set.n; ++i) {
        for (int j = 0; j < set.n; ++j) out << (set.at(i, j) ? '1' : '0');
        out << '\n';
    }
}

SliceWitness frust_find(const DiscretizedSet& E, const Eigen::MatrixXd& f,
                        const Eigen::MatrixXd& fp, double R) {
    const int n = E.n;
    if (f.rows() != n || fp.rows() != n || f.cols() != fp.cols())
        throw argument_error("frust_find: f and f' must have n rows and matching dimension");
    if (!(R >= 0.0)) throw argument_error("frust_find: R must be nonnegative");

    const double r = E.measure();
    if (!(r > 4.0 / n))
        throw validation_error("frust_find: measure(E) must exceed 4/n");

    // Hypothesis |f(x) - f'(x')| <= R on every cell of E.
    for (int i = 0; i < n; ++i) {
        for (int j = 0; j < n; ++j) {
            if (!E.at(i, j)) continue;
            const double dist = (f.row(i) - fp.row(j)).norm();
            if (dist > R + 1e-12)
                throw validation_error("frust_find: hypothesis |f - f'| <= R fails at cell (" +
                                       std::to_string(i) + ", " + std::to_string(j) + ")");
        }
    }

    // Slice masses; the good set needs both row and column mass >= r/4.
    std::vector<int> row_count(static_cast<std::size_t>(n), 0);
    std::vector<int> col_count(static_cast<std::size_t>(n), 0);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
            if (E.at(i, j)) {
                ++row_count[static_cast<std::size_t>(i)];
                ++col_count[static_cast<std::size_t>(j)];
            }
    const double need = r / 4.0 * n;  // cells per slice

    int x0 = -1, x0p = -1;
    for (int i = 0; i < n && x0 < 0; ++i) {
        if (row_count[static_cast<std::size_t>(i)] < need) continue;
        for (int j = 0; j < n; ++j) {
            if (!E.at(i, j)) continue;
            if (col_count[static_cast<std::size_t>(j)] >= need) {
                x0 = i;
                x0p = j;
                break;
            }
        }
    }
    if (x0 < 0)
        throw resolution_error("frust_find: no pair with both slice masses >= r/4 at this "
                               "resolution");

    SliceWitness w;
    w.x0_index = x0;
    w.x0p_index = x0p;
    w.R_used = R;
    w.a = 0.5 * (f.row(x0) + fp.row(x0p)).transpose();
    w.G.assign(static_cast<std::size_t>(n), 0);
    w.G1.assign(static_cast<std::size_t>(n), 0);
    for (int i = 0; i < n; ++i) w.G[static_cast<std::size_t>(i)] = E.at(i, x0p) ? 1 : 0;
    for (int j = 0; j < n; ++j) w.G1[static_cast<std::size_t>(j)] = E.at(x0, j) ? 1 : 0;
    return w;
}

namespace {

/// Least-squares split of P(x, y) as p(x) + q(y) over a tensor Gauss grid on
/// [0,1]^2, per component; returns the minimizers and the achieved sup norm
/// of the residual on a fine lattice.
void split_plus(const std::vector<Polynomial>& P, int d, std::vector<Polynomial>& p,
                std::vector<Polynomial>& q, double& sup_norm) {
    const int m = std::max(8, 2 * (d + 1));
    std::vector<double> nodes, weights;
    gauss_legendre_01(m, nodes, weights);

    // Design matrix over the grid: columns are x^0..x^d, y^1..y^d (the
    // constant is shared, so q's constant is pinned to zero; the split is
    // unique only up to that gauge anyway).
    const int cols = (d + 1) + d;
    Eigen::MatrixXd A(m * m, cols);
    std::vector<Eigen::VectorXd> rhs(P.size(), Eigen::VectorXd(m * m));
    for (int i = 0; i < m; ++i) {
        for (int j = 0; j < m; ++j) {
            const int row = i * m + j;
            const double sw = std::sqrt(weights[static_cast<std::size_t>(i)] *
                                        weights[static_cast<std::size_t>(j)]);
            double xp = 1.0;
            for (int e = 0; e <= d; ++e) {
                A(row, e) = sw * xp;
                xp *= nodes[static_cast<std::size_t>(i)];
            }
            double yp = nodes[static_cast<std::size_t>(j)];
            for (int e = 1; e <= d; ++e) {
                A(row, d + e) = sw * yp;
                yp *= nodes[static_cast<std::size_t>(j)];
            }
            const double pt[2] = {nodes[static_cast<std::size_t>(i)], nodes[static_cast<std::size_t>(j)]};
            for (std::size_t comp = 0; comp < P.size(); ++comp)
                rhs[comp](row) = sw * P[comp].eval(std::span<const double>(pt, 2));
        }
    }
    const auto svd = A.bdcSvd(Eigen::ComputeThinU | Eigen::ComputeThinV);

    p.assign(P.size(), Polynomial(1, d));
    q.assign(P.size(), Polynomial(1, d));
    for (std::size_t comp = 0; comp < P.size(); ++comp) {
        const Eigen::VectorXd c = svd.solve(rhs[comp]);
        for (int e = 0; e <= d; ++e)
            if (std::abs(c(e)) > Polynomial::kPruneTol) p[comp].set_coeff(MultiIndex{e}, c(e));
        for (int e = 1; e <= d; ++e)
            if (std::abs(c(d + e)) > Polynomial::kPruneTol) q[comp].set_coeff(MultiIndex{e}, c(d + e));
    }

    // Realized sup norm of |P - p - q| over the square.
    const int fine = 256;
    sup_norm = 0.0;
    for (int i = 0; i <= fine; ++i) {
        for (int j = 0; j <= fine; ++j) {
            const double x = static_cast<double>(i) / fine;
            const double y = static_cast<double>(j) / fine;
            const double pt[2] = {x, y};
            double s2 = 0.0;
            for (std::size_t comp = 0; comp < P.size(); ++comp) {
                const double v = P[comp].eval(std::span<const double>(pt, 2)) -
                                 p[comp].eval(std::span<const double>(&x, 1)) -
                                 q[comp].eval(std::span<const double>(&y, 1));
                s2 += v * v;
            }
            sup_norm = std::max(sup_norm, std::sqrt(s2));
        }
    }
}

}  // namespace

CousinResult cousin_approximate(const DiscretizedSet& E, const Eigen::MatrixXd& f,
                                const Eigen::MatrixXd& g, const std::vector<Polynomial>& P,
                                int d) {
    const int n = E.n;
    const Eigen::Index D = f.cols();
    if (g.cols() != D || f.rows() != n || g.rows() != n)
        throw argument_error("cousin_approximate: f and g must be n x D");
    if (P.size() != static_cast<std::size_t>(D))
        throw argument_error("cousin_approximate: P must have one component per dimension of f");
    for (const auto& comp : P)
        if (comp.num_vars() != 2)
            throw argument_error("cousin_approximate: P components must have 2 variables");
    if (!(E.measure() > 0.0)) throw validation_error("cousin_approximate: E must have positive measure");

    // Hypothesis |f(x) + g(y) + P(x,y)| <= 1 on E at cell midpoints.
    for (int i = 0; i < n; ++i) {
        for (int j = 0; j < n; ++j) {
            if (!E.at(i, j)) continue;
            const double x = (i + 0.5) / n;
            const double y = (j + 0.5) / n;
            const double pt[2] = {x, y};
            double s2 = 0.0;
            for (Eigen::Index comp = 0; comp < D; ++comp) {
                const double v = f(i, comp) + g(j, comp) +
                                 P[static_cast<std::size_t>(comp)].eval(std::span<const double>(pt, 2));
                s2 += v * v;
            }
            if (std::sqrt(s2) > 1.0 + 1e-9)
                throw validation_error("cousin_approximate: hypothesis |f + g + P| <= 1 fails at "
                                       "cell (" + std::to_string(i) + ", " + std::to_string(j) + ")");
        }
    }

    CousinResult out;
    split_plus(P, d, out.p, out.q, out.split_sup);

    // frust inputs: F = f + p(x), F' = -(g + q(y)); the hypothesis transfers
    // with R = 1 + split_sup.
    Eigen::MatrixXd F(n, D), Fp(n, D);
    for (int i = 0; i < n; ++i) {
        const double x = (i + 0.5) / n;
        for (Eigen::Index comp = 0; comp < D; ++comp) {
            F(i, comp) = f(i, comp) +
                         out.p[static_cast<std::size_t>(comp)].eval(std::span<const double>(&x, 1));
            Fp(i, comp) = -(g(i, comp) +
                            out.q[static_cast<std::size_t>(comp)].eval(std::span<const double>(&x, 1)));
        }
    }
    const double R = 1.0 + out.split_sup;
    const SliceWitness w = frust_find(E, F, Fp, R);
    out.a = w.a;
    out.E1 = w.G;
    out.E2 = w.G1;
    out.guarantee = 1.5 * R;

    out.Q1.reserve(static_cast<std::size_t>(D));
    out.Q2.reserve(static_cast<std::size_t>(D));
    for (Eigen::Index comp = 0; comp < D; ++comp) {
        Polynomial q1 = -out.p[static_cast<std::size_t>(comp)];
        q1.add_coeff(MultiIndex{0}, w.a(comp));
        Polynomial q2 = -out.q[static_cast<std::size_t>(comp)];
        q2.add_coeff(MultiIndex{0}, -w.a(comp));
        out.Q1.push_back(std::move(q1));
        out.Q2.push_back(std::move(q2));
    }

    out.bound = 0.0;
    for (int i = 0; i < n; ++i) {
        if (!out.E1[static_cast<std::size_t>(i)]) continue;
        const double x = (i + 0.5) / n;
        double s2 = 0.0;
        for (Eigen::Index comp = 0; comp < D; ++comp) {
            const double v = f(i, comp) -
                             out.Q1[static_cast<std::size_t>(comp)].eval(std::span<const double>(&x, 1));
            s2 += v * v;
        }
        out.bound = std::max(out.bound, std::sqrt(s2));
    }
    return out;
}

}  // namespace oscint
