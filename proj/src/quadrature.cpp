#include "oscint/quadrature.hpp"

#include <algorithm>
#include <array>
#include <atomic>
#include <cmath>
#include <limits>
#include <thread>

#include "oscint/degeneracy.hpp"
#include "oscint/rng.hpp"

namespace oscint {

namespace {

inline std::complex<double> unit_phase(double t) {
#if defined(__GNUC__) && !defined(__clang__)
    double s = 0.0, c = 0.0;
    sincos(t, &s, &c);
    return {c, s};
#else
    return {std::cos(t), std::sin(t)};
#endif
}

/// Kahan-compensated complex accumulator; panels are added in a fixed order
/// so reductions are bit-stable across thread counts.
struct KahanComplex {
    double sre = 0.0, sim = 0.0, cre = 0.0, cim = 0.0;

    void add(std::complex<double> v) {
        double y = v.real() - cre;
        double t = sre + y;
        cre = (t - sre) - y;
        sre = t;
        y = v.imag() - cim;
        t = sim + y;
        cim = (t - sim) - y;
        sim = t;
    }
    std::complex<double> value() const { return {sre, sim}; }
};

constexpr int kMaxDim = 4;
constexpr int kMaxNodes = 16;

struct Term {
    double c;
    std::array<int, kMaxDim> e;
};

std::vector<Term> flatten_terms(const Polynomial& p, double scale) {
    std::vector<Term> out;
    out.reserve(p.term_count());
    for (const auto& [mi, c] : p.coeffs()) {
        Term t;
        t.c = c * scale;
        t.e.fill(0);
        for (std::size_t a = 0; a < mi.size(); ++a) t.e[a] = mi[a];
        out.push_back(t);
    }
    return out;
}

Polynomial partial_derivative(const Polynomial& p, int var) {
    Polynomial out(p.num_vars(), std::max(0, p.degree_cap() - 1));
    for (const auto& [mi, c] : p.coeffs()) {
        const int e = mi[static_cast<std::size_t>(var)];
        if (e == 0) continue;
        MultiIndex d = mi;
        d[static_cast<std::size_t>(var)] = e - 1;
        out.add_coeff(d, c * e);
    }
    return out;
}

struct Box {
    std::array<double, kMaxDim> lo, hi;

    double diameter(int dim) const {
        double s = 0.0;
        for (int a = 0; a < dim; ++a) s += (hi[a] - lo[a]) * (hi[a] - lo[a]);
        return std::sqrt(s);
    }
};

/// 1-D factor access without std::function overhead in the hot loop.
struct Fast1D {
    const std::complex<double>* v = nullptr;  // grid samples, or null for analytic
    double lo = 0.0, hi = 0.0, inv_h = 0.0;
    int n = 0;
    const Factor* fallback = nullptr;

    static Fast1D wrap(const Factor& f) {
        Fast1D out;
        out.fallback = &f;
        if (f.is_grid() && f.grid().dim() == 1) {
            const GridFunction& g = f.grid();
            out.v = g.values().data();
            out.lo = g.lo()[0];
            out.hi = g.hi()[0];
            out.n = g.samples_per_axis();
            out.inv_h = 1.0 / g.spacing(0);
        }
        return out;
    }

    std::complex<double> at(double t) const {
        if (v != nullptr) {
            if (t < lo || t > hi) return {0.0, 0.0};
            double u = (t - lo) * inv_h;
            int i = static_cast<int>(u);
            if (i > n - 2) i = n - 2;
            const double fr = u - static_cast<double>(i);
            return v[i] * (1.0 - fr) + v[i + 1] * fr;
        }
        return (*fallback)(std::span<const double>(&t, 1));
    }
};

/// Adaptive tensor-product Gauss-Legendre over a box, with the phase-driven
/// refinement rule from RefinementPolicy. One engine instance serves both the
/// trilinear integrand (factors + cutoff) and the bare scalar cube integral.
class PanelEngine {
public:
    PanelEngine(const Polynomial& scaled_phase, const Box& root, int dim, const Cutoff* eta,
                const Factor* f1, const Factor* f2, const Factor* f3, int kappa,
                const RefinementPolicy& policy)
        : dim_(dim), kappa_(kappa), eta_(eta), f1_(f1), f2_(f2), f3_(f3), policy_(policy),
          root_(root) {
        if (dim_ < 1 || dim_ > kMaxDim)
            throw argument_error("quadrature: dimension must be between 1 and 4");
        if (policy.nodes_per_axis < 2 || policy.nodes_per_axis > kMaxNodes)
            throw argument_error("quadrature: nodes_per_axis must be in [2, 16]");
        terms_ = flatten_terms(scaled_phase, 1.0);
        max_exp_.fill(0);
        for (const auto& t : terms_)
            for (int a = 0; a < dim_; ++a) max_exp_[a] = std::max(max_exp_[a], t.e[a]);
        for (int a = 0; a < dim_; ++a)
            grads_.push_back(flatten_terms(partial_derivative(scaled_phase, a), 1.0));
        gauss_legendre_01(policy.nodes_per_axis, gl_x_, gl_w_);
        threshold_ = policy.phase_threshold();
        if (f1_ != nullptr) {
            fast1_ = Fast1D::wrap(*f1_);
            fast2_ = Fast1D::wrap(*f2_);
            fast3_ = Fast1D::wrap(*f3_);
        }
    }

    QuadratureResult run() {
        // A fixed task decomposition (independent of the worker count) keeps
        // results byte-identical for any thread setting.
        std::vector<Box> tasks{root_};
        int depth = 0;
        const int task_target = dim_ == 1 ? 64 : 256;
        while (depth < policy_.min_depth || static_cast<int>(tasks.size()) < task_target) {
            std::vector<Box> next;
            next.reserve(tasks.size() << dim_);
            for (const auto& b : tasks) split_into(b, next);
            tasks.swap(next);
            ++depth;
            if (depth >= policy_.max_depth) break;
        }
        task_depth_ = depth;

        // Panels concentrate where the phase gradient is large, so the panel
        // budget is split across tasks in proportion to the integral of
        // |grad phase|^2 over each task box (the expected panel count), not
        // uniformly. Deterministic: depends only on the fixed task list.
        std::vector<double> weight(tasks.size());
        double weight_sum = 0.0;
        for (std::size_t i = 0; i < tasks.size(); ++i) {
            weight[i] = grad_sq_integral(tasks[i]);
            weight_sum += weight[i];
        }
        const double floor_w = weight_sum / static_cast<double>(tasks.size()) * 0.05 + 1e-300;
        double adj_sum = 0.0;
        for (double& w : weight) {
            w += floor_w;
            adj_sum += w;
        }
        std::vector<long long> budgets(tasks.size());
        for (std::size_t i = 0; i < tasks.size(); ++i)
            budgets[i] = std::max<long long>(
                64, static_cast<long long>(static_cast<double>(policy_.max_panels) * weight[i] /
                                           adj_sum));

        struct TaskResult {
            KahanComplex coarse, fine;
            long long accepted = 0;
            bool truncated = false;
        };
        std::vector<TaskResult> results(tasks.size());

        const int workers = std::max(1, policy_.threads);
        std::atomic<std::size_t> next_task{0};
        auto worker = [&]() {
            for (;;) {
                const std::size_t i = next_task.fetch_add(1);
                if (i >= tasks.size()) return;
                TaskResult& r = results[i];
                process(tasks[i], task_depth_, budgets[i], r.coarse, r.fine, r.accepted,
                        r.truncated);
            }
        };
        if (workers == 1) {
            worker();
        } else {
            std::vector<std::thread> pool;
            pool.reserve(static_cast<std::size_t>(workers));
            for (int t = 0; t < workers; ++t) pool.emplace_back(worker);
            for (auto& t : pool) t.join();
        }

        KahanComplex coarse, fine;
        long long accepted = 0;
        bool truncated = false;
        for (const auto& r : results) {
            coarse.add(r.coarse.value());
            fine.add(r.fine.value());
            accepted += r.accepted;
            truncated |= r.truncated;
        }

        QuadratureResult out;
        out.value = fine.value();
        out.abs_error_estimate = std::abs(fine.value() - coarse.value());
        out.panels_used = accepted << dim_;  // fine-stage panels
        long long per_panel = 1;
        for (int a = 0; a < dim_; ++a) per_panel *= policy_.nodes_per_axis;
        out.nodes_total = accepted * per_panel * ((1LL << dim_) + 1);
        if (truncated)
            throw panel_budget_error("quadrature: panel budget exceeded (max_panels = " +
                                         std::to_string(policy_.max_panels) + ")",
                                     out);
        return out;
    }

private:
    void split_into(const Box& b, std::vector<Box>& out) const {
        std::array<double, kMaxDim> mid{};
        for (int a = 0; a < dim_; ++a) mid[a] = 0.5 * (b.lo[a] + b.hi[a]);
        const int children = 1 << dim_;
        for (int c = 0; c < children; ++c) {
            Box child = b;
            for (int a = 0; a < dim_; ++a) {
                if ((c >> a) & 1) {
                    child.lo[a] = mid[a];
                } else {
                    child.hi[a] = mid[a];
                }
            }
            out.push_back(child);
        }
    }

    /// Max gradient magnitude of the scaled phase over the box, sampled on
    /// the 3^dim corner/midpoint lattice.
    double grad_max(const Box& b) const {
        double pts[kMaxDim][3];
        for (int a = 0; a < dim_; ++a) {
            pts[a][0] = b.lo[a];
            pts[a][1] = 0.5 * (b.lo[a] + b.hi[a]);
            pts[a][2] = b.hi[a];
        }
        int lattice = 1;
        for (int a = 0; a < dim_; ++a) lattice *= 3;
        double best2 = 0.0;
        for (int s = 0; s < lattice; ++s) {
            double z[kMaxDim];
            int rest = s;
            for (int a = 0; a < dim_; ++a) {
                z[a] = pts[a][rest % 3];
                rest /= 3;
            }
            double g2 = 0.0;
            for (int a = 0; a < dim_; ++a) {
                double acc = 0.0;
                for (const auto& t : grads_[static_cast<std::size_t>(a)]) {
                    double v = t.c;
                    for (int q = 0; q < dim_; ++q)
                        for (int k = 0; k < t.e[q]; ++k) v *= z[q];
                    acc += v;
                }
                g2 += acc * acc;
            }
            best2 = std::max(best2, g2);
        }
        return std::sqrt(best2);
    }

    /// Mean-square gradient of the scaled phase over a box times its area,
    /// by tensor Gauss-Legendre; drives the per-task budget split.
    double grad_sq_integral(const Box& b) const {
        const int p = 4;
        std::vector<double> x, w;
        gauss_legendre_01(p, x, w);
        double total = 0.0;
        int count = 1;
        for (int a = 0; a < dim_; ++a) count *= p;
        double volume = 1.0;
        for (int a = 0; a < dim_; ++a) volume *= b.hi[a] - b.lo[a];
        for (int s = 0; s < count; ++s) {
            double z[kMaxDim];
            double wt = 1.0;
            int rest = s;
            for (int a = 0; a < dim_; ++a) {
                const int i = rest % p;
                rest /= p;
                z[a] = b.lo[a] + (b.hi[a] - b.lo[a]) * x[static_cast<std::size_t>(i)];
                wt *= w[static_cast<std::size_t>(i)];
            }
            double g2 = 0.0;
            for (int a = 0; a < dim_; ++a) {
                double acc = 0.0;
                for (const auto& t : grads_[static_cast<std::size_t>(a)]) {
                    double v = t.c;
                    for (int q = 0; q < dim_; ++q)
                        for (int k = 0; k < t.e[q]; ++k) v *= z[q];
                    acc += v;
                }
                g2 += acc * acc;
            }
            total += wt * g2;
        }
        return total * volume;
    }

    void process(const Box& b, int depth, long long budget, KahanComplex& coarse,
                 KahanComplex& fine, long long& accepted, bool& truncated) const {
        const bool resolved = grad_max(b) * b.diameter(dim_) <= threshold_;
        if (!resolved && depth < policy_.max_depth && accepted < budget) {
            std::vector<Box> children;
            children.reserve(1u << dim_);
            split_into(b, children);
            for (const auto& c : children)
                process(c, depth + 1, budget, coarse, fine, accepted, truncated);
            return;
        }
        if (!resolved && accepted >= budget) truncated = true;
        coarse.add(leaf_value(b));
        std::vector<Box> children;
        children.reserve(1u << dim_);
        split_into(b, children);
        std::complex<double> f(0.0, 0.0);
        for (const auto& c : children) f += leaf_value(c);
        fine.add(f);
        ++accepted;
    }

    std::complex<double> leaf_value(const Box& b) const {
        const int p = policy_.nodes_per_axis;
        double t[kMaxDim][kMaxNodes];
        double w[kMaxDim][kMaxNodes];
        for (int a = 0; a < dim_; ++a) {
            const double width = b.hi[a] - b.lo[a];
            for (int i = 0; i < p; ++i) {
                t[a][i] = b.lo[a] + width * gl_x_[static_cast<std::size_t>(i)];
                w[a][i] = width * gl_w_[static_cast<std::size_t>(i)];
                if (eta_ != nullptr) w[a][i] *= eta_->axis_value(a, t[a][i]);
            }
        }
        // Per-axis monomial power tables.
        double pw[kMaxDim][kMaxNodes][9];
        for (int a = 0; a < dim_; ++a) {
            for (int i = 0; i < p; ++i) {
                pw[a][i][0] = 1.0;
                for (int e = 1; e <= max_exp_[a]; ++e) pw[a][i][e] = pw[a][i][e - 1] * t[a][i];
            }
        }

        if (f1_ == nullptr) return leaf_scalar(p, t, w, pw);
        if (kappa_ == 1) return leaf_trilinear_k1(p, t, w, pw);
        return leaf_trilinear_k2(p, t, w, pw);
    }

    std::complex<double> leaf_scalar(int p, const double t[][kMaxNodes],
                                     const double w[][kMaxNodes],
                                     const double pw[][kMaxNodes][9]) const {
        std::complex<double> acc(0.0, 0.0);
        int idx[kMaxDim] = {0, 0, 0, 0};
        const int total = [&] {
            int n = 1;
            for (int a = 0; a < dim_; ++a) n *= p;
            return n;
        }();
        for (int s = 0; s < total; ++s) {
            int rest = s;
            for (int a = dim_ - 1; a >= 0; --a) {
                idx[a] = rest % p;
                rest /= p;
            }
            double phase = 0.0;
            for (const auto& term : terms_) {
                double v = term.c;
                for (int a = 0; a < dim_; ++a) v *= pw[a][idx[a]][term.e[a]];
                phase += v;
            }
            double weight = 1.0;
            for (int a = 0; a < dim_; ++a) weight *= w[a][idx[a]];
            acc += weight * unit_phase(phase);
        }
        (void)t;
        return acc;
    }

    std::complex<double> leaf_trilinear_k1(int p, const double t[][kMaxNodes],
                                           const double w[][kMaxNodes],
                                           const double pw[][kMaxNodes][9]) const {
        std::complex<double> f1v[kMaxNodes], f2v[kMaxNodes];
        for (int i = 0; i < p; ++i) f1v[i] = fast1_.at(t[0][i]);
        for (int j = 0; j < p; ++j) f2v[j] = fast2_.at(t[1][j]);

        std::complex<double> acc(0.0, 0.0);
        for (int i = 0; i < p; ++i) {
            if (w[0][i] == 0.0) continue;
            const std::complex<double> left = w[0][i] * f1v[i];
            const double x = t[0][i];
            for (int j = 0; j < p; ++j) {
                if (w[1][j] == 0.0) continue;
                double phase = 0.0;
                for (const auto& term : terms_)
                    phase += term.c * pw[0][i][term.e[0]] * pw[1][j][term.e[1]];
                const std::complex<double> f3v = fast3_.at(x + t[1][j]);
                acc += (left * (w[1][j] * f2v[j])) * f3v * unit_phase(phase);
            }
        }
        return acc;
    }

    std::complex<double> leaf_trilinear_k2(int p, const double t[][kMaxNodes],
                                           const double w[][kMaxNodes],
                                           const double pw[][kMaxNodes][9]) const {
        // x block = axes (0, 1), y block = axes (2, 3).
        std::vector<std::complex<double>> f1v(static_cast<std::size_t>(p) * p);
        std::vector<std::complex<double>> f2v(static_cast<std::size_t>(p) * p);
        for (int i = 0; i < p; ++i) {
            for (int j = 0; j < p; ++j) {
                const double ux[2] = {t[0][i], t[1][j]};
                const double uy[2] = {t[2][i], t[3][j]};
                f1v[static_cast<std::size_t>(i) * p + j] = (*f1_)(std::span<const double>(ux, 2));
                f2v[static_cast<std::size_t>(i) * p + j] = (*f2_)(std::span<const double>(uy, 2));
            }
        }
        std::complex<double> acc(0.0, 0.0);
        for (int i0 = 0; i0 < p; ++i0) {
            for (int i1 = 0; i1 < p; ++i1) {
                const std::complex<double> fx = f1v[static_cast<std::size_t>(i0) * p + i1];
                const double wx = w[0][i0] * w[1][i1];
                if (wx == 0.0) continue;
                for (int i2 = 0; i2 < p; ++i2) {
                    for (int i3 = 0; i3 < p; ++i3) {
                        const double wy = w[2][i2] * w[3][i3];
                        if (wy == 0.0) continue;
                        double phase = 0.0;
                        for (const auto& term : terms_)
                            phase += term.c * pw[0][i0][term.e[0]] * pw[1][i1][term.e[1]] *
                                     pw[2][i2][term.e[2]] * pw[3][i3][term.e[3]];
                        const double us[2] = {t[0][i0] + t[2][i2], t[1][i1] + t[3][i3]};
                        const std::complex<double> f3v = (*f3_)(std::span<const double>(us, 2));
                        acc += (wx * wy) * fx * f2v[static_cast<std::size_t>(i2) * p + i3] * f3v *
                               unit_phase(phase);
                    }
                }
            }
        }
        return acc;
    }

    int dim_;
    int kappa_;
    const Cutoff* eta_;
    const Factor* f1_;
    const Factor* f2_;
    const Factor* f3_;
    RefinementPolicy policy_;
    Box root_;
    std::vector<Term> terms_;
    std::array<int, kMaxDim> max_exp_{};
    std::vector<std::vector<Term>> grads_;
    std::vector<double> gl_x_, gl_w_;
    double threshold_ = 0.0;
    int task_depth_ = 0;
    Fast1D fast1_, fast2_, fast3_;
};

}  // namespace

void gauss_legendre_01(int n, std::vector<double>& nodes, std::vector<double>& weights) {
    nodes.assign(static_cast<std::size_t>(n), 0.0);
    weights.assign(static_cast<std::size_t>(n), 0.0);
    const double pi = 3.14159265358979323846;
    for (int i = 0, ii = n; i <= (n + 1) / 2 - 1; ++i) {
        ii -= 1;
        double r = std::cos(pi * (4 * i + 3) / (4 * n + 2));
        double r1 = 0.0, p1 = 0.0, p2 = 0.0, p3 = 0.0, dp3 = 0.0;
        do {
            p2 = 0.0;
            p3 = 1.0;
            for (int j = 0; j <= n - 1; ++j) {
                p1 = p2;
                p2 = p3;
                p3 = ((2 * j + 1) * r * p2 - j * p1) / (j + 1);
            }
            dp3 = n * (r * p3 - p2) / (r * r - 1.0);
            r1 = r;
            r = r - p3 / dp3;
        } while (std::abs(r - r1) >= 1e-15 * (1.0 + std::abs(r)) * 100.0);
        nodes[static_cast<std::size_t>(i)] = 0.5 + r / 2.0;
        nodes[static_cast<std::size_t>(ii)] = 0.5 - r / 2.0;
        weights[static_cast<std::size_t>(i)] = 1.0 / ((1.0 - r * r) * dp3 * dp3);
        weights[static_cast<std::size_t>(ii)] = weights[static_cast<std::size_t>(i)];
    }
}

Factor Factor::from_grid(GridFunction g) {
    Factor f;
    f.grid_ = std::move(g);
    return f;
}

Factor Factor::analytic(std::function<std::complex<double>(std::span<const double>)> fn) {
    Factor f;
    f.fn_ = std::move(fn);
    return f;
}

Factor Factor::one() {
    return analytic([](std::span<const double>) { return std::complex<double>(1.0, 0.0); });
}

std::complex<double> Factor::operator()(std::span<const double> u) const {
    if (grid_.has_value()) return grid_->value_at(u);
    return fn_(u);
}

QuadratureResult integrate_oscillatory(double lambda, const Polynomial& P, const Factor& f1,
                                       const Factor& f2, const Factor& f3, const Cutoff& eta,
                                       const RefinementPolicy& policy) {
    const int kappa = eta.spec().kappa;
    if (P.num_vars() != 2 * kappa)
        throw argument_error("integrate_oscillatory: P must have 2*kappa variables");
    if (kappa != 1 && kappa != 2)
        throw argument_error("integrate_oscillatory: kappa must be 1 or 2");
    if (!std::isfinite(lambda)) throw argument_error("integrate_oscillatory: lambda must be finite");

    Box root{};
    for (int a = 0; a < 2 * kappa; ++a) {
        root.lo[a] = eta.lo(a);
        root.hi[a] = eta.hi(a);
    }
    PanelEngine engine(P * lambda, root, 2 * kappa, &eta, &f1, &f2, &f3, kappa, policy);
    return engine.run();
}

QuadratureResult integrate_oscillatory(double lambda, const Polynomial& P, const GridFunction& f1,
                                       const GridFunction& f2, const GridFunction& f3,
                                       const Cutoff& eta, const RefinementPolicy& policy) {
    const int kappa = eta.spec().kappa;
    if (f1.dim() != kappa || f2.dim() != kappa || f3.dim() != kappa)
        throw argument_error("integrate_oscillatory: factor grids must live on R^kappa");
    // f3 must cover the sumset of the f1/f2 boxes within the cutoff support.
    for (int a = 0; a < kappa; ++a) {
        const double sum_lo = std::max(f1.lo()[static_cast<std::size_t>(a)] + f2.lo()[static_cast<std::size_t>(a)],
                                       eta.lo(a) + eta.lo(a + kappa));
        const double sum_hi = std::min(f1.hi()[static_cast<std::size_t>(a)] + f2.hi()[static_cast<std::size_t>(a)],
                                       eta.hi(a) + eta.hi(a + kappa));
        if (sum_lo > sum_hi) continue;
        const double slack = 1e-12 * (1.0 + std::abs(sum_lo) + std::abs(sum_hi));
        if (f3.lo()[static_cast<std::size_t>(a)] > sum_lo + slack ||
            f3.hi()[static_cast<std::size_t>(a)] < sum_hi - slack)
            throw argument_error(
                "integrate_oscillatory: f3 box does not cover the sumset of f1 and f2 "
                "within the cutoff support (axis " +
                std::to_string(a) + ")");
    }
    return integrate_oscillatory(lambda, P, Factor::from_grid(f1), Factor::from_grid(f2),
                                 Factor::from_grid(f3), eta, policy);
}

QuadratureResult unit_cube_oscillatory(const Polynomial& p, const RefinementPolicy& policy) {
    const int m = p.num_vars();
    if (m < 1 || m > kMaxDim)
        throw argument_error("unit_cube_oscillatory: need between 1 and 4 variables");
    Box root{};
    for (int a = 0; a < m; ++a) {
        root.lo[a] = 0.0;
        root.hi[a] = 1.0;
    }
    PanelEngine engine(p, root, m, nullptr, nullptr, nullptr, nullptr, 0, policy);
    return engine.run();
}

VdcBound vdc_bound(const Polynomial& p) {
    const int d = p.total_degree();
    double mass = 0.0;
    for (const auto& [mi, c] : p.coeffs())
        if (total_degree(mi) > 0) mass += std::abs(c);
    if (d < 1 || mass == 0.0)
        return {std::numeric_limits<double>::infinity(), true};
    return {std::pow(mass, -1.0 / static_cast<double>(d)), false};
}

EmpiricalConstant empirical_C(int d, int m, int num_polys, std::span<const double> lambdas,
                              std::uint64_t seed, const RefinementPolicy& policy) {
    if (d < 1 || m < 1 || m > 2) throw argument_error("empirical_C: need d >= 1 and m in {1, 2}");
    const MonomialBasis space = MonomialBasis::build(m, d);

    EmpiricalConstant out;
    out.lambda_values.assign(lambdas.begin(), lambdas.end());
    out.per_lambda_max.assign(lambdas.size(), 0.0);

    for (int s = 0; s < num_polys; ++s) {
        SplitMix64 rng = SplitMix64::for_task(seed, static_cast<std::uint64_t>(s));
        // Unit-coefficient sample: gaussian coefficients on the non-constant
        // monomials, normalized to unit l2 norm.
        Polynomial p(m, d);
        double norm2 = 0.0;
        std::vector<std::pair<MultiIndex, double>> entries;
        for (const auto& mi : space.monomials) {
            if (total_degree(mi) == 0) continue;
            const double c = rng.normal();
            entries.emplace_back(mi, c);
            norm2 += c * c;
        }
        const double inv = 1.0 / std::sqrt(norm2);
        for (auto& [mi, c] : entries) p.set_coeff(mi, c * inv);

        for (std::size_t li = 0; li < lambdas.size(); ++li) {
            const Polynomial scaled = p * lambdas[li];
            const QuadratureResult r = unit_cube_oscillatory(scaled, policy);
            const VdcBound b = vdc_bound(scaled);
            if (b.no_oscillation) continue;
            const double ratio = std::abs(r.value) / b.value;
            out.per_lambda_max[li] = std::max(out.per_lambda_max[li], ratio);
            out.max_ratio = std::max(out.max_ratio, ratio);
        }
    }
    return out;
}

}  // namespace oscint
