#include <pybind11/complex.h>
#include <pybind11/eigen.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "oscint/decay.hpp"
#include "oscint/degeneracy.hpp"
#include "oscint/experiment.hpp"
#include "oscint/quadrature.hpp"
#include "oscint/slicing.hpp"

namespace py = pybind11;
using namespace oscint;

namespace {

Cutoff cutoff_from_args(int kappa, const std::vector<double>& center, double halfwidth,
                        const std::string& profile) {
    CutoffSpec spec;
    spec.kappa = kappa;
    spec.box_center = center.empty() ? std::vector<double>(static_cast<std::size_t>(2 * kappa), 0.0)
                                     : center;
    spec.box_halfwidth = halfwidth;
    if (profile == "smooth_bump")
        spec.profile = CutoffProfile::smooth_bump;
    else if (profile == "poly_spline_c3")
        spec.profile = CutoffProfile::poly_spline_c3;
    else
        throw argument_error("unknown cutoff profile '" + profile + "'");
    return make_cutoff(spec);
}

RefinementPolicy policy_from_args(double phase_margin, int threads) {
    RefinementPolicy p;
    p.phase_margin = phase_margin;
    p.threads = threads;
    return p;
}

py::dict result_to_dict(const QuadratureResult& r) {
    py::dict d;
    d["value"] = r.value;
    d["abs_error_estimate"] = r.abs_error_estimate;
    d["panels_used"] = r.panels_used;
    d["nodes_total"] = r.nodes_total;
    return d;
}

py::dict sweep_to_dict(const SweepResult& s) {
    py::dict d;
    std::vector<double> lambdas, mags, errs;
    std::vector<long long> panels;
    for (const auto& row : s.rows) {
        lambdas.push_back(row.lambda);
        mags.push_back(row.abs_I);
        errs.push_back(row.err_est);
        panels.push_back(row.panels);
    }
    d["lambdas"] = lambdas;
    d["magnitudes"] = mags;
    d["err_estimates"] = errs;
    d["panels"] = panels;
    d["epsilon_hat"] = s.fit.epsilon_hat;
    d["log_C"] = s.fit.log_C;
    d["r_squared"] = s.fit.r_squared;
    d["window"] = s.fit.window;
    return d;
}

DiscretizedSet set_from_matrix(const Eigen::MatrixXd& mask) {
    if (mask.rows() != mask.cols()) throw argument_error("mask must be square");
    DiscretizedSet E(static_cast<int>(mask.rows()));
    for (int i = 0; i < E.n; ++i)
        for (int j = 0; j < E.n; ++j) E.set(i, j, mask(i, j) != 0.0);
    return E;
}

}  // namespace

PYBIND11_MODULE(_oscint, m) {
    m.doc() = "Trilinear oscillatory integrals, polynomial quotient norms, and decay experiments";
    m.attr("__version__") = kVersion;

    py::register_exception<parse_error>(m, "ParseError");
    py::register_exception<validation_error>(m, "ValidationError");
    py::register_exception<numeric_error>(m, "NumericError");

    py::class_<Polynomial>(m, "Polynomial")
        .def(py::init<int, int>(), py::arg("num_vars"), py::arg("degree_cap") = 0)
        .def_static(
            "from_terms",
            [](int num_vars, const std::vector<std::pair<std::vector<int>, double>>& terms) {
                Polynomial p(num_vars, 0);
                for (const auto& [mi, c] : terms) p.add_coeff(mi, c);
                return p;
            },
            py::arg("num_vars"), py::arg("terms"), "Build from [(exponents, coefficient), ...]")
        .def_static("constant", &Polynomial::constant)
        .def("set_coeff", &Polynomial::set_coeff)
        .def("coeff", &Polynomial::coeff)
        .def("eval",
             [](const Polynomial& p, const std::vector<double>& pt) {
                 return p.eval(std::span<const double>(pt.data(), pt.size()));
             })
        .def_property_readonly("num_vars", &Polynomial::num_vars)
        .def_property_readonly("total_degree", &Polynomial::total_degree)
        .def("terms",
             [](const Polynomial& p) {
                 std::vector<std::pair<std::vector<int>, double>> out;
                 for (const auto& [mi, c] : p.coeffs()) out.emplace_back(mi, c);
                 return out;
             })
        .def("__add__", [](const Polynomial& a, const Polynomial& b) { return a + b; })
        .def("__sub__", [](const Polynomial& a, const Polynomial& b) { return a - b; })
        .def("__mul__", [](const Polynomial& a, const Polynomial& b) { return a * b; })
        .def("__mul__", [](const Polynomial& a, double s) { return a * s; })
        .def("__rmul__", [](const Polynomial& a, double s) { return a * s; })
        .def("__eq__", [](const Polynomial& a, const Polynomial& b) { return a == b; })
        .def("__repr__", [](const Polynomial& p) { return p.to_string(); });

    m.def("pullback", &pullback, py::arg("p"), py::arg("pi"));
    m.def("freeze",
          [](const Polynomial& p, const std::vector<int>& vars, const std::vector<double>& vals) {
              return freeze(p, vars, std::span<const double>(vals.data(), vals.size()));
          });
    m.def(
        "homogeneous_parts",
        [](const Polynomial& p, const std::vector<int>& sel) { return homogeneous_parts(p, sel); },
        py::arg("p"), py::arg("selected_vars") = std::vector<int>{});
    m.def("coeff_norms", [](const Polynomial& p) {
        const CoeffNorms n = coeff_norms(p);
        return std::make_pair(n.full, n.nc);
    });
    m.def("split_P0_Pstar", [](const Polynomial& p, int kappa) {
        const InnerOuterSplit s = split_P0_Pstar(p, kappa);
        return std::make_pair(s.P0, s.Pstar);
    });

    py::class_<ProjectionTriple>(m, "ProjectionTriple")
        .def(py::init([](const Eigen::MatrixXd& a, const Eigen::MatrixXd& b,
                         const Eigen::MatrixXd& c) {
            ProjectionTriple t;
            t.kappa = static_cast<int>(a.rows());
            t.maps = {a, b, c};
            t.validate();
            return t;
        }))
        .def_property_readonly("kappa", [](const ProjectionTriple& t) { return t.kappa; })
        .def("maps", [](const ProjectionTriple& t) {
            return std::vector<Eigen::MatrixXd>(t.maps.begin(), t.maps.end());
        });
    m.def("canonical_triple", &canonical_triple, py::arg("kappa"));

    py::class_<DegenerateBasis>(m, "DegenerateBasis")
        .def_property_readonly("dim", &DegenerateBasis::dim)
        .def_property_readonly("kappa", &DegenerateBasis::kappa)
        .def_property_readonly("d", &DegenerateBasis::d)
        .def("vectors", &DegenerateBasis::vectors);
    m.def(
        "build_degenerate_basis",
        [](int kappa, int d, const ProjectionTriple* triple) {
            return build_degenerate_basis(kappa, d, triple ? *triple : canonical_triple(kappa));
        },
        py::arg("kappa"), py::arg("d"), py::arg("triple") = nullptr);

    m.def("nd_norm", [](const Polynomial& P, const DegenerateBasis& basis) {
        const QuotientNormReport rep = nd_norm(P, basis);
        py::dict d;
        d["nd_value"] = rep.nd_value;
        d["residual"] = rep.residual;
        d["nearest_degenerate"] = rep.nearest_degenerate;
        return d;
    });
    m.def("nd_norm_squared_poly", &nd_norm_squared_poly);
    m.def("rank3_project", [](const Polynomial& p) {
        const Rank3Projection r = rank3_project(p);
        py::dict d;
        d["q1"] = r.q1;
        d["q2"] = r.q2;
        d["q3"] = r.q3;
        d["residual"] = r.residual;
        return d;
    });
    m.def("normalize_projections", [](const ProjectionTriple& t) {
        const NormalizationResult r = normalize_projections(t);
        py::dict d;
        d["canonical"] = r.canonical;
        d["T_domain"] = r.T_domain;
        d["T_ranges"] = std::vector<Eigen::MatrixXd>(r.T_ranges.begin(), r.T_ranges.end());
        return d;
    });
    m.def("seminorm_sum", &seminorm_sum);
    m.def("seminorm_sum_quotient", &seminorm_sum_quotient);
    m.def("estimate_seminorm_constant", [](int d, int samples, std::uint64_t seed) {
        const SeminormEstimate est = estimate_seminorm_constant(d, samples, seed);
        py::dict out;
        out["c_hat"] = est.c_hat;
        out["worst_case"] = est.worst_case;
        out["quotient_dim"] = est.quotient_dim;
        return out;
    });

    m.def("vdc_bound", [](const Polynomial& p) {
        const VdcBound b = vdc_bound(p);
        return std::make_pair(b.value, b.no_oscillation);
    });
    m.def(
        "unit_cube_oscillatory",
        [](const Polynomial& p, double margin, int threads) {
            return result_to_dict(unit_cube_oscillatory(p, policy_from_args(margin, threads)));
        },
        py::arg("p"), py::arg("phase_margin") = 1.0, py::arg("threads") = 1);
    m.def(
        "integrate_ones",
        [](double lambda, const Polynomial& P, int kappa, const std::vector<double>& center,
           double halfwidth, const std::string& profile, double margin, int threads) {
            const Cutoff eta = cutoff_from_args(kappa, center, halfwidth, profile);
            return result_to_dict(integrate_oscillatory(lambda, P, Factor::one(), Factor::one(),
                                                        Factor::one(), eta,
                                                        policy_from_args(margin, threads)));
        },
        py::arg("lambda_"), py::arg("P"), py::arg("kappa") = 1,
        py::arg("center") = std::vector<double>{}, py::arg("halfwidth") = 1.0,
        py::arg("profile") = "smooth_bump", py::arg("phase_margin") = 1.0, py::arg("threads") = 1,
        "Trilinear oscillatory integral with f_j = 1 and a box cutoff.");
    m.def(
        "lambda_sweep_ones",
        [](const Polynomial& P, const std::vector<double>& lambdas, int kappa,
           const std::vector<double>& center, double halfwidth, const std::string& profile,
           double margin, int threads) {
            const Cutoff eta = cutoff_from_args(kappa, center, halfwidth, profile);
            return sweep_to_dict(lambda_sweep(P, Factor::one(), Factor::one(), Factor::one(), eta,
                                              lambdas, policy_from_args(margin, threads)));
        },
        py::arg("P"), py::arg("lambdas"), py::arg("kappa") = 1,
        py::arg("center") = std::vector<double>{}, py::arg("halfwidth") = 1.0,
        py::arg("profile") = "smooth_bump", py::arg("phase_margin") = 3.0, py::arg("threads") = 1);
    m.def(
        "counterexample_sweep",
        [](const Polynomial& p1, const Polynomial& p2, const Polynomial& p3,
           const std::vector<double>& lambdas, int kappa, double halfwidth, double margin,
           int threads) {
            const Cutoff eta = cutoff_from_args(kappa, {}, halfwidth, "smooth_bump");
            return sweep_to_dict(counterexample_sweep(canonical_triple(kappa), p1, p2, p3, eta,
                                                      lambdas, policy_from_args(margin, threads)));
        },
        py::arg("p1"), py::arg("p2"), py::arg("p3"), py::arg("lambdas"), py::arg("kappa") = 1,
        py::arg("halfwidth") = 1.0, py::arg("phase_margin") = 2.0, py::arg("threads") = 1);

    m.def("fit_power_law",
          [](const std::vector<double>& lambdas, const std::vector<double>& mags) {
              const PowerLawFit f = fit_power_law(lambdas, mags);
              py::dict d;
              d["log_C"] = f.log_C;
              d["epsilon_hat"] = f.epsilon_hat;
              d["r_squared"] = f.r_squared;
              return d;
          });
    m.def("geometric_grid", &geometric_grid);
    m.def("lemma_first_exponent", &lemma_first_exponent);
    m.def(
        "sublevel_measure",
        [](const Polynomial& Q, const std::vector<double>& lo, const std::vector<double>& hi,
           double eps, const std::string& method, long long samples, std::uint64_t seed) {
            const SublevelMethod meth =
                method == "grid" ? SublevelMethod::grid : SublevelMethod::monte_carlo;
            const SublevelReport rep = sublevel_measure(Q, lo, hi, eps, meth, samples, seed);
            py::dict d;
            d["epsilon"] = rep.epsilon;
            d["measure"] = rep.measure_estimate;
            d["stderr"] = rep.stderr_estimate;
            d["samples"] = rep.samples;
            return d;
        },
        py::arg("Q"), py::arg("lo"), py::arg("hi"), py::arg("epsilon"), py::arg("method") = "grid",
        py::arg("samples") = 1000000, py::arg("seed") = 0);

    m.def(
        "frust_find",
        [](const Eigen::MatrixXd& mask, const Eigen::MatrixXd& f, const Eigen::MatrixXd& fp,
           double R) {
            const SliceWitness w = frust_find(set_from_matrix(mask), f, fp, R);
            py::dict d;
            d["x0_index"] = w.x0_index;
            d["x0p_index"] = w.x0p_index;
            d["a"] = w.a;
            d["G"] = w.G;
            d["G1"] = w.G1;
            d["R_used"] = w.R_used;
            return d;
        },
        py::arg("E"), py::arg("f"), py::arg("fp"), py::arg("R"));
    m.def(
        "cousin_approximate",
        [](const Eigen::MatrixXd& mask, const Eigen::MatrixXd& f, const Eigen::MatrixXd& g,
           const std::vector<Polynomial>& P, int d) {
            const CousinResult r = cousin_approximate(set_from_matrix(mask), f, g, P, d);
            py::dict out;
            out["Q1"] = r.Q1;
            out["Q2"] = r.Q2;
            out["E1"] = r.E1;
            out["E2"] = r.E2;
            out["bound"] = r.bound;
            out["guarantee"] = r.guarantee;
            out["split_sup"] = r.split_sup;
            return out;
        },
        py::arg("E"), py::arg("f"), py::arg("g"), py::arg("P"), py::arg("d"));
}
