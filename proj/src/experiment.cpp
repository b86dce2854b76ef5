#include "oscint/experiment.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>
#include <thread>

#include "oscint/decay.hpp"
#include "oscint/rng.hpp"

namespace oscint {

namespace fs = std::filesystem;

std::uint64_t fnv1a64(const std::string& bytes) {
    std::uint64_t h = 14695981039346656037ULL;
    for (unsigned char c : bytes) {
        h ^= c;
        h *= 1099511628211ULL;
    }
    return h;
}

namespace {

std::string trim(const std::string& s) {
    const auto b = s.find_first_not_of(" \t\r\n");
    if (b == std::string::npos) return "";
    const auto e = s.find_last_not_of(" \t\r\n");
    return s.substr(b, e - b + 1);
}

}  // namespace

Config Config::load(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw parse_error(path, 0, "cannot open config file");
    std::stringstream buf;
    buf << in.rdbuf();
    Config c = from_string(buf.str(), path);
    c.path_ = path;
    c.dir_ = fs::path(path).parent_path().string();
    return c;
}

Config Config::from_string(const std::string& text, const std::string& name) {
    Config c;
    c.path_ = name;
    c.dir_ = "";
    c.hash_ = fnv1a64(text);
    std::istringstream in(text);
    std::string line;
    std::string section;
    long line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        const auto hash = line.find('#');
        if (hash != std::string::npos) line.erase(hash);
        line = trim(line);
        if (line.empty()) continue;
        if (line.front() == '[') {
            if (line.back() != ']')
                throw parse_error(name, line_no, "unterminated section header");
            section = trim(line.substr(1, line.size() - 2));
            if (section.empty()) throw parse_error(name, line_no, "empty section name");
            c.sections_[section];
            continue;
        }
        const auto eq = line.find('=');
        if (eq == std::string::npos)
            throw parse_error(name, line_no, "expected 'key = value'");
        const std::string key = trim(line.substr(0, eq));
        const std::string value = trim(line.substr(eq + 1));
        if (key.empty()) throw parse_error(name, line_no, "empty key");
        if (section.empty()) throw parse_error(name, line_no, "key outside any [section]");
        c.sections_[section][key] = value;
    }
    return c;
}

bool Config::has(const std::string& section, const std::string& key) const {
    auto s = sections_.find(section);
    return s != sections_.end() && s->second.count(key) > 0;
}

std::string Config::get(const std::string& section, const std::string& key) const {
    auto s = sections_.find(section);
    if (s == sections_.end())
        throw validation_error("config: missing section [" + section + "]");
    auto k = s->second.find(key);
    if (k == s->second.end())
        throw validation_error("config: missing key '" + key + "' in section [" + section + "]");
    return k->second;
}

std::string Config::get_or(const std::string& section, const std::string& key,
                           const std::string& fallback) const {
    return has(section, key) ? get(section, key) : fallback;
}

double Config::get_double(const std::string& section, const std::string& key) const {
    const std::string v = get(section, key);
    try {
        std::size_t used = 0;
        const double d = std::stod(v, &used);
        if (used != v.size()) throw std::invalid_argument("");
        return d;
    } catch (const std::exception&) {
        throw validation_error("config: key '" + key + "' is not a number: '" + v + "'");
    }
}

double Config::get_double_or(const std::string& section, const std::string& key,
                             double fallback) const {
    return has(section, key) ? get_double(section, key) : fallback;
}

long long Config::get_int(const std::string& section, const std::string& key) const {
    const double d = get_double(section, key);
    const long long i = static_cast<long long>(d);
    if (static_cast<double>(i) != d)
        throw validation_error("config: key '" + key + "' is not an integer");
    return i;
}

long long Config::get_int_or(const std::string& section, const std::string& key,
                             long long fallback) const {
    return has(section, key) ? get_int(section, key) : fallback;
}

std::uint64_t Config::get_seed_or(const std::string& section, std::uint64_t fallback) const {
    if (!has(section, "seed")) return fallback;
    const std::string v = get(section, "seed");
    try {
        std::size_t used = 0;
        const std::uint64_t s = std::stoull(v, &used);
        if (used != v.size()) throw std::invalid_argument("");
        return s;
    } catch (const std::exception&) {
        throw validation_error("config: seed must be a 64-bit unsigned integer");
    }
}

std::vector<double> Config::get_doubles(const std::string& section, const std::string& key) const {
    std::istringstream in(get(section, key));
    std::vector<double> out;
    double v = 0.0;
    while (in >> v) out.push_back(v);
    if (out.empty())
        throw validation_error("config: key '" + key + "' must hold numbers");
    return out;
}

std::string Config::resolve_path(const std::string& value) const {
    fs::path p(value);
    if (p.is_absolute() || dir_.empty()) return value;
    return (fs::path(dir_) / p).string();
}

CsvWriter::CsvWriter(std::string path, std::string header)
    : path_(std::move(path)), header_(std::move(header)) {}

std::string CsvWriter::format_double(double v) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

void CsvWriter::add_row(const std::vector<std::string>& cells) {
    std::string row;
    for (std::size_t i = 0; i < cells.size(); ++i) {
        if (i) row += ',';
        row += cells[i];
    }
    rows_.push_back(std::move(row));
}

void CsvWriter::add_row_numeric(const std::vector<double>& cells) {
    std::vector<std::string> s;
    s.reserve(cells.size());
    for (double v : cells) s.push_back(format_double(v));
    add_row(s);
}

void CsvWriter::write(std::uint64_t seed, std::uint64_t config_hash,
                      const std::vector<std::string>& extra) {
    std::ofstream out(path_, std::ios::binary);
    if (!out) throw numeric_error("cannot open output file " + path_);
    out << header_ << '\n';
    for (const auto& r : rows_) out << r << '\n';
    char buf[128];
    std::snprintf(buf, sizeof(buf), "# seed=%llu version=%s config_hash=%016llx",
                  static_cast<unsigned long long>(seed), kVersion,
                  static_cast<unsigned long long>(config_hash));
    out << buf;
    for (const auto& e : extra) out << ' ' << e;
    out << '\n';
}

FrustInstance make_frust_instance(int n, int D, double R, std::uint64_t seed) {
    if (n < 8) throw argument_error("make_frust_instance: n must be >= 8");
    if (D < 1 || D > 8) throw argument_error("make_frust_instance: D must be in [1, 8]");
    SplitMix64 rng(seed);

    FrustInstance inst;
    inst.f.resize(n, D);
    inst.fp.resize(n, D);
    const double pi2 = 6.283185307179586476925286766559;
    for (int comp = 0; comp < D; ++comp) {
        double a[3], ph[3], b[3], qh[3];
        for (int h = 0; h < 3; ++h) {
            a[h] = rng.uniform(-0.4, 0.4);
            ph[h] = rng.uniform(0.0, pi2);
            b[h] = rng.uniform(-0.4, 0.4);
            qh[h] = rng.uniform(0.0, pi2);
        }
        for (int i = 0; i < n; ++i) {
            const double x = (i + 0.5) / n;
            double u = 0.0, v = 0.0;
            for (int h = 0; h < 3; ++h) {
                u += a[h] * std::sin(pi2 * (h + 1) * x + ph[h]);
                v += b[h] * std::sin(pi2 * (h + 1) * x + qh[h]);
            }
            inst.f(i, comp) = u;
            inst.fp(i, comp) = v;
        }
    }

    // The threshold set satisfies the hypothesis by construction; random
    // deletions keep it a subset. Grow R until the set is comfortably larger
    // than the 4/n floor.
    double r_eff = R;
    for (;;) {
        inst.E = DiscretizedSet(n);
        SplitMix64 del(rng.next());
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j) {
                if ((inst.f.row(i) - inst.fp.row(j)).norm() <= 0.999 * r_eff)
                    inst.E.set(i, j, del.uniform() > 0.3);
            }
        if (inst.E.measure() > std::max(4.0 / n, 0.02)) break;
        r_eff *= 1.3;
    }
    inst.R = r_eff;
    return inst;
}

namespace {

struct CommandContext {
    const Config& config;
    std::string section;
    RunOptions options;
    std::uint64_t seed = 0;

    std::string out_path(const std::string& default_name) const {
        const std::string name = config.get_or(section, "out", default_name);
        fs::create_directories(options.out_dir);
        return (fs::path(options.out_dir) / name).string();
    }
};

int resolve_threads(const CommandContext& ctx) {
    if (ctx.options.threads.has_value()) return std::max(1, *ctx.options.threads);
    const long long cfg = ctx.config.get_int_or(ctx.section, "threads", 0);
    if (cfg > 0) return static_cast<int>(cfg);
    const unsigned hw = std::thread::hardware_concurrency();
    return hw == 0 ? 1 : static_cast<int>(hw);
}

void check_caps(int kappa, int d) {
    if (kappa < 1 || kappa > 2)
        throw validation_error("config: kappa must be 1 or 2 (supported cap)");
    if (d < 0 || d > 8) throw validation_error("config: d must be between 0 and 8 (supported cap)");
}

Cutoff cutoff_from_config(const CommandContext& ctx, int kappa) {
    CutoffSpec spec;
    spec.kappa = kappa;
    if (ctx.config.has(ctx.section, "cutoff_center")) {
        spec.box_center = ctx.config.get_doubles(ctx.section, "cutoff_center");
        if (static_cast<int>(spec.box_center.size()) != 2 * kappa)
            throw validation_error("config: cutoff_center must have 2*kappa entries");
    } else {
        spec.box_center.assign(static_cast<std::size_t>(2 * kappa), 0.0);
    }
    spec.box_halfwidth = ctx.config.get_double_or(ctx.section, "cutoff_halfwidth", 1.0);
    const std::string prof = ctx.config.get_or(ctx.section, "cutoff_profile", "smooth_bump");
    if (prof == "smooth_bump")
        spec.profile = CutoffProfile::smooth_bump;
    else if (prof == "poly_spline_c3")
        spec.profile = CutoffProfile::poly_spline_c3;
    else
        throw validation_error("config: unknown cutoff_profile '" + prof + "'");
    return make_cutoff(spec);
}

RefinementPolicy policy_from_config(const CommandContext& ctx, double default_margin) {
    RefinementPolicy policy;
    policy.nodes_per_axis =
        static_cast<int>(ctx.config.get_int_or(ctx.section, "nodes_per_axis", 8));
    policy.phase_margin = ctx.config.get_double_or(ctx.section, "phase_margin", default_margin);
    policy.max_panels = ctx.config.get_int_or(ctx.section, "max_panels", policy.max_panels);
    policy.threads = resolve_threads(ctx);
    return policy;
}

Factor factor_from_config(const CommandContext& ctx, const std::string& key) {
    const std::string v = ctx.config.get_or(ctx.section, key, "one");
    if (v == "one") return Factor::one();
    return Factor::from_grid(read_grid_function_file(ctx.config.resolve_path(v)));
}

ProjectionTriple triple_from_config(const CommandContext& ctx, int kappa) {
    if (ctx.config.has(ctx.section, "projections")) {
        ProjectionTriple t = read_projection_triple_file(
            ctx.config.resolve_path(ctx.config.get(ctx.section, "projections")));
        if (t.kappa != kappa)
            throw validation_error("config: projection triple kappa mismatch");
        t.validate();
        return t;
    }
    return canonical_triple(kappa);
}

std::vector<double> lambda_grid_from_config(const CommandContext& ctx) {
    if (ctx.config.has(ctx.section, "lambdas")) return ctx.config.get_doubles(ctx.section, "lambdas");
    const double lo = ctx.config.get_double_or(ctx.section, "lambda_min", 10.0);
    const double hi = ctx.config.get_double_or(ctx.section, "lambda_max", 1e4);
    const int points = static_cast<int>(ctx.config.get_int_or(ctx.section, "lambda_points", 16));
    return geometric_grid(lo, hi, points);
}

int run_norm(const CommandContext& ctx) {
    const Polynomial P =
        read_polynomial_file(ctx.config.resolve_path(ctx.config.get(ctx.section, "polynomial")));
    const int kappa = static_cast<int>(ctx.config.get_int_or(ctx.section, "kappa", 1));
    const int d = static_cast<int>(
        ctx.config.get_int_or(ctx.section, "d", std::max(0, P.total_degree())));
    check_caps(kappa, d);
    if (P.num_vars() != 2 * kappa)
        throw validation_error("norm: polynomial must have 2*kappa variables");

    const ProjectionTriple triple = triple_from_config(ctx, kappa);
    const DegenerateBasis basis = build_degenerate_basis(kappa, d, triple);
    const QuotientNormReport rep = nd_norm(P, basis);
    const CoeffNorms norms = coeff_norms(P);

    std::cout << "P(d) norm : " << CsvWriter::format_double(norms.full) << '\n';
    std::cout << "nc norm   : " << CsvWriter::format_double(norms.nc) << '\n';
    std::cout << "nd norm   : " << CsvWriter::format_double(rep.nd_value) << '\n';
    std::cout << "residual polynomial:\n";
    write_polynomial(std::cout, rep.residual);

    CsvWriter csv(ctx.out_path("norm.csv"), "norm_full,norm_nc,norm_nd,degenerate_dim");
    csv.add_row({CsvWriter::format_double(norms.full), CsvWriter::format_double(norms.nc),
                 CsvWriter::format_double(rep.nd_value), std::to_string(basis.dim())});
    csv.write(ctx.seed, ctx.config.content_hash());
    return 0;
}

int run_qpoly(const CommandContext& ctx) {
    const Polynomial P =
        read_polynomial_file(ctx.config.resolve_path(ctx.config.get(ctx.section, "polynomial")));
    const int d = static_cast<int>(ctx.config.get_int_or(ctx.section, "d", 3));
    check_caps(1, d);
    const DegenerateBasis inner = build_degenerate_basis(1, d, canonical_triple(1));
    const Polynomial Q = nd_norm_squared_poly(P, inner);

    const std::string path = ctx.out_path("q_poly.poly");
    std::ofstream out(path, std::ios::binary);
    if (!out) throw numeric_error("cannot open output file " + path);
    out << "# Q(x2,y2) = squared nd norm of the frozen inner polynomial\n";
    write_polynomial(out, Q);
    write_polynomial(std::cout, Q);
    std::cout << "written: " << path << '\n';
    return 0;
}

int run_integrate(const CommandContext& ctx) {
    const Polynomial P =
        read_polynomial_file(ctx.config.resolve_path(ctx.config.get(ctx.section, "polynomial")));
    const int kappa = static_cast<int>(ctx.config.get_int_or(ctx.section, "kappa", 1));
    check_caps(kappa, 8);
    const double lambda = ctx.config.get_double_or(ctx.section, "lambda", 1.0);
    const Cutoff eta = cutoff_from_config(ctx, kappa);
    const RefinementPolicy policy = policy_from_config(ctx, 1.0);
    const Factor f1 = factor_from_config(ctx, "f1");
    const Factor f2 = factor_from_config(ctx, "f2");
    const Factor f3 = factor_from_config(ctx, "f3");

    CsvWriter csv(ctx.out_path("integrate.csv"), "lambda,re_I,im_I,abs_I,err_est,panels,nodes");
    try {
        const QuadratureResult r = integrate_oscillatory(lambda, P, f1, f2, f3, eta, policy);
        csv.add_row({CsvWriter::format_double(lambda), CsvWriter::format_double(r.value.real()),
                     CsvWriter::format_double(r.value.imag()),
                     CsvWriter::format_double(std::abs(r.value)),
                     CsvWriter::format_double(r.abs_error_estimate), std::to_string(r.panels_used),
                     std::to_string(r.nodes_total)});
        csv.write(ctx.seed, ctx.config.content_hash());
        std::cout << "I = " << CsvWriter::format_double(r.value.real()) << " + "
                  << CsvWriter::format_double(r.value.imag())
                  << "i  |I| = " << CsvWriter::format_double(std::abs(r.value))
                  << "  err_est = " << CsvWriter::format_double(r.abs_error_estimate)
                  << "  panels = " << r.panels_used << '\n';
    } catch (const panel_budget_error& e) {
        const QuadratureResult& r = e.partial();
        csv.add_row({CsvWriter::format_double(lambda), CsvWriter::format_double(r.value.real()),
                     CsvWriter::format_double(r.value.imag()),
                     CsvWriter::format_double(std::abs(r.value)),
                     CsvWriter::format_double(r.abs_error_estimate), std::to_string(r.panels_used),
                     std::to_string(r.nodes_total)});
        csv.write(ctx.seed, ctx.config.content_hash(), {"partial=1"});
        std::cerr << "panel budget exceeded; partial result written\n";
        return 4;
    }
    return 0;
}

int run_decay(const CommandContext& ctx) {
    const Polynomial P =
        read_polynomial_file(ctx.config.resolve_path(ctx.config.get(ctx.section, "polynomial")));
    const int kappa = static_cast<int>(ctx.config.get_int_or(ctx.section, "kappa", 1));
    const int d = static_cast<int>(
        ctx.config.get_int_or(ctx.section, "d", std::max(0, P.total_degree())));
    check_caps(kappa, d);
    if (P.num_vars() != 2 * kappa)
        throw validation_error("decay: polynomial must have 2*kappa variables");

    const Cutoff eta = cutoff_from_config(ctx, kappa);
    // Sweeps default to a tripled panel threshold: the embedded error
    // estimate still certifies each point, at a ninth of the node cost.
    const RefinementPolicy policy = policy_from_config(ctx, 3.0);
    const std::vector<double> grid = lambda_grid_from_config(ctx);
    const Factor f1 = factor_from_config(ctx, "f1");
    const Factor f2 = factor_from_config(ctx, "f2");
    const Factor f3 = factor_from_config(ctx, "f3");

    const DegenerateBasis basis = build_degenerate_basis(kappa, d, triple_from_config(ctx, kappa));
    const double nd = nd_norm(P, basis).nd_value;

    CsvWriter csv(ctx.out_path("decay.csv"), "lambda,abs_I,err_est,nd_norm,panels");
    try {
        const SweepResult sweep = lambda_sweep(P, f1, f2, f3, eta, grid, policy);
        for (const auto& row : sweep.rows)
            csv.add_row({CsvWriter::format_double(row.lambda), CsvWriter::format_double(row.abs_I),
                         CsvWriter::format_double(row.err_est), CsvWriter::format_double(nd),
                         std::to_string(row.panels)});
        csv.write(ctx.seed, ctx.config.content_hash());
        std::cout << "epsilon_hat = " << CsvWriter::format_double(sweep.fit.epsilon_hat)
                  << "  r_squared = " << CsvWriter::format_double(sweep.fit.r_squared)
                  << "  log_C = " << CsvWriter::format_double(sweep.fit.log_C) << "  window = ["
                  << sweep.fit.window.first << ", " << sweep.fit.window.second << "]\n";
        if (sweep.fit.r_squared < 0.8)
            std::cout << "note: r_squared < 0.8; no decay claim attached to this fit\n";
    } catch (const panel_budget_error& e) {
        csv.write(ctx.seed, ctx.config.content_hash(), {"partial=1"});
        std::cerr << "panel budget exceeded during sweep: " << e.what() << '\n';
        return 4;
    }
    return 0;
}

int run_sublevel(const CommandContext& ctx) {
    const Polynomial Q =
        read_polynomial_file(ctx.config.resolve_path(ctx.config.get(ctx.section, "polynomial")));
    const int dim = Q.num_vars();
    std::vector<double> lo(static_cast<std::size_t>(dim), 0.0);
    std::vector<double> hi(static_cast<std::size_t>(dim), 1.0);
    if (ctx.config.has(ctx.section, "box_lo")) lo = ctx.config.get_doubles(ctx.section, "box_lo");
    if (ctx.config.has(ctx.section, "box_hi")) hi = ctx.config.get_doubles(ctx.section, "box_hi");

    std::vector<double> epsilons;
    if (ctx.config.has(ctx.section, "epsilons")) {
        epsilons = ctx.config.get_doubles(ctx.section, "epsilons");
    } else {
        epsilons = geometric_grid(ctx.config.get_double_or(ctx.section, "eps_min", 1e-4),
                                  ctx.config.get_double_or(ctx.section, "eps_max", 1e-1),
                                  static_cast<int>(ctx.config.get_int_or(ctx.section, "eps_points", 7)));
    }
    const std::string method_s = ctx.config.get_or(ctx.section, "method", "grid");
    SublevelMethod method;
    if (method_s == "grid")
        method = SublevelMethod::grid;
    else if (method_s == "monte_carlo")
        method = SublevelMethod::monte_carlo;
    else
        throw validation_error("config: unknown sublevel method '" + method_s + "'");
    const long long samples = ctx.config.get_int_or(ctx.section, "samples", 16'000'000);

    std::vector<SublevelReport> reports;
    for (std::size_t i = 0; i < epsilons.size(); ++i)
        reports.push_back(
            sublevel_measure(Q, lo, hi, epsilons[i], method, samples, ctx.seed + i));

    CsvWriter csv(ctx.out_path("sublevel.csv"), "epsilon,measure,stderr,method,samples");
    for (const auto& rep : reports)
        csv.add_row({CsvWriter::format_double(rep.epsilon),
                     CsvWriter::format_double(rep.measure_estimate),
                     CsvWriter::format_double(rep.stderr_estimate),
                     rep.method == SublevelMethod::grid ? "grid" : "monte_carlo",
                     std::to_string(rep.samples)});
    csv.write(ctx.seed, ctx.config.content_hash());

    // Exponent fit needs at least two nonzero measures.
    int usable = 0;
    for (const auto& rep : reports) usable += rep.measure_estimate > 0.0 ? 1 : 0;
    const int deg = std::max(1, Q.total_degree());
    if (usable >= 2) {
        const SublevelFit fit =
            sublevel_exponent_fit(Q, lo, hi, epsilons, method, samples, ctx.seed);
        std::cout << "delta_hat = " << CsvWriter::format_double(fit.delta_hat)
                  << "  (1/deg Q = " << CsvWriter::format_double(1.0 / deg) << ")\n";
    } else {
        std::cout << "delta_hat = n/a (need >= 2 nonzero measures)\n";
    }
    return 0;
}

int run_normalize(const CommandContext& ctx) {
    const ProjectionTriple triple = read_projection_triple_file(
        ctx.config.resolve_path(ctx.config.get(ctx.section, "projections")));
    const NormalizationResult res = normalize_projections(triple);

    double max_dev = 0.0;
    for (int j = 0; j < 3; ++j) {
        const Eigen::MatrixXd got = res.T_ranges[static_cast<std::size_t>(j)] *
                                    triple.maps[static_cast<std::size_t>(j)] * res.T_domain;
        max_dev = std::max(max_dev,
                           (got - res.canonical.maps[static_cast<std::size_t>(j)]).cwiseAbs().maxCoeff());
    }

    const std::string path = ctx.out_path("normalize.out");
    std::ofstream out(path, std::ios::binary);
    if (!out) throw numeric_error("cannot open output file " + path);
    out << "# canonical triple\n";
    write_projection_triple(out, res.canonical);
    out << "\n# T_domain\n";
    char buf[64];
    for (Eigen::Index r = 0; r < res.T_domain.rows(); ++r) {
        for (Eigen::Index c = 0; c < res.T_domain.cols(); ++c) {
            std::snprintf(buf, sizeof(buf), "%.17g", res.T_domain(r, c));
            out << buf << (c + 1 == res.T_domain.cols() ? "" : " ");
        }
        out << '\n';
    }
    for (int j = 0; j < 3; ++j) {
        out << "\n# T_range " << (j + 1) << '\n';
        const auto& m = res.T_ranges[static_cast<std::size_t>(j)];
        for (Eigen::Index r = 0; r < m.rows(); ++r) {
            for (Eigen::Index c = 0; c < m.cols(); ++c) {
                std::snprintf(buf, sizeof(buf), "%.17g", m(r, c));
                out << buf << (c + 1 == m.cols() ? "" : " ");
            }
            out << '\n';
        }
    }
    std::cout << "normalized; max deviation from canonical = "
              << CsvWriter::format_double(max_dev) << "\nwritten: " << path << '\n';
    return 0;
}

int run_counterexample(const CommandContext& ctx) {
    const int kappa = static_cast<int>(ctx.config.get_int_or(ctx.section, "kappa", 1));
    const int d = static_cast<int>(ctx.config.get_int_or(ctx.section, "d", 3));
    check_caps(kappa, d);
    const ProjectionTriple triple = canonical_triple(kappa);

    std::array<Polynomial, 3> p;
    if (ctx.config.has(ctx.section, "p1")) {
        p[0] = read_polynomial_file(ctx.config.resolve_path(ctx.config.get(ctx.section, "p1")));
        p[1] = read_polynomial_file(ctx.config.resolve_path(ctx.config.get(ctx.section, "p2")));
        p[2] = read_polynomial_file(ctx.config.resolve_path(ctx.config.get(ctx.section, "p3")));
    } else {
        // Random components of degree <= d, seeded.
        SplitMix64 rng(ctx.seed);
        const MonomialBasis small = MonomialBasis::build(kappa, d);
        for (int j = 0; j < 3; ++j) {
            Polynomial pj(kappa, d);
            for (const auto& mi : small.monomials) {
                const double c = rng.uniform(-1.0, 1.0);
                if (std::abs(c) > 1e-3) pj.set_coeff(mi, c);
            }
            p[static_cast<std::size_t>(j)] = pj;
        }
    }

    const Cutoff eta = cutoff_from_config(ctx, kappa);
    const RefinementPolicy policy = policy_from_config(ctx, 2.0);
    std::vector<double> lambdas = {10.0, 1000.0};
    if (ctx.config.has(ctx.section, "lambdas")) lambdas = ctx.config.get_doubles(ctx.section, "lambdas");

    const Polynomial P = assemble_degenerate(triple, p[0], p[1], p[2]);

    // Emit the sampled extremizers alongside the flatness check.
    const int grid_n = static_cast<int>(ctx.config.get_int_or(ctx.section, "grid_n", 4096));
    std::array<std::vector<double>, 3> blo, bhi;
    for (int a = 0; a < kappa; ++a) {
        blo[0].push_back(eta.lo(a));
        bhi[0].push_back(eta.hi(a));
        blo[1].push_back(eta.lo(kappa + a));
        bhi[1].push_back(eta.hi(kappa + a));
        blo[2].push_back(eta.lo(a) + eta.lo(kappa + a));
        bhi[2].push_back(eta.hi(a) + eta.hi(kappa + a));
    }
    const auto grids =
        degenerate_counterexample(triple, p[0], p[1], p[2], lambdas.front(), blo, bhi, grid_n);
    for (int j = 0; j < 3; ++j) {
        fs::create_directories(ctx.options.out_dir);
        write_grid_function_file(
            (fs::path(ctx.options.out_dir) / ("f" + std::to_string(j + 1) + ".grid")).string(),
            grids[static_cast<std::size_t>(j)]);
    }

    CsvWriter csv(ctx.out_path("counterexample.csv"), "lambda,abs_I,err_est,nd_norm,panels");
    std::vector<double> abs_vals, errs;
    for (double lambda : lambdas) {
        const auto factors = counterexample_factors(p[0], p[1], p[2], lambda);
        const QuadratureResult r =
            integrate_oscillatory(lambda, P, factors[0], factors[1], factors[2], eta, policy);
        abs_vals.push_back(std::abs(r.value));
        errs.push_back(r.abs_error_estimate);
        csv.add_row({CsvWriter::format_double(lambda), CsvWriter::format_double(std::abs(r.value)),
                     CsvWriter::format_double(r.abs_error_estimate), CsvWriter::format_double(0.0),
                     std::to_string(r.panels_used)});
    }
    csv.write(ctx.seed, ctx.config.content_hash());

    const double dev = std::abs(abs_vals.front() - abs_vals.back());
    const double budget = 2.0 * (errs.front() + errs.back());
    std::cout << "|I| at lambda = " << CsvWriter::format_double(lambdas.front()) << " : "
              << CsvWriter::format_double(abs_vals.front()) << '\n';
    std::cout << "|I| at lambda = " << CsvWriter::format_double(lambdas.back()) << " : "
              << CsvWriter::format_double(abs_vals.back()) << '\n';
    std::cout << "flatness deviation = " << CsvWriter::format_double(dev)
              << " vs 2*(err sum) = " << CsvWriter::format_double(budget) << " -> "
              << (dev <= budget ? "flat" : "NOT flat") << '\n';
    return 0;
}

int run_lemma_frust(const CommandContext& ctx) {
    const int n = static_cast<int>(ctx.config.get_int_or(ctx.section, "n", 256));
    const int D = static_cast<int>(ctx.config.get_int_or(ctx.section, "D", 1));
    const double R = ctx.config.get_double_or(ctx.section, "R", 0.25);

    const FrustInstance inst = make_frust_instance(n, D, R, ctx.seed);
    const SliceWitness w = frust_find(inst.E, inst.f, inst.fp, inst.R);

    // Soundness: the (3/2) R inequalities at every cell of the slices.
    double max_dev_G = 0.0, max_dev_G1 = 0.0;
    double measure_G = 0.0, measure_G1 = 0.0;
    for (int i = 0; i < n; ++i) {
        if (w.G[static_cast<std::size_t>(i)]) {
            measure_G += 1.0;
            max_dev_G = std::max(max_dev_G, (inst.f.row(i).transpose() - w.a).norm());
        }
        if (w.G1[static_cast<std::size_t>(i)]) {
            measure_G1 += 1.0;
            max_dev_G1 = std::max(max_dev_G1, (inst.fp.row(i).transpose() - w.a).norm());
        }
    }
    measure_G /= n;
    measure_G1 /= n;

    {
        fs::create_directories(ctx.options.out_dir);
        std::ofstream eout((fs::path(ctx.options.out_dir) / "frust_E.set").string(),
                           std::ios::binary);
        write_discretized_set(eout, inst.E);
    }

    CsvWriter csv(ctx.out_path("lemma_frust.csv"),
                  "x0,x0p,measure_E,measure_G,measure_G1,R,max_dev_G,max_dev_G1,bound");
    csv.add_row({std::to_string(w.x0_index), std::to_string(w.x0p_index),
                 CsvWriter::format_double(inst.E.measure()), CsvWriter::format_double(measure_G),
                 CsvWriter::format_double(measure_G1), CsvWriter::format_double(w.R_used),
                 CsvWriter::format_double(max_dev_G), CsvWriter::format_double(max_dev_G1),
                 CsvWriter::format_double(1.5 * w.R_used)});
    csv.write(ctx.seed, ctx.config.content_hash());

    const double r = inst.E.measure();
    const bool sound = max_dev_G <= 1.5 * w.R_used && max_dev_G1 <= 1.5 * w.R_used &&
                       measure_G >= r / 4.0 - 1.0 / n && measure_G1 >= r / 4.0 - 1.0 / n;
    std::cout << "witness (x0, x0') = (" << w.x0_index << ", " << w.x0p_index << ")  measure(E) = "
              << CsvWriter::format_double(r) << "\nslice measures = ("
              << CsvWriter::format_double(measure_G) << ", " << CsvWriter::format_double(measure_G1)
              << ")  deviations = (" << CsvWriter::format_double(max_dev_G) << ", "
              << CsvWriter::format_double(max_dev_G1)
              << ")  bound = " << CsvWriter::format_double(1.5 * w.R_used) << '\n';
    std::cout << (sound ? "soundness: PASS" : "soundness: FAIL") << '\n';
    return sound ? 0 : 4;
}

int run_lemma_cousin(const CommandContext& ctx) {
    const int n = static_cast<int>(ctx.config.get_int_or(ctx.section, "n", 256));
    const int D = static_cast<int>(ctx.config.get_int_or(ctx.section, "D", 1));
    const int d = static_cast<int>(ctx.config.get_int_or(ctx.section, "d", 2));
    check_caps(1, d);

    // Constructed instance with known splitting: P = -(p0(x) + q0(y)) plus
    // bounded measurable noise on f and g.
    SplitMix64 rng(ctx.seed);
    std::vector<Polynomial> P;
    std::vector<Polynomial> p0s, q0s;
    for (int comp = 0; comp < D; ++comp) {
        Polynomial p0(1, d), q0(1, d);
        for (int e = 0; e <= d; ++e) {
            p0.set_coeff(MultiIndex{e}, rng.uniform(-1.0, 1.0));
            q0.set_coeff(MultiIndex{e}, rng.uniform(-1.0, 1.0));
        }
        Polynomial comp2(2, d);
        for (const auto& [mi, c] : p0.coeffs()) comp2.add_coeff(MultiIndex{mi[0], 0}, -c);
        for (const auto& [mi, c] : q0.coeffs()) comp2.add_coeff(MultiIndex{0, mi[0]}, -c);
        P.push_back(comp2);
        p0s.push_back(p0);
        q0s.push_back(q0);
    }
    Eigen::MatrixXd f(n, D), g(n, D);
    for (int i = 0; i < n; ++i) {
        const double x = (i + 0.5) / n;
        for (int comp = 0; comp < D; ++comp) {
            f(i, comp) = p0s[static_cast<std::size_t>(comp)].eval(std::span<const double>(&x, 1)) +
                         rng.uniform(-0.4, 0.4) / std::sqrt(static_cast<double>(D));
            g(i, comp) = q0s[static_cast<std::size_t>(comp)].eval(std::span<const double>(&x, 1)) +
                         rng.uniform(-0.4, 0.4) / std::sqrt(static_cast<double>(D));
        }
    }
    DiscretizedSet E(n);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) E.set(i, j, rng.uniform() > 0.25);

    const CousinResult res = cousin_approximate(E, f, g, P, d);

    double measure_E1 = 0.0, measure_E2 = 0.0;
    for (int i = 0; i < n; ++i) {
        measure_E1 += res.E1[static_cast<std::size_t>(i)] ? 1.0 : 0.0;
        measure_E2 += res.E2[static_cast<std::size_t>(i)] ? 1.0 : 0.0;
    }
    measure_E1 /= n;
    measure_E2 /= n;

    // Gauge check: Q1 + Q2 must equal -(p + q) exactly up to float adds.
    double gauge = 0.0;
    for (int comp = 0; comp < D; ++comp) {
        const Polynomial sum = res.Q1[static_cast<std::size_t>(comp)] +
                               res.Q2[static_cast<std::size_t>(comp)] +
                               res.p[static_cast<std::size_t>(comp)] +
                               res.q[static_cast<std::size_t>(comp)];
        gauge = std::max(gauge, coeff_norms(sum).full);
    }

    CsvWriter csv(ctx.out_path("lemma_cousin.csv"),
                  "measure_E,measure_E1,measure_E2,bound,guarantee,split_sup,gauge_residual");
    csv.add_row({CsvWriter::format_double(E.measure()), CsvWriter::format_double(measure_E1),
                 CsvWriter::format_double(measure_E2), CsvWriter::format_double(res.bound),
                 CsvWriter::format_double(res.guarantee), CsvWriter::format_double(res.split_sup),
                 CsvWriter::format_double(gauge)});
    csv.write(ctx.seed, ctx.config.content_hash());

    std::cout << "measure(E) = " << CsvWriter::format_double(E.measure()) << "  slices = ("
              << CsvWriter::format_double(measure_E1) << ", " << CsvWriter::format_double(measure_E2)
              << ")\nrealized bound = " << CsvWriter::format_double(res.bound)
              << "  guarantee = " << CsvWriter::format_double(res.guarantee)
              << "  split sup = " << CsvWriter::format_double(res.split_sup)
              << "  gauge residual = " << CsvWriter::format_double(gauge) << '\n';
    return 0;
}

int run_seminorm_const(const CommandContext& ctx) {
    const int d = static_cast<int>(ctx.config.get_int_or(ctx.section, "d", 3));
    check_caps(2, d);
    const int samples = static_cast<int>(ctx.config.get_int_or(ctx.section, "samples", 10000));
    const SeminormEstimate est = estimate_seminorm_constant(d, samples, ctx.seed);

    fs::create_directories(ctx.options.out_dir);
    {
        std::ofstream wout((fs::path(ctx.options.out_dir) / "worst_case.poly").string(),
                           std::ios::binary);
        write_polynomial(wout, est.worst_case);
    }

    CsvWriter csv(ctx.out_path("seminorm_const.csv"), "d,samples,seed,c_hat,quotient_dim");
    csv.add_row({std::to_string(d), std::to_string(samples), std::to_string(ctx.seed),
                 CsvWriter::format_double(est.c_hat), std::to_string(est.quotient_dim)});
    csv.write(ctx.seed, ctx.config.content_hash());

    std::cout << "c_hat = " << CsvWriter::format_double(est.c_hat)
              << "  (quotient dimension " << est.quotient_dim << ", " << samples
              << " samples)\nworst case written to worst_case.poly\n";
    return 0;
}

}  // namespace

int run_command(const std::string& command, const std::string& config_path,
                const RunOptions& options) {
    try {
        const Config config = Config::load(config_path);
        CommandContext ctx{config, command, options, 0};
        ctx.seed = options.seed.has_value() ? *options.seed : config.get_seed_or(command, 0);

        if (command == "norm") return run_norm(ctx);
        if (command == "q-poly") return run_qpoly(ctx);
        if (command == "integrate") return run_integrate(ctx);
        if (command == "decay") return run_decay(ctx);
        if (command == "sublevel") return run_sublevel(ctx);
        if (command == "normalize") return run_normalize(ctx);
        if (command == "counterexample") return run_counterexample(ctx);
        if (command == "lemma-frust") return run_lemma_frust(ctx);
        if (command == "lemma-cousin") return run_lemma_cousin(ctx);
        if (command == "seminorm-const") return run_seminorm_const(ctx);
        throw validation_error("unknown command '" + command + "'");
    } catch (const parse_error& e) {
        std::cerr << "parse error: " << e.what() << '\n';
        return 2;
    } catch (const validation_error& e) {
        std::cerr << "validation error: " << e.what() << '\n';
        return 3;
    } catch (const numeric_error& e) {
        std::cerr << "numeric error: " << e.what() << '\n';
        return 4;
    }
}

}  // namespace oscint
