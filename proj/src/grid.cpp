#include "oscint/grid.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>

namespace oscint {

GridFunction::GridFunction(std::vector<double> lo, std::vector<double> hi, int samples_per_axis)
    : lo_(std::move(lo)), hi_(std::move(hi)), n_(samples_per_axis) {
    if (lo_.size() != hi_.size() || lo_.empty())
        throw argument_error("grid: lo/hi must be nonempty and of equal length");
    if (n_ < 2) throw argument_error("grid: need at least 2 samples per axis");
    for (std::size_t i = 0; i < lo_.size(); ++i)
        if (!(lo_[i] < hi_[i])) throw argument_error("grid: box must have lo < hi on every axis");
    std::size_t count = 1;
    for (std::size_t i = 0; i < lo_.size(); ++i) count *= static_cast<std::size_t>(n_);
    values_.assign(count, {0.0, 0.0});
}

GridFunction GridFunction::sample(std::vector<double> lo, std::vector<double> hi,
                                  int samples_per_axis,
                                  const std::function<std::complex<double>(std::span<const double>)>& fn) {
    GridFunction g(std::move(lo), std::move(hi), samples_per_axis);
    const int d = g.dim();
    std::vector<int> idx(static_cast<std::size_t>(d), 0);
    std::vector<double> pt(static_cast<std::size_t>(d), 0.0);
    for (std::size_t flat = 0; flat < g.values_.size(); ++flat) {
        std::size_t rest = flat;
        for (int a = d - 1; a >= 0; --a) {
            idx[static_cast<std::size_t>(a)] = static_cast<int>(rest % static_cast<std::size_t>(g.n_));
            rest /= static_cast<std::size_t>(g.n_);
        }
        for (int a = 0; a < d; ++a)
            pt[static_cast<std::size_t>(a)] =
                g.lo_[static_cast<std::size_t>(a)] +
                g.spacing(a) * static_cast<double>(idx[static_cast<std::size_t>(a)]);
        g.values_[flat] = fn(pt);
    }
    return g;
}

GridFunction GridFunction::constant(std::vector<double> lo, std::vector<double> hi,
                                    int samples_per_axis, std::complex<double> value) {
    GridFunction g(std::move(lo), std::move(hi), samples_per_axis);
    std::fill(g.values_.begin(), g.values_.end(), value);
    return g;
}

double GridFunction::spacing(int axis) const {
    return (hi_[static_cast<std::size_t>(axis)] - lo_[static_cast<std::size_t>(axis)]) /
           static_cast<double>(n_ - 1);
}

std::size_t GridFunction::flat_index(std::span<const int> idx) const {
    std::size_t flat = 0;
    for (std::size_t a = 0; a < idx.size(); ++a)
        flat = flat * static_cast<std::size_t>(n_) + static_cast<std::size_t>(idx[a]);
    return flat;
}

std::complex<double> GridFunction::value_at(std::span<const double> point) const {
    const int d = dim();
    if (static_cast<int>(point.size()) != d)
        throw argument_error("grid value_at: point dimension mismatch");
    // Cell coordinates plus fractional offsets; outside the box -> 0.
    int base[8];
    double frac[8];
    if (d > 8) throw argument_error("grid: dimension > 8 unsupported");
    for (int a = 0; a < d; ++a) {
        const double t = point[static_cast<std::size_t>(a)];
        if (t < lo_[static_cast<std::size_t>(a)] || t > hi_[static_cast<std::size_t>(a)]) return {0.0, 0.0};
        double u = (t - lo_[static_cast<std::size_t>(a)]) / spacing(a);
        int i = static_cast<int>(u);
        if (i >= n_ - 1) i = n_ - 2;
        base[a] = i;
        frac[a] = u - static_cast<double>(i);
    }
    std::complex<double> acc(0.0, 0.0);
    const int corners = 1 << d;
    int idx[8];
    for (int c = 0; c < corners; ++c) {
        double w = 1.0;
        for (int a = 0; a < d; ++a) {
            const bool high = (c >> a) & 1;
            idx[a] = base[a] + (high ? 1 : 0);
            w *= high ? frac[a] : (1.0 - frac[a]);
        }
        if (w == 0.0) continue;
        acc += w * values_[flat_index(std::span<const int>(idx, static_cast<std::size_t>(d)))];
    }
    return acc;
}

std::complex<double> GridFunction::nearest(std::span<const double> point) const {
    const int d = dim();
    if (static_cast<int>(point.size()) != d)
        throw argument_error("grid nearest: point dimension mismatch");
    if (d > 8) throw argument_error("grid: dimension > 8 unsupported");
    int idx[8];
    for (int a = 0; a < d; ++a) {
        const double t = point[static_cast<std::size_t>(a)];
        if (t < lo_[static_cast<std::size_t>(a)] || t > hi_[static_cast<std::size_t>(a)]) return {0.0, 0.0};
        int i = static_cast<int>(std::lround((t - lo_[static_cast<std::size_t>(a)]) / spacing(a)));
        idx[a] = std::clamp(i, 0, n_ - 1);
    }
    return values_[flat_index(std::span<const int>(idx, static_cast<std::size_t>(d)))];
}

double GridFunction::l2_norm() const {
    // Trapezoid weights: interior nodes weight 1, faces 1/2 per axis.
    const int d = dim();
    double sum = 0.0;
    std::vector<int> idx(static_cast<std::size_t>(d), 0);
    for (std::size_t flat = 0; flat < values_.size(); ++flat) {
        std::size_t rest = flat;
        double w = 1.0;
        for (int a = d - 1; a >= 0; --a) {
            const int i = static_cast<int>(rest % static_cast<std::size_t>(n_));
            rest /= static_cast<std::size_t>(n_);
            if (i == 0 || i == n_ - 1) w *= 0.5;
        }
        sum += w * std::norm(values_[flat]);
    }
    double cell = 1.0;
    for (int a = 0; a < d; ++a) cell *= spacing(a);
    return std::sqrt(sum * cell);
}

double GridFunction::max_abs() const {
    double m = 0.0;
    for (const auto& v : values_) m = std::max(m, std::abs(v));
    return m;
}

bool GridFunction::is_real(double tol) const {
    for (const auto& v : values_)
        if (std::abs(v.imag()) > tol) return false;
    return true;
}

GridFunction read_grid_function(std::istream& in, const std::string& filename) {
    std::string line;
    long line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        const auto hash = line.find('#');
        if (hash != std::string::npos) line.erase(hash);
        std::istringstream ls(line);
        std::string word;
        if (!(ls >> word)) continue;
        if (word != "box") throw parse_error(filename, line_no, "expected 'box' header");
        std::vector<double> nums;
        double x = 0.0;
        while (ls >> x) nums.push_back(x);
        if (nums.size() < 3 || nums.size() % 2 == 0)
            throw parse_error(filename, line_no, "header must be 'box lo... hi... n'");
        const std::size_t d = nums.size() / 2;
        const int n = static_cast<int>(nums.back());
        if (static_cast<double>(n) != nums.back() || n < 2)
            throw parse_error(filename, line_no, "bad sample count");
        std::vector<double> lo(nums.begin(), nums.begin() + static_cast<std::ptrdiff_t>(d));
        std::vector<double> hi(nums.begin() + static_cast<std::ptrdiff_t>(d),
                               nums.begin() + static_cast<std::ptrdiff_t>(2 * d));
        GridFunction g;
        try {
            g = GridFunction(std::move(lo), std::move(hi), n);
        } catch (const validation_error& e) {
            throw parse_error(filename, line_no, e.what());
        }
        for (std::size_t k = 0; k < g.values().size(); ++k) {
            double re = 0.0, im = 0.0;
            if (!(in >> re >> im))
                throw parse_error(filename, line_no, "not enough samples");
            g.values()[k] = {re, im};
        }
        return g;
    }
    throw parse_error(filename, line_no, "missing grid header");
}

GridFunction read_grid_function_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw parse_error(path, 0, "cannot open file");
    return read_grid_function(in, path);
}

void write_grid_function(std::ostream& out, const GridFunction& g) {
    out << "box";
    char buf[64];
    for (double v : g.lo()) {
        std::snprintf(buf, sizeof(buf), "%.17g", v);
        out << ' ' << buf;
    }
    for (double v : g.hi()) {
        std::snprintf(buf, sizeof(buf), "%.17g", v);
        out << ' ' << buf;
    }
    out << ' ' << g.samples_per_axis() << '\n';
    for (const auto& v : g.values()) {
        std::snprintf(buf, sizeof(buf), "%.17g", v.real());
        out << buf << ' ';
        std::snprintf(buf, sizeof(buf), "%.17g", v.imag());
        out << buf << '\n';
    }
}

void write_grid_function_file(const std::string& path, const GridFunction& g) {
    std::ofstream out(path);
    if (!out) throw numeric_error("cannot open output file " + path);
    write_grid_function(out, g);
}

}  // namespace oscint
