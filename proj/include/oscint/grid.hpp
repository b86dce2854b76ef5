#pragma once

#include <complex>
#include <functional>
#include <iosfwd>
#include <span>
#include <string>
#include <vector>

#include "oscint/errors.hpp"

namespace oscint {

/// Complex-valued function sampled on a uniform grid over a box in R^dim.
/// Samples sit at the node lattice lo + i * (hi - lo) / (n - 1) including the
/// endpoints; evaluation between samples is multilinear, and points outside
/// the box evaluate to zero (compactly supported data).
class GridFunction {
public:
    GridFunction() = default;
    GridFunction(std::vector<double> lo, std::vector<double> hi, int samples_per_axis);

    /// Samples fn at every grid node.
    static GridFunction sample(std::vector<double> lo, std::vector<double> hi,
                               int samples_per_axis,
                               const std::function<std::complex<double>(std::span<const double>)>& fn);
    static GridFunction constant(std::vector<double> lo, std::vector<double> hi,
                                 int samples_per_axis, std::complex<double> value);

    int dim() const { return static_cast<int>(lo_.size()); }
    int samples_per_axis() const { return n_; }
    const std::vector<double>& lo() const { return lo_; }
    const std::vector<double>& hi() const { return hi_; }
    const std::vector<std::complex<double>>& values() const { return values_; }
    std::vector<std::complex<double>>& values() { return values_; }

    double spacing(int axis) const;

    /// Multilinear interpolation; zero outside the box.
    std::complex<double> value_at(std::span<const double> point) const;
    /// Value of the closest sample; zero outside the box.
    std::complex<double> nearest(std::span<const double> point) const;
    /// 1-D convenience overloads.
    std::complex<double> value_at(double t) const { return value_at(std::span<const double>(&t, 1)); }
    std::complex<double> nearest(double t) const { return nearest(std::span<const double>(&t, 1)); }

    /// Trapezoid-weighted discrete L2 norm.
    double l2_norm() const;
    double max_abs() const;
    bool is_real(double tol = 0.0) const;

    std::size_t flat_index(std::span<const int> idx) const;

private:
    std::vector<double> lo_, hi_;
    int n_ = 0;
    std::vector<std::complex<double>> values_;
};

/// File format: header "box lo... hi... n", then one "re im" pair per sample
/// in row-major order.
GridFunction read_grid_function(std::istream& in, const std::string& filename = "<stream>");
GridFunction read_grid_function_file(const std::string& path);
void write_grid_function(std::ostream& out, const GridFunction& g);
void write_grid_function_file(const std::string& path, const GridFunction& g);

}  // namespace oscint
