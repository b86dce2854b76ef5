#include "oscint/polynomial.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>

namespace oscint {

int total_degree(const MultiIndex& mi) {
    int d = 0;
    for (int e : mi) d += e;
    return d;
}

bool GradedLexLess::operator()(const MultiIndex& a, const MultiIndex& b) const {
    const int da = total_degree(a);
    const int db = total_degree(b);
    if (da != db) return da < db;
    return std::lexicographical_compare(a.begin(), a.end(), b.begin(), b.end());
}

Polynomial::Polynomial(int num_vars, int degree_cap)
    : num_vars_(num_vars), degree_cap_(degree_cap) {
    if (num_vars < 0) throw argument_error("polynomial: num_vars must be >= 0");
    if (degree_cap < 0) throw argument_error("polynomial: degree_cap must be >= 0");
}

Polynomial Polynomial::zero(int num_vars, int degree_cap) {
    return Polynomial(num_vars, degree_cap);
}

Polynomial Polynomial::constant(int num_vars, double value) {
    Polynomial p(num_vars, 0);
    p.set_coeff(MultiIndex(static_cast<std::size_t>(num_vars), 0), value);
    return p;
}

Polynomial Polynomial::monomial(MultiIndex exponents, double coeff) {
    Polynomial p(static_cast<int>(exponents.size()), oscint::total_degree(exponents));
    p.set_coeff(std::move(exponents), coeff);
    return p;
}

void Polynomial::check_index(const MultiIndex& mi) const {
    if (static_cast<int>(mi.size()) != num_vars_)
        throw argument_error("polynomial: multi-index length does not match num_vars");
    for (int e : mi)
        if (e < 0) throw argument_error("polynomial: negative exponent");
}

int Polynomial::total_degree() const {
    int d = -1;
    for (const auto& [mi, c] : coeffs_) d = std::max(d, oscint::total_degree(mi));
    return d;
}

double Polynomial::coeff(const MultiIndex& mi) const {
    auto it = coeffs_.find(mi);
    return it == coeffs_.end() ? 0.0 : it->second;
}

void Polynomial::set_coeff(const MultiIndex& mi, double value) {
    check_index(mi);
    degree_cap_ = std::max(degree_cap_, oscint::total_degree(mi));
    if (value == 0.0)
        coeffs_.erase(mi);
    else
        coeffs_[mi] = value;
}

void Polynomial::add_coeff(const MultiIndex& mi, double value) {
    check_index(mi);
    degree_cap_ = std::max(degree_cap_, oscint::total_degree(mi));
    auto it = coeffs_.find(mi);
    if (it == coeffs_.end()) {
        if (value != 0.0) coeffs_[mi] = value;
        return;
    }
    it->second += value;
    if (it->second == 0.0) coeffs_.erase(it);
}

double Polynomial::eval(std::span<const double> point) const {
    if (static_cast<int>(point.size()) != num_vars_)
        throw argument_error("polynomial eval: point dimension does not match num_vars");
    double sum = 0.0;
    for (const auto& [mi, c] : coeffs_) {
        double term = c;
        for (int i = 0; i < num_vars_; ++i) {
            for (int k = 0; k < mi[static_cast<std::size_t>(i)]; ++k) term *= point[static_cast<std::size_t>(i)];
        }
        sum += term;
    }
    return sum;
}

double Polynomial::eval(const Eigen::VectorXd& point) const {
    return eval(std::span<const double>(point.data(), static_cast<std::size_t>(point.size())));
}

Polynomial Polynomial::operator+(const Polynomial& rhs) const {
    if (num_vars_ != rhs.num_vars_)
        throw argument_error("polynomial add: variable counts differ");
    Polynomial out(num_vars_, std::max(degree_cap_, rhs.degree_cap_));
    out.coeffs_ = coeffs_;
    for (const auto& [mi, c] : rhs.coeffs_) {
        auto it = out.coeffs_.find(mi);
        if (it == out.coeffs_.end())
            out.coeffs_[mi] = c;
        else {
            it->second += c;
            if (it->second == 0.0) out.coeffs_.erase(it);
        }
    }
    out.prune();
    return out;
}

Polynomial Polynomial::operator-(const Polynomial& rhs) const { return *this + rhs * -1.0; }

Polynomial Polynomial::operator*(const Polynomial& rhs) const {
    if (num_vars_ != rhs.num_vars_)
        throw argument_error("polynomial multiply: variable counts differ");
    Polynomial out(num_vars_, degree_cap_ + rhs.degree_cap_);
    MultiIndex mi(static_cast<std::size_t>(num_vars_), 0);
    for (const auto& [a, ca] : coeffs_) {
        for (const auto& [b, cb] : rhs.coeffs_) {
            for (int i = 0; i < num_vars_; ++i)
                mi[static_cast<std::size_t>(i)] = a[static_cast<std::size_t>(i)] + b[static_cast<std::size_t>(i)];
            auto it = out.coeffs_.find(mi);
            if (it == out.coeffs_.end())
                out.coeffs_[mi] = ca * cb;
            else
                it->second += ca * cb;
        }
    }
    out.prune();
    return out;
}

Polynomial Polynomial::operator*(double scalar) const {
    Polynomial out(num_vars_, degree_cap_);
    if (scalar == 0.0) return out;
    for (const auto& [mi, c] : coeffs_) out.coeffs_[mi] = c * scalar;
    return out;
}

bool Polynomial::operator==(const Polynomial& rhs) const {
    return num_vars_ == rhs.num_vars_ && coeffs_ == rhs.coeffs_;
}

void Polynomial::prune(double tol) {
    for (auto it = coeffs_.begin(); it != coeffs_.end();) {
        if (std::abs(it->second) < tol)
            it = coeffs_.erase(it);
        else
            ++it;
    }
}

std::string Polynomial::to_string() const {
    if (coeffs_.empty()) return "0";
    std::ostringstream os;
    bool first = true;
    for (const auto& [mi, c] : coeffs_) {
        if (!first) os << " + ";
        first = false;
        os << c;
        for (int i = 0; i < num_vars_; ++i) {
            const int e = mi[static_cast<std::size_t>(i)];
            if (e > 0) {
                os << "*v" << i;
                if (e > 1) os << "^" << e;
            }
        }
    }
    return os.str();
}

Polynomial pullback(const Polynomial& p, const Eigen::MatrixXd& pi) {
    if (pi.rows() != p.num_vars())
        throw argument_error("pullback: matrix row count does not match polynomial variables");
    const int out_vars = static_cast<int>(pi.cols());
    if (out_vars <= 0) throw argument_error("pullback: matrix must have at least one column");

    // Linear forms L_i(z) = sum_j pi(i,j) z_j, one per input variable.
    std::vector<Polynomial> forms;
    forms.reserve(static_cast<std::size_t>(pi.rows()));
    for (int i = 0; i < pi.rows(); ++i) {
        Polynomial form(out_vars, 1);
        for (int j = 0; j < out_vars; ++j) {
            if (pi(i, j) != 0.0) {
                MultiIndex mi(static_cast<std::size_t>(out_vars), 0);
                mi[static_cast<std::size_t>(j)] = 1;
                form.set_coeff(mi, pi(i, j));
            }
        }
        forms.push_back(std::move(form));
    }

    Polynomial out(out_vars, p.degree_cap());
    for (const auto& [mi, c] : p.coeffs()) {
        Polynomial term = Polynomial::constant(out_vars, c);
        for (int i = 0; i < p.num_vars(); ++i)
            for (int k = 0; k < mi[static_cast<std::size_t>(i)]; ++k) term = term * forms[static_cast<std::size_t>(i)];
        out = out + term;
    }
    out.prune();
    return out;
}

Polynomial freeze(const Polynomial& p, std::span<const int> fixed_vars,
                  std::span<const double> values) {
    if (fixed_vars.size() != values.size())
        throw argument_error("freeze: fixed_vars and values have different lengths");
    std::vector<bool> fixed(static_cast<std::size_t>(p.num_vars()), false);
    std::vector<double> value_of(static_cast<std::size_t>(p.num_vars()), 0.0);
    for (std::size_t k = 0; k < fixed_vars.size(); ++k) {
        const int v = fixed_vars[k];
        if (v < 0 || v >= p.num_vars()) throw argument_error("freeze: variable index out of range");
        if (fixed[static_cast<std::size_t>(v)]) throw argument_error("freeze: duplicate variable index");
        fixed[static_cast<std::size_t>(v)] = true;
        value_of[static_cast<std::size_t>(v)] = values[k];
    }
    std::vector<int> kept;
    for (int v = 0; v < p.num_vars(); ++v)
        if (!fixed[static_cast<std::size_t>(v)]) kept.push_back(v);

    Polynomial out(static_cast<int>(kept.size()), p.degree_cap());
    for (const auto& [mi, c] : p.coeffs()) {
        double factor = c;
        for (int v = 0; v < p.num_vars(); ++v) {
            if (!fixed[static_cast<std::size_t>(v)]) continue;
            for (int k = 0; k < mi[static_cast<std::size_t>(v)]; ++k) factor *= value_of[static_cast<std::size_t>(v)];
        }
        if (factor == 0.0) continue;
        MultiIndex rest(kept.size());
        for (std::size_t j = 0; j < kept.size(); ++j) rest[j] = mi[static_cast<std::size_t>(kept[j])];
        out.add_coeff(rest, factor);
    }
    out.prune();
    return out;
}

std::vector<Polynomial> homogeneous_parts(const Polynomial& p,
                                          std::span<const int> selected_vars) {
    std::vector<bool> selected(static_cast<std::size_t>(p.num_vars()), selected_vars.empty());
    for (int v : selected_vars) {
        if (v < 0 || v >= p.num_vars())
            throw argument_error("homogeneous_parts: variable index out of range");
        selected[static_cast<std::size_t>(v)] = true;
    }
    const int cap = std::max(p.degree_cap(), 0);
    std::vector<Polynomial> parts;
    parts.reserve(static_cast<std::size_t>(cap) + 1);
    for (int k = 0; k <= cap; ++k) parts.emplace_back(p.num_vars(), p.degree_cap());
    for (const auto& [mi, c] : p.coeffs()) {
        int k = 0;
        for (int v = 0; v < p.num_vars(); ++v)
            if (selected[static_cast<std::size_t>(v)]) k += mi[static_cast<std::size_t>(v)];
        parts[static_cast<std::size_t>(k)].set_coeff(mi, c);
    }
    return parts;
}

CoeffNorms coeff_norms(const Polynomial& p) {
    double full2 = 0.0;
    double nc2 = 0.0;
    for (const auto& [mi, c] : p.coeffs()) {
        full2 += c * c;
        if (total_degree(mi) > 0) nc2 += c * c;
    }
    return {std::sqrt(full2), std::sqrt(nc2)};
}

InnerOuterSplit split_P0_Pstar(const Polynomial& p, int kappa) {
    if (kappa < 2) throw argument_error("split_P0_Pstar: kappa must be >= 2");
    if (p.num_vars() != 2 * kappa)
        throw argument_error("split_P0_Pstar: polynomial must have 2*kappa variables");
    InnerOuterSplit out;
    out.inner_vars = {0, kappa};
    for (int v = 0; v < 2 * kappa; ++v)
        if (v != 0 && v != kappa) out.outer_vars.push_back(v);

    const std::vector<double> zeros(2, 0.0);
    out.P0 = freeze(p, out.inner_vars, zeros);
    out.Pstar = p - embed_in_vars(out.P0, p.num_vars(), out.outer_vars);
    return out;
}

Polynomial embed_in_vars(const Polynomial& p, int full_num_vars,
                         std::span<const int> var_positions) {
    if (static_cast<int>(var_positions.size()) != p.num_vars())
        throw argument_error("embed_in_vars: position count does not match variables");
    Polynomial out(full_num_vars, p.degree_cap());
    for (const auto& [mi, c] : p.coeffs()) {
        MultiIndex full(static_cast<std::size_t>(full_num_vars), 0);
        for (std::size_t j = 0; j < var_positions.size(); ++j) {
            const int pos = var_positions[j];
            if (pos < 0 || pos >= full_num_vars)
                throw argument_error("embed_in_vars: position out of range");
            full[static_cast<std::size_t>(pos)] = mi[j];
        }
        out.set_coeff(full, c);
    }
    return out;
}

std::map<MultiIndex, Polynomial, GradedLexLess> decompose_by_vars(
    const Polynomial& p, std::span<const int> inner_vars) {
    std::vector<bool> inner(static_cast<std::size_t>(p.num_vars()), false);
    for (int v : inner_vars) {
        if (v < 0 || v >= p.num_vars())
            throw argument_error("decompose_by_vars: variable index out of range");
        inner[static_cast<std::size_t>(v)] = true;
    }
    std::vector<int> outer_vars;
    for (int v = 0; v < p.num_vars(); ++v)
        if (!inner[static_cast<std::size_t>(v)]) outer_vars.push_back(v);

    std::map<MultiIndex, Polynomial, GradedLexLess> out;
    for (const auto& [mi, c] : p.coeffs()) {
        MultiIndex key(inner_vars.size());
        for (std::size_t j = 0; j < inner_vars.size(); ++j)
            key[j] = mi[static_cast<std::size_t>(inner_vars[j])];
        MultiIndex rest(outer_vars.size());
        for (std::size_t j = 0; j < outer_vars.size(); ++j)
            rest[j] = mi[static_cast<std::size_t>(outer_vars[j])];
        auto it = out.find(key);
        if (it == out.end())
            it = out.emplace(key, Polynomial(static_cast<int>(outer_vars.size()), p.degree_cap())).first;
        it->second.add_coeff(rest, c);
    }
    return out;
}

Polynomial read_polynomial(std::istream& in, const std::string& filename) {
    Polynomial p;
    bool have_vars = false;
    int num_vars = 0;
    std::string line;
    long line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        const auto hash = line.find('#');
        if (hash != std::string::npos) line.erase(hash);
        std::istringstream ls(line);
        std::vector<std::string> tokens;
        std::string tok;
        while (ls >> tok) tokens.push_back(tok);
        if (tokens.empty()) continue;

        auto colon = std::find(tokens.begin(), tokens.end(), ":");
        if (colon == tokens.end() || colon == tokens.begin() || colon + 1 == tokens.end() ||
            colon + 2 != tokens.end())
            throw parse_error(filename, line_no,
                              "expected 'e_1 ... e_m : coefficient'");
        MultiIndex mi;
        for (auto it = tokens.begin(); it != colon; ++it) {
            try {
                std::size_t used = 0;
                const int e = std::stoi(*it, &used);
                if (used != it->size() || e < 0) throw std::invalid_argument("");
                mi.push_back(e);
            } catch (const std::exception&) {
                throw parse_error(filename, line_no, "bad exponent '" + *it + "'");
            }
        }
        double c = 0.0;
        try {
            std::size_t used = 0;
            c = std::stod(*(colon + 1), &used);
            if (used != (colon + 1)->size()) throw std::invalid_argument("");
        } catch (const std::exception&) {
            throw parse_error(filename, line_no, "bad coefficient '" + *(colon + 1) + "'");
        }
        if (!have_vars) {
            num_vars = static_cast<int>(mi.size());
            p = Polynomial(num_vars, 0);
            have_vars = true;
        } else if (static_cast<int>(mi.size()) != num_vars) {
            throw parse_error(filename, line_no, "exponent count differs from first monomial");
        }
        p.add_coeff(mi, c);
    }
    if (!have_vars) throw parse_error(filename, line_no, "no monomials found");
    return p;
}

Polynomial read_polynomial_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw parse_error(path, 0, "cannot open file");
    return read_polynomial(in, path);
}

void write_polynomial(std::ostream& out, const Polynomial& p) {
    char buf[64];
    for (const auto& [mi, c] : p.coeffs()) {
        for (int e : mi) out << e << ' ';
        std::snprintf(buf, sizeof(buf), "%.17g", c);
        out << ": " << buf << '\n';
    }
}

}  // namespace oscint
