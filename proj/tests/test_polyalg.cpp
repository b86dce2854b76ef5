#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <sstream>

#include "oscint/phase.hpp"
#include "oscint/polynomial.hpp"
#include "oscint/rng.hpp"

using namespace oscint;

namespace {

Polynomial random_poly(SplitMix64& rng, int num_vars, int degree) {
    Polynomial p(num_vars, degree);
    MultiIndex mi(static_cast<std::size_t>(num_vars), 0);
    // a handful of random monomials
    const int terms = 3 + static_cast<int>(rng.below(5));
    for (int t = 0; t < terms; ++t) {
        int remaining = degree;
        for (int v = 0; v < num_vars; ++v) {
            const int e = static_cast<int>(rng.below(static_cast<std::uint64_t>(remaining + 1)));
            mi[static_cast<std::size_t>(v)] = e;
            remaining -= e;
        }
        p.add_coeff(mi, rng.uniform(-2.0, 2.0));
    }
    return p;
}

Eigen::MatrixXd random_matrix(SplitMix64& rng, int rows, int cols) {
    Eigen::MatrixXd m(rows, cols);
    for (int r = 0; r < rows; ++r)
        for (int c = 0; c < cols; ++c) m(r, c) = rng.uniform(-2.0, 2.0);
    return m;
}

}  // namespace

TEST_CASE("eval examples") {
    Polynomial p = Polynomial::monomial({2, 1}, 1.0);  // x^2 y
    const double pt[2] = {2.0, 3.0};
    CHECK(p.eval(std::span<const double>(pt, 2)) == doctest::Approx(12.0));

    Polynomial zero = Polynomial::zero(2, 3);
    CHECK(zero.eval(std::span<const double>(pt, 2)) == 0.0);

    Polynomial lin(4, 1);
    lin.set_coeff({1, 0, 0, 0}, 1.0);   // x1
    lin.set_coeff({0, 0, 0, 1}, 2.0);   // 2 y2
    const double pt4[4] = {1.0, 0.0, 0.0, 2.0};
    CHECK(lin.eval(std::span<const double>(pt4, 4)) == doctest::Approx(5.0));

    const double bad[3] = {0, 0, 0};
    CHECK_THROWS_AS(p.eval(std::span<const double>(bad, 3)), argument_error);
}

TEST_CASE("pullback examples") {
    // p(u) = u^2, pi(x,y) = x + y -> (x+y)^2
    Eigen::MatrixXd pi(1, 2);
    pi << 1.0, 1.0;
    Polynomial p = Polynomial::monomial({2}, 1.0);
    Polynomial r = pullback(p, pi);
    CHECK(r.coeff({2, 0}) == doctest::Approx(1.0));
    CHECK(r.coeff({1, 1}) == doctest::Approx(2.0));
    CHECK(r.coeff({0, 2}) == doctest::Approx(1.0));

    pi << 2.0, 3.0;
    Polynomial lin = pullback(Polynomial::monomial({1}, 1.0), pi);
    CHECK(lin.coeff({1, 0}) == doctest::Approx(2.0));
    CHECK(lin.coeff({0, 1}) == doctest::Approx(3.0));

    // kappa = 2: p(u1,u2) = u1 u2, pi = (x1+y1, x2+y2)
    Eigen::MatrixXd pi2(2, 4);
    pi2 << 1, 0, 1, 0,
           0, 1, 0, 1;
    Polynomial prod = pullback(Polynomial::monomial({1, 1}, 1.0), pi2);
    CHECK(prod.coeff({1, 1, 0, 0}) == doctest::Approx(1.0));
    CHECK(prod.coeff({1, 0, 0, 1}) == doctest::Approx(1.0));
    CHECK(prod.coeff({0, 1, 1, 0}) == doctest::Approx(1.0));
    CHECK(prod.coeff({0, 0, 1, 1}) == doctest::Approx(1.0));

    Eigen::MatrixXd bad(2, 4);
    CHECK_THROWS_AS(pullback(p, bad), argument_error);
}

TEST_CASE("pullback correctness on random inputs") {
    SplitMix64 rng(11);
    for (int trial = 0; trial < 200; ++trial) {
        const int kappa = 1 + static_cast<int>(rng.below(2));
        const Polynomial p = random_poly(rng, kappa, 3);
        const Eigen::MatrixXd pi = random_matrix(rng, kappa, 2 * kappa);
        const Polynomial r = pullback(p, pi);
        Eigen::VectorXd z(2 * kappa);
        for (int i = 0; i < 2 * kappa; ++i) z(i) = rng.uniform(-1.5, 1.5);
        const Eigen::VectorXd u = pi * z;
        const double want = p.eval(u);
        const double got = r.eval(z);
        CHECK(std::abs(got - want) <= 1e-9 * (1.0 + std::abs(want)));
    }
}

TEST_CASE("freeze examples and eval consistency") {
    // P = x1^2 x2 + y1 y2 in layout (x1, x2, y1, y2)
    Polynomial P(4, 3);
    P.set_coeff({2, 1, 0, 0}, 1.0);
    P.set_coeff({0, 0, 1, 1}, 1.0);

    // freeze (x2, y2) = (3, -1): indices 1 and 3
    const int idx[2] = {1, 3};
    const double vals[2] = {3.0, -1.0};
    Polynomial f = freeze(P, idx, vals);
    CHECK(f.num_vars() == 2);
    CHECK(f.coeff({2, 0}) == doctest::Approx(3.0));
    CHECK(f.coeff({0, 1}) == doctest::Approx(-1.0));

    // freeze nothing -> unchanged
    Polynomial same = freeze(P, {}, {});
    CHECK(same == P);

    // freeze all = eval
    SplitMix64 rng(5);
    const int all[4] = {0, 1, 2, 3};
    for (int t = 0; t < 20; ++t) {
        double z[4];
        for (double& v : z) v = rng.uniform(-2.0, 2.0);
        Polynomial c = freeze(P, all, z);
        CHECK(c.num_vars() == 0);
        CHECK(c.eval(std::span<const double>{}) ==
              doctest::Approx(P.eval(std::span<const double>(z, 4))).epsilon(1e-12));
    }

    const int bad_idx[1] = {7};
    const double bad_val[1] = {0.0};
    CHECK_THROWS_AS(freeze(P, bad_idx, bad_val), argument_error);
}

TEST_CASE("homogeneous parts") {
    Polynomial P(2, 2);
    P.set_coeff({0, 0}, 1.0);
    P.set_coeff({1, 0}, 1.0);
    P.set_coeff({1, 1}, 1.0);
    auto parts = homogeneous_parts(P);
    REQUIRE(parts.size() == 3);
    CHECK(parts[0].coeff({0, 0}) == 1.0);
    CHECK(parts[1].coeff({1, 0}) == 1.0);
    CHECK(parts[2].coeff({1, 1}) == 1.0);

    // partition of unity, exact
    Polynomial sum(2, 2);
    for (const auto& q : parts) sum = sum + q;
    CHECK(sum == P);

    // homogeneous input -> single part
    Polynomial h(2, 3);
    h.set_coeff({2, 1}, 2.0);
    h.set_coeff({0, 3}, -1.0);
    auto hp = homogeneous_parts(h);
    CHECK(hp[3] == h);
    for (int k = 0; k < 3; ++k) CHECK(hp[static_cast<std::size_t>(k)].is_zero());

    // partial selection: P = x1^2 x2 with selection {x1} sits at k = 2
    Polynomial m(2, 3);
    m.set_coeff({2, 1}, 1.0);
    const int sel[1] = {0};
    auto mp = homogeneous_parts(m, sel);
    CHECK(mp[2] == m);
    CHECK(mp[0].is_zero());

    // random partition-of-unity
    SplitMix64 rng(17);
    for (int t = 0; t < 50; ++t) {
        Polynomial r = random_poly(rng, 3, 4);
        auto ps = homogeneous_parts(r);
        Polynomial s(3, r.degree_cap());
        for (const auto& q : ps) s = s + q;
        CHECK(s == r);
    }
}

TEST_CASE("split P0/P*") {
    // P = x2 y2 + x1 x2 in layout (x1, x2, y1, y2)
    Polynomial P(4, 2);
    P.set_coeff({0, 1, 0, 1}, 1.0);  // x2 y2
    P.set_coeff({1, 1, 0, 0}, 1.0);  // x1 x2
    auto split = split_P0_Pstar(P, 2);
    CHECK(split.P0.num_vars() == 2);
    CHECK(split.P0.coeff({1, 1}) == doctest::Approx(1.0));
    CHECK(split.P0.term_count() == 1);
    CHECK(split.Pstar.coeff({1, 1, 0, 0}) == doctest::Approx(1.0));
    CHECK(split.Pstar.term_count() == 1);

    // inner-only polynomial with constant c
    Polynomial Pin(4, 2);
    Pin.set_coeff({0, 0, 0, 0}, 3.0);
    Pin.set_coeff({1, 0, 1, 0}, 2.0);  // x1 y1
    auto s2 = split_P0_Pstar(Pin, 2);
    CHECK(s2.P0.coeff({0, 0}) == doctest::Approx(3.0));
    CHECK(s2.P0.term_count() == 1);

    // exact reassembly on random polynomials
    SplitMix64 rng(23);
    for (int t = 0; t < 50; ++t) {
        Polynomial r = random_poly(rng, 4, 4);
        auto s = split_P0_Pstar(r, 2);
        const Polynomial back =
            embed_in_vars(s.P0, 4, s.outer_vars) + s.Pstar;
        CHECK(back == r);
        // P* vanishes when the inner variables are zero
        for (int q = 0; q < 5; ++q) {
            double z[4] = {0.0, rng.uniform(-1, 1), 0.0, rng.uniform(-1, 1)};
            CHECK(std::abs(s.Pstar.eval(std::span<const double>(z, 4))) < 1e-12);
        }
    }
}

TEST_CASE("coefficient norms") {
    Polynomial p(2, 1);
    p.set_coeff({1, 0}, 3.0);
    p.set_coeff({0, 1}, 4.0);
    auto n = coeff_norms(p);
    CHECK(n.full == doctest::Approx(5.0));
    CHECK(n.nc == doctest::Approx(5.0));

    Polynomial q(1, 1);
    q.set_coeff({0}, 2.0);
    q.set_coeff({1}, 1.0);
    auto nq = coeff_norms(q);
    CHECK(nq.full == doctest::Approx(std::sqrt(5.0)));
    CHECK(nq.nc == doctest::Approx(1.0));

    auto nz = coeff_norms(Polynomial::zero(3, 2));
    CHECK(nz.full == 0.0);
    CHECK(nz.nc == 0.0);

    // triangle inequality and homogeneity on random pairs
    SplitMix64 rng(31);
    for (int t = 0; t < 100; ++t) {
        Polynomial a = random_poly(rng, 2, 4);
        Polynomial b = random_poly(rng, 2, 4);
        auto na = coeff_norms(a), nb = coeff_norms(b), ns = coeff_norms(a + b);
        CHECK(ns.full <= na.full + nb.full + 1e-12);
        CHECK(ns.nc <= na.nc + nb.nc + 1e-12);
        const double s = rng.uniform(-3.0, 3.0);
        CHECK(coeff_norms(a * s).full == doctest::Approx(std::abs(s) * na.full).epsilon(1e-12));
    }
}

TEST_CASE("phase coefficients") {
    // lambda = 1, P = x1 y1, all theta = 0 -> psi_11 = 1, everything else 0
    PhaseTriple zeros = PhaseTriple::zeros(2, -4.0, 4.0, 64);
    Polynomial P(4, 2);
    P.set_coeff({1, 0, 1, 0}, 1.0);  // x1 y1
    auto psi = phase_coefficients(zeros, P, 1.0, 0.25, -0.5);
    for (const auto& [jk, v] : psi) {
        if (jk == std::pair{1, 1})
            CHECK(v == doctest::Approx(1.0));
        else
            CHECK(v == doctest::Approx(0.0));
    }

    // theta_{3,2} = t constant, P = 0 -> psi_11 = 2t
    PhaseTriple t3 = PhaseTriple::zeros(2, -4.0, 4.0, 64);
    const double tval = 0.7;
    t3.theta3[2] = GridFunction::constant({-4.0}, {4.0}, 64, {tval, 0.0});
    auto psi2 = phase_coefficients(t3, Polynomial::zero(4, 2), 3.0, 0.3, 0.4);
    CHECK(psi2[{1, 1}] == doctest::Approx(2.0 * tval));
    CHECK(psi2[{2, 0}] == doctest::Approx(tval));
    CHECK(psi2[{0, 2}] == doctest::Approx(tval));

    // j = k = 0 assembles all three theta constants plus lambda * p00
    PhaseTriple t0 = PhaseTriple::zeros(1, -4.0, 4.0, 64);
    t0.theta1[0] = GridFunction::constant({-4.0}, {4.0}, 64, {1.0, 0.0});
    t0.theta2[0] = GridFunction::constant({-4.0}, {4.0}, 64, {2.0, 0.0});
    t0.theta3[0] = GridFunction::constant({-4.0}, {4.0}, 64, {4.0, 0.0});
    Polynomial P0(4, 1);
    P0.set_coeff({0, 1, 0, 0}, 1.0);  // x2
    auto psi3 = phase_coefficients(t0, P0, 2.0, 0.5, 0.25);
    CHECK(psi3[{0, 0}] == doctest::Approx(1.0 + 2.0 + 4.0 + 2.0 * 0.5));

    // lookup outside the grid coverage
    CHECK_THROWS_AS(phase_coefficients(t0, P0, 1.0, 10.0, 0.0), validation_error);
}

TEST_CASE("phase coefficient linearity in lambda") {
    // integer data keeps the identity psi(lambda) - psi(0) = lambda * p_jk exact
    SplitMix64 rng(47);
    PhaseTriple t = PhaseTriple::zeros(3, -4.0, 4.0, 32);
    for (int j = 0; j <= 3; ++j) {
        t.theta1[static_cast<std::size_t>(j)] = GridFunction::constant(
            {-4.0}, {4.0}, 32, {static_cast<double>(rng.below(7)), 0.0});
        t.theta2[static_cast<std::size_t>(j)] = GridFunction::constant(
            {-4.0}, {4.0}, 32, {static_cast<double>(rng.below(7)), 0.0});
        t.theta3[static_cast<std::size_t>(j)] = GridFunction::constant(
            {-4.0}, {4.0}, 32, {static_cast<double>(rng.below(7)), 0.0});
    }
    Polynomial P(4, 3);
    P.set_coeff({1, 0, 1, 0}, 2.0);
    P.set_coeff({2, 1, 0, 0}, 3.0);
    P.set_coeff({0, 1, 1, 1}, 1.0);

    const std::vector<int> inner = {0, 2};
    auto by_inner = decompose_by_vars(P, inner);
    const double x2 = 2.0, y2 = 1.0;
    for (double lambda : {1.0, 2.0, 4.0}) {
        auto with = phase_coefficients(t, P, lambda, x2, y2);
        auto without = phase_coefficients(t, P, 0.0, x2, y2);
        for (const auto& [jk, v] : with) {
            double pjk = 0.0;
            auto it = by_inner.find(MultiIndex{jk.first, jk.second});
            if (it != by_inner.end()) {
                const double pt[2] = {x2, y2};
                pjk = it->second.eval(std::span<const double>(pt, 2));
            }
            CHECK(v - without[jk] == lambda * pjk);  // exact
        }
    }
}

TEST_CASE("polynomial text format round trip") {
    std::istringstream in("# comment\n2 1 0 0 : 1.0\n\n0 0 0 1 : -2.5 # trailing\n");
    Polynomial p = read_polynomial(in, "test.poly");
    CHECK(p.num_vars() == 4);
    CHECK(p.coeff({2, 1, 0, 0}) == 1.0);
    CHECK(p.coeff({0, 0, 0, 1}) == -2.5);

    std::ostringstream out;
    write_polynomial(out, p);
    std::istringstream back(out.str());
    CHECK(read_polynomial(back) == p);

    std::istringstream bad("2 1 : x\n");
    try {
        read_polynomial(bad, "bad.poly");
        CHECK(false);
    } catch (const parse_error& e) {
        CHECK(e.line() == 1);
        CHECK(e.file() == "bad.poly");
    }

    std::istringstream ragged("1 0 : 1\n1 0 0 : 2\n");
    CHECK_THROWS_AS(read_polynomial(ragged), parse_error);
}

TEST_CASE("canonicalization prunes float dust") {
    Polynomial a(1, 2);
    a.set_coeff({1}, 1.0);
    Polynomial b(1, 2);
    b.set_coeff({1}, 1.0);
    b.set_coeff({2}, 1e-16);
    Polynomial diff = a - b;
    CHECK(diff.is_zero());
}
