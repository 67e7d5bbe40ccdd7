#include "doctest.h"

#include <cmath>

#include "fdr/linalg.hpp"
#include "fdr/model.hpp"

using namespace fdr;

namespace {

CMat random_hermitian(std::size_t n, CounterRng& rng) {
    CMat X(n, n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) X(i, j) = rng.complex_normal();
    CMat A = X + X.adjoint();
    return A;
}

CMat random_pd(std::size_t n, CounterRng& rng) {
    CMat X(n, n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) X(i, j) = rng.complex_normal();
    return X * X.adjoint() + CMat::identity(n);
}

CMat diag_embed(const std::vector<double>& d) {
    CMat D(d.size(), d.size());
    for (std::size_t i = 0; i < d.size(); ++i) D(i, i) = d[i];
    return D;
}

// explicit inverse by Gauss-Jordan with partial pivoting
CMat gauss_jordan_inverse(CMat A) {
    const std::size_t n = A.rows();
    CMat I = CMat::identity(n);
    for (std::size_t c = 0; c < n; ++c) {
        std::size_t p = c;
        for (std::size_t r = c + 1; r < n; ++r)
            if (std::abs(A(r, c)) > std::abs(A(p, c))) p = r;
        for (std::size_t j = 0; j < n; ++j) {
            std::swap(A(c, j), A(p, j));
            std::swap(I(c, j), I(p, j));
        }
        const cplx piv = A(c, c);
        for (std::size_t j = 0; j < n; ++j) {
            A(c, j) /= piv;
            I(c, j) /= piv;
        }
        for (std::size_t r = 0; r < n; ++r) {
            if (r == c) continue;
            const cplx f = A(r, c);
            for (std::size_t j = 0; j < n; ++j) {
                A(r, j) -= f * A(c, j);
                I(r, j) -= f * I(c, j);
            }
        }
    }
    return I;
}

}  // namespace

TEST_CASE("eig of identity and diagonal") {
    const auto e = hermitian_eig(CMat::identity(3));
    for (double v : e.values) CHECK(v == doctest::Approx(1.0));

    CMat D(3, 3);
    D(0, 0) = 3;
    D(1, 1) = 1;
    D(2, 2) = 2;
    const auto d = hermitian_eig(D);
    CHECK(d.values[0] == doctest::Approx(1.0));
    CHECK(d.values[1] == doctest::Approx(2.0));
    CHECK(d.values[2] == doctest::Approx(3.0));
    // permutation eigenvectors
    CHECK(std::abs(d.vectors(1, 0)) == doctest::Approx(1.0));
    CHECK(std::abs(d.vectors(2, 1)) == doctest::Approx(1.0));
    CHECK(std::abs(d.vectors(0, 2)) == doctest::Approx(1.0));
}

TEST_CASE("eig residual, orthonormality and reconstruction for n = 1..16") {
    CounterRng rng({11, 0});
    for (std::size_t n = 1; n <= 16; ++n) {
        for (int rep = 0; rep < 3; ++rep) {
            const CMat A = random_hermitian(n, rng);
            const auto e = hermitian_eig(A);
            const double an = frobenius(A);
            for (std::size_t k = 0; k < n; ++k) {
                const CVec v = e.vectors.column(k);
                const CVec r = A * v - scaled(v, e.values[k]);
                CHECK(norm(r) <= 1e-10 * an);
                if (k > 0) CHECK(e.values[k] >= e.values[k - 1]);
            }
            CHECK(max_abs_diff(e.vectors.adjoint() * e.vectors, CMat::identity(n)) <= 1e-10);
            const CMat rec = e.vectors * diag_embed(e.values) * e.vectors.adjoint();
            CHECK(frobenius(rec - A) <= 1e-10 * std::max(1.0, an));
        }
    }
}

TEST_CASE("eig handles repeated eigenvalues") {
    // U diag(2,2,5,5) U^H with a random unitary U from an eigendecomposition
    CounterRng rng({12, 0});
    const auto U = hermitian_eig(random_hermitian(4, rng)).vectors;
    const CMat A = U * diag_embed({2, 2, 5, 5}) * U.adjoint();
    const auto e = hermitian_eig(A);
    CHECK(e.values[0] == doctest::Approx(2.0));
    CHECK(e.values[1] == doctest::Approx(2.0));
    CHECK(e.values[2] == doctest::Approx(5.0));
    CHECK(e.values[3] == doctest::Approx(5.0));
    CHECK(max_abs_diff(e.vectors.adjoint() * e.vectors, CMat::identity(4)) <= 1e-10);
}

TEST_CASE("eig rejects non-Hermitian input") {
    CMat A(2, 2);
    A(0, 1) = 1.0;
    CHECK_THROWS_AS(hermitian_eig(A), std::invalid_argument);
}

TEST_CASE("Hermitian PD solve") {
    const CVec b = {{2, 0}, {0, 0}};
    CHECK(solve_hermitian_psd(CMat::identity(2), b) == b);
    CMat A2 = CMat::identity(2);
    A2 *= 2.0;
    const CVec x = solve_hermitian_psd(A2, b);
    CHECK(std::abs(x[0] - cplx(1, 0)) < 1e-15);
    CHECK(std::abs(x[1]) < 1e-15);

    CounterRng rng({13, 0});
    for (int rep = 0; rep < 20; ++rep) {
        const CMat A = random_pd(6, rng);
        CVec rhs(6);
        for (auto& v : rhs) v = rng.complex_normal();
        const CVec s = solve_hermitian_psd(A, rhs);
        CHECK(norm(A * s - rhs) <= 1e-10 * norm(rhs));
        const CVec oracle = gauss_jordan_inverse(A) * rhs;
        double diff = 0.0;
        for (std::size_t i = 0; i < 6; ++i) diff = std::max(diff, std::abs(oracle[i] - s[i]));
        CHECK(diff <= 1e-9);
    }

    CMat singular(2, 2);
    singular(0, 0) = 1.0;
    CHECK_THROWS_AS(solve_hermitian_psd(singular, b), std::domain_error);
    CHECK_FALSE(is_positive_definite(singular));
    CHECK(is_positive_definite(CMat::identity(3)));
}

TEST_CASE("real Cholesky solve") {
    std::vector<double> A = {4, 2, 2, 3};
    std::vector<double> b = {2, 1};
    REQUIRE(cholesky_solve_real(A, b, 2));
    CHECK(b[0] == doctest::Approx(0.5));
    CHECK(b[1] == doctest::Approx(0.0));
    std::vector<double> N = {1, 2, 2, 1};
    std::vector<double> c = {1, 1};
    CHECK_FALSE(cholesky_solve_real(N, c, 2));
}

TEST_CASE("nulling projectors") {
    SystemConfig cfg;
    cfg.sigma2_RR = 1.0;
    for (int mr = 1; mr <= 4; ++mr)
        for (int mt = 1; mt <= 4; ++mt) {
            cfg.M_R = mr;
            cfg.M_T = mt;
            for (std::uint64_t s = 0; s < 5; ++s) {
                const auto ch = draw_channel(cfg, {21, s});
                const CMat B = projection_B(ch);
                const CMat D = projection_D(ch);
                CHECK(is_hermitian(B, 1e-12));
                CHECK(is_hermitian(D, 1e-12));
                CHECK(max_abs_diff(B * B, B) <= 1e-10);
                CHECK(max_abs_diff(D * D, D) <= 1e-10);
                CHECK(trace(B).real() == doctest::Approx(mt - 1).epsilon(1e-9));
                CHECK(trace(D).real() == doctest::Approx(mr - 1).epsilon(1e-9));
                const CVec u = ch.H_RR.adjoint() * ch.h_SR;  // H_RR^H h_SR
                CHECK(norm(B * u) <= 1e-10 * norm(u));
                const CVec v = ch.H_RR * conj(ch.h_RD);  // H_RR h_RD^H
                CHECK(norm(D * v) <= 1e-10 * norm(v));
                for (double lam : hermitian_eig(B).values) CHECK(std::min(std::abs(lam), std::abs(lam - 1.0)) <= 1e-9);

                CounterRng rng({22, s});
                for (int k = 0; k < 100; ++k) {
                    CVec x(mt);
                    for (auto& e : x) e = rng.complex_normal();
                    CHECK(std::abs(dot(u, B * x)) <= 1e-10 * norm(u) * norm(x));
                }
                const CVec Dh = D * ch.h_SR;
                CHECK(std::abs(dot(Dh, v)) <= 1e-10 * norm(v) * norm(ch.h_SR));
            }
        }
}

TEST_CASE("projectors collapse to identity without loop interference") {
    SystemConfig cfg;
    cfg.sigma2_RR = 0.0;
    const auto ch = draw_channel(cfg, {3, 3});
    CHECK(max_abs_diff(projection_B(ch), CMat::identity(3)) == 0.0);
    CHECK(max_abs_diff(projection_D(ch), CMat::identity(3)) == 0.0);
}
