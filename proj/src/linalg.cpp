#include "fdr/linalg.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

namespace fdr {

namespace {

bool cholesky(CMat& L) {
    // overwrites the lower triangle with the factor
    const std::size_t n = L.rows();
    double scale = 0.0;
    for (std::size_t i = 0; i < n; ++i) scale = std::max(scale, std::abs(L(i, i).real()));
    const double floor = scale * 1e-15 * static_cast<double>(n);
    for (std::size_t j = 0; j < n; ++j) {
        double d = L(j, j).real();
        for (std::size_t k = 0; k < j; ++k) d -= std::norm(L(j, k));
        if (!(d > floor)) return false;
        const double ljj = std::sqrt(d);
        L(j, j) = ljj;
        for (std::size_t i = j + 1; i < n; ++i) {
            cplx s = L(i, j);
            for (std::size_t k = 0; k < j; ++k) s -= L(i, k) * std::conj(L(j, k));
            L(i, j) = s / ljj;
        }
    }
    return true;
}

CMat rank_one_deflation(const CVec& dir, std::size_t n) {
    CMat P = CMat::identity(n);
    const double nn = norm2(dir);
    if (nn < kDegenerateNorm2) return P;
    P -= (1.0 / nn) * outer(dir, dir);
    return P;
}

}  // namespace

EigResult hermitian_eig(const CMat& A) {
    const std::size_t n = A.rows();
    if (A.cols() != n) throw std::invalid_argument("hermitian_eig: matrix is not square");
    double amax = 0.0;
    for (const auto& v : A.data()) amax = std::max(amax, std::abs(v));
    if (!is_hermitian(A, 1e-12 * std::max(1.0, amax))) throw std::invalid_argument("hermitian_eig: matrix is not Hermitian");

    CMat a(n, n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) a(i, j) = 0.5 * (A(i, j) + std::conj(A(j, i)));
    CMat v = CMat::identity(n);

    const double skip = 1e-18 * frobenius(a);
    for (int sweep = 0; sweep < 60; ++sweep) {
        bool rotated = false;
        for (std::size_t p = 0; p + 1 < n; ++p) {
            for (std::size_t q = p + 1; q < n; ++q) {
                const double mag = std::abs(a(p, q));
                if (mag <= skip) continue;
                rotated = true;
                const cplx ph = a(p, q) / mag;  // e^{i phi}
                const double app = a(p, p).real(), aqq = a(q, q).real();
                const double theta = (aqq - app) / (2.0 * mag);
                const double t = (theta >= 0.0 ? 1.0 : -1.0) / (std::abs(theta) + std::sqrt(theta * theta + 1.0));
                const double c = 1.0 / std::sqrt(t * t + 1.0);
                const double s = t * c;
                const cplx jpp = c, jpq = s, jqp = -s * std::conj(ph), jqq = c * std::conj(ph);
                for (std::size_t k = 0; k < n; ++k) {
                    const cplx akp = a(k, p), akq = a(k, q);
                    a(k, p) = akp * jpp + akq * jqp;
                    a(k, q) = akp * jpq + akq * jqq;
                }
                for (std::size_t k = 0; k < n; ++k) {
                    const cplx apk = a(p, k), aqk = a(q, k);
                    a(p, k) = std::conj(jpp) * apk + std::conj(jqp) * aqk;
                    a(q, k) = std::conj(jpq) * apk + std::conj(jqq) * aqk;
                }
                a(p, q) = a(q, p) = 0.0;
                a(p, p) = a(p, p).real();
                a(q, q) = a(q, q).real();
                for (std::size_t k = 0; k < n; ++k) {
                    const cplx vkp = v(k, p), vkq = v(k, q);
                    v(k, p) = vkp * jpp + vkq * jqp;
                    v(k, q) = vkp * jpq + vkq * jqq;
                }
            }
        }
        if (!rotated) break;
    }

    std::vector<std::size_t> order(n);
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(), [&](std::size_t i, std::size_t j) { return a(i, i).real() < a(j, j).real(); });
    EigResult r{std::vector<double>(n), CMat(n, n)};
    for (std::size_t k = 0; k < n; ++k) {
        r.values[k] = a(order[k], order[k]).real();
        for (std::size_t i = 0; i < n; ++i) r.vectors(i, k) = v(i, order[k]);
    }
    return r;
}

bool is_positive_definite(const CMat& A) {
    CMat L = A;
    return A.rows() == A.cols() && cholesky(L);
}

CVec solve_hermitian_psd(const CMat& A, const CVec& b) {
    const std::size_t n = A.rows();
    if (A.cols() != n || b.size() != n) throw std::invalid_argument("solve_hermitian_psd: dimension mismatch");
    CMat L = A;
    if (!cholesky(L)) throw std::domain_error("solve_hermitian_psd: matrix is singular or not positive definite");
    CVec y(n);
    for (std::size_t i = 0; i < n; ++i) {
        cplx s = b[i];
        for (std::size_t k = 0; k < i; ++k) s -= L(i, k) * y[k];
        y[i] = s / L(i, i).real();
    }
    CVec x(n);
    for (std::size_t i = n; i-- > 0;) {
        cplx s = y[i];
        for (std::size_t k = i + 1; k < n; ++k) s -= std::conj(L(k, i)) * x[k];
        x[i] = s / L(i, i).real();
    }
    return x;
}

bool cholesky_solve_real(std::vector<double>& A, std::vector<double>& b, std::size_t n) {
    for (std::size_t j = 0; j < n; ++j) {
        double d = A[j * n + j];
        for (std::size_t k = 0; k < j; ++k) d -= A[j * n + k] * A[j * n + k];
        if (!(d > 0.0)) return false;
        const double ljj = std::sqrt(d);
        A[j * n + j] = ljj;
        for (std::size_t i = j + 1; i < n; ++i) {
            double s = A[i * n + j];
            for (std::size_t k = 0; k < j; ++k) s -= A[i * n + k] * A[j * n + k];
            A[i * n + j] = s / ljj;
        }
    }
    for (std::size_t i = 0; i < n; ++i) {
        double s = b[i];
        for (std::size_t k = 0; k < i; ++k) s -= A[i * n + k] * b[k];
        b[i] = s / A[i * n + i];
    }
    for (std::size_t i = n; i-- > 0;) {
        double s = b[i];
        for (std::size_t k = i + 1; k < n; ++k) s -= A[k * n + i] * b[k];
        b[i] = s / A[i * n + i];
    }
    return true;
}

CMat projection_B(const ChannelRealization& ch) {
    return rank_one_deflation(ch.H_RR.adjoint() * ch.h_SR, ch.H_RR.cols());
}

CMat projection_D(const ChannelRealization& ch) {
    return rank_one_deflation(ch.H_RR * conj(ch.h_RD), ch.H_RR.rows());
}

}  // namespace fdr
