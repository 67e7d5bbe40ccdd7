#include "fdr/matrix.hpp"

#include <cmath>
#include <stdexcept>

namespace fdr {

CMat CMat::identity(std::size_t n) {
    CMat m(n, n);
    for (std::size_t i = 0; i < n; ++i) m(i, i) = 1.0;
    return m;
}

CMat CMat::adjoint() const {
    CMat r(cols_, rows_);
    for (std::size_t i = 0; i < rows_; ++i)
        for (std::size_t j = 0; j < cols_; ++j) r(j, i) = std::conj((*this)(i, j));
    return r;
}

CVec CMat::column(std::size_t j) const {
    CVec c(rows_);
    for (std::size_t i = 0; i < rows_; ++i) c[i] = (*this)(i, j);
    return c;
}

CMat& CMat::operator+=(const CMat& o) {
    if (rows_ != o.rows_ || cols_ != o.cols_) throw std::invalid_argument("CMat: dimension mismatch");
    for (std::size_t k = 0; k < data_.size(); ++k) data_[k] += o.data_[k];
    return *this;
}

CMat& CMat::operator-=(const CMat& o) {
    if (rows_ != o.rows_ || cols_ != o.cols_) throw std::invalid_argument("CMat: dimension mismatch");
    for (std::size_t k = 0; k < data_.size(); ++k) data_[k] -= o.data_[k];
    return *this;
}

CMat& CMat::operator*=(cplx s) {
    for (auto& v : data_) v *= s;
    return *this;
}

CMat operator*(const CMat& a, const CMat& b) {
    if (a.cols() != b.rows()) throw std::invalid_argument("CMat product: dimension mismatch");
    CMat r(a.rows(), b.cols());
    for (std::size_t i = 0; i < a.rows(); ++i)
        for (std::size_t k = 0; k < a.cols(); ++k) {
            const cplx aik = a(i, k);
            if (aik == cplx(0.0)) continue;
            for (std::size_t j = 0; j < b.cols(); ++j) r(i, j) += aik * b(k, j);
        }
    return r;
}

CMat operator+(CMat a, const CMat& b) { return a += b; }
CMat operator-(CMat a, const CMat& b) { return a -= b; }
CMat operator*(cplx s, CMat a) { return a *= s; }

CVec operator*(const CMat& a, const CVec& x) {
    if (a.cols() != x.size()) throw std::invalid_argument("CMat*CVec: dimension mismatch");
    CVec y(a.rows());
    for (std::size_t i = 0; i < a.rows(); ++i) {
        cplx s = 0.0;
        for (std::size_t j = 0; j < a.cols(); ++j) s += a(i, j) * x[j];
        y[i] = s;
    }
    return y;
}

cplx dot(const CVec& x, const CVec& y) {
    if (x.size() != y.size()) throw std::invalid_argument("dot: dimension mismatch");
    cplx s = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i) s += std::conj(x[i]) * y[i];
    return s;
}

double norm2(const CVec& x) {
    double s = 0.0;
    for (const auto& v : x) s += std::norm(v);
    return s;
}

double norm(const CVec& x) { return std::sqrt(norm2(x)); }

CVec conj(const CVec& x) {
    CVec r(x.size());
    for (std::size_t i = 0; i < x.size(); ++i) r[i] = std::conj(x[i]);
    return r;
}

CVec scaled(const CVec& x, cplx s) {
    CVec r(x);
    for (auto& v : r) v *= s;
    return r;
}

CVec normalized(const CVec& x) {
    const double n = norm(x);
    if (!(n > 0.0)) throw std::domain_error("normalized: zero vector");
    return scaled(x, 1.0 / n);
}

CVec operator+(const CVec& a, const CVec& b) {
    if (a.size() != b.size()) throw std::invalid_argument("CVec+: dimension mismatch");
    CVec r(a);
    for (std::size_t i = 0; i < r.size(); ++i) r[i] += b[i];
    return r;
}

CVec operator-(const CVec& a, const CVec& b) {
    if (a.size() != b.size()) throw std::invalid_argument("CVec-: dimension mismatch");
    CVec r(a);
    for (std::size_t i = 0; i < r.size(); ++i) r[i] -= b[i];
    return r;
}

CMat outer(const CVec& x, const CVec& y) {
    CMat r(x.size(), y.size());
    for (std::size_t i = 0; i < x.size(); ++i)
        for (std::size_t j = 0; j < y.size(); ++j) r(i, j) = x[i] * std::conj(y[j]);
    return r;
}

cplx trace(const CMat& a) {
    cplx s = 0.0;
    for (std::size_t i = 0; i < std::min(a.rows(), a.cols()); ++i) s += a(i, i);
    return s;
}

double trace_product(const CMat& a, const CMat& b) {
    if (a.cols() != b.rows() || a.rows() != b.cols()) throw std::invalid_argument("trace_product: dimension mismatch");
    double s = 0.0;
    for (std::size_t i = 0; i < a.rows(); ++i)
        for (std::size_t k = 0; k < a.cols(); ++k) s += (a(i, k) * b(k, i)).real();
    return s;
}

double frobenius(const CMat& a) {
    double s = 0.0;
    for (const auto& v : a.data()) s += std::norm(v);
    return std::sqrt(s);
}

double max_abs_diff(const CMat& a, const CMat& b) {
    if (a.rows() != b.rows() || a.cols() != b.cols()) throw std::invalid_argument("max_abs_diff: dimension mismatch");
    double m = 0.0;
    for (std::size_t k = 0; k < a.data().size(); ++k) m = std::max(m, std::abs(a.data()[k] - b.data()[k]));
    return m;
}

bool is_hermitian(const CMat& a, double tol) {
    if (a.rows() != a.cols()) return false;
    for (std::size_t i = 0; i < a.rows(); ++i)
        for (std::size_t j = i; j < a.cols(); ++j)
            if (std::abs(a(i, j) - std::conj(a(j, i))) > tol) return false;
    return true;
}

}  // namespace fdr
