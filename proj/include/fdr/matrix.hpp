#pragma once

#include <complex>
#include <cstddef>
#include <vector>

namespace fdr {

using cplx = std::complex<double>;
using CVec = std::vector<cplx>;

// Dense row-major complex matrix for small sizes.
class CMat {
public:
    CMat() = default;
    CMat(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), data_(rows * cols) {}

    static CMat identity(std::size_t n);

    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }

    cplx& operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
    const cplx& operator()(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }

    const std::vector<cplx>& data() const { return data_; }

    CMat adjoint() const;
    CVec column(std::size_t j) const;

    CMat& operator+=(const CMat& o);
    CMat& operator-=(const CMat& o);
    CMat& operator*=(cplx s);

private:
    std::size_t rows_ = 0, cols_ = 0;
    std::vector<cplx> data_;
};

CMat operator*(const CMat& a, const CMat& b);
CMat operator+(CMat a, const CMat& b);
CMat operator-(CMat a, const CMat& b);
CMat operator*(cplx s, CMat a);
CVec operator*(const CMat& a, const CVec& x);

// x^H y
cplx dot(const CVec& x, const CVec& y);
double norm2(const CVec& x);  // squared Euclidean norm
double norm(const CVec& x);
CVec conj(const CVec& x);
CVec scaled(const CVec& x, cplx s);
CVec normalized(const CVec& x);
CVec operator+(const CVec& a, const CVec& b);
CVec operator-(const CVec& a, const CVec& b);

// x y^H
CMat outer(const CVec& x, const CVec& y);
cplx trace(const CMat& a);
// Re tr(A B) for Hermitian A, B
double trace_product(const CMat& a, const CMat& b);
double frobenius(const CMat& a);
double max_abs_diff(const CMat& a, const CMat& b);
bool is_hermitian(const CMat& a, double tol);

}  // namespace fdr
