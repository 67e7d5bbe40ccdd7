#pragma once

namespace fdr {

struct SpecFunResult {
    double value = 0.0;
    double est_abs_error = 0.0;
};

inline constexpr double kEulerGamma = 0.57721566490153286060651209008240243;

// Principal branch of W(x) e^{W(x)} = x, x >= -1/e.
double lambert_w0(double x);

// Regularized incomplete gamma functions P(a, x) and Q(a, x) = 1 - P(a, x).
double gamma_lower_reg(double a, double x);
double gamma_upper_reg(double a, double x);

// E_n(x) = int_1^inf e^{-xt} t^{-n} dt, n >= 1, x > 0.
double expint_en(int n, double x);
// Ein(x) = int_0^x (1 - e^{-t}) / t dt = E_1(x) + ln x + gamma_E.
double expint_ein(double x);

// Modified Bessel function of the second kind, integer order.
double bessel_k(int nu, double x);

double digamma(double x);

// CDF and survival of X = Z G with Z ~ Beta(1, M_R - 1), G ~ Gamma(M_R, 1).
SpecFunResult beta_gamma_product_cdf(double t, int M_R);
SpecFunResult beta_gamma_product_sf(double t, int M_R);
double cdf_beta_gamma_product(double t, int M_R);
double sf_beta_gamma_product(double t, int M_R);

}  // namespace fdr
