// Independent reference computations shared by the unit and acceptance tests.
#pragma once

#include <algorithm>
#include <cmath>
#include <vector>

#include "fdr/beamforming.hpp"
#include "fdr/model.hpp"

namespace oracle {

using fdr::CMat;
using fdr::cplx;
using fdr::CVec;
using fdr::operator+;
using fdr::operator-;
using fdr::operator*;

inline CVec random_unit(std::size_t n, fdr::CounterRng& rng) {
    CVec x(n);
    for (auto& v : x) v = rng.complex_normal();
    return fdr::normalized(x);
}

// max over unit w of min(f1(w), f2(w)), with
//   f1 = g1 (||h||^2 - q |u^H w|^2 / (1 + q w^H G w)),  u = H^H h,  G = H^H H
//   f2 = g2 |c^H w|^2,  c = conj(h_RD)
// by Riemannian gradient ascent on the sphere from random starts. Near the crossing of the two
// hop values the ascent direction is the minimum-norm point of the hull of both gradients.
class MaxMinAscent {
public:
    MaxMinAscent(const fdr::ChannelRealization& ch, const fdr::LinkGains& g) : g_(g) {
        const std::size_t n = ch.h_RD.size();
        u_ = ch.H_RR.adjoint() * ch.h_SR;
        G_ = ch.H_RR.adjoint() * ch.H_RR;
        c_ = fdr::conj(ch.h_RD);
        hn_ = fdr::norm2(ch.h_SR);
        n_ = n;
    }

    double f1(const CVec& w) const {
        const double s2 = std::norm(fdr::dot(u_, w));
        const double r = fdr::dot(w, G_ * w).real();
        return g_.g1 * (hn_ - g_.q * s2 / (1.0 + g_.q * r));
    }
    double f2(const CVec& w) const { return g_.g2 * std::norm(fdr::dot(c_, w)); }
    double value(const CVec& w) const { return std::min(f1(w), f2(w)); }

    // Euclidean gradients with respect to conj(w), projected to the sphere's tangent space.
    CVec grad1(const CVec& w) const {
        const cplx s = fdr::dot(u_, w);
        const CVec Gw = G_ * w;
        const double r = fdr::dot(w, Gw).real();
        const double den = 1.0 + g_.q * r;
        CVec d(n_);
        for (std::size_t i = 0; i < n_; ++i)
            d[i] = -g_.g1 * g_.q * (u_[i] * s * den - std::norm(s) * g_.q * Gw[i]) / (den * den);
        return tangent(w, d);
    }
    CVec grad2(const CVec& w) const {
        const cplx s = fdr::dot(c_, w);
        CVec d(n_);
        for (std::size_t i = 0; i < n_; ++i) d[i] = g_.g2 * c_[i] * s;
        return tangent(w, d);
    }

    double ascend(CVec w, int iters = 400) const {
        double v = value(w);
        double step = 1.0 / std::max(1e-300, std::max(g_.g1 * hn_, g_.g2 * fdr::norm2(c_)));
        for (int it = 0; it < iters && step > 1e-18; ++it) {
            const double a = f1(w), b = f2(w);
            CVec d;
            if (std::abs(a - b) <= 1e-3 * std::max(a, b)) {
                d = min_norm(grad1(w), grad2(w));
            } else {
                d = a < b ? grad1(w) : grad2(w);
            }
            if (fdr::norm(d) == 0.0) break;
            bool moved = false;
            while (step > 1e-18) {
                CVec cand = fdr::normalized(w + fdr::scaled(d, cplx(step, 0)));
                const double vc = value(cand);
                if (vc > v) {
                    w = cand;
                    v = vc;
                    step *= 2.0;
                    moved = true;
                    break;
                }
                step *= 0.5;
            }
            if (!moved) break;
        }
        return v;
    }

    double best(int restarts, fdr::CounterRng& rng, const std::vector<CVec>& seeds = {}) const {
        double v = 0.0;
        for (const auto& s : seeds) v = std::max(v, ascend(fdr::normalized(s)));
        for (int r = 0; r < restarts; ++r) v = std::max(v, ascend(random_unit(n_, rng)));
        return v;
    }

private:
    CVec tangent(const CVec& w, CVec d) const {
        const cplx p = fdr::dot(w, d);
        for (std::size_t i = 0; i < n_; ++i) d[i] -= p * w[i];
        return d;
    }
    static CVec min_norm(const CVec& a, const CVec& b) {
        // argmin over t in [0,1] of ||t a + (1-t) b||
        const CVec diff = a - b;
        const double dd = fdr::norm2(diff);
        double t = dd > 0.0 ? -fdr::dot(diff, b).real() / dd : 0.5;
        t = std::clamp(t, 0.0, 1.0);
        CVec out(a.size());
        for (std::size_t i = 0; i < a.size(); ++i) out[i] = t * a[i] + (1.0 - t) * b[i];
        return out;
    }

    fdr::LinkGains g_;
    CVec u_, c_;
    CMat G_;
    double hn_ = 0.0;
    std::size_t n_ = 0;
};

}  // namespace oracle
