#include "fdr/sdr.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>

#include "fdr/linalg.hpp"

namespace fdr {

namespace {

struct Entry {
    std::size_t r, c;
    cplx v;
};
using BasisElem = std::vector<Entry>;

// Traceless Hermitian basis; W = W0 + sum_k x_k E_k keeps tr W fixed.
std::vector<BasisElem> traceless_basis(std::size_t n) {
    std::vector<BasisElem> b;
    const double h = std::sqrt(0.5);
    for (std::size_t j = 0; j < n; ++j)
        for (std::size_t k = j + 1; k < n; ++k) {
            b.push_back({{j, k, h}, {k, j, h}});
            b.push_back({{j, k, cplx(0.0, h)}, {k, j, cplx(0.0, -h)}});
        }
    for (std::size_t j = 0; j + 1 < n; ++j) b.push_back({{j, j, 1.0}, {n - 1, n - 1, -1.0}});
    return b;
}

// Full Hermitian basis (n^2 elements) for the rank-reduction step.
std::vector<BasisElem> hermitian_basis(std::size_t n) {
    std::vector<BasisElem> b;
    const double h = std::sqrt(0.5);
    for (std::size_t j = 0; j < n; ++j) b.push_back({{j, j, 1.0}});
    for (std::size_t j = 0; j < n; ++j)
        for (std::size_t k = j + 1; k < n; ++k) {
            b.push_back({{j, k, h}, {k, j, h}});
            b.push_back({{j, k, cplx(0.0, h)}, {k, j, cplx(0.0, -h)}});
        }
    return b;
}

// Re tr(M E) for Hermitian M
double trace_with(const CMat& M, const BasisElem& e) {
    double s = 0.0;
    for (const auto& en : e) s += (M(en.c, en.r) * en.v).real();
    return s;
}

void add_scaled(CMat& W, const BasisElem& e, double x) {
    for (const auto& en : e) W(en.r, en.c) += x * en.v;
}

// Cholesky-based log det and inverse; false when W is not positive definite.
bool factor_pd(const CMat& W, double& logdet, CMat* inverse) {
    const std::size_t n = W.rows();
    CMat L(n, n);
    logdet = 0.0;
    for (std::size_t j = 0; j < n; ++j) {
        double d = W(j, j).real();
        for (std::size_t k = 0; k < j; ++k) d -= std::norm(L(j, k));
        if (!(d > 0.0)) return false;
        const double ljj = std::sqrt(d);
        L(j, j) = ljj;
        logdet += 2.0 * std::log(ljj);
        for (std::size_t i = j + 1; i < n; ++i) {
            cplx s = W(i, j);
            for (std::size_t k = 0; k < j; ++k) s -= L(i, k) * std::conj(L(j, k));
            L(i, j) = s / ljj;
        }
    }
    if (inverse) {
        // solve L L^H X = I column by column
        CMat X(n, n);
        for (std::size_t col = 0; col < n; ++col) {
            CVec y(n);
            for (std::size_t i = 0; i < n; ++i) {
                cplx s = (i == col) ? 1.0 : 0.0;
                for (std::size_t k = 0; k < i; ++k) s -= L(i, k) * y[k];
                y[i] = s / L(i, i).real();
            }
            for (std::size_t i = n; i-- > 0;) {
                cplx s = y[i];
                for (std::size_t k = i + 1; k < n; ++k) s -= std::conj(L(k, i)) * X(k, col);
                X(i, col) = s / L(i, i).real();
            }
        }
        *inverse = X;
    }
    return true;
}

enum class Mode { Decide, Full };

constexpr double kGapTol = 1e-9;     // duality gap bound (n + 2) / tau at exit
constexpr double kStallTau = 1e8;    // a stalled centering this far along the path is accepted

struct BarrierResult {
    CMat W;
    double slack = 0.0;  // min_i tr(N_i W) at the returned point, lower bound on the optimum
    double gap = 0.0;    // optimum <= slack + gap
    bool feasible = false;
};

// max s s.t. tr(N_i W) >= s, tr W = 1, W > 0, via a log-barrier path-following method.
BarrierResult max_min_slack(const std::array<CMat, 2>& N, Mode mode) {
    const std::size_t n = N[0].rows();
    const auto basis = traceless_basis(n);
    const std::size_t nx = basis.size(), m = nx + 1;
    const double theta = static_cast<double>(n) + 2.0;

    std::vector<std::vector<double>> a(2, std::vector<double>(nx));
    for (int i = 0; i < 2; ++i)
        for (std::size_t k = 0; k < nx; ++k) a[i][k] = trace_with(N[i], basis[k]);

    CMat W = CMat::identity(n);
    W *= 1.0 / static_cast<double>(n);
    auto slack_of = [&](const CMat& X, int i) { return trace_product(N[i], X); };
    double s = std::min(slack_of(W, 0), slack_of(W, 1)) - 1.0;
    double tau = 1.0;

    auto phi = [&](const CMat& X, double sv, bool& ok) {
        const double g0 = slack_of(X, 0) - sv, g1 = slack_of(X, 1) - sv;
        double ld = 0.0;
        ok = g0 > 0.0 && g1 > 0.0 && factor_pd(X, ld, nullptr);
        if (!ok) return std::numeric_limits<double>::infinity();
        return -tau * sv - std::log(g0) - std::log(g1) - ld;
    };

    auto current_min = [&]() { return std::min(slack_of(W, 0), slack_of(W, 1)); };

    std::vector<double> H(m * m), grad(m), dir(m);
    CMat V;
    for (int outer = 0; outer < 40; ++outer) {
        bool centered = false;
        for (int it = 0; it < 100; ++it) {
            double ld = 0.0;
            if (!factor_pd(W, ld, &V)) throw SolverError("barrier iterate left the positive definite cone");
            const double g[2] = {slack_of(W, 0) - s, slack_of(W, 1) - s};
            std::vector<double> b(nx);
            for (std::size_t k = 0; k < nx; ++k) b[k] = trace_with(V, basis[k]);
            for (std::size_t k = 0; k < nx; ++k) grad[k] = -a[0][k] / g[0] - a[1][k] / g[1] - b[k];
            grad[nx] = -tau + 1.0 / g[0] + 1.0 / g[1];
            for (std::size_t k = 0; k < nx; ++k) {
                for (std::size_t l = k; l < nx; ++l) {
                    double tr = 0.0;
                    for (const auto& e1 : basis[k])
                        for (const auto& e2 : basis[l]) tr += (V(e2.c, e1.r) * e1.v * V(e1.c, e2.r) * e2.v).real();
                    const double v = tr + a[0][k] * a[0][l] / (g[0] * g[0]) + a[1][k] * a[1][l] / (g[1] * g[1]);
                    H[k * m + l] = H[l * m + k] = v;
                }
                const double xs = -a[0][k] / (g[0] * g[0]) - a[1][k] / (g[1] * g[1]);
                H[k * m + nx] = H[nx * m + k] = xs;
            }
            H[nx * m + nx] = 1.0 / (g[0] * g[0]) + 1.0 / (g[1] * g[1]);
            // near-singular iterates can lose definiteness to rounding; damp the diagonal until it factors
            bool solved = false;
            for (double damp = 0.0; !solved && damp < 1e-2; damp = damp == 0.0 ? 1e-14 : damp * 100.0) {
                std::vector<double> Hd = H;
                for (std::size_t k = 0; k < m; ++k) Hd[k * m + k] *= 1.0 + damp;
                for (std::size_t k = 0; k < m; ++k) dir[k] = -grad[k];
                solved = cholesky_solve_real(Hd, dir, m);
            }
            if (!solved) throw SolverError("barrier Newton system is not positive definite");
            double dec = 0.0;
            for (std::size_t k = 0; k < m; ++k) dec -= grad[k] * dir[k];
            if (dec < 1e-10) {
                centered = true;
                break;
            }
            bool ok = false;
            const double f0 = phi(W, s, ok);
            double step = 1.0;
            bool moved = false;
            while (step > 1e-20) {
                CMat Wn = W;
                for (std::size_t k = 0; k < nx; ++k) add_scaled(Wn, basis[k], step * dir[k]);
                const double sn = s + step * dir[nx];
                const double f1 = phi(Wn, sn, ok);
                if (ok && f1 <= f0 - 0.25 * step * dec) {
                    W = std::move(Wn);
                    s = sn;
                    // progress below rounding of the barrier value counts as stationary
                    moved = f0 - f1 > 1e-15 * (1.0 + std::abs(f0));
                    break;
                }
                step *= 0.5;
            }
            if (mode == Mode::Decide && current_min() >= 0.0) return {W, current_min(), 0.0, true};
            if (!moved) {
                centered = true;  // numerically stationary
                break;
            }
        }
        const double gap = theta / tau;
        const double best = current_min();
        if (!centered) {
            // deep on the path the iterate is nearly rank deficient and Newton stalls; the
            // caller's dual check guards the result
            if (tau < kStallTau) throw SolverError("barrier centering did not converge");
            return {W, best, gap, best >= -kGapTol};
        }
        if (mode == Mode::Decide) {
            if (best >= 0.0) return {W, best, gap, true};
            if (best + gap < 0.0) return {W, best, gap, false};
        }
        if (gap < kGapTol) return {W, best, gap, best >= -kGapTol};
        tau *= 10.0;
    }
    throw SolverError("barrier method exceeded its iteration cap");
}

// min over theta of lambda_max(theta N1 + (1 - theta) N2); equals the optimal slack.
double dual_bound(const std::array<CMat, 2>& N, double& theta_out) {
    auto f = [&](double th) { return hermitian_eig(th * N[0] + (1.0 - th) * N[1]).values.back(); };
    const double gr = 0.5 * (std::sqrt(5.0) - 1.0);
    double lo = 0.0, hi = 1.0;
    double x1 = hi - gr * (hi - lo), x2 = lo + gr * (hi - lo);
    double f1v = f(x1), f2v = f(x2);
    while (hi - lo > 1e-13) {
        if (f1v <= f2v) {
            hi = x2;
            x2 = x1;
            f2v = f1v;
            x1 = hi - gr * (hi - lo);
            f1v = f(x1);
        } else {
            lo = x1;
            x1 = x2;
            f1v = f2v;
            x2 = lo + gr * (hi - lo);
            f2v = f(x2);
        }
    }
    double best = std::min(f1v, f2v), th = f1v <= f2v ? x1 : x2;
    for (double edge : {0.0, 1.0}) {
        const double fe = f(edge);
        if (fe < best) {
            best = fe;
            th = edge;
        }
    }
    theta_out = th;
    return best;
}

std::array<CMat, 2> constraint_matrices(const SdrProblem& prob, double t, bool normalize) {
    const std::size_t n = prob.dim();
    const auto& g = prob.gains;
    CMat R = g.q * prob.G;
    R += CMat::identity(n);
    CMat M1 = (g.g1 * prob.h_norm2 - t) * R - (g.g1 * g.q) * prob.A;
    CMat M2 = g.g2 * prob.C - t * CMat::identity(n);
    std::array<CMat, 2> N{M1, M2};
    if (normalize)
        for (auto& X : N) {
            const double f = frobenius(X);
            if (f > 0.0) X *= 1.0 / f;
        }
    return N;
}

CMat rank_one_matrix(const CVec& w) { return outer(w, w); }

double objective_of(const CVec& w, const ChannelRealization& ch, const LinkGains& g) {
    return std::min(f1(w, ch, g), f2(w, ch, g));
}

// Rank reduction keeping tr W and both hop constraint values at level t fixed.
CMat reduce_rank(CMat W, const SdrProblem& prob, double t) {
    const auto M = constraint_matrices(prob, t, true);
    for (std::size_t guard = 0; guard < prob.dim() + 2; ++guard) {
        const auto e = hermitian_eig(W);
        const std::size_t n = W.rows();
        const double top = e.values.back();
        std::vector<std::size_t> keep;
        for (std::size_t k = 0; k < n; ++k)
            if (e.values[k] > 1e-9 * top) keep.push_back(k);
        const std::size_t r = keep.size();
        if (r <= 1) break;
        CMat V(n, r);  // W = V V^H
        for (std::size_t j = 0; j < r; ++j)
            for (std::size_t i = 0; i < n; ++i) V(i, j) = e.vectors(i, keep[j]) * std::sqrt(e.values[keep[j]]);
        const CMat Vh = V.adjoint();
        const std::array<CMat, 3> K{Vh * M[0] * V, Vh * M[1] * V, Vh * V};
        const auto basis = hermitian_basis(r);
        const std::size_t d = basis.size();
        // null vector of the 3 x d functional matrix via its Gram matrix
        CMat gram(d, d);
        for (std::size_t i = 0; i < d; ++i)
            for (std::size_t j = 0; j < d; ++j) {
                double s = 0.0;
                for (const auto& k : K) s += trace_with(k, basis[i]) * trace_with(k, basis[j]);
                gram(i, j) = s;
            }
        const auto eg = hermitian_eig(gram);
        CMat Delta(r, r);
        for (std::size_t i = 0; i < d; ++i) add_scaled(Delta, basis[i], eg.vectors(i, 0).real());
        const auto ed = hermitian_eig(Delta);
        double lead = ed.values.back();
        if (std::abs(ed.values.front()) > std::abs(lead)) {
            Delta *= -1.0;
            lead = -ed.values.front();
        }
        if (!(lead > 0.0)) break;
        CMat S = CMat::identity(r) - (1.0 / lead) * Delta;
        W = V * S * Vh;
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = i; j < n; ++j) {
                const cplx avg = 0.5 * (W(i, j) + std::conj(W(j, i)));
                W(i, j) = avg;
                W(j, i) = std::conj(avg);
            }
    }
    return W;
}

CVec principal_vector(const CMat& W) {
    const auto e = hermitian_eig(W);
    return normalize_phase(e.vectors.column(W.rows() - 1));
}

}  // namespace

SdrProblem make_sdr_problem(const ChannelRealization& ch, const LinkGains& g) {
    SdrProblem p;
    const CVec u = ch.H_RR.adjoint() * ch.h_SR;
    p.A = outer(u, u);
    p.G = ch.H_RR.adjoint() * ch.H_RR;
    const CVec hd = conj(ch.h_RD);
    p.C = outer(hd, hd);
    p.gains = g;
    p.h_norm2 = norm2(ch.h_SR);
    return p;
}

SdrProblem make_sdr_problem(const ChannelRealization& ch, const SystemConfig& cfg, double alpha) {
    check_dimensions(cfg, ch);
    return make_sdr_problem(ch, link_gains(ch, cfg, alpha));
}

double t_upper_bound(const SdrProblem& prob) {
    return std::min(prob.gains.g1 * prob.h_norm2, prob.gains.g2 * trace(prob.C).real());
}

double lifted_first_hop(const CMat& W, const SdrProblem& prob) {
    const auto& g = prob.gains;
    const double denom = trace(W).real() + g.q * trace_product(prob.G, W);
    return g.g1 * std::max(0.0, prob.h_norm2 - g.q * trace_product(prob.A, W) / denom);
}

double lifted_second_hop(const CMat& W, const SdrProblem& prob) { return prob.gains.g2 * trace_product(prob.C, W); }

double lifted_objective(const CMat& W, const SdrProblem& prob) {
    return std::min(lifted_first_hop(W, prob), lifted_second_hop(W, prob));
}

bool is_feasible(const SdrProblem& prob, double t) {
    if (t <= 0.0) return true;
    if (t > t_upper_bound(prob)) return false;
    return max_min_slack(constraint_matrices(prob, t, true), Mode::Decide).feasible;
}

std::optional<SdrSolution> solve_feasibility(const SdrProblem& prob, double t) {
    const auto N = constraint_matrices(prob, t, true);
    const auto r = max_min_slack(N, Mode::Full);
    double theta = 0.0;
    const double dual = dual_bound(N, theta);
    if (dual - r.slack > 1e-6) throw SolverError("barrier solution disagrees with its dual certificate");
    if (r.slack < -1e-8) return std::nullopt;
    SdrSolution sol;
    sol.W_t = r.W;
    sol.t_star = t;
    sol.dual_multipliers = {theta, 1.0 - theta};
    sol.recovered_w_t = rank_one_recover(r.W, prob, sol.rank_flag);
    sol.branch = OptimumCase::Relaxation;
    return sol;
}

CVec rank_one_recover(const CMat& W, const SdrProblem& prob, RankFlag& flag) {
    const auto e = hermitian_eig(W);
    const std::size_t n = W.rows();
    const double top = e.values.back();
    flag = RankFlag::RankOne;
    if (n == 1) return {cplx(1.0)};
    if (e.values[n - 2] <= 1e-6 * top) return normalize_phase(e.vectors.column(n - 1));
    flag = RankFlag::RecoveredFromHigherRank;
    // eigenvector with the strongest second-hop gain
    double best = -1.0;
    CVec pick;
    for (std::size_t k = 0; k < n; ++k) {
        if (e.values[k] <= 1e-9 * top) continue;
        const CVec u = e.vectors.column(k);
        const double v = trace_product(prob.C, rank_one_matrix(u));
        if (v > best) {
            best = v;
            pick = u;
        }
    }
    const double target = lifted_objective(W, prob);
    if (lifted_objective(rank_one_matrix(pick), prob) >= target * (1.0 - 1e-6)) return normalize_phase(pick);
    // otherwise reduce the rank while holding both hop constraints at the implied level
    return principal_vector(reduce_rank(cplx(1.0 / trace(W).real()) * W, prob, target));
}

CVec rank_one_recover(const CMat& W, const SdrProblem& prob) {
    RankFlag flag;
    return rank_one_recover(W, prob, flag);
}

SdrSolution optimum_transmit(const ChannelRealization& ch, const LinkGains& g) {
    const std::size_t n = ch.h_RD.size();
    SdrSolution sol;
    if (n == 1) {
        sol.recovered_w_t = {cplx(1.0)};
        sol.W_t = CMat::identity(1);
        sol.objective = sol.t_star = objective_of(sol.recovered_w_t, ch, g);
        sol.branch = OptimumCase::SingleAntenna;
        return sol;
    }
    const CVec wmin = w_min_sinr(ch, g);
    const CVec wmrt = mrt_vector(ch);
    const double a1 = f1(wmin, ch, g), a2 = f2(wmin, ch, g);
    const double b1 = f1(wmrt, ch, g), b2 = f2(wmrt, ch, g);
    const bool case_i = a1 <= a2, case_ii = b2 <= b1;
    if (case_i || case_ii) {
        const double va = std::min(a1, a2), vb = std::min(b1, b2);
        const bool take_min = case_i && (!case_ii || va >= vb);
        sol.recovered_w_t = take_min ? wmin : wmrt;
        sol.branch = take_min ? OptimumCase::MinSinrDirection : OptimumCase::Mrt;
        sol.W_t = rank_one_matrix(sol.recovered_w_t);
        sol.objective = sol.t_star = take_min ? va : vb;
        return sol;
    }
    const SdrProblem prob = make_sdr_problem(ch, g);
    double hi = t_upper_bound(prob);
    double lo = std::min(std::max(std::min(a1, a2), std::min(b1, b2)), hi);
    int steps = 0;
    while (steps < 60 && hi - lo > 1e-10 * hi) {
        const double mid = 0.5 * (lo + hi);
        if (is_feasible(prob, mid)) lo = mid;
        else hi = mid;
        ++steps;
    }
    auto full = solve_feasibility(prob, lo);
    if (!full) throw SolverError("bisection lower end is not feasible");
    sol = std::move(*full);
    sol.t_star = lo;
    sol.bisection_steps = steps;
    sol.objective = objective_of(sol.recovered_w_t, ch, g);
    return sol;
}

SdrSolution optimum_transmit(const ChannelRealization& ch, const SystemConfig& cfg, double alpha) {
    check_dimensions(cfg, ch);
    return optimum_transmit(ch, link_gains(ch, cfg, alpha));
}

bool optimum_reaches(const ChannelRealization& ch, const LinkGains& g, double t) {
    if (t <= 0.0) return true;
    if (ch.h_RD.size() == 1) return objective_of({cplx(1.0)}, ch, g) >= t;
    const CVec wmin = w_min_sinr(ch, g);
    const CVec wmrt = mrt_vector(ch);
    const double a1 = f1(wmin, ch, g), a2 = f2(wmin, ch, g);
    const double b1 = f1(wmrt, ch, g), b2 = f2(wmrt, ch, g);
    if (std::max(std::min(a1, a2), std::min(b1, b2)) >= t) return true;
    if (a1 <= a2 || b2 <= b1) return false;
    return is_feasible(make_sdr_problem(ch, g), t);
}

BeamformerPair optimum_pair(const ChannelRealization& ch, const LinkGains& g) {
    const auto sol = optimum_transmit(ch, g);
    CVec wt = sol.recovered_w_t;
    if (sol.branch == OptimumCase::Relaxation) {
        // keep the better of the recovered vector and the closed-form candidates
        for (const CVec& c : {w_min_sinr(ch, g), mrt_vector(ch)})
            if (objective_of(c, ch, g) > objective_of(wt, ch, g)) wt = c;
    }
    BeamformerPair p;
    p.scheme = Scheme::Optimum;
    p.w_t = wt;
    p.w_r = optimum_receive(wt, ch, g);
    p.degenerate = norm2(ch.h_SR) == 0.0 || norm2(ch.h_RD) == 0.0;
    return p;
}

BeamformerPair optimum_pair(const ChannelRealization& ch, const SystemConfig& cfg, double alpha) {
    check_dimensions(cfg, ch);
    return optimum_pair(ch, link_gains(ch, cfg, alpha));
}

}  // namespace fdr
