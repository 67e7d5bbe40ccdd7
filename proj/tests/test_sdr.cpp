#include "doctest.h"

#include <cmath>

#include "fdr/config.hpp"
#include "fdr/linalg.hpp"
#include "fdr/sdr.hpp"
#include "oracles.hpp"

using namespace fdr;

namespace {

// Draws whose parameters spread over all three branches of the optimum search.
struct Instance {
    ChannelRealization ch;
    LinkGains g;
};

Instance varied_instance(std::uint64_t i) {
    CounterRng pr({501, i});
    SystemConfig cfg;
    cfg.sigma2_RR = std::pow(10.0, -4.0 * pr.uniform());
    cfg.d2 = 1.0 + 4.0 * pr.uniform();
    cfg.sigma2_D = cfg.sigma2_R * std::pow(10.0, -3.0 * pr.uniform());
    cfg.P_S = dbm_to_watts(-10.0 + 40.0 * pr.uniform());
    const double alpha = 0.05 + 0.9 * pr.uniform();
    const auto ch = draw_channel(cfg, {502, i});
    return {ch, link_gains(ch, cfg, alpha)};
}

// First relaxation-branch instance at or after index i.
Instance relaxation_instance(std::uint64_t& i) {
    for (;; ++i) {
        auto inst = varied_instance(i);
        if (optimum_transmit(inst.ch, inst.g).branch == OptimumCase::Relaxation) return inst;
    }
}

double min_hops(const CVec& w, const Instance& in) { return std::min(f1(w, in.ch, in.g), f2(w, in.ch, in.g)); }

}  // namespace

TEST_CASE("upper bound on the max-min level") {
    SystemConfig cfg;
    cfg.sigma2_RR = 0.1;
    auto ch = draw_channel(cfg, {1, 0});
    const auto prob = make_sdr_problem(ch, cfg, 0.5);
    CounterRng rng({2, 0});
    const double ub = t_upper_bound(prob);
    for (int k = 0; k < 10000; ++k) {
        const CVec w = oracle::random_unit(3, rng);
        CHECK(std::min(f1(w, ch, cfg, 0.5), f2(w, ch, cfg, 0.5)) <= ub * (1 + 1e-12));
    }
    CHECK(t_upper_bound(make_sdr_problem(ch, cfg, 0.0)) == 0.0);
    ch.h_RD = CVec(3);
    CHECK(t_upper_bound(make_sdr_problem(ch, cfg, 0.5)) == 0.0);
}

TEST_CASE("feasibility at the ends of the range") {
    std::uint64_t i = 0;
    const auto in = relaxation_instance(i);
    const auto prob = make_sdr_problem(in.ch, in.g);
    const double ub = t_upper_bound(prob);
    auto zero = solve_feasibility(prob, 0.0);
    REQUIRE(zero.has_value());
    CHECK(trace(zero->W_t).real() == doctest::Approx(1.0).epsilon(1e-8));
    CHECK_FALSE(solve_feasibility(prob, ub * (1.0 + 1e-3)).has_value());
    CHECK_FALSE(is_feasible(prob, ub * (1.0 + 1e-6)));
    CHECK(is_feasible(prob, 0.0));
}

TEST_CASE("feasible points satisfy the lifted constraints") {
    std::uint64_t i = 0;
    for (int rep = 0; rep < 10; ++rep, ++i) {
        const auto in = relaxation_instance(i);
        const auto prob = make_sdr_problem(in.ch, in.g);
        CounterRng rng({503, i});
        const double t_or = oracle::MaxMinAscent(in.ch, in.g).best(200, rng);
        const auto sol = solve_feasibility(prob, 0.5 * t_or);
        REQUIRE(sol.has_value());
        const auto& W = sol->W_t;
        CHECK(is_hermitian(W, 1e-12));
        CHECK(trace(W).real() == doctest::Approx(1.0).epsilon(1e-8));
        CHECK(hermitian_eig(W).values.front() >= -1e-9);
        CHECK(lifted_first_hop(W, prob) >= 0.5 * t_or * (1 - 1e-8));
        CHECK(lifted_second_hop(W, prob) >= 0.5 * t_or * (1 - 1e-8));
        CHECK(std::abs(norm(sol->recovered_w_t) - 1.0) <= 1e-12);
        REQUIRE(sol->dual_multipliers.size() == 2);
        CHECK(sol->dual_multipliers[0] >= 0.0);
        CHECK(sol->dual_multipliers[1] >= 0.0);
    }
}

TEST_CASE("feasibility is monotone in the level") {
    std::uint64_t i = 100;
    for (int rep = 0; rep < 5; ++rep, ++i) {
        const auto in = relaxation_instance(i);
        const auto prob = make_sdr_problem(in.ch, in.g);
        const double ub = t_upper_bound(prob);
        bool seen_infeasible = false;
        for (int k = 0; k <= 40; ++k) {
            const bool f = is_feasible(prob, ub * k / 40.0);
            if (seen_infeasible) CHECK_FALSE(f);
            if (!f) seen_infeasible = true;
        }
        CHECK(seen_infeasible);
    }
}

TEST_CASE("optimum transmit beamformer against the ascent oracle") {
    int counts[4] = {0, 0, 0, 0};
    for (std::uint64_t i = 0; i < 120; ++i) {
        const auto in = varied_instance(i);
        const auto sol = optimum_transmit(in.ch, in.g);
        ++counts[static_cast<int>(sol.branch)];
        CHECK(std::abs(norm(sol.recovered_w_t) - 1.0) <= 1e-12);
        CHECK(sol.objective == doctest::Approx(min_hops(sol.recovered_w_t, in)).epsilon(1e-12));
        CHECK(sol.objective >= sol.t_star * (1.0 - 1e-6));
        CounterRng rng({504, i});
        const double ref = oracle::MaxMinAscent(in.ch, in.g).best(200, rng);
        CHECK(sol.objective >= ref * (1.0 - 1e-4));
    }
    CHECK(counts[0] > 0);
    CHECK(counts[1] > 0);
    CHECK(counts[2] > 0);
}

TEST_CASE("closed-form branches agree with an unconditional bisection") {
    int checked = 0;
    for (std::uint64_t i = 0; checked < 20 && i < 400; ++i) {
        const auto in = varied_instance(i);
        const auto sol = optimum_transmit(in.ch, in.g);
        if (sol.branch == OptimumCase::Relaxation) continue;
        const auto prob = make_sdr_problem(in.ch, in.g);
        double lo = 0.0, hi = t_upper_bound(prob);
        for (int k = 0; k < 60 && hi - lo > 1e-10 * hi; ++k) {
            const double mid = 0.5 * (lo + hi);
            (is_feasible(prob, mid) ? lo : hi) = mid;
        }
        CHECK(sol.objective == doctest::Approx(lo).epsilon(1e-6));
        ++checked;
    }
    CHECK(checked == 20);
}

TEST_CASE("no loop interference gives MRT") {
    SystemConfig cfg;
    cfg.sigma2_RR = 0.0;
    for (std::uint64_t s = 0; s < 10; ++s) {
        const auto ch = draw_channel(cfg, {505, s});
        const auto sol = optimum_transmit(ch, cfg, 0.5);
        CHECK(norm(sol.recovered_w_t - normalize_phase(mrt_vector(ch))) <= 1e-9);
    }
}

TEST_CASE("single transmit antenna") {
    SystemConfig cfg;
    cfg.M_T = 1;
    const auto ch = draw_channel(cfg, {506, 0});
    const auto sol = optimum_transmit(ch, cfg, 0.5);
    CHECK(sol.branch == OptimumCase::SingleAntenna);
    REQUIRE(sol.recovered_w_t.size() == 1);
    CHECK(sol.recovered_w_t[0] == cplx(1, 0));
}

TEST_CASE("rank-one recovery") {
    SystemConfig cfg;
    cfg.sigma2_RR = 0.1;
    const auto ch = draw_channel(cfg, {507, 0});
    const auto prob = make_sdr_problem(ch, cfg, 0.5);
    CounterRng rng({507, 1});
    const CVec v = normalize_phase(oracle::random_unit(3, rng));
    RankFlag flag;
    const CVec r = rank_one_recover(outer(v, v), prob, flag);
    CHECK(flag == RankFlag::RankOne);
    CHECK(norm(r - v) <= 1e-10);

    // W = I / n with h_RD = e_1
    auto ch2 = ch;
    ch2.h_RD = {1.0, 0.0, 0.0};
    const auto prob2 = make_sdr_problem(ch2, cfg, 0.5);
    CMat W = CMat::identity(3);
    W *= 1.0 / 3.0;
    const CVec e = rank_one_recover(W, prob2, flag);
    CHECK(flag == RankFlag::RecoveredFromHigherRank);
    CHECK(std::abs(e[0] - cplx(1, 0)) <= 1e-12);

    // mixtures of rank two and three from relaxation instances keep their lifted objective
    std::uint64_t i = 200;
    for (int rep = 0; rep < 15; ++rep, ++i) {
        const auto in = relaxation_instance(i);
        const auto p = make_sdr_problem(in.ch, in.g);
        const CVec opt = optimum_transmit(in.ch, in.g).recovered_w_t;
        CounterRng mix({509, i});
        for (int k = 0; k < 20; ++k) {
            const CVec u = oracle::random_unit(3, mix), x = oracle::random_unit(3, mix);
            const double a = 0.2 + 0.6 * mix.uniform(), b = (k % 2) ? 0.0 : 0.3 * (1.0 - a);
            CMat Wm = a * outer(opt, opt) + (1.0 - a - b) * outer(u, u) + b * outer(x, x);
            RankFlag fl;
            const CVec w = rank_one_recover(Wm, p, fl);
            CHECK(fl == RankFlag::RecoveredFromHigherRank);
            CHECK(std::abs(norm(w) - 1.0) <= 1e-12);
            CHECK(min_hops(w, in) >= lifted_objective(Wm, p) * (1.0 - 1e-6));
        }
    }
}

TEST_CASE("optimum pair dominates the closed-form schemes") {
    SystemConfig cfg;
    cfg.sigma2_RR = 0.01;
    for (std::uint64_t s = 0; s < 100; ++s) {
        const auto ch = draw_channel(cfg, {508, s});
        const double alpha = 0.1 + 0.008 * s;
        const double opt = end_to_end_sinr(optimum_pair(ch, cfg, alpha), ch, cfg, alpha).end_to_end;
        CHECK(opt >= end_to_end_sinr(tzf_pair(ch, cfg), ch, cfg, alpha).end_to_end * (1 - 1e-9));
        CHECK(opt >= end_to_end_sinr(rzf_pair(ch, cfg), ch, cfg, alpha).end_to_end * (1 - 1e-9));
        CHECK(opt >= end_to_end_sinr(mrc_mrt_pair(ch), ch, cfg, alpha).end_to_end * (1 - 1e-9));
    }
}

TEST_CASE("reachability test matches the solved optimum") {
    for (std::uint64_t i = 0; i < 60; ++i) {
        const auto in = varied_instance(i);
        const double t = optimum_transmit(in.ch, in.g).objective;
        CHECK(optimum_reaches(in.ch, in.g, t * 0.999));
        CHECK_FALSE(optimum_reaches(in.ch, in.g, t * 1.001));
        CHECK(optimum_reaches(in.ch, in.g, 0.0));
    }
}
