#include "doctest.h"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <thread>

#include "fdr/config.hpp"
#include "fdr/matrix.hpp"
#include "fdr/model.hpp"

using namespace fdr;

TEST_CASE("matrix algebra basics") {
    CMat A(2, 2);
    A(0, 0) = {1, 0};
    A(0, 1) = {0, 2};
    A(1, 0) = {3, -1};
    A(1, 1) = {4, 0};
    const CMat Ah = A.adjoint();
    CHECK(Ah(0, 1) == cplx(3, 1));
    CHECK(Ah(1, 0) == cplx(0, -2));

    const CVec x = {{1, 1}, {0, -1}};
    const CVec y = A * x;
    CHECK(std::abs(y[0] - (cplx(1, 1) + cplx(0, 2) * cplx(0, -1))) < 1e-15);
    CHECK(std::abs(dot(x, x) - cplx(norm2(x), 0)) < 1e-15);
    CHECK(norm2(x) == doctest::Approx(3.0));

    const CMat I = CMat::identity(2);
    CHECK(max_abs_diff(I * A, A) == 0.0);
    CHECK(trace(A) == cplx(5, 0));
    CHECK(frobenius(I) == doctest::Approx(std::sqrt(2.0)));
    CHECK(is_hermitian(A * Ah, 1e-14));
    CHECK_FALSE(is_hermitian(A, 1e-14));

    const CMat P = outer(x, x);
    CHECK(trace(P).real() == doctest::Approx(norm2(x)));
    CHECK_THROWS_AS(normalized(CVec(3)), std::domain_error);
}

TEST_CASE("config validation and derived quantities") {
    SystemConfig cfg;
    CHECK_NOTHROW(cfg.validate());
    CHECK(cfg.gamma_th() == doctest::Approx(3.0));
    CHECK(cfg.path1() == doctest::Approx(8000.0));
    CHECK(cfg.rho1() == doctest::Approx(1e8));

    SystemConfig bad = cfg;
    bad.eta = 1.5;
    CHECK_THROWS_AS(bad.validate(), std::invalid_argument);
    bad = cfg;
    bad.M_T = 0;
    CHECK_THROWS_AS(bad.validate(), std::invalid_argument);
    bad = cfg;
    bad.sigma2_R = 0.0;
    CHECK_THROWS_AS(bad.validate(), std::invalid_argument);
}

TEST_CASE("kappa") {
    CHECK(kappa(0.0, 0.5) == 0.0);
    CHECK(kappa(0.5, 0.5) == doctest::Approx(0.5));
    CHECK(kappa(0.75, 1.0) == doctest::Approx(3.0));
    CHECK_THROWS_AS(kappa(1.0, 0.5), std::domain_error);
    CHECK_THROWS_AS(kappa(-0.1, 0.5), std::domain_error);
}

TEST_CASE("unit conversions") {
    CHECK(dbm_to_watts(30.0) == doctest::Approx(1.0));
    CHECK(dbm_to_watts(-70.0) == doctest::Approx(1e-10));
    CHECK(watts_to_dbm(1e-2) == doctest::Approx(10.0));
    CHECK(li_db_to_variance(-50.0) == doctest::Approx(1e-5));
}

TEST_CASE("config text parsing") {
    const auto kv = parse_config_text("# scenario\np_s_dbm = 20\n  m_r=2 # inline\n\nli_dbm = -30\n");
    CHECK(kv.size() == 3);
    SystemConfig cfg;
    apply_settings(cfg, kv);
    CHECK(cfg.P_S == doctest::Approx(0.1));
    CHECK(cfg.M_R == 2);
    CHECK(cfg.sigma2_RR == doctest::Approx(1e-3));

    CHECK_THROWS_AS(parse_config_text("bogus = 1\n"), std::invalid_argument);
    CHECK_THROWS_AS(parse_config_text("d1 = abc\n"), std::invalid_argument);
    CHECK_THROWS_AS(parse_config_text("d1 1\n"), std::invalid_argument);
    CHECK_THROWS_AS(apply_setting(cfg, "m_t", 2.5), std::invalid_argument);
    CHECK_THROWS_AS(apply_setting(cfg, "m_t", 0.0), std::invalid_argument);
}

TEST_CASE("config file round trip") {
    const std::string path = "test_core_cfg.txt";
    {
        std::ofstream f(path);
        f << "d1 = 15\nd2 = 5\ntau = 2.7\neta = 0.8\nm_t = 4\nr_c = 1\nsigma2_r_dbm = -80\nsigma2_d_dbm = -60\n";
    }
    const auto cfg = load_config_file(path);
    CHECK(cfg.d1 == 15.0);
    CHECK(cfg.d2 == 5.0);
    CHECK(cfg.tau == 2.7);
    CHECK(cfg.eta == 0.8);
    CHECK(cfg.M_T == 4);
    CHECK(cfg.R_c == 1.0);
    CHECK(cfg.sigma2_R == doctest::Approx(1e-11));
    CHECK(cfg.sigma2_D == doctest::Approx(1e-9));
    std::remove(path.c_str());
    CHECK_THROWS(load_config_file("does/not/exist.cfg"));
}

TEST_CASE("channel draws are reproducible per stream") {
    SystemConfig cfg;
    const auto a = draw_channel(cfg, {42, 7});
    const auto b = draw_channel(cfg, {42, 7});
    CHECK(a.h_SR == b.h_SR);
    CHECK(a.h_RD == b.h_RD);
    CHECK(max_abs_diff(a.H_RR, b.H_RR) == 0.0);
    const auto c = draw_channel(cfg, {42, 8});
    CHECK(a.h_SR != c.h_SR);
    const auto d = draw_channel(cfg, {43, 7});
    CHECK(a.h_SR != d.h_SR);
    CHECK_NOTHROW(check_dimensions(cfg, a));

    // evaluation order and thread placement do not matter
    ChannelRealization e;
    std::thread t([&] { e = draw_channel(cfg, {42, 7}); });
    t.join();
    CHECK(e.h_RD == a.h_RD);
}

TEST_CASE("channel statistics") {
    SystemConfig cfg;
    cfg.sigma2_RR = 0.25;
    const int n = 40000;
    double s_sr = 0.0, s_rr = 0.0, m_re = 0.0, m4 = 0.0;
    for (int i = 0; i < n; ++i) {
        const auto ch = draw_channel(cfg, {9, static_cast<std::uint64_t>(i)});
        s_sr += norm2(ch.h_SR) / cfg.M_R;
        s_rr += std::norm(ch.H_RR(1, 2));
        m_re += ch.h_RD[0].real();
        m4 += std::pow(std::norm(ch.h_RD[1]), 2);
    }
    // E|h|^2 = 1 per entry; E|h|^4 = 2 for CN(0,1)
    CHECK(s_sr / n == doctest::Approx(1.0).epsilon(0.02));
    CHECK(s_rr / n == doctest::Approx(0.25).epsilon(0.03));
    CHECK(std::abs(m_re / n) < 0.02);
    CHECK(m4 / n == doctest::Approx(2.0).epsilon(0.06));
}

TEST_CASE("zero LI variance leaves the loop channel exactly zero") {
    SystemConfig cfg;
    cfg.sigma2_RR = 0.0;
    const auto ch = draw_channel(cfg, {1, 1});
    CHECK(frobenius(ch.H_RR) == 0.0);
}

TEST_CASE("uniforms lie in (0, 1]") {
    CounterRng rng({5, 0});
    double lo = 1.0, hi = 0.0, sum = 0.0;
    for (int i = 0; i < 100000; ++i) {
        const double u = rng.uniform();
        lo = std::min(lo, u);
        hi = std::max(hi, u);
        sum += u;
    }
    CHECK(lo > 0.0);
    CHECK(hi <= 1.0);
    CHECK(sum / 100000 == doctest::Approx(0.5).epsilon(0.01));
}

TEST_CASE("relay power") {
    SystemConfig cfg;
    ChannelRealization ch{{cplx(1, 0), cplx(0, 1), cplx(1, 1)}, {cplx(1, 0), cplx(0, 0), cplx(0, 0)}, CMat(3, 3)};
    // kappa(0.5, 0.5) P_S ||h||^2 / d1^tau = 0.5 * 1e-2 * 4 / 8000
    CHECK(relay_power(cfg, ch, 0.5) == doctest::Approx(2.5e-6));
    cfg.M_R = 2;
    CHECK_THROWS_AS(check_dimensions(cfg, ch), std::invalid_argument);
}
