// fdrelay: command-line front end for the relay library.
#include <CLI11.hpp>

#include <cstdio>
#include <iostream>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "fdr/alpha.hpp"
#include "fdr/config.hpp"
#include "fdr/montecarlo.hpp"
#include "fdr/outage.hpp"
#include "fdr/sdr.hpp"
#include "fdr/sweep.hpp"

namespace {

const std::vector<std::string> kConfigKeys = {"p_s_dbm", "sigma2_r_dbm", "sigma2_d_dbm", "li_dbm", "d1", "d2",
                                              "tau",     "eta",          "m_r",          "m_t",    "r_c"};

struct Common {
    std::string config_path;
    std::map<std::string, double> overrides;
    std::uint64_t seed = 1;
    std::uint64_t trials = 10000;
    std::string engine = "analytic";
    unsigned workers = 1;
};

void add_common(CLI::App* cmd, Common& c) {
    cmd->add_option("--config", c.config_path, "flat key = value config file")->check(CLI::ExistingFile);
    cmd->add_option("--seed", c.seed, "random seed");
    cmd->add_option("--trials", c.trials, "Monte Carlo trials")->check(CLI::PositiveNumber);
    cmd->add_option("--workers", c.workers, "worker threads (0 = hardware)");
    for (const auto& key : kConfigKeys) {
        std::string dashed = key;
        for (auto& ch : dashed)
            if (ch == '_') ch = '-';
        std::string names = "--" + key;
        if (dashed != key) names += ",--" + dashed;
        cmd->add_option_function<double>(names, [&c, key](const double& v) { c.overrides[key] = v; }, "override " + key);
    }
}

fdr::SystemConfig build_config(const Common& c) {
    fdr::SystemConfig cfg;
    if (!c.config_path.empty()) cfg = fdr::load_config_file(c.config_path, cfg);
    fdr::apply_settings(cfg, c.overrides);
    cfg.validate();
    return cfg;
}

std::string fmt(double x) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.12g", x);
    return buf;
}

std::string fmt_vec(const fdr::CVec& v) {
    std::string s;
    for (std::size_t i = 0; i < v.size(); ++i) {
        if (i) s += ';';
        s += fmt(v[i].real()) + (v[i].imag() < 0 ? "-" : "+") + fmt(std::abs(v[i].imag())) + "i";
    }
    return s;
}

void kv(const std::string& k, const std::string& v) { std::cout << k << '=' << v << '\n'; }
void kv(const std::string& k, double v) { kv(k, fmt(v)); }

std::vector<double> parse_grid(const std::string& text) {
    std::vector<double> g;
    if (text.empty()) return g;
    // lo:hi:step or a comma list
    if (text.find(':') != std::string::npos) {
        double lo, hi, step;
        char c1, c2;
        std::istringstream is(text);
        if (!(is >> lo >> c1 >> hi >> c2 >> step) || c1 != ':' || c2 != ':' || !(step > 0.0))
            throw std::invalid_argument("bad grid '" + text + "', expected lo:hi:step");
        const long n = std::lround((hi - lo) / step);
        for (long i = 0; i <= n; ++i) g.push_back(lo + step * static_cast<double>(i));
        return g;
    }
    std::istringstream is(text);
    for (std::string tok; std::getline(is, tok, ',');) g.push_back(std::stod(tok));
    return g;
}

std::vector<fdr::Scheme> parse_schemes(const std::vector<std::string>& names) {
    std::vector<fdr::Scheme> out;
    for (const auto& n : names) {
        std::istringstream is(n);
        for (std::string tok; std::getline(is, tok, ',');)
            if (!tok.empty()) out.push_back(fdr::parse_scheme(tok));
    }
    return out;
}

int cmd_sweep(const Common& c, const std::string& family, const std::vector<std::string>& schemes, const std::string& grid,
              const std::string& out, double alpha) {
    fdr::SweepSpec spec;
    spec.family = fdr::parse_family(family);
    spec.grid = parse_grid(grid);
    spec.schemes = parse_schemes(schemes);
    spec.engine = fdr::parse_engine(c.engine);
    spec.n_trials = c.trials;
    spec.seed = c.seed;
    spec.out_path = out;
    spec.workers = c.workers;
    spec.alpha = alpha;
    fdr::run_sweep(spec, build_config(c), std::cout, std::cerr);
    return 0;
}

int cmd_beamform(const Common& c, const std::string& scheme_text, double alpha, std::uint64_t stream) {
    const auto cfg = build_config(c);
    const auto scheme = fdr::parse_scheme(scheme_text);
    const auto ch = fdr::draw_channel(cfg, {c.seed, stream});
    const auto pair = fdr::scheme_pair(scheme, ch, cfg, alpha);
    const auto s = fdr::end_to_end_sinr(pair, ch, cfg, alpha);
    kv("scheme", std::string(fdr::scheme_name(scheme)));
    kv("alpha", alpha);
    kv("w_r", fmt_vec(pair.w_r));
    kv("w_t", fmt_vec(pair.w_t));
    kv("sinr_first_hop", s.first_hop);
    kv("sinr_second_hop", s.second_hop);
    kv("sinr", s.end_to_end);
    kv("rate", fdr::instantaneous_rate(alpha, s.end_to_end));
    kv("degenerate", pair.degenerate ? "1" : "0");
    return 0;
}

int cmd_alpha(const Common& c, const std::string& scheme_text, std::uint64_t stream) {
    const auto cfg = build_config(c);
    const auto scheme = fdr::parse_scheme(scheme_text);
    if (!fdr::scheme_feasible(scheme, cfg.M_R, cfg.M_T)) throw fdr::SchemeInfeasible("scheme infeasible for antenna configuration");
    const auto ch = fdr::draw_channel(cfg, {c.seed, stream});
    kv("scheme", std::string(fdr::scheme_name(scheme)));
    if (scheme == fdr::Scheme::Optimum) {
        const auto j = fdr::joint_optimum(ch, cfg, fdr::JointMethod::LineSearch);
        kv("alpha_star", j.alpha);
        kv("rate", j.rate);
        kv("provenance", "line-search");
        return 0;
    }
    fdr::AlphaCoefficients co;
    if (scheme == fdr::Scheme::TZF) co = fdr::tzf_coefficients(ch, cfg);
    if (scheme == fdr::Scheme::RZF) co = fdr::rzf_coefficients(ch, cfg);
    if (scheme == fdr::Scheme::MrcMrt) co = fdr::mrc_coefficients(ch, cfg);
    const auto r = fdr::optimal_alpha(co);
    kv("alpha_star", r.alpha_star);
    kv("rate", r.rate_at_star);
    kv("branch", r.branch == fdr::AlphaBranch::LambertBranch ? "lambert" : "boundary");
    kv("provenance", "closed-form");
    return 0;
}

int cmd_outage(const Common& c, const std::string& scheme_text, double alpha, std::optional<double> gamma_th) {
    const auto cfg = build_config(c);
    const auto scheme = fdr::parse_scheme(scheme_text);
    if (!fdr::scheme_feasible(scheme, cfg.M_R, cfg.M_T)) throw fdr::SchemeInfeasible("scheme infeasible for antenna configuration");
    const auto engine = fdr::parse_engine(c.engine);
    auto q = fdr::make_query(scheme, cfg, alpha);
    if (gamma_th) q.gamma_th = *gamma_th;
    kv("scheme", std::string(fdr::scheme_name(scheme)));
    kv("alpha", alpha);
    kv("gamma_th", q.gamma_th);
    bool any = false;
    if (engine != fdr::Engine::MonteCarlo && fdr::has_exact_outage(scheme, cfg.M_R, cfg.M_T)) {
        kv("outage_analytic", fdr::outage_exact(q));
        any = true;
        double asym = -1.0;
        if (scheme == fdr::Scheme::TZF) asym = fdr::outage_tzf_asymptotic(q);
        if (scheme == fdr::Scheme::RZF) asym = fdr::outage_rzf_asymptotic(q);
        if (scheme == fdr::Scheme::MrcMrt && cfg.M_T == 1 && cfg.M_R >= 2) asym = fdr::outage_mrc_case1_asymptotic(q);
        if (scheme == fdr::Scheme::MrcMrt && cfg.M_R == 1) asym = fdr::outage_mrc_case2_asymptotic(q, 10);
        if (asym >= 0.0) kv("outage_asymptotic", asym);
        if (scheme == fdr::Scheme::MrcMrt && cfg.M_T == 1) kv("outage_floor", fdr::outage_mrc_floor(q));
    }
    if (engine != fdr::Engine::Analytic || !any) {
        const auto e = fdr::estimate_outage(scheme, cfg, alpha, q.gamma_th, c.trials, c.seed, c.workers);
        kv("outage_mc", e.mean);
        kv("outage_mc_ci95", e.ci_halfwidth_95);
        kv("trials", static_cast<double>(e.n_trials));
    }
    return 0;
}

int cmd_throughput(const Common& c, const std::string& scheme_text, std::optional<double> alpha) {
    const auto cfg = build_config(c);
    const auto scheme = fdr::parse_scheme(scheme_text);
    if (!fdr::scheme_feasible(scheme, cfg.M_R, cfg.M_T)) throw fdr::SchemeInfeasible("scheme infeasible for antenna configuration");
    const auto engine = fdr::parse_engine(c.engine);
    kv("scheme", std::string(fdr::scheme_name(scheme)));
    if (!alpha) {
        // delay-limited optimum over the split, plus the average with per-draw optimal split
        const auto d = fdr::optimal_alpha_delay(scheme, cfg, c.trials, c.seed);
        kv("delay_alpha_star", d.alpha_star);
        kv("delay_throughput", d.throughput);
        kv("delay_provenance", fdr::provenance_name(d.provenance));
        const auto e = fdr::estimate_throughput(scheme, cfg, fdr::AlphaPolicy::per_draw_optimal(), c.trials, c.seed, c.workers);
        kv("instantaneous_throughput_mc", e.mean);
        kv("instantaneous_throughput_mc_ci95", e.ci_halfwidth_95);
        return 0;
    }
    kv("alpha", *alpha);
    const bool exact = fdr::has_exact_outage(scheme, cfg.M_R, cfg.M_T);
    if (engine != fdr::Engine::MonteCarlo && exact)
        kv("delay_throughput_analytic", fdr::delay_throughput(*alpha, cfg.R_c, fdr::outage_exact(fdr::make_query(scheme, cfg, *alpha))));
    if (engine != fdr::Engine::Analytic || !exact) {
        const auto d = fdr::estimate_delay_throughput(scheme, cfg, *alpha, c.trials, c.seed, c.workers);
        kv("delay_throughput_mc", d.mean);
        kv("delay_throughput_mc_ci95", d.ci_halfwidth_95);
    }
    const auto e = fdr::estimate_throughput(scheme, cfg, fdr::AlphaPolicy::fixed(*alpha), c.trials, c.seed, c.workers);
    kv("instantaneous_throughput_mc", e.mean);
    kv("instantaneous_throughput_mc_ci95", e.ci_halfwidth_95);
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Wireless-powered full-duplex MIMO relay toolkit"};
    app.require_subcommand(1);

    Common common;
    std::string scheme;
    std::vector<std::string> schemes;
    std::string family, grid, out;
    double alpha = 0.5;
    std::optional<double> alpha_opt, gamma_th;
    std::uint64_t stream = 0;

    auto* sweep = app.add_subcommand("sweep", "write a figure-family CSV sweep");
    add_common(sweep, common);
    sweep->add_option("--family", family, "throughput-alpha | outage-ps | delay-alpha | delay-li")->required();
    sweep->add_option("--scheme", schemes, "schemes (opt,tzf,rzf,mrc); repeatable or comma separated");
    sweep->add_option("--engine", common.engine, "analytic | mc | both");
    sweep->add_option("--grid", grid, "lo:hi:step or comma list (default per family)");
    sweep->add_option("--out", out, "output CSV path (default stdout)");
    sweep->add_option("--alpha", alpha, "time split for the outage-ps family");

    auto* beamform = app.add_subcommand("beamform", "beamformers and SINR for one seeded draw");
    add_common(beamform, common);
    beamform->add_option("--scheme", scheme, "opt | tzf | rzf | mrc")->required();
    beamform->add_option("--alpha", alpha, "time split");
    beamform->add_option("--stream", stream, "draw index within the seed");

    auto* alpha_cmd = app.add_subcommand("alpha", "optimal time split for one seeded draw");
    add_common(alpha_cmd, common);
    alpha_cmd->add_option("--scheme", scheme, "opt | tzf | rzf | mrc")->required();
    alpha_cmd->add_option("--stream", stream, "draw index within the seed");

    auto* outage = app.add_subcommand("outage", "outage probability");
    add_common(outage, common);
    outage->add_option("--scheme", scheme, "opt | tzf | rzf | mrc")->required();
    outage->add_option("--alpha", alpha, "time split");
    outage->add_option("--gamma-th,--gamma_th", gamma_th, "SINR threshold (default 2^r_c - 1)");
    outage->add_option("--engine", common.engine, "analytic | mc | both");

    auto* throughput = app.add_subcommand("throughput", "delay-limited and instantaneous throughput");
    add_common(throughput, common);
    throughput->add_option("--scheme", scheme, "opt | tzf | rzf | mrc")->required();
    throughput->add_option("--alpha", alpha_opt, "time split (omit to optimize)");
    throughput->add_option("--engine", common.engine, "analytic | mc | both");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 2;
    }

    try {
        if (*sweep) return cmd_sweep(common, family, schemes, grid, out, alpha);
        if (*beamform) return cmd_beamform(common, scheme, alpha, stream);
        if (*alpha_cmd) return cmd_alpha(common, scheme, stream);
        if (*outage) return cmd_outage(common, scheme, alpha, gamma_th);
        if (*throughput) return cmd_throughput(common, scheme, alpha_opt);
    } catch (const std::invalid_argument& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 1;
    }
    return 0;
}
