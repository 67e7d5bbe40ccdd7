#include "fdr/sweep.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <functional>
#include <ostream>
#include <stdexcept>
#include <thread>

#include "fdr/config.hpp"
#include "fdr/montecarlo.hpp"
#include "fdr/outage.hpp"

namespace fdr {

namespace {

std::vector<double> arange(double lo, double hi, double step) {
    std::vector<double> g;
    const int n = static_cast<int>(std::lround((hi - lo) / step));
    for (int i = 0; i <= n; ++i) g.push_back(lo + step * i);
    return g;
}

std::string fmt_num(double x) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.12g", x);
    return buf;
}

// One unit of work: a (grid point, scheme, engine) cell. An empty result means the row is omitted.
struct Cell {
    std::size_t index = 0;
    double axis = 0.0;
    Scheme scheme = Scheme::Optimum;
    bool mc = false;
};

struct CellResult {
    bool present = false;
    double value = 0.0;
    double ci95 = 0.0;
    std::string note;
};

SystemConfig at_point(FigureFamily f, const SystemConfig& base, double x) {
    SystemConfig cfg = base;
    if (f == FigureFamily::OutageVsPs) cfg.P_S = dbm_to_watts(x);
    if (f == FigureFamily::DelayVsLi) cfg.sigma2_RR = li_db_to_variance(x);
    return cfg;
}

// Best delay-limited throughput over the alpha grid from Monte Carlo with shared draws.
McEstimate mc_delay_optimum(Scheme s, const SystemConfig& cfg, std::uint64_t n, std::uint64_t seed) {
    McEstimate best;
    best.mean = -1.0;
    for (int j = 1; j <= 99; ++j) {
        const auto e = estimate_delay_throughput(s, cfg, 0.01 * j, n, seed);
        if (e.mean > best.mean) best = e;
    }
    return best;
}

CellResult evaluate(const SweepSpec& spec, const SystemConfig& base, const Cell& c) {
    CellResult r;
    const SystemConfig cfg = at_point(spec.family, base, c.axis);
    const std::string name(scheme_name(c.scheme));
    if (!scheme_feasible(c.scheme, cfg.M_R, cfg.M_T)) {
        r.note = "scheme " + name + " infeasible for M_R=" + std::to_string(cfg.M_R) + ", M_T=" + std::to_string(cfg.M_T);
        return r;
    }
    const bool exact = has_exact_outage(c.scheme, cfg.M_R, cfg.M_T);
    switch (spec.family) {
        case FigureFamily::ThroughputVsAlpha:
            if (!c.mc) {
                r.note = "no analytic average throughput; use --engine mc";
                return r;
            } else {
                const auto e = estimate_throughput(c.scheme, cfg, AlphaPolicy::fixed(c.axis), spec.n_trials, spec.seed);
                return {true, e.mean, e.ci_halfwidth_95, ""};
            }
        case FigureFamily::OutageVsPs:
        case FigureFamily::DelayVsAlpha: {
            const double alpha = spec.family == FigureFamily::OutageVsPs ? spec.alpha : c.axis;
            const bool delay = spec.family == FigureFamily::DelayVsAlpha;
            if (!c.mc) {
                if (!exact) {
                    r.note = "no closed-form outage for scheme " + name + " at this antenna configuration";
                    return r;
                }
                const double p = outage_exact(make_query(c.scheme, cfg, alpha));
                return {true, delay ? delay_throughput(alpha, cfg.R_c, p) : p, 0.0, ""};
            }
            const auto e = delay ? estimate_delay_throughput(c.scheme, cfg, alpha, spec.n_trials, spec.seed)
                                 : estimate_outage(c.scheme, cfg, alpha, cfg.gamma_th(), spec.n_trials, spec.seed);
            return {true, e.mean, e.ci_halfwidth_95, ""};
        }
        case FigureFamily::DelayVsLi: {
            if (!c.mc) {
                if (!exact) {
                    r.note = "no closed-form outage for scheme " + name + " at this antenna configuration";
                    return r;
                }
                return {true, optimal_alpha_delay(c.scheme, cfg).throughput, 0.0, ""};
            }
            const auto e = mc_delay_optimum(c.scheme, cfg, spec.n_trials, spec.seed);
            return {true, e.mean, e.ci_halfwidth_95, ""};
        }
    }
    return r;
}

}  // namespace

FigureFamily parse_family(std::string_view name) {
    if (name == "throughput-alpha") return FigureFamily::ThroughputVsAlpha;
    if (name == "outage-ps") return FigureFamily::OutageVsPs;
    if (name == "delay-alpha") return FigureFamily::DelayVsAlpha;
    if (name == "delay-li") return FigureFamily::DelayVsLi;
    throw std::invalid_argument("unknown figure family: " + std::string(name));
}

std::string_view family_name(FigureFamily f) {
    switch (f) {
        case FigureFamily::ThroughputVsAlpha: return "throughput-alpha";
        case FigureFamily::OutageVsPs: return "outage-ps";
        case FigureFamily::DelayVsAlpha: return "delay-alpha";
        case FigureFamily::DelayVsLi: return "delay-li";
    }
    return "?";
}

Engine parse_engine(std::string_view name) {
    if (name == "analytic") return Engine::Analytic;
    if (name == "mc") return Engine::MonteCarlo;
    if (name == "both") return Engine::Both;
    throw std::invalid_argument("unknown engine: " + std::string(name));
}

std::vector<double> default_grid(FigureFamily f) {
    switch (f) {
        case FigureFamily::ThroughputVsAlpha:
        case FigureFamily::DelayVsAlpha: return arange(0.01, 0.99, 0.01);
        case FigureFamily::OutageVsPs: return arange(0.0, 30.0, 2.0);
        case FigureFamily::DelayVsLi: return arange(-90.0, -10.0, 5.0);
    }
    return {};
}

std::vector<SweepRow> sweep_rows(const SweepSpec& spec, const SystemConfig& cfg, std::ostream& diag) {
    cfg.validate();
    const auto grid = spec.grid.empty() ? default_grid(spec.family) : spec.grid;
    for (std::size_t i = 1; i < grid.size(); ++i)
        if (!(grid[i] > grid[i - 1])) throw std::invalid_argument("sweep grid must be strictly increasing");
    if (spec.n_trials < 1) throw std::invalid_argument("sweep needs at least one trial");

    std::vector<Cell> cells;
    for (double x : grid)
        for (Scheme s : spec.schemes) {
            if (spec.engine != Engine::MonteCarlo) cells.push_back({cells.size(), x, s, false});
            if (spec.engine != Engine::Analytic) cells.push_back({cells.size(), x, s, true});
        }

    std::vector<CellResult> results(cells.size());
    std::vector<std::exception_ptr> errors(cells.size());
    std::atomic<std::size_t> next{0};
    auto work = [&] {
        for (std::size_t i; (i = next++) < cells.size();) {
            try {
                results[i] = evaluate(spec, cfg, cells[i]);
            } catch (...) {
                errors[i] = std::current_exception();
            }
        }
    };
    const unsigned workers = std::max(1u, std::min<unsigned>(spec.workers, static_cast<unsigned>(cells.size())));
    if (workers <= 1) {
        work();
    } else {
        std::vector<std::thread> pool;
        for (unsigned w = 0; w < workers; ++w) pool.emplace_back(work);
        for (auto& t : pool) t.join();
    }
    for (auto& e : errors)
        if (e) std::rethrow_exception(e);

    std::vector<SweepRow> rows;
    std::vector<std::string> notes;
    for (std::size_t i = 0; i < cells.size(); ++i) {
        const auto& c = cells[i];
        const auto& r = results[i];
        if (!r.present) {
            if (std::find(notes.begin(), notes.end(), r.note) == notes.end()) notes.push_back(r.note);
            continue;
        }
        rows.push_back({c.axis, std::string(scheme_name(c.scheme)), c.mc ? "mc" : "analytic", r.value, r.ci95});
    }
    for (const auto& n : notes) diag << "warning: " << n << ", rows omitted\n";
    std::stable_sort(rows.begin(), rows.end(), [](const SweepRow& a, const SweepRow& b) {
        if (a.axis != b.axis) return a.axis < b.axis;
        if (a.scheme != b.scheme) return a.scheme < b.scheme;
        return a.engine < b.engine;
    });
    return rows;
}

std::string format_csv(const std::vector<SweepRow>& rows) {
    std::string s = "axis,scheme,engine,value,ci95\n";
    for (const auto& r : rows)
        s += fmt_num(r.axis) + ',' + r.scheme + ',' + r.engine + ',' + fmt_num(r.value) + ',' + fmt_num(r.ci95) + '\n';
    return s;
}

void run_sweep(const SweepSpec& spec, const SystemConfig& cfg, std::ostream& out, std::ostream& diag) {
    const std::string csv = format_csv(sweep_rows(spec, cfg, diag));
    if (spec.out_path.empty()) {
        out << csv;
        if (!out) throw std::runtime_error("failed writing CSV");
        return;
    }
    std::ofstream f(spec.out_path, std::ios::binary | std::ios::trunc);
    if (!f) throw std::runtime_error("cannot open " + spec.out_path + " for writing");
    f << csv;
    f.close();
    if (!f) throw std::runtime_error("failed writing " + spec.out_path);
}

}  // namespace fdr
