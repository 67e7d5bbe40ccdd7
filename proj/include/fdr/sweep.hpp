#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <string_view>
#include <vector>

#include "fdr/beamforming.hpp"

namespace fdr {

enum class FigureFamily { ThroughputVsAlpha, OutageVsPs, DelayVsAlpha, DelayVsLi };
enum class Engine { Analytic, MonteCarlo, Both };

FigureFamily parse_family(std::string_view name);  // "throughput-alpha", "outage-ps", "delay-alpha", "delay-li"
std::string_view family_name(FigureFamily f);
Engine parse_engine(std::string_view name);        // "analytic", "mc", "both"

// Axis units: alpha for the alpha families, dBm for P_S, dB for the LI strength.
std::vector<double> default_grid(FigureFamily f);

struct SweepSpec {
    FigureFamily family = FigureFamily::DelayVsAlpha;
    std::vector<double> grid;
    std::vector<Scheme> schemes;
    Engine engine = Engine::Both;
    std::uint64_t n_trials = 10000;
    std::uint64_t seed = 1;
    std::string out_path;  // empty writes to the stream passed to run_sweep
    unsigned workers = 1;
    double alpha = 0.5;    // fixed split for the outage-vs-P_S family
};

struct SweepRow {
    double axis = 0.0;
    std::string scheme;
    std::string engine;
    double value = 0.0;
    double ci95 = 0.0;
};

// Rows sorted by (axis, scheme, engine). Infeasible or unsupported rows are skipped with a note on diag.
std::vector<SweepRow> sweep_rows(const SweepSpec& spec, const SystemConfig& cfg, std::ostream& diag);

std::string format_csv(const std::vector<SweepRow>& rows);

// Writes the CSV to spec.out_path (or to out when the path is empty); throws std::runtime_error on I/O failure.
void run_sweep(const SweepSpec& spec, const SystemConfig& cfg, std::ostream& out, std::ostream& diag);

}  // namespace fdr
