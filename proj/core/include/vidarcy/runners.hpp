#pragma once

#include <string>
#include <vector>

#include "vidarcy/config.hpp"
#include "vidarcy/pipeline.hpp"

namespace vidarcy {

// Benchmark drivers.  Every runner creates config.out_dir, writes a JSON
// summary per solve (all table-style columns: SNES, KSP, seconds per phase,
// totals, violation percentages), plus CSV tables and VTU fields, and returns
// the same data structured for direct inspection.

// --- h-convergence study ----------------------------------------------------

struct HconvLevel {
    int n = 0;  // cells per side
    double h = 0.0;
    double err_u = 0.0;
    double err_p = 0.0;
    SolveReport report;
};

struct HconvSeries {
    double beta = 0.0;
    std::vector<HconvLevel> levels;
    // Least-squares slope of log(err) against log(h).
    double rate_u = 0.0;
    double rate_p = 0.0;
};

struct HconvTable {
    Formulation formulation;
    std::vector<HconvSeries> series;  // one per viscosity coefficient (0 and 1)
};

struct HconvResult {
    std::vector<HconvTable> tables;
    std::vector<std::string> files;
};

// Meshes 8x8 through 64x64; a level that fails to converge aborts with the
// level id in the message.
HconvResult run_hconv(const RunConfig& config);

// --- pipeline presets ---------------------------------------------------

// Per-run scaling data in the "unconstrained | VI | total" layout; totals are
// the phase sums, rates are dofs per second of the respective phase.
struct ScalingRecord {
    std::string mesh_id;
    Formulation formulation = Formulation::RT0;
    long long total_dofs = 0;
    double newton_seconds = 0.0;
    double vi_seconds = 0.0;
    double total_seconds = 0.0;
    double newton_rate = 0.0;
    double vi_rate = 0.0;  // 0 when the VI phase was skipped
    double total_rate = 0.0;
    int newton_snes = 0;
    int vi_snes = 0;
    long long newton_ksp = 0;
    long long vi_ksp = 0;
    double violation_percent_before = 0.0;
};

ScalingRecord make_scaling_record(std::string mesh_id, Formulation formulation,
                                  long long total_dofs, const PipelineReport& report);

struct PresetRun {
    Formulation formulation = Formulation::RT0;
    std::string mesh_id;
    int total_dofs = 0;
    double eps = 0.0;
    double beta = 0.0;
    int mesh_level = 0;
    int threads = 1;
    double assembly_seconds = 0.0;  // accumulated over both phases
    PipelineReport report;
};

struct RunnerResult {
    std::vector<PresetRun> runs;
    std::vector<ScalingRecord> records;
    std::vector<std::string> files;
};

// Square reservoir at h = 1 m for the configured anisotropy ratio; emits
// pre- and post-VI pressure, velocity magnitude and the |u_post - u_pre|
// difference field.
RunnerResult run_square_reservoir(const RunConfig& config);

// Annulus hierarchy, levels 1 .. config.mesh_level (default 4), accumulating
// a ScalingRecord per level and ending with the static-scaling report.
RunnerResult run_circular_reservoir(const RunConfig& config);

// 3D box (facet-flux formulation only).  With thread_sweep set, repeats the
// run single-threaded to expose the assembly speedup and report invariance.
RunnerResult run_box3d(const RunConfig& config);

// Writes records.csv plus a plot-data CSV split into the two panels
// (unconstrained-phase rates and VI-phase rates, one series per
// formulation); needs at least 2 records.  Returns the written paths.
std::vector<std::string> static_scaling_report(const std::vector<ScalingRecord>& records,
                                               const std::string& out_dir);

}  // namespace vidarcy
