#pragma once

#include <string>
#include <vector>

#include "vidarcy/pipeline.hpp"

namespace vidarcy {

// Identifies one benchmark run inside serialized summaries.
struct ReportContext {
    std::string preset;
    std::string formulation;  // "rt0" or "vms"
    std::string mesh_id;
    double eps = 0.0;
    double beta = 0.0;
    double theta = 0.0;
    int mesh_level = 0;
    int threads = 1;
    int velocity_dofs = 0;
    int pressure_dofs = 0;
};

// JSON text carrying every table-style column (SNES, KSP, seconds and dofs/s
// per phase, totals, violation counts and percentages) plus the enforced
// bounds and the residual histories.  Open bound sides serialize as null.
// Number formatting is shortest-round-trip, so reruns compare bitwise.
std::string pipeline_summary_json(const ReportContext& context, const PipelineReport& report);

// Shortest decimal form that parses back to the same double; infinities and
// NaN are spelled "inf", "-inf", "nan".
std::string format_full(double value);

// Joins cells with commas and appends a newline; cells are written verbatim.
std::string csv_line(const std::vector<std::string>& cells);

// Whole-file helpers; failures throw with the path in the message.
void write_text_file(const std::string& path, const std::string& content);
std::string read_text_file(const std::string& path);

}  // namespace vidarcy
