#include "vidarcy/report.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <sstream>
#include <stdexcept>

#include "json.hpp"

namespace vidarcy {

namespace {

using ordered_json = nlohmann::ordered_json;

ordered_json phase_json(const SolveReport& r) {
    ordered_json j;
    j["converged"] = r.converged;
    j["snes"] = r.snes_iterations;
    j["ksp"] = r.ksp_iterations;
    j["seconds"] = r.wall_seconds;
    j["dofs_per_second"] = r.dofs_per_second;
    if (r.violation_count >= 0) {
        j["violations"] = r.violation_count;
        j["violation_percent"] = r.violation_percent;
    }
    j["residual_history"] = r.residual_history;
    return j;
}

}  // namespace

std::string pipeline_summary_json(const ReportContext& context, const PipelineReport& report) {
    const int n_dofs = context.velocity_dofs + context.pressure_dofs;
    ordered_json j;
    j["preset"] = context.preset;
    j["formulation"] = context.formulation;
    j["mesh"] = context.mesh_id;
    j["parameters"] = {{"eps", context.eps},
                       {"beta", context.beta},
                       {"theta", context.theta},
                       {"mesh_level", context.mesh_level},
                       {"threads", context.threads}};
    j["dofs"] = {{"velocity", context.velocity_dofs},
                 {"pressure", context.pressure_dofs},
                 {"total", n_dofs}};
    // Infinite sides dump as null (unbounded).
    j["bounds"] = {{"lo", report.pressure_lo}, {"hi", report.pressure_hi}};
    j["vi_ran"] = report.vi_ran;
    j["phases"] = {{"unconstrained", phase_json(report.newton)}, {"vi", phase_json(report.vi)}};
    j["totals"] = {{"snes", report.total_snes()},
                   {"ksp", report.total_ksp()},
                   {"seconds", report.total_wall_seconds},
                   {"dofs_per_second", report.total_dofs_per_second(n_dofs)}};
    j["initial_residual_norm"] = report.initial_residual_norm;
    j["complementarity_residual"] = report.complementarity_residual;
    return j.dump(2) + "\n";
}

std::string format_full(double value) {
    if (std::isnan(value)) return "nan";
    if (std::isinf(value)) return value > 0 ? "inf" : "-inf";
    char buf[32];
    const auto res = std::to_chars(buf, buf + sizeof(buf), value);
    return std::string(buf, res.ptr);
}

std::string csv_line(const std::vector<std::string>& cells) {
    std::string line;
    for (size_t i = 0; i < cells.size(); ++i) {
        if (i) line += ',';
        line += cells[i];
    }
    line += '\n';
    return line;
}

void write_text_file(const std::string& path, const std::string& content) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot open " + path + " for writing");
    out << content;
    if (!out) throw std::runtime_error("write failed for " + path);
}

std::string read_text_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::runtime_error("cannot open " + path);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

}  // namespace vidarcy
