#include "vidarcy/runners.hpp"

#include <cmath>
#include <filesystem>
#include <stdexcept>

#include "json.hpp"
#include "vidarcy/problems.hpp"
#include "vidarcy/report.hpp"
#include "vidarcy/vtu.hpp"

namespace vidarcy {

namespace {

using ordered_json = nlohmann::ordered_json;

std::vector<Formulation> chosen_formulations(const RunConfig& config) {
    if (config.formulation) return {*config.formulation};
    return {Formulation::RT0, Formulation::VMS};
}

std::filesystem::path ensure_out_dir(const RunConfig& config) {
    const std::filesystem::path dir(config.out_dir);
    std::error_code ec;
    std::filesystem::create_directories(dir, ec);
    if (ec)
        throw std::runtime_error("cannot create output directory " + config.out_dir + ": " +
                                 ec.message());
    return dir;
}

double least_squares_slope(const std::vector<double>& x, const std::vector<double>& y) {
    const size_t n = x.size();
    double mx = 0.0, my = 0.0;
    for (size_t i = 0; i < n; ++i) {
        mx += x[i];
        my += y[i];
    }
    mx /= n;
    my /= n;
    double sxy = 0.0, sxx = 0.0;
    for (size_t i = 0; i < n; ++i) {
        sxy += (x[i] - mx) * (y[i] - my);
        sxx += (x[i] - mx) * (x[i] - mx);
    }
    return sxy / sxx;
}

ReportContext make_context(const RunConfig& config, const std::string& preset, Formulation f,
                           std::string mesh_id, const Assembler& assembler) {
    ReportContext ctx;
    ctx.preset = preset;
    ctx.formulation = formulation_name(f);
    ctx.mesh_id = std::move(mesh_id);
    ctx.eps = config.eps.value_or(0.0);
    ctx.beta = config.beta.value_or(0.0);
    ctx.theta = config.theta.value_or(0.0);
    ctx.mesh_level = config.mesh_level.value_or(0);
    ctx.threads = assembler.threads();
    ctx.velocity_dofs = assembler.n_velocity_dofs();
    ctx.pressure_dofs = assembler.n_pressure_dofs();
    return ctx;
}

}  // namespace

HconvResult run_hconv(const RunConfig& config) {
    validate_config(config);
    const auto dir = ensure_out_dir(config);
    const std::vector<int> sizes = {8, 16, 32, 64};
    const std::vector<double> betas = {0.0, 1.0};

    HconvResult result;
    std::string csv = csv_line(
        {"formulation", "beta", "n", "h", "err_u", "err_p", "snes", "ksp", "seconds"});
    ordered_json jroot;
    jroot["preset"] = "hconv";
    jroot["tables"] = ordered_json::array();

    for (const Formulation f : chosen_formulations(config)) {
        HconvTable table;
        table.formulation = f;
        ordered_json jtable;
        jtable["formulation"] = formulation_name(f);
        jtable["series"] = ordered_json::array();
        for (const double beta : betas) {
            HconvSeries series;
            series.beta = beta;
            for (const int n : sizes) {
                try {
                    const Mesh mesh = unit_square_mesh(n);
                    const ProblemSpec problem = manufactured_problem(mesh, beta);
                    Assembler assembler(problem, f, config.threads);
                    const NewtonResult res = newton_solve(assembler, config.newton);
                    if (!res.report.converged)
                        throw std::runtime_error("Newton did not converge in " +
                                                 std::to_string(config.newton.max_iterations) +
                                                 " iterations");
                    const L2Errors err = l2_errors(problem, res.solution);
                    series.levels.push_back({n, 1.0 / n, err.velocity, err.pressure, res.report});
                } catch (const std::exception& e) {
                    throw std::runtime_error("h-convergence aborted at level n=" +
                                             std::to_string(n) + " (" + formulation_name(f) +
                                             ", beta=" + format_full(beta) + "): " + e.what());
                }
                const HconvLevel& lv = series.levels.back();
                csv += csv_line({formulation_name(f), format_full(beta), std::to_string(n),
                                 format_full(lv.h), format_full(lv.err_u), format_full(lv.err_p),
                                 std::to_string(lv.report.snes_iterations),
                                 std::to_string(lv.report.ksp_iterations),
                                 format_full(lv.report.wall_seconds)});
            }
            std::vector<double> lh, lu, lp;
            for (const HconvLevel& lv : series.levels) {
                lh.push_back(std::log(lv.h));
                lu.push_back(std::log(lv.err_u));
                lp.push_back(std::log(lv.err_p));
            }
            series.rate_u = least_squares_slope(lh, lu);
            series.rate_p = least_squares_slope(lh, lp);

            ordered_json jseries;
            jseries["beta"] = beta;
            jseries["rate_u"] = series.rate_u;
            jseries["rate_p"] = series.rate_p;
            jseries["levels"] = ordered_json::array();
            for (const HconvLevel& lv : series.levels)
                jseries["levels"].push_back({{"n", lv.n},
                                             {"h", lv.h},
                                             {"err_u", lv.err_u},
                                             {"err_p", lv.err_p},
                                             {"snes", lv.report.snes_iterations},
                                             {"ksp", lv.report.ksp_iterations},
                                             {"seconds", lv.report.wall_seconds}});
            jtable["series"].push_back(std::move(jseries));
            table.series.push_back(std::move(series));
        }
        jroot["tables"].push_back(std::move(jtable));
        result.tables.push_back(std::move(table));
    }

    const std::string csv_path = (dir / "hconv.csv").string();
    const std::string json_path = (dir / "hconv.json").string();
    write_text_file(csv_path, csv);
    write_text_file(json_path, jroot.dump(2) + "\n");
    result.files = {csv_path, json_path};
    return result;
}

ScalingRecord make_scaling_record(std::string mesh_id, Formulation formulation,
                                  long long total_dofs, const PipelineReport& report) {
    ScalingRecord r;
    r.mesh_id = std::move(mesh_id);
    r.formulation = formulation;
    r.total_dofs = total_dofs;
    r.newton_seconds = report.newton.wall_seconds;
    r.vi_seconds = report.vi.wall_seconds;
    r.total_seconds = r.newton_seconds + r.vi_seconds;
    r.newton_rate = r.newton_seconds > 0.0 ? total_dofs / r.newton_seconds : 0.0;
    r.vi_rate = r.vi_seconds > 0.0 ? total_dofs / r.vi_seconds : 0.0;
    r.total_rate = r.total_seconds > 0.0 ? total_dofs / r.total_seconds : 0.0;
    r.newton_snes = report.newton.snes_iterations;
    r.vi_snes = report.vi.snes_iterations;
    r.newton_ksp = report.newton.ksp_iterations;
    r.vi_ksp = report.vi.ksp_iterations;
    r.violation_percent_before = report.violations_before.percent;
    return r;
}

RunnerResult run_square_reservoir(const RunConfig& config) {
    validate_config(config);
    const auto dir = ensure_out_dir(config);
    const double eps = config.eps.value_or(1e-3);
    const double beta = config.beta.value_or(1e-8);
    const Mesh mesh = square_reservoir_mesh(100);

    RunnerResult result;
    std::string csv = csv_line({"formulation", "eps", "beta", "dofs", "violations_before",
                                "violation_percent_before", "violations_after", "newton_seconds",
                                "newton_snes", "newton_ksp", "vi_seconds", "vi_snes", "vi_ksp",
                                "total_seconds", "complementarity_residual"});

    for (const Formulation f : chosen_formulations(config)) {
        const ProblemSpec problem = square_reservoir_problem(mesh, eps, beta);
        Assembler assembler(problem, f, config.threads);
        const PipelineResult pr = vi_pipeline(assembler, config.newton, config.mcp);
        const int dofs = assembler.n_velocity_dofs() + assembler.n_pressure_dofs();
        const std::string mesh_id = "square-100";
        const std::string stem = "square_" + formulation_name(f) + "_eps" + format_full(eps);

        RunConfig annotated = config;
        annotated.eps = eps;
        annotated.beta = beta;
        const std::string json_path = (dir / (stem + ".json")).string();
        write_text_file(json_path, pipeline_summary_json(
                                       make_context(annotated, "square", f, mesh_id, assembler),
                                       pr.report));

        std::vector<VtuField> fields;
        fields.push_back(pressure_field(mesh, pr.unconstrained, "pressure_unconstrained"));
        fields.push_back(pressure_field(mesh, pr.solution, "pressure"));
        fields.push_back(velocity_field(mesh, pr.solution, "velocity"));
        fields.push_back(velocity_magnitude_field(mesh, pr.solution, "velocity_magnitude"));
        fields.push_back(
            velocity_difference_field(mesh, pr.solution, pr.unconstrained, "velocity_difference"));
        fields.push_back(boundary_tag_field(mesh));
        const std::string vtu_path = (dir / (stem + ".vtu")).string();
        write_vtu(mesh, fields, vtu_path);

        csv += csv_line({formulation_name(f), format_full(eps), format_full(beta),
                         std::to_string(dofs),
                         std::to_string(pr.report.violations_before.count),
                         format_full(pr.report.violations_before.percent),
                         std::to_string(pr.report.violations_after.count),
                         format_full(pr.report.newton.wall_seconds),
                         std::to_string(pr.report.newton.snes_iterations),
                         std::to_string(pr.report.newton.ksp_iterations),
                         format_full(pr.report.vi.wall_seconds),
                         std::to_string(pr.report.vi.snes_iterations),
                         std::to_string(pr.report.vi.ksp_iterations),
                         format_full(pr.report.total_wall_seconds),
                         format_full(pr.report.complementarity_residual)});

        result.records.push_back(make_scaling_record(mesh_id, f, dofs, pr.report));
        result.runs.push_back({f, mesh_id, dofs, eps, beta, 0, config.threads,
                               assembler.total_assembly_seconds(), pr.report});
        result.files.push_back(json_path);
        result.files.push_back(vtu_path);
    }

    const std::string csv_path = (dir / "square.csv").string();
    write_text_file(csv_path, csv);
    result.files.push_back(csv_path);
    return result;
}

RunnerResult run_circular_reservoir(const RunConfig& config) {
    validate_config(config);
    const auto dir = ensure_out_dir(config);
    const int max_level = config.mesh_level.value_or(4);
    const double beta = config.beta.value_or(1e-8);
    const double theta = config.theta.value_or(kPi / 3.0);

    RunnerResult result;
    std::string csv = csv_line({"formulation", "level", "dofs", "violation_percent_before",
                                "violations_after", "newton_seconds", "newton_snes", "newton_ksp",
                                "vi_seconds", "vi_snes", "vi_ksp", "newton_rate", "vi_rate",
                                "total_rate"});

    for (const Formulation f : chosen_formulations(config)) {
        for (int level = 1; level <= max_level; ++level) {
            const Mesh mesh = circular_reservoir_mesh(level);
            const ProblemSpec problem = circular_reservoir_problem(mesh, beta, theta);
            Assembler assembler(problem, f, config.threads);
            const PipelineResult pr = vi_pipeline(assembler, config.newton, config.mcp);
            const int dofs = assembler.n_velocity_dofs() + assembler.n_pressure_dofs();
            const std::string mesh_id = "annulus-L" + std::to_string(level);

            RunConfig annotated = config;
            annotated.beta = beta;
            annotated.theta = theta;
            annotated.mesh_level = level;
            const std::string stem = "annulus_" + formulation_name(f) + "_L" +
                                     std::to_string(level);
            const std::string json_path = (dir / (stem + ".json")).string();
            write_text_file(json_path,
                            pipeline_summary_json(
                                make_context(annotated, "annulus", f, mesh_id, assembler),
                                pr.report));
            result.files.push_back(json_path);

            if (level == max_level) {
                std::vector<VtuField> fields;
                fields.push_back(pressure_field(mesh, pr.solution, "pressure"));
                fields.push_back(velocity_field(mesh, pr.solution, "velocity"));
                fields.push_back(
                    velocity_magnitude_field(mesh, pr.solution, "velocity_magnitude"));
                fields.push_back(boundary_tag_field(mesh));
                const std::string vtu_path =
                    (dir / ("annulus_" + formulation_name(f) + ".vtu")).string();
                write_vtu(mesh, fields, vtu_path);
                result.files.push_back(vtu_path);
            }

            const ScalingRecord rec = make_scaling_record(mesh_id, f, dofs, pr.report);
            csv += csv_line({formulation_name(f), std::to_string(level), std::to_string(dofs),
                             format_full(pr.report.violations_before.percent),
                             std::to_string(pr.report.violations_after.count),
                             format_full(rec.newton_seconds), std::to_string(rec.newton_snes),
                             std::to_string(rec.newton_ksp), format_full(rec.vi_seconds),
                             std::to_string(rec.vi_snes), std::to_string(rec.vi_ksp),
                             format_full(rec.newton_rate), format_full(rec.vi_rate),
                             format_full(rec.total_rate)});
            result.records.push_back(rec);
            result.runs.push_back({f, mesh_id, dofs, 0.0, beta, level, config.threads,
                                   assembler.total_assembly_seconds(), pr.report});
        }
    }

    const std::string csv_path = (dir / "annulus.csv").string();
    write_text_file(csv_path, csv);
    result.files.push_back(csv_path);
    if (result.records.size() >= 2) {
        const auto reports = static_scaling_report(result.records, config.out_dir);
        result.files.insert(result.files.end(), reports.begin(), reports.end());
    }
    return result;
}

RunnerResult run_box3d(const RunConfig& config) {
    validate_config(config);
    const auto dir = ensure_out_dir(config);
    const int level = config.mesh_level.value_or(1);
    const double beta = config.beta.value_or(1e-8);
    const Mesh mesh = box3d_mesh(level);
    const ProblemSpec problem = box3d_problem(mesh, beta);

    std::vector<int> thread_counts;
    if (config.thread_sweep && config.threads > 1) thread_counts.push_back(1);
    thread_counts.push_back(config.threads);

    RunnerResult result;
    std::string csv = csv_line({"threads", "dofs", "assembly_seconds", "newton_seconds",
                                "newton_snes", "newton_ksp", "vi_seconds", "vi_snes", "vi_ksp",
                                "violation_percent_before", "violations_after",
                                "complementarity_residual"});

    for (const int threads : thread_counts) {
        Assembler assembler(problem, Formulation::RT0, threads);
        const PipelineResult pr = vi_pipeline(assembler, config.newton, config.mcp);
        const int dofs = assembler.n_velocity_dofs() + assembler.n_pressure_dofs();
        const std::string mesh_id = "box3d-L" + std::to_string(level);

        RunConfig annotated = config;
        annotated.beta = beta;
        annotated.mesh_level = level;
        annotated.threads = threads;
        ReportContext ctx =
            make_context(annotated, "box3d", Formulation::RT0, mesh_id, assembler);
        const std::string stem = "box3d_L" + std::to_string(level) + "_t" +
                                 std::to_string(threads);
        const std::string json_path = (dir / (stem + ".json")).string();
        write_text_file(json_path, pipeline_summary_json(ctx, pr.report));
        result.files.push_back(json_path);

        if (threads == config.threads) {
            std::vector<VtuField> fields;
            fields.push_back(pressure_field(mesh, pr.solution, "pressure"));
            fields.push_back(velocity_field(mesh, pr.solution, "velocity"));
            fields.push_back(velocity_magnitude_field(mesh, pr.solution, "velocity_magnitude"));
            fields.push_back(boundary_tag_field(mesh));
            const std::string vtu_path = (dir / ("box3d_L" + std::to_string(level) + ".vtu"))
                                             .string();
            write_vtu(mesh, fields, vtu_path);
            result.files.push_back(vtu_path);
        }

        csv += csv_line({std::to_string(threads), std::to_string(dofs),
                         format_full(assembler.total_assembly_seconds()),
                         format_full(pr.report.newton.wall_seconds),
                         std::to_string(pr.report.newton.snes_iterations),
                         std::to_string(pr.report.newton.ksp_iterations),
                         format_full(pr.report.vi.wall_seconds),
                         std::to_string(pr.report.vi.snes_iterations),
                         std::to_string(pr.report.vi.ksp_iterations),
                         format_full(pr.report.violations_before.percent),
                         std::to_string(pr.report.violations_after.count),
                         format_full(pr.report.complementarity_residual)});
        result.records.push_back(
            make_scaling_record(mesh_id + "-t" + std::to_string(threads), Formulation::RT0, dofs,
                                pr.report));
        result.runs.push_back({Formulation::RT0, mesh_id, dofs, 0.0, beta, level, threads,
                               assembler.total_assembly_seconds(), pr.report});
    }

    const std::string csv_path = (dir / "box3d.csv").string();
    write_text_file(csv_path, csv);
    result.files.push_back(csv_path);
    return result;
}

std::vector<std::string> static_scaling_report(const std::vector<ScalingRecord>& records,
                                               const std::string& out_dir) {
    if (records.size() < 2)
        throw std::invalid_argument("static scaling report needs at least 2 records");
    std::error_code ec;
    std::filesystem::create_directories(out_dir, ec);
    if (ec) throw std::runtime_error("cannot create output directory " + out_dir);
    const std::filesystem::path dir(out_dir);

    std::string csv = csv_line({"mesh", "formulation", "dofs", "newton_seconds", "vi_seconds",
                                "total_seconds", "newton_rate", "vi_rate", "total_rate",
                                "newton_snes", "vi_snes", "newton_ksp", "vi_ksp",
                                "violation_percent_before"});
    for (const ScalingRecord& r : records)
        csv += csv_line({r.mesh_id, formulation_name(r.formulation),
                         std::to_string(r.total_dofs), format_full(r.newton_seconds),
                         format_full(r.vi_seconds), format_full(r.total_seconds),
                         format_full(r.newton_rate), format_full(r.vi_rate),
                         format_full(r.total_rate), std::to_string(r.newton_snes),
                         std::to_string(r.vi_snes), std::to_string(r.newton_ksp),
                         std::to_string(r.vi_ksp), format_full(r.violation_percent_before)});

    // Two-panel plot data: dofs/s of the plain solve and of the VI phase,
    // one series per formulation.
    std::string plot = csv_line({"panel", "series", "dofs", "dofs_per_second"});
    for (const ScalingRecord& r : records)
        plot += csv_line({"unconstrained", formulation_name(r.formulation),
                          std::to_string(r.total_dofs), format_full(r.newton_rate)});
    for (const ScalingRecord& r : records)
        if (r.vi_seconds > 0.0)
            plot += csv_line({"vi", formulation_name(r.formulation),
                              std::to_string(r.total_dofs), format_full(r.vi_rate)});

    const std::string records_path = (dir / "scaling_records.csv").string();
    const std::string plot_path = (dir / "scaling_plot.csv").string();
    write_text_file(records_path, csv);
    write_text_file(plot_path, plot);
    return {records_path, plot_path};
}

}  // namespace vidarcy
