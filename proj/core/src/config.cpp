#include "vidarcy/config.hpp"

#include <cmath>
#include <stdexcept>

#include "vidarcy/geometry.hpp"

namespace vidarcy {

namespace {

std::string trim(const std::string& s) {
    size_t a = s.find_first_not_of(" \t\r");
    if (a == std::string::npos) return "";
    size_t b = s.find_last_not_of(" \t\r");
    return s.substr(a, b - a + 1);
}

double parse_double(const std::string& key, const std::string& value) {
    try {
        size_t used = 0;
        const double v = std::stod(value, &used);
        if (used != value.size()) throw std::invalid_argument("");
        return v;
    } catch (const std::exception&) {
        throw std::invalid_argument("config key '" + key + "': '" + value + "' is not a number");
    }
}

int parse_int(const std::string& key, const std::string& value) {
    try {
        size_t used = 0;
        const int v = std::stoi(value, &used);
        if (used != value.size()) throw std::invalid_argument("");
        return v;
    } catch (const std::exception&) {
        throw std::invalid_argument("config key '" + key + "': '" + value + "' is not an integer");
    }
}

bool parse_bool(const std::string& key, const std::string& value) {
    if (value == "true" || value == "1" || value == "on" || value == "yes") return true;
    if (value == "false" || value == "0" || value == "off" || value == "no") return false;
    throw std::invalid_argument("config key '" + key + "': '" + value + "' is not a boolean");
}

void require(bool ok, const std::string& message) {
    if (!ok) throw std::invalid_argument(message);
}

}  // namespace

std::map<std::string, std::string> parse_ini(const std::string& text) {
    std::map<std::string, std::string> kv;
    std::string section = "run";
    int line_no = 0;
    size_t at = 0;
    while (at <= text.size()) {
        const size_t nl = text.find('\n', at);
        std::string line = text.substr(at, nl == std::string::npos ? std::string::npos : nl - at);
        at = nl == std::string::npos ? text.size() + 1 : nl + 1;
        ++line_no;

        const size_t comment = line.find_first_of("#;");
        if (comment != std::string::npos) line.erase(comment);
        line = trim(line);
        if (line.empty()) continue;

        if (line.front() == '[') {
            if (line.back() != ']')
                throw std::invalid_argument("config line " + std::to_string(line_no) +
                                            ": unterminated section header");
            section = trim(line.substr(1, line.size() - 2));
            if (section.empty())
                throw std::invalid_argument("config line " + std::to_string(line_no) +
                                            ": empty section name");
            continue;
        }
        const size_t eq = line.find('=');
        if (eq == std::string::npos)
            throw std::invalid_argument("config line " + std::to_string(line_no) +
                                        ": expected 'key = value'");
        const std::string key = trim(line.substr(0, eq));
        const std::string value = trim(line.substr(eq + 1));
        if (key.empty())
            throw std::invalid_argument("config line " + std::to_string(line_no) + ": empty key");
        kv[section + "." + key] = value;
    }
    return kv;
}

RunConfig config_from_map(const std::map<std::string, std::string>& kv) {
    RunConfig c;
    for (const auto& [key, value] : kv) {
        if (key == "run.preset") c.preset = value;
        else if (key == "run.formulation") c.formulation = parse_formulation(value);
        else if (key == "run.eps") c.eps = parse_double(key, value);
        else if (key == "run.beta") c.beta = parse_double(key, value);
        else if (key == "run.theta") c.theta = parse_double(key, value);
        else if (key == "run.mesh_level") c.mesh_level = parse_int(key, value);
        else if (key == "run.threads") c.threads = parse_int(key, value);
        else if (key == "run.thread_sweep") c.thread_sweep = parse_bool(key, value);
        else if (key == "run.out_dir") c.out_dir = value;
        else if (key == "newton.rtol") c.newton.rtol = parse_double(key, value);
        else if (key == "newton.atol") c.newton.atol = parse_double(key, value);
        else if (key == "newton.linear_rtol") c.newton.linear_rtol = parse_double(key, value);
        else if (key == "newton.max_iterations") c.newton.max_iterations = parse_int(key, value);
        else if (key == "newton.gmres_restart") c.newton.gmres_restart = parse_int(key, value);
        else if (key == "newton.gmres_max_iterations")
            c.newton.gmres_max_iterations = parse_int(key, value);
        else if (key == "mcp.atol") c.mcp.atol = parse_double(key, value);
        else if (key == "mcp.linear_rtol") c.mcp.linear_rtol = parse_double(key, value);
        else if (key == "mcp.max_iterations") c.mcp.max_iterations = parse_int(key, value);
        else if (key == "mcp.stagnation_window") c.mcp.stagnation_window = parse_int(key, value);
        else if (key == "mcp.gmres_restart") c.mcp.gmres_restart = parse_int(key, value);
        else if (key == "mcp.gmres_max_iterations")
            c.mcp.gmres_max_iterations = parse_int(key, value);
        else
            throw std::invalid_argument("unknown config key '" + key + "'");
    }
    validate_config(c);
    return c;
}

void validate_config(const RunConfig& c) {
    require(c.preset == "hconv" || c.preset == "square" || c.preset == "annulus" ||
                c.preset == "box3d",
            "unknown preset '" + c.preset + "' (expected hconv, square, annulus or box3d)");
    require(c.threads >= 1 && c.threads <= 256, "run.threads must be in [1, 256]");
    require(c.out_dir.size() > 0, "run.out_dir must not be empty");
    if (c.eps) require(*c.eps > 0.0 && *c.eps <= 1.0, "run.eps must be in (0, 1]");
    if (c.beta) require(*c.beta >= 0.0 && *c.beta <= 1.0, "run.beta must be in [0, 1]");
    if (c.theta) require(*c.theta >= 0.0 && *c.theta < kPi, "run.theta must be in [0, pi)");
    if (c.mesh_level) {
        if (c.preset == "annulus")
            require(*c.mesh_level >= 1 && *c.mesh_level <= 7,
                    "run.mesh_level must be in [1, 7] for the annulus preset");
        if (c.preset == "box3d")
            require(*c.mesh_level >= 1 && *c.mesh_level <= 5,
                    "run.mesh_level must be in [1, 5] for the box3d preset");
    }
    if (c.preset == "box3d" && c.formulation && *c.formulation == Formulation::VMS)
        throw std::invalid_argument("the box3d preset supports only the rt0 formulation");
    require(c.newton.rtol > 0.0 && c.newton.rtol < 1.0, "newton.rtol must be in (0, 1)");
    require(c.newton.atol >= 0.0, "newton.atol must be >= 0");
    require(c.newton.max_iterations >= 1, "newton.max_iterations must be >= 1");
    require(c.newton.gmres_restart >= 5, "newton.gmres_restart must be >= 5");
    require(c.newton.gmres_max_iterations >= 1, "newton.gmres_max_iterations must be >= 1");
    require(c.mcp.max_iterations >= 1, "mcp.max_iterations must be >= 1");
    require(c.mcp.stagnation_window >= 2, "mcp.stagnation_window must be >= 2");
    require(c.mcp.gmres_restart >= 5, "mcp.gmres_restart must be >= 5");
    require(c.mcp.linear_rtol > 0.0 && c.mcp.linear_rtol < 1.0,
            "mcp.linear_rtol must be in (0, 1)");
}

std::string formulation_name(Formulation f) {
    return f == Formulation::RT0 ? "rt0" : "vms";
}

Formulation parse_formulation(const std::string& name) {
    if (name == "rt0" || name == "RT0") return Formulation::RT0;
    if (name == "vms" || name == "VMS") return Formulation::VMS;
    throw std::invalid_argument("unknown formulation '" + name + "' (expected rt0 or vms)");
}

}  // namespace vidarcy
