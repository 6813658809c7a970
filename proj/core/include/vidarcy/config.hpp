#pragma once

#include <map>
#include <optional>
#include <string>

#include "vidarcy/newton.hpp"
#include "vidarcy/semismooth.hpp"

namespace vidarcy {

// One benchmark invocation.  Optional parameters fall back to per-preset
// defaults; an unset formulation makes a runner cover its preset's default
// set (both formulations except for the 3D preset, which is facet-flux only).
struct RunConfig {
    std::string preset = "square";  // hconv | square | annulus | box3d
    std::optional<Formulation> formulation;
    std::optional<double> eps;        // square: anisotropy ratio, (0, 1]
    std::optional<double> beta;       // viscosity pressure coefficient [1/Pa]
    std::optional<double> theta;      // annulus: permeability rotation [rad]
    std::optional<int> mesh_level;    // annulus: max level 1..7; box3d: 1..5
    int threads = 1;
    bool thread_sweep = false;        // box3d: repeat at 1 and `threads` threads
    std::string out_dir = "out";
    NewtonOptions newton;
    SemismoothOptions mcp;
};

// "key = value" lines under [section] headers flatten to "section.key";
// lines before any header belong to [run].  '#' and ';' start comments.
// Malformed lines throw with their line number.
std::map<std::string, std::string> parse_ini(const std::string& text);

// Builds a config from flattened keys; unknown keys and unparsable values
// throw.  The result is validated.  Key list in the README.
RunConfig config_from_map(const std::map<std::string, std::string>& kv);

// Range checks (throws std::invalid_argument naming the offending key).
void validate_config(const RunConfig& config);

std::string formulation_name(Formulation f);
Formulation parse_formulation(const std::string& name);

}  // namespace vidarcy
