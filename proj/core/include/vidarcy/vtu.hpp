#pragma once

#include <string>
#include <vector>

#include "vidarcy/mesh.hpp"
#include "vidarcy/spaces.hpp"

namespace vidarcy {

// One named array attached to cells or points. `values` is entity-major
// (entity * components + c); components is 1 for scalars, 3 for vectors.
struct VtuField {
    std::string name;
    int components = 1;
    bool point_data = false;
    std::vector<double> values;
};

// XML unstructured-grid writer (ASCII, triangles and tetrahedra).  Values are
// written in shortest-round-trip form.  I/O failures throw with the path.
void write_vtu(const Mesh& mesh, const std::vector<VtuField>& fields, const std::string& path);

// Minimal reader for files produced by write_vtu (self-checks and tests).
struct VtuData {
    std::vector<Vec3> points;
    std::vector<int> connectivity;
    std::vector<int> offsets;
    std::vector<int> types;
    std::vector<VtuField> fields;  // point_data flag preserved
};
VtuData read_vtu(const std::string& path);

// --- Field builders ---------------------------------------------------------
// P0 pressure and per-cell velocity become cell data; the nodal formulation's
// fields become point data.  Velocity vectors are the cell-centroid values for
// facet-flux solutions (equal to the cell average, the field being linear).

VtuField pressure_field(const Mesh& mesh, const FieldSolution& s, const std::string& name);
VtuField velocity_field(const Mesh& mesh, const FieldSolution& s, const std::string& name);
VtuField velocity_magnitude_field(const Mesh& mesh, const FieldSolution& s,
                                  const std::string& name);
// |u_a - u_b| per entity; both solutions must share the formulation.
VtuField velocity_difference_field(const Mesh& mesh, const FieldSolution& a,
                                   const FieldSolution& b, const std::string& name);
// Max boundary tag among a cell's boundary facets, 0 for interior cells.
VtuField boundary_tag_field(const Mesh& mesh);

}  // namespace vidarcy
