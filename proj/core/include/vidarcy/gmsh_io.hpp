#pragma once

#include <string>

#include "vidarcy/mesh.hpp"

namespace vidarcy {

// Reads an ASCII Gmsh MSH 2.2 file.  Triangles become cells in 2D, tetrahedra
// in 3D; lower-dimensional elements carry boundary tags (first element tag).
// Malformed input throws std::runtime_error naming the offending line.
Mesh read_msh(const std::string& path);

// Writes the mesh in the same dialect read_msh accepts: cells plus one
// boundary element per tagged facet, physical names from the tag registry.
void write_msh(const Mesh& mesh, const std::string& path);

}  // namespace vidarcy
