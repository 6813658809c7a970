#pragma once

#include <array>
#include <map>
#include <string>
#include <vector>

#include "vidarcy/geometry.hpp"

namespace vidarcy {

/// @file mesh.hpp
/// Conforming simplicial meshes (triangles in 2D, tetrahedra in 3D) with a
/// global facet table.  Every facet carries a global orientation used by the
/// facet-flux degrees of freedom: the facet's reference direction is the
/// outward normal of its lower-indexed adjacent cell, so the two cells sharing
/// a facet see opposite orientation signs and boundary facets see +1.

struct Facet {
    std::array<int, 3> vertices{-1, -1, -1};  // canonical (ascending); [2] = -1 in 2D
    std::array<int, 2> cells{-1, -1};         // cells[0] < cells[1]; cells[1] = -1 on boundary
    std::array<int, 2> local_index{-1, -1};   // local facet number within each adjacent cell
    int tag = -1;                             // boundary tag id; -1 for interior facets
};

class Mesh {
  public:
    int dim = 2;
    std::vector<Vec3> vertices;
    std::vector<std::array<int, 4>> cells;        // vertex ids; [3] = -1 in 2D
    std::vector<Facet> facets;                    // filled by finalize()
    std::vector<std::array<int, 4>> cell_facets;  // per cell: local facet -> facet id
    std::map<std::string, int> boundary_tags;     // tag name -> tag id

    int n_vertices() const { return static_cast<int>(vertices.size()); }
    int n_cells() const { return static_cast<int>(cells.size()); }
    int n_facets() const { return static_cast<int>(facets.size()); }
    int vertices_per_cell() const { return dim + 1; }
    int facets_per_cell() const { return dim + 1; }

    // Builds the facet table, repairs cell vertex ordering to positive measure
    // and rejects degenerate cells.  Must be called once after vertices/cells
    // are populated and before any geometric query.
    void finalize();

    double cell_measure(int cell) const;
    Vec3 cell_centroid(int cell) const;
    double facet_measure(int facet) const;
    Vec3 facet_centroid(int facet) const;
    // Unit normal pointing out of cells[0]; multiplied by the convention sign
    // this is the reference direction of the facet's flux dof.
    Vec3 facet_outward_normal(int facet) const;
    std::array<Vec3, 3> facet_vertex_coords(int facet) const;

    int tag_of_facet(int facet) const { return facets[facet].tag; }
    std::vector<int> facets_with_tag(int tag) const;
    int tag_id(const std::string& name) const;

    // Testing hook: reverses the global orientation convention on every facet.
    // Flux dof values change sign but reconstructed fields must not.
    void flip_facet_signs() { orientation_sign_ = -orientation_sign_; }
    int orientation_sign() const { return orientation_sign_; }

    double total_measure() const;

  private:
    int orientation_sign_ = 1;
};

// Orientation sign of `cell`'s outward normal on its `local_facet` relative to
// the facet's global reference direction: +1 for the lower-indexed adjacent
// cell (and for boundary facets), -1 for the other cell.
int facet_orientation(const Mesh& mesh, int cell, int local_facet);

// Which diagonal splits each quad of a structured triangulation.
enum class TriangleSplit {
    SwNe,      // v00-v11, "/" shaped
    NwSe,      // v10-v01, "\" shaped
    Alternate, // parity-alternating, symmetric under x<->y reflection
};

// Structured triangulation of the axis-aligned rectangle [x0,x1] x [y0,y1]
// with nx x ny quads, each cut along `split`.  Boundary tags:
// left=1, right=2, bottom=3, top=4.
Mesh generate_structured_triangles(int nx, int ny, double x0, double y0, double x1, double y1,
                                   TriangleSplit split = TriangleSplit::NwSe);

// Annulus r_inner < r < r_outer meshed by n_radial layers (radii geometrically
// graded so the layers refine toward the inner hole) and n_angular sectors.
// Boundary tags: inner=1, outer=2.
Mesh generate_annulus(double r_inner, double r_outer, int n_radial, int n_angular);

// Structured tetrahedral mesh of the box [x0,x1] x [y0,y1] x [z0,z1]:
// nx x ny x nz cubes, six tetrahedra each, sharing the cube's main diagonal so
// neighbouring cubes match face-to-face.  Boundary tags: xmin=1, xmax=2,
// ymin=3, ymax=4, zmin=5, zmax=6.
Mesh generate_structured_tets(int nx, int ny, int nz, double x0, double y0, double z0, double x1,
                              double y1, double z1);

}  // namespace vidarcy
