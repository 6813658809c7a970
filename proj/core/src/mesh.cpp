#include "vidarcy/mesh.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <stdexcept>

namespace vidarcy {

namespace {

double signed_measure(const Mesh& mesh, const std::array<int, 4>& cell) {
    const Vec3& a = mesh.vertices[cell[0]];
    const Vec3& b = mesh.vertices[cell[1]];
    const Vec3& c = mesh.vertices[cell[2]];
    if (mesh.dim == 2) {
        const Vec3 ab = b - a, ac = c - a;
        return 0.5 * (ab.x * ac.y - ab.y * ac.x);
    }
    const Vec3& d = mesh.vertices[cell[3]];
    return dot(cross(b - a, c - a), d - a) / 6.0;
}

}  // namespace

void Mesh::finalize() {
    if (dim != 2 && dim != 3) throw std::invalid_argument("mesh dimension must be 2 or 3");
    const int nvc = vertices_per_cell();

    for (auto& cell : cells) {
        for (int i = 0; i < nvc; ++i)
            if (cell[i] < 0 || cell[i] >= n_vertices())
                throw std::invalid_argument("cell references vertex out of range");
        double s = signed_measure(*this, cell);
        if (s < 0.0) {
            std::swap(cell[nvc - 2], cell[nvc - 1]);
            s = -s;
        }
        if (!(s > 0.0)) throw std::invalid_argument("degenerate cell (zero measure)");
    }

    facets.clear();
    cell_facets.assign(cells.size(), {-1, -1, -1, -1});
    std::map<std::array<int, 3>, int> lookup;

    for (int c = 0; c < n_cells(); ++c) {
        for (int lf = 0; lf < facets_per_cell(); ++lf) {
            std::array<int, 3> key{-1, -1, -1};
            int k = 0;
            for (int v = 0; v < nvc; ++v)
                if (v != lf) key[k++] = cells[c][v];
            std::sort(key.begin(), key.begin() + k);

            auto it = lookup.find(key);
            if (it == lookup.end()) {
                Facet f;
                f.vertices = key;
                f.cells[0] = c;
                f.local_index[0] = lf;
                lookup.emplace(key, n_facets());
                cell_facets[c][lf] = n_facets();
                facets.push_back(f);
            } else {
                Facet& f = facets[it->second];
                if (f.cells[1] != -1)
                    throw std::invalid_argument("non-manifold mesh: facet shared by > 2 cells");
                f.cells[1] = c;
                f.local_index[1] = lf;
                cell_facets[c][lf] = it->second;
            }
        }
    }
    // cells are visited in increasing order, so cells[0] < cells[1] already.
}

double Mesh::cell_measure(int cell) const { return signed_measure(*this, cells[cell]); }

Vec3 Mesh::cell_centroid(int cell) const {
    Vec3 c;
    const int nvc = vertices_per_cell();
    for (int i = 0; i < nvc; ++i) c += vertices[cells[cell][i]];
    return c * (1.0 / nvc);
}

std::array<Vec3, 3> Mesh::facet_vertex_coords(int facet) const {
    const Facet& f = facets[facet];
    std::array<Vec3, 3> xs;
    for (int i = 0; i < dim; ++i) xs[i] = vertices[f.vertices[i]];
    return xs;
}

double Mesh::facet_measure(int facet) const {
    const auto xs = facet_vertex_coords(facet);
    if (dim == 2) return norm(xs[1] - xs[0]);
    return 0.5 * norm(cross(xs[1] - xs[0], xs[2] - xs[0]));
}

Vec3 Mesh::facet_centroid(int facet) const {
    const auto xs = facet_vertex_coords(facet);
    Vec3 c;
    for (int i = 0; i < dim; ++i) c += xs[i];
    return c * (1.0 / dim);
}

Vec3 Mesh::facet_outward_normal(int facet) const {
    const auto xs = facet_vertex_coords(facet);
    Vec3 n;
    if (dim == 2) {
        const Vec3 t = xs[1] - xs[0];
        n = {t.y, -t.x, 0.0};
    } else {
        n = cross(xs[1] - xs[0], xs[2] - xs[0]);
    }
    const double len = norm(n);
    if (!(len > 0.0)) throw std::runtime_error("degenerate facet (zero measure)");
    n = n * (1.0 / len);
    const Vec3 out = facet_centroid(facet) - cell_centroid(facets[facet].cells[0]);
    if (dot(n, out) < 0.0) n = n * -1.0;
    return n;
}

std::vector<int> Mesh::facets_with_tag(int tag) const {
    std::vector<int> out;
    for (int f = 0; f < n_facets(); ++f)
        if (facets[f].tag == tag) out.push_back(f);
    return out;
}

int Mesh::tag_id(const std::string& name) const {
    auto it = boundary_tags.find(name);
    if (it == boundary_tags.end()) throw std::invalid_argument("unknown boundary tag: " + name);
    return it->second;
}

double Mesh::total_measure() const {
    double s = 0.0;
    for (int c = 0; c < n_cells(); ++c) s += cell_measure(c);
    return s;
}

int facet_orientation(const Mesh& mesh, int cell, int local_facet) {
    const int f = mesh.cell_facets[cell][local_facet];
    const Facet& facet = mesh.facets[f];
    const int base = (facet.cells[0] == cell) ? 1 : -1;
    return base * mesh.orientation_sign();
}

Mesh generate_structured_triangles(int nx, int ny, double x0, double y0, double x1, double y1,
                                   TriangleSplit split) {
    if (nx < 1 || ny < 1) throw std::invalid_argument("structured mesh needs nx, ny >= 1");
    if (!(x1 > x0) || !(y1 > y0))
        throw std::invalid_argument("invalid domain: extent must have positive size");

    Mesh mesh;
    mesh.dim = 2;
    mesh.vertices.reserve((nx + 1) * (ny + 1));
    const double hx = (x1 - x0) / nx, hy = (y1 - y0) / ny;
    for (int j = 0; j <= ny; ++j)
        for (int i = 0; i <= nx; ++i)
            mesh.vertices.push_back({x0 + i * hx, y0 + j * hy, 0.0});

    auto vid = [&](int i, int j) { return j * (nx + 1) + i; };
    mesh.cells.reserve(2 * nx * ny);
    for (int j = 0; j < ny; ++j) {
        for (int i = 0; i < nx; ++i) {
            const int v00 = vid(i, j), v10 = vid(i + 1, j);
            const int v01 = vid(i, j + 1), v11 = vid(i + 1, j + 1);
            // The cut direction matters for strongly anisotropic tensors:
            // edges aligned with the high-permeability axis temper the
            // pressure oscillations the box constraints later clean up,
            // while a cross-cut mesh amplifies them.
            const bool nwse = split == TriangleSplit::NwSe ||
                              (split == TriangleSplit::Alternate && (i + j) % 2 == 0);
            if (nwse) {
                mesh.cells.push_back({v00, v10, v01, -1});
                mesh.cells.push_back({v10, v11, v01, -1});
            } else {
                mesh.cells.push_back({v00, v10, v11, -1});
                mesh.cells.push_back({v00, v11, v01, -1});
            }
        }
    }
    mesh.finalize();

    mesh.boundary_tags = {{"left", 1}, {"right", 2}, {"bottom", 3}, {"top", 4}};
    const double tol = 1e-9 * std::max(x1 - x0, y1 - y0);
    for (auto& f : mesh.facets) {
        if (f.cells[1] != -1) continue;
        const Vec3 a = mesh.vertices[f.vertices[0]], b = mesh.vertices[f.vertices[1]];
        if (std::abs(a.x - x0) < tol && std::abs(b.x - x0) < tol)
            f.tag = 1;
        else if (std::abs(a.x - x1) < tol && std::abs(b.x - x1) < tol)
            f.tag = 2;
        else if (std::abs(a.y - y0) < tol && std::abs(b.y - y0) < tol)
            f.tag = 3;
        else if (std::abs(a.y - y1) < tol && std::abs(b.y - y1) < tol)
            f.tag = 4;
        else
            throw std::runtime_error("untagged boundary facet in structured mesh");
    }
    return mesh;
}

Mesh generate_annulus(double r_inner, double r_outer, int n_radial, int n_angular) {
    if (!(r_inner > 0.0) || !(r_outer > r_inner))
        throw std::invalid_argument("annulus needs 0 < r_inner < r_outer");
    if (n_radial < 1 || n_angular < 3)
        throw std::invalid_argument("annulus needs n_radial >= 1 and n_angular >= 3");

    Mesh mesh;
    mesh.dim = 2;
    const double ratio = std::pow(r_outer / r_inner, 1.0 / n_radial);
    std::vector<double> radii(n_radial + 1);
    for (int k = 0; k <= n_radial; ++k) radii[k] = r_inner * std::pow(ratio, k);
    radii.back() = r_outer;

    mesh.vertices.reserve((n_radial + 1) * n_angular);
    for (int k = 0; k <= n_radial; ++k) {
        for (int j = 0; j < n_angular; ++j) {
            const double th = 2.0 * kPi * j / n_angular;
            mesh.vertices.push_back({radii[k] * std::cos(th), radii[k] * std::sin(th), 0.0});
        }
    }

    auto vid = [&](int k, int j) { return k * n_angular + (j % n_angular); };
    mesh.cells.reserve(2 * n_radial * n_angular);
    for (int k = 0; k < n_radial; ++k) {
        for (int j = 0; j < n_angular; ++j) {
            const int a = vid(k, j), b = vid(k + 1, j);
            const int c = vid(k + 1, j + 1), d = vid(k, j + 1);
            mesh.cells.push_back({a, b, c, -1});
            mesh.cells.push_back({a, c, d, -1});
        }
    }
    mesh.finalize();

    mesh.boundary_tags = {{"inner", 1}, {"outer", 2}};
    const double tol = 1e-9 * r_outer;
    for (auto& f : mesh.facets) {
        if (f.cells[1] != -1) continue;
        const Vec3 a = mesh.vertices[f.vertices[0]], b = mesh.vertices[f.vertices[1]];
        const double ra = std::hypot(a.x, a.y), rb = std::hypot(b.x, b.y);
        if (std::abs(ra - r_inner) < tol && std::abs(rb - r_inner) < tol)
            f.tag = 1;
        else if (std::abs(ra - r_outer) < tol && std::abs(rb - r_outer) < tol)
            f.tag = 2;
        else
            throw std::runtime_error("untagged boundary facet in annulus mesh");
    }
    return mesh;
}

Mesh generate_structured_tets(int nx, int ny, int nz, double x0, double y0, double z0, double x1,
                              double y1, double z1) {
    if (nx < 1 || ny < 1 || nz < 1) throw std::invalid_argument("box mesh needs nx, ny, nz >= 1");
    if (!(x1 > x0) || !(y1 > y0) || !(z1 > z0))
        throw std::invalid_argument("invalid domain: box must have positive size");

    Mesh mesh;
    mesh.dim = 3;
    const double hx = (x1 - x0) / nx, hy = (y1 - y0) / ny, hz = (z1 - z0) / nz;
    mesh.vertices.reserve((nx + 1) * (ny + 1) * (nz + 1));
    for (int k = 0; k <= nz; ++k)
        for (int j = 0; j <= ny; ++j)
            for (int i = 0; i <= nx; ++i)
                mesh.vertices.push_back({x0 + i * hx, y0 + j * hy, z0 + k * hz});

    auto vid = [&](int i, int j, int k) { return (k * (ny + 1) + j) * (nx + 1) + i; };
    // Six tetrahedra around the cube diagonal 000 -> 111 (corner id = i + 2j + 4k).
    static const int kuhn[6][4] = {{0, 1, 3, 7}, {0, 1, 5, 7}, {0, 2, 3, 7},
                                   {0, 2, 6, 7}, {0, 4, 5, 7}, {0, 4, 6, 7}};
    mesh.cells.reserve(6 * nx * ny * nz);
    for (int k = 0; k < nz; ++k) {
        for (int j = 0; j < ny; ++j) {
            for (int i = 0; i < nx; ++i) {
                int corner[8];
                for (int c = 0; c < 8; ++c)
                    corner[c] = vid(i + (c & 1), j + ((c >> 1) & 1), k + ((c >> 2) & 1));
                for (const auto& t : kuhn)
                    mesh.cells.push_back({corner[t[0]], corner[t[1]], corner[t[2]], corner[t[3]]});
            }
        }
    }
    mesh.finalize();  // repairs any negative Kuhn orientations

    mesh.boundary_tags = {{"xmin", 1}, {"xmax", 2}, {"ymin", 3}, {"ymax", 4}, {"zmin", 5}, {"zmax", 6}};
    const double tol = 1e-9 * std::max({x1 - x0, y1 - y0, z1 - z0});
    auto all_on = [&](const Facet& f, int axis, double value) {
        for (int v = 0; v < 3; ++v)
            if (std::abs(mesh.vertices[f.vertices[v]][axis] - value) >= tol) return false;
        return true;
    };
    for (auto& f : mesh.facets) {
        if (f.cells[1] != -1) continue;
        if (all_on(f, 0, x0))
            f.tag = 1;
        else if (all_on(f, 0, x1))
            f.tag = 2;
        else if (all_on(f, 1, y0))
            f.tag = 3;
        else if (all_on(f, 1, y1))
            f.tag = 4;
        else if (all_on(f, 2, z0))
            f.tag = 5;
        else if (all_on(f, 2, z1))
            f.tag = 6;
        else
            throw std::runtime_error("untagged boundary facet in box mesh");
    }
    return mesh;
}

}  // namespace vidarcy
