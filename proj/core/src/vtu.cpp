#include "vidarcy/vtu.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <stdexcept>

#include "vidarcy/report.hpp"

namespace vidarcy {

namespace {

void append_doubles(std::string& out, const std::vector<double>& v) {
    for (size_t i = 0; i < v.size(); ++i) {
        out += i % 6 == 0 ? "\n          " : " ";
        out += format_full(v[i]);
    }
    out += "\n        ";
}

void append_ints(std::string& out, const std::vector<int>& v) {
    for (size_t i = 0; i < v.size(); ++i) {
        out += i % 12 == 0 ? "\n          " : " ";
        out += std::to_string(v[i]);
    }
    out += "\n        ";
}

void append_data_arrays(std::string& out, const Mesh& mesh, const std::vector<VtuField>& fields,
                        bool point_data) {
    const char* section = point_data ? "PointData" : "CellData";
    out += "      <";
    out += section;
    out += ">\n";
    for (const VtuField& f : fields) {
        if (f.point_data != point_data) continue;
        const size_t expect =
            static_cast<size_t>(f.components) * (point_data ? mesh.n_vertices() : mesh.n_cells());
        if (f.values.size() != expect)
            throw std::invalid_argument("field " + f.name + " has " +
                                        std::to_string(f.values.size()) + " values, expected " +
                                        std::to_string(expect));
        if (f.components != 1 && f.components != 3)
            throw std::invalid_argument("field " + f.name + " must have 1 or 3 components");
        out += "        <DataArray type=\"Float64\" Name=\"" + f.name +
               "\" NumberOfComponents=\"" + std::to_string(f.components) +
               "\" format=\"ascii\">";
        append_doubles(out, f.values);
        out += "</DataArray>\n";
    }
    out += "      </";
    out += section;
    out += ">\n";
}

// Returns the position just past `token`, which must exist at or after `from`.
size_t find_past(const std::string& text, const std::string& token, size_t from,
                 const std::string& path) {
    const size_t at = text.find(token, from);
    if (at == std::string::npos)
        throw std::runtime_error(path + ": missing '" + token + "'");
    return at + token.size();
}

std::string attribute(const std::string& tag, const std::string& name) {
    const std::string key = name + "=\"";
    const size_t at = tag.find(key);
    if (at == std::string::npos) return "";
    const size_t end = tag.find('"', at + key.size());
    return tag.substr(at + key.size(), end - at - key.size());
}

}  // namespace

void write_vtu(const Mesh& mesh, const std::vector<VtuField>& fields, const std::string& path) {
    const int npc = mesh.vertices_per_cell();
    const int vtk_type = mesh.dim == 2 ? 5 : 10;  // triangle / tetrahedron

    std::string out;
    out.reserve(1 << 20);
    out += "<?xml version=\"1.0\"?>\n";
    out += "<VTKFile type=\"UnstructuredGrid\" version=\"0.1\" byte_order=\"LittleEndian\">\n";
    out += "  <UnstructuredGrid>\n";
    out += "    <Piece NumberOfPoints=\"" + std::to_string(mesh.n_vertices()) +
           "\" NumberOfCells=\"" + std::to_string(mesh.n_cells()) + "\">\n";

    out += "      <Points>\n"
           "        <DataArray type=\"Float64\" NumberOfComponents=\"3\" format=\"ascii\">";
    std::vector<double> coords;
    coords.reserve(3 * mesh.n_vertices());
    for (const Vec3& v : mesh.vertices) {
        coords.push_back(v.x);
        coords.push_back(v.y);
        coords.push_back(v.z);
    }
    append_doubles(out, coords);
    out += "</DataArray>\n      </Points>\n";

    out += "      <Cells>\n"
           "        <DataArray type=\"Int32\" Name=\"connectivity\" format=\"ascii\">";
    std::vector<int> ints;
    ints.reserve(static_cast<size_t>(npc) * mesh.n_cells());
    for (const auto& c : mesh.cells)
        for (int l = 0; l < npc; ++l) ints.push_back(c[l]);
    append_ints(out, ints);
    out += "</DataArray>\n"
           "        <DataArray type=\"Int32\" Name=\"offsets\" format=\"ascii\">";
    ints.clear();
    for (int c = 1; c <= mesh.n_cells(); ++c) ints.push_back(c * npc);
    append_ints(out, ints);
    out += "</DataArray>\n"
           "        <DataArray type=\"UInt8\" Name=\"types\" format=\"ascii\">";
    ints.assign(mesh.n_cells(), vtk_type);
    append_ints(out, ints);
    out += "</DataArray>\n      </Cells>\n";

    append_data_arrays(out, mesh, fields, true);
    append_data_arrays(out, mesh, fields, false);

    out += "    </Piece>\n  </UnstructuredGrid>\n</VTKFile>\n";
    write_text_file(path, out);
}

VtuData read_vtu(const std::string& path) {
    const std::string text = read_text_file(path);
    VtuData data;

    bool point_section = false;
    size_t cursor = 0;
    while (true) {
        const size_t open = text.find('<', cursor);
        if (open == std::string::npos) break;
        const size_t close = text.find('>', open);
        if (close == std::string::npos) throw std::runtime_error(path + ": unterminated tag");
        const std::string tag = text.substr(open + 1, close - open - 1);
        cursor = close + 1;
        if (tag.rfind("PointData", 0) == 0) point_section = true;
        if (tag.rfind("CellData", 0) == 0) point_section = false;
        if (tag.rfind("DataArray", 0) != 0) continue;

        const size_t end = text.find("</DataArray>", cursor);
        if (end == std::string::npos) throw std::runtime_error(path + ": unterminated array");
        const std::string body = text.substr(cursor, end - cursor);
        cursor = find_past(text, "</DataArray>", end, path);

        std::vector<double> values;
        size_t at = 0;
        while (at < body.size()) {
            while (at < body.size() && std::isspace(static_cast<unsigned char>(body[at]))) ++at;
            if (at >= body.size()) break;
            size_t used = 0;
            values.push_back(std::stod(body.substr(at), &used));
            at += used;
        }

        const std::string name = attribute(tag, "Name");
        if (name == "connectivity" || name == "offsets" || name == "types") {
            std::vector<int>& out = name == "connectivity" ? data.connectivity
                                    : name == "offsets"    ? data.offsets
                                                           : data.types;
            out.reserve(values.size());
            for (double v : values) out.push_back(static_cast<int>(std::lround(v)));
        } else if (name.empty()) {
            data.points.reserve(values.size() / 3);
            for (size_t i = 0; i + 2 < values.size(); i += 3)
                data.points.push_back({values[i], values[i + 1], values[i + 2]});
        } else {
            VtuField f;
            f.name = name;
            const std::string comps = attribute(tag, "NumberOfComponents");
            f.components = comps.empty() ? 1 : std::stoi(comps);
            f.point_data = point_section;
            f.values = std::move(values);
            data.fields.push_back(std::move(f));
        }
    }
    return data;
}

namespace {

std::array<double, 4> centroid_bary(int dim) {
    const double w = 1.0 / (dim + 1);
    return dim == 2 ? std::array<double, 4>{w, w, w, 0.0} : std::array<double, 4>{w, w, w, w};
}

// Velocity vectors per entity (cells for flux dofs, vertices for nodal).
std::vector<Vec3> velocity_vectors(const Mesh& mesh, const FieldSolution& s, bool& point_data) {
    std::vector<Vec3> out;
    if (s.formulation == Formulation::RT0) {
        point_data = false;
        const DofMap udofs = make_dofmap(mesh, SpaceKind::RT0Flux);
        const auto bary = centroid_bary(mesh.dim);
        out.reserve(mesh.n_cells());
        for (int c = 0; c < mesh.n_cells(); ++c)
            out.push_back(evaluate_velocity(mesh, udofs, s, c, bary));
    } else {
        point_data = true;
        out.reserve(mesh.n_vertices());
        for (int v = 0; v < mesh.n_vertices(); ++v)
            out.push_back({s.u[static_cast<size_t>(v) * mesh.dim],
                           s.u[static_cast<size_t>(v) * mesh.dim + 1],
                           mesh.dim == 3 ? s.u[static_cast<size_t>(v) * mesh.dim + 2] : 0.0});
    }
    return out;
}

}  // namespace

VtuField pressure_field(const Mesh& mesh, const FieldSolution& s, const std::string& name) {
    VtuField f;
    f.name = name;
    f.point_data = s.formulation == Formulation::VMS;
    f.values = s.p;
    const size_t expect = f.point_data ? mesh.n_vertices() : mesh.n_cells();
    if (f.values.size() != expect)
        throw std::invalid_argument("pressure length does not match the mesh");
    return f;
}

VtuField velocity_field(const Mesh& mesh, const FieldSolution& s, const std::string& name) {
    VtuField f;
    f.name = name;
    f.components = 3;
    const std::vector<Vec3> vecs = velocity_vectors(mesh, s, f.point_data);
    f.values.reserve(3 * vecs.size());
    for (const Vec3& v : vecs) {
        f.values.push_back(v.x);
        f.values.push_back(v.y);
        f.values.push_back(v.z);
    }
    return f;
}

VtuField velocity_magnitude_field(const Mesh& mesh, const FieldSolution& s,
                                  const std::string& name) {
    VtuField f;
    f.name = name;
    const std::vector<Vec3> vecs = velocity_vectors(mesh, s, f.point_data);
    f.values.reserve(vecs.size());
    for (const Vec3& v : vecs) f.values.push_back(norm(v));
    return f;
}

VtuField velocity_difference_field(const Mesh& mesh, const FieldSolution& a,
                                   const FieldSolution& b, const std::string& name) {
    if (a.formulation != b.formulation)
        throw std::invalid_argument("velocity difference needs matching formulations");
    VtuField f;
    f.name = name;
    bool pd_b = false;
    const std::vector<Vec3> va = velocity_vectors(mesh, a, f.point_data);
    const std::vector<Vec3> vb = velocity_vectors(mesh, b, pd_b);
    f.values.reserve(va.size());
    for (size_t i = 0; i < va.size(); ++i) f.values.push_back(norm(va[i] - vb[i]));
    return f;
}

VtuField boundary_tag_field(const Mesh& mesh) {
    VtuField f;
    f.name = "boundary_tag";
    f.values.assign(mesh.n_cells(), 0.0);
    for (const Facet& facet : mesh.facets) {
        if (facet.cells[1] != -1) continue;
        double& slot = f.values[facet.cells[0]];
        slot = std::max(slot, static_cast<double>(facet.tag));
    }
    return f;
}

}  // namespace vidarcy
