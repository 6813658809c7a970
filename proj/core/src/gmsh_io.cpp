#include "vidarcy/gmsh_io.hpp"

#include <algorithm>
#include <fstream>
#include <map>
#include <sstream>
#include <stdexcept>

namespace vidarcy {

namespace {

struct LineReader {
    std::ifstream in;
    std::string path;
    long line_no = 0;

    explicit LineReader(const std::string& p) : in(p), path(p) {
        if (!in) throw std::runtime_error("cannot open mesh file: " + p);
    }

    std::string next() {
        std::string line;
        if (!std::getline(in, line)) fail("unexpected end of file");
        ++line_no;
        while (!line.empty() && (line.back() == '\r' || line.back() == '\n')) line.pop_back();
        return line;
    }

    [[noreturn]] void fail(const std::string& what) const {
        throw std::runtime_error(path + ":" + std::to_string(line_no) + ": " + what);
    }
};

}  // namespace

Mesh read_msh(const std::string& path) {
    LineReader r(path);

    if (r.next() != "$MeshFormat") r.fail("expected $MeshFormat");
    {
        std::istringstream fmt(r.next());
        double version = 0.0;
        int file_type = -1, data_size = 0;
        fmt >> version >> file_type >> data_size;
        if (!fmt || version < 2.0 || version >= 3.0)
            r.fail("unsupported MSH version (need 2.x ASCII)");
        if (file_type != 0) r.fail("binary MSH files are not supported");
    }
    if (r.next() != "$EndMeshFormat") r.fail("expected $EndMeshFormat");

    Mesh mesh;
    std::map<long, int> node_index;
    std::map<int, std::string> physical_names;
    struct BoundaryElem {
        std::array<int, 3> verts{-1, -1, -1};
        int n = 0;
        int tag = -1;
        long line;
    };
    std::vector<BoundaryElem> boundary_elems;
    std::vector<std::array<int, 4>> tris, tets;
    bool saw_nodes = false, saw_elements = false;

    while (saw_nodes == false || saw_elements == false) {
        std::string section = r.next();
        if (section.empty()) continue;
        if (section == "$PhysicalNames") {
            long count = 0;
            {
                std::istringstream ss(r.next());
                if (!(ss >> count)) r.fail("bad $PhysicalNames count");
            }
            for (long i = 0; i < count; ++i) {
                std::istringstream ss(r.next());
                int pd = 0, id = 0;
                std::string name;
                if (!(ss >> pd >> id)) r.fail("bad physical name entry");
                std::getline(ss, name);
                const auto a = name.find('"'), b = name.rfind('"');
                if (a != std::string::npos && b > a) name = name.substr(a + 1, b - a - 1);
                physical_names[id] = name;
            }
            if (r.next() != "$EndPhysicalNames") r.fail("expected $EndPhysicalNames");
        } else if (section == "$Nodes") {
            long count = 0;
            {
                std::istringstream ss(r.next());
                if (!(ss >> count) || count < 0) r.fail("bad $Nodes count");
            }
            mesh.vertices.reserve(count);
            for (long i = 0; i < count; ++i) {
                std::istringstream ss(r.next());
                long id = 0;
                Vec3 x;
                if (!(ss >> id >> x.x >> x.y >> x.z)) r.fail("bad node entry");
                if (node_index.count(id)) r.fail("duplicate node id");
                node_index[id] = static_cast<int>(mesh.vertices.size());
                mesh.vertices.push_back(x);
            }
            if (r.next() != "$EndNodes") r.fail("expected $EndNodes");
            saw_nodes = true;
        } else if (section == "$Elements") {
            long count = 0;
            {
                std::istringstream ss(r.next());
                if (!(ss >> count) || count < 0) r.fail("bad $Elements count");
            }
            for (long i = 0; i < count; ++i) {
                std::istringstream ss(r.next());
                long id = 0;
                int type = 0, ntags = 0;
                if (!(ss >> id >> type >> ntags)) r.fail("bad element entry");
                int first_tag = -1;
                for (int t = 0; t < ntags; ++t) {
                    int tag = 0;
                    if (!(ss >> tag)) r.fail("bad element tag list");
                    if (t == 0) first_tag = tag;
                }
                int nn = 0;
                switch (type) {
                    case 1: nn = 2; break;
                    case 2: nn = 3; break;
                    case 4: nn = 4; break;
                    case 15: nn = 1; break;
                    default: r.fail("unsupported element type " + std::to_string(type));
                }
                std::array<int, 4> verts{-1, -1, -1, -1};
                for (int v = 0; v < nn; ++v) {
                    long node = 0;
                    if (!(ss >> node)) r.fail("bad element connectivity");
                    auto it = node_index.find(node);
                    if (it == node_index.end()) r.fail("element references unknown node");
                    verts[v] = it->second;
                }
                if (type == 2) tris.push_back(verts);
                if (type == 4) tets.push_back(verts);
                if (type == 1) boundary_elems.push_back({{verts[0], verts[1], -1}, 2, first_tag, r.line_no});
                if (type == 2)
                    boundary_elems.push_back({{verts[0], verts[1], verts[2]}, 3, first_tag, r.line_no});
            }
            if (r.next() != "$EndElements") r.fail("expected $EndElements");
            saw_elements = true;
        } else if (section[0] == '$') {
            // skip unknown section
            const std::string end = "$End" + section.substr(1);
            while (r.next() != end) {
            }
        } else {
            r.fail("unexpected content outside a section");
        }
    }

    if (!tets.empty()) {
        mesh.dim = 3;
        mesh.cells = std::move(tets);
    } else if (!tris.empty()) {
        mesh.dim = 2;
        mesh.cells = std::move(tris);
    } else {
        throw std::runtime_error(path + ": no triangles or tetrahedra found");
    }
    mesh.finalize();

    // Attach boundary tags: match lower-dimensional elements to facets.
    std::map<std::array<int, 3>, int> facet_lookup;
    for (int f = 0; f < mesh.n_facets(); ++f) facet_lookup[mesh.facets[f].vertices] = f;
    for (const auto& be : boundary_elems) {
        if (be.n != mesh.dim) continue;  // cell-dimensional duplicates (2D triangles)
        std::array<int, 3> key = be.verts;
        std::sort(key.begin(), key.begin() + be.n);
        auto it = facet_lookup.find(key);
        if (it == facet_lookup.end())
            throw std::runtime_error(path + ":" + std::to_string(be.line) +
                                     ": boundary element does not match any mesh facet");
        mesh.facets[it->second].tag = be.tag;
    }

    for (const auto& [id, name] : physical_names) mesh.boundary_tags[name] = id;
    return mesh;
}

void write_msh(const Mesh& mesh, const std::string& path) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot open for writing: " + path);
    out.precision(17);

    out << "$MeshFormat\n2.2 0 8\n$EndMeshFormat\n";

    if (!mesh.boundary_tags.empty()) {
        out << "$PhysicalNames\n" << mesh.boundary_tags.size() << "\n";
        for (const auto& [name, id] : mesh.boundary_tags)
            out << (mesh.dim - 1) << " " << id << " \"" << name << "\"\n";
        out << "$EndPhysicalNames\n";
    }

    out << "$Nodes\n" << mesh.n_vertices() << "\n";
    for (int v = 0; v < mesh.n_vertices(); ++v) {
        const Vec3& x = mesh.vertices[v];
        out << (v + 1) << " " << x.x << " " << x.y << " " << x.z << "\n";
    }
    out << "$EndNodes\n";

    std::vector<int> tagged;
    for (int f = 0; f < mesh.n_facets(); ++f)
        if (mesh.facets[f].tag >= 0) tagged.push_back(f);

    out << "$Elements\n" << (mesh.n_cells() + tagged.size()) << "\n";
    long id = 1;
    const int facet_type = (mesh.dim == 2) ? 1 : 2;
    for (int f : tagged) {
        const Facet& fe = mesh.facets[f];
        out << id++ << " " << facet_type << " 2 " << fe.tag << " " << fe.tag;
        for (int v = 0; v < mesh.dim; ++v) out << " " << (fe.vertices[v] + 1);
        out << "\n";
    }
    const int cell_type = (mesh.dim == 2) ? 2 : 4;
    for (int c = 0; c < mesh.n_cells(); ++c) {
        out << id++ << " " << cell_type << " 2 0 0";
        for (int v = 0; v <= mesh.dim; ++v) out << " " << (mesh.cells[c][v] + 1);
        out << "\n";
    }
    out << "$EndElements\n";
    if (!out) throw std::runtime_error("write failed: " + path);
}

}  // namespace vidarcy
