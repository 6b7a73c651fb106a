#include "davinci/builtins.hpp"

#include <algorithm>
#include <cmath>
#include <map>

#include "davinci/errors.hpp"

namespace davinci {

SurfaceMap map_from_coords(const std::vector<Eigen::Vector3d>& coords,
                           const std::vector<std::pair<VertexId, VertexId>>& edges) {
    int n = static_cast<int>(coords.size());
    Eigen::Vector3d centroid = Eigen::Vector3d::Zero();
    for (const auto& p : coords) centroid += p;
    centroid /= std::max(1, n);

    std::vector<std::vector<std::pair<double, DartId>>> at(n);
    for (size_t k = 0; k < edges.size(); ++k) {
        auto [a, b] = edges[k];
        for (int side = 0; side < 2; ++side) {
            VertexId v = side == 0 ? a : b;
            VertexId w = side == 0 ? b : a;
            Eigen::Vector3d normal = (coords[v] - centroid).normalized();
            Eigen::Vector3d ref = std::abs(normal.z()) < 0.9 ? Eigen::Vector3d::UnitZ()
                                                             : Eigen::Vector3d::UnitX();
            Eigen::Vector3d u = (ref - ref.dot(normal) * normal).normalized();
            Eigen::Vector3d vv = normal.cross(u);
            Eigen::Vector3d d = coords[w] - coords[v];
            double angle = std::atan2(d.dot(vv), d.dot(u));
            at[v].push_back({angle, static_cast<DartId>(2 * k + side)});
        }
    }
    std::vector<std::vector<DartId>> rotations(n);
    for (int v = 0; v < n; ++v) {
        std::sort(at[v].begin(), at[v].end());
        for (auto& [angle, dart] : at[v]) rotations[v].push_back(dart);
    }
    return SurfaceMap::build(n, edges, rotations);
}

namespace {

std::vector<std::pair<VertexId, VertexId>> edges_by_distance(
    const std::vector<Eigen::Vector3d>& coords, double target, double tol = 1e-6) {
    std::vector<std::pair<VertexId, VertexId>> edges;
    for (size_t i = 0; i < coords.size(); ++i)
        for (size_t j = i + 1; j < coords.size(); ++j)
            if (std::abs((coords[i] - coords[j]).norm() - target) < tol)
                edges.emplace_back(static_cast<VertexId>(i), static_cast<VertexId>(j));
    return edges;
}

}  // namespace

Embedding3D make_tetrahedron() {
    std::vector<Eigen::Vector3d> coords = {
        {1, 1, 1}, {1, -1, -1}, {-1, 1, -1}, {-1, -1, 1}};
    auto edges = edges_by_distance(coords, 2.0 * std::sqrt(2.0));
    return {map_from_coords(coords, edges), coords};
}

Embedding3D make_cube() {
    std::vector<Eigen::Vector3d> coords;
    for (int x : {-1, 1})
        for (int y : {-1, 1})
            for (int z : {-1, 1}) coords.push_back({double(x), double(y), double(z)});
    auto edges = edges_by_distance(coords, 2.0);
    return {map_from_coords(coords, edges), coords};
}

Embedding3D make_icosahedron() {
    const double phi = (1.0 + std::sqrt(5.0)) / 2.0;
    std::vector<Eigen::Vector3d> coords;
    for (double s : {-1.0, 1.0})
        for (double t : {-phi, phi}) {
            coords.push_back({0, s, t});
            coords.push_back({s, t, 0});
            coords.push_back({t, 0, s});
        }
    auto edges = edges_by_distance(coords, 2.0);
    return {map_from_coords(coords, edges), coords};
}

Embedding3D make_dodecahedron() {
    const double phi = (1.0 + std::sqrt(5.0)) / 2.0;
    std::vector<Eigen::Vector3d> coords;
    for (double x : {-1.0, 1.0})
        for (double y : {-1.0, 1.0})
            for (double z : {-1.0, 1.0}) coords.push_back({x, y, z});
    for (double s : {-1.0, 1.0})
        for (double t : {-phi, phi}) {
            coords.push_back({0, s / phi, t});
            coords.push_back({s / phi, t, 0});
            coords.push_back({t, 0, s / phi});
        }
    auto edges = edges_by_distance(coords, 2.0 / phi);
    return {map_from_coords(coords, edges), coords};
}

Embedding3D make_truncated_icosahedron() {
    Embedding3D icosa = make_icosahedron();
    const auto& ic = icosa.coords;

    // One vertex per directed icosahedron edge, at the third point.
    std::map<std::pair<int, int>, int> id_of;
    std::vector<Eigen::Vector3d> coords;
    auto vertex = [&](int u, int v) {
        auto [it, inserted] = id_of.try_emplace({u, v}, static_cast<int>(coords.size()));
        if (inserted) coords.push_back(ic[u] + (ic[v] - ic[u]) / 3.0);
        return it->second;
    };

    std::vector<std::pair<VertexId, VertexId>> edges;
    for (const auto& [u, v] : icosa.map.edges()) {
        edges.emplace_back(vertex(u, v), vertex(v, u));  // hexagon-hexagon remnant
    }
    // Pentagon edges: consecutive neighbors in each vertex's rotation.
    for (VertexId u = 0; u < icosa.map.vertex_count(); ++u) {
        const auto& darts = icosa.map.darts_at(u);
        for (size_t i = 0; i < darts.size(); ++i) {
            VertexId a = icosa.map.dart_vertex(icosa.map.involution(darts[i]));
            VertexId b = icosa.map.dart_vertex(
                icosa.map.involution(darts[(i + 1) % darts.size()]));
            edges.emplace_back(vertex(u, a), vertex(u, b));
        }
    }
    return {map_from_coords(coords, edges), coords};
}

Embedding3D make_goldberg_2_0() {
    Embedding3D dodeca = make_dodecahedron();
    const auto& dc = dodeca.coords;
    const double shrink = 0.7;

    std::vector<Eigen::Vector3d> coords = dc;  // original 20 vertices stay
    std::map<std::pair<int, int>, int> corner_id;  // (face, vertex) -> new id

    auto walks = dodeca.map.face_walks();
    std::vector<Eigen::Vector3d> face_center(walks.size(), Eigen::Vector3d::Zero());
    for (size_t f = 0; f < walks.size(); ++f) {
        for (DartId d : walks[f]) face_center[f] += dc[dodeca.map.dart_vertex(d)];
        face_center[f] /= static_cast<double>(walks[f].size());
    }
    auto corner = [&](int f, int v) {
        auto [it, inserted] = corner_id.try_emplace({f, v}, static_cast<int>(coords.size()));
        if (inserted)
            coords.push_back(face_center[f] + shrink * (dc[v] - face_center[f]));
        return it->second;
    };

    std::vector<std::pair<VertexId, VertexId>> edges;
    // Shrunk pentagon rings.
    for (size_t f = 0; f < walks.size(); ++f) {
        int k = static_cast<int>(walks[f].size());
        for (int i = 0; i < k; ++i) {
            int v1 = dodeca.map.dart_vertex(walks[f][i]);
            int v2 = dodeca.map.dart_vertex(walks[f][(i + 1) % k]);
            edges.emplace_back(corner(static_cast<int>(f), v1), corner(static_cast<int>(f), v2));
        }
    }
    // Spokes from each original vertex to its three face corners.
    const auto& face_of = dodeca.map.face_of_dart();
    for (VertexId v = 0; v < dodeca.map.vertex_count(); ++v)
        for (DartId d : dodeca.map.darts_at(v))
            edges.emplace_back(v, corner(face_of[d], v));

    return {map_from_coords(coords, edges), coords};
}

std::optional<Embedding3D> builtin_embedding(const std::string& name) {
    if (name == "cube") return make_cube();
    if (name == "tetra") return make_tetrahedron();
    if (name == "icosa") return make_icosahedron();
    if (name == "dodeca") return make_dodecahedron();
    if (name == "trunc-icosa") return make_truncated_icosahedron();
    if (name == "goldberg-2-0") return make_goldberg_2_0();
    return std::nullopt;
}

Graph graph_of(const Embedding3D& e) {
    Graph g;
    g.vertex_count = e.map.vertex_count();
    g.edges = e.map.edges();
    return g;
}

}  // namespace davinci
