#include "davinci/surface_map.hpp"

#include <algorithm>
#include <string>

#include "davinci/errors.hpp"

namespace davinci {

SurfaceMap SurfaceMap::build(int vertex_count,
                             const std::vector<std::pair<VertexId, VertexId>>& edges,
                             const std::vector<std::vector<DartId>>& rotations) {
    SurfaceMap m;
    m.vertex_count_ = vertex_count;
    m.edge_list_ = edges;
    m.darts_.resize(2 * edges.size());
    for (size_t k = 0; k < edges.size(); ++k) {
        auto [a, b] = edges[k];
        if (a < 0 || a >= vertex_count || b < 0 || b >= vertex_count)
            throw Error(ErrorCode::DanglingEdge,
                        "edge " + std::to_string(k) + " references undeclared vertex");
        m.darts_[2 * k] = {static_cast<DartId>(2 * k), a};
        m.darts_[2 * k + 1] = {static_cast<DartId>(2 * k + 1), b};
    }

    if (static_cast<int>(rotations.size()) != vertex_count)
        throw Error(ErrorCode::MalformedRotation, "rotation list count != vertex count");

    int n_darts = static_cast<int>(m.darts_.size());
    m.rotation_.assign(n_darts, -1);
    m.rotation_inv_.assign(n_darts, -1);
    m.vertex_darts_.assign(vertex_count, {});
    std::vector<char> seen(n_darts, 0);

    for (VertexId v = 0; v < vertex_count; ++v) {
        const auto& cycle = rotations[v];
        for (DartId d : cycle) {
            if (d < 0 || d >= n_darts)
                throw Error(ErrorCode::MalformedRotation,
                            "vertex " + std::to_string(v) + " lists unknown dart " + std::to_string(d));
            if (m.darts_[d].vertex != v)
                throw Error(ErrorCode::MalformedRotation,
                            "dart " + std::to_string(d) + " does not emanate from vertex " + std::to_string(v));
            if (seen[d])
                throw Error(ErrorCode::MalformedRotation, "dart " + std::to_string(d) + " listed twice");
            seen[d] = 1;
        }
        for (size_t i = 0; i < cycle.size(); ++i) {
            DartId d = cycle[i];
            DartId next = cycle[(i + 1) % cycle.size()];
            m.rotation_[d] = next;
            m.rotation_inv_[next] = d;
        }
        m.vertex_darts_[v] = cycle;
    }
    for (DartId d = 0; d < n_darts; ++d)
        if (!seen[d])
            throw Error(ErrorCode::MalformedRotation,
                        "dart " + std::to_string(d) + " missing from its vertex rotation");

    // Trace face orbits of rotation . involution; orbit ids follow the
    // lowest dart id they contain.
    m.face_of_.assign(n_darts, -1);
    int face = 0;
    for (DartId d = 0; d < n_darts; ++d) {
        if (m.face_of_[d] != -1) continue;
        DartId cur = d;
        do {
            m.face_of_[cur] = face;
            cur = m.rotation_[cur ^ 1];
        } while (cur != d);
        ++face;
    }
    m.face_count_ = face;
    return m;
}

bool SurfaceMap::connected() const {
    if (vertex_count_ == 0) return true;
    std::vector<char> visited(vertex_count_, 0);
    std::vector<VertexId> stack = {0};
    visited[0] = 1;
    int reached = 1;
    while (!stack.empty()) {
        VertexId v = stack.back();
        stack.pop_back();
        for (DartId d : vertex_darts_[v]) {
            VertexId w = darts_[d ^ 1].vertex;
            if (!visited[w]) {
                visited[w] = 1;
                ++reached;
                stack.push_back(w);
            }
        }
    }
    return reached == vertex_count_;
}

int SurfaceMap::genus() const {
    if (!connected())
        throw Error(ErrorCode::ConnectivityRequired, "genus requires a connected map");
    int chi = euler_characteristic();
    if ((2 - chi) % 2 != 0)
        throw Error(ErrorCode::OddCharacteristic,
                    "chi = " + std::to_string(chi) + " is not that of a closed orientable surface");
    return (2 - chi) / 2;
}

std::vector<std::vector<DartId>> SurfaceMap::face_walks() const {
    std::vector<std::vector<DartId>> walks(face_count_);
    std::vector<char> done(darts_.size(), 0);
    for (DartId d = 0; d < static_cast<int>(darts_.size()); ++d) {
        if (done[d]) continue;
        std::vector<DartId> walk;
        DartId cur = d;
        do {
            done[cur] = 1;
            walk.push_back(cur);
            cur = rotation_[cur ^ 1];
        } while (cur != d);
        walks[face_of_[d]] = std::move(walk);
    }
    return walks;
}

std::vector<int> SurfaceMap::face_degrees() const {
    std::vector<int> deg(face_count_, 0);
    for (DartId d = 0; d < static_cast<int>(darts_.size()); ++d) ++deg[face_of_[d]];
    return deg;
}

int FaceCensus::total_faces() const {
    int n = 0;
    for (auto& [deg, count] : histogram) n += count;
    return n;
}

long long FaceCensus::degree_sum() const {
    long long s = 0;
    for (auto& [deg, count] : histogram) s += static_cast<long long>(deg) * count;
    return s;
}

int euler_characteristic(const SurfaceMap& map) { return map.euler_characteristic(); }

FaceCensus face_census(const SurfaceMap& map) {
    FaceCensus census;
    for (int deg : map.face_degrees()) ++census.histogram[deg];
    auto it3 = census.histogram.find(3);
    auto it12 = census.histogram.find(12);
    census.triangles = it3 == census.histogram.end() ? 0 : it3->second;
    census.dodecagons = it12 == census.histogram.end() ? 0 : it12->second;
    return census;
}

int genus(const SurfaceMap& map) { return map.genus(); }

}  // namespace davinci
