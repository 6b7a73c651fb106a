#pragma once

#include <cstdint>
#include <map>
#include <vector>

namespace davinci {

using VertexId = int;
using DartId = int;
using EdgeId = int;

// Half of an edge. Edge k owns darts 2k (at the first endpoint) and
// 2k+1 (at the second endpoint); the involution is dart id XOR 1.
struct Dart {
    DartId id = -1;
    VertexId vertex = -1;
};

// Rotation-system representation of a graph cellularly embedded on a
// closed orientable surface. rotation(d) is the next dart
// counterclockwise around the vertex of d; faces are traced with the
// fixed convention next = rotation(involution(d)). Immutable after
// construction and safe to share across threads.
class SurfaceMap {
  public:
    // edges[k] = (v1, v2); rotations[v] lists v's incident darts once
    // each, in counterclockwise cyclic order. Throws MalformedRotation
    // or DanglingEdge on bad input. Multi-edges and loops are allowed.
    static SurfaceMap build(int vertex_count,
                            const std::vector<std::pair<VertexId, VertexId>>& edges,
                            const std::vector<std::vector<DartId>>& rotations);

    int vertex_count() const { return vertex_count_; }
    int edge_count() const { return static_cast<int>(darts_.size()) / 2; }
    int face_count() const { return face_count_; }
    int dart_count() const { return static_cast<int>(darts_.size()); }

    int euler_characteristic() const { return vertex_count_ - edge_count() + face_count_; }

    // (2 - chi) / 2 for a connected map. Throws ConnectivityRequired on
    // disconnected input and OddCharacteristic when chi is odd.
    int genus() const;

    bool connected() const;

    DartId involution(DartId d) const { return d ^ 1; }
    DartId rotation(DartId d) const { return rotation_[d]; }
    DartId rotation_inverse(DartId d) const { return rotation_inv_[d]; }
    DartId face_next(DartId d) const { return rotation_[d ^ 1]; }

    VertexId dart_vertex(DartId d) const { return darts_[d].vertex; }
    EdgeId dart_edge(DartId d) const { return d / 2; }
    VertexId edge_endpoint(EdgeId e, int side) const { return darts_[2 * e + side].vertex; }

    int degree(VertexId v) const { return static_cast<int>(vertex_darts_[v].size()); }
    const std::vector<DartId>& darts_at(VertexId v) const { return vertex_darts_[v]; }

    // face_of[d] = face orbit index; orbits numbered by lowest dart id.
    const std::vector<int>& face_of_dart() const { return face_of_; }

    // One boundary walk per face, as dart sequences in trace order.
    std::vector<std::vector<DartId>> face_walks() const;

    // Face degrees indexed by face id.
    std::vector<int> face_degrees() const;

    const std::vector<std::pair<VertexId, VertexId>>& edges() const { return edge_list_; }
    const std::vector<std::vector<DartId>>& rotations() const { return vertex_darts_; }

  private:
    int vertex_count_ = 0;
    int face_count_ = 0;
    std::vector<Dart> darts_;
    std::vector<DartId> rotation_;
    std::vector<DartId> rotation_inv_;
    std::vector<std::vector<DartId>> vertex_darts_;  // cyclic order per vertex
    std::vector<int> face_of_;
    std::vector<std::pair<VertexId, VertexId>> edge_list_;
};

// Face-degree histogram with the named triangle/dodecagon counts.
struct FaceCensus {
    std::map<int, int> histogram;  // face degree -> count
    int triangles = 0;             // histogram[3]
    int dodecagons = 0;            // histogram[12]

    int total_faces() const;
    long long degree_sum() const;
};

int euler_characteristic(const SurfaceMap& map);
FaceCensus face_census(const SurfaceMap& map);
int genus(const SurfaceMap& map);

}  // namespace davinci
