#pragma once

#include <optional>
#include <string>

#include "davinci/embed_defect.hpp"
#include "davinci/rod_model.hpp"
#include "davinci/surface_map.hpp"

namespace davinci {

// Builds a sphere map from convex-position coordinates: darts at each
// vertex are sorted counterclockwise around the outward direction.
SurfaceMap map_from_coords(const std::vector<Eigen::Vector3d>& coords,
                           const std::vector<std::pair<VertexId, VertexId>>& edges);

Embedding3D make_tetrahedron();
Embedding3D make_cube();
Embedding3D make_icosahedron();
Embedding3D make_dodecahedron();

// Truncated icosahedron (60 vertices, 90 edges, 12 pentagons + 20
// hexagons) built by cutting each icosahedron edge at its third points.
Embedding3D make_truncated_icosahedron();

// Goldberg GP(2,0): the chamfered dodecahedron (80 vertices, 120 edges,
// 12 pentagons + 30 hexagons).
Embedding3D make_goldberg_2_0();

// Named builtin embeddings: "cube", "tetra", "trunc-icosa",
// "goldberg-2-0", "icosa", "dodeca". Returns nullopt for unknown names.
std::optional<Embedding3D> builtin_embedding(const std::string& name);

Graph graph_of(const Embedding3D& e);

}  // namespace davinci
