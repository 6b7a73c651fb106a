#pragma once

#include <algorithm>
#include <random>
#include <vector>

#include "davinci/surface_map.hpp"

namespace davinci::testing {

// Random connected multigraph with a random rotation system.
inline SurfaceMap random_map(std::mt19937& rng, int max_darts = 200) {
    std::uniform_int_distribution<int> nv_dist(2, 12);
    int nv = nv_dist(rng);
    std::vector<std::pair<VertexId, VertexId>> edges;
    // Spanning chain keeps it connected, then random extras.
    for (int v = 1; v < nv; ++v)
        edges.emplace_back(std::uniform_int_distribution<int>(0, v - 1)(rng), v);
    int extra = std::uniform_int_distribution<int>(0, max_darts / 2 - nv)(rng);
    for (int i = 0; i < extra; ++i) {
        int a = std::uniform_int_distribution<int>(0, nv - 1)(rng);
        int b = std::uniform_int_distribution<int>(0, nv - 1)(rng);
        if (a == b) continue;  // keep corners of the test well-defined
        edges.emplace_back(a, b);
    }
    std::vector<std::vector<DartId>> rotations(nv);
    for (size_t k = 0; k < edges.size(); ++k) {
        rotations[edges[k].first].push_back(static_cast<DartId>(2 * k));
        rotations[edges[k].second].push_back(static_cast<DartId>(2 * k + 1));
    }
    for (auto& cycle : rotations) std::shuffle(cycle.begin(), cycle.end(), rng);
    return SurfaceMap::build(nv, edges, rotations);
}

}  // namespace davinci::testing
