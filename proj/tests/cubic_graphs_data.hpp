#pragma once

// All connected cubic simple graphs with 4..10 vertices, one per
// isomorphism class (1 + 2 + 5 + 19). Regenerable by exhaustive
// enumeration with isomorphism rejection; the class counts per order
// are pinned in the tests.
#include <utility>
#include <vector>

namespace davinci::testing {

struct CubicGraphData {
    int vertex_count;
    std::vector<std::pair<int, int>> edges;
};

inline const std::vector<CubicGraphData>& all_cubic_graphs_upto_10() {
    static const std::vector<CubicGraphData> graphs = {
    // n=4: 1 connected cubic graphs
        {4, {{0,1},{0,2},{0,3},{1,2},{1,3},{2,3},}},
    // n=6: 2 connected cubic graphs
        {6, {{0,1},{0,2},{0,3},{1,2},{1,4},{2,5},{3,4},{3,5},{4,5},}},
        {6, {{0,1},{0,2},{0,3},{1,4},{1,5},{2,4},{2,5},{3,4},{3,5},}},
    // n=8: 5 connected cubic graphs
        {8, {{0,1},{0,2},{0,3},{1,2},{1,3},{2,4},{3,5},{4,6},{4,7},{5,6},{5,7},{6,7},}},
        {8, {{0,1},{0,2},{0,3},{1,2},{1,4},{2,5},{3,4},{3,6},{4,7},{5,6},{5,7},{6,7},}},
        {8, {{0,1},{0,2},{0,3},{1,2},{1,4},{2,5},{3,6},{3,7},{4,6},{4,7},{5,6},{5,7},}},
        {8, {{0,1},{0,2},{0,3},{1,4},{1,5},{2,4},{2,6},{3,5},{3,6},{4,7},{5,7},{6,7},}},
        {8, {{0,1},{0,2},{0,3},{1,4},{1,5},{2,4},{2,6},{3,5},{3,7},{4,7},{5,6},{6,7},}},
    // n=10: 19 connected cubic graphs
        {10, {{0,1},{0,2},{0,3},{1,2},{1,3},{2,4},{3,4},{4,5},{5,6},{5,7},{6,8},{6,9},{7,8},{7,9},{8,9},}},
        {10, {{0,1},{0,2},{0,3},{1,2},{1,3},{2,4},{3,5},{4,5},{4,6},{5,7},{6,8},{6,9},{7,8},{7,9},{8,9},}},
        {10, {{0,1},{0,2},{0,3},{1,2},{1,3},{2,4},{3,5},{4,6},{4,7},{5,6},{5,8},{6,9},{7,8},{7,9},{8,9},}},
        {10, {{0,1},{0,2},{0,3},{1,2},{1,3},{2,4},{3,5},{4,6},{4,7},{5,8},{5,9},{6,7},{6,8},{7,9},{8,9},}},
        {10, {{0,1},{0,2},{0,3},{1,2},{1,3},{2,4},{3,5},{4,6},{4,7},{5,8},{5,9},{6,8},{6,9},{7,8},{7,9},}},
        {10, {{0,1},{0,2},{0,3},{1,2},{1,4},{2,5},{3,4},{3,6},{4,7},{5,6},{5,8},{6,9},{7,8},{7,9},{8,9},}},
        {10, {{0,1},{0,2},{0,3},{1,2},{1,4},{2,5},{3,4},{3,6},{4,7},{5,8},{5,9},{6,7},{6,8},{7,9},{8,9},}},
        {10, {{0,1},{0,2},{0,3},{1,2},{1,4},{2,5},{3,4},{3,6},{4,7},{5,8},{5,9},{6,8},{6,9},{7,8},{7,9},}},
        {10, {{0,1},{0,2},{0,3},{1,2},{1,4},{2,5},{3,6},{3,7},{4,6},{4,7},{5,8},{5,9},{6,8},{7,9},{8,9},}},
        {10, {{0,1},{0,2},{0,3},{1,2},{1,4},{2,5},{3,6},{3,7},{4,6},{4,8},{5,6},{5,9},{7,8},{7,9},{8,9},}},
        {10, {{0,1},{0,2},{0,3},{1,2},{1,4},{2,5},{3,6},{3,7},{4,6},{4,8},{5,7},{5,8},{6,9},{7,9},{8,9},}},
        {10, {{0,1},{0,2},{0,3},{1,2},{1,4},{2,5},{3,6},{3,7},{4,6},{4,8},{5,7},{5,9},{6,8},{7,9},{8,9},}},
        {10, {{0,1},{0,2},{0,3},{1,2},{1,4},{2,5},{3,6},{3,7},{4,6},{4,8},{5,7},{5,9},{6,9},{7,8},{8,9},}},
        {10, {{0,1},{0,2},{0,3},{1,4},{1,5},{2,4},{2,5},{3,6},{3,7},{4,8},{5,9},{6,8},{6,9},{7,8},{7,9},}},
        {10, {{0,1},{0,2},{0,3},{1,4},{1,5},{2,4},{2,6},{3,5},{3,7},{4,8},{5,9},{6,7},{6,8},{7,9},{8,9},}},
        {10, {{0,1},{0,2},{0,3},{1,4},{1,5},{2,4},{2,6},{3,5},{3,7},{4,8},{5,9},{6,7},{6,9},{7,8},{8,9},}},
        {10, {{0,1},{0,2},{0,3},{1,4},{1,5},{2,4},{2,6},{3,5},{3,7},{4,8},{5,9},{6,8},{6,9},{7,8},{7,9},}},
        {10, {{0,1},{0,2},{0,3},{1,4},{1,5},{2,4},{2,6},{3,7},{3,8},{4,7},{5,8},{5,9},{6,8},{6,9},{7,9},}},
        {10, {{0,1},{0,2},{0,3},{1,4},{1,5},{2,6},{2,7},{3,8},{3,9},{4,6},{4,8},{5,7},{5,9},{6,9},{7,8},}},
    };
    return graphs;
}

}  // namespace davinci::testing
