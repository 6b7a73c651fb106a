#pragma once

#include <array>
#include <optional>
#include <string>
#include <vector>

#include "davinci/periodic_pattern.hpp"
#include "davinci/surface_map.hpp"

namespace davinci {

enum class NotchRole { Boundary, Interior };
enum class NotchFacing { Down, Up };

// A notch on a rod. Boundary notches sit near the rod ends, are at
// least as deep as the interior ones, and face the ground.
struct Notch {
    NotchRole role = NotchRole::Boundary;
    double depth = 0.0;
    NotchFacing facing = NotchFacing::Down;

    static Notch boundary(double depth = 0.0) { return {NotchRole::Boundary, depth, NotchFacing::Down}; }
    static Notch interior(double depth = 0.0) { return {NotchRole::Interior, depth, NotchFacing::Up}; }
};

// Combinatorial rod: a 3-edge simple path through 4 notch vertices.
// Positions 0 and 3 carry Boundary notches, 1 and 2 Interior ones.
struct Rod {
    std::array<Notch, 4> notches{Notch::boundary(), Notch::interior(), Notch::interior(),
                                 Notch::boundary()};
    std::array<VertexId, 4> vertices{-1, -1, -1, -1};
    std::array<EdgeId, 3> edges{-1, -1, -1};
};

// Abstract undirected graph; vertex ids dense in [0, vertex_count).
struct Graph {
    int vertex_count = 0;
    std::vector<std::pair<VertexId, VertexId>> edges;

    std::vector<int> degrees() const;
    bool is_cubic() const;
    bool is_connected() const;
};

// Partition of a graph's edges into rods. Every vertex is the path
// endpoint of exactly one rod and an internal vertex of exactly one
// other; this forces degree 3 everywhere.
struct RodNetwork {
    Graph graph;
    std::vector<Rod> rods;

    // junction(v) = (rod whose path ends at v, rod passing through v).
    struct Junction {
        int end_rod = -1;
        int through_rod = -1;
    };
    std::vector<Junction> junctions() const;
};

struct Violation {
    std::string kind;  // e.g. "BoundaryBoundaryJunction", "RodNotAPath"
    std::string message;
    int vertex = -1;
    int edge = -1;
    int rod = -1;
};

struct ValidationReport {
    std::vector<Violation> violations;
    bool valid() const { return violations.empty(); }
};

// Checks every RodNetwork invariant and reports each violation with a
// witness. Never throws.
ValidationReport validate_network(const RodNetwork& net);

struct CountingIdentities {
    int rods = 0;
    int vertices = 0;
    int edges = 0;
};

// Asserts rods = V/2 and E = 3*rods; throws IdentityViolated otherwise.
CountingIdentities counting_identities(const RodNetwork& net);

// Searches for an edge partition into rods by deterministic
// backtracking (most-constrained vertex first, ties by lowest id).
// Straight rods cross pairwise at most once, so two rods of a
// decomposition may share at most one junction vertex. Returns nullopt
// when the exhaustive search proves no such partition exists. Throws
// NotCubic / Disconnected on bad input.
std::optional<RodNetwork> decompose(const Graph& graph);

// Up to `limit` distinct decompositions (distinct edge partitions).
std::vector<RodNetwork> decompose_all(const Graph& graph, int limit);

// Builds the rod network of a pattern's torus quotient from its shipped
// rod assignment.
RodNetwork rod_network_from_pattern(const PeriodicPattern& p);

}  // namespace davinci
