#pragma once

#include <array>
#include <iosfwd>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "davinci/periodic_pattern.hpp"
#include "davinci/surface_map.hpp"

namespace davinci {

// Parsed form of the line-oriented map format:
//   v <id>
//   e <id> <v1> <v2>
//   rot <v> <dart list>        darts of edge k are 2k (at v1) and 2k+1 (at v2)
//   coord <v> <x> <y> <z>
//   rod <id> <v0> <v1> <v2> <v3>
// '#' starts a comment; edge ids must be dense 0..E-1; vertex ids are
// arbitrary integers and keep their written order.
struct MapFile {
    std::vector<int> vertex_ids;
    std::vector<std::array<int, 3>> edges;  // (edge id, v1, v2)
    std::map<int, std::vector<int>> rotations;
    std::map<int, std::array<double, 3>> coords;
    std::vector<std::array<int, 5>> rods;  // (rod id, v0..v3)

    int vertex_index(int id) const;  // dense index, throws on unknown id
};

MapFile parse_map_file(std::istream& in);
MapFile read_map_file(const std::string& path);
void write_map_file(std::ostream& out, const MapFile& f);

// Builds the rotation-system map. Vertices without a rot line default
// to ascending dart order.
SurfaceMap to_surface_map(const MapFile& f);

// Pattern format:
//   lattice ax ay bx by
//   v <id> <fx> <fy>           fractions like 1/3 or finite decimals
//   edge <v1> <v2> <sa> <sb>
//   rod <id> <v0> <v1> <v2> <v3>
PeriodicPattern parse_pattern_file(std::istream& in);
PeriodicPattern read_pattern_file(const std::string& path);
void write_pattern_file(std::ostream& out, const PeriodicPattern& p);

// Sniffs the leading keyword: "lattice" means pattern, anything else map.
bool looks_like_pattern_file(const std::string& path);

}  // namespace davinci
