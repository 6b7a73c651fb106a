#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "davinci/rational.hpp"
#include "davinci/surface_map.hpp"

namespace davinci {

// Integer lattice shift (sa, sb) applied to a pattern edge's second
// endpoint: it lives in the cell shifted by sa*a + sb*b.
struct LatticeShift {
    int a = 0;
    int b = 0;
    friend bool operator==(const LatticeShift& x, const LatticeShift& y) {
        return x.a == y.a && x.b == y.b;
    }
};

struct PatternEdge {
    int v1 = -1;
    int v2 = -1;
    LatticeShift shift;
};

// Doubly-periodic rod pattern: a fundamental domain with two lattice
// translation vectors, vertices at exact fractional coordinates in
// [0,1)^2 and edges carrying lattice shifts. The optional rod
// assignment partitions the quotient edges into 3-edge paths.
struct PeriodicPattern {
    std::string name;
    std::string note;
    double lattice[2][2] = {{1, 0}, {0, 1}};  // rows: a = lattice[0], b = lattice[1]
    std::vector<RVec2> vertices;              // fractional coords in [0,1)^2
    std::vector<PatternEdge> edges;
    std::vector<std::array<int, 4>> rods;     // notch vertices in path order

    int vertex_count() const { return static_cast<int>(vertices.size()); }
    int edge_count() const { return static_cast<int>(edges.size()); }

    // Real-plane position of a vertex copy in the given cell.
    std::array<double, 2> position(int v, int cell_a, int cell_b) const;

    // Structural checks: independent lattice, distinct vertices, no
    // duplicate edges, nonzero edge vectors, quotient degree 3 when a
    // rod assignment is present. Throws on violation.
    void validate() const;

    // Edge direction of the dart at v1 of edge k, in fractional coords.
    RVec2 edge_vector(int k) const;
};

// Lifted rod: pattern rod index plus the cumulative lattice shift of
// each of its four notch vertices relative to the base cell.
struct ResolvedRod {
    std::array<int, 4> vertices;
    std::array<int, 3> edge_ids;        // pattern edge index per path step
    std::array<LatticeShift, 4> cells;  // cumulative shift per notch, cells[0] = (0,0)
};

// Matches each rod's vertex quadruple to actual pattern edges (exact
// cover: every pattern edge used by exactly one rod). Throws if the
// assignment does not resolve.
std::vector<ResolvedRod> resolve_rods(const PeriodicPattern& p);

// Quotient map on the torus. Rotations come from exact CCW ordering of
// edge directions in fractional coordinates; chi = 0 is asserted and
// QuotientNotCellular is thrown for empty, disconnected or non-cellular
// quotients. Quotient edge k corresponds to pattern edge k.
SurfaceMap torus_quotient(const PeriodicPattern& p);

// Planar n x n replication clipped to the window [0,n]^2 in lattice
// coordinates. Edges crossing the window boundary are cut exactly at
// the boundary and end in a fresh degree-1 vertex.
struct ReplicatedPatch {
    int n = 0;
    long long vertex_count = 0;
    long long edge_count = 0;
    long long face_count = 0;  // internal faces; the outer face is excluded
    int components = 0;
    SurfaceMap map;                  // planar map with geometric rotations
    std::vector<RVec2> positions;    // per patch vertex, lattice coords
};

ReplicatedPatch replicate(const PeriodicPattern& p, int n);

struct ReplicationSample {
    int n = 0;
    long long V = 0;
    long long E = 0;
    long long F = 0;
    bool sphere_identity_ok = false;  // V - E + (F+1) == 2
};

// Result of the n^2-replication experiment. chi per sample is
// V_n - E_n + F_n; the exact quadratic fit chi_n = c2 n^2 + c1 n + c0
// is solved over the rationals and chi_estimate = c2.
struct ReplicationSeries {
    std::vector<ReplicationSample> samples;
    Rational chi_estimate;
    Rational fit_linear;    // c1
    Rational fit_constant;  // c0
    Rational residual_bound;  // max |chi_n - c2 n^2| / n over samples
    bool all_sphere_identities_ok = false;

    bool chi_zero() const { return chi_estimate == Rational(0); }
};

// Fit + invariant checks on precomputed counts. Requires >= 3 samples;
// throws FitFailed when no exact quadratic interpolates all samples.
ReplicationSeries series_from_counts(const std::vector<ReplicationSample>& samples);

// Runs replicate for n = 1..n_max (n_max >= 3) and fits the series.
ReplicationSeries replication_series(const PeriodicPattern& p, int n_max);

// Finite fragment of the pattern: all rod instances whose four notch
// vertices lie inside [-rings, rings]^2 in lattice coordinates. Rods
// are always whole; vertices on the fragment rim keep only one role.
struct PatchVertex {
    int pattern_vertex = -1;
    LatticeShift cell;
    std::array<double, 2> xy{};  // real plane coordinates
    int end_of_rod = -1;         // patch rod index whose path ends here, -1 if none
    int interior_of_rod = -1;    // patch rod index passing through, -1 if none
};

struct PatchRod {
    std::array<int, 4> vertices;   // patch vertex ids, path order
    std::array<double, 4> notch_t; // arclength of each notch along the rod
};

struct PatternPatch {
    std::vector<PatchVertex> vertices;
    std::vector<PatchRod> rods;
    std::vector<std::pair<int, int>> edges;  // consecutive notch segments

    // Vertices where a rod end meets a rod interior; rim vertices with a
    // single role are excluded.
    std::vector<int> junction_vertices() const;
};

PatternPatch patch(const PeriodicPattern& p, int rings);

// Replaces the lattice basis by basis * U (U integer, det +-1) and
// rewrites fractional coordinates and shifts accordingly. The quotient,
// census and wallpaper class are invariant under this.
PeriodicPattern reparameterize(const PeriodicPattern& p, const std::array<std::array<int, 2>, 2>& U);

// The builtin pattern catalog: eleven kit patterns plus the "new" one.
const std::vector<PeriodicPattern>& catalog();

// Lookup by name ("pattern-01" .. "pattern-11", "pattern-new").
const PeriodicPattern* find_pattern(const std::string& name);

}  // namespace davinci
