#pragma once

#include <Eigen/Dense>
#include <optional>
#include <vector>

#include "davinci/surface_map.hpp"

namespace davinci {

// A surface map with straight-line 3D vertex positions. Adjacent
// vertices must not coincide; the map supplies the face structure.
struct Embedding3D {
    SurfaceMap map;
    std::vector<Eigen::Vector3d> coords;
};

struct DefectOptions {
    double angle_tol_rad = 1e-9;       // degenerate-corner guard
    double collinear_tol_rad = 1e-7;   // antiparallel test tolerance
    double descartes_tol_deg = 1e-6;   // |total - 720| check for chi = 2
};

struct DefectReport {
    std::vector<double> per_vertex;        // degrees, indexed by vertex
    double total = 0.0;                    // degrees
    std::vector<VertexId> collinear_vertices;
};

// 360 minus the sum of corner angles at v, in degrees. Requires all
// faces at v to be triangles (triangulate first otherwise).
double angular_defect(const Embedding3D& e, VertexId v,
                      const DefectOptions& opts = {});

// Full defect report; for chi = 2 maps the total is checked against
// 720 degrees within opts.descartes_tol_deg. Other chi values return
// the raw sum.
DefectReport descartes_sum(const Embedding3D& e, const DefectOptions& opts = {});

// Fan-triangulates every face with more than three sides from its
// lowest-id corner; vertex set and chi are unchanged. Idempotent.
Embedding3D triangulate(const Embedding3D& e);

// All (vertex, edge, edge) triples whose two edge directions at the
// vertex are antiparallel within tol radians.
std::vector<std::tuple<VertexId, EdgeId, EdgeId>> collinear_pairs(const Embedding3D& e,
                                                                  double tol = 1e-7);

struct TheoremVerdict {
    bool applicable = false;             // every vertex carries a collinear pair
    bool certified = false;              // defects nonpositive, total < 720
    DefectReport report;                 // filled when applicable
    std::vector<VertexId> missing_pairs; // witnesses when not applicable
};

// Operationalizes the no-spherical-polyhedron obstruction: when every
// vertex of a triangulated embedding has a collinear pair, certifies
// that all defects are nonpositive and the total stays below 720.
TheoremVerdict polyhedron_theorem_check(const Embedding3D& e, const DefectOptions& opts = {});

struct SupportWitness {
    VertexId maximizer = -1;
    double support = 0.0;
    std::optional<VertexId> collinear_neighbor;  // neighbor along a collinear pair
    double neighbor_support = 0.0;
};

// Vertex maximizing <direction, x> (ties by lowest id). If the
// maximizer carries a collinear pair, also returns the pair neighbor
// whose support is at least the maximum minus tolerance.
SupportWitness support_witness(const Embedding3D& e, const Eigen::Vector3d& direction,
                               double tol = 1e-9);

}  // namespace davinci
