#include "davinci/embed_defect.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

#include "davinci/errors.hpp"

namespace davinci {

namespace {

constexpr double kRadToDeg = 180.0 / std::numbers::pi;

Eigen::Vector3d dart_vector(const Embedding3D& e, DartId d) {
    VertexId from = e.map.dart_vertex(d);
    VertexId to = e.map.dart_vertex(e.map.involution(d));
    return e.coords[to] - e.coords[from];
}

double corner_angle(const Eigen::Vector3d& u, const Eigen::Vector3d& v, double tol_rad) {
    double nu = u.norm(), nv = v.norm();
    if (nu < 1e-300 || nv < 1e-300)
        throw Error(ErrorCode::DegenerateCorner, "zero-length edge at a corner");
    double angle = std::atan2(u.cross(v).norm(), u.dot(v));
    if (angle < tol_rad && u.dot(v) > 0) {
        // Exactly overlapping edges make the corner ill-defined.
        if (angle == 0.0) throw Error(ErrorCode::DegenerateCorner, "zero angle between edges");
    }
    return angle;
}

}  // namespace

double angular_defect(const Embedding3D& e, VertexId v, const DefectOptions& opts) {
    const auto& darts = e.map.darts_at(v);
    for (DartId d : darts) {
        int f = e.map.face_of_dart()[d];
        // cheap triangle check: face degree of the dart's face
        int count = 0;
        DartId cur = d;
        do {
            cur = e.map.face_next(cur);
            ++count;
        } while (cur != d && count <= 4);
        if (count != 3)
            throw Error(ErrorCode::NonTriangularFace,
                        "face " + std::to_string(f) + " at vertex " + std::to_string(v) +
                            " is not a triangle");
    }
    double sum = 0.0;
    for (DartId d : darts) {
        Eigen::Vector3d u = dart_vector(e, d);
        Eigen::Vector3d w = dart_vector(e, e.map.rotation_inverse(d));
        sum += corner_angle(u, w, opts.angle_tol_rad);
    }
    return 360.0 - sum * kRadToDeg;
}

DefectReport descartes_sum(const Embedding3D& e, const DefectOptions& opts) {
    DefectReport report;
    report.per_vertex.resize(e.map.vertex_count());
    // Fixed summation order by vertex id keeps totals bit-stable.
    for (VertexId v = 0; v < e.map.vertex_count(); ++v) {
        report.per_vertex[v] = angular_defect(e, v, opts);
        report.total += report.per_vertex[v];
    }
    for (auto& [v, e1, e2] : collinear_pairs(e, opts.collinear_tol_rad)) {
        if (report.collinear_vertices.empty() || report.collinear_vertices.back() != v)
            report.collinear_vertices.push_back(v);
    }
    if (e.map.euler_characteristic() == 2 &&
        std::abs(report.total - 720.0) > opts.descartes_tol_deg)
        throw Error(ErrorCode::InvalidArgument,
                    "sphere-like embedding with defect total " + std::to_string(report.total) +
                        " != 720");
    return report;
}

Embedding3D triangulate(const Embedding3D& e) {
    auto walks = e.map.face_walks();

    std::vector<std::pair<VertexId, VertexId>> edges = e.map.edges();

    // For each face with k > 3 corners, fan from the corner with the
    // lowest vertex id (first occurrence on the walk). New diagonals
    // are inserted into the rotations right next to the fan corners.
    struct Insertion {
        DartId after;  // insert new dart immediately after this dart in rotation order
        DartId dart;
        bool before = false;  // insert before instead
    };
    std::vector<std::vector<DartId>> rotations = e.map.rotations();

    auto insert_after = [&](std::vector<DartId>& cycle, DartId anchor, DartId fresh) {
        auto it = std::find(cycle.begin(), cycle.end(), anchor);
        cycle.insert(it + 1, fresh);
    };
    auto insert_before = [&](std::vector<DartId>& cycle, DartId anchor, DartId fresh) {
        auto it = std::find(cycle.begin(), cycle.end(), anchor);
        cycle.insert(it, fresh);
    };

    for (const auto& walk : walks) {
        int k = static_cast<int>(walk.size());
        if (k <= 3) continue;
        // Anchor corner: position whose source vertex has the lowest id.
        int anchor_pos = 0;
        for (int i = 1; i < k; ++i)
            if (e.map.dart_vertex(walk[i]) < e.map.dart_vertex(walk[anchor_pos])) anchor_pos = i;

        VertexId v0 = e.map.dart_vertex(walk[anchor_pos]);
        // Diagonals from v0 to corners anchor_pos+2 .. anchor_pos+k-2.
        // Each diagonal is a fresh edge (v0, vj). Rotation insertion:
        //   at v0: diagonals stack between walk[anchor_pos] and the
        //   dart arriving at v0 (in face order, later diagonals sit
        //   closer to the arriving side);
        //   at vj: the diagonal sits between the arriving dart's
        //   involution and the outgoing dart walk[j].
        DartId at_v0_anchor = walk[anchor_pos];
        for (int step = 2; step <= k - 2; ++step) {
            int j = (anchor_pos + step) % k;
            VertexId vj = e.map.dart_vertex(walk[j]);
            int edge_id = static_cast<int>(edges.size());
            edges.emplace_back(v0, vj);
            DartId d_v0 = 2 * edge_id;
            DartId d_vj = 2 * edge_id + 1;
            // v0 side: insert before the current anchor (rotating the
            // fan keeps face tracing consistent).
            insert_before(rotations[v0], at_v0_anchor, d_v0);
            at_v0_anchor = d_v0;
            // vj side: insert after inv(arriving dart) = after the dart
            // of walk[j-1] seen from vj.
            DartId arriving = walk[(j - 1 + k) % k];
            insert_after(rotations[vj], e.map.involution(arriving), d_vj);
        }
    }

    Embedding3D out;
    out.map = SurfaceMap::build(e.map.vertex_count(), edges, rotations);
    out.coords = e.coords;
    if (out.map.euler_characteristic() != e.map.euler_characteristic())
        throw Error(ErrorCode::InvalidArgument, "triangulation changed the Euler characteristic");
    return out;
}

std::vector<std::tuple<VertexId, EdgeId, EdgeId>> collinear_pairs(const Embedding3D& e, double tol) {
    std::vector<std::tuple<VertexId, EdgeId, EdgeId>> out;
    for (VertexId v = 0; v < e.map.vertex_count(); ++v) {
        const auto& darts = e.map.darts_at(v);
        for (size_t i = 0; i < darts.size(); ++i) {
            for (size_t j = i + 1; j < darts.size(); ++j) {
                Eigen::Vector3d u = dart_vector(e, darts[i]);
                Eigen::Vector3d w = dart_vector(e, darts[j]);
                double nu = u.norm(), nw = w.norm();
                if (nu < 1e-300 || nw < 1e-300) continue;
                // Antiparallel within tol: angle(u, -w) <= tol.
                double angle = std::atan2(u.cross(w).norm(), -u.dot(w));
                if (angle <= tol) {
                    EdgeId e1 = e.map.dart_edge(darts[i]);
                    EdgeId e2 = e.map.dart_edge(darts[j]);
                    out.emplace_back(v, std::min(e1, e2), std::max(e1, e2));
                }
            }
        }
    }
    return out;
}

TheoremVerdict polyhedron_theorem_check(const Embedding3D& e, const DefectOptions& opts) {
    TheoremVerdict verdict;
    auto pairs = collinear_pairs(e, opts.collinear_tol_rad);
    std::vector<char> has_pair(e.map.vertex_count(), 0);
    for (auto& [v, e1, e2] : pairs) has_pair[v] = 1;
    for (VertexId v = 0; v < e.map.vertex_count(); ++v)
        if (!has_pair[v]) verdict.missing_pairs.push_back(v);
    if (!verdict.missing_pairs.empty()) return verdict;

    verdict.applicable = true;
    verdict.report = descartes_sum(e, opts);
    // Tolerance in degrees for the nonpositivity certificate.
    double tol_deg = opts.collinear_tol_rad * kRadToDeg * e.map.vertex_count();
    verdict.certified = verdict.report.total <= tol_deg && verdict.report.total < 720.0 - 1e-6;
    for (double d : verdict.report.per_vertex)
        if (d > tol_deg) verdict.certified = false;
    return verdict;
}

SupportWitness support_witness(const Embedding3D& e, const Eigen::Vector3d& direction, double tol) {
    SupportWitness w;
    if (e.map.vertex_count() == 0) return w;
    w.maximizer = 0;
    w.support = direction.dot(e.coords[0]);
    for (VertexId v = 1; v < e.map.vertex_count(); ++v) {
        double s = direction.dot(e.coords[v]);
        if (s > w.support) {
            w.support = s;
            w.maximizer = v;
        }
    }
    // Collinear pair at the maximizer: report the neighbor that attains
    // at least the maximum minus tol.
    const auto& darts = e.map.darts_at(w.maximizer);
    for (size_t i = 0; i < darts.size(); ++i) {
        for (size_t j = i + 1; j < darts.size(); ++j) {
            Eigen::Vector3d u = dart_vector(e, darts[i]);
            Eigen::Vector3d x = dart_vector(e, darts[j]);
            double angle = std::atan2(u.cross(x).norm(), -u.dot(x));
            if (angle > 1e-7) continue;
            VertexId nu = e.map.dart_vertex(e.map.involution(darts[i]));
            VertexId nx = e.map.dart_vertex(e.map.involution(darts[j]));
            double su = direction.dot(e.coords[nu]);
            double sx = direction.dot(e.coords[nx]);
            VertexId best = su >= sx ? nu : nx;
            double sbest = std::max(su, sx);
            if (sbest >= w.support - tol &&
                (!w.collinear_neighbor || sbest > w.neighbor_support)) {
                w.collinear_neighbor = best;
                w.neighbor_support = sbest;
            }
        }
    }
    return w;
}

}  // namespace davinci
