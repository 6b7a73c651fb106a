#include "davinci/periodic_pattern.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <set>
#include <string>

#include "davinci/errors.hpp"

namespace davinci {

std::array<double, 2> PeriodicPattern::position(int v, int cell_a, int cell_b) const {
    double fa = vertices[v].x.to_double() + cell_a;
    double fb = vertices[v].y.to_double() + cell_b;
    return {fa * lattice[0][0] + fb * lattice[1][0], fa * lattice[0][1] + fb * lattice[1][1]};
}

RVec2 PeriodicPattern::edge_vector(int k) const {
    const PatternEdge& e = edges[k];
    RVec2 d = vertices[e.v2] - vertices[e.v1];
    d.x += Rational(e.shift.a);
    d.y += Rational(e.shift.b);
    return d;
}

void PeriodicPattern::validate() const {
    double det = lattice[0][0] * lattice[1][1] - lattice[0][1] * lattice[1][0];
    if (std::abs(det) < 1e-12)
        throw Error(ErrorCode::InvalidArgument, "lattice vectors are not independent");

    std::set<std::pair<std::pair<std::int64_t, std::int64_t>, std::pair<std::int64_t, std::int64_t>>> seen_pos;
    for (int v = 0; v < vertex_count(); ++v) {
        const RVec2& f = vertices[v];
        if (f.x < Rational(0) || f.x >= Rational(1) || f.y < Rational(0) || f.y >= Rational(1))
            throw Error(ErrorCode::InvalidArgument,
                        "vertex " + std::to_string(v) + " has fractional coords outside [0,1)^2");
        auto key = std::make_pair(std::make_pair(f.x.num(), f.x.den()), std::make_pair(f.y.num(), f.y.den()));
        if (!seen_pos.insert(key).second)
            throw Error(ErrorCode::InvalidArgument, "coincident vertices at " + f.x.str() + "," + f.y.str());
    }

    std::set<std::tuple<int, int, int, int>> seen_edges;
    for (int k = 0; k < edge_count(); ++k) {
        const PatternEdge& e = edges[k];
        if (e.v1 < 0 || e.v1 >= vertex_count() || e.v2 < 0 || e.v2 >= vertex_count())
            throw Error(ErrorCode::DanglingEdge, "edge " + std::to_string(k) + " references unknown vertex");
        RVec2 d = edge_vector(k);
        if (d.x == Rational(0) && d.y == Rational(0))
            throw Error(ErrorCode::InvalidArgument, "edge " + std::to_string(k) + " has zero length");
        // Canonical unordered key: (v1,v2,shift) ~ (v2,v1,-shift).
        auto key = std::make_tuple(e.v1, e.v2, e.shift.a, e.shift.b);
        auto rkey = std::make_tuple(e.v2, e.v1, -e.shift.a, -e.shift.b);
        if (rkey < key) key = rkey;
        if (!seen_edges.insert(key).second)
            throw Error(ErrorCode::InvalidArgument, "duplicate edge " + std::to_string(k));
    }

    if (!rods.empty()) {
        std::vector<int> degree(vertex_count(), 0);
        for (const PatternEdge& e : edges) {
            ++degree[e.v1];
            ++degree[e.v2];
        }
        for (int v = 0; v < vertex_count(); ++v)
            if (degree[v] != 3)
                throw Error(ErrorCode::NotCubic,
                            "vertex " + std::to_string(v) + " has quotient degree " + std::to_string(degree[v]));
        resolve_rods(*this);  // throws when the assignment does not cover the edges
    }
}

namespace {

struct RodCandidateStep {
    int edge = -1;
    LatticeShift step;  // shift of the far endpoint relative to the near one
};

// Candidate pattern edges joining quotient vertices a -> b, with the
// lattice step seen from a.
std::vector<RodCandidateStep> edges_between(const PeriodicPattern& p, int a, int b) {
    std::vector<RodCandidateStep> out;
    for (int k = 0; k < p.edge_count(); ++k) {
        const PatternEdge& e = p.edges[k];
        if (e.v1 == a && e.v2 == b) out.push_back({k, e.shift});
        if (e.v2 == a && e.v1 == b) out.push_back({k, {-e.shift.a, -e.shift.b}});
    }
    return out;
}

// Lifted notch positions of a resolved rod must be collinear in exact
// lattice coordinates: rods are straight, so a crooked lift means the
// backtracking picked the wrong parallel edge.
bool lift_is_straight(const PeriodicPattern& p, const ResolvedRod& rr) {
    RVec2 x0 = p.vertices[rr.vertices[0]] + RVec2{Rational(rr.cells[0].a), Rational(rr.cells[0].b)};
    RVec2 x3 = p.vertices[rr.vertices[3]] + RVec2{Rational(rr.cells[3].a), Rational(rr.cells[3].b)};
    RVec2 axis = x3 - x0;
    for (int k : {1, 2}) {
        RVec2 xk =
            p.vertices[rr.vertices[k]] + RVec2{Rational(rr.cells[k].a), Rational(rr.cells[k].b)};
        if (cross(xk - x0, axis) != Rational(0)) return false;
    }
    return true;
}

bool resolve_rods_rec(const PeriodicPattern& p, size_t rod_idx, std::vector<char>& used,
                      std::vector<ResolvedRod>& out) {
    if (rod_idx == p.rods.size()) {
        return std::all_of(used.begin(), used.end(), [](char u) { return u != 0; });
    }
    const auto& quad = p.rods[rod_idx];
    // Choose one unused edge per consecutive pair, depth-first.
    std::array<std::vector<RodCandidateStep>, 3> options;
    for (int s = 0; s < 3; ++s) options[s] = edges_between(p, quad[s], quad[s + 1]);

    std::array<int, 3> pick{};
    auto try_step = [&](auto&& self, int s) -> bool {
        if (s == 3) {
            ResolvedRod rr;
            rr.vertices = quad;
            rr.cells[0] = {0, 0};
            for (int i = 0; i < 3; ++i) {
                const auto& opt = options[i][pick[i]];
                rr.edge_ids[i] = opt.edge;
                rr.cells[i + 1] = {rr.cells[i].a + opt.step.a, rr.cells[i].b + opt.step.b};
            }
            if (!lift_is_straight(p, rr)) return false;
            out.push_back(rr);
            if (resolve_rods_rec(p, rod_idx + 1, used, out)) return true;
            out.pop_back();
            return false;
        }
        for (size_t c = 0; c < options[s].size(); ++c) {
            int e = options[s][c].edge;
            if (used[e]) continue;
            used[e] = 1;
            pick[s] = static_cast<int>(c);
            if (self(self, s + 1)) return true;
            used[e] = 0;
        }
        return false;
    };
    return try_step(try_step, 0);
}

}  // namespace

std::vector<ResolvedRod> resolve_rods(const PeriodicPattern& p) {
    if (3 * p.rods.size() != p.edges.size())
        throw Error(ErrorCode::InvalidArgument,
                    "rod assignment covers " + std::to_string(3 * p.rods.size()) + " edges, pattern has " +
                        std::to_string(p.edges.size()));
    std::vector<char> used(p.edge_count(), 0);
    std::vector<ResolvedRod> out;
    if (!resolve_rods_rec(p, 0, used, out))
        throw Error(ErrorCode::InvalidArgument, "rod assignment does not resolve to an edge partition");
    return out;
}

SurfaceMap torus_quotient(const PeriodicPattern& p) {
    if (p.vertex_count() == 0 || p.edge_count() == 0)
        throw Error(ErrorCode::QuotientNotCellular, "quotient needs vertices and edges");

    std::vector<std::pair<VertexId, VertexId>> edges;
    edges.reserve(p.edges.size());
    for (const PatternEdge& e : p.edges) edges.emplace_back(e.v1, e.v2);

    // Darts sorted counterclockwise by exact direction in lattice coords.
    std::vector<std::vector<std::pair<RVec2, DartId>>> at(p.vertex_count());
    for (int k = 0; k < p.edge_count(); ++k) {
        RVec2 d = p.edge_vector(k);
        at[p.edges[k].v1].push_back({d, 2 * k});
        at[p.edges[k].v2].push_back({RVec2{-d.x, -d.y}, 2 * k + 1});
    }
    std::vector<std::vector<DartId>> rotations(p.vertex_count());
    for (int v = 0; v < p.vertex_count(); ++v) {
        auto& list = at[v];
        std::sort(list.begin(), list.end(), [](const auto& a, const auto& b) {
            if (a.first == b.first) return a.second < b.second;
            return ccw_direction_less(a.first, b.first);
        });
        for (size_t i = 1; i < list.size(); ++i)
            if (list[i].first == list[i - 1].first &&
                cross(list[i].first, list[i - 1].first) == Rational(0) &&
                dot(list[i].first, list[i - 1].first) > Rational(0))
                throw Error(ErrorCode::QuotientNotCellular,
                            "overlapping edge directions at vertex " + std::to_string(v));
        for (auto& [dir, dart] : list) rotations[v].push_back(dart);
    }

    SurfaceMap m = SurfaceMap::build(p.vertex_count(), edges, rotations);
    if (!m.connected())
        throw Error(ErrorCode::QuotientNotCellular, "quotient is disconnected");
    if (m.euler_characteristic() != 0)
        throw Error(ErrorCode::QuotientNotCellular,
                    "quotient has chi = " + std::to_string(m.euler_characteristic()) +
                        ", a face fails to be a disk");
    return m;
}

namespace {

struct RKey {
    Rational x, y;
    bool operator<(const RKey& o) const {
        if (x != o.x) return x < o.x;
        return y < o.y;
    }
};

// Exact Liang-Barsky clip of [A, A+d] against [0,n]^2; returns the
// parameter interval or nothing when the intersection is empty or a
// single point.
std::optional<std::pair<Rational, Rational>> clip_segment(const RVec2& a, const RVec2& d, int n) {
    Rational t0(0), t1(1);
    const Rational lo(0), hi(n);
    auto axis = [&](const Rational& start, const Rational& delta) -> bool {
        if (delta == Rational(0)) return start >= lo && start <= hi;
        Rational ta = (lo - start) / delta;
        Rational tb = (hi - start) / delta;
        if (ta > tb) std::swap(ta, tb);
        if (ta > t0) t0 = ta;
        if (tb < t1) t1 = tb;
        return true;
    };
    if (!axis(a.x, d.x) || !axis(a.y, d.y)) return std::nullopt;
    if (!(t0 < t1)) return std::nullopt;
    return std::make_pair(t0, t1);
}

}  // namespace

ReplicatedPatch replicate(const PeriodicPattern& p, int n) {
    if (n < 1) throw Error(ErrorCode::InvalidArgument, "replicate needs n >= 1");

    ReplicatedPatch patch;
    patch.n = n;

    std::map<RKey, int> vertex_ids;
    std::vector<RVec2> positions;
    auto intern = [&](const RVec2& pos) {
        auto [it, inserted] = vertex_ids.try_emplace(RKey{pos.x, pos.y}, static_cast<int>(positions.size()));
        if (inserted) positions.push_back(pos);
        return it->second;
    };

    // Vertex copies with position inside the closed window.
    for (int v = 0; v < p.vertex_count(); ++v) {
        const RVec2& f = p.vertices[v];
        std::int64_t ia_max = (Rational(n) - f.x).floor();
        std::int64_t ib_max = (Rational(n) - f.y).floor();
        for (std::int64_t ia = 0; ia <= ia_max; ++ia)
            for (std::int64_t ib = 0; ib <= ib_max; ++ib)
                intern(RVec2{f.x + Rational(ia), f.y + Rational(ib)});
    }

    int margin = 1;
    for (const PatternEdge& e : p.edges)
        margin = std::max({margin, std::abs(e.shift.a) + 1, std::abs(e.shift.b) + 1});

    std::vector<std::pair<VertexId, VertexId>> patch_edges;
    for (int k = 0; k < p.edge_count(); ++k) {
        const PatternEdge& e = p.edges[k];
        RVec2 d = p.edge_vector(k);
        for (int ia = -margin; ia < n + margin; ++ia) {
            for (int ib = -margin; ib < n + margin; ++ib) {
                RVec2 a = p.vertices[e.v1] + RVec2{Rational(ia), Rational(ib)};
                auto clip = clip_segment(a, d, n);
                if (!clip) continue;
                auto [t0, t1] = *clip;
                RVec2 pa = a + t0 * d;
                RVec2 pb = a + t1 * d;
                int va = intern(pa);
                int vb = intern(pb);
                patch_edges.emplace_back(va, vb);
            }
        }
    }

    if (positions.empty())
        throw Error(ErrorCode::InvalidArgument, "replicated patch is empty");

    // Geometric rotations, exact CCW per patch vertex.
    std::vector<std::vector<std::pair<RVec2, DartId>>> at(positions.size());
    for (size_t k = 0; k < patch_edges.size(); ++k) {
        auto [va, vb] = patch_edges[k];
        RVec2 dir = positions[vb] - positions[va];
        at[va].push_back({dir, static_cast<DartId>(2 * k)});
        at[vb].push_back({RVec2{-dir.x, -dir.y}, static_cast<DartId>(2 * k + 1)});
    }
    std::vector<std::vector<DartId>> rotations(positions.size());
    for (size_t v = 0; v < positions.size(); ++v) {
        auto& list = at[v];
        std::sort(list.begin(), list.end(), [](const auto& a, const auto& b) {
            if (a.first == b.first) return a.second < b.second;
            return ccw_direction_less(a.first, b.first);
        });
        for (auto& [dir, dart] : list) rotations[v].push_back(dart);
    }

    patch.map = SurfaceMap::build(static_cast<int>(positions.size()), patch_edges, rotations);
    patch.positions = std::move(positions);
    patch.vertex_count = patch.map.vertex_count();
    patch.edge_count = patch.map.edge_count();
    patch.face_count = patch.map.face_count() - 1;  // drop the outer face

    // Connected component count of the patch graph.
    int nv = patch.map.vertex_count();
    std::vector<int> comp(nv, -1);
    int comps = 0;
    for (int s = 0; s < nv; ++s) {
        if (comp[s] != -1) continue;
        comp[s] = comps;
        std::vector<int> stack = {s};
        while (!stack.empty()) {
            int v = stack.back();
            stack.pop_back();
            for (DartId dd : patch.map.darts_at(v)) {
                int w = patch.map.dart_vertex(dd ^ 1);
                if (comp[w] == -1) {
                    comp[w] = comps;
                    stack.push_back(w);
                }
            }
        }
        ++comps;
    }
    patch.components = comps;
    return patch;
}

ReplicationSeries series_from_counts(const std::vector<ReplicationSample>& raw) {
    if (raw.size() < 3)
        throw Error(ErrorCode::InvalidArgument, "replication series needs at least 3 samples");

    ReplicationSeries series;
    series.samples = raw;
    series.all_sphere_identities_ok = true;
    for (auto& s : series.samples) {
        s.sphere_identity_ok = (s.V - s.E + (s.F + 1)) == 2;
        if (!s.sphere_identity_ok) series.all_sphere_identities_ok = false;
    }

    auto chi = [](const ReplicationSample& s) { return Rational(s.V - s.E + s.F); };

    // Exact quadratic interpolation through the first three samples.
    Rational n1(series.samples[0].n), n2(series.samples[1].n), n3(series.samples[2].n);
    Rational y1 = chi(series.samples[0]), y2 = chi(series.samples[1]), y3 = chi(series.samples[2]);
    Rational det = (n2 - n1) * (n3 - n1) * (n3 - n2);
    if (det == Rational(0)) throw Error(ErrorCode::InvalidArgument, "duplicate n in series");
    Rational c2 = ((y3 - y1) * (n2 - n1) - (y2 - y1) * (n3 - n1)) /
                  ((n3 * n3 - n1 * n1) * (n2 - n1) - (n2 * n2 - n1 * n1) * (n3 - n1));
    Rational c1 = (y2 - y1 - c2 * (n2 * n2 - n1 * n1)) / (n2 - n1);
    Rational c0 = y1 - c2 * n1 * n1 - c1 * n1;

    for (const auto& s : series.samples) {
        Rational nn(s.n);
        if (chi(s) != c2 * nn * nn + c1 * nn + c0)
            throw Error(ErrorCode::FitFailed,
                        "counts at n=" + std::to_string(s.n) + " do not fit an exact quadratic; residuals are not O(n)");
    }

    series.chi_estimate = c2;
    series.fit_linear = c1;
    series.fit_constant = c0;
    series.residual_bound = Rational(0);
    for (const auto& s : series.samples) {
        Rational nn(s.n);
        Rational resid = chi(s) - c2 * nn * nn;
        if (resid.sign() < 0) resid = -resid;
        Rational per_n = resid / nn;
        if (per_n > series.residual_bound) series.residual_bound = per_n;
    }
    return series;
}

ReplicationSeries replication_series(const PeriodicPattern& p, int n_max) {
    if (n_max < 3) throw Error(ErrorCode::InvalidArgument, "replication series needs n_max >= 3");
    std::vector<ReplicationSample> samples;
    for (int n = 1; n <= n_max; ++n) {
        ReplicatedPatch rp = replicate(p, n);
        samples.push_back({n, rp.vertex_count, rp.edge_count, rp.face_count, false});
    }
    return series_from_counts(samples);
}

std::vector<int> PatternPatch::junction_vertices() const {
    std::vector<int> out;
    for (size_t i = 0; i < vertices.size(); ++i)
        if (vertices[i].end_of_rod >= 0 && vertices[i].interior_of_rod >= 0)
            out.push_back(static_cast<int>(i));
    return out;
}

PatternPatch patch(const PeriodicPattern& p, int rings) {
    if (rings < 1) throw Error(ErrorCode::EmptyPatch, "rings must be >= 1");
    std::vector<ResolvedRod> rods = resolve_rods(p);

    // The patch is the metric disk of `rings` rod lengths around the
    // origin; rods are included whole when all four notches fit.
    double rod_length = 0.0;
    for (const ResolvedRod& r : rods) {
        auto a = p.position(r.vertices[0], r.cells[0].a, r.cells[0].b);
        auto b = p.position(r.vertices[3], r.cells[3].a, r.cells[3].b);
        rod_length = std::max(rod_length, std::hypot(b[0] - a[0], b[1] - a[1]));
    }
    double radius = rings * rod_length;

    double unit = std::min(std::hypot(p.lattice[0][0], p.lattice[0][1]),
                           std::hypot(p.lattice[1][0], p.lattice[1][1]));
    int margin = static_cast<int>(radius / std::max(unit, 1e-9)) + 3;
    for (const ResolvedRod& r : rods)
        for (const auto& c : r.cells)
            margin += std::max(std::abs(c.a), std::abs(c.b));

    PatternPatch out;
    std::map<std::tuple<int, int, int>, int> vertex_ids;  // (pattern vertex, cell a, cell b)
    auto intern = [&](int v, int ca, int cb) {
        auto [it, inserted] =
            vertex_ids.try_emplace(std::make_tuple(v, ca, cb), static_cast<int>(out.vertices.size()));
        if (inserted) {
            PatchVertex pv;
            pv.pattern_vertex = v;
            pv.cell = {ca, cb};
            pv.xy = p.position(v, ca, cb);
            out.vertices.push_back(pv);
        }
        return it->second;
    };

    for (int base_a = -margin; base_a <= margin; ++base_a) {
        for (int base_b = -margin; base_b <= margin; ++base_b) {
            for (size_t ri = 0; ri < rods.size(); ++ri) {
                const ResolvedRod& r = rods[ri];
                bool inside = true;
                for (int k = 0; k < 4 && inside; ++k) {
                    auto xy = p.position(r.vertices[k], base_a + r.cells[k].a,
                                         base_b + r.cells[k].b);
                    inside = std::hypot(xy[0], xy[1]) <= radius;
                }
                if (!inside) continue;

                PatchRod pr;
                int rod_id = static_cast<int>(out.rods.size());
                for (int k = 0; k < 4; ++k)
                    pr.vertices[k] = intern(r.vertices[k], base_a + r.cells[k].a, base_b + r.cells[k].b);
                const auto& p0 = out.vertices[pr.vertices[0]].xy;
                for (int k = 0; k < 4; ++k) {
                    const auto& pk = out.vertices[pr.vertices[k]].xy;
                    pr.notch_t[k] = std::hypot(pk[0] - p0[0], pk[1] - p0[1]);
                }
                for (int k = 0; k < 3; ++k)
                    out.edges.emplace_back(pr.vertices[k], pr.vertices[k + 1]);
                out.rods.push_back(pr);

                auto set_end = [&](int pv) {
                    if (out.vertices[pv].end_of_rod >= 0)
                        throw Error(ErrorCode::InvalidArgument, "two rod ends meet in patch");
                    out.vertices[pv].end_of_rod = rod_id;
                };
                set_end(pr.vertices[0]);
                set_end(pr.vertices[3]);
                for (int k : {1, 2}) {
                    int pv = pr.vertices[k];
                    if (out.vertices[pv].interior_of_rod >= 0 && out.vertices[pv].interior_of_rod != rod_id)
                        throw Error(ErrorCode::InvalidArgument, "two rod interiors meet in patch");
                    out.vertices[pv].interior_of_rod = rod_id;
                }
            }
        }
    }

    if (out.rods.empty()) throw Error(ErrorCode::EmptyPatch, "no rod fits inside the requested rings");
    return out;
}

PeriodicPattern reparameterize(const PeriodicPattern& p, const std::array<std::array<int, 2>, 2>& U) {
    int det = U[0][0] * U[1][1] - U[0][1] * U[1][0];
    if (det != 1 && det != -1)
        throw Error(ErrorCode::InvalidArgument, "reparameterization matrix must be unimodular");
    // U_inv = adj(U) / det, integer for det = +-1.
    int inv[2][2] = {{U[1][1] / det, -U[0][1] / det}, {-U[1][0] / det, U[0][0] / det}};

    PeriodicPattern q;
    q.name = p.name;
    q.note = p.note;
    // New basis columns: b'_j = sum_i U[i][j] b_i (basis vectors are rows here).
    for (int j = 0; j < 2; ++j)
        for (int c = 0; c < 2; ++c)
            q.lattice[j][c] = U[0][j] * p.lattice[0][c] + U[1][j] * p.lattice[1][c];

    std::vector<std::array<std::int64_t, 2>> carry(p.vertex_count());
    q.vertices.resize(p.vertex_count());
    for (int v = 0; v < p.vertex_count(); ++v) {
        RVec2 x = p.vertices[v];
        RVec2 xi{Rational(inv[0][0]) * x.x + Rational(inv[0][1]) * x.y,
                 Rational(inv[1][0]) * x.x + Rational(inv[1][1]) * x.y};
        carry[v] = {xi.x.floor(), xi.y.floor()};
        q.vertices[v] = {xi.x.frac(), xi.y.frac()};
    }
    q.edges.reserve(p.edges.size());
    for (const PatternEdge& e : p.edges) {
        int sa = inv[0][0] * e.shift.a + inv[0][1] * e.shift.b;
        int sb = inv[1][0] * e.shift.a + inv[1][1] * e.shift.b;
        PatternEdge ne;
        ne.v1 = e.v1;
        ne.v2 = e.v2;
        ne.shift = {static_cast<int>(sa + carry[e.v2][0] - carry[e.v1][0]),
                    static_cast<int>(sb + carry[e.v2][1] - carry[e.v1][1])};
        q.edges.push_back(ne);
    }
    q.rods = p.rods;
    return q;
}

}  // namespace davinci
