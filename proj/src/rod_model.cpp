#include "davinci/rod_model.hpp"

#include <algorithm>
#include <set>

#include "davinci/errors.hpp"

namespace davinci {

std::vector<int> Graph::degrees() const {
    std::vector<int> deg(vertex_count, 0);
    for (auto& [a, b] : edges) {
        ++deg[a];
        ++deg[b];
    }
    return deg;
}

bool Graph::is_cubic() const {
    auto deg = degrees();
    return std::all_of(deg.begin(), deg.end(), [](int d) { return d == 3; });
}

bool Graph::is_connected() const {
    if (vertex_count == 0) return true;
    std::vector<std::vector<int>> adj(vertex_count);
    for (auto& [a, b] : edges) {
        adj[a].push_back(b);
        adj[b].push_back(a);
    }
    std::vector<char> seen(vertex_count, 0);
    std::vector<int> stack = {0};
    seen[0] = 1;
    int reached = 1;
    while (!stack.empty()) {
        int v = stack.back();
        stack.pop_back();
        for (int w : adj[v])
            if (!seen[w]) {
                seen[w] = 1;
                ++reached;
                stack.push_back(w);
            }
    }
    return reached == vertex_count;
}

std::vector<RodNetwork::Junction> RodNetwork::junctions() const {
    std::vector<Junction> j(graph.vertex_count);
    for (size_t r = 0; r < rods.size(); ++r) {
        const Rod& rod = rods[r];
        for (int k : {0, 3})
            if (rod.vertices[k] >= 0 && rod.vertices[k] < graph.vertex_count &&
                j[rod.vertices[k]].end_rod < 0)
                j[rod.vertices[k]].end_rod = static_cast<int>(r);
        for (int k : {1, 2})
            if (rod.vertices[k] >= 0 && rod.vertices[k] < graph.vertex_count &&
                j[rod.vertices[k]].through_rod < 0)
                j[rod.vertices[k]].through_rod = static_cast<int>(r);
    }
    return j;
}

ValidationReport validate_network(const RodNetwork& net) {
    ValidationReport report;
    auto violate = [&](std::string kind, std::string msg, int v = -1, int e = -1, int r = -1) {
        report.violations.push_back({std::move(kind), std::move(msg), v, e, r});
    };

    const Graph& g = net.graph;
    int E = static_cast<int>(g.edges.size());

    std::vector<int> edge_cover(E, 0);
    std::vector<int> end_count(g.vertex_count, 0);
    std::vector<int> through_count(g.vertex_count, 0);

    for (size_t r = 0; r < net.rods.size(); ++r) {
        const Rod& rod = net.rods[r];
        int ri = static_cast<int>(r);

        for (int k = 0; k < 4; ++k) {
            NotchRole want = (k == 0 || k == 3) ? NotchRole::Boundary : NotchRole::Interior;
            if (rod.notches[k].role != want)
                violate("NotchRoleOrder", "rod " + std::to_string(r) + " notch " + std::to_string(k) +
                                              " has the wrong role", -1, -1, ri);
        }
        double bd = std::min(rod.notches[0].depth, rod.notches[3].depth);
        double in = std::max(rod.notches[1].depth, rod.notches[2].depth);
        if (bd < in)
            violate("DepthOrder", "rod " + std::to_string(r) + " boundary notch shallower than interior",
                    -1, -1, ri);
        if (rod.notches[0].facing != NotchFacing::Down || rod.notches[3].facing != NotchFacing::Down ||
            rod.notches[1].facing != NotchFacing::Up || rod.notches[2].facing != NotchFacing::Up)
            violate("NotchFacing", "rod " + std::to_string(r) + " notch facing inconsistent with role",
                    -1, -1, ri);

        bool path_ok = true;
        for (int k = 0; k < 4; ++k)
            if (rod.vertices[k] < 0 || rod.vertices[k] >= g.vertex_count) path_ok = false;
        for (int k = 0; k < 3 && path_ok; ++k) {
            int e = rod.edges[k];
            if (e < 0 || e >= E) {
                path_ok = false;
                break;
            }
            auto [a, b] = g.edges[e];
            int u = rod.vertices[k], v = rod.vertices[k + 1];
            if (!((a == u && b == v) || (a == v && b == u))) path_ok = false;
        }
        if (path_ok) {
            // Simple path: the four vertices are distinct.
            for (int i = 0; i < 4 && path_ok; ++i)
                for (int j = i + 1; j < 4; ++j)
                    if (rod.vertices[i] == rod.vertices[j]) path_ok = false;
        }
        if (!path_ok) {
            violate("RodNotAPath", "rod " + std::to_string(r) + " edges do not form a simple path",
                    -1, -1, ri);
            continue;
        }

        for (int k = 0; k < 3; ++k) ++edge_cover[rod.edges[k]];
        ++end_count[rod.vertices[0]];
        ++end_count[rod.vertices[3]];
        ++through_count[rod.vertices[1]];
        ++through_count[rod.vertices[2]];
    }

    for (int e = 0; e < E; ++e) {
        if (edge_cover[e] == 0)
            violate("EdgeUncovered", "edge " + std::to_string(e) + " belongs to no rod", -1, e);
        else if (edge_cover[e] > 1)
            violate("EdgeMultiplyCovered", "edge " + std::to_string(e) + " belongs to " +
                                               std::to_string(edge_cover[e]) + " rods", -1, e);
    }
    auto deg = g.degrees();
    for (int v = 0; v < g.vertex_count; ++v) {
        if (deg[v] != 3)
            violate("WrongDegree", "vertex " + std::to_string(v) + " has degree " + std::to_string(deg[v]),
                    v);
        if (end_count[v] > 1)
            violate("BoundaryBoundaryJunction",
                    "vertex " + std::to_string(v) + " is the endpoint of " +
                        std::to_string(end_count[v]) + " rods", v);
        else if (end_count[v] == 0)
            violate("MissingBoundaryNotch", "vertex " + std::to_string(v) + " ends no rod", v);
        if (through_count[v] > 1)
            violate("InteriorInteriorJunction",
                    "vertex " + std::to_string(v) + " is interior to " +
                        std::to_string(through_count[v]) + " rods", v);
        else if (through_count[v] == 0)
            violate("MissingInteriorNotch", "vertex " + std::to_string(v) + " is interior to no rod", v);
    }
    return report;
}

CountingIdentities counting_identities(const RodNetwork& net) {
    CountingIdentities c;
    c.rods = static_cast<int>(net.rods.size());
    c.vertices = net.graph.vertex_count;
    c.edges = static_cast<int>(net.graph.edges.size());
    if (c.vertices % 2 != 0 || c.rods != c.vertices / 2 || c.edges != 3 * c.rods)
        throw Error(ErrorCode::IdentityViolated,
                    "rods=" + std::to_string(c.rods) + " V=" + std::to_string(c.vertices) +
                        " E=" + std::to_string(c.edges) + " violate rods=V/2, E=3*rods");
    return c;
}

namespace {

struct SearchState {
    const Graph* graph;
    std::vector<std::vector<std::pair<int, int>>> adj;  // vertex -> (neighbor, edge)
    std::vector<char> edge_used;
    std::vector<char> end_done;      // vertex already endpoint of a rod
    std::vector<char> through_done;  // vertex already interior of a rod
    std::vector<std::vector<int>> rods_at_vertex;  // straightness bookkeeping
    std::vector<Rod> rods;
    int limit = 1;
    std::vector<RodNetwork> found;
    std::set<std::vector<std::array<int, 3>>> seen_partitions;

    bool push_solution() {
        std::vector<std::array<int, 3>> partition;
        for (const Rod& r : rods) {
            std::array<int, 3> t = r.edges;
            std::sort(t.begin(), t.end());
            partition.push_back(t);
        }
        std::sort(partition.begin(), partition.end());
        if (!seen_partitions.insert(partition).second) return false;
        RodNetwork net;
        net.graph = *graph;
        net.rods = rods;
        found.push_back(std::move(net));
        return static_cast<int>(found.size()) >= limit;
    }
};

// Candidate rods ending at vertex v: simple paths (v, a, b, c) over
// unused edges with compatible vertex roles.
bool try_rods_at(SearchState& st, int v);

bool search(SearchState& st) {
    // Most-constrained vertex: fewest candidate end-edges among the
    // vertices still missing their rod endpoint; ties by lowest id.
    int best = -1;
    int best_count = 1 << 30;
    for (int v = 0; v < st.graph->vertex_count; ++v) {
        if (st.end_done[v]) continue;
        int count = 0;
        for (auto [w, e] : st.adj[v])
            if (!st.edge_used[e]) ++count;
        if (count < best_count) {
            best_count = count;
            best = v;
        }
    }
    if (best == -1) return st.push_solution();
    if (best_count == 0) return false;  // dead end: no edge left to end a rod at `best`
    return try_rods_at(st, best);
}

bool try_rods_at(SearchState& st, int v0) {
    for (auto [v1, e0] : st.adj[v0]) {
        if (st.edge_used[e0] || v1 == v0 || st.through_done[v1]) continue;
        for (auto [v2, e1] : st.adj[v1]) {
            if (st.edge_used[e1] || e1 == e0 || st.through_done[v2]) continue;
            if (v2 == v0 || v2 == v1) continue;
            for (auto [v3, e2] : st.adj[v2]) {
                if (st.edge_used[e2] || e2 == e1 || e2 == e0) continue;
                if (v3 == v0 || v3 == v1 || v3 == v2 || st.end_done[v3]) continue;
                // Straight rods cross pairwise at most once: the partner
                // rods already present at the four junctions must be
                // pairwise distinct.
                int partners[4] = {-1, -1, -1, -1};
                int np = 0;
                bool straight_ok = true;
                for (int v : {v0, v1, v2, v3}) {
                    for (int other : st.rods_at_vertex[v]) {
                        for (int q = 0; q < np && straight_ok; ++q)
                            if (partners[q] == other) straight_ok = false;
                        partners[np++] = other;
                    }
                    if (!straight_ok) break;
                }
                if (!straight_ok) continue;
                Rod rod;
                rod.vertices = {v0, v1, v2, v3};
                rod.edges = {e0, e1, e2};
                int rod_id = static_cast<int>(st.rods.size());
                st.edge_used[e0] = st.edge_used[e1] = st.edge_used[e2] = 1;
                st.end_done[v0] = st.end_done[v3] = 1;
                st.through_done[v1] = st.through_done[v2] = 1;
                for (int v : {v0, v1, v2, v3}) st.rods_at_vertex[v].push_back(rod_id);
                st.rods.push_back(rod);
                if (search(st)) return true;
                st.rods.pop_back();
                for (int v : {v0, v1, v2, v3}) st.rods_at_vertex[v].pop_back();
                st.edge_used[e0] = st.edge_used[e1] = st.edge_used[e2] = 0;
                st.end_done[v0] = st.end_done[v3] = 0;
                st.through_done[v1] = st.through_done[v2] = 0;
            }
        }
    }
    return false;
}

SearchState make_state(const Graph& graph, int limit) {
    if (!graph.is_cubic()) throw Error(ErrorCode::NotCubic, "decompose requires a 3-regular graph");
    if (!graph.is_connected()) throw Error(ErrorCode::Disconnected, "decompose requires a connected graph");

    SearchState st;
    st.graph = &graph;
    st.adj.resize(graph.vertex_count);
    for (size_t e = 0; e < graph.edges.size(); ++e) {
        auto [a, b] = graph.edges[e];
        st.adj[a].push_back({b, static_cast<int>(e)});
        st.adj[b].push_back({a, static_cast<int>(e)});
    }
    st.edge_used.assign(graph.edges.size(), 0);
    st.end_done.assign(graph.vertex_count, 0);
    st.through_done.assign(graph.vertex_count, 0);
    st.rods_at_vertex.assign(graph.vertex_count, {});
    st.limit = limit;
    return st;
}

}  // namespace

std::optional<RodNetwork> decompose(const Graph& graph) {
    // Parity guard: a valid network needs V even (vacuous for cubic graphs).
    if (graph.vertex_count % 2 != 0) return std::nullopt;
    SearchState st = make_state(graph, 1);
    search(st);
    if (st.found.empty()) return std::nullopt;
    return std::move(st.found.front());
}

std::vector<RodNetwork> decompose_all(const Graph& graph, int limit) {
    if (limit <= 0) return {};
    if (graph.vertex_count % 2 != 0) return {};
    SearchState st = make_state(graph, limit);
    search(st);
    return std::move(st.found);
}

RodNetwork rod_network_from_pattern(const PeriodicPattern& p) {
    std::vector<ResolvedRod> resolved = resolve_rods(p);
    RodNetwork net;
    net.graph.vertex_count = p.vertex_count();
    for (const PatternEdge& e : p.edges) net.graph.edges.emplace_back(e.v1, e.v2);
    for (const ResolvedRod& rr : resolved) {
        Rod rod;
        rod.vertices = rr.vertices;
        rod.edges = rr.edge_ids;
        net.rods.push_back(rod);
    }
    return net;
}

}  // namespace davinci
