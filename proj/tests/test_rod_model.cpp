#include <doctest.h>

#include <algorithm>
#include <set>

#include "davinci/builtins.hpp"
#include "davinci/errors.hpp"
#include "davinci/periodic_pattern.hpp"
#include "davinci/rod_model.hpp"
#include "cubic_graphs_data.hpp"

using namespace davinci;

namespace {

// Brute-force oracle: enumerate every partition of the edge set into
// unordered triples, then keep those where each triple is a simple
// 3-edge path and the endpoint/interior roles work out. Deliberately
// structure-free.
int count_rod_partitions(const Graph& g) {
    int E = static_cast<int>(g.edges.size());
    if (E % 3 != 0) return 0;
    std::vector<int> order;
    int count = 0;

    std::vector<char> used(E, 0);
    std::vector<std::array<int, 3>> triples;

    // Try to arrange a triple of edges into a path v0-v1-v2-v3.
    auto as_path = [&](const std::array<int, 3>& t, std::array<int, 4>& path) {
        std::array<int, 3> perm = {0, 1, 2};
        std::sort(perm.begin(), perm.end());
        do {
            auto [a0, b0] = g.edges[t[perm[0]]];
            for (int flip0 = 0; flip0 < 2; ++flip0) {
                int v0 = flip0 ? b0 : a0;
                int v1 = flip0 ? a0 : b0;
                auto [a1, b1] = g.edges[t[perm[1]]];
                int v2 = a1 == v1 ? b1 : (b1 == v1 ? a1 : -1);
                if (v2 < 0) continue;
                auto [a2, b2] = g.edges[t[perm[2]]];
                int v3 = a2 == v2 ? b2 : (b2 == v2 ? a2 : -1);
                if (v3 < 0) continue;
                std::set<int> distinct = {v0, v1, v2, v3};
                if (distinct.size() != 4) continue;
                path = {v0, v1, v2, v3};
                return true;
            }
        } while (std::next_permutation(perm.begin(), perm.end()));
        return false;
    };

    auto validate_partition = [&]() {
        std::vector<int> ends(g.vertex_count, 0), throughs(g.vertex_count, 0);
        std::vector<std::vector<int>> rods_at(g.vertex_count);
        for (size_t ri = 0; ri < triples.size(); ++ri) {
            const auto& t = triples[ri];
            std::array<int, 4> path;
            if (!as_path(t, path)) return;
            ++ends[path[0]];
            ++ends[path[3]];
            ++throughs[path[1]];
            ++throughs[path[2]];
            for (int v : path) rods_at[v].push_back(static_cast<int>(ri));
        }
        for (int v = 0; v < g.vertex_count; ++v)
            if (ends[v] != 1 || throughs[v] != 1) return;
        // Straightness: two rods share at most one junction.
        std::set<std::pair<int, int>> seen_pairs;
        for (int v = 0; v < g.vertex_count; ++v) {
            if (rods_at[v].size() != 2) return;
            auto key = std::minmax(rods_at[v][0], rods_at[v][1]);
            if (!seen_pairs.insert(key).second) return;
        }
        ++count;
    };

    auto rec = [&](auto&& self) -> void {
        int first = -1;
        for (int e = 0; e < E; ++e)
            if (!used[e]) {
                first = e;
                break;
            }
        if (first == -1) {
            validate_partition();
            return;
        }
        used[first] = 1;
        for (int e2 = first + 1; e2 < E; ++e2) {
            if (used[e2]) continue;
            used[e2] = 1;
            for (int e3 = e2 + 1; e3 < E; ++e3) {
                if (used[e3]) continue;
                used[e3] = 1;
                triples.push_back({first, e2, e3});
                self(self);
                triples.pop_back();
                used[e3] = 0;
            }
            used[e2] = 0;
        }
        used[first] = 0;
    };
    rec(rec);
    return count;
}

Graph k4() {
    return {4, {{0, 1}, {0, 2}, {0, 3}, {1, 2}, {1, 3}, {2, 3}}};
}

Graph triangular_prism() {
    return {6, {{0, 1}, {1, 2}, {2, 0}, {3, 4}, {4, 5}, {5, 3}, {0, 3}, {1, 4}, {2, 5}}};
}

}  // namespace

TEST_CASE("K4 admits no rod decomposition") {
    CHECK(count_rod_partitions(k4()) == 0);
    CHECK(!decompose(k4()).has_value());
    CHECK(decompose_all(k4(), 10).empty());
}

TEST_CASE("triangular prism decompositions match the brute force count") {
    Graph g = triangular_prism();
    int expected = count_rod_partitions(g);
    auto all = decompose_all(g, 1000);
    CHECK(static_cast<int>(all.size()) == expected);
    for (const RodNetwork& net : all) {
        CHECK(validate_network(net).valid());
        counting_identities(net);
    }
}

TEST_CASE("decompose agrees with brute force on all cubic graphs with V <= 8") {
    int checked = 0;
    for (const auto& data : testing::all_cubic_graphs_upto_10()) {
        if (data.vertex_count > 8) continue;
        Graph g{data.vertex_count, data.edges};
        int expected = count_rod_partitions(g);
        auto found = decompose(g);
        CHECK(found.has_value() == (expected > 0));
        if (found) CHECK(validate_network(*found).valid());
        CHECK(static_cast<int>(decompose_all(g, 1 << 20).size()) == expected);
        ++checked;
    }
    CHECK(checked == 8);  // 1 + 2 + 5 isomorphism classes
}

TEST_CASE("truncated icosahedron decomposes into 30 rods") {
    Graph g = graph_of(make_truncated_icosahedron());
    auto net = decompose(g);
    REQUIRE(net.has_value());
    CHECK(net->rods.size() == 30);
    CHECK(validate_network(*net).valid());
    CountingIdentities c = counting_identities(*net);
    CHECK(c.rods == 30);
    CHECK(c.vertices == 60);
    CHECK(c.edges == 90);
}

TEST_CASE("catalog quotient with rods stripped is re-decomposable") {
    // Small quotients wrap a rod pair through several shared vertices,
    // which the straightness rule forbids; pattern-02's quotient is
    // large enough to admit an abstract decomposition.
    const PeriodicPattern& p = *find_pattern("pattern-02");
    Graph g;
    g.vertex_count = p.vertex_count();
    for (const PatternEdge& e : p.edges) g.edges.emplace_back(e.v1, e.v2);
    auto net = decompose(g);
    REQUIRE(net.has_value());
    CHECK(validate_network(*net).valid());
}

TEST_CASE("validation pinpoints constructed violations") {
    // Two rods whose endpoints collide at vertex 0, over an 8-vertex
    // graph shaped like two 4-paths joined at their ends.
    RodNetwork net;
    net.graph.vertex_count = 8;
    net.graph.edges = {{0, 1}, {1, 2}, {2, 3}, {0, 4}, {4, 5}, {5, 6}};
    Rod r1;
    r1.vertices = {0, 1, 2, 3};
    r1.edges = {0, 1, 2};
    Rod r2;
    r2.vertices = {0, 4, 5, 6};
    r2.edges = {3, 4, 5};
    net.rods = {r1, r2};
    ValidationReport report = validate_network(net);
    CHECK(!report.valid());
    bool found_bb = false;
    for (const Violation& v : report.violations)
        if (v.kind == "BoundaryBoundaryJunction" && v.vertex == 0) found_bb = true;
    CHECK(found_bb);

    // A rod whose edges do not form a path.
    RodNetwork bad;
    bad.graph.vertex_count = 4;
    bad.graph.edges = {{0, 1}, {2, 3}, {1, 2}};
    Rod r3;
    r3.vertices = {0, 1, 2, 3};
    r3.edges = {0, 0, 1};  // repeats edge 0 instead of the middle edge
    bad.rods = {r3};
    ValidationReport report2 = validate_network(bad);
    bool found_path = false;
    for (const Violation& v : report2.violations)
        if (v.kind == "RodNotAPath") found_path = true;
    CHECK(found_path);
}

TEST_CASE("counting identities reject odd vertex counts") {
    RodNetwork net;
    net.graph.vertex_count = 5;
    net.graph.edges = {{0, 1}, {1, 2}, {2, 3}};
    Rod r;
    r.vertices = {0, 1, 2, 3};
    r.edges = {0, 1, 2};
    net.rods = {r};
    CHECK_THROWS_AS(counting_identities(net), Error);
}

TEST_CASE("decompose input guards") {
    Graph not_cubic{4, {{0, 1}, {1, 2}, {2, 3}, {3, 0}}};
    CHECK_THROWS_AS(decompose(not_cubic), Error);

    Graph disconnected{8, {{0, 1}, {0, 2}, {0, 3}, {1, 2}, {1, 3}, {2, 3},
                           {4, 5}, {4, 6}, {4, 7}, {5, 6}, {5, 7}, {6, 7}}};
    CHECK_THROWS_AS(decompose(disconnected), Error);

    CHECK(decompose_all(k4(), 0).empty());

    // Odd vertex count: the parity guard answers None before any search.
    Graph odd{5, {{0, 1}, {1, 2}, {2, 3}, {3, 4}, {4, 0}}};
    CHECK(!decompose(odd).has_value());
}
