#include <doctest.h>

#include <random>
#include <set>

#include "davinci/periodic_pattern.hpp"
#include "davinci/wallpaper.hpp"

using namespace davinci;

namespace {

// Undecorated square grid with a 2x2 cell so candidate translations are
// nontrivial.
PeriodicPattern square_grid_2x2() {
    PeriodicPattern p;
    p.lattice[0][0] = 2;
    p.lattice[1][1] = 2;
    for (int a = 0; a < 2; ++a)
        for (int b = 0; b < 2; ++b)
            p.vertices.push_back({Rational(a, 2), Rational(b, 2)});
    auto id = [](int a, int b) { return (a % 2) * 2 + (b % 2); };
    for (int a = 0; a < 2; ++a)
        for (int b = 0; b < 2; ++b) {
            p.edges.push_back({id(a, b), id(a + 1, b), {a == 1 ? 1 : 0, 0}});
            p.edges.push_back({id(a, b), id(a, b + 1), {0, b == 1 ? 1 : 0}});
        }
    return p;
}

}  // namespace

TEST_CASE("square grid classifies as p4m") {
    WallpaperClass wc = classify_wallpaper(square_grid_2x2());
    CHECK(wc.name == "p4m");
    CHECK(wc.max_rotation_order == 4);
    CHECK(wc.mirror_count > 0);
}

TEST_CASE("perturbed vertex breaks all symmetry") {
    PeriodicPattern p = square_grid_2x2();
    p.vertices[3] = {Rational(9, 16), Rational(7, 13)};
    WallpaperClass wc = classify_wallpaper(p);
    CHECK(wc.name == "p1");
}

TEST_CASE("catalog realizes the six named groups") {
    std::set<std::string> classes;
    for (const PeriodicPattern& p : catalog()) {
        if (p.name == "pattern-new") continue;  // the eleven kit patterns only
        classes.insert(classify_wallpaper(p).name);
    }
    for (const char* required : {"pmg", "pgg", "p31m", "p4g", "p4", "p6"}) {
        CAPTURE(required);
        CHECK(classes.count(required) == 1);
    }
}

TEST_CASE("classification is invariant under unimodular reparameterization") {
    std::mt19937 rng(99);
    std::vector<std::array<std::array<int, 2>, 2>> mats = {
        {{{1, 1}, {0, 1}}}, {{{1, 0}, {-1, 1}}}, {{{0, -1}, {1, 0}}}, {{{3, 2}, {1, 1}}},
        {{{1, 4}, {0, 1}}}, {{{-1, 0}, {2, 1}}}};
    for (const PeriodicPattern& p : catalog()) {
        std::string base = classify_wallpaper(p).name;
        for (int trial = 0; trial < 3; ++trial) {
            const auto& U = mats[rng() % mats.size()];
            CAPTURE(p.name);
            CHECK(classify_wallpaper(reparameterize(p, U)).name == base);
        }
    }
}

TEST_CASE("decoration matters: rods can break mirror symmetry") {
    // The undecorated edge set of pattern-06 has at least the symmetry
    // of its decorated form; stripping rods never reduces the group.
    const PeriodicPattern* p = find_pattern("pattern-06");
    REQUIRE(p != nullptr);
    PeriodicPattern stripped = *p;
    stripped.rods.clear();
    WallpaperClass with_rods = classify_wallpaper(*p);
    WallpaperClass without = classify_wallpaper(stripped);
    CHECK(without.elements.size() >= with_rods.elements.size());
}

TEST_CASE("undecorated reference lattices hit the classic classes") {
    // Honeycomb: two vertices, three edges on the hexagonal lattice.
    PeriodicPattern honey;
    honey.lattice[0][0] = 1;
    honey.lattice[1][0] = 0.5;
    honey.lattice[1][1] = 0.8660254037844386;
    honey.vertices.push_back({Rational(1, 3), Rational(1, 3)});
    honey.vertices.push_back({Rational(2, 3), Rational(2, 3)});
    honey.edges.push_back({0, 1, {0, 0}});
    honey.edges.push_back({0, 1, {-1, 0}});
    honey.edges.push_back({0, 1, {0, -1}});
    CHECK(classify_wallpaper(honey).name == "p6m");

    // Rectangular grid: mirrors in both directions through every vertex.
    PeriodicPattern rect;
    rect.lattice[0][0] = 1;
    rect.lattice[1][1] = 2;
    rect.vertices.push_back({Rational(0), Rational(0)});
    rect.edges.push_back({0, 0, {1, 0}});
    rect.edges.push_back({0, 0, {0, 1}});
    CHECK(classify_wallpaper(rect).name == "pmm");

    // The same grid on a rhombic lattice keeps only the diagonal
    // mirrors with off-mirror 2-folds.
    PeriodicPattern rhombic;
    rhombic.lattice[0][0] = 1.0;
    rhombic.lattice[0][1] = 0.0;
    rhombic.lattice[1][0] = 0.6;
    rhombic.lattice[1][1] = 0.8;
    rhombic.vertices.push_back({Rational(0), Rational(0)});
    rhombic.edges.push_back({0, 0, {1, 0}});
    rhombic.edges.push_back({0, 0, {0, 1}});
    CHECK(classify_wallpaper(rhombic).name == "cmm");
}
