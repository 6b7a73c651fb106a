#include <doctest.h>

#include <cstdio>
#include <fstream>
#include <sstream>

#include "davinci/cli_commands.hpp"
#include "davinci/errors.hpp"
#include "davinci/io.hpp"

using namespace davinci;

namespace {

std::string write_temp(const std::string& content) {
    static int counter = 0;
    std::string path = "/tmp/davinci_io_test_" + std::to_string(counter++) + ".txt";
    std::ofstream f(path);
    f << content;
    return path;
}

}  // namespace

TEST_CASE("map files round-trip") {
    MapFile f;
    f.vertex_ids = {10, 20, 30};
    f.edges = {{0, 10, 20}, {1, 20, 30}, {2, 30, 10}};
    f.rotations[10] = {0, 5};
    f.rotations[20] = {1, 2};
    f.rotations[30] = {3, 4};
    f.coords[10] = {0.25, -1.5, 3.0};
    f.coords[20] = {1, 0, 0};
    f.coords[30] = {0, 1, 0};

    std::ostringstream os;
    write_map_file(os, f);
    std::istringstream is(os.str());
    MapFile g = parse_map_file(is);
    CHECK(g.vertex_ids == f.vertex_ids);
    CHECK(g.edges == f.edges);
    CHECK(g.rotations == f.rotations);
    CHECK(g.coords == f.coords);

    SurfaceMap m = to_surface_map(g);
    CHECK(m.vertex_count() == 3);
    CHECK(m.edge_count() == 3);
    CHECK(euler_characteristic(m) == 2);
}

TEST_CASE("parse errors carry line numbers") {
    std::istringstream bad("v 0\nnonsense 1 2\n");
    try {
        parse_map_file(bad);
        FAIL("expected ParseError");
    } catch (const Error& e) {
        CHECK(e.code() == ErrorCode::ParseError);
        CHECK(std::string(e.what()).find("line 2") != std::string::npos);
    }

    std::istringstream empty("# only a comment\n");
    CHECK_THROWS_AS(parse_map_file(empty), Error);

    std::istringstream bad_rational("lattice 1 0 0 1\nv 0 1/0 0\n");
    CHECK_THROWS_AS(parse_pattern_file(bad_rational), Error);
}

TEST_CASE("cli euler on builtins") {
    CliCommon common;
    std::ostringstream out;
    int code = cmd_euler("@pattern-01", "torus", 0, common, out);
    CHECK(code == kExitOk);
    CHECK(out.str().find("chi=0") != std::string::npos);
    CHECK(out.str().find("manifest=") != std::string::npos);

    std::ostringstream out2;
    CHECK(cmd_euler("@cube", "auto", 0, common, out2) == kExitOk);
    CHECK(out2.str().find("chi=2") != std::string::npos);
}

TEST_CASE("cli euler replicate series") {
    CliCommon common;
    std::ostringstream out;
    int code = cmd_euler("@pattern-02", "replicate", 6, common, out);
    CHECK(code == kExitOk);
    CHECK(out.str().find("chi_estimate=0") != std::string::npos);
}

TEST_CASE("cli validate exit codes") {
    CliCommon common;
    std::ostringstream out;
    CHECK(cmd_validate("@pattern-05", common, out) == kExitOk);

    // Boundary-boundary junction in a hand-written rod network.
    std::string path = write_temp(
        "v 0\nv 1\nv 2\nv 3\nv 4\nv 5\nv 6\n"
        "e 0 0 1\ne 1 1 2\ne 2 2 3\ne 3 0 4\ne 4 4 5\ne 5 5 6\n"
        "rod 0 0 1 2 3\nrod 1 0 4 5 6\n");
    std::ostringstream out2;
    CHECK(cmd_validate(path, common, out2) == kExitInvalid);
    CHECK(out2.str().find("BoundaryBoundaryJunction") != std::string::npos);
    std::remove(path.c_str());

    std::string empty = write_temp("");
    std::ostringstream out3;
    CHECK(cmd_validate(empty, common, out3) == kExitParse);
    std::remove(empty.c_str());
}

TEST_CASE("cli decompose reports") {
    CliCommon common;
    std::ostringstream out;
    CHECK(cmd_decompose("@tetra", std::nullopt, common, out) == kExitOk);
    CHECK(out.str().find("decomposition=none") != std::string::npos);

    std::ostringstream out2;
    CHECK(cmd_decompose("@trunc-icosa", std::nullopt, common, out2) == kExitOk);
    CHECK(out2.str().find("rods=30") != std::string::npos);

    // Non-cubic input is a validation failure.
    std::string path = write_temp("v 0\nv 1\ne 0 0 1\n");
    std::ostringstream out3;
    CHECK(cmd_decompose(path, std::nullopt, common, out3) == kExitInvalid);
    std::remove(path.c_str());
}

TEST_CASE("cli defect on the cube") {
    CliCommon common;
    std::ostringstream out;
    CHECK(cmd_defect("@cube", common, out) == kExitOk);
    CHECK(out.str().find("total_deg=720") != std::string::npos);
    CHECK(out.str().find("theorem_applicable=0") != std::string::npos);
}

TEST_CASE("cli export round trips through files") {
    CliCommon common;
    std::ostringstream out;
    std::string svg = "/tmp/davinci_test_pattern.svg";
    CHECK(cmd_export_svg("@pattern-03", 2, std::nullopt, svg, common, out) == kExitOk);
    std::ifstream f(svg);
    std::string content((std::istreambuf_iterator<char>(f)), std::istreambuf_iterator<char>());
    CHECK(content.find("<svg") != std::string::npos);
    CHECK(content.find("<line") != std::string::npos);
    std::remove(svg.c_str());
    std::remove((svg + ".manifest.json").c_str());

    std::string obj = "/tmp/davinci_test_cube.obj";
    std::ostringstream out2;
    CHECK(cmd_export_obj("@cube", true, obj, common, out2) == kExitOk);
    std::ifstream g(obj);
    std::string objtext((std::istreambuf_iterator<char>(g)), std::istreambuf_iterator<char>());
    CHECK(objtext.find("v ") != std::string::npos);
    CHECK(objtext.find("f ") != std::string::npos);
    std::remove(obj.c_str());
    std::remove((obj + ".manifest.json").c_str());
}

TEST_CASE("cli formfind summary") {
    CliCommon common;
    FormFindCliOptions opts;
    opts.rings = 1;
    opts.thickness = 10;
    opts.depth_deep = 4;
    opts.depth_shallow = 2;
    opts.tol = 1e-8;
    std::ostringstream out;
    int code = cmd_formfind("@pattern-01", opts, common, out);
    CHECK(code == kExitOk);
    CHECK(out.str().find("converged=1") != std::string::npos);
}

TEST_CASE("cli export-svg patch mode") {
    CliCommon common;
    std::ostringstream out;
    std::string svg = "/tmp/davinci_test_patch.svg";
    CHECK(cmd_export_svg("@pattern-01", 1, 2, svg, common, out) == kExitOk);
    std::ifstream f(svg);
    std::string content((std::istreambuf_iterator<char>(f)), std::istreambuf_iterator<char>());
    CHECK(content.find("<line") != std::string::npos);
    std::remove(svg.c_str());
    std::remove((svg + ".manifest.json").c_str());
}
