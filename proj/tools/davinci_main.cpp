#include <CLI11.hpp>
#include <iostream>

#include "davinci/cli_commands.hpp"

int main(int argc, char** argv) {
    CLI::App app{"Da Vinci dome toolkit: rod patterns, surface maps, angular defects, form-finding"};
    app.require_subcommand(1);

    davinci::CliCommon common;
    app.add_option("--precision", common.precision, "significant digits for numeric output");
    app.add_flag("--radians", common.radians, "report angles in radians");
    app.add_option("--tol-collinear", common.collinear_tol, "collinearity tolerance (radians)");
    std::string manifest_path;
    app.add_option("--manifest", manifest_path, "write the run manifest to this path");

    std::string input;

    auto* validate = app.add_subcommand("validate", "check a pattern or rod network");
    validate->add_option("input", input, "pattern/map file or @builtin")->required();

    auto* euler = app.add_subcommand("euler", "Euler characteristic reports");
    euler->add_option("input", input)->required();
    std::string surface = "auto";
    int replicate_n = 8;
    euler->add_option("--surface", surface, "auto | torus | replicate");
    euler->add_option("--n", replicate_n, "replication depth for --surface replicate");

    auto* defect = app.add_subcommand("defect", "angular defect and theorem report");
    defect->add_option("input", input)->required();

    auto* decompose = app.add_subcommand("decompose", "search rod decompositions of a cubic graph");
    decompose->add_option("input", input)->required();
    int all_limit = 0;
    auto* all_opt = decompose->add_option("--all", all_limit, "list up to N decompositions");

    auto* formfind = app.add_subcommand("formfind", "form-find a dome patch");
    formfind->add_option("input", input)->required();
    davinci::FormFindCliOptions ff;
    formfind->add_option("--rings", ff.rings, "patch radius in lattice cells");
    formfind->add_option("--thickness", ff.thickness, "rod thickness");
    formfind->add_option("--depth-deep", ff.depth_deep, "boundary notch depth");
    formfind->add_option("--depth-shallow", ff.depth_shallow, "interior notch depth");
    formfind->add_option("--max-iter", ff.max_iter, "iteration cap");
    formfind->add_option("--tol", ff.tol, "residual tolerance");
    formfind->add_option("--seed", ff.seed, "seed for randomized restarts");
    std::string solution_path, obj_path;
    formfind->add_option("--solution", solution_path, "write the solution file here");
    formfind->add_option("--obj", obj_path, "write rod centerlines as OBJ");

    auto* export_svg = app.add_subcommand("export-svg", "draw a pattern or patch");
    export_svg->add_option("input", input)->required();
    int repeat = 3;
    int rings = 0;
    export_svg->add_option("--repeat", repeat, "replication for the drawing");
    auto* rings_opt = export_svg->add_option("--rings", rings, "draw a patch instead");
    std::string output;
    export_svg->add_option("--output,-o", output, "output file")->required();

    auto* export_obj = app.add_subcommand("export-obj", "export an embedding as OBJ");
    export_obj->add_option("input", input)->required();
    bool tri = false;
    export_obj->add_flag("--triangulate", tri, "triangulate faces first");
    export_obj->add_option("--output,-o", output, "output file")->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? 0 : davinci::kExitParse;
    }
    if (!manifest_path.empty()) common.manifest_path = manifest_path;

    if (validate->parsed()) return davinci::cmd_validate(input, common, std::cout);
    if (euler->parsed()) return davinci::cmd_euler(input, surface, replicate_n, common, std::cout);
    if (defect->parsed()) return davinci::cmd_defect(input, common, std::cout);
    if (decompose->parsed())
        return davinci::cmd_decompose(
            input, all_opt->count() ? std::optional<int>(all_limit) : std::nullopt, common,
            std::cout);
    if (formfind->parsed()) {
        if (!solution_path.empty()) ff.solution_path = solution_path;
        if (!obj_path.empty()) ff.obj_path = obj_path;
        return davinci::cmd_formfind(input, ff, common, std::cout);
    }
    if (export_svg->parsed())
        return davinci::cmd_export_svg(
            input, repeat, rings_opt->count() ? std::optional<int>(rings) : std::nullopt, output,
            common, std::cout);
    if (export_obj->parsed())
        return davinci::cmd_export_obj(input, tri, output, common, std::cout);
    return davinci::kExitParse;
}
