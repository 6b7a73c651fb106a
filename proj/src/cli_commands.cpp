#include "davinci/cli_commands.hpp"

#include <chrono>
#include <cstdio>
#include <fstream>
#include <functional>
#include <json.hpp>
#include <ostream>
#include <sstream>

#include "davinci/builtins.hpp"
#include "davinci/embed_defect.hpp"
#include "davinci/errors.hpp"
#include "davinci/export.hpp"
#include "davinci/form_find.hpp"
#include "davinci/io.hpp"
#include "davinci/periodic_pattern.hpp"
#include "davinci/rod_model.hpp"
#include "davinci/wallpaper.hpp"

namespace davinci {

const char* kToolVersion = "davinci 0.1.0";

namespace {

using json = nlohmann::json;

std::string fmt(double v, int precision) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.*g", precision, v);
    return buf;
}

// Every run emits exactly one manifest: to --manifest or alongside the
// first output file, otherwise as the final report line.
struct ManifestScope {
    json data;
    const CliCommon* common;
    std::ostream* out;
    std::optional<std::string> file_target;
    std::chrono::steady_clock::time_point start = std::chrono::steady_clock::now();

    ManifestScope(const std::string& command, const std::string& input, const CliCommon& c,
                  std::ostream& os)
        : common(&c), out(&os) {
        data["command"] = command;
        data["input"] = input;
        data["version"] = kToolVersion;
    }

    ~ManifestScope() {
        auto ms = std::chrono::duration_cast<std::chrono::milliseconds>(
                      std::chrono::steady_clock::now() - start)
                      .count();
        data["wall_ms"] = ms;
        std::optional<std::string> path = common->manifest_path;
        if (!path && file_target) path = *file_target + ".manifest.json";
        if (path) {
            std::ofstream f(*path);
            f << data.dump(2) << "\n";
        } else {
            (*out) << "manifest=" << data.dump() << "\n";
        }
    }
};

struct ResolvedInput {
    std::optional<PeriodicPattern> pattern;
    std::optional<Embedding3D> embedding;  // coords may be zero for plain maps
    std::optional<MapFile> map_file;
    bool has_coords = false;
};

ResolvedInput resolve_input(const std::string& input) {
    ResolvedInput r;
    if (!input.empty() && input[0] == '@') {
        std::string name = input.substr(1);
        if (const PeriodicPattern* p = find_pattern(name)) {
            r.pattern = *p;
            return r;
        }
        if (auto e = builtin_embedding(name)) {
            r.embedding = std::move(*e);
            r.has_coords = true;
            return r;
        }
        throw Error(ErrorCode::ParseError, "unknown builtin '" + input + "'");
    }
    if (looks_like_pattern_file(input)) {
        r.pattern = read_pattern_file(input);
        return r;
    }
    MapFile f = read_map_file(input);
    Embedding3D e;
    e.map = to_surface_map(f);
    if (!f.coords.empty()) {
        e.coords.resize(f.vertex_ids.size(), Eigen::Vector3d::Zero());
        for (size_t i = 0; i < f.vertex_ids.size(); ++i) {
            auto it = f.coords.find(f.vertex_ids[i]);
            if (it == f.coords.end())
                throw Error(ErrorCode::ParseError,
                            "missing coord for vertex " + std::to_string(f.vertex_ids[i]));
            e.coords[i] = {it->second[0], it->second[1], it->second[2]};
        }
        r.has_coords = true;
    } else {
        e.coords.resize(f.vertex_ids.size(), Eigen::Vector3d::Zero());
    }
    r.embedding = std::move(e);
    r.map_file = std::move(f);
    return r;
}

Graph graph_of_input(const ResolvedInput& in) {
    if (in.pattern) {
        Graph g;
        g.vertex_count = in.pattern->vertex_count();
        for (const PatternEdge& e : in.pattern->edges) g.edges.emplace_back(e.v1, e.v2);
        return g;
    }
    Graph g;
    g.vertex_count = in.embedding->map.vertex_count();
    g.edges = in.embedding->map.edges();
    return g;
}

int run_guarded(const std::function<int()>& body, std::ostream& out) {
    try {
        return body();
    } catch (const Error& err) {
        out << "error=" << err.what() << "\n";
        return err.code() == ErrorCode::ParseError ? kExitParse : kExitInvalid;
    } catch (const std::exception& ex) {
        out << "error=" << ex.what() << "\n";
        return kExitInvalid;
    }
}

}  // namespace

int cmd_validate(const std::string& input, const CliCommon& common, std::ostream& out) {
    return run_guarded(
        [&]() {
            ManifestScope manifest("validate", input, common, out);
            ResolvedInput in = resolve_input(input);
            ValidationReport report;
            if (in.pattern) {
                in.pattern->validate();
                SurfaceMap q = torus_quotient(*in.pattern);
                out << "quotient_V=" << q.vertex_count() << "\n";
                out << "quotient_E=" << q.edge_count() << "\n";
                out << "quotient_F=" << q.face_count() << "\n";
                if (!in.pattern->rods.empty())
                    report = validate_network(rod_network_from_pattern(*in.pattern));
            } else if (in.map_file && !in.map_file->rods.empty()) {
                RodNetwork net;
                net.graph.vertex_count = static_cast<int>(in.map_file->vertex_ids.size());
                net.graph.edges = in.embedding->map.edges();
                for (const auto& r : in.map_file->rods) {
                    Rod rod;
                    for (int k = 0; k < 4; ++k)
                        rod.vertices[k] = in.map_file->vertex_index(r[k + 1]);
                    // Resolve path edges by scanning the edge list.
                    for (int k = 0; k < 3; ++k) {
                        rod.edges[k] = -1;
                        for (size_t e = 0; e < net.graph.edges.size(); ++e) {
                            auto [a, b] = net.graph.edges[e];
                            if ((a == rod.vertices[k] && b == rod.vertices[k + 1]) ||
                                (b == rod.vertices[k] && a == rod.vertices[k + 1])) {
                                rod.edges[k] = static_cast<int>(e);
                                break;
                            }
                        }
                    }
                    net.rods.push_back(rod);
                }
                report = validate_network(net);
            }
            for (const Violation& v : report.violations) {
                out << "violation=" << v.kind;
                if (v.vertex >= 0) out << " vertex=" << v.vertex;
                if (v.edge >= 0) out << " edge=" << v.edge;
                if (v.rod >= 0) out << " rod=" << v.rod;
                out << " # " << v.message << "\n";
            }
            out << "valid=" << (report.valid() ? 1 : 0) << "\n";
            manifest.data["valid"] = report.valid();
            return report.valid() ? kExitOk : kExitInvalid;
        },
        out);
}

int cmd_euler(const std::string& input, const std::string& surface, int replicate_n,
              const CliCommon& common, std::ostream& out) {
    return run_guarded(
        [&]() {
            ManifestScope manifest("euler", input, common, out);
            manifest.data["surface"] = surface;
            ResolvedInput in = resolve_input(input);

            if (surface == "replicate") {
                if (!in.pattern)
                    throw Error(ErrorCode::InvalidArgument, "replicate needs a pattern input");
                ReplicationSeries series = replication_series(*in.pattern, replicate_n);
                for (const auto& s : series.samples)
                    out << "n=" << s.n << " V=" << s.V << " E=" << s.E << " F=" << s.F
                        << " sphere_identity=" << (s.sphere_identity_ok ? 1 : 0) << "\n";
                out << "chi_estimate=" << series.chi_estimate.str() << "\n";
                out << "fit_linear=" << series.fit_linear.str() << "\n";
                out << "fit_constant=" << series.fit_constant.str() << "\n";
                bool ok = series.all_sphere_identities_ok && series.chi_zero();
                out << "valid=" << (ok ? 1 : 0) << "\n";
                manifest.data["chi_estimate"] = series.chi_estimate.str();
                return ok ? kExitOk : kExitInvalid;
            }

            SurfaceMap m = in.pattern ? torus_quotient(*in.pattern) : in.embedding->map;
            out << "V=" << m.vertex_count() << "\n";
            out << "E=" << m.edge_count() << "\n";
            out << "F=" << m.face_count() << "\n";
            out << "chi=" << m.euler_characteristic() << "\n";
            FaceCensus census = face_census(m);
            std::ostringstream cs;
            for (auto& [deg, count] : census.histogram) cs << deg << ":" << count << " ";
            out << "face_census=" << cs.str() << "\n";
            if (census.triangles || census.dodecagons) {
                out << "T=" << census.triangles << "\n";
                out << "D=" << census.dodecagons << "\n";
            }
            if (in.pattern) {
                WallpaperClass wc = classify_wallpaper(*in.pattern);
                out << "wallpaper=" << wc.name << "\n";
            }
            manifest.data["chi"] = m.euler_characteristic();
            if (in.pattern && m.euler_characteristic() != 0) return kExitInvalid;
            return kExitOk;
        },
        out);
}

int cmd_defect(const std::string& input, const CliCommon& common, std::ostream& out) {
    return run_guarded(
        [&]() {
            ManifestScope manifest("defect", input, common, out);
            ResolvedInput in = resolve_input(input);
            if (!in.embedding || !in.has_coords)
                throw Error(ErrorCode::InvalidArgument, "defect needs an embedding with coords");

            DefectOptions opts;
            opts.collinear_tol_rad = common.collinear_tol;
            Embedding3D tri = triangulate(*in.embedding);
            DefectReport report = descartes_sum(tri, opts);
            double unit = common.radians ? std::acos(-1.0) / 180.0 : 1.0;
            const char* unit_name = common.radians ? "rad" : "deg";
            for (size_t v = 0; v < report.per_vertex.size(); ++v)
                out << "defect_" << v << "=" << fmt(report.per_vertex[v] * unit, common.precision)
                    << "\n";
            out << "total_" << unit_name << "=" << fmt(report.total * unit, common.precision)
                << "\n";
            std::ostringstream cv;
            for (VertexId v : report.collinear_vertices) cv << v << " ";
            out << "collinear_vertices=" << cv.str() << "\n";
            TheoremVerdict verdict = polyhedron_theorem_check(tri, opts);
            out << "theorem_applicable=" << (verdict.applicable ? 1 : 0) << "\n";
            if (verdict.applicable)
                out << "theorem_certified=" << (verdict.certified ? 1 : 0) << "\n";
            else {
                std::ostringstream mp;
                for (VertexId v : verdict.missing_pairs) mp << v << " ";
                out << "vertices_without_pairs=" << mp.str() << "\n";
            }
            manifest.data["total_deg"] = report.total;
            return kExitOk;
        },
        out);
}

int cmd_decompose(const std::string& input, std::optional<int> all_limit,
                  const CliCommon& common, std::ostream& out) {
    return run_guarded(
        [&]() {
            ManifestScope manifest("decompose", input, common, out);
            ResolvedInput in = resolve_input(input);
            Graph g = graph_of_input(in);
            if (all_limit) {
                auto nets = decompose_all(g, *all_limit);
                out << "count=" << nets.size() << "\n";
                for (size_t i = 0; i < nets.size(); ++i)
                    for (size_t r = 0; r < nets[i].rods.size(); ++r) {
                        const auto& vs = nets[i].rods[r].vertices;
                        out << "solution_" << i << "_rod_" << r << "=" << vs[0] << " " << vs[1]
                            << " " << vs[2] << " " << vs[3] << "\n";
                    }
                manifest.data["count"] = nets.size();
                return kExitOk;
            }
            auto net = decompose(g);
            if (!net) {
                out << "decomposition=none\n";
                manifest.data["decomposition"] = "none";
                return kExitOk;
            }
            counting_identities(*net);
            out << "rods=" << net->rods.size() << "\n";
            for (size_t r = 0; r < net->rods.size(); ++r) {
                const auto& vs = net->rods[r].vertices;
                out << "rod " << r << " " << vs[0] << " " << vs[1] << " " << vs[2] << " " << vs[3]
                    << "\n";
            }
            manifest.data["rods"] = net->rods.size();
            return kExitOk;
        },
        out);
}

int cmd_formfind(const std::string& input, const FormFindCliOptions& opts,
                 const CliCommon& common, std::ostream& out) {
    return run_guarded(
        [&]() {
            ManifestScope manifest("formfind", input, common, out);
            ResolvedInput in = resolve_input(input);
            if (!in.pattern) throw Error(ErrorCode::InvalidArgument, "formfind needs a pattern");

            PatternPatch pp = patch(*in.pattern, opts.rings);
            FormFindConfig config;
            config.max_iterations = opts.max_iter;
            config.residual_tol = opts.tol;
            config.seed = opts.seed;
            FormFindProblem problem =
                build_problem(pp, opts.thickness, opts.depth_deep, opts.depth_shallow, config);
            Solution sol = solve(problem);
            ElevationProfile profile = elevation_profile(problem, sol);

            out << "rods=" << sol.poses.size() << "\n";
            out << "constraints=" << problem.constraints.size() << "\n";
            out << "residual=" << fmt(sol.residual, common.precision) << "\n";
            out << "elevation=" << fmt(sol.elevation, common.precision) << "\n";
            out << "converged=" << (sol.converged ? 1 : 0) << "\n";
            out << "iterations=" << sol.iterations << "\n";
            out << "center_height=" << fmt(profile.inner_mean, common.precision) << "\n";
            out << "rim_height=" << fmt(profile.outer_mean, common.precision) << "\n";

            if (opts.solution_path) {
                std::ofstream f(*opts.solution_path);
                for (size_t r = 0; r < sol.poses.size(); ++r) {
                    const RodPose& pose = sol.poses[r];
                    f << "rod " << r << " anchor " << fmt(pose.anchor.x(), 17) << " "
                      << fmt(pose.anchor.y(), 17) << " " << fmt(pose.anchor.z(), 17) << " dir "
                      << fmt(pose.direction.x(), 17) << " " << fmt(pose.direction.y(), 17) << " "
                      << fmt(pose.direction.z(), 17) << " t " << fmt(pose.notch_t[0], 17) << " "
                      << fmt(pose.notch_t[1], 17) << " " << fmt(pose.notch_t[2], 17) << " "
                      << fmt(pose.notch_t[3], 17) << "\n";
                }
                f << "residual " << fmt(sol.residual, 17) << "\n";
                f << "elevation " << fmt(sol.elevation, 17) << "\n";
                f << "converged " << (sol.converged ? 1 : 0) << "\n";
                manifest.file_target = *opts.solution_path;
            }
            if (opts.obj_path) {
                std::ofstream f(*opts.obj_path);
                export_solution_obj(f, sol);
                if (!manifest.file_target) manifest.file_target = *opts.obj_path;
            }
            manifest.data["residual"] = sol.residual;
            manifest.data["elevation"] = sol.elevation;
            manifest.data["converged"] = sol.converged;
            return sol.converged ? kExitOk : kExitInvalid;
        },
        out);
}

int cmd_export_svg(const std::string& input, int repeat, std::optional<int> rings,
                   const std::string& output, const CliCommon& common, std::ostream& out) {
    return run_guarded(
        [&]() {
            ManifestScope manifest("export-svg", input, common, out);
            manifest.file_target = output;
            ResolvedInput in = resolve_input(input);
            if (!in.pattern) throw Error(ErrorCode::InvalidArgument, "export-svg needs a pattern");
            std::ofstream f(output);
            if (!f) throw Error(ErrorCode::InvalidArgument, "cannot write '" + output + "'");
            if (rings)
                export_patch_svg(f, patch(*in.pattern, *rings));
            else
                export_pattern_svg(f, *in.pattern, repeat);
            out << "wrote=" << output << "\n";
            return kExitOk;
        },
        out);
}

int cmd_export_obj(const std::string& input, bool triangulate_first, const std::string& output,
                   const CliCommon& common, std::ostream& out) {
    return run_guarded(
        [&]() {
            ManifestScope manifest("export-obj", input, common, out);
            manifest.file_target = output;
            ResolvedInput in = resolve_input(input);
            if (!in.embedding || !in.has_coords)
                throw Error(ErrorCode::InvalidArgument, "export-obj needs an embedding with coords");
            Embedding3D e = triangulate_first ? triangulate(*in.embedding) : *in.embedding;
            std::ofstream f(output);
            if (!f) throw Error(ErrorCode::InvalidArgument, "cannot write '" + output + "'");
            export_obj(f, e);
            out << "wrote=" << output << "\n";
            return kExitOk;
        },
        out);
}

}  // namespace davinci
