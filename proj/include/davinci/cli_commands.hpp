#pragma once

#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

namespace davinci {

// Exit codes shared by every subcommand: 0 success, 1 validation or
// assertion failure, 2 parse/usage error.
constexpr int kExitOk = 0;
constexpr int kExitInvalid = 1;
constexpr int kExitParse = 2;

extern const char* kToolVersion;

struct CliCommon {
    int precision = 9;
    bool radians = false;
    double collinear_tol = 1e-7;
    std::optional<std::string> manifest_path;
};

int cmd_validate(const std::string& input, const CliCommon& common, std::ostream& out);

// surface: "auto" (map chi), "torus" or "replicate".
int cmd_euler(const std::string& input, const std::string& surface, int replicate_n,
              const CliCommon& common, std::ostream& out);

int cmd_defect(const std::string& input, const CliCommon& common, std::ostream& out);

int cmd_decompose(const std::string& input, std::optional<int> all_limit,
                  const CliCommon& common, std::ostream& out);

struct FormFindCliOptions {
    int rings = 2;
    double thickness = 10.0;
    double depth_deep = 4.0;
    double depth_shallow = 2.0;
    int max_iter = 500;
    double tol = 1e-9;
    unsigned seed = 0;
    std::optional<std::string> solution_path;
    std::optional<std::string> obj_path;
};

int cmd_formfind(const std::string& input, const FormFindCliOptions& opts,
                 const CliCommon& common, std::ostream& out);

int cmd_export_svg(const std::string& input, int repeat, std::optional<int> rings,
                   const std::string& output, const CliCommon& common, std::ostream& out);

int cmd_export_obj(const std::string& input, bool triangulate_first, const std::string& output,
                   const CliCommon& common, std::ostream& out);

}  // namespace davinci
