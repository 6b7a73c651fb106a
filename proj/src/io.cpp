#include "davinci/io.hpp"

#include <algorithm>
#include <cstdio>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>

#include "davinci/errors.hpp"

namespace davinci {

namespace {

std::vector<std::string> tokenize(const std::string& line) {
    std::vector<std::string> tokens;
    std::istringstream iss(line);
    std::string tok;
    while (iss >> tok) {
        if (tok[0] == '#') break;
        tokens.push_back(tok);
    }
    return tokens;
}

[[noreturn]] void parse_fail(int line_no, const std::string& what) {
    throw Error(ErrorCode::ParseError, "line " + std::to_string(line_no) + ": " + what);
}

long parse_int(const std::string& tok, int line_no) {
    try {
        size_t pos = 0;
        long v = std::stol(tok, &pos);
        if (pos != tok.size()) parse_fail(line_no, "bad integer '" + tok + "'");
        return v;
    } catch (const Error&) {
        throw;
    } catch (...) {
        parse_fail(line_no, "bad integer '" + tok + "'");
    }
}

double parse_double(const std::string& tok, int line_no) {
    try {
        size_t pos = 0;
        double v = std::stod(tok, &pos);
        if (pos != tok.size()) parse_fail(line_no, "bad number '" + tok + "'");
        return v;
    } catch (const Error&) {
        throw;
    } catch (...) {
        parse_fail(line_no, "bad number '" + tok + "'");
    }
}

std::string format_double(double v) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

}  // namespace

int MapFile::vertex_index(int id) const {
    auto it = std::find(vertex_ids.begin(), vertex_ids.end(), id);
    if (it == vertex_ids.end())
        throw Error(ErrorCode::DanglingEdge, "unknown vertex id " + std::to_string(id));
    return static_cast<int>(it - vertex_ids.begin());
}

MapFile parse_map_file(std::istream& in) {
    MapFile f;
    std::string line;
    int line_no = 0;
    bool any = false;
    while (std::getline(in, line)) {
        ++line_no;
        auto tok = tokenize(line);
        if (tok.empty()) continue;
        any = true;
        const std::string& kw = tok[0];
        if (kw == "v") {
            if (tok.size() != 2) parse_fail(line_no, "v expects: v <id>");
            f.vertex_ids.push_back(static_cast<int>(parse_int(tok[1], line_no)));
        } else if (kw == "e") {
            if (tok.size() != 4) parse_fail(line_no, "e expects: e <id> <v1> <v2>");
            f.edges.push_back({static_cast<int>(parse_int(tok[1], line_no)),
                               static_cast<int>(parse_int(tok[2], line_no)),
                               static_cast<int>(parse_int(tok[3], line_no))});
        } else if (kw == "rot") {
            if (tok.size() < 2) parse_fail(line_no, "rot expects: rot <v> <dart list>");
            int v = static_cast<int>(parse_int(tok[1], line_no));
            std::vector<int>& cycle = f.rotations[v];
            for (size_t i = 2; i < tok.size(); ++i)
                cycle.push_back(static_cast<int>(parse_int(tok[i], line_no)));
        } else if (kw == "coord") {
            if (tok.size() != 5) parse_fail(line_no, "coord expects: coord <v> <x> <y> <z>");
            int v = static_cast<int>(parse_int(tok[1], line_no));
            f.coords[v] = {parse_double(tok[2], line_no), parse_double(tok[3], line_no),
                           parse_double(tok[4], line_no)};
        } else if (kw == "rod") {
            if (tok.size() != 6) parse_fail(line_no, "rod expects: rod <id> <v0> <v1> <v2> <v3>");
            f.rods.push_back({static_cast<int>(parse_int(tok[1], line_no)),
                              static_cast<int>(parse_int(tok[2], line_no)),
                              static_cast<int>(parse_int(tok[3], line_no)),
                              static_cast<int>(parse_int(tok[4], line_no)),
                              static_cast<int>(parse_int(tok[5], line_no))});
        } else {
            parse_fail(line_no, "unknown keyword '" + kw + "'");
        }
    }
    if (!any) parse_fail(line_no ? line_no : 1, "empty file");

    // Edge ids must be dense so dart ids 2k/2k+1 are well defined.
    std::vector<char> seen(f.edges.size(), 0);
    for (auto& e : f.edges) {
        if (e[0] < 0 || e[0] >= static_cast<int>(f.edges.size()) || seen[e[0]])
            throw Error(ErrorCode::ParseError,
                        "edge ids must be dense 0.." + std::to_string(f.edges.size() - 1));
        seen[e[0]] = 1;
    }
    std::sort(f.edges.begin(), f.edges.end(),
              [](const auto& a, const auto& b) { return a[0] < b[0]; });
    return f;
}

MapFile read_map_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw Error(ErrorCode::ParseError, "cannot open '" + path + "'");
    return parse_map_file(in);
}

void write_map_file(std::ostream& out, const MapFile& f) {
    for (int id : f.vertex_ids) out << "v " << id << "\n";
    for (const auto& e : f.edges) out << "e " << e[0] << " " << e[1] << " " << e[2] << "\n";
    for (const auto& [v, cycle] : f.rotations) {
        out << "rot " << v;
        for (int d : cycle) out << " " << d;
        out << "\n";
    }
    for (const auto& [v, c] : f.coords)
        out << "coord " << v << " " << format_double(c[0]) << " " << format_double(c[1]) << " "
            << format_double(c[2]) << "\n";
    for (const auto& r : f.rods)
        out << "rod " << r[0] << " " << r[1] << " " << r[2] << " " << r[3] << " " << r[4] << "\n";
}

SurfaceMap to_surface_map(const MapFile& f) {
    std::map<int, int> index;
    for (size_t i = 0; i < f.vertex_ids.size(); ++i) {
        if (!index.emplace(f.vertex_ids[i], static_cast<int>(i)).second)
            throw Error(ErrorCode::ParseError,
                        "duplicate vertex id " + std::to_string(f.vertex_ids[i]));
    }
    auto lookup = [&](int id) {
        auto it = index.find(id);
        if (it == index.end())
            throw Error(ErrorCode::DanglingEdge, "unknown vertex id " + std::to_string(id));
        return it->second;
    };

    std::vector<std::pair<VertexId, VertexId>> edges;
    edges.reserve(f.edges.size());
    for (const auto& e : f.edges) edges.emplace_back(lookup(e[1]), lookup(e[2]));

    std::vector<std::vector<DartId>> rotations(f.vertex_ids.size());
    std::vector<char> has_rot(f.vertex_ids.size(), 0);
    for (const auto& [vid, cycle] : f.rotations) {
        int v = lookup(vid);
        rotations[v] = cycle;
        has_rot[v] = 1;
    }
    // Default rotation: incident darts ascending.
    for (size_t k = 0; k < edges.size(); ++k) {
        auto [a, b] = edges[k];
        if (!has_rot[a]) rotations[a].push_back(static_cast<DartId>(2 * k));
        if (!has_rot[b]) rotations[b].push_back(static_cast<DartId>(2 * k + 1));
    }
    return SurfaceMap::build(static_cast<int>(f.vertex_ids.size()), edges, rotations);
}

PeriodicPattern parse_pattern_file(std::istream& in) {
    PeriodicPattern p;
    bool have_lattice = false;
    std::map<int, int> index;
    std::string line;
    int line_no = 0;
    std::vector<std::array<int, 4>> raw_edges;
    std::vector<std::array<int, 5>> raw_rods;
    while (std::getline(in, line)) {
        ++line_no;
        auto tok = tokenize(line);
        if (tok.empty()) continue;
        const std::string& kw = tok[0];
        if (kw == "lattice") {
            if (tok.size() != 5) parse_fail(line_no, "lattice expects: lattice ax ay bx by");
            p.lattice[0][0] = parse_double(tok[1], line_no);
            p.lattice[0][1] = parse_double(tok[2], line_no);
            p.lattice[1][0] = parse_double(tok[3], line_no);
            p.lattice[1][1] = parse_double(tok[4], line_no);
            have_lattice = true;
        } else if (kw == "v") {
            if (tok.size() != 4) parse_fail(line_no, "v expects: v <id> <fx> <fy>");
            int id = static_cast<int>(parse_int(tok[1], line_no));
            if (!index.emplace(id, static_cast<int>(p.vertices.size())).second)
                parse_fail(line_no, "duplicate vertex id " + std::to_string(id));
            p.vertices.push_back({Rational::parse(tok[2]), Rational::parse(tok[3])});
        } else if (kw == "edge") {
            if (tok.size() != 5) parse_fail(line_no, "edge expects: edge <v1> <v2> <sa> <sb>");
            raw_edges.push_back({static_cast<int>(parse_int(tok[1], line_no)),
                                 static_cast<int>(parse_int(tok[2], line_no)),
                                 static_cast<int>(parse_int(tok[3], line_no)),
                                 static_cast<int>(parse_int(tok[4], line_no))});
        } else if (kw == "rod") {
            if (tok.size() != 6) parse_fail(line_no, "rod expects: rod <id> <v0> <v1> <v2> <v3>");
            raw_rods.push_back({static_cast<int>(parse_int(tok[1], line_no)),
                                static_cast<int>(parse_int(tok[2], line_no)),
                                static_cast<int>(parse_int(tok[3], line_no)),
                                static_cast<int>(parse_int(tok[4], line_no)),
                                static_cast<int>(parse_int(tok[5], line_no))});
        } else {
            parse_fail(line_no, "unknown keyword '" + kw + "'");
        }
    }
    if (!have_lattice) parse_fail(line_no ? line_no : 1, "missing lattice line");
    auto lookup = [&](int id) {
        auto it = index.find(id);
        if (it == index.end())
            throw Error(ErrorCode::ParseError, "unknown pattern vertex id " + std::to_string(id));
        return it->second;
    };
    for (const auto& e : raw_edges) {
        PatternEdge pe;
        pe.v1 = lookup(e[0]);
        pe.v2 = lookup(e[1]);
        pe.shift = {e[2], e[3]};
        p.edges.push_back(pe);
    }
    std::sort(raw_rods.begin(), raw_rods.end());
    for (const auto& r : raw_rods)
        p.rods.push_back({lookup(r[1]), lookup(r[2]), lookup(r[3]), lookup(r[4])});
    p.validate();
    return p;
}

PeriodicPattern read_pattern_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw Error(ErrorCode::ParseError, "cannot open '" + path + "'");
    PeriodicPattern p = parse_pattern_file(in);
    // Derive a name from the file stem.
    auto slash = path.find_last_of("/\\");
    std::string stem = slash == std::string::npos ? path : path.substr(slash + 1);
    auto dot = stem.find_last_of('.');
    p.name = dot == std::string::npos ? stem : stem.substr(0, dot);
    return p;
}

void write_pattern_file(std::ostream& out, const PeriodicPattern& p) {
    if (!p.name.empty()) out << "# pattern: " << p.name << "\n";
    if (!p.note.empty()) out << "# " << p.note << "\n";
    out << "lattice " << format_double(p.lattice[0][0]) << " " << format_double(p.lattice[0][1])
        << " " << format_double(p.lattice[1][0]) << " " << format_double(p.lattice[1][1]) << "\n";
    for (int v = 0; v < p.vertex_count(); ++v)
        out << "v " << v << " " << p.vertices[v].x.str() << " " << p.vertices[v].y.str() << "\n";
    for (const PatternEdge& e : p.edges)
        out << "edge " << e.v1 << " " << e.v2 << " " << e.shift.a << " " << e.shift.b << "\n";
    for (size_t r = 0; r < p.rods.size(); ++r)
        out << "rod " << r << " " << p.rods[r][0] << " " << p.rods[r][1] << " " << p.rods[r][2]
            << " " << p.rods[r][3] << "\n";
}

bool looks_like_pattern_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw Error(ErrorCode::ParseError, "cannot open '" + path + "'");
    std::string line;
    while (std::getline(in, line)) {
        auto tok = tokenize(line);
        if (tok.empty()) continue;
        return tok[0] == "lattice";
    }
    return false;
}

}  // namespace davinci
