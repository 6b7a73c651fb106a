#include "davinci/export.hpp"

#include <algorithm>
#include <cmath>
#include <ostream>
#include <vector>

#include "davinci/errors.hpp"

namespace davinci {

namespace {

struct Box {
    double min_x = 1e300, min_y = 1e300, max_x = -1e300, max_y = -1e300;
    void add(double x, double y) {
        min_x = std::min(min_x, x);
        min_y = std::min(min_y, y);
        max_x = std::max(max_x, x);
        max_y = std::max(max_y, y);
    }
};

void svg_header(std::ostream& out, const Box& box, double stroke) {
    double pad = 0.05 * std::max(box.max_x - box.min_x, box.max_y - box.min_y) + 0.1;
    out << "<svg xmlns=\"http://www.w3.org/2000/svg\" viewBox=\"" << box.min_x - pad << " "
        << -(box.max_y + pad) << " " << (box.max_x - box.min_x) + 2 * pad << " "
        << (box.max_y - box.min_y) + 2 * pad << "\">\n"
        << "<g stroke=\"#333\" stroke-width=\"" << stroke << "\" stroke-linecap=\"round\">\n";
}

struct Segment2 {
    double ax, ay, bx, by;
};

void svg_rods(std::ostream& out, const std::vector<Segment2>& rods, double stub) {
    Box box;
    double min_len = 1e300;
    for (const auto& s : rods) {
        box.add(s.ax, s.ay);
        box.add(s.bx, s.by);
        min_len = std::min(min_len, std::hypot(s.bx - s.ax, s.by - s.ay));
    }
    svg_header(out, box, 0.04 * min_len);
    for (const auto& s : rods) {
        double dx = s.bx - s.ax, dy = s.by - s.ay;
        double len = std::hypot(dx, dy);
        if (len < 1e-12) continue;
        double ux = dx / len, uy = dy / len;
        // y is flipped so the drawing appears with +y up.
        out << "<line x1=\"" << s.ax - stub * ux << "\" y1=\"" << -(s.ay - stub * uy)
            << "\" x2=\"" << s.bx + stub * ux << "\" y2=\"" << -(s.by + stub * uy) << "\"/>\n";
    }
    out << "</g>\n</svg>\n";
}

}  // namespace

void export_pattern_svg(std::ostream& out, const PeriodicPattern& p, int repeat) {
    if (repeat < 1) throw Error(ErrorCode::InvalidArgument, "repeat must be >= 1");
    std::vector<ResolvedRod> rods = resolve_rods(p);
    std::vector<Segment2> segs;
    double min_len = 1e300;
    for (int ca = 0; ca < repeat; ++ca) {
        for (int cb = 0; cb < repeat; ++cb) {
            for (const ResolvedRod& r : rods) {
                auto a = p.position(r.vertices[0], ca + r.cells[0].a, cb + r.cells[0].b);
                auto b = p.position(r.vertices[3], ca + r.cells[3].a, cb + r.cells[3].b);
                segs.push_back({a[0], a[1], b[0], b[1]});
                min_len = std::min(min_len, std::hypot(b[0] - a[0], b[1] - a[1]));
            }
        }
    }
    svg_rods(out, segs, 0.08 * min_len);
}

void export_patch_svg(std::ostream& out, const PatternPatch& patch) {
    std::vector<Segment2> segs;
    double min_len = 1e300;
    for (const PatchRod& r : patch.rods) {
        const auto& a = patch.vertices[r.vertices[0]].xy;
        const auto& b = patch.vertices[r.vertices[3]].xy;
        segs.push_back({a[0], a[1], b[0], b[1]});
        min_len = std::min(min_len, std::hypot(b[0] - a[0], b[1] - a[1]));
    }
    svg_rods(out, segs, 0.08 * min_len);
}

void export_obj(std::ostream& out, const Embedding3D& e) {
    out << "# davinci embedding export\n";
    for (const auto& p : e.coords)
        out << "v " << p.x() << " " << p.y() << " " << p.z() << "\n";
    auto degrees = e.map.face_degrees();
    bool triangulated = std::all_of(degrees.begin(), degrees.end(), [](int d) { return d == 3; });
    if (triangulated) {
        for (const auto& walk : e.map.face_walks()) {
            out << "f";
            for (DartId d : walk) out << " " << e.map.dart_vertex(d) + 1;
            out << "\n";
        }
    } else {
        for (const auto& [a, b] : e.map.edges()) out << "l " << a + 1 << " " << b + 1 << "\n";
    }
}

void export_solution_obj(std::ostream& out, const Solution& s) {
    out << "# davinci form-found rod centerlines\n";
    int base = 1;
    for (const RodPose& pose : s.poses) {
        Eigen::Vector3d a = pose.notch_point(0);
        Eigen::Vector3d b = pose.notch_point(3);
        out << "v " << a.x() << " " << a.y() << " " << a.z() << "\n";
        out << "v " << b.x() << " " << b.y() << " " << b.z() << "\n";
        out << "l " << base << " " << base + 1 << "\n";
        base += 2;
    }
}

}  // namespace davinci
