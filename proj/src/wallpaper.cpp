#include "davinci/wallpaper.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <map>
#include <numeric>
#include <set>

#include "davinci/errors.hpp"

namespace davinci {

namespace {

using Mat2i = std::array<std::array<int, 2>, 2>;

struct GramReduced {
    PeriodicPattern pattern;  // pattern rewritten in the reduced basis
    double gram[2][2];
};

double dot_cols(const double lattice[2][2], int i, int j) {
    return lattice[i][0] * lattice[j][0] + lattice[i][1] * lattice[j][1];
}

// Lagrange (Gauss) reduction of the lattice basis; classification then
// only needs integer point-group candidates with small entries.
GramReduced reduce_basis(const PeriodicPattern& p) {
    Mat2i U{{{1, 0}, {0, 1}}};
    double a00 = dot_cols(p.lattice, 0, 0);
    double a01 = dot_cols(p.lattice, 0, 1);
    double a11 = dot_cols(p.lattice, 1, 1);
    // Column ops on U mirror basis ops b_i' = sum U[j][i] b_j.
    for (int iter = 0; iter < 64; ++iter) {
        if (a00 > a11 * (1 + 1e-12)) {
            std::swap(a00, a11);  // the off-diagonal is symmetric under the swap
            for (int r = 0; r < 2; ++r) std::swap(U[r][0], U[r][1]);
        }
        long long t = std::llround(a01 / a00);
        if (t == 0) break;
        // b2 <- b2 - t b1
        a11 = a11 - 2.0 * t * a01 + static_cast<double>(t) * t * a00;
        a01 = a01 - t * a00;
        for (int r = 0; r < 2; ++r) U[r][1] -= static_cast<int>(t) * U[r][0];
    }
    GramReduced out;
    out.pattern = reparameterize(p, U);
    out.gram[0][0] = dot_cols(out.pattern.lattice, 0, 0);
    out.gram[0][1] = out.gram[1][0] = dot_cols(out.pattern.lattice, 0, 1);
    out.gram[1][1] = dot_cols(out.pattern.lattice, 1, 1);
    return out;
}

struct EdgeKey {
    int v1, v2, sa, sb;
    bool operator<(const EdgeKey& o) const {
        return std::tie(v1, v2, sa, sb) < std::tie(o.v1, o.v2, o.sa, o.sb);
    }
};

EdgeKey normalized_key(int v1, int v2, int sa, int sb) {
    EdgeKey k{v1, v2, sa, sb};
    EdgeKey r{v2, v1, -sa, -sb};
    return std::min(k, r);
}

struct PatternIndex {
    std::map<std::pair<std::pair<std::int64_t, std::int64_t>, std::pair<std::int64_t, std::int64_t>>, int>
        vertex_by_pos;
    std::map<EdgeKey, int> edge_by_key;
    std::map<std::array<int, 3>, int> rod_by_edges;
    std::vector<std::array<int, 3>> rod_edges;
};

PatternIndex build_index(const PeriodicPattern& p) {
    PatternIndex idx;
    for (int v = 0; v < p.vertex_count(); ++v) {
        const RVec2& f = p.vertices[v];
        idx.vertex_by_pos[{{f.x.num(), f.x.den()}, {f.y.num(), f.y.den()}}] = v;
    }
    for (int k = 0; k < p.edge_count(); ++k) {
        const PatternEdge& e = p.edges[k];
        idx.edge_by_key[normalized_key(e.v1, e.v2, e.shift.a, e.shift.b)] = k;
    }
    if (!p.rods.empty()) {
        auto resolved = resolve_rods(p);
        for (size_t r = 0; r < resolved.size(); ++r) {
            std::array<int, 3> key = resolved[r].edge_ids;
            std::sort(key.begin(), key.end());
            idx.rod_by_edges[key] = static_cast<int>(r);
            idx.rod_edges.push_back(key);
        }
    }
    return idx;
}

int lookup_vertex(const PatternIndex& idx, const RVec2& f) {
    auto it = idx.vertex_by_pos.find({{f.x.num(), f.x.den()}, {f.y.num(), f.y.den()}});
    return it == idx.vertex_by_pos.end() ? -1 : it->second;
}

RVec2 apply_linear(const Mat2i& m, const RVec2& x) {
    return {Rational(m[0][0]) * x.x + Rational(m[0][1]) * x.y,
            Rational(m[1][0]) * x.x + Rational(m[1][1]) * x.y};
}

// Verifies x -> Mx + t as a symmetry of the decorated pattern.
bool verify_symmetry(const PeriodicPattern& p, const PatternIndex& idx, const Mat2i& m,
                     const RVec2& t) {
    int nv = p.vertex_count();
    std::vector<int> sigma(nv, -1);
    std::vector<std::array<std::int64_t, 2>> offset(nv);
    for (int v = 0; v < nv; ++v) {
        RVec2 y = apply_linear(m, p.vertices[v]) + t;
        RVec2 f{y.x.frac(), y.y.frac()};
        int w = lookup_vertex(idx, f);
        if (w < 0) return false;
        sigma[v] = w;
        offset[v] = {(y.x - f.x).floor(), (y.y - f.y).floor()};
    }
    // Must be a bijection.
    std::vector<char> hit(nv, 0);
    for (int v = 0; v < nv; ++v) {
        if (hit[sigma[v]]) return false;
        hit[sigma[v]] = 1;
    }

    std::vector<int> edge_map(p.edge_count(), -1);
    for (int k = 0; k < p.edge_count(); ++k) {
        const PatternEdge& e = p.edges[k];
        int sa = m[0][0] * e.shift.a + m[0][1] * e.shift.b;
        int sb = m[1][0] * e.shift.a + m[1][1] * e.shift.b;
        EdgeKey key = normalized_key(
            sigma[e.v1], sigma[e.v2],
            static_cast<int>(sa + offset[e.v2][0] - offset[e.v1][0]),
            static_cast<int>(sb + offset[e.v2][1] - offset[e.v1][1]));
        auto it = idx.edge_by_key.find(key);
        if (it == idx.edge_by_key.end()) return false;
        edge_map[k] = it->second;
    }

    for (const auto& rod : idx.rod_edges) {
        std::array<int, 3> image{edge_map[rod[0]], edge_map[rod[1]], edge_map[rod[2]]};
        std::sort(image.begin(), image.end());
        if (idx.rod_by_edges.find(image) == idx.rod_by_edges.end()) return false;
    }
    return true;
}

int rotation_order_from_trace(int trace) {
    switch (trace) {
        case -2: return 2;  // conjugate trace of 180 degrees
        case -1: return 3;
        case 0: return 4;
        case 1: return 6;
        default: return 1;
    }
}

// Mirror test: exists lambda in Z^2 with (M+I)(t+lambda) = 0.
bool reflection_is_mirror(const Mat2i& m, const RVec2& t) {
    // M+I has rank 1 for a reflection; use any nonzero row.
    long long a[2][2] = {{m[0][0] + 1, m[0][1]}, {m[1][0], m[1][1] + 1}};
    for (int r = 0; r < 2; ++r) {
        long long alpha = a[r][0], beta = a[r][1];
        if (alpha == 0 && beta == 0) continue;
        Rational gamma = -(Rational(alpha) * t.x + Rational(beta) * t.y);
        long long g = std::gcd(std::llabs(alpha), std::llabs(beta));
        Rational q = gamma / Rational(g);
        if (!q.is_integer()) return false;
        // Both rows of a rank-1 system are proportional; one row decides.
        return true;
    }
    return true;  // M = -I never reaches here (det +1)
}

// Fixed points (mod Z^2) of a rotation element; |det(I-M)| classes.
std::vector<RVec2> rotation_centers(const Mat2i& m, const RVec2& t) {
    long long a = 1 - m[0][0], b = -m[0][1], c = -m[1][0], d = 1 - m[1][1];
    long long det = a * d - b * c;
    std::vector<RVec2> centers;
    if (det == 0) return centers;
    std::set<std::pair<std::pair<std::int64_t, std::int64_t>, std::pair<std::int64_t, std::int64_t>>> seen;
    for (int la = -2; la <= 2; ++la) {
        for (int lb = -2; lb <= 2; ++lb) {
            Rational rx = t.x + Rational(la);
            Rational ry = t.y + Rational(lb);
            RVec2 x{(Rational(d) * rx - Rational(b) * ry) / Rational(det),
                    (Rational(-c) * rx + Rational(a) * ry) / Rational(det)};
            RVec2 f{x.x.frac(), x.y.frac()};
            if (seen.insert({{f.x.num(), f.x.den()}, {f.y.num(), f.y.den()}}).second)
                centers.push_back(f);
        }
    }
    return centers;
}

// True when the point lies on the fixed axis of some mirror element,
// modulo lattice translations.
bool point_on_mirror(const std::vector<SymmetryElement>& elements, const RVec2& point) {
    for (const auto& el : elements) {
        if (!el.is_mirror) continue;
        // Axis of x -> Mx + t + lambda: solutions of (M - I)x = -(t+lambda).
        // Point p is on some representative axis iff M p + t + lambda = p
        // for a lattice lambda, i.e. p - Mp - t is integral.
        Mat2i m{{{el.m[0][0], el.m[0][1]}, {el.m[1][0], el.m[1][1]}}};
        RVec2 image = apply_linear(m, point) + el.t;
        Rational dx = point.x - image.x;
        Rational dy = point.y - image.y;
        if (dx.is_integer() && dy.is_integer()) return true;
    }
    return false;
}

}  // namespace

WallpaperClass classify_wallpaper(const PeriodicPattern& p) {
    GramReduced red = reduce_basis(p);
    const PeriodicPattern& q = red.pattern;
    PatternIndex idx = build_index(q);

    double gnorm = std::max({std::abs(red.gram[0][0]), std::abs(red.gram[1][1]), 1.0});
    double tol = 1e-7 * gnorm;

    WallpaperClass out;
    out.max_rotation_order = 1;

    if (q.vertex_count() == 0) {
        out.name = "p1";
        return out;
    }

    // Integer point-group candidates on the reduced basis.
    std::vector<Mat2i> candidates;
    for (int a = -2; a <= 2; ++a)
        for (int b = -2; b <= 2; ++b)
            for (int c = -2; c <= 2; ++c)
                for (int d = -2; d <= 2; ++d) {
                    int det = a * d - b * c;
                    if (det != 1 && det != -1) continue;
                    // M^T G M == G, i.e. the map is an isometry.
                    double m[2][2] = {{static_cast<double>(a), static_cast<double>(b)},
                                      {static_cast<double>(c), static_cast<double>(d)}};
                    double gm[2][2];
                    for (int i = 0; i < 2; ++i)
                        for (int j = 0; j < 2; ++j)
                            gm[i][j] = red.gram[i][0] * m[0][j] + red.gram[i][1] * m[1][j];
                    double mgm[2][2];
                    for (int i = 0; i < 2; ++i)
                        for (int j = 0; j < 2; ++j)
                            mgm[i][j] = m[0][i] * gm[0][j] + m[1][i] * gm[1][j];
                    if (std::abs(mgm[0][0] - red.gram[0][0]) > tol ||
                        std::abs(mgm[0][1] - red.gram[0][1]) > tol ||
                        std::abs(mgm[1][1] - red.gram[1][1]) > tol)
                        continue;
                    candidates.push_back({{{a, b}, {c, d}}});
                }

    // Candidate translations come from where vertex 0 can land.
    const RVec2 x0 = q.vertices[0];
    std::set<std::tuple<int, int, int, int, std::int64_t, std::int64_t, std::int64_t, std::int64_t>>
        seen_elements;
    for (const Mat2i& m : candidates) {
        RVec2 mx0 = apply_linear(m, x0);
        for (int w = 0; w < q.vertex_count(); ++w) {
            RVec2 diff = q.vertices[w] - mx0;
            RVec2 t{diff.x.frac(), diff.y.frac()};
            if (!verify_symmetry(q, idx, m, t)) continue;

            SymmetryElement el;
            el.m[0][0] = m[0][0];
            el.m[0][1] = m[0][1];
            el.m[1][0] = m[1][0];
            el.m[1][1] = m[1][1];
            el.t = t;
            el.det = m[0][0] * m[1][1] - m[0][1] * m[1][0];
            if (el.det == 1) {
                int trace = m[0][0] + m[1][1];
                bool identity_part = (m[0][0] == 1 && m[0][1] == 0 && m[1][0] == 0 && m[1][1] == 1);
                el.rotation_order = identity_part ? 1 : rotation_order_from_trace(trace);
            } else {
                el.is_mirror = reflection_is_mirror(m, t);
                el.is_glide = !el.is_mirror;
            }
            // Dedupe by (M, t).
            auto key = std::make_tuple(el.m[0][0], el.m[0][1], el.m[1][0], el.m[1][1],
                                       el.t.x.num(), el.t.x.den(), el.t.y.num(), el.t.y.den());
            if (!seen_elements.insert(key).second) continue;
            out.elements.push_back(el);
        }
    }

    int n = 1;
    bool any_mirror = false, any_glide = false;
    for (const auto& el : out.elements) {
        if (el.det == 1) n = std::max(n, el.rotation_order);
        any_mirror = any_mirror || el.is_mirror;
        any_glide = any_glide || el.is_glide;
        out.mirror_count += el.is_mirror ? 1 : 0;
        out.glide_count += el.is_glide ? 1 : 0;
    }
    out.max_rotation_order = n;

    auto centers_of_order = [&](int order) {
        std::vector<RVec2> centers;
        for (const auto& el : out.elements) {
            if (el.det != 1 || el.rotation_order != order) continue;
            Mat2i m{{{el.m[0][0], el.m[0][1]}, {el.m[1][0], el.m[1][1]}}};
            for (const RVec2& c : rotation_centers(m, el.t)) centers.push_back(c);
        }
        return centers;
    };

    if (n == 6) {
        out.name = any_mirror ? "p6m" : "p6";
    } else if (n == 4) {
        if (!any_mirror) {
            out.name = "p4";
        } else {
            bool four_on_mirror = false;
            for (const RVec2& c : centers_of_order(4))
                if (point_on_mirror(out.elements, c)) four_on_mirror = true;
            out.name = four_on_mirror ? "p4m" : "p4g";
        }
    } else if (n == 3) {
        if (!any_mirror) {
            out.name = "p3";
        } else {
            bool all_on = true;
            for (const RVec2& c : centers_of_order(3))
                if (!point_on_mirror(out.elements, c)) all_on = false;
            out.name = all_on ? "p3m1" : "p31m";
        }
    } else if (n == 2) {
        if (any_mirror) {
            // Mirror directions: +1 eigenvector of each mirror M.
            std::set<std::pair<int, int>> dirs;
            for (const auto& el : out.elements) {
                if (!el.is_mirror) continue;
                // Eigenvector for +1 of M: columns of M+I span it.
                int a = el.m[0][0] + 1, b = el.m[0][1], c = el.m[1][0], d = el.m[1][1] + 1;
                int vx = a != 0 || c != 0 ? a : b;
                int vy = a != 0 || c != 0 ? c : d;
                int g = std::gcd(std::abs(vx), std::abs(vy));
                if (g > 0) {
                    vx /= g;
                    vy /= g;
                }
                if (vx < 0 || (vx == 0 && vy < 0)) {
                    vx = -vx;
                    vy = -vy;
                }
                dirs.insert({vx, vy});
            }
            if (dirs.size() >= 2) {
                bool all_on = true;
                for (const RVec2& c : centers_of_order(2))
                    if (!point_on_mirror(out.elements, c)) all_on = false;
                out.name = all_on ? "pmm" : "cmm";
            } else {
                out.name = "pmg";
            }
        } else {
            out.name = any_glide ? "pgg" : "p2";
        }
    } else {
        if (any_mirror)
            out.name = any_glide ? "cm" : "pm";
        else
            out.name = any_glide ? "pg" : "p1";
    }
    return out;
}

}  // namespace davinci
