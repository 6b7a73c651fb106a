#include "davinci/form_find.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <random>

#include "davinci/errors.hpp"

namespace davinci {

FormFindProblem build_problem(const PatternPatch& patch, double thickness,
                              double depth_boundary, double depth_interior,
                              const FormFindConfig& config) {
    if (thickness <= 0) throw Error(ErrorCode::InvalidDepths, "thickness must be positive");
    if (depth_interior < 0) throw Error(ErrorCode::InvalidDepths, "negative notch depth");
    if (depth_boundary < depth_interior)
        throw Error(ErrorCode::InvalidDepths, "boundary notches must be at least as deep as interior ones");
    double delta = thickness - depth_boundary - depth_interior;
    if (delta < 0) throw Error(ErrorCode::InvalidDepths, "depths exceed rod thickness");

    FormFindProblem p;
    p.config = config;

    for (const PatchRod& rod : patch.rods) {
        const auto& a = patch.vertices[rod.vertices[0]].xy;
        const auto& b = patch.vertices[rod.vertices[3]].xy;
        RodPose pose;
        pose.anchor = {a[0], a[1], 0.0};
        Eigen::Vector3d dir{b[0] - a[0], b[1] - a[1], 0.0};
        pose.direction = dir.normalized();
        pose.notch_t = rod.notch_t;
        p.initial_poses.push_back(pose);
    }

    // One constraint per junction; the normal orientation is frozen from
    // the flat layout so the boundary side always ends up below.
    for (size_t v = 0; v < patch.vertices.size(); ++v) {
        const PatchVertex& pv = patch.vertices[v];
        if (pv.end_of_rod < 0 || pv.interior_of_rod < 0) continue;
        const PatchRod& ra = patch.rods[pv.end_of_rod];
        const PatchRod& rb = patch.rods[pv.interior_of_rod];
        JunctionConstraint c;
        c.rod_a = pv.end_of_rod;
        c.rod_b = pv.interior_of_rod;
        c.notch_a = ra.vertices[0] == static_cast<int>(v) ? 0 : 3;
        c.notch_b = rb.vertices[1] == static_cast<int>(v) ? 1 : 2;
        c.separation = delta;
        Eigen::Vector3d cross = p.initial_poses[c.rod_a].direction.cross(
            p.initial_poses[c.rod_b].direction);
        if (cross.norm() < config.parallel_guard)
            throw Error(ErrorCode::DegenerateJunction,
                        "rods at junction vertex " + std::to_string(v) + " are near-parallel");
        // Down-facing boundary notches hook over the through rod, so the
        // ending rod's centerline sits above: the interior notch point
        // lies delta below the boundary one along the flat up-normal.
        c.orientation = cross.z() >= 0 ? -1.0 : 1.0;
        p.constraints.push_back(c);
    }

    if (config.anchor_boundary) {
        // Free boundary notches on the outer ring are ground contacts.
        // Three well-spread ones pin the ground plane (height + both
        // tilts); pinning the whole ragged rim would fight the joint
        // constraints instead of just fixing the gauge.
        struct RimNotch {
            int rod, notch;
            Eigen::Vector2d xy;
        };
        std::vector<RimNotch> rim;
        for (size_t v = 0; v < patch.vertices.size(); ++v) {
            const PatchVertex& pv = patch.vertices[v];
            if (pv.end_of_rod >= 0 && pv.interior_of_rod < 0) {
                const PatchRod& rod = patch.rods[pv.end_of_rod];
                int notch = rod.vertices[0] == static_cast<int>(v) ? 0 : 3;
                rim.push_back({pv.end_of_rod, notch, {pv.xy[0], pv.xy[1]}});
            }
        }
        if (rim.size() <= 3) {
            for (const RimNotch& r : rim) p.anchors.emplace_back(r.rod, r.notch);
        } else {
            size_t first = 0;
            for (size_t i = 1; i < rim.size(); ++i)
                if (rim[i].xy.norm() > rim[first].xy.norm()) first = i;
            size_t second = first;
            for (size_t i = 0; i < rim.size(); ++i)
                if ((rim[i].xy - rim[first].xy).norm() > (rim[second].xy - rim[first].xy).norm())
                    second = i;
            size_t third = first;
            double best = -1;
            for (size_t i = 0; i < rim.size(); ++i) {
                double score = std::min((rim[i].xy - rim[first].xy).norm(),
                                        (rim[i].xy - rim[second].xy).norm());
                if (score > best) {
                    best = score;
                    third = i;
                }
            }
            for (size_t i : {first, second, third}) p.anchors.emplace_back(rim[i].rod, rim[i].notch);
        }
    }

    Eigen::Vector2d centroid = Eigen::Vector2d::Zero();
    for (const auto& pv : patch.vertices) centroid += Eigen::Vector2d(pv.xy[0], pv.xy[1]);
    centroid /= std::max<size_t>(1, patch.vertices.size());
    p.planar_centroid = centroid;
    for (const PatchRod& rod : patch.rods)
        for (int k : {1, 2}) {
            const auto& xy = patch.vertices[rod.vertices[k]].xy;
            p.planar_interior_notches.emplace_back(xy[0], xy[1]);
        }
    return p;
}

namespace {

// Joint normal and the constraint residual vector for one junction.
Eigen::Vector3d joint_residual(const JunctionConstraint& c, const std::vector<RodPose>& poses,
                               double parallel_guard) {
    const RodPose& a = poses[c.rod_a];
    const RodPose& b = poses[c.rod_b];
    Eigen::Vector3d cr = a.direction.cross(b.direction);
    double n = cr.norm();
    if (n < parallel_guard)
        throw Error(ErrorCode::DegenerateJunction, "near-parallel rods in a junction");
    Eigen::Vector3d normal = c.orientation * cr / n;
    return b.notch_point(c.notch_b) - a.notch_point(c.notch_a) - c.separation * normal;
}

struct Variables {
    // Per rod: anchor (3) + raw direction (3), normalized on use.
    Eigen::VectorXd x;

    static Variables from_poses(const std::vector<RodPose>& poses) {
        Variables v;
        v.x.resize(6 * poses.size());
        for (size_t r = 0; r < poses.size(); ++r) {
            v.x.segment<3>(6 * r) = poses[r].anchor;
            v.x.segment<3>(6 * r + 3) = poses[r].direction;
        }
        return v;
    }

    std::vector<RodPose> to_poses(const std::vector<RodPose>& templ) const {
        std::vector<RodPose> poses = templ;
        for (size_t r = 0; r < poses.size(); ++r) {
            poses[r].anchor = x.segment<3>(6 * r);
            poses[r].direction = x.segment<3>(6 * r + 3).normalized();
        }
        return poses;
    }
};

struct ResidualVector {
    Eigen::VectorXd r;       // stacked constraint residuals + anchor heights
    Eigen::MatrixXd J;       // optional jacobian
    bool with_jacobian = false;
};

Eigen::Matrix3d dnormalize(const Eigen::Vector3d& w) {
    double n = w.norm();
    Eigen::Vector3d u = w / n;
    return (Eigen::Matrix3d::Identity() - u * u.transpose()) / n;
}

Eigen::Matrix3d skew(const Eigen::Vector3d& v) {
    Eigen::Matrix3d m;
    m << 0, -v.z(), v.y(), v.z(), 0, -v.x(), -v.y(), v.x(), 0;
    return m;
}

ResidualVector evaluate(const FormFindProblem& p, const Eigen::VectorXd& x, bool with_jacobian) {
    size_t R = p.initial_poses.size();
    size_t C = p.constraints.size();
    size_t A = p.anchors.size();
    ResidualVector out;
    out.with_jacobian = with_jacobian;
    out.r.resize(3 * C + A);
    if (with_jacobian) out.J = Eigen::MatrixXd::Zero(3 * C + A, 6 * R);

    std::vector<Eigen::Vector3d> anchor(R), w(R), dir(R);
    for (size_t r = 0; r < R; ++r) {
        anchor[r] = x.segment<3>(6 * r);
        w[r] = x.segment<3>(6 * r + 3);
        dir[r] = w[r].normalized();
    }

    for (size_t ci = 0; ci < C; ++ci) {
        const JunctionConstraint& c = p.constraints[ci];
        const Eigen::Vector3d& da = dir[c.rod_a];
        const Eigen::Vector3d& db = dir[c.rod_b];
        Eigen::Vector3d cr = da.cross(db);
        double n = cr.norm();
        if (n < p.config.parallel_guard)
            throw Error(ErrorCode::DegenerateJunction, "near-parallel rods in a junction");
        Eigen::Vector3d nh = c.orientation * cr / n;
        double ta = p.initial_poses[c.rod_a].notch_t[c.notch_a];
        double tb = p.initial_poses[c.rod_b].notch_t[c.notch_b];
        Eigen::Vector3d pa = anchor[c.rod_a] + ta * da;
        Eigen::Vector3d pb = anchor[c.rod_b] + tb * db;
        out.r.segment<3>(3 * ci) = pb - pa - c.separation * nh;

        if (with_jacobian) {
            Eigen::Matrix3d Na = dnormalize(w[c.rod_a]);
            Eigen::Matrix3d Nb = dnormalize(w[c.rod_b]);
            Eigen::Matrix3d dn_dc =
                c.orientation * (Eigen::Matrix3d::Identity() - (cr / n) * (cr / n).transpose()) / n;
            // c = da x db: dc/d(da) = -[db]x, dc/d(db) = [da]x
            Eigen::Matrix3d dr_dwa = (-ta * Eigen::Matrix3d::Identity() -
                                      c.separation * dn_dc * (-skew(db))) * Na;
            Eigen::Matrix3d dr_dwb = (tb * Eigen::Matrix3d::Identity() -
                                      c.separation * dn_dc * skew(da)) * Nb;
            out.J.block<3, 3>(3 * ci, 6 * c.rod_a) = -Eigen::Matrix3d::Identity();
            out.J.block<3, 3>(3 * ci, 6 * c.rod_b) = Eigen::Matrix3d::Identity();
            out.J.block<3, 3>(3 * ci, 6 * c.rod_a + 3) = dr_dwa;
            out.J.block<3, 3>(3 * ci, 6 * c.rod_b + 3) = dr_dwb;
        }
    }

    for (size_t ai = 0; ai < A; ++ai) {
        auto [rod, notch] = p.anchors[ai];
        double t = p.initial_poses[rod].notch_t[notch];
        out.r(3 * C + ai) = anchor[rod].z() + t * dir[rod].z();
        if (with_jacobian) {
            out.J(3 * C + ai, 6 * rod + 2) = 1.0;
            Eigen::Matrix3d N = dnormalize(w[rod]);
            out.J.block<1, 3>(3 * C + ai, 6 * rod + 3) = t * N.row(2);
        }
    }
    return out;
}

double constraint_rms(const FormFindProblem& p, const Eigen::VectorXd& r) {
    size_t C = p.constraints.size();
    if (C == 0) return 0.0;
    double sum = 0.0;
    for (size_t ci = 0; ci < C; ++ci) sum += r.segment<3>(3 * ci).squaredNorm();
    return std::sqrt(sum / static_cast<double>(C));
}

}  // namespace

ResidualBreakdown residual(const FormFindProblem& p, const std::vector<RodPose>& poses) {
    ResidualBreakdown out;
    double sum = 0.0;
    for (const JunctionConstraint& c : p.constraints) {
        double v = joint_residual(c, poses, p.config.parallel_guard).norm();
        out.per_constraint.push_back(v);
        sum += v * v;
    }
    out.total = p.constraints.empty() ? 0.0 : std::sqrt(sum / p.constraints.size());
    return out;
}

namespace {

struct LmRun {
    Eigen::VectorXd x;
    double rms = std::numeric_limits<double>::infinity();
    int iterations = 0;
    std::vector<double> history;
};

LmRun run_lm(const FormFindProblem& p, Eigen::VectorXd x) {
    LmRun run;
    ResidualVector ev;
    double f;
    try {
        ev = evaluate(p, x, false);
        f = ev.r.squaredNorm();
    } catch (const Error&) {
        return run;  // degenerate seed: report as non-started
    }
    run.history.push_back(std::sqrt(f / std::max<Eigen::Index>(1, ev.r.size())));

    double lambda = 1e-4;
    int iter = 0;
    for (; iter < p.config.max_iterations; ++iter) {
        if (constraint_rms(p, ev.r) <= p.config.residual_tol) break;
        ResidualVector full = evaluate(p, x, true);
        Eigen::MatrixXd JtJ = full.J.transpose() * full.J;
        Eigen::VectorXd g = full.J.transpose() * full.r;

        bool accepted = false;
        for (int tries = 0; tries < 24; ++tries) {
            Eigen::MatrixXd M = JtJ;
            M.diagonal().array() += lambda;
            Eigen::VectorXd step = M.ldlt().solve(-g);
            if (step.norm() < p.config.step_tol) break;
            Eigen::VectorXd xn = x + step;
            // Steps that drive a junction degenerate count as rejected.
            double fn = std::numeric_limits<double>::infinity();
            ResidualVector evn;
            try {
                evn = evaluate(p, xn, false);
                fn = evn.r.squaredNorm();
            } catch (const Error&) {
            }
            if (fn < f) {
                x = std::move(xn);
                ev = std::move(evn);
                f = fn;
                lambda = std::max(lambda / 3.0, 1e-12);
                accepted = true;
                break;
            }
            lambda *= 4.0;
        }
        if (!accepted) break;
        run.history.push_back(std::sqrt(f / std::max<Eigen::Index>(1, ev.r.size())));
    }
    run.x = std::move(x);
    run.rms = constraint_rms(p, ev.r);
    run.iterations = iter;
    return run;
}

}  // namespace

Solution solve(const FormFindProblem& p) {
    if (p.constraints.empty())
        throw Error(ErrorCode::InvalidArgument, "form-finding needs at least one constraint");

    size_t R = p.initial_poses.size();
    Variables vars = Variables::from_poses(p.initial_poses);

    if (p.config.random_restarts > 0) {
        std::mt19937 rng(p.config.seed);
        std::normal_distribution<double> noise(0.0, 1e-3);
        for (size_t r = 0; r < R; ++r) vars.x(6 * r + 2) += noise(rng);
    }

    LmRun best = run_lm(p, vars.x);
    int total_iterations = best.iterations;

    // The flat layout sits near a symmetric stationary configuration on
    // larger patches, and the exact configurations come in several
    // branches (caps, craters, saddles). When the flat start stalls,
    // sweep a fixed schedule of cap-shaped seeds and keep the converged
    // branch whose center rises most above its rim; the schedule is
    // deterministic, so so is the result.
    if (best.rms > p.config.residual_tol && !p.planar_interior_notches.empty()) {
        double rmax = 0.0;
        for (const auto& q : p.planar_interior_notches)
            rmax = std::max(rmax, (q - p.planar_centroid).norm());

        auto dome_score = [&](const Eigen::VectorXd& x) {
            Variables v;
            v.x = x;
            std::vector<RodPose> poses = v.to_poses(p.initial_poses);
            std::vector<std::pair<double, double>> samples;
            size_t idx = 0;
            for (size_t r = 0; r < poses.size(); ++r)
                for (int k : {1, 2}) {
                    double radius = (p.planar_interior_notches[idx++] - p.planar_centroid).norm();
                    samples.emplace_back(radius, poses[r].notch_point(k).z());
                }
            std::sort(samples.begin(), samples.end());
            size_t half = samples.size() / 2;
            double inner = 0, outer = 0;
            for (size_t i = 0; i < samples.size(); ++i) (i < half ? inner : outer) += samples[i].second;
            if (half == 0 || samples.size() == half) return 0.0;
            return inner / half - outer / (samples.size() - half);
        };

        bool best_converged = best.rms <= p.config.residual_tol;
        double best_score = best_converged ? dome_score(best.x) : 0.0;
        for (int k = 1; k <= 8 && rmax > 0; ++k) {
            double h = 0.25 * k * rmax;
            std::vector<RodPose> seeded = p.initial_poses;
            for (RodPose& pose : seeded) {
                auto lift = [&](const Eigen::Vector3d& q) {
                    double rr = (Eigen::Vector2d(q.x(), q.y()) - p.planar_centroid).squaredNorm();
                    return Eigen::Vector3d(q.x(), q.y(), h * (1.0 - rr / (rmax * rmax)));
                };
                Eigen::Vector3d a = lift(pose.anchor);
                Eigen::Vector3d b = lift(pose.notch_point(3));
                pose.anchor = a;
                pose.direction = (b - a).normalized();
            }
            LmRun attempt = run_lm(p, Variables::from_poses(seeded).x);
            total_iterations += attempt.iterations;
            bool converged = attempt.rms <= p.config.residual_tol;
            if (converged) {
                double score = dome_score(attempt.x);
                if (!best_converged || score > best_score) {
                    best = std::move(attempt);
                    best_converged = true;
                    best_score = score;
                }
            } else if (!best_converged && attempt.rms < best.rms) {
                best = std::move(attempt);
            }
        }
    }

    Solution sol;
    vars.x = best.x;
    sol.poses = vars.to_poses(p.initial_poses);
    sol.iterations = total_iterations;
    sol.residual = best.rms;
    sol.residual_history = std::move(best.history);
    sol.converged = sol.residual <= p.config.residual_tol;

    sol.elevation = 0.0;
    for (size_t r = 0; r < R; ++r)
        for (int k : {1, 2}) sol.elevation = std::max(sol.elevation, sol.poses[r].notch_point(k).z());
    return sol;
}

GradientCheck gradient_check(const FormFindProblem& p, const std::vector<RodPose>& poses,
                             double h) {
    if (h <= 0) throw Error(ErrorCode::InvalidArgument, "step h must be positive");
    GradientCheck out;
    Variables vars = Variables::from_poses(poses);

    auto objective = [&](const Eigen::VectorXd& x) {
        return evaluate(p, x, false).r.squaredNorm();
    };

    Eigen::VectorXd x = vars.x;
    Eigen::VectorXd grad;
    try {
        ResidualVector full = evaluate(p, x, true);
        grad = 2.0 * full.J.transpose() * full.r;
    } catch (const Error&) {
        // Degenerate base configuration: every coordinate is affected.
        out.skipped = static_cast<int>(x.size());
        return out;
    }

    std::mt19937 rng(p.config.seed + 17);
    int n = static_cast<int>(x.size());
    std::vector<int> coords(n);
    for (int i = 0; i < n; ++i) coords[i] = i;
    std::shuffle(coords.begin(), coords.end(), rng);
    int sample = std::min(n, 48);

    for (int s = 0; s < sample; ++s) {
        int k = coords[s];
        Eigen::VectorXd xp = x, xm = x;
        xp(k) += h;
        xm(k) -= h;
        double fp, fm;
        try {
            fp = objective(xp);
            fm = objective(xm);
        } catch (const Error&) {
            ++out.skipped;  // near-parallel configuration at this coordinate
            continue;
        }
        double fd = (fp - fm) / (2.0 * h);
        double scale = std::max({1.0, std::abs(grad(k)), std::abs(fd)});
        out.max_rel_error = std::max(out.max_rel_error, std::abs(grad(k) - fd) / scale);
        ++out.checked;
    }
    return out;
}

ElevationProfile elevation_profile(const FormFindProblem& p, const Solution& s) {
    ElevationProfile prof;
    size_t idx = 0;
    for (size_t r = 0; r < s.poses.size(); ++r) {
        for (int k : {1, 2}) {
            Eigen::Vector2d planar = p.planar_interior_notches[idx++];
            double radius = (planar - p.planar_centroid).norm();
            double height = s.poses[r].notch_point(k).z();
            prof.samples.emplace_back(radius, height);
        }
    }
    std::sort(prof.samples.begin(), prof.samples.end());
    size_t half = prof.samples.size() / 2;
    double inner = 0.0, outer = 0.0;
    for (size_t i = 0; i < prof.samples.size(); ++i) {
        prof.max_height = std::max(prof.max_height, prof.samples[i].second);
        (i < half ? inner : outer) += prof.samples[i].second;
    }
    if (half > 0) prof.inner_mean = inner / half;
    if (prof.samples.size() > half) prof.outer_mean = outer / (prof.samples.size() - half);
    return prof;
}

}  // namespace davinci
