#include "pathgauge/paths.hpp"

#include <cmath>
#include <utility>

namespace pathgauge {

namespace {

struct LocalParam {
    size_t index;
    double u;
    double rate;  // du/ds
};

LocalParam locate_segment(const PathFamily& path, double s) {
    if (path.segments.empty()) throw validation_error(path.name + ": path family has no segments");
    if (!(s >= 0.0 && s <= 1.0)) throw validation_error(path.name + ": path parameter outside [0,1]");
    const double n = static_cast<double>(path.segments.size());
    const double t = s * n;
    const auto k = static_cast<size_t>(std::min(std::floor(t), n - 1.0));
    return {k, t - static_cast<double>(k), n};
}

Segment reverse_segment(const Segment& s) {
    Segment r;
    r.point = [p = s.point](double u, const FourVector& x) { return p(1.0 - u, x); };
    r.tangent = [t = s.tangent](double u, const FourVector& x) -> FourVector {
        return -t(1.0 - u, x);
    };
    if (s.jacobian) {
        r.jacobian = [j = s.jacobian](double u, const FourVector& x) { return j(1.0 - u, x); };
    }
    return r;
}

// Waypoint pinned to a displaced copy of the evaluation point: the masked
// components are mirrored about `origin` instead of the coordinate zero.
AffineWaypoint masked_about(const FourVector& diag, const FourVector& origin) {
    const Eigen::Matrix4d slope = diag.asDiagonal().toDenseMatrix();
    return {(Eigen::Matrix4d::Identity() - slope) * origin, slope};
}

// Time rides along with the endpoint; the spatial slot is pinned.
AffineWaypoint spatial_pin(const FourVector& origin, double cx, double cy, double cz) {
    FourVector offset(0.0, origin[1] + cx, origin[2] + cy, origin[3] + cz);
    return AffineWaypoint::masked(FourVector(1.0, 0.0, 0.0, 0.0), offset);
}

std::function<void(const FourVector&)> monopole_axis_guard(const BuiltinPathOptions& opt) {
    return [origin = opt.origin, clearance = opt.axis_clearance](const FourVector& x) {
        const Vector3 d = spatial(x) - spatial(origin);
        const double rho = std::hypot(d[0], d[1]);
        if (rho < clearance * d.norm()) {
            throw singular_evaluation(
                "monopole path: evaluation point inside the string clearance cone");
        }
    };
}

}  // namespace

Segment affine_segment(const AffineWaypoint& a, const AffineWaypoint& b) {
    Segment s;
    s.point = [a, b](double u, const FourVector& x) -> FourVector {
        return (1.0 - u) * a.at(x) + u * b.at(x);
    };
    s.tangent = [a, b](double, const FourVector& x) -> FourVector { return b.at(x) - a.at(x); };
    s.jacobian = [a, b](double u, const FourVector&) -> Jacobian {
        return (1.0 - u) * a.slope + u * b.slope;
    };
    return s;
}

Segment warped_segment(Segment s, std::function<double(double)> warp,
                       std::function<double(double)> warp_rate) {
    if (!warp || !warp_rate) throw validation_error("warped_segment: missing warp map or rate");
    Segment out;
    out.point = [base = s.point, warp](double u, const FourVector& x) { return base(warp(u), x); };
    out.tangent = [base = s.tangent, warp, warp_rate](double u, const FourVector& x) -> FourVector {
        return base(warp(u), x) * warp_rate(u);
    };
    if (s.jacobian) {
        out.jacobian = [base = s.jacobian, warp](double u, const FourVector& x) {
            return base(warp(u), x);
        };
    }
    return out;
}

FourVector path_point(const PathFamily& path, double s, const FourVector& x) {
    const LocalParam lp = locate_segment(path, s);
    return path.segments[lp.index].point(lp.u, x);
}

FourVector path_tangent(const PathFamily& path, double s, const FourVector& x) {
    const LocalParam lp = locate_segment(path, s);
    return path.segments[lp.index].tangent(lp.u, x) * lp.rate;
}

Jacobian path_jacobian(const PathFamily& path, double s, const FourVector& x, JacobianMode mode,
                       double fd_step) {
    const LocalParam lp = locate_segment(path, s);
    const Segment& seg = path.segments[lp.index];
    if (mode == JacobianMode::Analytic && seg.jacobian) return seg.jacobian(lp.u, x);
    return finite_difference_jacobian(seg, lp.u, x, fd_step);
}

Jacobian finite_difference_jacobian(const Segment& seg, double u, const FourVector& x,
                                    double step) {
    if (!(step > 0.0)) throw validation_error("finite-difference step must be positive");
    Jacobian J;
    for (int m = 0; m < 4; ++m) {
        if (x[m] + step == x[m]) {
            throw validation_error("finite-difference step underflows at this coordinate scale");
        }
        auto central = [&](double h) -> FourVector {
            FourVector xp = x, xm = x;
            xp[m] += h;
            xm[m] -= h;
            return (seg.point(u, xp) - seg.point(u, xm)) / (2.0 * h);
        };
        const FourVector coarse = central(step);
        const FourVector fine = central(0.5 * step);
        J.col(m) = (4.0 * fine - coarse) / 3.0;
    }
    return J;
}

PathJacobians jacobians(const PathFamily& path, double s, const FourVector& x, JacobianMode mode,
                        double fd_step) {
    const double n = static_cast<double>(path.segments.size());
    const double t = s * n;
    if (t == std::floor(t) && t > 0.0 && t < n) {
        throw validation_error(path.name + ": parameter sits exactly on a segment junction");
    }
    return {path_tangent(path, s, x), path_jacobian(path, s, x, mode, fd_step)};
}

void validate_family(const PathFamily& path, const FourVector& x, double tol) {
    if (path.segments.empty()) throw validation_error(path.name + ": path family has no segments");
    ensure_finite(x, path.name + ": evaluation point");
    if (path.domain_guard) path.domain_guard(x);
    const FourVector head = path.segments.front().point(0.0, x);
    if ((head - path.start).lpNorm<Eigen::Infinity>() > tol) {
        throw validation_error(path.name + ": y(0,x) does not match the declared start");
    }
    const FourVector tail = path.segments.back().point(1.0, x);
    if ((tail - x).lpNorm<Eigen::Infinity>() > tol) {
        throw validation_error(path.name + ": y(1,x) does not reach the evaluation point");
    }
    for (size_t k = 0; k + 1 < path.segments.size(); ++k) {
        const FourVector gap =
            path.segments[k].point(1.0, x) - path.segments[k + 1].point(0.0, x);
        if (gap.lpNorm<Eigen::Infinity>() > tol) {
            throw validation_error(path.name + ": junction gap after segment " +
                                   std::to_string(k));
        }
    }
}

PathFamily waypoint_path(const std::string& name, const std::vector<AffineWaypoint>& pts) {
    if (pts.size() < 2) throw validation_error(name + ": needs at least two waypoints");
    if (pts.front().slope.cwiseAbs().maxCoeff() != 0.0) {
        throw validation_error(name + ": the first waypoint must be a fixed point");
    }
    PathFamily f;
    f.name = name;
    f.start = pts.front().offset;
    for (size_t k = 0; k + 1 < pts.size(); ++k) {
        f.segments.push_back(affine_segment(pts[k], pts[k + 1]));
    }
    return f;
}

PathFamily waypoint_path(const std::string& name, const FourVector& start,
                         const std::vector<FourVector>& interior) {
    std::vector<AffineWaypoint> pts;
    pts.push_back(AffineWaypoint::fixed(start));
    for (const auto& p : interior) pts.push_back(AffineWaypoint::fixed(p));
    pts.push_back(AffineWaypoint::endpoint());
    return waypoint_path(name, pts);
}

PathFamily builtin_path(const std::string& name, const BuiltinPathOptions& opt) {
    const FourVector& o = opt.origin;
    const double R = opt.far_radius;
    if (name == "velocity") {
        return waypoint_path(name, {AffineWaypoint::fixed(o),
                                    masked_about(FourVector(0, 1, 1, 1), o),
                                    AffineWaypoint::endpoint()});
    }
    if (name == "length") {
        return waypoint_path(name, {AffineWaypoint::fixed(o),
                                    masked_about(FourVector(1, 0, 0, 0), o),
                                    AffineWaypoint::endpoint()});
    }
    if (name == "straight_line") {
        return waypoint_path(name, {AffineWaypoint::fixed(o), AffineWaypoint::endpoint()});
    }
    if (name == "monopole_north") {
        // Descends on the far side, runs under the equatorial plane in y = 0,
        // climbs the vertical mirror line, then closes in the z-plane of the
        // endpoint. Every leg before the last contributes exactly zero.
        PathFamily f = waypoint_path(
            name, {AffineWaypoint::fixed(o + FourVector(0, R, 0, -R)),
                   masked_about(FourVector(1, 0, 0, -1), o), masked_about(FourVector(1, 1, 0, -1), o),
                   masked_about(FourVector(1, 1, 0, 1), o), masked_about(FourVector(1, 0, 0, 1), o),
                   AffineWaypoint::endpoint()});
        f.domain_guard = monopole_axis_guard(opt);
        return f;
    }
    if (name == "monopole_south") {
        PathFamily f = waypoint_path(
            name, {AffineWaypoint::fixed(o + FourVector(0, R, 0, -R)),
                   masked_about(FourVector(1, 0, 0, -1), o), masked_about(FourVector(1, 1, 1, -1), o),
                   AffineWaypoint::endpoint()});
        f.domain_guard = monopole_axis_guard(opt);
        return f;
    }
    if (name == "disk_p1") {
        // Far point taken on the +x axis so both approach legs stay collinear
        // with the axis and contribute exactly zero.
        return waypoint_path(name, {AffineWaypoint::fixed(o + FourVector(0, R, 0, 0)),
                                    masked_about(FourVector(1, 1, 0, 0), o),
                                    masked_about(FourVector(1, 0, 0, 0), o),
                                    AffineWaypoint::endpoint()});
    }
    if (name == "disk_p2") {
        // disk_p1 plus a counterclockwise rectangle of fixed corners around
        // the flux tube; pinned corners contribute exactly zero, so the two
        // disk paths induce the same potential while their loop winds once.
        const double dx = opt.detour_half_x;
        const double dy = opt.detour_half_y;
        return waypoint_path(name, {AffineWaypoint::fixed(o + FourVector(0, R, 0, 0)),
                                    masked_about(FourVector(1, 1, 0, 0), o),
                                    spatial_pin(o, dx, 0, 0),
                                    spatial_pin(o, dx, dy, 0),
                                    spatial_pin(o, -dx, dy, 0),
                                    spatial_pin(o, -dx, -dy, 0),
                                    spatial_pin(o, dx, -dy, 0),
                                    spatial_pin(o, dx, 0, 0),
                                    masked_about(FourVector(1, 0, 0, 0), o),
                                    AffineWaypoint::endpoint()});
    }
    if (name == "eblock_p1") {
        return waypoint_path(name, {AffineWaypoint::fixed(o), AffineWaypoint::endpoint()});
    }
    if (name == "eblock_p2") {
        // Straight line plus a clockwise spacetime rectangle of fixed
        // vertices around the field block; fixed legs contribute zero, so
        // the loop against eblock_p1 encloses the block counterclockwise.
        const double hc = opt.detour_half_ct;
        const double hx = opt.detour_half_x;
        const FourVector v1 = o + FourVector(-hc, -hx, 0, 0);
        const FourVector v2 = o + FourVector(-hc, hx, 0, 0);
        const FourVector v3 = o + FourVector(hc, hx, 0, 0);
        const FourVector v4 = o + FourVector(hc, -hx, 0, 0);
        return waypoint_path(name, {AffineWaypoint::fixed(o), AffineWaypoint::fixed(v1),
                                    AffineWaypoint::fixed(v2), AffineWaypoint::fixed(v3),
                                    AffineWaypoint::fixed(v4), AffineWaypoint::fixed(v1),
                                    AffineWaypoint::fixed(o), AffineWaypoint::endpoint()});
    }
    std::string known;
    for (const auto& n : builtin_path_names()) known += (known.empty() ? "" : ", ") + n;
    throw validation_error("unknown builtin path '" + name + "' (known: " + known + ")");
}

std::vector<std::string> builtin_path_names() {
    return {"velocity",  "length",  "straight_line", "monopole_north", "monopole_south",
            "disk_p1",   "disk_p2", "eblock_p1",     "eblock_p2"};
}

PathFamily reverse_family(const PathFamily& path) {
    PathFamily r;
    r.name = path.name + ".reversed";
    r.start = path.start;  // placeholder: a reversed family starts at the evaluation point
    r.domain_guard = path.domain_guard;
    for (auto it = path.segments.rbegin(); it != path.segments.rend(); ++it) {
        r.segments.push_back(reverse_segment(*it));
    }
    return r;
}

PathFamily concatenate_winding(const LoopSpec& loop) {
    if (loop.winding < 1) throw validation_error("concatenate_winding: winding must be >= 1");
    if ((loop.path_a.start - loop.path_b.start).lpNorm<Eigen::Infinity>() > 1e-9) {
        throw validation_error("concatenate_winding: loop paths must share their start point");
    }
    PathFamily out;
    out.name = loop.path_b.name + "+" + std::to_string(loop.winding) + "x(" + loop.path_a.name +
               "^-1*" + loop.path_b.name + ")";
    out.start = loop.path_b.start;
    if (loop.path_a.domain_guard && loop.path_b.domain_guard) {
        out.domain_guard = [ga = loop.path_a.domain_guard,
                            gb = loop.path_b.domain_guard](const FourVector& x) {
            ga(x);
            gb(x);
        };
    } else {
        out.domain_guard = loop.path_a.domain_guard ? loop.path_a.domain_guard
                                                    : loop.path_b.domain_guard;
    }
    const PathFamily rev_a = reverse_family(loop.path_a);
    out.segments = loop.path_b.segments;
    for (int n = 0; n < loop.winding; ++n) {
        out.segments.insert(out.segments.end(), rev_a.segments.begin(), rev_a.segments.end());
        out.segments.insert(out.segments.end(), loop.path_b.segments.begin(),
                            loop.path_b.segments.end());
    }
    return out;
}

ConcreteCurve family_curve(const PathFamily& path, const FourVector& x) {
    if (path.segments.empty()) throw validation_error(path.name + ": path family has no segments");
    if (path.domain_guard) path.domain_guard(x);
    ConcreteCurve c;
    for (const auto& seg : path.segments) {
        c.pieces.push_back({[pt = seg.point, x](double u) { return pt(u, x); },
                            [tg = seg.tangent, x](double u) { return tg(u, x); }});
    }
    return c;
}

ConcreteCurve loop_curve(const LoopSpec& loop, const FourVector& x) {
    if (loop.winding < 1) throw validation_error("loop_curve: winding must be >= 1");
    if ((loop.path_a.start - loop.path_b.start).lpNorm<Eigen::Infinity>() > 1e-9) {
        throw validation_error("loop_curve: loop paths must share their start point");
    }
    const ConcreteCurve fwd = family_curve(loop.path_a, x);
    const ConcreteCurve bwd = family_curve(reverse_family(loop.path_b), x);
    ConcreteCurve c;
    for (int n = 0; n < loop.winding; ++n) {
        c.pieces.insert(c.pieces.end(), fwd.pieces.begin(), fwd.pieces.end());
        c.pieces.insert(c.pieces.end(), bwd.pieces.begin(), bwd.pieces.end());
    }
    return c;
}

}  // namespace pathgauge
