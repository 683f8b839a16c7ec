#pragma once

#include <functional>
#include <string>
#include <vector>

#include "pathgauge/types.hpp"

namespace pathgauge {

enum class JacobianMode { Analytic, FiniteDifference };

// Path-family waypoint as an affine function of the evaluation point:
// w(x) = offset + slope * x.
struct AffineWaypoint {
    FourVector offset = FourVector::Zero();
    Eigen::Matrix4d slope = Eigen::Matrix4d::Zero();

    FourVector at(const FourVector& x) const { return offset + slope * x; }

    static AffineWaypoint fixed(const FourVector& p) { return {p, Eigen::Matrix4d::Zero()}; }
    static AffineWaypoint endpoint() { return {FourVector::Zero(), Eigen::Matrix4d::Identity()}; }
    // Component mask: w_i = diag_i * x_i + offset_i.
    static AffineWaypoint masked(const FourVector& diag, const FourVector& offset = FourVector::Zero()) {
        return {offset, diag.asDiagonal().toDenseMatrix()};
    }
};

// One leg of a path family, parametrized on u in [0,1] for every endpoint x.
struct Segment {
    std::function<FourVector(double, const FourVector&)> point;
    std::function<FourVector(double, const FourVector&)> tangent;   // dy/du
    std::function<Jacobian(double, const FourVector&)> jacobian;    // dy/dx (may be empty)
};

Segment affine_segment(const AffineWaypoint& a, const AffineWaypoint& b);

// Smooth monotone reparametrization of a segment (w(0)=0, w(1)=1).
Segment warped_segment(Segment s, std::function<double(double)> warp,
                       std::function<double(double)> warp_rate);

struct PathFamily {
    std::string name;
    FourVector start = FourVector::Zero();   // y(0, x), independent of x
    std::vector<Segment> segments;
    std::function<void(const FourVector&)> domain_guard;  // optional admissibility check
};

// Global parametrization: s in [0,1] with equal measure per segment.
FourVector path_point(const PathFamily& path, double s, const FourVector& x);
FourVector path_tangent(const PathFamily& path, double s, const FourVector& x);  // dy/ds
Jacobian path_jacobian(const PathFamily& path, double s, const FourVector& x,
                       JacobianMode mode = JacobianMode::Analytic, double fd_step = 1e-6);

// Central-difference dy/dx of a single segment (Richardson-extrapolated).
Jacobian finite_difference_jacobian(const Segment& seg, double u, const FourVector& x,
                                    double step = 1e-6);

struct PathJacobians {
    FourVector dyds;
    Jacobian dydx;
};

// Both derivatives at a global parameter; errors when s sits exactly on an
// interior segment junction (dy/ds jumps there, callers must split).
PathJacobians jacobians(const PathFamily& path, double s, const FourVector& x,
                        JacobianMode mode = JacobianMode::Analytic, double fd_step = 1e-6);

// Checks y(0,x) = start, y(1,x) = x, and junction continuity between legs.
void validate_family(const PathFamily& path, const FourVector& x, double tol = 1e-9);

// Piecewise-linear family through affine waypoints; first entry is the start,
// last should be AffineWaypoint::endpoint() for a family ending at x.
PathFamily waypoint_path(const std::string& name, const std::vector<AffineWaypoint>& pts);
// Fixed interior waypoints; ends at the evaluation point.
PathFamily waypoint_path(const std::string& name, const FourVector& start,
                         const std::vector<FourVector>& interior);

struct BuiltinPathOptions {
    double far_radius = 1e4;        // stand-in distance for points at infinity
    double axis_clearance = 1e-6;   // relative clearance from the monopole axis
    double detour_half_ct = 2.0;    // detour rectangle half-extents for *_p2 paths
    double detour_half_x = 2.0;
    double detour_half_y = 2.0;
    FourVector origin = FourVector::Zero();
};

// Names: velocity, length, straight_line, monopole_north, monopole_south,
// disk_p1, disk_p2, eblock_p1, eblock_p2.
PathFamily builtin_path(const std::string& name, const BuiltinPathOptions& opt = {});
std::vector<std::string> builtin_path_names();

PathFamily reverse_family(const PathFamily& path);

struct LoopSpec {
    PathFamily path_a;
    PathFamily path_b;
    int winding = 1;
};

// path_b, then N traversals of the closed loop (path_a reversed, then path_b).
PathFamily concatenate_winding(const LoopSpec& loop);

// Curve at a fixed endpoint: pieces u -> y with tangents, for line integrals.
struct ConcreteCurve {
    struct Piece {
        std::function<FourVector(double)> point;
        std::function<FourVector(double)> tangent;
    };
    std::vector<Piece> pieces;
};

ConcreteCurve family_curve(const PathFamily& path, const FourVector& x);
// path_a forward, then path_b reversed (the loop bounding the connecting flux).
ConcreteCurve loop_curve(const LoopSpec& loop, const FourVector& x);

}  // namespace pathgauge
