#pragma once

#include <functional>
#include <string>
#include <vector>

#include "pathgauge/fields.hpp"
#include "pathgauge/paths.hpp"
#include "pathgauge/potential.hpp"

namespace pathgauge {

struct SurfaceSpec {
    std::string name;
    std::function<FourVector(double, double)> point;  // y(u, v)
    std::function<FourVector(double, double)> du;
    std::function<FourVector(double, double)> dv;
    std::vector<double> u_splits;  // interior breakpoints of the (u,v) domain
    std::vector<double> v_splits;
};

struct SurfaceQuadratureOptions {
    int order = 16;
    double tol = 1e-9;
    int max_depth = 12;
};

struct FluxResult {
    double value = 0.0;
    double err = 0.0;
    std::string route;
    bool confined_warning = false;  // open route applied to a confined field
};

// Line integral of a supplied potential along path_a forward then path_b
// reversed, times the winding count.
FluxResult flux_loop(const PotentialField& a, const LoopSpec& loop, const FourVector& x,
                     const QuadratureOptions& opt = {});

// 1/2 F^{mu nu} dsigma_{mu nu} over the surface, adaptive tensor-product rule.
FluxResult flux_surface(const FieldConfig& field, const SurfaceSpec& surface,
                        const SurfaceQuadratureOptions& opt = {});

// Integrates A(path_b, .) along path_a (nested quadrature). Equals the flux
// through the loop path_a - path_b; flagged when the field is confined.
FluxResult flux_open(const FieldConfig& field, const PathFamily& path_a,
                     const PathFamily& path_b, const FourVector& x,
                     const PotentialOptions& opt = {});

// Linear homotopy y(u,v) = (1-v) a(u) + v b(u) between the two paths at x;
// boundary orientation matches the loop path_a - path_b.
SurfaceSpec homotopy_surface(const PathFamily& path_a, const PathFamily& path_b,
                             const FourVector& x);

// Sphere slice of azimuthal opening phi at the given radius, oriented so the
// monopole slice flux is +2 g phi.
SurfaceSpec sphere_slice(double radius, double phi_opening);

// phi -> 2 pi limit of slices, split at 2 pi - 1e-8.
FluxResult full_sphere_flux(const FieldConfig& field, double radius,
                            const SurfaceQuadratureOptions& opt = {});

// Planar patch y(u,v) = corner + u edge_u + v edge_v.
SurfaceSpec coordinate_rectangle(const FourVector& corner, const FourVector& edge_u,
                                 const FourVector& edge_v,
                                 std::vector<double> u_splits = {},
                                 std::vector<double> v_splits = {});

}  // namespace pathgauge
