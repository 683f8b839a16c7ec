#include "pathgauge/flux.hpp"

#include <cmath>
#include <numbers>

namespace pathgauge {

namespace {

// 1/2 F^{mu nu} (d_u y_mu d_v y_nu - d_v y_mu d_u y_nu) collapses to
// (d_u y)^T F_cov (d_v y) because raising both tensor indices and lowering
// both tangents cancels pairwise.
double surface_integrand(const FieldConfig& field, const SurfaceSpec& surf, double u, double v) {
    const FourVector tu = surf.du(u, v);
    const FourVector tv = surf.dv(u, v);
    return tu.dot(field_tensor(field, surf.point(u, v)) * tv);
}

double tensor_panel(const FieldConfig& field, const SurfaceSpec& surf, double u0, double u1,
                    double v0, double v1, int order) {
    const auto& xs = gauss_legendre_nodes(order);
    const auto& ws = gauss_legendre_weights(order);
    const double mu = 0.5 * (u0 + u1), hu = 0.5 * (u1 - u0);
    const double mv = 0.5 * (v0 + v1), hv = 0.5 * (v1 - v0);
    double acc = 0.0;
    for (size_t i = 0; i < xs.size(); ++i) {
        const double u = mu + hu * xs[i];
        double row = 0.0;
        for (size_t j = 0; j < xs.size(); ++j) {
            row += ws[j] * surface_integrand(field, surf, u, mv + hv * xs[j]);
        }
        acc += ws[i] * row;
    }
    return acc * hu * hv;
}

std::vector<double> cell_breaks(std::vector<double> splits) {
    splits.push_back(0.0);
    splits.push_back(1.0);
    std::sort(splits.begin(), splits.end());
    std::vector<double> out;
    for (double s : splits) {
        if (s < 0.0 || s > 1.0) continue;
        if (out.empty() || s - out.back() > 1e-14) out.push_back(s);
    }
    if (out.size() < 2) out = {0.0, 1.0};
    return out;
}

}  // namespace

FluxResult flux_loop(const PotentialField& a, const LoopSpec& loop, const FourVector& x,
                     const QuadratureOptions& opt) {
    if (!a) throw validation_error("flux_loop: missing potential");
    const ConcreteCurve curve = loop_curve(loop, x);
    FluxResult out;
    out.route = "loop";
    for (const auto& piece : curve.pieces) {
        auto f = [&](double u) { return a(piece.point(u)).dot(piece.tangent(u)); };
        auto r = adaptive_quadrature<double>(f, 0.0, 1.0, opt);
        out.value += r.value;
        out.err += r.err;
    }
    if (out.err > opt.fail_threshold) {
        throw quadrature_failure("flux_loop: error estimate " + std::to_string(out.err) +
                                 " above threshold");
    }
    return out;
}

FluxResult flux_surface(const FieldConfig& field, const SurfaceSpec& surface,
                        const SurfaceQuadratureOptions& opt) {
    if (!surface.point || !surface.du || !surface.dv) {
        throw validation_error(surface.name + ": surface needs point, du and dv");
    }
    struct Cell {
        double u0, u1, v0, v1;
        int depth;
    };
    const std::vector<double> ub = cell_breaks(surface.u_splits);
    const std::vector<double> vb = cell_breaks(surface.v_splits);
    std::vector<Cell> stack;
    for (size_t i = 0; i + 1 < ub.size(); ++i) {
        for (size_t j = 0; j + 1 < vb.size(); ++j) {
            stack.push_back({ub[i], ub[i + 1], vb[j], vb[j + 1], 0});
        }
    }

    FluxResult out;
    out.route = "surface";
    const int coarse_order = std::max(2, opt.order / 2);
    while (!stack.empty()) {
        const Cell c = stack.back();
        stack.pop_back();
        const double fine = tensor_panel(field, surface, c.u0, c.u1, c.v0, c.v1, opt.order);
        const double coarse = tensor_panel(field, surface, c.u0, c.u1, c.v0, c.v1, coarse_order);
        const double est = std::abs(fine - coarse);
        const double area = (c.u1 - c.u0) * (c.v1 - c.v0);
        if (est <= opt.tol * area || c.depth >= opt.max_depth) {
            out.value += fine;
            out.err += est;
        } else {
            const double um = 0.5 * (c.u0 + c.u1);
            const double vm = 0.5 * (c.v0 + c.v1);
            stack.push_back({c.u0, um, c.v0, vm, c.depth + 1});
            stack.push_back({um, c.u1, c.v0, vm, c.depth + 1});
            stack.push_back({c.u0, um, vm, c.v1, c.depth + 1});
            stack.push_back({um, c.u1, vm, c.v1, c.depth + 1});
        }
    }
    return out;
}

FluxResult flux_open(const FieldConfig& field, const PathFamily& path_a,
                     const PathFamily& path_b, const FourVector& x,
                     const PotentialOptions& opt) {
    if ((path_a.start - path_b.start).lpNorm<Eigen::Infinity>() > 1e-9) {
        throw validation_error("flux_open: paths must share their start point");
    }
    const ConcreteCurve outer = family_curve(path_a, x);
    FluxResult out;
    out.route = "open";
    out.confined_warning = field.confined;
    double inner_err = 0.0;
    for (const auto& piece : outer.pieces) {
        auto f = [&](double u) {
            const PotentialSample s = potential_at(field, path_b, piece.point(u), opt);
            inner_err = std::max(inner_err, s.err);
            return s.a.dot(piece.tangent(u));
        };
        auto r = adaptive_quadrature<double>(f, 0.0, 1.0, opt.quad);
        out.value += r.value;
        out.err += r.err;
    }
    out.err += inner_err;
    return out;
}

SurfaceSpec homotopy_surface(const PathFamily& path_a, const PathFamily& path_b,
                             const FourVector& x) {
    if (path_a.segments.empty() || path_b.segments.empty()) {
        throw validation_error("homotopy_surface: paths need segments");
    }
    SurfaceSpec surf;
    surf.name = "homotopy:" + path_a.name + "-" + path_b.name;
    // Copies keep the spec valid after the arguments go out of scope.
    auto a = path_a;
    auto b = path_b;
    surf.point = [a, b, x](double u, double v) -> FourVector {
        return (1.0 - v) * path_point(a, u, x) + v * path_point(b, u, x);
    };
    surf.du = [a, b, x](double u, double v) -> FourVector {
        return (1.0 - v) * path_tangent(a, u, x) + v * path_tangent(b, u, x);
    };
    surf.dv = [a, b, x](double u, double) -> FourVector {
        return path_point(b, u, x) - path_point(a, u, x);
    };
    // du jumps where either family switches legs.
    for (size_t k = 1; k < path_a.segments.size(); ++k) {
        surf.u_splits.push_back(double(k) / double(path_a.segments.size()));
    }
    for (size_t k = 1; k < path_b.segments.size(); ++k) {
        surf.u_splits.push_back(double(k) / double(path_b.segments.size()));
    }
    return surf;
}

SurfaceSpec sphere_slice(double radius, double phi_opening) {
    constexpr double two_pi = 2.0 * std::numbers::pi;
    if (!(radius > 0.0)) throw validation_error("sphere_slice: radius must be positive");
    if (!(phi_opening > 0.0) || phi_opening > two_pi + 1e-12) {
        throw validation_error("sphere_slice: opening must lie in (0, 2 pi]");
    }
    SurfaceSpec surf;
    surf.name = "sphere_slice";
    const double R = radius, phi = phi_opening;
    const double pi = std::numbers::pi;
    surf.point = [R, phi, pi](double u, double v) -> FourVector {
        const double st = std::sin(pi * v), ct = std::cos(pi * v);
        return FourVector(0.0, R * st * std::cos(phi * u), R * st * std::sin(phi * u), R * ct);
    };
    surf.du = [R, phi, pi](double u, double v) -> FourVector {
        const double st = std::sin(pi * v);
        return FourVector(0.0, -R * phi * st * std::sin(phi * u), R * phi * st * std::cos(phi * u),
                          0.0);
    };
    surf.dv = [R, phi, pi](double u, double v) -> FourVector {
        const double st = std::sin(pi * v), ct = std::cos(pi * v);
        return FourVector(0.0, R * pi * ct * std::cos(phi * u), R * pi * ct * std::sin(phi * u),
                          -R * pi * st);
    };
    return surf;
}

FluxResult full_sphere_flux(const FieldConfig& field, double radius,
                            const SurfaceQuadratureOptions& opt) {
    constexpr double two_pi = 2.0 * std::numbers::pi;
    SurfaceSpec surf = sphere_slice(radius, two_pi);
    // Opening taken to 2 pi as a limit of slices; the last sliver is kept as
    // its own cell rather than closing the seam.
    surf.u_splits.push_back((two_pi - 1e-8) / two_pi);
    FluxResult out = flux_surface(field, surf, opt);
    out.route = "surface";
    return out;
}

SurfaceSpec coordinate_rectangle(const FourVector& corner, const FourVector& edge_u,
                                 const FourVector& edge_v, std::vector<double> u_splits,
                                 std::vector<double> v_splits) {
    ensure_finite(corner, "coordinate_rectangle: corner");
    ensure_finite(edge_u, "coordinate_rectangle: edge_u");
    ensure_finite(edge_v, "coordinate_rectangle: edge_v");
    SurfaceSpec surf;
    surf.name = "rectangle";
    surf.point = [corner, edge_u, edge_v](double u, double v) -> FourVector {
        return corner + u * edge_u + v * edge_v;
    };
    surf.du = [edge_u](double, double) -> FourVector { return edge_u; };
    surf.dv = [edge_v](double, double) -> FourVector { return edge_v; };
    surf.u_splits = std::move(u_splits);
    surf.v_splits = std::move(v_splits);
    return surf;
}

}  // namespace pathgauge
