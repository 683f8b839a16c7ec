#include "pathgauge/potential.hpp"

#include <cmath>

#include "pathgauge/flux.hpp"

namespace pathgauge {

namespace {

// Interior breakpoints of segment k in the local parameter, one per declared
// discontinuity surface crossed by the leg.
std::vector<double> segment_breaks(const FieldConfig& field, const Segment& seg,
                                   const FourVector& x) {
    std::vector<double> breaks;
    for (const auto& surf : field.discontinuities) {
        auto level = [&](double u) { return surf.level(seg.point(u, x)); };
        auto roots = locate_roots(level);
        breaks.insert(breaks.end(), roots.begin(), roots.end());
    }
    return breaks;
}

}  // namespace

PotentialSample potential_at(const FieldConfig& field, const PathFamily& path,
                             const FourVector& x, const PotentialOptions& opt) {
    if (path.segments.empty()) throw validation_error(path.name + ": path family has no segments");
    ensure_finite(x, path.name + ": evaluation point");
    if (path.domain_guard) path.domain_guard(x);

    PotentialSample out;
    out.x = x;
    out.path = path.name;
    FourVector acc = FourVector::Zero();
    double err = 0.0;
    for (const auto& seg : path.segments) {
        auto integrand = [&](double u) -> FourVector {
            const FourVector ydot = seg.tangent(u, x);
            const Jacobian J = (opt.jacobian_mode == JacobianMode::Analytic && seg.jacobian)
                                   ? seg.jacobian(u, x)
                                   : finite_difference_jacobian(seg, u, x, opt.fd_step);
            const FieldTensor F = field_tensor(field, seg.point(u, x));
            if (opt.antisymmetrized) {
                return FourVector(0.5 * ((F - F.transpose()).transpose() * ydot).transpose() * J);
            }
            return FourVector((ydot.transpose() * F * J).transpose());
        };
        auto piece = adaptive_quadrature_split<FourVector>(integrand, segment_breaks(field, seg, x),
                                                           opt.quad);
        acc += piece.value;
        err += piece.err;
    }
    if (err > opt.quad.fail_threshold) {
        throw quadrature_failure(path.name + ": potential quadrature error estimate " +
                                 std::to_string(err) + " above threshold");
    }
    out.a = acc;
    out.err = err;
    return out;
}

GaugeCompareReport gauge_compare(const FieldConfig& field, const PathFamily& path,
                                 const PotentialField& reference,
                                 const std::vector<FourVector>& grid,
                                 const PotentialOptions& opt) {
    if (grid.empty()) throw validation_error("gauge_compare: empty evaluation grid");
    if (!reference) throw validation_error("gauge_compare: missing reference potential");
    GaugeCompareReport report;
    report.rows.reserve(grid.size());
    double sum = 0.0;
    for (const auto& x : grid) {
        const PotentialSample sample = potential_at(field, path, x, opt);
        GaugeCompareRow row;
        row.x = x;
        row.numeric = sample.a;
        row.reference = reference(x);
        row.diff = (row.numeric - row.reference).lpNorm<Eigen::Infinity>();
        row.err = sample.err;
        report.max_diff = std::max(report.max_diff, row.diff);
        report.max_err = std::max(report.max_err, row.err);
        sum += row.diff;
        report.rows.push_back(std::move(row));
    }
    report.mean_diff = sum / static_cast<double>(report.rows.size());
    return report;
}

PathTransformReport path_transform(const FieldConfig& field, const PathFamily& path_a,
                                   const PathFamily& path_b, const FourVector& x,
                                   double probe_step, const PotentialOptions& opt) {
    if (!(probe_step > 0.0)) throw validation_error("path_transform: probe step must be positive");
    for (const auto& surf : field.discontinuities) {
        const bool base = surf.level(x) > 0.0;
        for (int m = 0; m < 4; ++m) {
            for (double sgn : {-1.0, 1.0}) {
                FourVector probe = x;
                probe[m] += sgn * probe_step;
                if ((surf.level(probe) > 0.0) != base) {
                    throw validation_error("path_transform: surface '" + surf.label +
                                           "' crosses the gradient probe stencil");
                }
            }
        }
    }

    PathTransformReport rep;
    rep.potential_a = potential_at(field, path_a, x, opt).a;
    rep.potential_b = potential_at(field, path_b, x, opt).a;
    rep.lhs = rep.potential_b - rep.potential_a;
    auto flux_at = [&](const FourVector& z) {
        return flux_open(field, path_a, path_b, z, opt).value;
    };
    rep.flux = flux_at(x);
    for (int m = 0; m < 4; ++m) {
        FourVector xp = x, xm = x;
        xp[m] += probe_step;
        xm[m] -= probe_step;
        rep.rhs[m] = (flux_at(xp) - flux_at(xm)) / (2.0 * probe_step);
    }
    rep.max_abs_diff = (rep.lhs - rep.rhs).lpNorm<Eigen::Infinity>();
    return rep;
}

double potential_line_integral(const PotentialField& a, const PathFamily& path,
                               const FourVector& x, const QuadratureOptions& opt,
                               double* err_out) {
    if (!a) throw validation_error("potential_line_integral: missing potential");
    const ConcreteCurve curve = family_curve(path, x);
    double total = 0.0, err = 0.0;
    for (const auto& piece : curve.pieces) {
        auto f = [&](double u) { return a(piece.point(u)).dot(piece.tangent(u)); };
        auto r = adaptive_quadrature<double>(f, 0.0, 1.0, opt);
        total += r.value;
        err += r.err;
    }
    if (err > opt.fail_threshold) {
        throw quadrature_failure(path.name + ": line-integral error estimate above threshold");
    }
    if (err_out) *err_out = err;
    return total;
}

std::complex<double> nonintegrable_phase(const PotentialField& a, const PathFamily& path,
                                         const FourVector& x, const Constants& k,
                                         const QuadratureOptions& opt) {
    const double integral = potential_line_integral(a, path, x, opt);
    return std::exp(std::complex<double>(0.0, -k.e * integral / (k.hbar * k.c)));
}

std::complex<double> nonintegrable_phase(const FieldConfig& field, const PathFamily& path,
                                         const FourVector& x, const Constants& k,
                                         const PotentialOptions& opt) {
    PotentialField own = [&field, &path, &opt](const FourVector& y) {
        return potential_at(field, path, y, opt).a;
    };
    return nonintegrable_phase(own, path, x, k, opt.quad);
}

double self_open_integral(const FieldConfig& field, const FourVector& start,
                          const std::vector<FourVector>& interior, const FourVector& x,
                          const PotentialOptions& opt, double* err_out) {
    std::vector<FourVector> pts;
    pts.reserve(interior.size() + 2);
    pts.push_back(start);
    pts.insert(pts.end(), interior.begin(), interior.end());
    pts.push_back(x);

    double total = 0.0, err = 0.0;
    for (size_t j = 0; j + 1 < pts.size(); ++j) {
        const std::vector<FourVector> visited(pts.begin() + 1, pts.begin() + 1 + j);
        const PathFamily sub = waypoint_path("self.leg" + std::to_string(j), start, visited);
        const FourVector a4 = pts[j];
        const FourVector b4 = pts[j + 1];
        auto f = [&](double u) -> double {
            const FourVector z = (1.0 - u) * a4 + u * b4;
            return potential_at(field, sub, z, opt).a.dot(b4 - a4);
        };
        auto piece = adaptive_quadrature<double>(f, 0.0, 1.0, opt.quad);
        total += piece.value;
        err += piece.err;
    }
    if (err_out) *err_out = err;
    return total;
}

namespace reference {

PotentialField velocity_gauge(const Vector3& E0) {
    return [E0](const FourVector& y) { return FourVector(0.0, y[0] * E0[0], y[0] * E0[1], y[0] * E0[2]); };
}

PotentialField length_gauge(const Vector3& E0) {
    return [E0](const FourVector& y) { return FourVector(-spatial(y).dot(E0), 0.0, 0.0, 0.0); };
}

PotentialField fock_schwinger(const FieldTensor& F) {
    return [F](const FourVector& y) { return FourVector(0.5 * F.transpose() * y); };
}

PotentialField monopole_north(double g) {
    return [g](const FourVector& y) {
        const double rho2 = y[1] * y[1] + y[2] * y[2];
        const double r = spatial_norm(y);
        const double shape = g * (1.0 - y[3] / r) / rho2;
        return FourVector(0.0, y[2] * shape, -y[1] * shape, 0.0);
    };
}

PotentialField monopole_south(double g) {
    return [g](const FourVector& y) {
        const double rho2 = y[1] * y[1] + y[2] * y[2];
        const double r = spatial_norm(y);
        const double shape = g * (1.0 + y[3] / r) / rho2;
        return FourVector(0.0, -y[2] * shape, y[1] * shape, 0.0);
    };
}

PotentialField disk(double B0, double r0) {
    return [B0, r0](const FourVector& y) {
        const double rho2 = y[1] * y[1] + y[2] * y[2];
        const double scale = rho2 <= r0 * r0 ? 0.5 * B0 : 0.5 * B0 * r0 * r0 / rho2;
        return FourVector(0.0, scale * y[2], -scale * y[1], 0.0);
    };
}

PotentialField eblock(double E0, double dt, double dx, double c) {
    return [E0, dt, dx, c](const FourVector& y) {
        const double ct = y[0];
        const double x1 = y[1];
        double ustar = 0.0;
        if (ct > 0.0 && x1 > 0.0) ustar = std::min({1.0, c * dt / ct, dx / x1});
        const double w = 0.5 * ustar * ustar;
        return FourVector(-E0 * x1 * w, E0 * ct * w, 0.0, 0.0);
    };
}

}  // namespace reference

}  // namespace pathgauge
