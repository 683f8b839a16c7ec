#include "pathgauge/oned.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "pathgauge/fields.hpp"
#include "pathgauge/quadrature.hpp"

namespace pathgauge {

double source_coefficient(int d) {
    if (d < 1) throw validation_error("source_coefficient: dimension must be a positive integer");
    return 2.0 * std::pow(std::numbers::pi, 0.5 * d) / std::tgamma(0.5 * d);
}

void validate_timelike(const WorldLine1D& line) {
    if (line.vertices.size() < 2) {
        throw validation_error("WorldLine1D: need at least two vertices");
    }
    for (const auto& v : line.vertices) {
        if (!v.allFinite()) throw validation_error("WorldLine1D: non-finite vertex");
    }
    for (size_t i = 0; i + 1 < line.vertices.size(); ++i) {
        const double dct = line.vertices[i + 1][0] - line.vertices[i][0];
        const double dx = line.vertices[i + 1][1] - line.vertices[i][1];
        if (!(dct > 0.0)) throw validation_error("WorldLine1D: ct must be strictly increasing");
        if (!(std::abs(dx) < dct)) {
            throw validation_error("WorldLine1D: segment is not strictly timelike");
        }
    }
}

namespace {

// Retarded position along a piecewise-linear worldline: the x-coordinate of
// the unique crossing of the null coordinate n(tau) = ct(tau) + sgn * x(tau)
// with the target value. Both ct -+ x are strictly increasing on a timelike
// line, so the crossing segment inverts linearly; beyond the last vertex the
// endpoint is frozen.
double retarded_position(const WorldLine1D& line, double sgn, double target) {
    const auto& v = line.vertices;
    auto null_coord = [&](const Eigen::Vector2d& p) { return p[0] + sgn * p[1]; };
    if (target >= null_coord(v.back())) return v.back()[1];
    size_t k = 0;
    while (k + 2 < v.size() && null_coord(v[k + 1]) <= target) ++k;
    const double n0 = null_coord(v[k]), n1 = null_coord(v[k + 1]);
    const double t = (target - n0) / (n1 - n0);
    return v[k][1] + t * (v[k + 1][1] - v[k][1]);
}

// x-coordinate at a given ct by linear interpolation between vertices.
double position_at(const WorldLine1D& line, double ct) {
    const auto& v = line.vertices;
    if (ct <= v.front()[0]) return v.front()[1];
    if (ct >= v.back()[0]) return v.back()[1];
    size_t k = 0;
    while (k + 2 < v.size() && v[k + 1][0] <= ct) ++k;
    const double t = (ct - v[k][0]) / (v[k + 1][0] - v[k][0]);
    return v[k][1] + t * (v[k + 1][1] - v[k][1]);
}

}  // namespace

CausalField1D causal_field_1d(double q, const WorldLine1D& line, double ct, double x) {
    validate_timelike(line);
    const Eigen::Vector2d created = line.vertices.front();
    if (ct - created[0] < std::abs(x - created[1])) {
        return {0.0, true};
    }
    // Right-moving ray: ct - x = r0 - r1; left-moving: ct + x = r0 + r1.
    const double r_plus = retarded_position(line, -1.0, ct - x);
    const double r_minus = retarded_position(line, +1.0, ct + x);
    return {q * (unit_step(x - r_plus) - unit_step(r_minus - x)), false};
}

void validate_pair(const PairGeometry& pair) {
    validate_timelike(pair.positron);
    validate_timelike(pair.electron);
    if (!(pair.q > 0.0)) throw validation_error("PairGeometry: charge must be positive");
    const double gap_created =
        (pair.positron.vertices.front() - pair.electron.vertices.front()).lpNorm<Eigen::Infinity>();
    const double gap_annihilated =
        (pair.positron.vertices.back() - pair.electron.vertices.back()).lpNorm<Eigen::Infinity>();
    if (gap_created > 1e-9 || gap_annihilated > 1e-9) {
        throw validation_error("PairGeometry: worldlines must share creation and annihilation events");
    }
    for (const auto* line : {&pair.positron, &pair.electron}) {
        for (const auto& v : line->vertices) {
            const double xe = position_at(pair.electron, v[0]);
            const double xp = position_at(pair.positron, v[0]);
            if (xe - xp < -1e-12) {
                throw validation_error("PairGeometry: electron must stay on the greater-x side");
            }
        }
    }
}

PairFluxResult pair_flux(const PairGeometry& pair) {
    validate_pair(pair);
    PairFluxResult out;

    // Closed polygon: positron forward, electron reversed.
    std::vector<Eigen::Vector2d> poly = pair.positron.vertices;
    poly.insert(poly.end(), pair.electron.vertices.rbegin(), pair.electron.vertices.rend());
    double twice_area = 0.0;
    for (size_t i = 0; i < poly.size(); ++i) {
        const auto& p = poly[i];
        const auto& n = poly[(i + 1) % poly.size()];
        twice_area += p[0] * n[1] - n[0] * p[1];
    }
    out.area = 0.5 * std::abs(twice_area);
    out.polygon_flux = 2.0 * pair.q * out.area;

    // Field route: quadrature of the superposed causal field between the
    // worldlines, sliced per time; kinks sit at the vertex times.
    const double ct0 = pair.positron.vertices.front()[0];
    const double ct1 = pair.positron.vertices.back()[0];
    std::vector<double> splits;
    for (const auto* line : {&pair.positron, &pair.electron}) {
        for (const auto& v : line->vertices) {
            const double w = (v[0] - ct0) / (ct1 - ct0);
            if (w > 1e-12 && w < 1.0 - 1e-12) splits.push_back(w);
        }
    }
    auto slice = [&](double w) -> double {
        const double ct = ct0 + w * (ct1 - ct0);
        const double xp = position_at(pair.positron, ct);
        const double xe = position_at(pair.electron, ct);
        if (xe - xp <= 0.0) return 0.0;
        auto field = [&](double x) {
            return causal_field_1d(pair.q, pair.positron, ct, x).value +
                   causal_field_1d(-pair.q, pair.electron, ct, x).value;
        };
        return adaptive_quadrature<double>(field, xp, xe).value;
    };
    out.field_flux = (ct1 - ct0) * adaptive_quadrature_split<double>(slice, splits).value;
    return out;
}

QuantizationReport check_1d_quantization(double area, double alpha1, const Constants& k,
                                         double tol) {
    if (!(area >= 0.0)) throw validation_error("check_1d_quantization: area must be nonnegative");
    // alpha1 A = pi n is e Phi / (hbar c) = 2 pi n with Phi = 2 (alpha1 hbar c / e) A.
    const double flux = 2.0 * alpha1 * area * k.hbar * k.c / k.e;
    return check_phase(flux, k, tol);
}

AlphaEstimate estimate_alpha1(double mass, const Constants& k) {
    if (!(mass > 0.0)) throw validation_error("estimate_alpha1: mass must be positive");
    AlphaEstimate est;
    est.lambda_compton = k.hbar / (mass * k.c);
    const double tau = k.hbar / (2.0 * mass * k.c * k.c);
    est.a_max = 0.5 * k.c * k.c * tau * tau;
    est.alpha_scale = std::numbers::pi / est.a_max;
    return est;
}

}  // namespace pathgauge
