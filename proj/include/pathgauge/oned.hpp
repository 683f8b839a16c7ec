#pragma once

#include <vector>

#include "pathgauge/quantization.hpp"
#include "pathgauge/types.hpp"

namespace pathgauge {

// Gauss-law source coefficient 2 pi^{d/2} / Gamma(d/2): 4 pi, 2 pi, 2 for d = 3, 2, 1.
double source_coefficient(int d);

// Piecewise-linear worldline in the (ct, x) plane, strictly timelike per segment.
struct WorldLine1D {
    std::vector<Eigen::Vector2d> vertices;  // (ct, x), ct strictly increasing
};

void validate_timelike(const WorldLine1D& line);

struct CausalField1D {
    double value = 0.0;
    bool causal_shadow = false;  // event precedes the creation light cone
};

// E(t,x) = q (theta(x - r(tau+)) - theta(r(tau-) - x)) with retarded times
// ct - r0(tau+-) = +-(x - r1(tau+-)). Beyond the final vertex the endpoint is
// frozen; pair superposition cancels the frozen tails.
CausalField1D causal_field_1d(double q, const WorldLine1D& line, double ct, double x);

// Shared creation/annihilation events; electron on the greater-x side carries
// charge -q, positron carries +q, so the enclosed field is +2q.
struct PairGeometry {
    WorldLine1D positron;
    WorldLine1D electron;
    double q = 1.0;
};

void validate_pair(const PairGeometry& pair);

struct PairFluxResult {
    double area = 0.0;          // enclosed spacetime area (shoelace route)
    double polygon_flux = 0.0;  // 2 q A
    double field_flux = 0.0;    // quadrature of the superposed causal field
};

PairFluxResult pair_flux(const PairGeometry& pair);

// alpha1 * A = pi n mapped through the generic phase check (Phi = 2 e A).
QuantizationReport check_1d_quantization(double area, double alpha1, const Constants& k,
                                         double tol = 1e-6);

struct AlphaEstimate {
    double alpha_scale = 0.0;  // pi / A_max
    double a_max = 0.0;        // c^2 tau^2 / 2 with tau = hbar / (2 m c^2)
    double lambda_compton = 0.0;
};

AlphaEstimate estimate_alpha1(double mass, const Constants& k);

}  // namespace pathgauge
