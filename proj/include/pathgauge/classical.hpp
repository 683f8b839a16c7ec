#pragma once

#include <vector>

#include "pathgauge/fields.hpp"
#include "pathgauge/paths.hpp"
#include "pathgauge/potential.hpp"

namespace pathgauge {

// d^2 y^mu / ds^2 = -(e/c) F^{mu nu}(y) dy_nu/ds, s affine in proper time.
FourVector lorentz_acceleration(const FieldConfig& field, const FourVector& y,
                                const FourVector& u, const Constants& k);

struct WorldLine {
    std::vector<double> s;
    std::vector<FourVector> y;  // positions
    std::vector<FourVector> u;  // dy/ds
    std::vector<FourVector> a;  // d2y/ds2 at the nodes

    FourVector position(double s_query) const;   // cubic Hermite dense output
    FourVector tangent(double s_query) const;
    double mass_shell_drift() const;             // max |u.u - u(0).u(0)|
    size_t steps() const { return s.empty() ? 0 : s.size() - 1; }
};

struct WorldLineOptions {
    double tol = 1e-10;       // local error control (mixed abs/rel)
    double max_step = 0.0;    // 0 = unrestricted
    size_t max_steps = 2000000;
};

WorldLine integrate_worldline(const FieldConfig& field, const FourVector& y0,
                              const FourVector& u0, double s_end, const Constants& k,
                              const WorldLineOptions& opt = {});

struct ShootingResult {
    WorldLine line;
    FourVector u0;
    int newton_iterations = 0;
    double endpoint_miss = 0.0;
};

// Single shooting with damped Newton over the initial tangent; s spans [0,1].
ShootingResult connect_endpoints(const FieldConfig& field, const FourVector& x0,
                                 const FourVector& x1, const Constants& k,
                                 double tol = 1e-10, const FourVector* u0_guess = nullptr);

// Family of boundary-value arcs x0 -> x; Jacobians by re-solving at perturbed
// endpoints (central differences).
PathFamily classical_path_family(const FieldConfig& field, const FourVector& x0,
                                 const Constants& k, double bvp_tol = 1e-10,
                                 double fd_step = 1e-4);

// (c/e) * integral of (d^2 y_nu / ds^2)(dy^nu/dx^mu) ds along the arc x0 -> x.
PotentialSample classical_potential(const FieldConfig& field, const FourVector& x0,
                                    const FourVector& x, const Constants& k,
                                    double bvp_tol = 1e-10, double fd_step = 1e-4);

struct ActionResult {
    double proper_time_action = 0.0;    // -m c^2 * total proper time
    double interaction_integral = 0.0;  // integral of A_nu dy^nu along the line
};

ActionResult action_and_phase(const WorldLine& line, const PotentialField& a, double mass,
                              const Constants& k);

}  // namespace pathgauge
