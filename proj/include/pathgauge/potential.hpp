#pragma once

#include <complex>
#include <functional>
#include <string>
#include <vector>

#include "pathgauge/fields.hpp"
#include "pathgauge/paths.hpp"
#include "pathgauge/quadrature.hpp"

namespace pathgauge {

struct PotentialOptions {
    QuadratureOptions quad;
    bool antisymmetrized = false;   // use the explicitly antisymmetrized integrand
    JacobianMode jacobian_mode = JacobianMode::Analytic;
    double fd_step = 1e-6;
};

struct PotentialSample {
    FourVector x;
    FourVector a;      // covariant components A_mu
    double err = 0.0;  // accumulated quadrature estimate
    std::string path;
};

// A_mu(P, x) = sum over legs of the quadrature of F_{nu lam}(y) dy^nu/du dy^lam/dx^mu,
// split at declared field discontinuities.
PotentialSample potential_at(const FieldConfig& field, const PathFamily& path,
                             const FourVector& x, const PotentialOptions& opt = {});

// Covariant potential field y -> A_mu(y).
using PotentialField = std::function<FourVector(const FourVector&)>;

struct GaugeCompareRow {
    FourVector x;
    FourVector numeric;
    FourVector reference;
    double diff = 0.0;
    double err = 0.0;
};

struct GaugeCompareReport {
    std::vector<GaugeCompareRow> rows;
    double max_diff = 0.0;
    double mean_diff = 0.0;
    double max_err = 0.0;
};

GaugeCompareReport gauge_compare(const FieldConfig& field, const PathFamily& path,
                                 const PotentialField& reference,
                                 const std::vector<FourVector>& grid,
                                 const PotentialOptions& opt = {});

struct PathTransformReport {
    FourVector potential_a;  // A(path_a, x)
    FourVector potential_b;  // A(path_b, x)
    FourVector lhs;          // A(path_b, x) - A(path_a, x)
    FourVector rhs;          // central-difference gradient of the connecting flux
    double flux = 0.0;       // Phi(path_a - path_b) at x
    double max_abs_diff = 0.0;
};

// Verifies A(path_b) = A(path_a) + grad Phi with Phi the flux linking the two paths.
PathTransformReport path_transform(const FieldConfig& field, const PathFamily& path_a,
                                   const PathFamily& path_b, const FourVector& x,
                                   double probe_step = 1e-3, const PotentialOptions& opt = {});

// Integral of A_mu dy^mu along the family at endpoint x.
double potential_line_integral(const PotentialField& a, const PathFamily& path,
                               const FourVector& x, const QuadratureOptions& opt = {},
                               double* err_out = nullptr);

// exp(-(i e / hbar c) * integral of A_nu dy^nu).
std::complex<double> nonintegrable_phase(const PotentialField& a, const PathFamily& path,
                                         const FourVector& x, const Constants& k,
                                         const QuadratureOptions& opt = {});

// Same phase with the path's own potential standing in for A (documented
// reference-path convention; closed-loop phases do not depend on it).
std::complex<double> nonintegrable_phase(const FieldConfig& field, const PathFamily& path,
                                         const FourVector& x, const Constants& k,
                                         const PotentialOptions& opt = {});

// Integral of A(P, .) along P itself for a piecewise-linear path through fixed
// waypoints, each point evaluated with the sub-path truncated there. Vanishes
// identically for any field; the quadrature measures how well.
double self_open_integral(const FieldConfig& field, const FourVector& start,
                          const std::vector<FourVector>& interior, const FourVector& x,
                          const PotentialOptions& opt = {}, double* err_out = nullptr);

// Closed-form covariant reference potentials.
namespace reference {
PotentialField velocity_gauge(const Vector3& E0);
PotentialField length_gauge(const Vector3& E0);
PotentialField fock_schwinger(const FieldTensor& F);  // A_mu(y) = 1/2 y^nu F_{nu mu}
PotentialField monopole_north(double g);
PotentialField monopole_south(double g);
PotentialField disk(double B0, double r0);
PotentialField eblock(double E0, double dt, double dx, double c = 1.0);
}  // namespace reference

}  // namespace pathgauge
