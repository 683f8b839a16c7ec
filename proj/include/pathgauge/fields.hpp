#pragma once

#include <functional>
#include <string>
#include <vector>

#include "pathgauge/types.hpp"

namespace pathgauge {

// Implicit surface d(x) = 0 across which the field tensor may jump.
struct ImplicitSurface {
    std::string label;
    std::function<double(const FourVector&)> level;
};

struct SingularLocus {
    std::string label;
    std::function<double(const FourVector&)> distance;
};

struct FieldConfig {
    std::string name;
    std::function<FieldTensor(const FourVector&)> tensor;  // covariant F_{mu nu}
    FourVector reference_point = FourVector::Zero();       // field-free anchor x0
    std::vector<ImplicitSurface> discontinuities;
    std::vector<SingularLocus> singular_loci;
    bool confined = false;        // compactly supported field region
    double singular_guard = 1e-9; // minimum allowed distance to a singular locus
};

// F_{0i} = E_i, F_{i0} = -E_i, F_{ij} = -eps_{ijk} B_k. Antisymmetric by construction.
FieldTensor tensor_from_EB(const Vector3& E, const Vector3& B);

Vector3 electric_part(const FieldTensor& F);
Vector3 magnetic_part(const FieldTensor& F);

// Guard-checked evaluation; throws singular_evaluation within the guard radius.
FieldTensor field_tensor(const FieldConfig& field, const FourVector& x);

// Step with theta(0) = 1/2, used on declared jump surfaces.
inline double unit_step(double v) { return v > 0.0 ? 1.0 : (v < 0.0 ? 0.0 : 0.5); }

FieldConfig uniform_electric(const Vector3& E0);
FieldConfig uniform_magnetic(const Vector3& B0);
FieldConfig uniform_field(const Vector3& E0, const Vector3& B0);

// B = g r_hat / r^2, singular at the spatial origin.
FieldConfig monopole(double g);

// B = B0 z_hat inside the cylinder rho <= r0, zero outside (confined).
FieldConfig magnetic_disk(double B0, double r0);

// E = E0 x_hat on 0 <= ct <= c*dt and 0 <= x <= dx, zero elsewhere (confined).
FieldConfig electric_block(double E0, double dt, double dx, double c = 1.0);

}  // namespace pathgauge
