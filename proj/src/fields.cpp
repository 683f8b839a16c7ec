#include "pathgauge/fields.hpp"

#include <cmath>

namespace pathgauge {

FieldTensor tensor_from_EB(const Vector3& E, const Vector3& B) {
    FieldTensor F = FieldTensor::Zero();
    // Covariant components: F_{0i} = E_i, F_{ij} = -eps_{ijk} B_k.
    for (int i = 0; i < 3; ++i) {
        F(0, i + 1) = E[i];
        F(i + 1, 0) = -E[i];
    }
    F(1, 2) = -B[2];
    F(2, 1) = B[2];
    F(2, 3) = -B[0];
    F(3, 2) = B[0];
    F(3, 1) = -B[1];
    F(1, 3) = B[1];
    return F;
}

Vector3 electric_part(const FieldTensor& F) { return {F(0, 1), F(0, 2), F(0, 3)}; }

Vector3 magnetic_part(const FieldTensor& F) { return {F(3, 2), F(1, 3), F(2, 1)}; }

FieldTensor field_tensor(const FieldConfig& field, const FourVector& x) {
    ensure_finite(x, "field evaluation point");
    for (const auto& locus : field.singular_loci) {
        double d = locus.distance(x);
        if (d < field.singular_guard)
            throw singular_evaluation("field '" + field.name + "' evaluated within guard of singular locus '" +
                                      locus.label + "'");
    }
    return field.tensor(x);
}

FieldConfig uniform_electric(const Vector3& E0) {
    FieldConfig f;
    f.name = "uniform_electric";
    FieldTensor F = tensor_from_EB(E0, Vector3::Zero());
    f.tensor = [F](const FourVector&) { return F; };
    return f;
}

FieldConfig uniform_magnetic(const Vector3& B0) {
    FieldConfig f;
    f.name = "uniform_magnetic";
    FieldTensor F = tensor_from_EB(Vector3::Zero(), B0);
    f.tensor = [F](const FourVector&) { return F; };
    return f;
}

FieldConfig uniform_field(const Vector3& E0, const Vector3& B0) {
    FieldConfig f;
    f.name = "uniform_field";
    FieldTensor F = tensor_from_EB(E0, B0);
    f.tensor = [F](const FourVector&) { return F; };
    return f;
}

FieldConfig monopole(double g) {
    FieldConfig f;
    f.name = "monopole";
    f.tensor = [g](const FourVector& x) {
        Vector3 r = spatial(x);
        double rn = r.norm();
        Vector3 B = g * r / (rn * rn * rn);
        return tensor_from_EB(Vector3::Zero(), B);
    };
    f.singular_loci.push_back({"origin", [](const FourVector& x) { return spatial(x).norm(); }});
    return f;
}

FieldConfig magnetic_disk(double B0, double r0) {
    FieldConfig f;
    f.name = "magnetic_disk";
    f.confined = true;
    f.tensor = [B0, r0](const FourVector& x) {
        double rho2 = x[1] * x[1] + x[2] * x[2];
        Vector3 B{0.0, 0.0, rho2 < r0 * r0 ? B0 : 0.0};
        return tensor_from_EB(Vector3::Zero(), B);
    };
    f.discontinuities.push_back(
        {"tube_wall", [r0](const FourVector& x) { return x[1] * x[1] + x[2] * x[2] - r0 * r0; }});
    return f;
}

FieldConfig electric_block(double E0, double dt, double dx, double c) {
    FieldConfig f;
    f.name = "electric_block";
    f.confined = true;
    f.tensor = [E0, dt, dx, c](const FourVector& x) {
        double w = unit_step(x[0]) * unit_step(c * dt - x[0]) * unit_step(x[1]) * unit_step(dx - x[1]);
        return tensor_from_EB(Vector3{E0 * w, 0.0, 0.0}, Vector3::Zero());
    };
    f.discontinuities.push_back({"t_on", [](const FourVector& x) { return x[0]; }});
    f.discontinuities.push_back({"t_off", [dt, c](const FourVector& x) { return c * dt - x[0]; }});
    f.discontinuities.push_back({"x_on", [](const FourVector& x) { return x[1]; }});
    f.discontinuities.push_back({"x_off", [dx](const FourVector& x) { return dx - x[1]; }});
    return f;
}

}  // namespace pathgauge
