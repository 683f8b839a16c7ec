#pragma once

#include <Eigen/Dense>
#include <stdexcept>
#include <string>

namespace pathgauge {

// Contravariant event/vector components (x^0, x^1, x^2, x^3) = (ct, x, y, z).
using FourVector = Eigen::Vector4d;
// Covariant field tensor F_{mu nu}; F_{0i} = E_i, F_{ij} = -eps_{ijk} B_k.
using FieldTensor = Eigen::Matrix4d;
// Path-family Jacobian J^{lambda}_{mu} = d y^lambda / d x^mu (row lambda, col mu).
using Jacobian = Eigen::Matrix4d;
using Vector3 = Eigen::Vector3d;

struct Constants {
    double hbar = 1.0;
    double c = 1.0;
    double e = 1.0;  // probe charge entering phases

    static Constants natural() { return {1.0, 1.0, 1.0}; }
    // CGS-Gaussian values: erg s, cm/s, statC.
    static Constants cgs() { return {1.054571817e-27, 2.99792458e10, 4.80320425e-10}; }
};

// Metric signature (+,-,-,-).
inline Eigen::Matrix4d minkowski_metric() {
    Eigen::Matrix4d g = Eigen::Matrix4d::Identity();
    g(1, 1) = g(2, 2) = g(3, 3) = -1.0;
    return g;
}

inline FourVector lower(const FourVector& v) {
    return FourVector(v[0], -v[1], -v[2], -v[3]);
}

// Raising and lowering coincide for this metric.
inline FourVector raise(const FourVector& v) { return lower(v); }

inline double minkowski_dot(const FourVector& a, const FourVector& b) {
    return a[0] * b[0] - a[1] * b[1] - a[2] * b[2] - a[3] * b[3];
}

inline Vector3 spatial(const FourVector& v) { return v.tail<3>(); }

inline double spatial_norm(const FourVector& v) { return v.tail<3>().norm(); }

inline FourVector event(double ct, const Vector3& r) {
    return FourVector(ct, r[0], r[1], r[2]);
}

struct validation_error : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

struct singular_evaluation : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct quadrature_failure : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct solver_failure : std::runtime_error {
    using std::runtime_error::runtime_error;
};

inline void ensure_finite(const FourVector& v, const std::string& what) {
    if (!v.allFinite()) throw validation_error(what + ": non-finite components");
}

}  // namespace pathgauge
