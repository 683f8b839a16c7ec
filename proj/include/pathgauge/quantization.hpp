#pragma once

#include <vector>

#include "pathgauge/types.hpp"

namespace pathgauge {

struct QuantizationReport {
    double phase = 0.0;      // e Phi / (hbar c)
    long long n_nearest = 0; // nearest integer of phase / (2 pi)
    double residual = 0.0;   // |phase - 2 pi n|
    bool quantized = false;  // residual <= tolerance
    bool trivial = false;    // n == 0 (quantized only vacuously)
    double tolerance = 1e-6;
};

QuantizationReport check_phase(double flux, const Constants& k, double tol = 1e-6);

struct DiracReport {
    double value = 0.0;      // 2 e g / (hbar c)
    long long n_nearest = 0;
    double residual = 0.0;
    bool satisfied = false;
    double tolerance = 1e-6;
};

DiracReport dirac_condition(double e, double g, const Constants& k, double tol = 1e-6);

struct ChargeScanRow {
    double e = 0.0;
    QuantizationReport report;
};

// Sweeps the probe charge over [e_min, e_max] in the given number of steps.
std::vector<ChargeScanRow> scan_charges(double flux, const Constants& k, double e_min,
                                        double e_max, int count, double tol = 1e-6);

}  // namespace pathgauge
