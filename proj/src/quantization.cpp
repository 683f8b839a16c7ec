#include "pathgauge/quantization.hpp"

#include <cmath>
#include <numbers>

namespace pathgauge {

QuantizationReport check_phase(double flux, const Constants& k, double tol) {
    if (!(tol > 0.0)) throw validation_error("check_phase: tolerance must be positive");
    if (!std::isfinite(flux)) throw validation_error("check_phase: flux must be finite");
    constexpr double two_pi = 2.0 * std::numbers::pi;
    QuantizationReport rep;
    rep.tolerance = tol;
    rep.phase = k.e * flux / (k.hbar * k.c);
    rep.n_nearest = std::llround(rep.phase / two_pi);
    rep.residual = std::abs(rep.phase - two_pi * static_cast<double>(rep.n_nearest));
    rep.quantized = rep.residual <= tol;
    rep.trivial = rep.n_nearest == 0;
    return rep;
}

DiracReport dirac_condition(double e, double g, const Constants& k, double tol) {
    if (!(tol > 0.0)) throw validation_error("dirac_condition: tolerance must be positive");
    DiracReport rep;
    rep.tolerance = tol;
    rep.value = 2.0 * e * g / (k.hbar * k.c);
    rep.n_nearest = std::llround(rep.value);
    rep.residual = std::abs(rep.value - static_cast<double>(rep.n_nearest));
    rep.satisfied = rep.residual <= tol;
    return rep;
}

std::vector<ChargeScanRow> scan_charges(double flux, const Constants& k, double e_min,
                                        double e_max, int count, double tol) {
    if (count < 1) throw validation_error("scan_charges: need at least one sample");
    std::vector<ChargeScanRow> rows;
    rows.reserve(static_cast<size_t>(count));
    for (int i = 0; i < count; ++i) {
        const double t = count == 1 ? 0.0 : double(i) / double(count - 1);
        Constants probe = k;
        probe.e = e_min + t * (e_max - e_min);
        rows.push_back({probe.e, check_phase(flux, probe, tol)});
    }
    return rows;
}

}  // namespace pathgauge
