#pragma once

#include <algorithm>
#include <cmath>
#include <functional>
#include <type_traits>
#include <vector>

#include "pathgauge/types.hpp"

namespace pathgauge {

// Nodes and weights on [-1, 1]; computed once per order and cached.
const std::vector<double>& gauss_legendre_nodes(int order);
const std::vector<double>& gauss_legendre_weights(int order);

struct QuadratureOptions {
    int order = 32;          // per-panel Gauss-Legendre order
    double tol = 1e-10;      // per-segment absolute tolerance
    int max_depth = 20;      // bisection depth cap
    double fail_threshold = 1e-6;  // accumulated estimate above this throws
};

namespace detail {

// Eigen vectors are left uninitialized by their default constructor.
template <typename Value>
Value zero_value() {
    if constexpr (std::is_arithmetic_v<Value>) {
        return Value{};
    } else {
        return Value::Zero();
    }
}

template <typename Value>
double scalar_norm(const Value& v) {
    if constexpr (std::is_arithmetic_v<Value>) {
        return std::abs(v);
    } else {
        return v.template lpNorm<Eigen::Infinity>();
    }
}

template <typename Value, typename F>
Value panel(const F& f, double a, double b, int order) {
    const auto& xs = gauss_legendre_nodes(order);
    const auto& ws = gauss_legendre_weights(order);
    const double mid = 0.5 * (a + b), half = 0.5 * (b - a);
    Value acc = f(mid + half * xs[0]) * (ws[0] * half);
    for (size_t i = 1; i < xs.size(); ++i) acc += f(mid + half * xs[i]) * (ws[i] * half);
    return acc;
}

}  // namespace detail

template <typename Value>
struct QuadratureResult {
    Value value;
    double err = 0.0;   // accumulated embedded estimate
    int panels = 0;
};

// Adaptive bisection on [a, b]; error estimate per panel is the difference
// between order and order/2 rules. Depth cap is a normal termination: the
// estimate is kept and reported.
template <typename Value, typename F>
QuadratureResult<Value> adaptive_quadrature(const F& f, double a, double b,
                                            const QuadratureOptions& opt = {}) {
    struct Span {
        double a, b, tol;
        int depth;
    };
    QuadratureResult<Value> out{detail::zero_value<Value>(), 0.0, 0};
    bool first = true;
    std::vector<Span> stack{{a, b, opt.tol, 0}};
    const int half_order = std::max(2, opt.order / 2);
    while (!stack.empty()) {
        Span s = stack.back();
        stack.pop_back();
        Value fine = detail::panel<Value>(f, s.a, s.b, opt.order);
        Value coarse = detail::panel<Value>(f, s.a, s.b, half_order);
        double est = detail::scalar_norm<Value>(fine - coarse);
        if (est <= s.tol || s.depth >= opt.max_depth) {
            if (first) {
                out.value = fine;
                first = false;
            } else {
                out.value += fine;
            }
            out.err += est;
            ++out.panels;
        } else {
            double mid = 0.5 * (s.a + s.b);
            stack.push_back({mid, s.b, 0.5 * s.tol, s.depth + 1});
            stack.push_back({s.a, mid, 0.5 * s.tol, s.depth + 1});
        }
    }
    if (first) out.value = detail::zero_value<Value>();
    return out;
}

// Splits [0,1] at the sorted interior breakpoints, then integrates each piece.
template <typename Value, typename F>
QuadratureResult<Value> adaptive_quadrature_split(const F& f, std::vector<double> breaks,
                                                  const QuadratureOptions& opt = {}) {
    breaks.push_back(0.0);
    breaks.push_back(1.0);
    std::sort(breaks.begin(), breaks.end());
    breaks.erase(std::unique(breaks.begin(), breaks.end(),
                             [](double x, double y) { return std::abs(x - y) < 1e-14; }),
                 breaks.end());
    QuadratureResult<Value> out{detail::zero_value<Value>(), 0.0, 0};
    bool first = true;
    for (size_t i = 0; i + 1 < breaks.size(); ++i) {
        double lo = std::clamp(breaks[i], 0.0, 1.0);
        double hi = std::clamp(breaks[i + 1], 0.0, 1.0);
        if (hi - lo < 1e-14) continue;
        auto piece = adaptive_quadrature<Value>(f, lo, hi, opt);
        if (first) {
            out.value = piece.value;
            first = false;
        } else {
            out.value += piece.value;
        }
        out.err += piece.err;
        out.panels += piece.panels;
    }
    return out;
}

// Root bracketing on [0,1] for discontinuity location: scans a uniform grid
// for sign changes, then bisects each bracket to the requested tolerance.
std::vector<double> locate_roots(const std::function<double(double)>& phi, int scan = 128,
                                 double tol = 1e-12);

}  // namespace pathgauge
