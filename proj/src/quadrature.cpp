#include "pathgauge/quadrature.hpp"

#include <cmath>
#include <map>
#include <mutex>

namespace pathgauge {

namespace {

struct GLRule {
    std::vector<double> nodes, weights;
};

// Nodes from Newton iteration on P_n; standard Golub-Welsch-free construction.
GLRule make_rule(int n) {
    GLRule rule;
    rule.nodes.resize(n);
    rule.weights.resize(n);
    for (int i = 0; i < (n + 1) / 2; ++i) {
        double x = std::cos(M_PI * (i + 0.75) / (n + 0.5));
        double dp = 0.0;
        for (int it = 0; it < 100; ++it) {
            double p0 = 1.0, p1 = x;
            for (int k = 2; k <= n; ++k) {
                double p2 = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
                p0 = p1;
                p1 = p2;
            }
            dp = n * (x * p1 - p0) / (x * x - 1.0);
            double dx = p1 / dp;
            x -= dx;
            if (std::abs(dx) < 1e-15) break;
        }
        double w = 2.0 / ((1.0 - x * x) * dp * dp);
        rule.nodes[i] = -x;
        rule.weights[i] = w;
        rule.nodes[n - 1 - i] = x;
        rule.weights[n - 1 - i] = w;
    }
    if (n % 2 == 1) rule.nodes[n / 2] = 0.0;
    return rule;
}

const GLRule& rule_for(int order) {
    static std::map<int, GLRule> cache;
    static std::mutex mtx;
    std::lock_guard<std::mutex> lock(mtx);
    auto it = cache.find(order);
    if (it == cache.end()) it = cache.emplace(order, make_rule(order)).first;
    return it->second;
}

}  // namespace

const std::vector<double>& gauss_legendre_nodes(int order) { return rule_for(order).nodes; }
const std::vector<double>& gauss_legendre_weights(int order) { return rule_for(order).weights; }

std::vector<double> locate_roots(const std::function<double(double)>& phi, int scan, double tol) {
    std::vector<double> roots;
    double prev_u = 0.0;
    double prev_v = phi(0.0);
    for (int i = 1; i <= scan; ++i) {
        double u = static_cast<double>(i) / scan;
        double v = phi(u);
        if (prev_v == 0.0) {
            roots.push_back(prev_u);
        } else if (v != 0.0 && std::signbit(v) != std::signbit(prev_v)) {
            double lo = prev_u, hi = u, flo = prev_v;
            while (hi - lo > tol) {
                double mid = 0.5 * (lo + hi);
                double fm = phi(mid);
                if (fm == 0.0) {
                    lo = hi = mid;
                    break;
                }
                if (std::signbit(fm) == std::signbit(flo)) {
                    lo = mid;
                    flo = fm;
                } else {
                    hi = mid;
                }
            }
            roots.push_back(0.5 * (lo + hi));
        }
        prev_u = u;
        prev_v = v;
    }
    if (prev_v == 0.0) roots.push_back(1.0);
    return roots;
}

}  // namespace pathgauge
