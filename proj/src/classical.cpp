#include "pathgauge/classical.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <map>
#include <memory>
#include <mutex>

#include "pathgauge/quadrature.hpp"

namespace pathgauge {

FourVector lorentz_acceleration(const FieldConfig& field, const FourVector& y,
                                const FourVector& u, const Constants& k) {
    // a^mu = -(e/c) F^{mu nu} u_nu = -(e/c) eta (F_cov u).
    return FourVector(-(k.e / k.c) * lower(FourVector(field_tensor(field, y) * u)));
}

namespace {

using State8 = Eigen::Matrix<double, 8, 1>;

State8 pack(const FourVector& y, const FourVector& u) {
    State8 z;
    z.head<4>() = y;
    z.tail<4>() = u;
    return z;
}

State8 state_derivative(const FieldConfig& field, const Constants& k, const State8& z) {
    State8 dz;
    dz.head<4>() = z.tail<4>();
    dz.tail<4>() = lorentz_acceleration(field, FourVector(z.head<4>()), FourVector(z.tail<4>()), k);
    return dz;
}

}  // namespace

FourVector WorldLine::position(double s_query) const {
    if (y.size() < 2) throw validation_error("WorldLine: dense output needs two nodes");
    const double q = std::clamp(s_query, s.front(), s.back());
    auto it = std::upper_bound(s.begin(), s.end(), q);
    size_t i = static_cast<size_t>(std::distance(s.begin(), it));
    i = std::min(std::max<size_t>(i, 1), s.size() - 1) - 1;
    const double h = s[i + 1] - s[i];
    const double t = (q - s[i]) / h;
    const double t2 = t * t, t3 = t2 * t;
    return (2 * t3 - 3 * t2 + 1) * y[i] + (t3 - 2 * t2 + t) * h * u[i] +
           (-2 * t3 + 3 * t2) * y[i + 1] + (t3 - t2) * h * u[i + 1];
}

FourVector WorldLine::tangent(double s_query) const {
    if (y.size() < 2) throw validation_error("WorldLine: dense output needs two nodes");
    const double q = std::clamp(s_query, s.front(), s.back());
    auto it = std::upper_bound(s.begin(), s.end(), q);
    size_t i = static_cast<size_t>(std::distance(s.begin(), it));
    i = std::min(std::max<size_t>(i, 1), s.size() - 1) - 1;
    const double h = s[i + 1] - s[i];
    const double t = (q - s[i]) / h;
    const double t2 = t * t;
    return ((6 * t2 - 6 * t) * y[i] + (3 * t2 - 4 * t + 1) * h * u[i] +
            (-6 * t2 + 6 * t) * y[i + 1] + (3 * t2 - 2 * t) * h * u[i + 1]) /
           h;
}

double WorldLine::mass_shell_drift() const {
    if (u.empty()) return 0.0;
    const double base = minkowski_dot(u.front(), u.front());
    double drift = 0.0;
    for (const auto& ui : u) drift = std::max(drift, std::abs(minkowski_dot(ui, ui) - base));
    return drift;
}

WorldLine integrate_worldline(const FieldConfig& field, const FourVector& y0,
                              const FourVector& u0, double s_end, const Constants& k,
                              const WorldLineOptions& opt) {
    ensure_finite(y0, "integrate_worldline: initial position");
    ensure_finite(u0, "integrate_worldline: initial tangent");
    if (!(s_end > 0.0)) throw validation_error("integrate_worldline: s_end must be positive");
    if (!(opt.tol > 0.0)) throw validation_error("integrate_worldline: tolerance must be positive");

    // Dormand-Prince 5(4), first-same-as-last; the system is autonomous, so
    // only the stage weights matter.
    static constexpr double a21 = 1.0 / 5;
    static constexpr double a31 = 3.0 / 40, a32 = 9.0 / 40;
    static constexpr double a41 = 44.0 / 45, a42 = -56.0 / 15, a43 = 32.0 / 9;
    static constexpr double a51 = 19372.0 / 6561, a52 = -25360.0 / 2187, a53 = 64448.0 / 6561,
                            a54 = -212.0 / 729;
    static constexpr double a61 = 9017.0 / 3168, a62 = -355.0 / 33, a63 = 46732.0 / 5247,
                            a64 = 49.0 / 176, a65 = -5103.0 / 18656;
    static constexpr double b1 = 35.0 / 384, b3 = 500.0 / 1113, b4 = 125.0 / 192,
                            b5 = -2187.0 / 6784, b6 = 11.0 / 84;
    static constexpr double e1 = b1 - 5179.0 / 57600, e3 = b3 - 7571.0 / 16695,
                            e4 = b4 - 393.0 / 640, e5 = b5 + 92097.0 / 339200,
                            e6 = b6 - 187.0 / 2100, e7 = -1.0 / 40;

    WorldLine line;
    State8 z = pack(y0, u0);
    State8 k1 = state_derivative(field, k, z);
    double s = 0.0;
    line.s.push_back(s);
    line.y.push_back(y0);
    line.u.push_back(u0);
    line.a.push_back(FourVector(k1.tail<4>()));

    double h = s_end / 100.0;
    if (opt.max_step > 0.0) h = std::min(h, opt.max_step);
    size_t attempts = 0;
    while (s < s_end) {
        if (++attempts > opt.max_steps) {
            throw solver_failure("integrate_worldline: step budget exhausted");
        }
        h = std::min(h, s_end - s);
        if (opt.max_step > 0.0) h = std::min(h, opt.max_step);
        if (!(h > s_end * 1e-15)) {
            throw solver_failure("integrate_worldline: step size underflow");
        }

        const State8 k2 = state_derivative(field, k, State8(z + h * (a21 * k1)));
        const State8 k3 = state_derivative(field, k, State8(z + h * (a31 * k1 + a32 * k2)));
        const State8 k4 = state_derivative(field, k, State8(z + h * (a41 * k1 + a42 * k2 + a43 * k3)));
        const State8 k5 = state_derivative(
            field, k, State8(z + h * (a51 * k1 + a52 * k2 + a53 * k3 + a54 * k4)));
        const State8 k6 = state_derivative(
            field, k, State8(z + h * (a61 * k1 + a62 * k2 + a63 * k3 + a64 * k4 + a65 * k5)));
        const State8 znew = z + h * (b1 * k1 + b3 * k3 + b4 * k4 + b5 * k5 + b6 * k6);
        const State8 k7 = state_derivative(field, k, znew);
        const State8 err8 = h * (e1 * k1 + e3 * k3 + e4 * k4 + e5 * k5 + e6 * k6 + e7 * k7);

        const double scale = opt.tol * (1.0 + z.lpNorm<Eigen::Infinity>());
        const double errn = err8.lpNorm<Eigen::Infinity>();
        if (errn <= scale) {
            s += h;
            z = znew;
            k1 = k7;
            line.s.push_back(s);
            line.y.push_back(FourVector(z.head<4>()));
            line.u.push_back(FourVector(z.tail<4>()));
            line.a.push_back(FourVector(k7.tail<4>()));
        }
        const double factor =
            errn > 0.0 ? std::clamp(0.9 * std::pow(scale / errn, 0.2), 0.2, 5.0) : 5.0;
        h *= factor;
    }
    return line;
}

ShootingResult connect_endpoints(const FieldConfig& field, const FourVector& x0,
                                 const FourVector& x1, const Constants& k, double tol,
                                 const FourVector* u0_guess) {
    ensure_finite(x0, "connect_endpoints: x0");
    ensure_finite(x1, "connect_endpoints: x1");
    if (!(tol > 0.0)) throw validation_error("connect_endpoints: tolerance must be positive");

    WorldLineOptions ode;
    ode.tol = std::max(1e-14, 0.01 * tol);
    auto shoot = [&](const FourVector& u0) {
        return integrate_worldline(field, x0, u0, 1.0, k, ode);
    };

    const double goal = tol * (1.0 + x1.lpNorm<Eigen::Infinity>());
    FourVector u0 = u0_guess ? *u0_guess : FourVector(x1 - x0);
    WorldLine line = shoot(u0);
    FourVector r = line.y.back() - x1;

    ShootingResult out;
    out.newton_iterations = 0;
    for (int iter = 0; iter < 50 && r.lpNorm<Eigen::Infinity>() > goal; ++iter) {
        const double fd = 1e-6 * (1.0 + u0.lpNorm<Eigen::Infinity>());
        Eigen::Matrix4d J;
        for (int j = 0; j < 4; ++j) {
            FourVector up = u0;
            up[j] += fd;
            J.col(j) = (shoot(up).y.back() - x1 - r) / fd;
        }
        const FourVector dir = J.fullPivLu().solve(FourVector(-r));
        ensure_finite(dir, "connect_endpoints: Newton direction");

        bool improved = false;
        double lambda = 1.0;
        for (int half = 0; half < 7; ++half, lambda *= 0.5) {
            const FourVector trial = u0 + lambda * dir;
            WorldLine cand = shoot(trial);
            const FourVector rc = cand.y.back() - x1;
            if (rc.lpNorm<Eigen::Infinity>() < r.lpNorm<Eigen::Infinity>()) {
                u0 = trial;
                line = std::move(cand);
                r = rc;
                improved = true;
                break;
            }
        }
        ++out.newton_iterations;
        if (!improved) throw solver_failure("connect_endpoints: line search stalled");
    }
    out.endpoint_miss = r.lpNorm<Eigen::Infinity>();
    if (out.endpoint_miss > goal) {
        throw solver_failure("connect_endpoints: no convergence in 50 iterations");
    }
    out.line = std::move(line);
    out.u0 = u0;
    return out;
}

namespace {

struct BvpCache {
    const FieldConfig field;
    const FourVector x0;
    const Constants constants;
    const double tol;
    std::mutex lock;
    std::map<std::array<double, 4>, std::shared_ptr<const ShootingResult>> solved;

    BvpCache(const FieldConfig& f, const FourVector& origin, const Constants& k, double bvp_tol)
        : field(f), x0(origin), constants(k), tol(bvp_tol) {}

    std::shared_ptr<const ShootingResult> solve(const FourVector& x) {
        const std::array<double, 4> key{x[0], x[1], x[2], x[3]};
        std::scoped_lock guard(lock);
        auto it = solved.find(key);
        if (it != solved.end()) return it->second;
        auto result =
            std::make_shared<const ShootingResult>(connect_endpoints(field, x0, x, constants, tol));
        solved.emplace(key, result);
        return result;
    }
};

}  // namespace

PathFamily classical_path_family(const FieldConfig& field, const FourVector& x0,
                                 const Constants& k, double bvp_tol, double fd_step) {
    if (!(fd_step > 0.0)) throw validation_error("classical_path_family: fd_step must be positive");
    auto cache = std::make_shared<BvpCache>(field, x0, k, bvp_tol);

    Segment seg;
    seg.point = [cache](double u, const FourVector& x) -> FourVector {
        return cache->solve(x)->line.position(u);
    };
    seg.tangent = [cache](double u, const FourVector& x) -> FourVector {
        return cache->solve(x)->line.tangent(u);
    };
    // dy/dx by re-solving at perturbed endpoints; the cache amortizes the
    // eight arcs across quadrature nodes.
    seg.jacobian = [cache, fd_step](double u, const FourVector& x) -> Jacobian {
        Jacobian J;
        for (int m = 0; m < 4; ++m) {
            FourVector xp = x, xm = x;
            xp[m] += fd_step;
            xm[m] -= fd_step;
            J.col(m) = (cache->solve(xp)->line.position(u) - cache->solve(xm)->line.position(u)) /
                       (2.0 * fd_step);
        }
        return J;
    };

    PathFamily family;
    family.name = "classical";
    family.start = x0;
    family.segments.push_back(std::move(seg));
    return family;
}

PotentialSample classical_potential(const FieldConfig& field, const FourVector& x0,
                                    const FourVector& x, const Constants& k, double bvp_tol,
                                    double fd_step) {
    if (!(fd_step > 0.0)) throw validation_error("classical_potential: fd_step must be positive");
    const ShootingResult base = connect_endpoints(field, x0, x, k, bvp_tol);

    std::array<WorldLine, 4> plus, minus;
    for (int m = 0; m < 4; ++m) {
        FourVector xp = x, xm = x;
        xp[m] += fd_step;
        xm[m] -= fd_step;
        plus[m] = connect_endpoints(field, x0, xp, k, bvp_tol, &base.u0).line;
        minus[m] = connect_endpoints(field, x0, xm, k, bvp_tol, &base.u0).line;
    }

    auto integrand = [&](double s) -> FourVector {
        const FourVector y = base.line.position(s);
        const FourVector u = base.line.tangent(s);
        const FourVector acc_cov = lower(lorentz_acceleration(field, y, u, k));
        FourVector out;
        for (int m = 0; m < 4; ++m) {
            const FourVector col = (plus[m].position(s) - minus[m].position(s)) / (2.0 * fd_step);
            out[m] = acc_cov.dot(col);
        }
        return FourVector((k.c / k.e) * out);
    };
    auto r = adaptive_quadrature<FourVector>(integrand, 0.0, 1.0);

    PotentialSample sample;
    sample.x = x;
    sample.a = r.value;
    sample.err = r.err;
    sample.path = "classical";
    return sample;
}

ActionResult action_and_phase(const WorldLine& line, const PotentialField& a, double mass,
                              const Constants& k) {
    if (!a) throw validation_error("action_and_phase: missing potential");
    if (line.y.size() < 2) throw validation_error("action_and_phase: worldline needs two nodes");

    const double s0 = line.s.front(), s1 = line.s.back();
    auto proper_rate = [&](double s) {
        const FourVector u = line.tangent(s);
        const double uu = minkowski_dot(u, u);
        if (uu <= 0.0) throw validation_error("action_and_phase: worldline is not timelike");
        return std::sqrt(uu) / k.c;
    };
    auto interaction = [&](double s) { return a(line.position(s)).dot(line.tangent(s)); };

    ActionResult out;
    out.proper_time_action = -mass * k.c * k.c * adaptive_quadrature<double>(proper_rate, s0, s1).value;
    out.interaction_integral = adaptive_quadrature<double>(interaction, s0, s1).value;
    return out;
}

}  // namespace pathgauge
