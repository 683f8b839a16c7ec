#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <random>

#include "pathgauge/potential.hpp"

using namespace pathgauge;

namespace {

const Vector3 kE0(0.3, -0.2, 0.5);
const Vector3 kB0(0.4, 0.1, -0.6);

FourVector random_event(std::mt19937& rng, double half_width) {
    std::uniform_real_distribution<double> pick(-half_width, half_width);
    return FourVector(pick(rng), pick(rng), pick(rng), pick(rng));
}

FourVector random_upper(std::mt19937& rng) {
    while (true) {
        FourVector x = random_event(rng, 2.0);
        if (std::hypot(x[1], x[2]) > 0.3 && x[3] > 0.2) return x;
    }
}

// F_{mu nu} = d_mu A_nu - d_nu A_mu recovered by central differences
FieldTensor recover_tensor(const std::function<FourVector(const FourVector&)>& a,
                           const FourVector& x, double h) {
    Eigen::Matrix4d grad;  // grad(mu, nu) = d A_nu / d x^mu
    for (int mu = 0; mu < 4; ++mu) {
        FourVector xp = x, xm = x;
        xp[mu] += h;
        xm[mu] -= h;
        grad.row(mu) = ((a(xp) - a(xm)) / (2.0 * h)).transpose();
    }
    return grad - grad.transpose();
}

}  // namespace

TEST_CASE("velocity path reproduces the vanishing-scalar potential of a uniform E field") {
    const FieldConfig field = uniform_electric(kE0);
    const PathFamily path = builtin_path("velocity");
    const PotentialField ref = reference::velocity_gauge(kE0);
    std::mt19937 rng(101);
    for (int trial = 0; trial < 25; ++trial) {
        const FourVector x = random_event(rng, 8.0);
        const PotentialSample s = potential_at(field, path, x);
        CHECK((s.a - ref(x)).lpNorm<Eigen::Infinity>() <= 1e-8);
        CHECK(s.err <= 1e-8);
        CHECK(s.path == path.name);
    }
    // covariant spatial components carry ct E_i
    const FourVector probe(2.0, 1.0, -1.0, 0.5);
    const FourVector want(0.0, 2.0 * kE0[0], 2.0 * kE0[1], 2.0 * kE0[2]);
    CHECK((ref(probe) - want).lpNorm<Eigen::Infinity>() == 0.0);
}

TEST_CASE("length path reproduces the static scalar potential of a uniform E field") {
    const FieldConfig field = uniform_electric(kE0);
    const PathFamily path = builtin_path("length");
    const PotentialField ref = reference::length_gauge(kE0);
    std::mt19937 rng(102);
    for (int trial = 0; trial < 25; ++trial) {
        const FourVector x = random_event(rng, 8.0);
        const PotentialSample s = potential_at(field, path, x);
        CHECK((s.a - ref(x)).lpNorm<Eigen::Infinity>() <= 1e-8);
    }
    const FourVector probe(2.0, 1.0, -1.0, 0.5);
    CHECK(ref(probe)[0] == doctest::Approx(-(1.0 * 0.3 + 1.0 * 0.2 + 0.25)).epsilon(1e-14));
    CHECK(ref(probe).tail<3>().norm() == 0.0);
}

TEST_CASE("straight line path gives the radial-midpoint potential of any uniform field") {
    const FieldConfig field = uniform_field(kE0, kB0);
    const PathFamily path = builtin_path("straight_line");
    const PotentialField ref = reference::fock_schwinger(tensor_from_EB(kE0, kB0));
    std::mt19937 rng(103);
    for (int trial = 0; trial < 25; ++trial) {
        const FourVector x = random_event(rng, 8.0);
        const PotentialSample s = potential_at(field, path, x);
        CHECK((s.a - ref(x)).lpNorm<Eigen::Infinity>() <= 1e-8);
        // transversality: x_mu A^mu(x) = 0, i.e. plain dot of x with covariant A
        CHECK(std::abs(x.dot(s.a)) <= 1e-8);
    }
}

TEST_CASE("antisymmetrized integrand matches the plain one within quadrature error") {
    std::mt19937 rng(104);
    PotentialOptions plain, anti;
    anti.antisymmetrized = true;

    const FieldConfig eb = uniform_field(kE0, kB0);
    const PathFamily line = builtin_path("straight_line");
    const FieldConfig mono = monopole(0.8);
    const PathFamily north = builtin_path("monopole_north");

    for (int trial = 0; trial < 8; ++trial) {
        const FourVector x = random_event(rng, 3.0);
        const PotentialSample p = potential_at(eb, line, x, plain);
        const PotentialSample q = potential_at(eb, line, x, anti);
        CHECK((p.a - q.a).lpNorm<Eigen::Infinity>() <= 2.0 * (p.err + q.err) + 1e-12);
    }
    const FourVector y = random_upper(rng);
    const PotentialSample p = potential_at(mono, north, y, plain);
    const PotentialSample q = potential_at(mono, north, y, anti);
    CHECK((p.a - q.a).lpNorm<Eigen::Infinity>() <= 2.0 * (p.err + q.err) + 1e-10);
}

TEST_CASE("field tensor is recovered from the quadrature potential by differentiation") {
    const FieldConfig eb = uniform_field(kE0, kB0);
    const PathFamily line = builtin_path("straight_line");
    const auto a_line = [&](const FourVector& y) { return potential_at(eb, line, y).a; };
    const FourVector x1(0.7, -0.4, 1.2, 0.9);
    CHECK((recover_tensor(a_line, x1, 1e-5) - tensor_from_EB(kE0, kB0)).lpNorm<Eigen::Infinity>()
          <= 1e-4);

    const double g = 1.0;
    const FieldConfig mono = monopole(g);
    const PathFamily north = builtin_path("monopole_north");
    const auto a_mono = [&](const FourVector& y) { return potential_at(mono, north, y).a; };
    const FourVector x2(0.0, 1.1, 0.4, 0.8);
    const FieldTensor want = field_tensor(mono, x2);
    CHECK((recover_tensor(a_mono, x2, 1e-5) - want).lpNorm<Eigen::Infinity>() <= 1e-4);
}

TEST_CASE("monopole chains land on the two classic string potentials in the upper half space") {
    const double g = 1.0;
    const FieldConfig field = monopole(g);
    const PathFamily north = builtin_path("monopole_north");
    const PathFamily south = builtin_path("monopole_south");
    const PotentialField ref_n = reference::monopole_north(g);
    const PotentialField ref_s = reference::monopole_south(g);
    std::mt19937 rng(105);
    for (int trial = 0; trial < 10; ++trial) {
        const FourVector x = random_upper(rng);
        const PotentialSample an = potential_at(field, north, x);
        const PotentialSample as = potential_at(field, south, x);
        CHECK((an.a - ref_n(x)).lpNorm<Eigen::Infinity>() <= 1e-6);
        CHECK((as.a - ref_s(x)).lpNorm<Eigen::Infinity>() <= 1e-6);
        // the two differ by the gradient of g * 2 phi, never by a rescaling
        CHECK((an.a - as.a).lpNorm<Eigen::Infinity>() > 1e-3);
    }
}

TEST_CASE("reparametrized legs leave the potential unchanged") {
    const FieldConfig field = uniform_field(kE0, kB0);
    PathFamily path = builtin_path("straight_line");
    PathFamily warped = path;
    warped.segments[0] = warped_segment(path.segments[0], [](double u) { return u * u; },
                                        [](double u) { return 2.0 * u; });
    std::mt19937 rng(106);
    for (int trial = 0; trial < 10; ++trial) {
        const FourVector x = random_event(rng, 4.0);
        const FourVector a = potential_at(field, path, x).a;
        const FourVector b = potential_at(field, warped, x).a;
        CHECK((a - b).lpNorm<Eigen::Infinity>() <= 1e-8 * (1.0 + a.lpNorm<Eigen::Infinity>()));
    }
}

TEST_CASE("gauge_compare summarizes agreement and catches mismatches") {
    const FieldConfig field = uniform_electric(kE0);
    const PathFamily velocity = builtin_path("velocity");
    std::vector<FourVector> grid;
    std::mt19937 rng(107);
    for (int i = 0; i < 12; ++i) grid.push_back(random_event(rng, 5.0));

    const GaugeCompareReport good = gauge_compare(field, velocity, reference::velocity_gauge(kE0), grid);
    REQUIRE(good.rows.size() == grid.size());
    CHECK(good.max_diff <= 1e-8);
    CHECK(good.mean_diff <= good.max_diff);
    CHECK(good.max_err <= 1e-8);
    for (const auto& row : good.rows) CHECK(row.diff <= good.max_diff);

    const GaugeCompareReport bad = gauge_compare(field, velocity, reference::length_gauge(kE0), grid);
    CHECK(bad.max_diff > 1e-2);

    CHECK_THROWS_AS(gauge_compare(field, velocity, reference::velocity_gauge(kE0), {}), validation_error);
    CHECK_THROWS_AS(gauge_compare(field, velocity, PotentialField(), grid), validation_error);
}

TEST_CASE("path_transform closes the dictionary between two families") {
    const FieldConfig field = uniform_electric(kE0);
    const PathFamily velocity = builtin_path("velocity");
    const PathFamily length = builtin_path("length");
    const PathFamily line = builtin_path("straight_line");
    const FourVector x(1.5, 0.7, -0.3, 0.4);
    const double xdotE = 0.7 * kE0[0] - 0.3 * kE0[1] + 0.4 * kE0[2];

    const PathTransformReport same = path_transform(field, velocity, velocity, x);
    CHECK(std::abs(same.flux) <= 1e-10);
    CHECK(same.lhs.lpNorm<Eigen::Infinity>() <= 1e-10);
    CHECK(same.max_abs_diff <= 1e-8);

    const PathTransformReport vl = path_transform(field, velocity, length, x);
    CHECK(vl.flux == doctest::Approx(-x[0] * xdotE).epsilon(1e-8));
    CHECK(vl.max_abs_diff <= 1e-6);
    CHECK((vl.lhs - (vl.potential_b - vl.potential_a)).norm() == 0.0);

    const PathTransformReport sl = path_transform(field, line, length, x);
    CHECK(sl.flux == doctest::Approx(-0.5 * x[0] * xdotE).epsilon(1e-8));
    CHECK(sl.max_abs_diff <= 1e-6);

    CHECK_THROWS_AS(path_transform(field, velocity, length, x, 0.0), validation_error);
}

TEST_CASE("open integral of a family's own potential along itself vanishes") {
    std::mt19937 rng(108);
    const FieldConfig fe = uniform_electric(kE0);
    const FieldConfig fb = uniform_magnetic(kB0);
    const FieldConfig mono = monopole(1.2);

    for (int trial = 0; trial < 12; ++trial) {
        const FourVector start = random_event(rng, 2.0);
        const std::vector<FourVector> interior{random_event(rng, 2.0), random_event(rng, 2.0)};
        const FourVector x = random_event(rng, 2.0);
        double err = 0.0;
        const double ve = self_open_integral(fe, start, interior, x, {}, &err);
        CHECK(std::abs(ve) <= 1e-8 + 10.0 * err);
        const double vb = self_open_integral(fb, start, interior, x);
        CHECK(std::abs(vb) <= 1e-8);
    }
    for (int trial = 0; trial < 4; ++trial) {
        // keep every waypoint well away from the source at the origin
        auto off_origin = [&rng]() {
            while (true) {
                FourVector p = random_event(rng, 2.0);
                if (spatial_norm(p) > 0.8) return p;
            }
        };
        double err = 0.0;
        const double v = self_open_integral(mono, off_origin(), {off_origin(), off_origin()},
                                            off_origin(), {}, &err);
        CHECK(std::abs(v) <= 1e-7 + 10.0 * err);
    }
}

TEST_CASE("line integrals and nonintegrable phases against closed forms") {
    const FieldConfig field = uniform_electric(kE0);
    const PathFamily velocity = builtin_path("velocity");
    const Constants k = Constants::natural();
    const FourVector x(1.5, 0.7, -0.3, 0.4);
    const double xdotE = 0.7 * kE0[0] - 0.3 * kE0[1] + 0.4 * kE0[2];

    // static scalar potential integrated along the velocity family
    double err = 0.0;
    const double val = potential_line_integral(reference::length_gauge(kE0), velocity, x, {}, &err);
    CHECK(val == doctest::Approx(-x[0] * xdotE).epsilon(1e-10));
    CHECK(err <= 1e-10);

    const std::complex<double> phase = nonintegrable_phase(reference::length_gauge(kE0), velocity, x, k);
    const std::complex<double> want = std::exp(std::complex<double>(0.0, k.e * x[0] * xdotE / (k.hbar * k.c)));
    CHECK(std::abs(phase - want) <= 1e-8);
    CHECK(std::abs(std::abs(phase) - 1.0) <= 1e-12);

    // a family integrated against its own potential gives the trivial phase
    const std::complex<double> own = nonintegrable_phase(field, velocity, x, k);
    CHECK(std::abs(own - std::complex<double>(1.0, 0.0)) <= 1e-8);
}

TEST_CASE("unreachable quadrature targets raise quadrature_failure") {
    const FieldConfig mono = monopole(1.0);
    const PathFamily north = builtin_path("monopole_north");
    PotentialOptions opt;
    opt.quad.fail_threshold = 0.0;
    CHECK_THROWS_AS(potential_at(mono, north, FourVector(0.0, 1.0, 0.5, 1.0), opt), quadrature_failure);
}

TEST_CASE("domain guards propagate through potential_at") {
    const FieldConfig mono = monopole(1.0);
    const PathFamily north = builtin_path("monopole_north");
    CHECK_THROWS_AS(potential_at(mono, north, FourVector(0.0, 0.0, 0.0, 1.0)), singular_evaluation);
}
