#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <functional>
#include <random>

#include "oracles.hpp"
#include "trigspline/reference_oracles.hpp"
#include "trigspline/spline_builder.hpp"

using namespace trigspline;

namespace {

// Composite Simpson over [0, 2pi) with panel edges on every half-knot.
double simpson_period(const std::function<double(double)>& f, int N, int sub) {
    const int panels = 2 * N * sub;
    const double h = kTwoPi / panels;
    double sum = 0.0;
    for (int i = 0; i < panels; ++i) {
        const double a = i * h;
        sum += h / 6.0 * (f(a) + 4.0 * f(a + 0.5 * h) + f(a + h));
    }
    return sum;
}

}  // namespace

TEST_CASE("cardinal_bspline: box and hat") {
    CHECK(cardinal_bspline(0, 0.0) == 1.0);
    CHECK(cardinal_bspline(0, 0.49) == 1.0);
    CHECK(cardinal_bspline(0, 0.51) == 0.0);
    CHECK(cardinal_bspline(0, -0.7) == 0.0);
    CHECK(cardinal_bspline(1, 0.0) == 1.0);
    CHECK(cardinal_bspline(1, 0.5) == 0.5);
    CHECK(cardinal_bspline(1, 1.2) == 0.0);
    CHECK(cardinal_bspline(3, 0.0) == doctest::Approx(2.0 / 3.0).epsilon(1e-15));
    CHECK_THROWS_AS((void)cardinal_bspline(13, 0.0), std::invalid_argument);
    CHECK_THROWS_AS((void)cardinal_bspline(-1, 0.0), std::invalid_argument);
}

TEST_CASE("property: cardinal_bspline matches the truncated-power formula") {
    std::mt19937 rng(23);
    std::uniform_real_distribution<double> xs(-7.0, 7.0);
    for (int degree = 0; degree <= 8; ++degree) {
        for (int trial = 0; trial < 200; ++trial) {
            const double x = xs(rng);
            CHECK(std::abs(cardinal_bspline(degree, x) - oracle::cardinal_bspline_truncated_powers(degree, x)) < 1e-11);
        }
    }
}

TEST_CASE("property: partition of unity and nonnegativity") {
    std::mt19937 rng(29);
    std::uniform_real_distribution<double> xs(-3.0, 3.0);
    for (int degree = 0; degree <= kMaxOracleDegree; ++degree) {
        for (int trial = 0; trial < 50; ++trial) {
            const double x = xs(rng);
            double sum = 0.0;
            for (int shift = -10; shift <= 10; ++shift) {
                const double v = cardinal_bspline(degree, x - shift);
                CHECK(v >= 0.0);
                sum += v;
            }
            CHECK(std::abs(sum - 1.0) < 1e-12);
        }
    }
}

TEST_CASE("periodized_bspline: mass, symmetry, height") {
    const GridSpec g = make_grid(9);
    // Midpoints of half-knot panels never sit on the box's jumps.
    double box_mass = 0.0;
    for (int i = 0; i < 18 * 50; ++i) box_mass += kTwoPi / 900 * periodized_bspline(0, g, (i + 0.5) * kTwoPi / 900);
    CHECK(std::abs(box_mass - 1.0) < 1e-12);
    for (int degree = 1; degree <= 5; ++degree) {
        const double mass = simpson_period([&](double t) { return periodized_bspline(degree, g, t); }, 9, 400);
        CHECK(std::abs(mass - 1.0) < 1e-10);
        for (double t : {0.1, 0.7, 1.3, 2.9}) {
            CHECK(std::abs(periodized_bspline(degree, g, t) - periodized_bspline(degree, g, -t)) < 1e-14);
        }
    }
    CHECK(periodized_bspline(0, g, 0.0) == doctest::Approx(9.0 / kTwoPi).epsilon(1e-15));
    CHECK(9.0 / kTwoPi == doctest::Approx(1.4323945).epsilon(1e-7));
    // Wide support on a coarse grid wraps several periods.
    const GridSpec g3 = make_grid(3);
    const double mass = simpson_period([&](double t) { return periodized_bspline(9, g3, t); }, 3, 400);
    CHECK(std::abs(mass - 1.0) < 1e-10);
}

TEST_CASE("periodized_bspline matches its Fourier series") {
    // (1/2pi) [1 + 2 sum_J (sin(J pi/N) / (J pi/N))^(d+1) cos Jt]
    const GridSpec g = make_grid(9);
    const int degree = 3;
    for (double t : {0.0, 0.3, 1.0, 2.5, 3.1}) {
        long double sum = 1.0L;
        for (int J = 1; J < 200000; ++J) {
            const long double x = oracle::kPiL * J / 9;
            sum += 2.0L * std::pow(std::sin(x) / x, degree + 1) * std::cos(J * static_cast<long double>(t));
        }
        CHECK(std::abs(periodized_bspline(degree, g, t) - static_cast<double>(sum / (2 * oracle::kPiL))) < 1e-9);
    }
}

TEST_CASE("solve_cyclic_tridiagonal agrees with a dense solve") {
    std::mt19937 rng(31);
    std::uniform_real_distribution<double> u(-1.0, 1.0);
    for (int n : {3, 4, 7, 20}) {
        std::vector<double> lo(n), di(n), up(n), rhs(n);
        std::vector<std::vector<double>> A(n, std::vector<double>(n, 0.0));
        for (int i = 0; i < n; ++i) {
            lo[i] = u(rng);
            up[i] = u(rng);
            di[i] = 3.0 + u(rng);
            rhs[i] = u(rng);
            A[i][(i + n - 1) % n] += lo[i];
            A[i][i] += di[i];
            A[i][(i + 1) % n] += up[i];
        }
        const auto x = solve_cyclic_tridiagonal(lo, di, up, rhs);
        const auto want = oracle::dense_solve(A, rhs);
        for (int i = 0; i < n; ++i) CHECK(std::abs(x[i] - want[i]) < 1e-12);
    }
    const std::vector<double> two(2, 1.0);
    CHECK_THROWS_AS((void)solve_cyclic_tridiagonal(two, two, two, two), std::invalid_argument);
}

TEST_CASE("PeriodicCubicSpline: interpolation and constants") {
    const GridSpec g = make_grid(9);
    const SampleSet s{{2, 1, 3, 2, 4, 1, 3, 1, 3}};
    const PeriodicCubicSpline spline(g, s);
    for (int i = 0; i < 9; ++i) CHECK(std::abs(spline(g.nodes[i]) - s.values[i]) < 1e-12);
    CHECK(std::abs(spline(kTwoPi) - s.values[0]) < 1e-12);

    const SampleSet flat{std::vector<double>(9, -1.25)};
    for (double t : uniform_points(40)) CHECK(std::abs(periodic_cubic_interp(g, flat, t) + 1.25) < 1e-12);

    CHECK_THROWS_AS(PeriodicCubicSpline(g, SampleSet{{1, 2}}), std::invalid_argument);
}

TEST_CASE("PeriodicCubicSpline: single harmonic at the first midpoint") {
    const GridSpec g = make_grid(9);
    SampleSet s;
    for (double t : g.nodes) s.values.push_back(std::cos(t));
    const double mid = periodic_cubic_interp(g, s, g.h / 2);
    // Frozen from a numpy dense solve.
    CHECK(std::abs(mid - 0.93903757846125302) < 1e-13);
    CHECK(std::abs(mid - oracle::cubic_spline_dense(s.values, g.h / 2)) < 1e-13);
}

TEST_CASE("property: cubic spline moments satisfy the C2 continuity equations") {
    std::mt19937 rng(37);
    std::uniform_real_distribution<double> value(-2.0, 2.0);
    for (int N : {3, 5, 9, 21}) {
        const GridSpec g = make_grid(N);
        SampleSet s;
        for (int i = 0; i < N; ++i) s.values.push_back(value(rng));
        const PeriodicCubicSpline spline(g, s);
        const auto M = spline.moments();
        const double h = g.h;
        for (int i = 0; i < N; ++i) {
            const int p = (i + N - 1) % N;
            const int q = (i + 1) % N;
            const double residual =
                M[p] + 4 * M[i] + M[q] - 6.0 / (h * h) * (s.values[q] - 2 * s.values[i] + s.values[p]);
            CHECK(std::abs(residual) < 1e-8);
            // First derivative from both sides of node i.
            const double left = (s.values[i] - s.values[p]) / h + h * (2 * M[i] + M[p]) / 6.0;
            const double right = (s.values[q] - s.values[i]) / h - h * (2 * M[i] + M[q]) / 6.0;
            CHECK(std::abs(left - right) < 1e-10);
        }
        for (double t : uniform_points(33)) {
            CHECK(std::abs(spline(t) - oracle::cubic_spline_dense(s.values, t)) < 1e-11);
        }
    }
}

TEST_CASE("affine_fit examples") {
    const std::vector<double> ref{0.0, 1.0, 2.5, -1.0, 4.0};
    const auto same = affine_fit(ref, ref);
    CHECK(same.scale == doctest::Approx(1.0).epsilon(1e-15));
    CHECK(std::abs(same.offset) < 1e-15);
    CHECK(same.residual < 1e-15);

    std::vector<double> cand;
    for (double x : ref) cand.push_back(2 * x + 3);
    const auto fit = affine_fit(ref, cand);
    CHECK(fit.scale == doctest::Approx(2.0).epsilon(1e-14));
    CHECK(fit.offset == doctest::Approx(3.0).epsilon(1e-14));
    CHECK(fit.residual < 1e-14);

    CHECK_THROWS_AS((void)affine_fit(std::vector<double>{1, 1, 1}, std::vector<double>{1, 2, 3}),
                    std::invalid_argument);
    CHECK_THROWS_AS((void)affine_fit(std::vector<double>{1, 2}, std::vector<double>{1}), std::invalid_argument);
    CHECK_THROWS_AS((void)affine_fit(std::vector<double>{1}, std::vector<double>{1}), std::invalid_argument);
}

TEST_CASE("BR(1) is an affine image of the periodized hat") {
    const GridSpec g = make_grid(9);
    const auto br = build_bspline(BSplineVariant::br, 1, g, TruncationPolicy(100000));
    const auto ts = uniform_points(256);
    std::vector<double> ref;
    for (double t : ts) ref.push_back(periodized_bspline(1, g, t));
    const auto fit = affine_fit(ref, eval_series_many(br, ts));
    const double scale = std::pow(kPi / 9, 2);
    CHECK(std::abs(fit.scale - scale) < 1e-6);
    CHECK(std::abs(fit.offset - (1 - scale) / kTwoPi) < 1e-6);
    CHECK(fit.residual < 1e-6);
}
