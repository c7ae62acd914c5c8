#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <random>

#include "oracles.hpp"
#include "trigspline/convolution_engine.hpp"

using namespace trigspline;

namespace {

const std::vector<double> kSampleValues{2, 1, 3, 2, 4, 1, 3, 1, 3};

double max_node_deviation(const FourierSeries& s, const GridSpec& g, const std::vector<double>& values) {
    double worst = 0.0;
    for (int i = 0; i < g.N; ++i) worst = std::max(worst, std::abs(oracle::eval(s, g.nodes[i]) - values[i]));
    return worst;
}

FourierSeries random_series(std::mt19937& rng, int terms, int max_gap) {
    std::uniform_real_distribution<double> coef(-1.0, 1.0);
    std::uniform_int_distribution<int> gap(1, max_gap);
    std::vector<SeriesTerm> out;
    std::int64_t J = 0;
    for (int i = 0; i < terms; ++i) {
        J += gap(rng);
        out.push_back({J, coef(rng), coef(rng)});
    }
    return FourierSeries(coef(rng), out);
}

}  // namespace

TEST_CASE("convolve_coeffwise: orthogonality integrals") {
    const FourierSeries cos3(0.0, {{3, 1.0, 0.0}});
    const FourierSeries sin3(0.0, {{3, 0.0, 1.0}});
    const auto cc = convolve_coeffwise(cos3, cos3);
    CHECK(cc.term_at(3)->cos_coeff == doctest::Approx(kPi).epsilon(1e-15));
    CHECK(cc.term_at(3)->sin_coeff == 0.0);
    const auto ss = convolve_coeffwise(sin3, sin3);
    CHECK(ss.term_at(3)->cos_coeff == doctest::Approx(-kPi).epsilon(1e-15));
    const auto constants = convolve_coeffwise(FourierSeries(2.0, {}), FourierSeries(-0.5, {}));
    CHECK(constants.constant() == doctest::Approx(-kTwoPi).epsilon(1e-15));
    const auto disjoint = convolve_coeffwise(FourierSeries(0.0, {{1, 1.0, 1.0}}), FourierSeries(0.0, {{2, 1.0, 1.0}}));
    CHECK(disjoint.terms().empty());
    CHECK(!disjoint.tail_bounded());
}

TEST_CASE("property: coefficientwise convolution commutes") {
    std::mt19937 rng(3);
    for (int trial = 0; trial < 30; ++trial) {
        const auto a = random_series(rng, 40, 3);
        const auto b = random_series(rng, 40, 3);
        const auto ab = convolve_coeffwise(a, b);
        const auto ba = convolve_coeffwise(b, a);
        CHECK(ab.constant() == ba.constant());
        REQUIRE(ab.terms().size() == ba.terms().size());
        for (std::size_t i = 0; i < ab.terms().size(); ++i) {
            CHECK(ab.terms()[i].frequency == ba.terms()[i].frequency);
            CHECK(ab.terms()[i].cos_coeff == ba.terms()[i].cos_coeff);
            CHECK(ab.terms()[i].sin_coeff == ba.terms()[i].sin_coeff);
        }
    }
}

TEST_CASE("property: quadrature agrees with the spectral product for trigonometric polynomials") {
    std::mt19937 rng(5);
    const auto ts = uniform_points(17);
    for (int trial = 0; trial < 10; ++trial) {
        const auto a = random_series(rng, 30, 4);
        const auto b = random_series(rng, 30, 4);
        const int panels = default_quadrature_panels(a, b);
        CHECK(panels > 2 * std::max(a.max_frequency(), b.max_frequency()));
        const auto quad = convolve_quadrature(a, b, panels, ts);
        const auto spectral = convolve_coeffwise(a, b);
        for (std::size_t i = 0; i < ts.size(); ++i) {
            const double want = oracle::eval(spectral, ts[i]);
            CHECK(std::abs(quad[i] - want) <= 1e-10 * std::max(1.0, std::abs(want)));
        }
    }
}

TEST_CASE("convolve_quadrature: spline operands at Q = 4096") {
    const GridSpec g = make_grid(9);
    const auto c = dft_coeffs(g, SampleSet{kSampleValues});
    const TruncationPolicy trunc(8);
    const auto a = build_spline(c, 2, g, trunc);
    const auto b = build_bspline(BSplineVariant::br, 2, g, trunc);
    const auto ts = uniform_points(64);
    const auto quad = convolve_quadrature(a, b, 4096, ts);
    const auto spectral = convolve_coeffwise(a, b);
    for (std::size_t i = 0; i < ts.size(); ++i) {
        CHECK(std::abs(quad[i] - eval_series(spectral, ts[i])) < 1e-8);
    }
}

TEST_CASE("convolve_quadrature: trivial operands and errors") {
    const std::vector<double> ts{0.0, 1.0, 4.0};
    for (double v : convolve_quadrature(FourierSeries(1.5, {}), FourierSeries(2.0, {}), 8, ts)) {
        CHECK(std::abs(v - kTwoPi * 3.0) < 1e-12);
    }
    const FourierSeries zero;
    const FourierSeries some(0.3, {{1, 1.0, 0.5}, {4, 0.2, 0.0}});
    for (double v : convolve_quadrature(zero, some, 64, ts)) CHECK(v == 0.0);
    CHECK_THROWS_AS((void)convolve_quadrature(some, some, 3, ts), std::invalid_argument);
}

TEST_CASE("default_quadrature_panels") {
    const FourierSeries a(0.0, {{100, 1.0, 0.0}});
    CHECK(default_quadrature_panels(a, FourierSeries()) == 1024);
    CHECK(default_quadrature_panels(FourierSeries(), FourierSeries()) == 8);
}

TEST_CASE("conv spline family and order bookkeeping") {
    CHECK(conv_spline_family(Parity::even, false) == AliasFamily::alt_double);
    CHECK(conv_spline_family(Parity::odd, false) == AliasFamily::plain_double);
    CHECK(conv_spline_family(Parity::even, true) == AliasFamily::plain_double);
    CHECK(conv_spline_family(Parity::odd, true) == AliasFamily::alt_double);
    CHECK(conv_spline_order(Parity::even, 3) == 6);
    CHECK(conv_spline_order(Parity::odd, 3) == 5);
}

TEST_CASE("build_conv_spline: constant samples") {
    const GridSpec g = make_grid(9);
    HarmonicCoeffs c{4.0, std::vector<double>(4, 0.0), std::vector<double>(4, 0.0)};
    for (bool starred : {false, true}) {
        for (Parity p : {Parity::even, Parity::odd}) {
            const auto s = build_conv_spline(p, 2, starred, c, g, TruncationPolicy(64));
            CHECK(s.constant() == doctest::Approx(2.0).epsilon(1e-15));
            CHECK(s.terms().empty());
        }
    }
}

TEST_CASE("build_conv_spline: default data, even parity, j = 2") {
    const GridSpec g = make_grid(9);
    const auto c = dft_coeffs(g, SampleSet{kSampleValues});
    const auto s = build_conv_spline(Parity::even, 2, false, c, g, TruncationPolicy(4096));
    CHECK(max_node_deviation(s, g, kSampleValues) < 1e-5);
    REQUIRE(s.tail_bounded());
    CHECK(*s.tail_estimate() < 1e-12);
}

TEST_CASE("property: every convolution spline interpolates") {
    std::mt19937 rng(17);
    std::uniform_real_distribution<double> value(-3.0, 3.0);
    for (int N : {3, 9, 13}) {
        const GridSpec g = make_grid(N);
        std::vector<double> values;
        for (int i = 0; i < N; ++i) values.push_back(value(rng));
        const auto c = dft_coeffs(g, SampleSet{values});
        for (int j = 1; j <= 3; ++j) {
            for (bool starred : {false, true}) {
                for (Parity p : {Parity::even, Parity::odd}) {
                    const auto s = build_conv_spline(p, j, starred, c, g, TruncationPolicy(300),
                                                     Convergence::allow_conditional);
                    CHECK(max_node_deviation(s, g, values) < 1e-10);
                    const auto period = 2 * N;
                    for (const auto& term : s.terms()) {
                        const auto residue = term.frequency % period;
                        CHECK(((residue >= 1 && residue <= g.n) || residue >= period - g.n));
                    }
                }
            }
        }
    }
}

TEST_CASE("build_conv_spline: starred and unstarred agree at the nodes") {
    const GridSpec g = make_grid(9);
    const auto c = dft_coeffs(g, SampleSet{kSampleValues});
    for (int j = 1; j <= 3; ++j) {
        const auto plain = build_conv_spline(Parity::even, j, false, c, g, TruncationPolicy(1024));
        const auto star = build_conv_spline(Parity::even, j, true, c, g, TruncationPolicy(1024));
        for (double t : g.nodes) CHECK(std::abs(eval_series(plain, t) - eval_series(star, t)) < 1e-10);
    }
}

TEST_CASE("build_conv_spline: coefficients factor as a_k (-1)^m sigma(2j) / Hc") {
    const GridSpec g = make_grid(9);
    const auto c = dft_coeffs(g, SampleSet{kSampleValues});
    const TruncationPolicy trunc(100);
    const int j = 2;
    const auto s = build_conv_spline(Parity::even, j, false, c, g, trunc);
    for (int k = 1; k <= 4; ++k) {
        const double hc = oracle::alias_sum(2 * j, 9, k, 18, true, 100);
        for (int m = 0; m <= 100; ++m) {
            for (int sign : {-1, 1}) {
                const std::int64_t J = 18LL * m + sign * k;
                if (J <= 0) continue;
                const double f = (m % 2 ? -1.0 : 1.0) * static_cast<double>(oracle::sigma(2 * j, 9, J)) / hc;
                const auto term = s.term_at(J);
                REQUIRE(term.has_value());
                CHECK(std::abs(term->cos_coeff - c.a[k - 1] * f) <= 1e-13 * std::abs(c.a[k - 1] * f));
                CHECK(std::abs(term->sin_coeff - sign * c.b[k - 1] * f) <= 1e-13 * std::abs(c.b[k - 1] * f));
            }
        }
    }
}

TEST_CASE("BR* divided by its own alternating multiplier would not interpolate") {
    // Documents the normalizer choice of star_bspline_normalizer: the
    // alternations of KR0* and an alternating-normalized BR*(1) cancel, so the
    // node sums no longer match the divisor.
    const GridSpec g = make_grid(9);
    const auto c = dft_coeffs(g, SampleSet{kSampleValues});
    const TruncationPolicy trunc(512);
    std::vector<SeriesTerm> terms;
    for (int k = 1; k <= 4; ++k) {
        const double own = node_collapse_multiplier(AliasFamily::alt_double, 1, g, k, Part::cos, trunc).value;
        for (const auto& t : alias_series(AliasFamily::alt_double, Part::cos, 1, g, k, trunc).terms()) {
            terms.push_back({t.frequency, t.cos_coeff / (kPi * own), 0.0});
        }
    }
    const FourierSeries literal(0.5 / kPi, terms);
    const auto kernel = build_kernel(KernelVariant::kr0_star, 1, c, g, trunc);
    CHECK(max_node_deviation(convolve_coeffwise(kernel, literal), g, kSampleValues) > 0.1);
    CHECK(max_node_deviation(build_conv_spline(Parity::even, 1, true, c, g, trunc), g, kSampleValues) < 1e-10);
}

TEST_CASE("build_conv_spline: argument validation") {
    const GridSpec g = make_grid(9);
    const auto c = dft_coeffs(g, SampleSet{kSampleValues});
    CHECK_THROWS_AS((void)build_conv_spline(Parity::even, 0, false, c, g, TruncationPolicy(8)), std::invalid_argument);
    CHECK_THROWS_AS((void)build_conv_spline(Parity::odd, 1, false, c, g, TruncationPolicy(8)), std::invalid_argument);
    CHECK_NOTHROW((void)build_conv_spline(Parity::odd, 1, true, c, g, TruncationPolicy(8), Convergence::allow_conditional));
    CHECK_NOTHROW((void)build_conv_spline(Parity::odd, 2, false, c, g, TruncationPolicy(8)));
}
