#include "trigspline/verification.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

#include "trigspline/convolution_engine.hpp"
#include "trigspline/reference_oracles.hpp"
#include "trigspline/spline_builder.hpp"

namespace trigspline {

void VerificationReport::add(std::string name, double deviation, double tolerance,
                             std::map<std::string, double> metadata) {
    CheckResult check;
    check.name = std::move(name);
    check.deviation = deviation;
    check.tolerance = tolerance;
    check.pass = deviation <= tolerance;  // NaN deviations fail
    check.metadata = std::move(metadata);
    checks_.push_back(std::move(check));
}

bool VerificationReport::all_pass() const {
    return std::all_of(checks_.begin(), checks_.end(), [](const CheckResult& c) { return c.pass; });
}

const CheckResult* VerificationReport::find(std::string_view name) const {
    auto it = std::find_if(checks_.begin(), checks_.end(), [&](const CheckResult& c) { return c.name == name; });
    return it == checks_.end() ? nullptr : &*it;
}

namespace {

struct SuiteName {
    Suite suite;
    std::string_view name;
};

constexpr SuiteName kSuiteNames[] = {
    {Suite::interpolation, "interpolation"}, {Suite::convolution, "convolution"}, {Suite::quadrature, "quadrature"},
    {Suite::sigma, "sigma"},                 {Suite::box, "box"},                 {Suite::bspline, "bspline"},
    {Suite::cubic, "cubic"},                 {Suite::structure, "structure"},     {Suite::all, "all"},
};

double max_node_deviation(const FourierSeries& series, const GridSpec& grid, const SampleSet& samples) {
    const auto values = eval_series_many(series, grid.nodes);
    double dev = 0.0;
    for (std::size_t i = 0; i < values.size(); ++i) {
        dev = std::max(dev, std::abs(values[i] - samples.values[i]));
    }
    return dev;
}

double sup_difference(std::span<const double> x, std::span<const double> y) {
    double dev = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        dev = std::max(dev, std::abs(x[i] - y[i]));
    }
    return dev;
}

std::vector<double> trig_poly_values(const HarmonicCoeffs& coeffs, std::span<const double> ts) {
    std::vector<double> out;
    out.reserve(ts.size());
    for (const double t : ts) {
        out.push_back(eval_trig_poly(coeffs, t));
    }
    return out;
}

// Rescales every term of alias class +-k (mod N), as if H_k were multiplied by factor.
FourierSeries scale_alias_class(const FourierSeries& series, const GridSpec& grid, int k, double factor) {
    std::vector<SeriesTerm> terms(series.terms().begin(), series.terms().end());
    for (auto& term : terms) {
        const auto residue = term.frequency % grid.N;
        if (residue == k || residue == grid.N - k) {
            term.cos_coeff /= factor;
            term.sin_coeff /= factor;
        }
    }
    return FourierSeries(series.constant(), std::move(terms), series.m_max(), series.tail_estimate());
}

double tail_or_nan(const FourierSeries& series) {
    return series.tail_estimate().value_or(std::numeric_limits<double>::quiet_NaN());
}

void check_interpolation(VerificationReport& report, const GridSpec& grid, const SampleSet& samples,
                         const HarmonicCoeffs& coeffs, const VerificationSettings& settings) {
    const TruncationPolicy trunc(settings.interpolation_m_max);
    for (int r : {2, 3, 4}) {
        FourierSeries spline = build_spline(coeffs, r, grid, trunc);
        if (settings.multiplier_perturbation != 0.0) {
            spline = scale_alias_class(spline, grid, 1, 1.0 + settings.multiplier_perturbation);
        }
        report.add("interpolation_r" + std::to_string(r), max_node_deviation(spline, grid, samples), 1e-6,
                   {{"r", r}, {"m_max", trunc.m_max}, {"tail_estimate", tail_or_nan(spline)}});
    }
}

void check_convolution(VerificationReport& report, const GridSpec& grid, const SampleSet& samples,
                       const HarmonicCoeffs& coeffs, const VerificationSettings& settings) {
    const TruncationPolicy trunc(settings.convolution_m_max);
    const auto ts = uniform_points(256);
    for (int j : {1, 2, 3}) {
        for (Parity parity : {Parity::even, Parity::odd}) {
            const std::string parity_name = parity == Parity::even ? "even" : "odd";
            std::vector<double> node_values[2];
            for (bool starred : {false, true}) {
                const FourierSeries spline =
                    build_conv_spline(parity, j, starred, coeffs, grid, trunc, Convergence::allow_conditional);
                node_values[starred ? 1 : 0] = eval_series_many(spline, grid.nodes);
                const int order = conv_spline_order(parity, j);
                std::map<std::string, double> meta{{"j", j},
                                                   {"order", order},
                                                   {"starred", starred ? 1.0 : 0.0},
                                                   {"m_max", trunc.m_max},
                                                   {"tail_estimate", tail_or_nan(spline)}};
                if (!starred) {
                    // Pointwise gap to the single-step spline of the same order.
                    const FourierSeries direct = build_spline(coeffs, order, grid, trunc);
                    meta["sup_diff_vs_direct_spline"] =
                        sup_difference(eval_series_many(spline, ts), eval_series_many(direct, ts));
                }
                report.add("conv_interpolation_" + parity_name + (starred ? "_star" : "") + "_j" + std::to_string(j),
                           max_node_deviation(spline, grid, samples), 1e-5, std::move(meta));
            }
            report.add("conv_star_vs_plain_nodes_" + parity_name + "_j" + std::to_string(j),
                       sup_difference(node_values[0], node_values[1]), 1e-5, {{"j", j}});
        }

        // Coefficient of KR0(2j) * BR(2j-1) at 2mN +- k against a_k (-1)^m sigma(2j)/Hc.
        const FourierSeries even = build_conv_spline(Parity::even, j, false, coeffs, grid, trunc);
        double worst = 0.0;
        for (int k = 1; k <= grid.n; ++k) {
            const double ak = coeffs.a[static_cast<std::size_t>(k - 1)];
            const double bk = coeffs.b[static_cast<std::size_t>(k - 1)];
            if (ak == 0.0 && bk == 0.0) {
                continue;
            }
            const double hc =
                node_collapse_multiplier(AliasFamily::alt_double, 2 * j, grid, k, Part::cos, trunc).value;
            for (int m = 0; m <= 8; ++m) {
                const double alternation = (m % 2 == 0) ? 1.0 : -1.0;
                for (int sign : {-1, 1}) {
                    if (m == 0 && sign < 0) {
                        continue;
                    }
                    const std::int64_t J = 2LL * m * grid.N + sign * k;
                    const double factor = alternation * sigma(2 * j, grid, J) / hc;
                    const double want_cos = ak * factor;
                    const double want_sin = (sign < 0 ? -1.0 : 1.0) * bk * factor;
                    const auto got = even.term_at(J).value_or(SeriesTerm{J, 0.0, 0.0});
                    const double scale = std::max({std::abs(want_cos), std::abs(want_sin),
                                                   std::numeric_limits<double>::min()});
                    worst = std::max({worst, std::abs(got.cos_coeff - want_cos) / scale,
                                      std::abs(got.sin_coeff - want_sin) / scale});
                }
            }
        }
        report.add("conv_factorization_even_j" + std::to_string(j), worst, 1e-14, {{"j", j}});
    }
}

void check_quadrature(VerificationReport& report, const GridSpec& grid, const HarmonicCoeffs& coeffs,
                      const VerificationSettings& settings) {
    const TruncationPolicy trunc(settings.quadrature_m_max);
    const auto ts = uniform_points(64);
    struct Pair {
        std::string name;
        FourierSeries a;
        FourierSeries b;
    };
    const Pair pairs[] = {
        {"spectral_vs_quadrature_spline2_br2", build_spline(coeffs, 2, grid, trunc),
         build_bspline(BSplineVariant::br, 2, grid, trunc)},
        {"spectral_vs_quadrature_brstar2_br3", build_bspline(BSplineVariant::br_star, 2, grid, trunc),
         build_bspline(BSplineVariant::br, 3, grid, trunc)},
    };
    for (const auto& pair : pairs) {
        const auto spectral = eval_series_many(convolve_coeffwise(pair.a, pair.b), ts);
        const auto quad = convolve_quadrature(pair.a, pair.b, settings.quadrature_panels, ts);
        report.add(pair.name, sup_difference(spectral, quad), 1e-8,
                   {{"panels", settings.quadrature_panels},
                    {"max_frequency", static_cast<double>(std::max(pair.a.max_frequency(), pair.b.max_frequency()))}});
    }
}

void check_sigma(VerificationReport& report) {
    double worst_derived = 0.0;
    double worst_printed = 0.0;
    int samples = 0;
    for (int N : {3, 9, 17}) {
        const GridSpec grid = make_grid(N);
        for (int m = 0; m <= 6; ++m) {
            for (int nn = 1; nn <= 6; ++nn) {
                for (int k = 1; k <= grid.n; ++k) {
                    const double lhs = sigma(m + nn, grid, k);
                    const double derived = sigma(m, grid, k) * sigma(nn - 1, grid, k);
                    const double printed = sigma(m, grid, k) * sigma(nn, grid, k);
                    worst_derived = std::max(worst_derived, std::abs(lhs - derived) / std::abs(lhs));
                    worst_printed = std::max(worst_printed, std::abs(lhs - printed) / std::abs(lhs));
                    ++samples;
                }
            }
        }
    }
    report.add("sigma_product_identity", worst_derived, 1e-14, {{"samples", samples}});
    // The printed form sigma(m+n) = sigma(m) sigma(n) must fail somewhere.
    const bool refuted = worst_printed > 1e-14;
    report.add("sigma_printed_form_refuted", refuted ? 0.0 : 1.0, 0.0,
               {{"max_relative_error_printed", worst_printed}, {"samples", samples}});
}

void check_box(VerificationReport& report, const GridSpec& grid, const VerificationSettings& settings) {
    const TruncationPolicy trunc(settings.box_m_max);
    const FourierSeries br0 = build_bspline(BSplineVariant::br, 0, grid, trunc);
    const double jump = kPi / grid.N;
    const double offset = 1.0 / kTwoPi - 1.0 / (2.0 * grid.N);
    std::vector<double> ts;
    for (const double t : uniform_points(256)) {
        const double centered = t >= kPi ? t - kTwoPi : t;
        if (std::abs(std::abs(centered) - jump) >= grid.h / 4.0) {
            ts.push_back(t);
        }
    }
    const auto values = eval_series_many(br0, ts);
    double dev = 0.0;
    for (std::size_t i = 0; i < ts.size(); ++i) {
        const double centered = ts[i] >= kPi ? ts[i] - kTwoPi : ts[i];
        const double box = (std::abs(centered) < jump ? 0.5 : 0.0) + offset;
        dev = std::max(dev, std::abs(values[i] - box));
    }
    report.add("br0_box_equivalence", dev, 2e-3,
               {{"m_max", trunc.m_max}, {"points", static_cast<double>(ts.size())}, {"N", grid.N}});
}

void check_bspline(VerificationReport& report, const GridSpec& grid, const VerificationSettings& settings) {
    const auto ts = uniform_points(256);
    for (int r : {1, 2, 3}) {
        const TruncationPolicy trunc(r == 1 ? settings.bspline_m_max : std::min(settings.bspline_m_max, 4096));
        const FourierSeries br = build_bspline(BSplineVariant::br, r, grid, trunc);
        const auto candidate = eval_series_many(br, ts);
        std::vector<double> reference;
        reference.reserve(ts.size());
        for (const double t : ts) {
            reference.push_back(periodized_bspline(r, grid, t));
        }
        const AffineFit fit = affine_fit(reference, candidate);
        const double want_scale = std::pow(kPi / grid.N, 1 + r);
        const double want_offset = (1.0 - want_scale) / kTwoPi;
        const std::string suffix = "_r" + std::to_string(r);
        const std::map<std::string, double> meta{{"r", r},
                                                 {"scale", fit.scale},
                                                 {"offset", fit.offset},
                                                 {"expected_scale", want_scale},
                                                 {"expected_offset", want_offset},
                                                 {"m_max", trunc.m_max}};
        report.add("bspline_affine_residual" + suffix, fit.residual, 1e-6, meta);
        report.add("bspline_affine_scale" + suffix, std::abs(fit.scale - want_scale), 1e-6, meta);
        report.add("bspline_affine_offset" + suffix, std::abs(fit.offset - want_offset), 1e-6, meta);
    }
}

void check_cubic(VerificationReport& report, const GridSpec& grid, const SampleSet& samples,
                 const HarmonicCoeffs& coeffs, const VerificationSettings& settings) {
    const TruncationPolicy trunc(settings.cubic_m_max);
    const auto ts = uniform_points(256);
    const PeriodicCubicSpline cubic(grid, samples);
    std::vector<double> reference;
    reference.reserve(ts.size());
    for (const double t : ts) {
        reference.push_back(cubic(t));
    }
    std::map<std::string, double> meta;
    double best = std::numeric_limits<double>::infinity();
    int best_r = 0;
    for (int r = 1; r <= 5; ++r) {
        const double dev = sup_difference(eval_series_many(build_spline(coeffs, r, grid, trunc), ts), reference);
        meta["sup_deviation_r" + std::to_string(r)] = dev;
        if (dev < best) {
            best = dev;
            best_r = r;
        }
    }
    meta["argmin_r"] = best_r;
    meta["m_max"] = trunc.m_max;
    report.add("odd_degree_cubic_coincidence", best, 1e-3, std::move(meta));
}

int count_support_violations(const FourierSeries& series, std::int64_t period, const GridSpec& grid) {
    int violations = 0;
    for (const auto& term : series.terms()) {
        const std::int64_t residue = term.frequency % period;
        if (period == grid.N) {
            violations += residue == 0 ? 1 : 0;
        } else {
            const bool ok = (residue >= 1 && residue <= grid.n) || (residue >= period - grid.n && residue < period);
            violations += ok ? 0 : 1;
        }
    }
    return violations;
}

void check_structure(VerificationReport& report, const GridSpec& grid, const HarmonicCoeffs& coeffs,
                     const VerificationSettings& settings) {
    const TruncationPolicy trunc(settings.structure_m_max);

    // Sum of the N translates BR(r, t - t_i), coefficient by coefficient.
    double shift_residual = 0.0;
    for (int r = 0; r <= 3; ++r) {
        const FourierSeries br = build_bspline(BSplineVariant::br, r, grid, trunc);
        shift_residual = std::max(shift_residual, std::abs(grid.N * br.constant() - grid.N / kTwoPi));
        for (const auto& term : br.terms()) {
            double cos_sum = 0.0;
            double sin_sum = 0.0;
            for (int i = 0; i < grid.N; ++i) {
                const double angle = kTwoPi * static_cast<double>((term.frequency % grid.N) * i % grid.N) / grid.N;
                cos_sum += std::cos(angle);
                sin_sum += std::sin(angle);
            }
            // Translating by t_i rotates (c, s) at frequency J by the angle J t_i.
            shift_residual = std::max({shift_residual, std::abs(term.cos_coeff * cos_sum - term.sin_coeff * sin_sum),
                                       std::abs(term.cos_coeff * sin_sum + term.sin_coeff * cos_sum)});
        }
    }
    report.add("bspline_shift_sum_cancellation", shift_residual, 1e-14, {{"m_max", trunc.m_max}});

    double evenness = 0.0;
    const auto probe = uniform_points(64);
    for (int r = 0; r <= 3; ++r) {
        const FourierSeries br = build_bspline(BSplineVariant::br, r, grid, trunc);
        for (const auto& term : br.terms()) {
            evenness = std::max(evenness, std::abs(term.sin_coeff));
        }
        for (const double t : probe) {
            evenness = std::max(evenness, std::abs(eval_series(br, t + 0.1) - eval_series(br, -(t + 0.1))));
        }
    }
    report.add("bspline_evenness", evenness, 1e-12, {{"m_max", trunc.m_max}});

    int single_violations = 0;
    for (int r = 1; r <= 4; ++r) {
        single_violations += count_support_violations(build_spline(coeffs, r, grid, trunc), grid.N, grid);
    }
    for (int r = 0; r <= 3; ++r) {
        single_violations +=
            count_support_violations(build_bspline(BSplineVariant::br, r, grid, trunc), grid.N, grid);
    }
    report.add("frequency_support_single_step", single_violations, 0.0);

    int double_violations = 0;
    const std::int64_t period = 2LL * grid.N;
    for (KernelVariant v : {KernelVariant::kr0, KernelVariant::kr1, KernelVariant::kr0_star, KernelVariant::kr1_star}) {
        double_violations += count_support_violations(build_kernel(v, 2, coeffs, grid, trunc), period, grid);
    }
    for (int r = 0; r <= 3; ++r) {
        double_violations +=
            count_support_violations(build_bspline(BSplineVariant::br_star, r, grid, trunc), period, grid);
    }
    report.add("frequency_support_double_step", double_violations, 0.0);

    {
        constexpr int kHighOrder = 60;
        const auto ts = uniform_points(256);
        const FourierSeries spline = build_spline(coeffs, kHighOrder, grid, TruncationPolicy(settings.interpolation_m_max));
        // Leading alias ratio (k/(N-k))^(1+r), weighted by the data.
        double predicted = 0.0;
        for (int k = 1; k <= grid.n; ++k) {
            const double ratio = std::pow(static_cast<double>(k) / (grid.N - k), 1 + kHighOrder);
            predicted += 2.0 * ratio *
                         std::hypot(coeffs.a[static_cast<std::size_t>(k - 1)], coeffs.b[static_cast<std::size_t>(k - 1)]);
        }
        report.add("high_order_limit_r60", sup_difference(eval_series_many(spline, ts), trig_poly_values(coeffs, ts)),
                   1e-6, {{"r", kHighOrder}, {"leading_alias_estimate", predicted}});
    }

    for (int r = 1; r <= 4; ++r) {
        const FourierSeries spline = build_spline(coeffs, r, grid, trunc);
        double fitted = 0.0;
        for (const auto& term : spline.terms()) {
            if (term.frequency <= grid.n) {
                fitted = std::max(fitted, std::hypot(term.cos_coeff, term.sin_coeff) *
                                              std::pow(static_cast<double>(term.frequency), 1 + r));
            }
        }
        double excess = 0.0;
        for (const auto& term : spline.terms()) {
            const double scaled =
                std::hypot(term.cos_coeff, term.sin_coeff) * std::pow(static_cast<double>(term.frequency), 1 + r);
            excess = std::max(excess, scaled / fitted - 1.0);
        }
        report.add("coefficient_decay_r" + std::to_string(r), excess, 1e-9, {{"r", r}, {"fitted_constant", fitted}});
    }

    int non_positive = 0;
    double smallest = std::numeric_limits<double>::infinity();
    for (int N = 3; N <= 33; N += 2) {
        const GridSpec g = make_grid(N);
        for (int r = 0; r <= 8; ++r) {
            for (int k = 1; k <= g.n; ++k) {
                const double H = interp_multiplier(r, g, k, trunc).value;
                smallest = std::min(smallest, H);
                non_positive += H > 0.0 ? 0 : 1;
            }
        }
    }
    report.add("interp_multiplier_positive", non_positive, 0.0, {{"smallest", smallest}});
}

}  // namespace

Suite parse_suite(std::string_view name) {
    for (const auto& entry : kSuiteNames) {
        if (entry.name == name) {
            return entry.suite;
        }
    }
    throw std::invalid_argument("unknown suite '" + std::string(name) + "'");
}

std::string_view suite_name(Suite suite) {
    for (const auto& entry : kSuiteNames) {
        if (entry.suite == suite) {
            return entry.name;
        }
    }
    return "unknown";
}

VerificationReport verify_identities(const GridSpec& grid, const SampleSet& samples, const HarmonicCoeffs& coeffs,
                                     Suite suite, const VerificationSettings& settings) {
    if (samples.values.size() != static_cast<std::size_t>(grid.N)) {
        throw std::invalid_argument("verify_identities: sample count does not match grid");
    }
    VerificationReport report;
    const auto wants = [suite](Suite s) { return suite == Suite::all || suite == s; };
    if (wants(Suite::interpolation)) check_interpolation(report, grid, samples, coeffs, settings);
    if (wants(Suite::convolution)) check_convolution(report, grid, samples, coeffs, settings);
    if (wants(Suite::quadrature)) check_quadrature(report, grid, coeffs, settings);
    if (wants(Suite::sigma)) check_sigma(report);
    if (wants(Suite::box)) check_box(report, grid, settings);
    if (wants(Suite::bspline)) check_bspline(report, grid, settings);
    if (wants(Suite::cubic)) check_cubic(report, grid, samples, coeffs, settings);
    if (wants(Suite::structure)) check_structure(report, grid, coeffs, settings);
    return report;
}

}  // namespace trigspline
