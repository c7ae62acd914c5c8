#include "trigspline/convolution_engine.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

namespace trigspline {

FourierSeries convolve_coeffwise(const FourierSeries& A, const FourierSeries& B) {
    const auto ta = A.terms();
    const auto tb = B.terms();
    std::vector<SeriesTerm> out;
    out.reserve(std::min(ta.size(), tb.size()));
    std::size_t i = 0;
    std::size_t j = 0;
    while (i < ta.size() && j < tb.size()) {
        if (ta[i].frequency < tb[j].frequency) {
            ++i;
        } else if (tb[j].frequency < ta[i].frequency) {
            ++j;
        } else {
            const auto& x = ta[i];
            const auto& y = tb[j];
            out.push_back({x.frequency, kPi * (x.cos_coeff * y.cos_coeff - x.sin_coeff * y.sin_coeff),
                           kPi * (x.cos_coeff * y.sin_coeff + x.sin_coeff * y.cos_coeff)});
            ++i;
            ++j;
        }
    }
    return FourierSeries(kTwoPi * (A.constant() * B.constant()), std::move(out), std::min(A.m_max(), B.m_max()),
                         std::nullopt);
}

std::vector<double> convolve_quadrature(const FourierSeries& A, const FourierSeries& B, int panels,
                                        std::span<const double> ts) {
    if (panels < 4) {
        throw std::invalid_argument("convolve_quadrature: need at least 4 panels, got " + std::to_string(panels));
    }
    const double step = kTwoPi / panels;
    std::vector<double> vs(static_cast<std::size_t>(panels));
    for (int q = 0; q < panels; ++q) {
        vs[static_cast<std::size_t>(q)] = step * q;
    }
    const std::vector<double> a_values = eval_series_many(A, vs);

    std::vector<double> out;
    out.reserve(ts.size());
    std::vector<double> shifted(vs.size());
    for (const double t : ts) {
        for (std::size_t q = 0; q < vs.size(); ++q) {
            shifted[q] = t - vs[q];
        }
        const std::vector<double> b_values = eval_series_many(B, shifted);
        double sum = 0.0;
        for (std::size_t q = 0; q < vs.size(); ++q) {
            sum += a_values[q] * b_values[q];
        }
        out.push_back(step * sum);
    }
    return out;
}

int default_quadrature_panels(const FourierSeries& A, const FourierSeries& B) {
    const std::int64_t target = 8 * std::max<std::int64_t>(1, std::max(A.max_frequency(), B.max_frequency()));
    std::int64_t panels = 4;
    while (panels < target) {
        panels *= 2;
    }
    return static_cast<int>(panels);
}

AliasFamily conv_spline_family(Parity parity, bool starred) {
    // KR0 is alternating, KR1 plain; BR is single-step, BR* alternating.
    const bool alternating = (parity == Parity::even) != starred;
    return alternating ? AliasFamily::alt_double : AliasFamily::plain_double;
}

int conv_spline_order(Parity parity, int j) { return parity == Parity::even ? 2 * j : 2 * j - 1; }

FourierSeries build_conv_spline(Parity parity, int j, bool starred, const HarmonicCoeffs& coeffs,
                                const GridSpec& grid, const TruncationPolicy& trunc, Convergence mode) {
    if (j < 1) {
        throw std::invalid_argument("build_conv_spline: j must be >= 1, got " + std::to_string(j));
    }
    if (parity == Parity::odd && j == 1 && mode != Convergence::allow_conditional) {
        throw std::invalid_argument(
            "build_conv_spline: odd parity with j = 1 uses an order-0 B-spline; pass Convergence::allow_conditional");
    }
    const int order = conv_spline_order(parity, j);
    const int bspline_order = order - 1;

    KernelVariant kernel_variant;
    if (parity == Parity::even) {
        kernel_variant = starred ? KernelVariant::kr0_star : KernelVariant::kr0;
    } else {
        kernel_variant = starred ? KernelVariant::kr1_star : KernelVariant::kr1;
    }
    const FourierSeries kernel = build_kernel(kernel_variant, j, coeffs, grid, trunc);

    FourierSeries bspline;
    if (starred) {
        bspline = build_bspline(BSplineVariant::br_star, bspline_order, grid, trunc);
    } else {
        // BR steps by N, the kernel by 2N: twice the alias depth covers the
        // kernel's whole support, so the product keeps every kernel term.
        const TruncationPolicy wide(2 * trunc.m_max + 1, trunc.tail_tol);
        bspline = build_bspline(BSplineVariant::br, bspline_order, grid, wide);
    }

    FourierSeries product = convolve_coeffwise(kernel, bspline);

    const AliasFamily family = conv_spline_family(parity, starred);
    double weight_sum = 0.0;
    for (int k = 1; k <= grid.n; ++k) {
        const double D = node_collapse_multiplier(family, order, grid, k, Part::cos, trunc).value;
        weight_sum += (std::abs(coeffs.a[static_cast<std::size_t>(k - 1)]) +
                       std::abs(coeffs.b[static_cast<std::size_t>(k - 1)])) /
                      std::abs(D);
    }
    const auto bound = alias_tail_bound(order, family_step(family, grid), grid, trunc.m_max);
    product.set_tail_estimate(bound ? std::optional<double>(*bound * weight_sum) : std::nullopt);
    return FourierSeries(product.constant(), {product.terms().begin(), product.terms().end()}, trunc.m_max,
                         product.tail_estimate());
}

}  // namespace trigspline
