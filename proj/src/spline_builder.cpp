#include "trigspline/spline_builder.hpp"

#include <cmath>
#include <stdexcept>
#include <string>
#include <vector>

namespace trigspline {

namespace {

struct AliasEntry {
    std::int64_t frequency;
    double coeff;     // coefficient in the alias series
    double node_sign; // trig(J t_i) = node_sign * trig(k t_i) at every node
};

void require_harmonic(const GridSpec& grid, int k, const char* where) {
    if (k < 1 || k > grid.n) {
        throw std::invalid_argument(std::string(where) + ": harmonic k must be in [1, " + std::to_string(grid.n) +
                                    "], got " + std::to_string(k));
    }
}

void require_order(int r, const char* where) {
    if (r < 0) {
        throw std::invalid_argument(std::string(where) + ": order must be >= 0, got " + std::to_string(r));
    }
}

void require_coeffs(const HarmonicCoeffs& coeffs, const GridSpec& grid, const char* where) {
    if (coeffs.a.size() != static_cast<std::size_t>(grid.n) || coeffs.b.size() != static_cast<std::size_t>(grid.n)) {
        throw std::invalid_argument(std::string(where) + ": coefficient arrays must have length n = " +
                                    std::to_string(grid.n));
    }
}

template <class Fn>
void for_each_alias(AliasFamily family, Part part, int r, const GridSpec& grid, int k, int m_max, Fn&& fn) {
    const std::int64_t N = grid.N;
    const bool sine = part == Part::sin;
    // The "minus" alias (step*m - k) flips sign twice for the sine part:
    // once in the series and once at the nodes.
    const double minus_coeff_sign = sine ? -1.0 : 1.0;
    const double minus_node_sign = sine ? -1.0 : 1.0;

    fn(AliasEntry{k, sigma(r, grid, k), 1.0});
    for (std::int64_t m = 1; m <= m_max; ++m) {
        double alternation = 1.0;
        std::int64_t base = m * N;
        if (family != AliasFamily::plain_single) {
            base = 2 * m * N;
            if (family == AliasFamily::alt_double && (m % 2 == 1)) {
                alternation = -1.0;
            }
        }
        const std::int64_t minus = base - k;
        const std::int64_t plus = base + k;
        fn(AliasEntry{minus, alternation * minus_coeff_sign * sigma(r, grid, minus), minus_node_sign});
        fn(AliasEntry{plus, alternation * sigma(r, grid, plus), 1.0});
    }
}

// Neumaier-compensated sum.
class CompensatedSum {
public:
    void add(double x) {
        const double t = sum_ + x;
        if (std::abs(sum_) >= std::abs(x)) {
            comp_ += (sum_ - t) + x;
        } else {
            comp_ += (x - t) + sum_;
        }
        sum_ = t;
    }
    [[nodiscard]] double value() const { return sum_ + comp_; }

private:
    double sum_ = 0.0;
    double comp_ = 0.0;
};

void append_scaled(std::vector<SeriesTerm>& out, const FourierSeries& series, double scale) {
    if (scale == 0.0) {
        return;
    }
    for (const auto& term : series.terms()) {
        out.push_back({term.frequency, scale * term.cos_coeff, scale * term.sin_coeff});
    }
}

std::optional<double> scaled_tail(std::optional<double> bound, double weight_sum) {
    if (!bound) {
        return std::nullopt;
    }
    return *bound * weight_sum;
}

}  // namespace

int family_step(AliasFamily family, const GridSpec& grid) {
    return family == AliasFamily::plain_single ? grid.N : 2 * grid.N;
}

std::optional<double> alias_tail_bound(int r, int step, const GridSpec& grid, int m_max) {
    (void)grid;
    if (r <= 0) {
        return std::nullopt;
    }
    // sum_{m>M} (step*m - n)^-(1+r) <= integral_M^inf (step*x - n)^-(1+r) dx
    //                               <= (step*(M - 1/2))^-r / (r*step)
    const double base = static_cast<double>(step) * (static_cast<double>(m_max) - 0.5);
    return 2.0 / r * std::pow(base, -r) / step;
}

Multiplier node_collapse_multiplier(AliasFamily family, int r, const GridSpec& grid, int k, Part part,
                                    const TruncationPolicy& trunc) {
    require_harmonic(grid, k, "node_collapse_multiplier");
    require_order(r, "node_collapse_multiplier");
    CompensatedSum sum;
    for_each_alias(family, part, r, grid, k, trunc.m_max,
                   [&](const AliasEntry& e) { sum.add(e.coeff * e.node_sign); });
    return {sum.value(), alias_tail_bound(r, family_step(family, grid), grid, trunc.m_max)};
}

Multiplier interp_multiplier(int r, const GridSpec& grid, int k, const TruncationPolicy& trunc) {
    require_harmonic(grid, k, "interp_multiplier");
    return node_collapse_multiplier(AliasFamily::plain_single, r, grid, k, Part::cos, trunc);
}

FourierSeries alias_series(AliasFamily family, Part part, int r, const GridSpec& grid, int k,
                           const TruncationPolicy& trunc) {
    require_harmonic(grid, k, "alias_series");
    require_order(r, "alias_series");
    std::vector<SeriesTerm> terms;
    terms.reserve(2 * static_cast<std::size_t>(trunc.m_max) + 1);
    for_each_alias(family, part, r, grid, k, trunc.m_max, [&](const AliasEntry& e) {
        if (part == Part::cos) {
            terms.push_back({e.frequency, e.coeff, 0.0});
        } else {
            terms.push_back({e.frequency, 0.0, e.coeff});
        }
    });
    return FourierSeries(0.0, std::move(terms), trunc.m_max,
                         alias_tail_bound(r, family_step(family, grid), grid, trunc.m_max));
}

FourierSeries build_spline(const HarmonicCoeffs& coeffs, int r, const GridSpec& grid,
                           const TruncationPolicy& trunc, Convergence mode) {
    require_coeffs(coeffs, grid, "build_spline");
    require_order(r, "build_spline");
    if (r == 0 && mode != Convergence::allow_conditional) {
        throw std::invalid_argument(
            "build_spline: order 0 converges only conditionally; pass Convergence::allow_conditional");
    }
    std::vector<SeriesTerm> terms;
    double weight_sum = 0.0;
    for (int k = 1; k <= grid.n; ++k) {
        const double ak = coeffs.a[static_cast<std::size_t>(k - 1)];
        const double bk = coeffs.b[static_cast<std::size_t>(k - 1)];
        if (ak == 0.0 && bk == 0.0) {
            continue;
        }
        const double H = interp_multiplier(r, grid, k, trunc).value;
        append_scaled(terms, alias_series(AliasFamily::plain_single, Part::cos, r, grid, k, trunc), ak / H);
        append_scaled(terms, alias_series(AliasFamily::plain_single, Part::sin, r, grid, k, trunc), bk / H);
        weight_sum += (std::abs(ak) + std::abs(bk)) / std::abs(H);
    }
    return FourierSeries(0.5 * coeffs.a0, std::move(terms), trunc.m_max,
                         scaled_tail(alias_tail_bound(r, grid.N, grid, trunc.m_max), weight_sum));
}

Multiplier star_bspline_normalizer(int r, const GridSpec& grid, int k, const TruncationPolicy& trunc) {
    require_order(r, "star_bspline_normalizer");
    // Odd r pairs with KR0* (alternating): the alternations cancel in the
    // product, leaving a plain double-step series of order r+1. Even r pairs
    // with KR1* (plain): the product keeps the alternation.
    const AliasFamily product_family = (r % 2 == 1) ? AliasFamily::plain_double : AliasFamily::alt_double;
    return node_collapse_multiplier(product_family, r + 1, grid, k, Part::cos, trunc);
}

FourierSeries build_bspline(BSplineVariant variant, int r, const GridSpec& grid, const TruncationPolicy& trunc) {
    require_order(r, "build_bspline");
    std::vector<SeriesTerm> terms;
    double weight_sum = 0.0;
    std::optional<double> bound;
    for (int k = 1; k <= grid.n; ++k) {
        if (variant == BSplineVariant::br) {
            append_scaled(terms, alias_series(AliasFamily::plain_single, Part::cos, r, grid, k, trunc), 1.0 / kPi);
            weight_sum += 1.0 / kPi;
        } else {
            const double D = star_bspline_normalizer(r, grid, k, trunc).value;
            append_scaled(terms, alias_series(AliasFamily::alt_double, Part::cos, r, grid, k, trunc), 1.0 / (kPi * D));
            weight_sum += 1.0 / (kPi * std::abs(D));
        }
    }
    const AliasFamily family = variant == BSplineVariant::br ? AliasFamily::plain_single : AliasFamily::alt_double;
    bound = alias_tail_bound(r, family_step(family, grid), grid, trunc.m_max);
    return FourierSeries(0.5 / kPi, std::move(terms), trunc.m_max, scaled_tail(bound, weight_sum));
}

AliasFamily kernel_family(KernelVariant variant) {
    switch (variant) {
        case KernelVariant::kr0:
        case KernelVariant::kr0_star:
            return AliasFamily::alt_double;
        case KernelVariant::kr1:
        case KernelVariant::kr1_star:
            return AliasFamily::plain_double;
    }
    throw std::invalid_argument("kernel_family: unknown variant");
}

FourierSeries build_kernel(KernelVariant variant, int j, const HarmonicCoeffs& coeffs, const GridSpec& grid,
                           const TruncationPolicy& trunc) {
    require_coeffs(coeffs, grid, "build_kernel");
    const bool starred = variant == KernelVariant::kr0_star || variant == KernelVariant::kr1_star;
    if (!starred && j < 1) {
        throw std::invalid_argument("build_kernel: j must be >= 1 for KR0/KR1, got " + std::to_string(j));
    }
    const AliasFamily family = kernel_family(variant);
    const int divisor_order = variant == KernelVariant::kr0 ? 2 * j : 2 * j - 1;

    std::vector<SeriesTerm> terms;
    for (int k = 1; k <= grid.n; ++k) {
        const double ak = coeffs.a[static_cast<std::size_t>(k - 1)];
        const double bk = coeffs.b[static_cast<std::size_t>(k - 1)];
        if (ak == 0.0 && bk == 0.0) {
            continue;
        }
        double hc = 1.0;
        double hs = 1.0;
        if (!starred) {
            hc = node_collapse_multiplier(family, divisor_order, grid, k, Part::cos, trunc).value;
            hs = node_collapse_multiplier(family, divisor_order, grid, k, Part::sin, trunc).value;
        }
        append_scaled(terms, alias_series(family, Part::cos, 0, grid, k, trunc), ak / hc);
        append_scaled(terms, alias_series(family, Part::sin, 0, grid, k, trunc), bk / hs);
    }
    // Order-0 factors: no absolute tail bound.
    return FourierSeries(0.5 * coeffs.a0, std::move(terms), trunc.m_max, std::nullopt);
}

}  // namespace trigspline
