#pragma once

#include <optional>

#include "trigspline/series_core.hpp"

namespace trigspline {

/// Alias classes of harmonic k on an N-point grid.
///   plain_single: frequencies mN +- k                 (C_k / S_k)
///   alt_double:   frequencies 2mN +- k, factor (-1)^m  (C0 / S0)
///   plain_double: frequencies 2mN +- k                (C1 / S1)
enum class AliasFamily { plain_single, alt_double, plain_double };

enum class Part { cos, sin };

enum class BSplineVariant { br, br_star };

enum class KernelVariant { kr0, kr1, kr0_star, kr1_star };

/// Order-0 splines only converge conditionally and must be requested explicitly.
enum class Convergence { require_absolute, allow_conditional };

/// A truncated alias sum together with a bound on the discarded part
/// (nullopt for order 0, where the terms decay like 1/J).
struct Multiplier {
    double value = 0.0;
    std::optional<double> tail_bound;
};

/// Frequency period of the alias family: N or 2N.
[[nodiscard]] int family_step(AliasFamily family, const GridSpec& grid);

/// Bound on 2 * sum_{m > m_max} (step*m - n)^-(1+r), i.e. the coefficient
/// magnitude dropped from one alias series of order r. nullopt for r = 0.
[[nodiscard]] std::optional<double> alias_tail_bound(int r, int step, const GridSpec& grid, int m_max);

/// H_k = sigma(k) + sum_m [sigma(mN-k) + sigma(mN+k)].
[[nodiscard]] Multiplier interp_multiplier(int r, const GridSpec& grid, int k, const TruncationPolicy& trunc);

/// Scalar by which the alias series of this family/part reduces to
/// cos(k t_i) (or sin(k t_i)) at every grid node.
[[nodiscard]] Multiplier node_collapse_multiplier(AliasFamily family, int r, const GridSpec& grid, int k,
                                                  Part part, const TruncationPolicy& trunc);

/// Leading term sigma(r,k) cos(kt) (or sin) plus the aliased terms of the family.
/// Sine aliases at (step*m - k) enter with a minus sign.
[[nodiscard]] FourierSeries alias_series(AliasFamily family, Part part, int r, const GridSpec& grid, int k,
                                         const TruncationPolicy& trunc);

/// Interpolating trigonometric spline of order r:
///   a0/2 + sum_k H_k^-1 (a_k C_k(t) + b_k S_k(t)).
[[nodiscard]] FourierSeries build_spline(const HarmonicCoeffs& coeffs, int r, const GridSpec& grid,
                                         const TruncationPolicy& trunc,
                                         Convergence mode = Convergence::require_absolute);

/// Divisor applied to the k-th alternating cosine series in BR*(r): the
/// node-collapse multiplier of order r+1 of the series obtained by convolving
/// BR*(r) with its paired kernel (KR0* for odd r, KR1* for even r).
[[nodiscard]] Multiplier star_bspline_normalizer(int r, const GridSpec& grid, int k,
                                                 const TruncationPolicy& trunc);

/// BR(r,t)  = (1/pi) [1/2 + sum_k C_k(r,t)]
/// BR*(r,t) = (1/pi) [1/2 + sum_k C0(r,k,t) / star_bspline_normalizer(r,k)]
[[nodiscard]] FourierSeries build_bspline(BSplineVariant variant, int r, const GridSpec& grid,
                                          const TruncationPolicy& trunc);

/// Alias family carried by a kernel variant.
[[nodiscard]] AliasFamily kernel_family(KernelVariant variant);

/// Riemann kernels. KR0(2j) divides harmonic k by the alt_double collapse
/// multiplier of order 2j, KR1(2j-1) by the plain_double one of order 2j-1.
/// Starred variants are undivided and ignore j.
[[nodiscard]] FourierSeries build_kernel(KernelVariant variant, int j, const HarmonicCoeffs& coeffs,
                                         const GridSpec& grid, const TruncationPolicy& trunc);

}  // namespace trigspline
