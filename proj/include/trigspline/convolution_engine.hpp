#pragma once

#include <span>
#include <vector>

#include "trigspline/series_core.hpp"
#include "trigspline/spline_builder.hpp"

namespace trigspline {

enum class Parity { even, odd };

/// (A * B)(t) = integral_0^{2pi} A(v) B(t - v) dv, coefficient by coefficient.
/// Frequencies present in only one operand vanish. The result carries no tail
/// bound; callers that know the product order attach one.
[[nodiscard]] FourierSeries convolve_coeffwise(const FourierSeries& A, const FourierSeries& B);

/// Same integral by the composite trapezoid rule on `panels` uniform panels.
/// Throws for panels < 4.
[[nodiscard]] std::vector<double> convolve_quadrature(const FourierSeries& A, const FourierSeries& B, int panels,
                                                      std::span<const double> ts);

/// 8 * max frequency, rounded up to a power of two (at least 4).
[[nodiscard]] int default_quadrature_panels(const FourierSeries& A, const FourierSeries& B);

/// Alias family of the convolution spline's coefficients.
[[nodiscard]] AliasFamily conv_spline_family(Parity parity, bool starred);

/// Order of the convolution spline: 2j (even) or 2j-1 (odd).
[[nodiscard]] int conv_spline_order(Parity parity, int j);

/// even, unstarred:  KR0(2j)   * BR(2j-1)
/// odd,  unstarred:  KR1(2j-1) * BR(2j-2)
/// even, starred:    KR0*      * BR*(2j-1)
/// odd,  starred:    KR1*      * BR*(2j-2)
/// The odd j = 1 case needs an order-0 B-spline and must be requested with
/// Convergence::allow_conditional.
[[nodiscard]] FourierSeries build_conv_spline(Parity parity, int j, bool starred, const HarmonicCoeffs& coeffs,
                                              const GridSpec& grid, const TruncationPolicy& trunc,
                                              Convergence mode = Convergence::require_absolute);

}  // namespace trigspline
