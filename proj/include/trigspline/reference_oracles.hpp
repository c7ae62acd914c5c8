#pragma once

#include <span>
#include <vector>

#include "trigspline/series_core.hpp"

namespace trigspline {

inline constexpr int kMaxOracleDegree = 12;

/// Centered cardinal B-spline of the given degree: unit knot spacing, unit
/// integral, support [-(degree+1)/2, (degree+1)/2]. Degree 0 takes the value
/// 1/2 at the jump points so that integer shifts sum to one everywhere.
[[nodiscard]] double cardinal_bspline(int degree, double x);

/// Cardinal B-spline rescaled to knot spacing 2*pi/N, centered at t = 0,
/// with unit mass over one period, wrapped onto the circle.
[[nodiscard]] double periodized_bspline(int degree, const GridSpec& grid, double t);

/// C2 periodic cubic spline through (t_i, f_i) with knots at the grid nodes.
class PeriodicCubicSpline {
public:
    PeriodicCubicSpline(const GridSpec& grid, const SampleSet& samples);

    [[nodiscard]] double operator()(double t) const;

    /// Second derivatives at the nodes.
    [[nodiscard]] std::span<const double> moments() const { return moments_; }

private:
    double h_;
    std::vector<double> values_;
    std::vector<double> moments_;
};

[[nodiscard]] double periodic_cubic_interp(const GridSpec& grid, const SampleSet& samples, double t);

/// Solves the cyclic tridiagonal system
///   lower[i] x[i-1] + diag[i] x[i] + upper[i] x[i+1] = rhs[i]   (indices mod n)
/// by Thomas elimination with a Sherman-Morrison correction for the corners.
[[nodiscard]] std::vector<double> solve_cyclic_tridiagonal(std::span<const double> lower,
                                                           std::span<const double> diag,
                                                           std::span<const double> upper,
                                                           std::span<const double> rhs);

struct AffineFit {
    double scale = 0.0;
    double offset = 0.0;
    double residual = 0.0;  ///< max |candidate - (scale*reference + offset)|
};

/// Least-squares fit candidate ~ scale*reference + offset.
[[nodiscard]] AffineFit affine_fit(std::span<const double> reference, std::span<const double> candidate);

}  // namespace trigspline
