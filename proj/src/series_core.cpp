#include "trigspline/series_core.hpp"

#include <algorithm>
#include <array>
#include <bitset>
#include <cmath>
#include <complex>
#include <stdexcept>
#include <string>
#include <thread>

namespace trigspline {

namespace {

constexpr long double kTwoPiL = 6.283185307179586476925286766559005768L;

// Phasor exp(i*J*t) with the argument J*t reduced mod 2*pi in extended precision.
std::complex<double> phasor(std::int64_t J, double t) {
    long double arg = std::fmod(static_cast<long double>(J) * static_cast<long double>(t), kTwoPiL);
    return {static_cast<double>(std::cos(arg)), static_cast<double>(std::sin(arg))};
}

// Terms between exact reseeds of the running phasor.
constexpr std::size_t kReseedInterval = 64;
constexpr std::int64_t kStepCacheSize = 128;

}  // namespace

FourierSeries::FourierSeries(double constant, std::vector<SeriesTerm> terms, int m_max,
                             std::optional<double> tail_estimate)
    : constant_(constant), m_max_(m_max), tail_estimate_(tail_estimate) {
    std::sort(terms.begin(), terms.end(),
              [](const SeriesTerm& x, const SeriesTerm& y) { return x.frequency < y.frequency; });
    terms_.reserve(terms.size());
    for (const auto& term : terms) {
        if (term.frequency <= 0) {
            throw std::invalid_argument("FourierSeries: frequencies must be positive, got " +
                                        std::to_string(term.frequency));
        }
        if (!terms_.empty() && terms_.back().frequency == term.frequency) {
            terms_.back().cos_coeff += term.cos_coeff;
            terms_.back().sin_coeff += term.sin_coeff;
        } else {
            terms_.push_back(term);
        }
    }
    std::erase_if(terms_, [](const SeriesTerm& x) { return x.cos_coeff == 0.0 && x.sin_coeff == 0.0; });
}

std::optional<SeriesTerm> FourierSeries::term_at(std::int64_t frequency) const {
    auto it = std::lower_bound(terms_.begin(), terms_.end(), frequency,
                               [](const SeriesTerm& x, std::int64_t J) { return x.frequency < J; });
    if (it == terms_.end() || it->frequency != frequency) {
        return std::nullopt;
    }
    return *it;
}

TruncationPolicy::TruncationPolicy(int m_max_in, double tail_tol_in) : m_max(m_max_in), tail_tol(tail_tol_in) {
    if (m_max < 1) {
        throw std::invalid_argument("TruncationPolicy: m_max must be >= 1, got " + std::to_string(m_max));
    }
    if (!(tail_tol >= 0.0)) {
        throw std::invalid_argument("TruncationPolicy: tail_tol must be >= 0");
    }
}

bool within_tolerance(const FourierSeries& series, const TruncationPolicy& policy) {
    if (policy.tail_tol == 0.0) {
        return true;
    }
    return series.tail_bounded() && *series.tail_estimate() <= policy.tail_tol;
}

GridSpec make_grid(int N) {
    if (N < 3) {
        throw std::invalid_argument("make_grid: N must be >= 3, got " + std::to_string(N));
    }
    if (N % 2 == 0) {
        throw std::invalid_argument("make_grid: N must be odd, got " + std::to_string(N));
    }
    GridSpec grid;
    grid.N = N;
    grid.n = (N - 1) / 2;
    grid.h = kTwoPi / N;
    grid.lambda = kPi / N;
    grid.nodes.resize(static_cast<std::size_t>(N));
    for (int i = 0; i < N; ++i) {
        grid.nodes[static_cast<std::size_t>(i)] = kTwoPi * i / N;
    }
    return grid;
}

HarmonicCoeffs dft_coeffs(const GridSpec& grid, const SampleSet& samples) {
    if (samples.values.size() != static_cast<std::size_t>(grid.N)) {
        throw std::invalid_argument("dft_coeffs: expected " + std::to_string(grid.N) + " samples, got " +
                                    std::to_string(samples.values.size()));
    }
    HarmonicCoeffs coeffs;
    coeffs.a.assign(static_cast<std::size_t>(grid.n), 0.0);
    coeffs.b.assign(static_cast<std::size_t>(grid.n), 0.0);
    const double scale = 2.0 / grid.N;
    for (int k = 0; k <= grid.n; ++k) {
        double ak = 0.0;
        double bk = 0.0;
        for (int j = 0; j < grid.N; ++j) {
            // k*j reduced mod N keeps the angle exact.
            const double angle = kTwoPi * static_cast<double>((k * j) % grid.N) / grid.N;
            ak += samples.values[static_cast<std::size_t>(j)] * std::cos(angle);
            bk += samples.values[static_cast<std::size_t>(j)] * std::sin(angle);
        }
        if (k == 0) {
            coeffs.a0 = scale * ak;
        } else {
            coeffs.a[static_cast<std::size_t>(k - 1)] = scale * ak;
            coeffs.b[static_cast<std::size_t>(k - 1)] = scale * bk;
        }
    }
    return coeffs;
}

double eval_trig_poly(const HarmonicCoeffs& coeffs, double t) {
    if (coeffs.a.size() != coeffs.b.size()) {
        throw std::invalid_argument("eval_trig_poly: a and b lengths differ");
    }
    const double tw = wrap_angle(t);
    double value = 0.5 * coeffs.a0;
    for (std::size_t k = 1; k <= coeffs.a.size(); ++k) {
        const auto z = phasor(static_cast<std::int64_t>(k), tw);
        value += coeffs.a[k - 1] * z.real() + coeffs.b[k - 1] * z.imag();
    }
    return value;
}

double sigma(int r, const GridSpec& grid, std::int64_t J) {
    if (J < 1) {
        throw std::invalid_argument("sigma: frequency must be >= 1, got " + std::to_string(J));
    }
    if (r < 0) {
        throw std::invalid_argument("sigma: order must be >= 0, got " + std::to_string(r));
    }
    const std::int64_t N = grid.N;
    if (J % N == 0) {
        return 0.0;
    }
    // sin(J*pi/N) depends only on J mod 2N; the sign is kept.
    const double s = std::sin(kPi * static_cast<double>(J % (2 * N)) / static_cast<double>(N));
    return std::pow(s / static_cast<double>(J), 1 + r);
}

double wrap_angle(double t) {
    double w = std::fmod(t, kTwoPi);
    if (w < 0.0) {
        w += kTwoPi;
    }
    return w >= kTwoPi ? 0.0 : w;
}

double eval_series(const FourierSeries& series, double t) {
    const double tw = wrap_angle(t);
    const auto terms = series.terms();

    std::array<std::complex<double>, kStepCacheSize> step_cache{};
    std::bitset<kStepCacheSize> cached;

    double sum = 0.0;
    std::complex<double> z{1.0, 0.0};
    std::int64_t previous = 0;
    for (std::size_t idx = 0; idx < terms.size(); ++idx) {
        const auto& term = terms[idx];
        const std::int64_t step = term.frequency - previous;
        if (idx % kReseedInterval == 0 || step >= kStepCacheSize) {
            z = phasor(term.frequency, tw);
        } else {
            if (!cached[static_cast<std::size_t>(step)]) {
                step_cache[static_cast<std::size_t>(step)] = phasor(step, tw);
                cached.set(static_cast<std::size_t>(step));
            }
            z *= step_cache[static_cast<std::size_t>(step)];
        }
        previous = term.frequency;
        sum += term.cos_coeff * z.real() + term.sin_coeff * z.imag();
    }
    return series.constant() + sum;
}

std::vector<double> eval_series_many(const FourierSeries& series, std::span<const double> ts) {
    std::vector<double> out(ts.size());
    const auto work = [&](std::size_t begin, std::size_t end) {
        for (std::size_t i = begin; i < end; ++i) {
            out[i] = eval_series(series, ts[i]);
        }
    };

    const std::size_t hw = std::max(1u, std::thread::hardware_concurrency());
    const std::size_t cost = ts.size() * (series.terms().size() + 1);
    const std::size_t workers = cost < (1u << 16) ? 1 : std::min(hw, ts.size());
    if (workers <= 1) {
        work(0, ts.size());
        return out;
    }
    {
        std::vector<std::jthread> pool;
        const std::size_t chunk = (ts.size() + workers - 1) / workers;
        for (std::size_t begin = 0; begin < ts.size(); begin += chunk) {
            pool.emplace_back(work, begin, std::min(ts.size(), begin + chunk));
        }
    }
    return out;
}

std::vector<double> uniform_points(int sample_count) {
    if (sample_count < 1) {
        throw std::invalid_argument("uniform_points: sample_count must be >= 1");
    }
    std::vector<double> ts(static_cast<std::size_t>(sample_count));
    for (int i = 0; i < sample_count; ++i) {
        ts[static_cast<std::size_t>(i)] = kTwoPi * i / sample_count;
    }
    return ts;
}

}  // namespace trigspline
