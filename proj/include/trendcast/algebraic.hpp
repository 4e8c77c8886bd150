#pragma once

#include "trendcast/series.hpp"

#include <cstddef>
#include <span>

namespace trendcast {

/// First-degree fit y ~ a + b*tau over one window, reported at the window's
/// last sample: level_at_end is the fitted value there, slope_per_minute is b.
struct AffineFit {
    double level_at_end = 0.0;
    double slope_per_minute = 0.0;
    Window window;
};

/// Windowed affine estimator. The continuous-time estimator weights the signal
/// with first-order moments over the window, tau measured from the window
/// start across T = (N-1)h:
///
///   a1        = (6 / T^3) * integral_0^T (2 tau - T) y(tau) dtau
///   a0(start) = (2 / T^2) * integral_0^T (2T - 3 tau) y(tau) dtau
///
/// The iterated integrals act as low-pass filters, so the slope of the slowly
/// varying component survives while zero-mean fluctuations are attenuated.
/// Discretely we use the exact least-squares counterpart, which coincides with
/// the integrals in the continuum limit and is exact on affine samples:
///
///   slope_per_minute = 12 / (h N (N^2-1)) * sum_k (k - (N-1)/2) y_k
///   level_at_end     = mean(y) + slope_per_minute * h (N-1)/2
///
AffineFit fit_affine(std::span<const double> samples, double step_minutes);

/// slope_per_minute of the trailing `window`-sample fit at every index >=
/// window-1.
AlignedSeries slope_series(const TimeSeries& series, std::size_t window);

} // namespace trendcast
