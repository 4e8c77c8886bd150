#include "trendcast/algebraic.hpp"

#include "trendcast/errors.hpp"

#include <cmath>
#include <string>
#include <vector>

namespace trendcast {

AffineFit fit_affine(std::span<const double> samples, double step_minutes) {
    const std::size_t n = samples.size();
    if (n < 2) {
        throw std::invalid_argument("fit_affine: degenerate window, need at least 2 samples");
    }
    if (!(step_minutes > 0.0)) {
        throw std::invalid_argument("fit_affine: step must be positive");
    }
    const double center = (static_cast<double>(n) - 1.0) / 2.0;
    double weighted = 0.0;
    double total = 0.0;
    for (std::size_t k = 0; k < n; ++k) {
        const double y = samples[k];
        if (!std::isfinite(y)) {
            throw std::invalid_argument("fit_affine: non-finite sample at offset " +
                                        std::to_string(k));
        }
        weighted += (static_cast<double>(k) - center) * y;
        total += y;
    }
    const double nn = static_cast<double>(n);
    const double slope = 12.0 * weighted / (step_minutes * nn * (nn * nn - 1.0));
    const double level = total / nn + slope * step_minutes * center;
    return {level, slope, Window{n - 1, n}};
}

AlignedSeries slope_series(const TimeSeries& series, std::size_t window) {
    if (window < 2) {
        throw std::invalid_argument("slope_series: window must be >= 2");
    }
    if (window > series.size()) {
        throw InsufficientHistoryError("slope_series: window of " + std::to_string(window) +
                                       " samples needs a series of at least that length, got " +
                                       std::to_string(series.size()));
    }
    const double h = static_cast<double>(series.step_minutes());
    const std::size_t first = window - 1;
    std::vector<double> slopes;
    slopes.reserve(series.size() - first);
    for (std::size_t i = first; i < series.size(); ++i) {
        slopes.push_back(fit_affine(slice(series, Window{i, window}), h).slope_per_minute);
    }
    return AlignedSeries(
        TimeSeries(series.minute_at(first), series.step_minutes(), std::move(slopes)), first);
}

} // namespace trendcast
