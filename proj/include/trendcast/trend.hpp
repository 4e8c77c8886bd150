#pragma once

#include "trendcast/series.hpp"

#include <cstddef>

namespace trendcast {

enum class MeanKind {
    causal,   // mean of the n samples ending at t
    centered, // mean of the n samples from t-(n/2-1) to t+n/2, n even
};

/// Trailing n-sample arithmetic mean. Valid from index n-1 onward. Computed by
/// an incrementally updated rolling sum (O(1) per sample, compensated), with a
/// full re-summation every 2^16 samples to bound drift.
AlignedSeries causal_mean(const TimeSeries& series, std::size_t window);

/// Non-causal n-sample mean over t-(n/2-1)..t+n/2; n must be even. One sample
/// heavier toward the future, so for n = 100 the span is t-49..t+50. Valid for
/// n/2-1 <= t <= size-1-n/2.
AlignedSeries centered_mean(const TimeSeries& series, std::size_t window);

AlignedSeries windowed_mean(const TimeSeries& series, MeanKind kind, std::size_t window);

/// Additive split of a series into a slowly varying mean and the quick
/// fluctuations around it: series == trend + fluctuation on the valid range,
/// exactly (fluctuation is formed by subtraction).
struct TrendDecomposition {
    AlignedSeries trend;
    AlignedSeries fluctuation;

    IndexRange valid_range() const noexcept { return trend.valid_range(); }
};

TrendDecomposition decompose(const TimeSeries& series, MeanKind kind, std::size_t window);

} // namespace trendcast
