#include "trendcast/trend.hpp"

#include "trendcast/errors.hpp"

#include <string>
#include <vector>

namespace trendcast {

namespace {

// Compensated (Kahan) accumulator. The sliding window adds and removes one
// sample per step; compensation keeps the running sum within a few ulps over
// arbitrarily long runs, and the periodic re-summation below bounds drift even
// where compensation cannot.
class CompensatedSum {
public:
    void add(double x) {
        const double y = x - comp_;
        const double t = sum_ + y;
        comp_ = (t - sum_) - y;
        sum_ = t;
    }

    void subtract(double x) { add(-x); }

    double value() const { return sum_; }

    void reset() {
        sum_ = 0.0;
        comp_ = 0.0;
    }

private:
    double sum_ = 0.0;
    double comp_ = 0.0;
};

constexpr std::size_t kResumPeriod = std::size_t{1} << 16;

// Rolling means of all n-sample windows, indexed by window end. out[j] is the
// mean of x[j-n+1..j], for j in [n-1, size-1].
std::vector<double> rolling_window_means(std::span<const double> x, std::size_t n) {
    std::vector<double> out;
    out.reserve(x.size() - n + 1);
    const double inv_n = 1.0 / static_cast<double>(n);

    CompensatedSum sum;
    for (std::size_t j = 0; j < n; ++j) {
        sum.add(x[j]);
    }
    out.push_back(sum.value() * inv_n);

    std::size_t since_resum = 0;
    for (std::size_t j = n; j < x.size(); ++j) {
        if (++since_resum >= kResumPeriod) {
            sum.reset();
            for (std::size_t k = j - n + 1; k <= j; ++k) {
                sum.add(x[k]);
            }
            since_resum = 0;
        } else {
            sum.add(x[j]);
            sum.subtract(x[j - n]);
        }
        out.push_back(sum.value() * inv_n);
    }
    return out;
}

} // namespace

AlignedSeries causal_mean(const TimeSeries& series, std::size_t window) {
    if (window < 1) {
        throw std::invalid_argument("causal_mean: window must be >= 1");
    }
    if (window > series.size()) {
        throw InsufficientHistoryError("causal_mean: window of " + std::to_string(window) +
                                       " samples needs a series of at least that length, got " +
                                       std::to_string(series.size()));
    }
    const std::size_t first = window - 1;
    std::vector<double> means = rolling_window_means(series.view(), window);
    return AlignedSeries(
        TimeSeries(series.minute_at(first), series.step_minutes(), std::move(means),
                   series.unit_label()),
        first);
}

AlignedSeries centered_mean(const TimeSeries& series, std::size_t window) {
    if (window < 2 || window % 2 != 0) {
        throw std::invalid_argument("centered_mean: window must be even and >= 2");
    }
    if (window > series.size()) {
        throw InsufficientHistoryError("centered_mean: window of " + std::to_string(window) +
                                       " samples needs a series of at least that length, got " +
                                       std::to_string(series.size()));
    }
    // The window ending at j is centered (one sample future-heavy) on j - n/2,
    // so the causal pass re-anchored at first = n/2 - 1 gives the result.
    const std::size_t first = window / 2 - 1;
    std::vector<double> means = rolling_window_means(series.view(), window);
    return AlignedSeries(
        TimeSeries(series.minute_at(first), series.step_minutes(), std::move(means),
                   series.unit_label()),
        first);
}

AlignedSeries windowed_mean(const TimeSeries& series, MeanKind kind, std::size_t window) {
    return kind == MeanKind::causal ? causal_mean(series, window)
                                    : centered_mean(series, window);
}

TrendDecomposition decompose(const TimeSeries& series, MeanKind kind, std::size_t window) {
    AlignedSeries trend = windowed_mean(series, kind, window);
    const IndexRange range = trend.valid_range();
    std::vector<double> fluct;
    fluct.reserve(range.count());
    for (std::size_t i = range.first; i <= range.last; ++i) {
        fluct.push_back(series[i] - trend.at(i));
    }
    AlignedSeries fluctuation(
        TimeSeries(series.minute_at(range.first), series.step_minutes(), std::move(fluct)),
        range.first);
    return {std::move(trend), std::move(fluctuation)};
}

} // namespace trendcast
