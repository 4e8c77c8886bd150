#include "trendcast/volatility.hpp"

#include "trendcast/errors.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <vector>

namespace trendcast {

VolatilitySeries rolling_volatility(const TimeSeries& series, std::size_t window,
                                    MeanKind mean_kind) {
    if (window < 2) {
        throw std::invalid_argument("rolling_volatility: window must be >= 2");
    }
    const AlignedSeries mean = windowed_mean(series, mean_kind, window);

    std::vector<double> squares;
    squares.reserve(series.size());
    for (const double x : series.values()) {
        squares.push_back(x * x);
    }
    const AlignedSeries mean_sq = windowed_mean(
        TimeSeries(series.start_minute(), series.step_minutes(), std::move(squares)), mean_kind,
        window);

    const IndexRange range = mean.valid_range();
    std::vector<double> vol;
    vol.reserve(range.count());
    for (std::size_t i = range.first; i <= range.last; ++i) {
        const double m1 = mean.at(i);
        vol.push_back(std::sqrt(std::max(0.0, mean_sq.at(i) - m1 * m1)));
    }
    return {AlignedSeries(TimeSeries(series.minute_at(range.first), series.step_minutes(),
                                     std::move(vol), series.unit_label()),
                          range.first),
            window, mean_kind};
}

ForecastRun forecast_volatility(const VolatilitySeries& vol, Horizon dt,
                                const ForecastParams& params) {
    if (vol.mean_kind != MeanKind::causal) {
        throw std::invalid_argument(
            "forecast_volatility: volatility computed with a centered mean is acausal");
    }
    return run_forecaster(vol.values.series(), Method::algebraic, dt, params);
}

std::string volatility_to_csv(const VolatilitySeries& vol) {
    std::ostringstream out;
    out << "t,volatility\n";
    const TimeSeries& s = vol.values.series();
    for (std::size_t i = 0; i < s.size(); ++i) {
        out << format_minute_timestamp(s.minute_at(i)) << ',' << format_value(s[i]) << '\n';
    }
    return out.str();
}

} // namespace trendcast
