#include "trendcast/forecast.hpp"

#include "trendcast/algebraic.hpp"
#include "trendcast/errors.hpp"
#include "trendcast/trend.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>
#include <string>

namespace trendcast {

std::string_view method_label(Method m) {
    switch (m) {
    case Method::scaled_persistence: return "Pe";
    case Method::algebraic: return "Al";
    case Method::mixed: return "Mi";
    case Method::raw_persistence: return "RawPersistence";
    }
    return "?";
}

std::string_view method_token(Method m) {
    switch (m) {
    case Method::scaled_persistence: return "pe";
    case Method::algebraic: return "al";
    case Method::mixed: return "mi";
    case Method::raw_persistence: return "raw";
    }
    return "?";
}

std::optional<Method> method_from_token(std::string_view token) {
    if (token == "pe") return Method::scaled_persistence;
    if (token == "al") return Method::algebraic;
    if (token == "mi") return Method::mixed;
    if (token == "raw") return Method::raw_persistence;
    return std::nullopt;
}

DayOffset DayOffset::for_step(int step_minutes) {
    if (step_minutes < 1 || 1440 % step_minutes != 0) {
        throw std::invalid_argument("DayOffset: step of " + std::to_string(step_minutes) +
                                    " minutes does not divide a 1440-minute day");
    }
    return DayOffset{1440 / step_minutes};
}

double persistence(const TimeSeries& series, std::size_t i, Horizon dt) {
    if (dt.steps < 1) {
        throw std::invalid_argument("persistence: horizon must be positive");
    }
    if (i >= series.size()) {
        throw BoundsError("persistence: index " + std::to_string(i) + " past series end");
    }
    return series[i];
}

namespace {

void check_horizon(Horizon dt) {
    if (dt.steps < 1) {
        throw std::invalid_argument("forecast: horizon must be positive");
    }
}

void check_day(DayOffset day) {
    if (day.samples_per_day < 1) {
        throw std::invalid_argument("forecast: day offset must be positive");
    }
}

// Day-lagged trend indices i - day and i - day + dt, checked for existence.
struct DayLag {
    std::size_t base;
    std::size_t ahead;
};

DayLag day_lag_indices(const AlignedSeries& trend, std::size_t i, Horizon dt, DayOffset day) {
    const std::size_t lag = static_cast<std::size_t>(day.samples_per_day);
    if (i < lag || !trend.valid_at(i - lag) || !trend.valid_at(i - lag + dt.steps)) {
        throw InsufficientHistoryError(
            "forecast: no day-lagged trend history at index " + std::to_string(i) + " (need " +
            std::to_string(lag) + " samples of lag past the trend warm-up)");
    }
    return {i - lag, i - lag + static_cast<std::size_t>(dt.steps)};
}

} // namespace

ScaleFactor scale_factor(const AlignedSeries& trend, std::size_t i, Horizon dt, DayOffset day,
                         double eps) {
    check_horizon(dt);
    check_day(day);
    const DayLag lag = day_lag_indices(trend, i, dt, day);
    const double denominator = trend.at(lag.base);
    if (std::fabs(denominator) < eps) {
        return {1.0, true};
    }
    return {trend.at(lag.ahead) / denominator, false};
}

double scaled_persistence(const AlignedSeries& trend, std::size_t i, Horizon dt, DayOffset day,
                          double eps) {
    return trend.at(i) * scale_factor(trend, i, dt, day, eps).value;
}

double algebraic_forecast(const AlignedSeries& trend, const AlignedSeries& slope, std::size_t i,
                          Horizon dt) {
    check_horizon(dt);
    const double dt_minutes =
        static_cast<double>(dt.steps) * static_cast<double>(trend.series().step_minutes());
    return trend.at(i) + slope.at(i) * dt_minutes;
}

double mixed_forecast(const AlignedSeries& trend, const AlignedSeries& slope, std::size_t i,
                      Horizon dt, DayOffset day, double eps) {
    check_horizon(dt);
    const double dt_minutes =
        static_cast<double>(dt.steps) * static_cast<double>(trend.series().step_minutes());
    const double ratio = scale_factor(trend, i, dt, day, eps).value;
    const double ratio_slope = trend.at(i) * (ratio - 1.0) / dt_minutes;
    const double fitted_slope = slope.at(i);
    // Strictly smaller magnitude picks the fitted slope; ties go to the
    // ratio-implied one.
    const double chosen =
        std::fabs(fitted_slope) < std::fabs(ratio_slope) ? fitted_slope : ratio_slope;
    return trend.at(i) + chosen * dt_minutes;
}

std::size_t ForecastRun::valid_count() const {
    std::size_t count = 0;
    for (const bool v : valid) {
        count += v ? 1 : 0;
    }
    return count;
}

IndexRange ForecastRun::valid_range() const {
    std::size_t first = valid.size();
    std::size_t last = 0;
    for (std::size_t i = 0; i < valid.size(); ++i) {
        if (valid[i]) {
            if (first == valid.size()) {
                first = i;
            }
            last = i;
        }
    }
    if (first == valid.size()) {
        throw InsufficientHistoryError("ForecastRun: no valid issue points");
    }
    return {first, last};
}

ForecastRun run_forecaster(const TimeSeries& series, Method method, Horizon dt,
                           const ForecastParams& params) {
    check_horizon(dt);
    const std::size_t steps = static_cast<std::size_t>(dt.steps);
    if (series.size() <= steps) {
        throw InsufficientHistoryError("run_forecaster: series of " +
                                       std::to_string(series.size()) +
                                       " samples has no target for a horizon of " +
                                       std::to_string(dt.steps) + " samples");
    }

    const std::size_t issue_count = series.size() - steps;
    ForecastRun run;
    run.method = method;
    run.horizon = dt;
    run.predicted.assign(issue_count, std::numeric_limits<double>::quiet_NaN());
    run.valid.assign(issue_count, false);

    if (method == Method::raw_persistence) {
        for (std::size_t i = 0; i < issue_count; ++i) {
            run.predicted[i] = series[i];
            run.valid[i] = true;
        }
        return run;
    }

    const bool needs_slope = method == Method::algebraic || method == Method::mixed;
    const bool needs_day_lag = method == Method::scaled_persistence || method == Method::mixed;

    const std::size_t day = needs_day_lag
                                ? static_cast<std::size_t>(
                                      DayOffset::for_step(series.step_minutes()).samples_per_day)
                                : 0;
    std::size_t first_issue = params.trend_window - 1 + day;
    if (needs_slope) {
        first_issue = std::max(first_issue, params.slope_window - 1);
    }
    if (first_issue >= issue_count) {
        throw InsufficientHistoryError(
            "run_forecaster: no valid issue point; need at least " +
            std::to_string(first_issue + steps + 1) + " samples for method " +
            std::string(method_label(method)) + " at this horizon, got " +
            std::to_string(series.size()));
    }

    const AlignedSeries trend = causal_mean(series, params.trend_window);
    std::optional<AlignedSeries> slope;
    if (needs_slope) {
        slope = slope_series(series, params.slope_window);
    }
    const DayOffset day_offset{static_cast<int>(day == 0 ? 1 : day)};

    for (std::size_t i = first_issue; i < issue_count; ++i) {
        double value = 0.0;
        switch (method) {
        case Method::scaled_persistence:
            value = scaled_persistence(trend, i, dt, day_offset, params.eps);
            break;
        case Method::algebraic:
            value = algebraic_forecast(trend, *slope, i, dt);
            break;
        case Method::mixed:
            value = mixed_forecast(trend, *slope, i, dt, day_offset, params.eps);
            break;
        case Method::raw_persistence:
            break; // handled above
        }
        run.predicted[i] = value;
        run.valid[i] = true;
    }
    return run;
}

std::string run_to_csv(const ForecastRun& run, const TimeSeries& series) {
    std::ostringstream out;
    out << "t,actual,forecast,valid\n";
    for (std::size_t i = 0; i < run.predicted.size(); ++i) {
        const std::size_t target = i + static_cast<std::size_t>(run.horizon.steps);
        out << format_minute_timestamp(series.minute_at(target)) << ','
            << format_value(series[target]) << ','
            << (run.valid[i] ? format_value(run.predicted[i]) : "nan") << ','
            << (run.valid[i] ? '1' : '0') << '\n';
    }
    return out.str();
}

} // namespace trendcast
