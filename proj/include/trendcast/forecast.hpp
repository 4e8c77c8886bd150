#pragma once

#include "trendcast/series.hpp"

#include <cstddef>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace trendcast {

enum class Method {
    scaled_persistence, // trend times yesterday's growth ratio ("Pe")
    algebraic,          // trend plus estimated slope times the horizon ("Al")
    mixed,              // trend plus whichever candidate slope is smaller ("Mi")
    raw_persistence,    // tomorrow equals now
};

std::string_view method_label(Method m); // "Pe", "Al", "Mi", "RawPersistence"
std::string_view method_token(Method m); // "pe", "al", "mi", "raw"
std::optional<Method> method_from_token(std::string_view token);

/// Lead time between forecast issuance and target, in samples.
struct Horizon {
    int steps = 1;
};

/// Sample count of the day-lag used by the scaling ratio.
struct DayOffset {
    int samples_per_day = 1440;

    /// 1440 minutes per day at the given step; the step must divide a day.
    static DayOffset for_step(int step_minutes);
};

struct ForecastParams {
    std::size_t trend_window = 100;
    /// Window for the slope fit on the raw series. Somewhat longer than the
    /// trend window: the extra smoothing keeps the fitted slope from
    /// dominating the day-lag implied slope in the mixed branch rule.
    std::size_t slope_window = 132;
    /// Denominator floor for the day-lag scaling ratio. Below it the ratio is
    /// replaced by neutral 1, so near-zero night flow cannot produce spikes.
    double eps = 0.5;
};

/// The conditions at issue time persist: the forecast for i + dt is series[i].
double persistence(const TimeSeries& series, std::size_t i, Horizon dt);

struct ScaleFactor {
    double value = 1.0;
    bool guarded = false; // denominator magnitude fell below eps
};

/// Growth ratio of the trend across the same clock interval one day earlier:
/// trend(i - day + dt) / trend(i - day).
ScaleFactor scale_factor(const AlignedSeries& trend, std::size_t i, Horizon dt, DayOffset day,
                         double eps);

/// trend(i) * scale_factor(i); quick fluctuations are dropped and the trend is
/// carried forward by yesterday's growth.
double scaled_persistence(const AlignedSeries& trend, std::size_t i, Horizon dt, DayOffset day,
                          double eps);

/// trend(i) + slope(i) * dt, the horizon expressed in minutes.
double algebraic_forecast(const AlignedSeries& trend, const AlignedSeries& slope, std::size_t i,
                          Horizon dt);

/// Extrapolates with whichever candidate slope has the smaller magnitude: the
/// fitted slope, or the slope implied by the day-lag ratio,
/// trend(i) * (S_c - 1) / dt. Ties take the ratio-implied branch. Damps the
/// overshoots of pure slope extrapolation and the undershoots of pure scaling.
double mixed_forecast(const AlignedSeries& trend, const AlignedSeries& slope, std::size_t i,
                      Horizon dt, DayOffset day, double eps);

/// Per-index forecasts for one method and horizon. predicted[i] is the value
/// forecast for index i + horizon, issued at i; arrays cover every issue index
/// that has a target inside the series (size() == series length - horizon).
struct ForecastRun {
    Method method = Method::raw_persistence;
    Horizon horizon;
    std::vector<double> predicted;
    std::vector<bool> valid;

    std::size_t valid_count() const;
    IndexRange valid_range() const; // throws InsufficientHistoryError when empty
};

/// Runs one forecaster over the whole series. Validity requires trend warm-up,
/// day-lagged history for the scaled and mixed methods, and a target inside
/// the series.
ForecastRun run_forecaster(const TimeSeries& series, Method method, Horizon dt,
                           const ForecastParams& params = {});

/// CSV `t,actual,forecast,valid`, one row per issue index; t is the target
/// time. Invalid rows carry nan in the forecast column.
std::string run_to_csv(const ForecastRun& run, const TimeSeries& series);

} // namespace trendcast
