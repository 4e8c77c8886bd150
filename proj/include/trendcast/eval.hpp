#pragma once

#include "trendcast/forecast.hpp"
#include "trendcast/series.hpp"

#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

namespace trendcast {

struct MethodScore {
    double sse = 0.0;
    /// Improvement over scaled persistence; 0 for scaled persistence itself,
    /// absent when it was not part of the run. +infinity when sse == 0.
    std::optional<double> gain_percent;
};

/// Squared-error comparison of the methods at one horizon, every method scored
/// over the identical masked index set.
struct EvalReport {
    Horizon horizon;
    std::size_t reference_window = 100;
    std::vector<std::pair<Method, MethodScore>> scores;
    std::size_t valid_count = 0;
    IndexRange valid_range;

    const MethodScore* score_for(Method m) const;
};

/// Sum over masked issue indices i of (predicted[i] - reference[i + dt])^2.
/// The reference is the centered trend, evaluated at the target time; the
/// mask must lie inside both the run's validity and the reference's.
double sse_vs_trend(const ForecastRun& run, const AlignedSeries& reference,
                    const std::vector<bool>& mask);

/// (sse_pe / sse_method - 1) * 100; +infinity when sse_method is zero.
double gain_percent(double sse_pe, double sse_method);

struct EvalOptions {
    std::vector<Method> methods = {Method::scaled_persistence, Method::algebraic, Method::mixed};
    std::vector<Horizon> horizons = {{5}, {15}, {60}};
    ForecastParams params;
    std::size_t reference_window = 100; // centered trend window, even
};

/// One report per horizon. The joint mask intersects every requested method's
/// validity with the reference's validity at the target index, so the
/// comparison is fair by construction. Gains are relative to scaled
/// persistence and only reported when it is among the methods.
std::vector<EvalReport> build_report(const TimeSeries& series, const EvalOptions& options = {});

/// JSON array of {horizon_minutes, valid_count, methods: {label: {sse[, gain_percent]}}}.
std::string reports_to_json(std::span<const EvalReport> reports);

/// Aligned text table: one horizon per row, methods across, gains bracketed.
std::string reports_to_table(std::span<const EvalReport> reports);

} // namespace trendcast
