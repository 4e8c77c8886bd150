#pragma once

#include "trendcast/forecast.hpp"
#include "trendcast/series.hpp"
#include "trendcast/trend.hpp"

#include <cstddef>

namespace trendcast {

/// Windowed dispersion of a series around its own windowed mean,
/// sqrt(E(X^2) - E(X)^2), computed directly on the series rather than on
/// returns. Non-negative wherever valid.
struct VolatilitySeries {
    AlignedSeries values;
    std::size_t window = 2;
    MeanKind mean_kind = MeanKind::causal;
};

/// out[i] = sqrt(max(0, M2[i] - M1[i]^2)) with M1, M2 the chosen n-sample
/// means of X and X^2; the clamp guards floating-point negativity. Population
/// normalization (plain means), matching the definition above.
VolatilitySeries rolling_volatility(const TimeSeries& series, std::size_t window,
                                    MeanKind mean_kind);

/// The algebraic forecaster applied to the volatility series itself, same
/// validity semantics. The input must be causal — a forecaster cannot consume
/// future-looking volatility. Issue indices of the returned run are on the
/// volatility series' own grid.
ForecastRun forecast_volatility(const VolatilitySeries& vol, Horizon dt,
                                const ForecastParams& params = {});

/// CSV `t,volatility`, valid samples only.
std::string volatility_to_csv(const VolatilitySeries& vol);

} // namespace trendcast
