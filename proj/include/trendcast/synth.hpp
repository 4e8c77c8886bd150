#pragma once

#include "trendcast/series.hpp"

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

namespace trendcast {

/// One recurring flow peak, repeated every day: a Gaussian bump in the
/// minute-of-day with circular (midnight-wrapping) distance.
struct PeakSpec {
    double center_minute = 0.0; // minute of day of the bump center
    double width_minutes = 1.0; // Gaussian sigma
    double amplitude = 0.0;     // veh/min added at the center
};

/// A multiplicative capacity drop: flow is scaled by (1 - depth) for
/// `duration` samples starting at `start_index`.
struct CongestionEvent {
    std::size_t start_index = 0;
    std::size_t duration = 0;
    double depth = 0.0; // fraction of flow removed, in (0, 1]
};

/// Deterministic synthetic traffic-flow recipe: one sample per minute,
/// days * 1440 samples, flow clamped to >= 0. Identical (scenario, seed)
/// pairs generate bit-identical series.
struct TrafficScenario {
    int days = 1;
    std::uint64_t seed = 0;
    double base_flow = 0.0;
    std::vector<PeakSpec> peaks;
    double noise_std = 0.0;
    double noise_ar1 = 0.0; // lag-1 correlation of the noise, in [0, 1)
    std::vector<CongestionEvent> congestion_events;
};

/// flow(t) = clamp_0( (base + daily peaks + AR(1) noise) * congestion dips ).
///
/// The noise path is pinned for portability: a seeded std::mt19937_64 drives
/// standard-normal draws built as the sum of twelve 53-bit uniforms minus 6
/// (arithmetic only, so the stream is identical wherever IEEE-754 doubles
/// are), and the AR(1) recursion is scaled to keep the stationary standard
/// deviation at noise_std.
TimeSeries generate(const TrafficScenario& scenario);

/// The repo's pinned 30-day stand-in dataset; every golden number in the test
/// suites is computed on this series.
TrafficScenario reference_scenario();
TimeSeries reference_dataset();

/// reference_scenario() with the noise and congestion events removed: exactly
/// 1-day-periodic, which makes the day-lag scaling ratio an exact transport.
TrafficScenario periodic_scenario();

/// Scenario JSON: {"days", "seed", "base_flow"} required; "peaks" (objects
/// with center_minute/width_minutes/amplitude), "noise_std", "noise_ar1" and
/// "congestion_events" (start_index/duration/depth) optional.
TrafficScenario scenario_from_json(std::string_view text);
std::string scenario_to_json(const TrafficScenario& scenario);

} // namespace trendcast
