#include "trendcast/synth.hpp"

#include "trendcast/errors.hpp"

#include <json.hpp>

#include <algorithm>
#include <chrono>
#include <cmath>
#include <random>
#include <stdexcept>
#include <string>

namespace trendcast {

namespace {

constexpr int kMinutesPerDay = 1440;

// Generated series start at 2014-06-01T00:00 so that a month-long scenario
// spans a familiar calendar month.
constexpr std::int64_t kStartMinute =
    std::chrono::sys_days(std::chrono::year{2014} / 6 / 1).time_since_epoch().count() *
    std::int64_t{kMinutesPerDay};

void validate(const TrafficScenario& s) {
    if (s.days < 1) {
        throw std::invalid_argument("scenario: days must be >= 1");
    }
    if (!(s.base_flow >= 0.0) || !std::isfinite(s.base_flow)) {
        throw std::invalid_argument("scenario: base_flow must be finite and >= 0");
    }
    if (!(s.noise_std >= 0.0) || !std::isfinite(s.noise_std)) {
        throw std::invalid_argument("scenario: noise_std must be finite and >= 0");
    }
    if (!(s.noise_ar1 >= 0.0) || s.noise_ar1 >= 1.0) {
        throw std::invalid_argument("scenario: noise_ar1 must be in [0, 1)");
    }
    for (const PeakSpec& p : s.peaks) {
        if (!(p.width_minutes > 0.0)) {
            throw std::invalid_argument("scenario: peak width must be positive");
        }
    }
    for (const CongestionEvent& e : s.congestion_events) {
        if (!(e.depth > 0.0) || e.depth > 1.0) {
            throw std::invalid_argument("scenario: congestion depth must be in (0, 1]");
        }
    }
}

// Standard-normal draw as the sum of twelve 53-bit uniforms minus 6
// (Irwin-Hall): mean 0, variance 1, support [-6, 6]. Uses only additions of
// exactly representable uniforms, so the stream is bit-portable.
double standard_normal(std::mt19937_64& rng) {
    double sum = 0.0;
    for (int k = 0; k < 12; ++k) {
        sum += static_cast<double>(rng() >> 11) * 0x1.0p-53;
    }
    return sum - 6.0;
}

} // namespace

TimeSeries generate(const TrafficScenario& scenario) {
    validate(scenario);
    const std::size_t length =
        static_cast<std::size_t>(scenario.days) * static_cast<std::size_t>(kMinutesPerDay);

    // Daily deterministic template: base plus the periodic bumps, wrapping at
    // midnight via circular minute-of-day distance.
    std::vector<double> daily(kMinutesPerDay, scenario.base_flow);
    for (const PeakSpec& peak : scenario.peaks) {
        for (int m = 0; m < kMinutesPerDay; ++m) {
            double d = std::fabs(static_cast<double>(m) - peak.center_minute);
            d = std::min(d, static_cast<double>(kMinutesPerDay) - d);
            daily[static_cast<std::size_t>(m)] +=
                peak.amplitude * std::exp(-(d * d) / (2.0 * peak.width_minutes * peak.width_minutes));
        }
    }

    std::vector<double> dip(length, 1.0);
    for (const CongestionEvent& event : scenario.congestion_events) {
        for (std::size_t t = event.start_index; t < event.start_index + event.duration; ++t) {
            if (t < length) {
                dip[t] *= 1.0 - event.depth;
            }
        }
    }

    std::mt19937_64 rng(scenario.seed);
    const double innovation_scale = scenario.noise_std * std::sqrt(1.0 - scenario.noise_ar1 * scenario.noise_ar1);
    double noise = scenario.noise_std * standard_normal(rng); // stationary start

    std::vector<double> values;
    values.reserve(length);
    for (std::size_t t = 0; t < length; ++t) {
        if (t > 0) {
            noise = scenario.noise_ar1 * noise + innovation_scale * standard_normal(rng);
        }
        const double flow = (daily[t % kMinutesPerDay] + noise) * dip[t];
        values.push_back(std::max(0.0, flow));
    }
    return TimeSeries(kStartMinute, 1, std::move(values), "veh/min");
}

TrafficScenario reference_scenario() {
    TrafficScenario s;
    s.days = 30;
    s.seed = 20140601;
    s.base_flow = 8.0;
    s.peaks = {
        {480.0, 60.0, 25.0},  // morning rush around 08:00
        {1050.0, 75.0, 30.0}, // evening rush around 17:30
    };
    s.noise_std = 3.0;
    s.noise_ar1 = 0.6;
    s.congestion_events = {
        {9 * 1440 + 950, 120, 0.97},  // day 10, 15:50: near-closure across the evening ramp-up
        {21 * 1440 + 380, 120, 0.97}, // day 22, 06:20: near-closure across the morning ramp-up
    };
    return s;
}

TimeSeries reference_dataset() { return generate(reference_scenario()); }

TrafficScenario periodic_scenario() {
    TrafficScenario s = reference_scenario();
    s.noise_std = 0.0;
    s.noise_ar1 = 0.0;
    s.congestion_events.clear();
    return s;
}

TrafficScenario scenario_from_json(std::string_view text) {
    nlohmann::json j;
    try {
        j = nlohmann::json::parse(text);
    } catch (const nlohmann::json::parse_error& e) {
        throw ParseError(std::string("scenario JSON: ") + e.what());
    }

    try {
        if (!j.contains("seed")) {
            throw ParseError("scenario JSON: missing required field 'seed'");
        }
        if (!j.contains("days") || !j.contains("base_flow")) {
            throw ParseError("scenario JSON: missing required field 'days' or 'base_flow'");
        }
        TrafficScenario s;
        s.days = j.at("days").get<int>();
        s.seed = j.at("seed").get<std::uint64_t>();
        s.base_flow = j.at("base_flow").get<double>();
        s.noise_std = j.value("noise_std", 0.0);
        s.noise_ar1 = j.value("noise_ar1", 0.0);
        for (const auto& p : j.value("peaks", nlohmann::json::array())) {
            s.peaks.push_back({p.at("center_minute").get<double>(),
                               p.at("width_minutes").get<double>(),
                               p.at("amplitude").get<double>()});
        }
        for (const auto& e : j.value("congestion_events", nlohmann::json::array())) {
            s.congestion_events.push_back({e.at("start_index").get<std::size_t>(),
                                           e.at("duration").get<std::size_t>(),
                                           e.at("depth").get<double>()});
        }
        validate(s);
        return s;
    } catch (const nlohmann::json::exception& e) {
        throw ParseError(std::string("scenario JSON: ") + e.what());
    } catch (const std::invalid_argument& e) {
        throw ParseError(std::string("scenario JSON: ") + e.what());
    }
}

std::string scenario_to_json(const TrafficScenario& scenario) {
    nlohmann::ordered_json j;
    j["days"] = scenario.days;
    j["seed"] = scenario.seed;
    j["base_flow"] = scenario.base_flow;
    j["peaks"] = nlohmann::ordered_json::array();
    for (const PeakSpec& p : scenario.peaks) {
        j["peaks"].push_back({{"center_minute", p.center_minute},
                              {"width_minutes", p.width_minutes},
                              {"amplitude", p.amplitude}});
    }
    j["noise_std"] = scenario.noise_std;
    j["noise_ar1"] = scenario.noise_ar1;
    j["congestion_events"] = nlohmann::ordered_json::array();
    for (const CongestionEvent& e : scenario.congestion_events) {
        j["congestion_events"].push_back(
            {{"start_index", e.start_index}, {"duration", e.duration}, {"depth", e.depth}});
    }
    return j.dump(2) + "\n";
}

} // namespace trendcast
