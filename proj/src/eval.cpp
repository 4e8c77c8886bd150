#include "trendcast/eval.hpp"

#include "trendcast/errors.hpp"
#include "trendcast/trend.hpp"

#include <json.hpp>

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <sstream>
#include <string>

namespace trendcast {

const MethodScore* EvalReport::score_for(Method m) const {
    for (const auto& [method, score] : scores) {
        if (method == m) {
            return &score;
        }
    }
    return nullptr;
}

double sse_vs_trend(const ForecastRun& run, const AlignedSeries& reference,
                    const std::vector<bool>& mask) {
    if (mask.size() != run.predicted.size()) {
        throw std::invalid_argument("sse_vs_trend: mask and run sizes differ");
    }
    const std::size_t dt = static_cast<std::size_t>(run.horizon.steps);
    double sse = 0.0;
    std::size_t used = 0;
    for (std::size_t i = 0; i < mask.size(); ++i) {
        if (!mask[i]) {
            continue;
        }
        if (!run.valid[i]) {
            throw std::invalid_argument("sse_vs_trend: mask includes an invalid forecast at " +
                                        std::to_string(i));
        }
        const double err = run.predicted[i] - reference.at(i + dt);
        sse += err * err;
        ++used;
    }
    if (used == 0) {
        throw InsufficientHistoryError("sse_vs_trend: empty mask");
    }
    return sse;
}

double gain_percent(double sse_pe, double sse_method) {
    if (!(sse_pe > 0.0)) {
        throw std::invalid_argument("gain_percent: scaled-persistence SSE must be positive");
    }
    if (sse_method < 0.0) {
        throw std::invalid_argument("gain_percent: SSE must be non-negative");
    }
    if (sse_method == 0.0) {
        return std::numeric_limits<double>::infinity();
    }
    return (sse_pe / sse_method - 1.0) * 100.0;
}

std::vector<EvalReport> build_report(const TimeSeries& series, const EvalOptions& options) {
    std::vector<EvalReport> reports;
    if (options.horizons.empty() || options.methods.empty()) {
        return reports;
    }
    const AlignedSeries reference = centered_mean(series, options.reference_window);

    for (const Horizon horizon : options.horizons) {
        std::vector<ForecastRun> runs;
        runs.reserve(options.methods.size());
        for (const Method method : options.methods) {
            runs.push_back(run_forecaster(series, method, horizon, options.params));
        }

        const std::size_t dt = static_cast<std::size_t>(horizon.steps);
        std::vector<bool> mask(runs.front().predicted.size(), true);
        for (std::size_t i = 0; i < mask.size(); ++i) {
            bool ok = reference.valid_at(i + dt);
            for (const ForecastRun& run : runs) {
                ok = ok && run.valid[i];
            }
            mask[i] = ok;
        }

        EvalReport report;
        report.horizon = horizon;
        report.reference_window = options.reference_window;
        report.valid_count = static_cast<std::size_t>(std::count(mask.begin(), mask.end(), true));
        if (report.valid_count == 0) {
            throw InsufficientHistoryError(
                "build_report: no jointly valid index at horizon " + std::to_string(horizon.steps));
        }
        report.valid_range = {static_cast<std::size_t>(
                                  std::find(mask.begin(), mask.end(), true) - mask.begin()),
                              mask.size() - 1 -
                                  static_cast<std::size_t>(std::find(mask.rbegin(), mask.rend(),
                                                                     true) -
                                                           mask.rbegin())};

        std::optional<double> sse_pe;
        for (std::size_t m = 0; m < runs.size(); ++m) {
            const double sse = sse_vs_trend(runs[m], reference, mask);
            report.scores.emplace_back(options.methods[m], MethodScore{sse, std::nullopt});
            if (options.methods[m] == Method::scaled_persistence) {
                sse_pe = sse;
            }
        }
        if (sse_pe) {
            for (auto& [method, score] : report.scores) {
                score.gain_percent =
                    method == Method::scaled_persistence ? 0.0 : gain_percent(*sse_pe, score.sse);
            }
        }
        reports.push_back(std::move(report));
    }
    return reports;
}

std::string reports_to_json(std::span<const EvalReport> reports) {
    nlohmann::ordered_json out = nlohmann::ordered_json::array();
    for (const EvalReport& report : reports) {
        nlohmann::ordered_json methods;
        for (const auto& [method, score] : report.scores) {
            nlohmann::ordered_json entry;
            entry["sse"] = score.sse;
            // Scaled persistence is the baseline; its gain is 0 by definition
            // and not repeated in the serialized form.
            if (score.gain_percent && method != Method::scaled_persistence) {
                if (std::isinf(*score.gain_percent)) {
                    entry["gain_percent"] = "infinite";
                } else {
                    entry["gain_percent"] = *score.gain_percent;
                }
            }
            methods[std::string(method_label(method))] = std::move(entry);
        }
        out.push_back({{"horizon_minutes", report.horizon.steps},
                       {"valid_count", report.valid_count},
                       {"methods", std::move(methods)}});
    }
    return out.dump(2) + "\n";
}

namespace {

std::string sse_cell(double sse) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.6g", sse);
    return buf;
}

std::string gain_cell(double sse, const std::optional<double>& gain) {
    std::string cell = sse_cell(sse);
    if (gain) {
        char buf[32];
        if (std::isinf(*gain)) {
            std::snprintf(buf, sizeof buf, " [inf]");
        } else {
            std::snprintf(buf, sizeof buf, " [%.0f%%]", *gain);
        }
        cell += buf;
    }
    return cell;
}

} // namespace

std::string reports_to_table(std::span<const EvalReport> reports) {
    if (reports.empty()) {
        return "";
    }
    std::vector<std::vector<std::string>> rows;
    std::vector<std::string> header{"Horizon"};
    for (const auto& [method, score] : reports.front().scores) {
        std::string title(method_label(method));
        if (score.gain_percent && method != Method::scaled_persistence) {
            title += " [gain %]";
        }
        header.push_back(std::move(title));
    }
    rows.push_back(std::move(header));
    for (const EvalReport& report : reports) {
        std::vector<std::string> row{"t+" + std::to_string(report.horizon.steps) + "min"};
        for (const auto& [method, score] : report.scores) {
            row.push_back(method == Method::scaled_persistence
                              ? sse_cell(score.sse)
                              : gain_cell(score.sse, score.gain_percent));
        }
        rows.push_back(std::move(row));
    }

    std::vector<std::size_t> widths(rows.front().size(), 0);
    for (const auto& row : rows) {
        for (std::size_t c = 0; c < row.size(); ++c) {
            widths[c] = std::max(widths[c], row[c].size());
        }
    }
    std::ostringstream out;
    for (const auto& row : rows) {
        for (std::size_t c = 0; c < row.size(); ++c) {
            out << row[c];
            if (c + 1 < row.size()) {
                out << std::string(widths[c] - row[c].size() + 2, ' ');
            }
        }
        out << '\n';
    }
    return out.str();
}

} // namespace trendcast
