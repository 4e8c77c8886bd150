#include "trendcast/series.hpp"

#include "trendcast/errors.hpp"

#include <charconv>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <istream>
#include <ostream>
#include <sstream>

namespace trendcast {

TimeSeries::TimeSeries(std::int64_t start_minute, int step_minutes, std::vector<double> values,
                       std::string unit_label)
    : start_minute_(start_minute),
      step_minutes_(step_minutes),
      values_(std::move(values)),
      unit_label_(std::move(unit_label)) {
    if (values_.empty()) {
        throw std::invalid_argument("TimeSeries: values must be non-empty");
    }
    if (step_minutes_ < 1) {
        throw std::invalid_argument("TimeSeries: step_minutes must be >= 1");
    }
    for (std::size_t i = 0; i < values_.size(); ++i) {
        if (!std::isfinite(values_[i])) {
            throw std::invalid_argument("TimeSeries: non-finite value at index " +
                                        std::to_string(i));
        }
    }
}

std::span<const double> slice(const TimeSeries& series, Window window) {
    if (window.length == 0) {
        throw BoundsError("slice: window length must be >= 1");
    }
    if (window.end_index >= series.size()) {
        throw BoundsError("slice: end_index " + std::to_string(window.end_index) +
                          " past series end " + std::to_string(series.size() - 1));
    }
    if (window.length > window.end_index + 1) {
        throw BoundsError("slice: window of length " + std::to_string(window.length) +
                          " starts before index 0");
    }
    const std::size_t begin = window.end_index + 1 - window.length;
    return series.view().subspan(begin, window.length);
}

AlignedSeries::AlignedSeries(TimeSeries values, std::size_t first_valid)
    : values_(std::move(values)), first_valid_(first_valid) {}

double AlignedSeries::at(std::size_t parent_index) const {
    if (!valid_at(parent_index)) {
        throw BoundsError("AlignedSeries: index " + std::to_string(parent_index) +
                          " outside valid range [" + std::to_string(first_valid_) + ", " +
                          std::to_string(last_valid()) + "]");
    }
    return values_[parent_index - first_valid_];
}

namespace {

std::string_view trim(std::string_view s) {
    while (!s.empty() && (s.front() == ' ' || s.front() == '\t' || s.front() == '\r')) {
        s.remove_prefix(1);
    }
    while (!s.empty() && (s.back() == ' ' || s.back() == '\t' || s.back() == '\r')) {
        s.remove_suffix(1);
    }
    return s;
}

std::int64_t parse_int_field(std::string_view token, std::size_t line, const char* what) {
    std::int64_t out = 0;
    const auto [ptr, ec] = std::from_chars(token.data(), token.data() + token.size(), out);
    if (ec != std::errc{} || ptr != token.data() + token.size()) {
        throw ParseError(std::string("bad ") + what + " '" + std::string(token) + "'", line);
    }
    return out;
}

} // namespace

std::int64_t parse_minute_timestamp(std::string_view token) {
    token = trim(token);
    if (token.empty()) {
        throw ParseError("empty timestamp");
    }
    const std::size_t t_pos = token.find('T');
    if (t_pos == std::string_view::npos) {
        // integer epoch-minutes
        return parse_int_field(token, 0, "epoch-minute timestamp");
    }
    const std::string_view date = token.substr(0, t_pos);
    const std::string_view time = token.substr(t_pos + 1);
    const std::size_t d1 = date.find('-', 1); // skip a possible leading sign
    const std::size_t d2 = d1 == std::string_view::npos ? d1 : date.find('-', d1 + 1);
    const std::size_t c1 = time.find(':');
    if (d1 == std::string_view::npos || d2 == std::string_view::npos ||
        c1 == std::string_view::npos) {
        throw ParseError("bad ISO timestamp '" + std::string(token) + "'");
    }
    const std::int64_t year = parse_int_field(date.substr(0, d1), 0, "year");
    const std::int64_t month = parse_int_field(date.substr(d1 + 1, d2 - d1 - 1), 0, "month");
    const std::int64_t day = parse_int_field(date.substr(d2 + 1), 0, "day");
    const std::int64_t hour = parse_int_field(time.substr(0, c1), 0, "hour");
    const std::int64_t minute = parse_int_field(time.substr(c1 + 1), 0, "minute");
    if (month < 1 || month > 12 || day < 1 || day > 31 || hour < 0 || hour > 23 || minute < 0 ||
        minute > 59) {
        throw ParseError("bad ISO timestamp '" + std::string(token) + "'");
    }
    const std::chrono::year_month_day ymd{std::chrono::year{static_cast<int>(year)},
                                          std::chrono::month{static_cast<unsigned>(month)},
                                          std::chrono::day{static_cast<unsigned>(day)}};
    if (!ymd.ok()) {
        throw ParseError("bad calendar date '" + std::string(token) + "'");
    }
    const std::int64_t days = std::chrono::sys_days(ymd).time_since_epoch().count();
    return days * 1440 + hour * 60 + minute;
}

std::string format_minute_timestamp(std::int64_t epoch_minute) {
    std::int64_t days = epoch_minute / 1440;
    std::int64_t rem = epoch_minute % 1440;
    if (rem < 0) {
        rem += 1440;
        days -= 1;
    }
    const std::chrono::year_month_day ymd{
        std::chrono::sys_days{std::chrono::days{static_cast<long>(days)}}};
    char buf[32];
    std::snprintf(buf, sizeof buf, "%04d-%02u-%02uT%02lld:%02lld", static_cast<int>(ymd.year()),
                  static_cast<unsigned>(ymd.month()), static_cast<unsigned>(ymd.day()),
                  static_cast<long long>(rem / 60), static_cast<long long>(rem % 60));
    return buf;
}

std::string format_value(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

namespace {

double parse_value_field(std::string_view token, std::size_t line) {
    token = trim(token);
    double out = 0;
    const auto [ptr, ec] =
        std::from_chars(token.data(), token.data() + token.size(), out, std::chars_format::general);
    if (ec != std::errc{} || ptr != token.data() + token.size()) {
        throw ParseError("bad value '" + std::string(token) + "'", line);
    }
    if (!std::isfinite(out)) {
        throw ParseError("non-finite value '" + std::string(token) + "'", line);
    }
    return out;
}

} // namespace

ParsedSeries parse_csv(std::istream& in, const CsvOptions& options) {
    if (options.step_minutes < 1) {
        throw std::invalid_argument("parse_csv: step_minutes must be >= 1");
    }
    if (options.max_gap_samples < 0) {
        throw std::invalid_argument("parse_csv: max_gap_samples must be >= 0");
    }

    std::string line;
    std::size_t line_no = 0;
    if (!std::getline(in, line)) {
        throw ParseError("empty input, expected 'timestamp,value' header", 1);
    }
    ++line_no;
    if (trim(line) != "timestamp,value") {
        throw ParseError("missing 'timestamp,value' header", line_no);
    }

    std::vector<double> values;
    std::size_t interpolated = 0;
    std::int64_t start_minute = 0;
    std::int64_t prev_minute = 0;
    const std::int64_t step = options.step_minutes;

    while (std::getline(in, line)) {
        ++line_no;
        const std::string_view row = trim(line);
        if (row.empty()) {
            continue;
        }
        const std::size_t comma = row.find(',');
        if (comma == std::string_view::npos || row.find(',', comma + 1) != std::string_view::npos) {
            throw ParseError("expected exactly two comma-separated fields", line_no);
        }
        std::int64_t minute;
        try {
            minute = parse_minute_timestamp(row.substr(0, comma));
        } catch (const ParseError& e) {
            throw ParseError(e.what(), line_no);
        }
        const double value = parse_value_field(row.substr(comma + 1), line_no);

        if (values.empty()) {
            start_minute = minute;
        } else {
            if (minute <= prev_minute) {
                throw ParseError("timestamps not strictly increasing (" +
                                     format_minute_timestamp(prev_minute) + " then " +
                                     format_minute_timestamp(minute) + ")",
                                 line_no);
            }
            const std::int64_t diff = minute - prev_minute;
            if (diff % step != 0) {
                throw ParseError("timestamp off the " + std::to_string(step) + "-minute grid",
                                 line_no);
            }
            const std::int64_t missing = diff / step - 1;
            if (missing > options.max_gap_samples) {
                throw ParseError("gap of " + std::to_string(missing) + " samples in (" +
                                     format_minute_timestamp(prev_minute) + ", " +
                                     format_minute_timestamp(minute) +
                                     ") exceeds maximum of " +
                                     std::to_string(options.max_gap_samples),
                                 line_no);
            }
            const double prev_value = values.back();
            for (std::int64_t k = 1; k <= missing; ++k) {
                const double f = static_cast<double>(k) / static_cast<double>(missing + 1);
                values.push_back(prev_value + (value - prev_value) * f);
            }
            interpolated += static_cast<std::size_t>(missing);
        }
        values.push_back(value);
        prev_minute = minute;
    }

    if (values.empty()) {
        throw ParseError("no data rows", line_no);
    }
    return {TimeSeries(start_minute, options.step_minutes, std::move(values)), interpolated};
}

ParsedSeries parse_csv(std::string_view text, const CsvOptions& options) {
    std::istringstream in{std::string(text)};
    return parse_csv(in, options);
}

void emit_csv(const TimeSeries& series, std::ostream& out) {
    out << "timestamp,value\n";
    for (std::size_t i = 0; i < series.size(); ++i) {
        out << format_minute_timestamp(series.minute_at(i)) << ',' << format_value(series[i])
            << '\n';
    }
}

std::string emit_csv(const TimeSeries& series) {
    std::ostringstream out;
    emit_csv(series, out);
    return out.str();
}

} // namespace trendcast
