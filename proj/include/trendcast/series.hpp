#pragma once

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace trendcast {

/// Inclusive index interval [first, last] on a series.
struct IndexRange {
    std::size_t first = 0;
    std::size_t last = 0;

    std::size_t count() const noexcept { return last >= first ? last - first + 1 : 0; }
    bool contains(std::size_t i) const noexcept { return i >= first && i <= last; }
};

/// A regularly sampled real-valued signal. Index i corresponds to the minute
/// start_minute() + i * step_minutes(). Immutable after construction; values
/// are always finite and the series is never empty.
class TimeSeries {
public:
    TimeSeries(std::int64_t start_minute, int step_minutes, std::vector<double> values,
               std::string unit_label = "");

    std::int64_t start_minute() const noexcept { return start_minute_; }
    int step_minutes() const noexcept { return step_minutes_; }
    std::size_t size() const noexcept { return values_.size(); }
    double operator[](std::size_t i) const noexcept { return values_[i]; }
    const std::vector<double>& values() const noexcept { return values_; }
    std::span<const double> view() const noexcept { return values_; }
    const std::string& unit_label() const noexcept { return unit_label_; }

    std::int64_t minute_at(std::size_t i) const noexcept {
        return start_minute_ + static_cast<std::int64_t>(i) * step_minutes_;
    }

    /// Grid and values only; the unit label is an annotation and not compared.
    friend bool operator==(const TimeSeries& a, const TimeSeries& b) {
        return a.start_minute_ == b.start_minute_ && a.step_minutes_ == b.step_minutes_ &&
               a.values_ == b.values_;
    }

private:
    std::int64_t start_minute_;
    int step_minutes_;
    std::vector<double> values_;
    std::string unit_label_;
};

/// A contiguous span of `length` samples ending at `end_index`.
struct Window {
    std::size_t end_index = 0;
    std::size_t length = 1;
};

/// The window's values, oldest first. Zero-copy view into the series.
std::span<const double> slice(const TimeSeries& series, Window window);

/// A series derived from a parent grid, defined only on parent indices
/// [first_valid, last_valid]. Warm-up indices are not stored at all; the
/// compact series() starts at the parent's first valid minute.
class AlignedSeries {
public:
    AlignedSeries(TimeSeries values, std::size_t first_valid);

    const TimeSeries& series() const noexcept { return values_; }
    std::size_t first_valid() const noexcept { return first_valid_; }
    std::size_t last_valid() const noexcept { return first_valid_ + values_.size() - 1; }
    IndexRange valid_range() const noexcept { return {first_valid_, last_valid()}; }

    bool valid_at(std::size_t parent_index) const noexcept {
        return parent_index >= first_valid_ && parent_index <= last_valid();
    }

    /// Value at a parent index; throws BoundsError outside the valid range.
    double at(std::size_t parent_index) const;

private:
    TimeSeries values_;
    std::size_t first_valid_;
};

struct CsvOptions {
    /// Gaps of up to this many missing grid samples are filled by linear
    /// interpolation; longer gaps reject the file.
    int max_gap_samples = 5;
    /// Expected grid step of the file, in minutes.
    int step_minutes = 1;
};

struct ParsedSeries {
    TimeSeries series;
    std::size_t interpolated_count = 0;
};

/// Reads `timestamp,value` CSV. Timestamps must be strictly increasing and on
/// the configured grid; either ISO-8601 minutes (2014-06-01T00:07) or integer
/// epoch-minutes are accepted, per row.
ParsedSeries parse_csv(std::istream& in, const CsvOptions& options = {});
ParsedSeries parse_csv(std::string_view text, const CsvOptions& options = {});

/// Writes `timestamp,value` CSV with ISO-8601 minute timestamps and 17
/// significant digits, so that parse_csv round-trips gap-free series exactly.
void emit_csv(const TimeSeries& series, std::ostream& out);
std::string emit_csv(const TimeSeries& series);

/// ISO-8601 minutes ("2014-06-01T00:07") or integer epoch-minutes.
std::int64_t parse_minute_timestamp(std::string_view token);
std::string format_minute_timestamp(std::int64_t epoch_minute);

/// Shortest-width "%.17g" rendering, stable across runs and locales.
std::string format_value(double v);

} // namespace trendcast
