// trendcast: model-free short-term traffic-flow forecasting toolkit.
//
// Subcommands: synth (generate a scenario CSV), forecast (per-method forecast
// files), eval (squared-error report vs the centered trend), volatility
// (per-scale volatility files and an optional volatility forecast).
//
// Exit codes: 0 success, 1 insufficient data, 2 usage or format error.

#include "trendcast/eval.hpp"
#include "trendcast/errors.hpp"
#include "trendcast/forecast.hpp"
#include "trendcast/series.hpp"
#include "trendcast/synth.hpp"
#include "trendcast/trend.hpp"
#include "trendcast/volatility.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <atomic>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <mutex>
#include <optional>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

namespace fs = std::filesystem;
using namespace trendcast;

namespace {

struct Options {
    std::string input_path;
    std::string synth_path;
    std::vector<std::string> methods = {"pe", "al", "mi"};
    std::vector<int> horizons = {5, 15, 60};
    std::size_t trend_window = 100;
    std::size_t slope_window = 132;
    std::vector<std::size_t> vol_windows = {100, 250, 500};
    double eps = 0.5;
    std::string out_dir = ".";
    bool vol_forecast = false;
    std::string mean_kind; // "causal" or "centered"; empty = command default
    std::vector<int> vol_horizons; // volatility forecast horizon override
};

unsigned thread_cap() {
    if (const char* env = std::getenv("TRENDCAST_THREADS")) {
        const int n = std::atoi(env);
        if (n > 0) {
            return static_cast<unsigned>(n);
        }
    }
    const unsigned hw = std::thread::hardware_concurrency();
    return hw == 0 ? 1 : hw;
}

// Runs fn(0..count-1) on up to TRENDCAST_THREADS workers. Tasks write distinct
// files, so scheduling cannot affect output bytes.
template <typename Fn>
void parallel_for(std::size_t count, Fn&& fn) {
    const std::size_t threads = std::min<std::size_t>(thread_cap(), count);
    if (threads <= 1) {
        for (std::size_t i = 0; i < count; ++i) {
            fn(i);
        }
        return;
    }
    std::atomic<std::size_t> next{0};
    std::exception_ptr error;
    std::mutex error_mutex;
    std::vector<std::thread> pool;
    pool.reserve(threads);
    for (std::size_t t = 0; t < threads; ++t) {
        pool.emplace_back([&] {
            for (;;) {
                const std::size_t i = next.fetch_add(1);
                if (i >= count) {
                    return;
                }
                try {
                    fn(i);
                } catch (...) {
                    const std::lock_guard<std::mutex> guard(error_mutex);
                    if (!error) {
                        error = std::current_exception();
                    }
                }
            }
        });
    }
    for (std::thread& worker : pool) {
        worker.join();
    }
    if (error) {
        std::rethrow_exception(error);
    }
}

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        throw ParseError("cannot open '" + path + "'");
    }
    std::ostringstream buffer;
    buffer << in.rdbuf();
    return buffer.str();
}

// write-then-rename so that readers never observe partial files
void write_file_atomic(const fs::path& path, const std::string& content) {
    fs::path tmp = path;
    tmp += ".tmp";
    {
        std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
        out << content;
        if (!out) {
            throw std::runtime_error("cannot write '" + tmp.string() + "'");
        }
    }
    fs::rename(tmp, path);
}

TimeSeries load_series(const Options& opt) {
    if (!opt.input_path.empty()) {
        std::ifstream in(opt.input_path, std::ios::binary);
        if (!in) {
            throw ParseError("cannot open '" + opt.input_path + "'");
        }
        return parse_csv(in).series;
    }
    if (!opt.synth_path.empty()) {
        return generate(scenario_from_json(read_file(opt.synth_path)));
    }
    throw ParseError("one of --input or --synth is required");
}

std::vector<Method> parse_methods(const std::vector<std::string>& tokens) {
    std::vector<Method> methods;
    for (const std::string& token : tokens) {
        const std::optional<Method> m = method_from_token(token);
        if (!m) {
            throw ParseError("unknown method '" + token + "' (expected pe, al, mi or raw)");
        }
        methods.push_back(*m);
    }
    if (methods.empty()) {
        throw ParseError("no methods selected");
    }
    return methods;
}

std::vector<Horizon> parse_horizons(const std::vector<int>& minutes) {
    std::vector<Horizon> horizons;
    for (const int m : minutes) {
        if (m < 1) {
            throw ParseError("horizons must be positive minutes");
        }
        horizons.push_back(Horizon{m});
    }
    if (horizons.empty()) {
        throw ParseError("no horizons selected");
    }
    return horizons;
}

ForecastParams make_params(const Options& opt) {
    if (opt.trend_window < 2 || opt.slope_window < 2) {
        throw ParseError("windows must be >= 2 samples");
    }
    if (!(opt.eps >= 0.0)) {
        throw ParseError("--eps must be >= 0");
    }
    return ForecastParams{opt.trend_window, opt.slope_window, opt.eps};
}

int cmd_synth(const Options& opt) {
    const TrafficScenario scenario = opt.synth_path.empty()
                                         ? reference_scenario()
                                         : scenario_from_json(read_file(opt.synth_path));
    const TimeSeries series = generate(scenario);
    fs::create_directories(opt.out_dir);
    write_file_atomic(fs::path(opt.out_dir) / "series.csv", emit_csv(series));

    double low = series[0], high = series[0], sum = 0.0;
    for (const double v : series.values()) {
        low = std::min(low, v);
        high = std::max(high, v);
        sum += v;
    }
    std::cout << "wrote " << (fs::path(opt.out_dir) / "series.csv").string() << "\n"
              << "samples: " << series.size() << " (" << scenario.days << " days at "
              << series.step_minutes() << " min)\n"
              << "min/mean/max: " << format_value(low) << " / "
              << format_value(sum / static_cast<double>(series.size())) << " / "
              << format_value(high) << " " << series.unit_label() << "\n";
    return 0;
}

std::string forecast_csv(const ForecastRun& run, const TimeSeries& series,
                         const AlignedSeries& reference) {
    std::ostringstream out;
    out << "t,actual,trend_ref,forecast,valid\n";
    for (std::size_t i = 0; i < run.predicted.size(); ++i) {
        const std::size_t target = i + static_cast<std::size_t>(run.horizon.steps);
        out << format_minute_timestamp(series.minute_at(target)) << ','
            << format_value(series[target]) << ','
            << (reference.valid_at(target) ? format_value(reference.at(target)) : "nan") << ','
            << (run.valid[i] ? format_value(run.predicted[i]) : "nan") << ','
            << (run.valid[i] ? '1' : '0') << '\n';
    }
    return out.str();
}

int cmd_forecast(const Options& opt) {
    const TimeSeries series = load_series(opt);
    const std::vector<Method> methods = parse_methods(opt.methods);
    const std::vector<Horizon> horizons = parse_horizons(opt.horizons);
    const ForecastParams params = make_params(opt);

    const AlignedSeries reference = centered_mean(series, opt.trend_window);
    fs::create_directories(opt.out_dir);

    struct Task {
        Method method;
        Horizon horizon;
    };
    std::vector<Task> tasks;
    for (const Method m : methods) {
        for (const Horizon h : horizons) {
            tasks.push_back({m, h});
        }
    }
    parallel_for(tasks.size(), [&](std::size_t t) {
        const ForecastRun run = run_forecaster(series, tasks[t].method, tasks[t].horizon, params);
        const fs::path file =
            fs::path(opt.out_dir) / ("forecast_" + std::string(method_token(tasks[t].method)) +
                                     "_h" + std::to_string(tasks[t].horizon.steps) + ".csv");
        write_file_atomic(file, forecast_csv(run, series, reference));
    });
    std::cout << "wrote " << tasks.size() << " forecast files to " << opt.out_dir << "\n";
    return 0;
}

int cmd_eval(const Options& opt) {
    const TimeSeries series = load_series(opt);
    EvalOptions options;
    options.methods = parse_methods(opt.methods);
    options.horizons = parse_horizons(opt.horizons);
    options.params = make_params(opt);
    options.reference_window = opt.trend_window;

    const std::vector<EvalReport> reports = build_report(series, options);
    fs::create_directories(opt.out_dir);
    write_file_atomic(fs::path(opt.out_dir) / "report.json", reports_to_json(reports));
    const std::string table = reports_to_table(reports);
    write_file_atomic(fs::path(opt.out_dir) / "report.txt", table);
    std::cout << table;
    const bool has_pe =
        std::find(options.methods.begin(), options.methods.end(),
                  Method::scaled_persistence) != options.methods.end();
    if (!has_pe) {
        std::cout << "(scaled persistence not requested; gains omitted)\n";
    }
    return 0;
}

int cmd_volatility(const Options& opt) {
    const TimeSeries series = load_series(opt);
    if (opt.vol_windows.empty()) {
        throw ParseError("no volatility windows selected");
    }
    if (opt.vol_forecast && opt.mean_kind == "centered") {
        throw ParseError("--forecast needs a causal mean; a centered one is acausal");
    }
    MeanKind kind = MeanKind::centered; // analysis default
    if (opt.mean_kind == "causal" || (opt.vol_forecast && opt.mean_kind.empty())) {
        kind = MeanKind::causal;
    }

    fs::create_directories(opt.out_dir);
    parallel_for(opt.vol_windows.size(), [&](std::size_t i) {
        const VolatilitySeries vol = rolling_volatility(series, opt.vol_windows[i], kind);
        write_file_atomic(fs::path(opt.out_dir) /
                              ("volatility_w" + std::to_string(opt.vol_windows[i]) + ".csv"),
                          volatility_to_csv(vol));
    });
    std::cout << "wrote " << opt.vol_windows.size() << " volatility files to " << opt.out_dir
              << "\n";

    if (opt.vol_forecast) {
        // the middle scale drives the displayed forecast
        std::vector<std::size_t> sorted(opt.vol_windows);
        std::sort(sorted.begin(), sorted.end());
        const std::size_t scale = sorted[sorted.size() / 2];
        const Horizon horizon{opt.vol_horizons.empty() ? 15
                                                       : parse_horizons(opt.vol_horizons)[0].steps};
        const VolatilitySeries vol = rolling_volatility(series, scale, MeanKind::causal);
        const ForecastRun run = forecast_volatility(vol, horizon, make_params(opt));
        write_file_atomic(fs::path(opt.out_dir) / "volatility_forecast.csv",
                          run_to_csv(run, vol.values.series()));
        std::cout << "wrote volatility forecast (window " << scale << ", horizon "
                  << horizon.steps << " min)\n";
    }
    return 0;
}

} // namespace

int main(int argc, char** argv) {
    Options opt;
    CLI::App app{"model-free short-term traffic flow forecasting"};
    app.require_subcommand(1);

    const auto add_io = [&](CLI::App* cmd, bool input_allowed) {
        if (input_allowed) {
            cmd->add_option("--input", opt.input_path, "input series CSV (timestamp,value)");
        }
        cmd->add_option("--synth", opt.synth_path, "scenario JSON to synthesize the input");
        cmd->add_option("--out", opt.out_dir, "output directory")->capture_default_str();
    };

    CLI::App* synth = app.add_subcommand("synth", "generate a synthetic scenario CSV");
    add_io(synth, false);

    CLI::App* forecast = app.add_subcommand("forecast", "write per-method forecast CSVs");
    add_io(forecast, true);
    forecast->add_option("--methods", opt.methods, "comma-separated: pe,al,mi,raw")
        ->delimiter(',')
        ->capture_default_str();
    forecast->add_option("--horizons", opt.horizons, "forecast horizons in minutes")
        ->delimiter(',')
        ->capture_default_str();
    forecast->add_option("--trend-window", opt.trend_window, "trend mean window, samples")
        ->capture_default_str();
    forecast->add_option("--slope-window", opt.slope_window, "slope fit window, samples")
        ->capture_default_str();
    forecast->add_option("--eps", opt.eps, "denominator floor for the scaling ratio")
        ->capture_default_str();

    CLI::App* eval = app.add_subcommand("eval", "squared-error report vs the trend");
    add_io(eval, true);
    eval->add_option("--methods", opt.methods, "comma-separated: pe,al,mi,raw")
        ->delimiter(',')
        ->capture_default_str();
    eval->add_option("--horizons", opt.horizons, "forecast horizons in minutes")
        ->delimiter(',')
        ->capture_default_str();
    eval->add_option("--trend-window", opt.trend_window,
                     "trend mean and reference window, samples")
        ->capture_default_str();
    eval->add_option("--slope-window", opt.slope_window, "slope fit window, samples")
        ->capture_default_str();
    eval->add_option("--eps", opt.eps, "denominator floor for the scaling ratio")
        ->capture_default_str();

    CLI::App* volatility = app.add_subcommand("volatility", "per-scale volatility CSVs");
    add_io(volatility, true);
    volatility->add_option("--vol-windows", opt.vol_windows, "volatility windows, samples")
        ->delimiter(',')
        ->capture_default_str();
    volatility->add_flag("--forecast", opt.vol_forecast,
                         "also forecast the mid-scale causal volatility");
    volatility->add_option("--mean", opt.mean_kind, "causal|centered")
        ->check(CLI::IsMember({"causal", "centered"}));
    volatility->add_option("--horizons", opt.vol_horizons,
                           "volatility forecast horizon (first entry), minutes")
        ->delimiter(',');
    volatility->add_option("--trend-window", opt.trend_window, "trend window for the forecast")
        ->capture_default_str();
    volatility->add_option("--slope-window", opt.slope_window, "slope window for the forecast")
        ->capture_default_str();

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 2;
    }

    try {
        if (synth->parsed()) {
            return cmd_synth(opt);
        }
        if (forecast->parsed()) {
            return cmd_forecast(opt);
        }
        if (eval->parsed()) {
            return cmd_eval(opt);
        }
        if (volatility->parsed()) {
            return cmd_volatility(opt);
        }
    } catch (const InsufficientHistoryError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    } catch (const ParseError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::invalid_argument& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 2;
}
