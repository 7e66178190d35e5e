#pragma once

#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "fracgrow/growth_model.hpp"

namespace fracgrow {

// Effective run configuration. Resolution order: built-in defaults, then the
// --config file, then FRACGROW_SERIES_DEPTH, then explicit command-line flags.
struct RunConfig {
    double r = 0.04305;
    std::vector<double> orders{0.5, 0.6, 0.7, 0.8, 0.9, 1.0};
    SteppingConvention convention = SteppingConvention::cumulative;
    EtaMode eta_mode = EtaMode::absolute;
    int series_depth = 25;
    std::optional<double> month8_override;
    std::optional<double> initial_length;
    std::vector<double> etas;  // inline schedule, months 1, 2, ...

    void validate() const;
    std::vector<FracOrder> fractional_orders() const;
};

// key = value lines; '#' starts a comment. Keys: r, orders, convention,
// eta_mode, series_depth, month8_override, initial_length, etas. List values
// are comma separated.
RunConfig parse_config(std::istream& in, const std::string& source, RunConfig base = {});
RunConfig load_config(const std::filesystem::path& path, RunConfig base = {});

// Applies FRACGROW_SERIES_DEPTH when set and non-empty. Throws UsageError on a malformed value.
void apply_environment(RunConfig& config);

// CSV with mandatory header `month,length`.
ObservationSeries parse_observations(std::istream& in, const std::string& source);
ObservationSeries load_observations(const std::filesystem::path& path);

struct Provenance {
    std::string tool = "fracgrow";
    std::string version;
    std::string generated_at;  // UTC, ISO 8601
};

Provenance make_provenance();

struct ResultBundle {
    RunConfig config;
    PredictionGrid grid;
    std::vector<double> etas;      // rate of each interval, in grid month order
    std::vector<double> observed;  // empty without observations
    std::vector<std::pair<double, double>> scores;  // order, MAE
    std::optional<double> best_order;
    Provenance provenance;
};

// Shortest decimal text that parses back to the same double.
std::string format_number(double v);

// Single-line JSON of the resolved configuration, embedded in every output.
std::string config_json(const RunConfig& config);

// Field order: config, grid {months, orders, values}, etas, observed?, scores?,
// best_order?, provenance.
std::string bundle_to_json(const ResultBundle& bundle);
ResultBundle bundle_from_json(std::string_view text);

void write_bundle_json(const ResultBundle& bundle, const std::filesystem::path& path);
ResultBundle read_bundle_json(const std::filesystem::path& path);

// Wide grid: month, eta, one column per order.
void write_grid_csv(const ResultBundle& bundle, std::ostream& out);
// Long format: month, order, predicted, observed (blank without observations).
void write_plot_csv(const ResultBundle& bundle, std::ostream& out);

}  // namespace fracgrow
