#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <string_view>
#include <utility>
#include <vector>

#include "fracgrow/fractional_calculus.hpp"
#include "fracgrow/term_algebra.hpp"

namespace fracgrow {

// Constants of the fractional growth model
//   w_t + D_s^beta w = eta w,   w(s, 0) = M e^{r s}.
struct GrowthParams {
    double initial_size;  // M
    double r;             // initial growth rate, in (0, 1)
    double eta;           // growth rate
    FracOrder order;

    void validate() const;
};

// M e^{r s} e^{(eta - r^beta) t}.
double closed_form(const GrowthParams& p, double s, double t);

// The n-th decomposition component (eta - r^beta)^n M e^{r s} t^n/n! as a
// single term (k = 1, t_power = n). The coefficient is accumulated by
// repeated multiplication, matching adm_iterate bit for bit.
TermSum series_term(const GrowthParams& p, std::size_t n);

// series_term(p, 0) + ... + series_term(p, depth).
TermSum series_partial(const GrowthParams& p, std::size_t depth);

// series_partial evaluated at (s, t).
double series_sum(const GrowthParams& p, std::size_t depth, double s, double t);

struct Observation {
    int month;
    double length;
};

// Months strictly increasing and positive, lengths positive and finite.
class ObservationSeries {
public:
    explicit ObservationSeries(std::vector<Observation> points);

    std::span<const Observation> points() const noexcept { return points_; }
    std::size_t size() const noexcept { return points_.size(); }
    std::vector<int> months() const;
    std::vector<double> lengths() const;

private:
    std::vector<Observation> points_;
};

// Growth rate over one interval between consecutive observation months.
struct IntervalRate {
    std::size_t index;  // 1-based
    int from_month;
    int to_month;
    double eta;
};

class EtaSchedule {
public:
    explicit EtaSchedule(std::vector<IntervalRate> rates);

    // Consecutive months first_month, first_month + 1, ...
    static EtaSchedule from_rates(std::span<const double> etas, int first_month = 1);

    std::span<const IntervalRate> rates() const noexcept { return rates_; }
    std::size_t size() const noexcept { return rates_.size(); }
    // All months touched by the schedule, rates().size() + 1 of them.
    std::vector<int> months() const;

    // Copy with the rate ending at `month` replaced. Throws ValidationError if
    // no interval ends there.
    EtaSchedule with_rate_at_month(int month, double eta) const;

private:
    std::vector<IntervalRate> rates_;
};

enum class EtaMode { absolute, specific };

// absolute: (h_{i+1} - h_i) / (t_{i+1} - t_i); specific: that over h_i.
EtaSchedule estimate_eta(const ObservationSeries& obs, EtaMode mode = EtaMode::absolute);

enum class SteppingConvention {
    closed_form_per_row,  // h_m = closed form at s = t = elapsed months, rate ending at m
    cumulative,           // h_{m+1} = h_m exp(r dt + (eta_m - r^beta) dt)
    cumulative_no_age,    // h_{m+1} = h_m exp((eta_m - r^beta) dt)
};

std::string_view to_string(SteppingConvention c);
std::optional<SteppingConvention> parse_convention(std::string_view name);
std::string_view to_string(EtaMode m);
std::optional<EtaMode> parse_eta_mode(std::string_view name);

// Months x orders matrix of predicted sizes, row-major.
struct PredictionGrid {
    std::vector<int> months;
    std::vector<FracOrder> orders;
    std::vector<double> values;
    SteppingConvention convention = SteppingConvention::cumulative;

    double at(std::size_t month_row, std::size_t order_col) const {
        return values[month_row * orders.size() + order_col];
    }
    std::vector<double> column(std::size_t order_col) const;
};

// One prediction column; the building block of both grid kernels.
std::vector<double> predict_column(double initial_size, double r, const EtaSchedule& etas,
                                   FracOrder order, SteppingConvention convention);

// Columns are independent and are filled concurrently.
PredictionGrid predict_table(double initial_size, double r, const EtaSchedule& etas,
                             std::span<const FracOrder> orders,
                             SteppingConvention convention = SteppingConvention::cumulative);

namespace serial {

PredictionGrid predict_table(double initial_size, double r, const EtaSchedule& etas,
                             std::span<const FracOrder> orders,
                             SteppingConvention convention = SteppingConvention::cumulative);

}  // namespace serial

// Months (row >= 2) whose values are not strictly increasing once the columns
// are sorted by ascending order. Empty for every valid model grid.
std::vector<int> rows_violating_order_monotonicity(const PredictionGrid& grid);

struct MonthChange {
    int month;
    double eta;       // rate of the interval ending at this month
    double exponent;  // log(h_m / h_{m-1}); r dt + (eta - r^beta) dt under cumulative stepping
    double change;    // h_m - h_{m-1}
    bool decreases() const noexcept { return change < 0.0; }
};

// Month-over-month behavior of one grid column.
std::vector<MonthChange> month_over_month(const PredictionGrid& grid, const EtaSchedule& etas,
                                          std::size_t order_col);

// Exponent of one cumulative step: r dt + (eta - r^beta) dt.
double cumulative_step_exponent(double r, double eta, FracOrder order, double dt = 1.0);

// (1/n) sum |predicted_i - observed_i|.
double mae(std::span<const double> predicted, std::span<const double> observed);

struct FitResult {
    FracOrder best;
    std::vector<std::pair<FracOrder, double>> scores;  // candidate order, MAE
    PredictionGrid grid;
};

// Scores every candidate order's column against the observations. Ties go
// to the smaller order, then to the earlier candidate.
FitResult fit_order(const ObservationSeries& obs, std::span<const FracOrder> orders, double r,
                    SteppingConvention convention = SteppingConvention::cumulative,
                    EtaMode mode = EtaMode::absolute);

// Cellwise comparison of a grid against reference values of the same shape.
struct DeviationReport {
    SteppingConvention convention;
    std::vector<double> deltas;  // predicted - reference, row-major
    double max_abs = 0.0;
    double mean_abs = 0.0;
    int worst_month = 0;
    double worst_order = 0.0;
};

DeviationReport deviation_from(const PredictionGrid& grid, std::span<const double> reference);

}  // namespace fracgrow
