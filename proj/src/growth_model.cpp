#include "fracgrow/growth_model.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <sstream>
#include <string>

#include "fracgrow/errors.hpp"

namespace fracgrow {

void GrowthParams::validate() const {
    if (!(initial_size > 0.0) || !std::isfinite(initial_size))
        throw DomainError("initial size M must be positive");
    if (!(r > 0.0 && r < 1.0))
        throw DomainError("initial growth rate r must lie in (0, 1)");
    if (!std::isfinite(eta))
        throw DomainError("growth rate eta must be finite");
}

double closed_form(const GrowthParams& p, double s, double t) {
    p.validate();
    return p.initial_size * std::exp(p.r * s) *
           std::exp((p.eta - std::pow(p.r, p.order.value())) * t);
}

TermSum series_term(const GrowthParams& p, std::size_t n) {
    p.validate();
    if (n > default_term_limits.max_t_power)
        throw OverflowError("series_term: n exceeds the time power cap");
    const double rate = p.eta - std::pow(p.r, p.order.value());
    double c = p.initial_size;
    for (std::size_t i = 0; i < n; ++i)
        c *= rate;
    return TermSum::single(c, 1, static_cast<std::uint32_t>(n));
}

TermSum series_partial(const GrowthParams& p, std::size_t depth) {
    TermSum partial;
    for (std::size_t n = 0; n <= depth; ++n)
        partial = term_add(partial, series_term(p, n));
    return partial;
}

double series_sum(const GrowthParams& p, std::size_t depth, double s, double t) {
    return evaluate(series_partial(p, depth), p.r, s, t);
}

// ---------------------------------------------------------------------------

ObservationSeries::ObservationSeries(std::vector<Observation> points) : points_(std::move(points)) {
    if (points_.empty())
        throw ValidationError("observation series is empty");
    for (std::size_t i = 0; i < points_.size(); ++i) {
        const Observation& o = points_[i];
        if (o.month <= 0)
            throw ValidationError("month must be a positive integer, got " + std::to_string(o.month));
        if (!(o.length > 0.0) || !std::isfinite(o.length))
            throw ValidationError("length must be positive at month " + std::to_string(o.month));
        if (i > 0 && o.month <= points_[i - 1].month) {
            if (o.month == points_[i - 1].month)
                throw ValidationError("duplicate month " + std::to_string(o.month));
            throw ValidationError("months must be strictly increasing (month " +
                                  std::to_string(o.month) + " follows " +
                                  std::to_string(points_[i - 1].month) + ")");
        }
    }
}

std::vector<int> ObservationSeries::months() const {
    std::vector<int> out;
    out.reserve(points_.size());
    for (const Observation& o : points_)
        out.push_back(o.month);
    return out;
}

std::vector<double> ObservationSeries::lengths() const {
    std::vector<double> out;
    out.reserve(points_.size());
    for (const Observation& o : points_)
        out.push_back(o.length);
    return out;
}

EtaSchedule::EtaSchedule(std::vector<IntervalRate> rates) : rates_(std::move(rates)) {
    for (std::size_t i = 0; i < rates_.size(); ++i) {
        const IntervalRate& rate = rates_[i];
        if (rate.index != i + 1)
            throw ValidationError("interval indices must run 1, 2, ...");
        if (rate.to_month <= rate.from_month)
            throw ValidationError("interval " + std::to_string(rate.index) + " has no duration");
        if (i > 0 && rate.from_month != rates_[i - 1].to_month)
            throw ValidationError("intervals must be contiguous");
        if (!std::isfinite(rate.eta))
            throw ValidationError("growth rate of interval " + std::to_string(rate.index) +
                                  " is not finite");
    }
}

EtaSchedule EtaSchedule::from_rates(std::span<const double> etas, int first_month) {
    std::vector<IntervalRate> rates;
    rates.reserve(etas.size());
    for (std::size_t i = 0; i < etas.size(); ++i) {
        const int from = first_month + static_cast<int>(i);
        rates.push_back({i + 1, from, from + 1, etas[i]});
    }
    return EtaSchedule(std::move(rates));
}

std::vector<int> EtaSchedule::months() const {
    std::vector<int> out;
    if (rates_.empty())
        return out;
    out.reserve(rates_.size() + 1);
    out.push_back(rates_.front().from_month);
    for (const IntervalRate& rate : rates_)
        out.push_back(rate.to_month);
    return out;
}

EtaSchedule EtaSchedule::with_rate_at_month(int month, double eta) const {
    std::vector<IntervalRate> copy = rates_;
    for (IntervalRate& rate : copy) {
        if (rate.to_month == month) {
            rate.eta = eta;
            return EtaSchedule(std::move(copy));
        }
    }
    throw ValidationError("no growth-rate interval ends at month " + std::to_string(month));
}

EtaSchedule estimate_eta(const ObservationSeries& obs, EtaMode mode) {
    if (obs.size() < 2)
        throw LengthError("estimate_eta needs at least 2 observations");
    const auto pts = obs.points();
    std::vector<IntervalRate> rates;
    rates.reserve(pts.size() - 1);
    for (std::size_t i = 0; i + 1 < pts.size(); ++i) {
        const double dt = static_cast<double>(pts[i + 1].month - pts[i].month);
        double eta = (pts[i + 1].length - pts[i].length) / dt;
        if (mode == EtaMode::specific)
            eta /= pts[i].length;
        rates.push_back({i + 1, pts[i].month, pts[i + 1].month, eta});
    }
    return EtaSchedule(std::move(rates));
}

std::string_view to_string(SteppingConvention c) {
    switch (c) {
        case SteppingConvention::closed_form_per_row: return "closed_form_per_row";
        case SteppingConvention::cumulative: return "cumulative";
        case SteppingConvention::cumulative_no_age: return "cumulative_no_age";
    }
    return "unknown";
}

std::optional<SteppingConvention> parse_convention(std::string_view name) {
    for (auto c : {SteppingConvention::closed_form_per_row, SteppingConvention::cumulative,
                   SteppingConvention::cumulative_no_age})
        if (name == to_string(c))
            return c;
    return std::nullopt;
}

std::string_view to_string(EtaMode m) {
    return m == EtaMode::absolute ? "absolute" : "specific";
}

std::optional<EtaMode> parse_eta_mode(std::string_view name) {
    if (name == "absolute")
        return EtaMode::absolute;
    if (name == "specific")
        return EtaMode::specific;
    return std::nullopt;
}

// ---------------------------------------------------------------------------

std::vector<double> PredictionGrid::column(std::size_t order_col) const {
    std::vector<double> out;
    out.reserve(months.size());
    for (std::size_t m = 0; m < months.size(); ++m)
        out.push_back(at(m, order_col));
    return out;
}

std::vector<double> predict_column(double initial_size, double r, const EtaSchedule& etas,
                                   FracOrder order, SteppingConvention convention) {
    const double decay = std::pow(r, order.value());
    const auto rates = etas.rates();
    std::vector<double> h;
    h.reserve(rates.size() + 1);
    h.push_back(initial_size);

    const int first_month = rates.front().from_month;
    for (const IntervalRate& rate : rates) {
        const double dt = static_cast<double>(rate.to_month - rate.from_month);
        switch (convention) {
            case SteppingConvention::closed_form_per_row: {
                const double elapsed = static_cast<double>(rate.to_month - first_month);
                h.push_back(closed_form({initial_size, r, rate.eta, order}, elapsed, elapsed));
                break;
            }
            case SteppingConvention::cumulative:
                h.push_back(h.back() * std::exp(r * dt + (rate.eta - decay) * dt));
                break;
            case SteppingConvention::cumulative_no_age:
                h.push_back(h.back() * std::exp((rate.eta - decay) * dt));
                break;
        }
    }
    return h;
}

namespace {

void check_table_args(double initial_size, double r, const EtaSchedule& etas,
                      std::span<const FracOrder> orders) {
    if (!(initial_size > 0.0) || !std::isfinite(initial_size))
        throw DomainError("initial size must be positive");
    if (!(r > 0.0 && r < 1.0))
        throw DomainError("initial growth rate r must lie in (0, 1)");
    if (etas.size() == 0)
        throw LengthError("growth-rate schedule is empty");
    if (orders.empty())
        throw LengthError("no fractional orders requested");
}

PredictionGrid empty_grid(const EtaSchedule& etas, std::span<const FracOrder> orders,
                          SteppingConvention convention) {
    PredictionGrid grid;
    grid.months = etas.months();
    grid.orders.assign(orders.begin(), orders.end());
    grid.values.assign(grid.months.size() * orders.size(), 0.0);
    grid.convention = convention;
    return grid;
}

void store_column(PredictionGrid& grid, std::size_t col, const std::vector<double>& h) {
    for (std::size_t m = 0; m < h.size(); ++m)
        grid.values[m * grid.orders.size() + col] = h[m];
}

}  // namespace

PredictionGrid predict_table(double initial_size, double r, const EtaSchedule& etas,
                             std::span<const FracOrder> orders, SteppingConvention convention) {
    check_table_args(initial_size, r, etas, orders);
    PredictionGrid grid = empty_grid(etas, orders, convention);
    const auto count = static_cast<long long>(orders.size());

    // Each column writes a disjoint set of cells.
#pragma omp parallel for schedule(dynamic)
    for (long long j = 0; j < count; ++j)
        store_column(grid, static_cast<std::size_t>(j),
                     predict_column(initial_size, r, etas, orders[j], convention));
    return grid;
}

namespace serial {

PredictionGrid predict_table(double initial_size, double r, const EtaSchedule& etas,
                             std::span<const FracOrder> orders, SteppingConvention convention) {
    check_table_args(initial_size, r, etas, orders);
    PredictionGrid grid = empty_grid(etas, orders, convention);
    for (std::size_t j = 0; j < orders.size(); ++j)
        store_column(grid, j, predict_column(initial_size, r, etas, orders[j], convention));
    return grid;
}

}  // namespace serial

std::vector<int> rows_violating_order_monotonicity(const PredictionGrid& grid) {
    std::vector<std::size_t> by_order(grid.orders.size());
    std::iota(by_order.begin(), by_order.end(), std::size_t{0});
    std::stable_sort(by_order.begin(), by_order.end(),
                     [&](std::size_t a, std::size_t b) { return grid.orders[a] < grid.orders[b]; });

    std::vector<int> bad;
    for (std::size_t m = 1; m < grid.months.size(); ++m) {
        for (std::size_t i = 1; i < by_order.size(); ++i) {
            if (!(grid.at(m, by_order[i - 1]) < grid.at(m, by_order[i]))) {
                bad.push_back(grid.months[m]);
                break;
            }
        }
    }
    return bad;
}

std::vector<MonthChange> month_over_month(const PredictionGrid& grid, const EtaSchedule& etas,
                                          std::size_t order_col) {
    if (etas.size() + 1 != grid.months.size())
        throw LengthError("schedule does not match the grid's months");
    std::vector<MonthChange> out;
    out.reserve(etas.size());
    for (std::size_t m = 1; m < grid.months.size(); ++m) {
        const double prev = grid.at(m - 1, order_col);
        const double cur = grid.at(m, order_col);
        out.push_back({grid.months[m], etas.rates()[m - 1].eta, std::log(cur / prev), cur - prev});
    }
    return out;
}

double cumulative_step_exponent(double r, double eta, FracOrder order, double dt) {
    return r * dt + (eta - std::pow(r, order.value())) * dt;
}

double mae(std::span<const double> predicted, std::span<const double> observed) {
    if (predicted.size() != observed.size())
        throw LengthError("mae: " + std::to_string(predicted.size()) + " predictions vs " +
                          std::to_string(observed.size()) + " observations");
    if (predicted.empty())
        throw LengthError("mae: no values");
    double total = 0.0;
    for (std::size_t i = 0; i < predicted.size(); ++i)
        total += std::fabs(predicted[i] - observed[i]);
    return total / static_cast<double>(predicted.size());
}

FitResult fit_order(const ObservationSeries& obs, std::span<const FracOrder> orders, double r,
                    SteppingConvention convention, EtaMode mode) {
    if (obs.size() < 3)
        throw LengthError("fit_order needs at least 3 observations, got " +
                          std::to_string(obs.size()));
    if (orders.empty())
        throw LengthError("fit_order: no candidate orders");

    const EtaSchedule etas = estimate_eta(obs, mode);
    PredictionGrid grid = predict_table(obs.points().front().length, r, etas, orders, convention);
    const std::vector<double> observed = obs.lengths();

    std::vector<std::pair<FracOrder, double>> scores;
    scores.reserve(orders.size());
    std::size_t best = 0;
    for (std::size_t j = 0; j < orders.size(); ++j) {
        scores.emplace_back(orders[j], mae(grid.column(j), observed));
        const double score = scores[j].second;
        const double best_score = scores[best].second;
        if (score < best_score || (score == best_score && orders[j] < orders[best]))
            best = j;
    }
    return FitResult{orders[best], std::move(scores), std::move(grid)};
}

DeviationReport deviation_from(const PredictionGrid& grid, std::span<const double> reference) {
    if (reference.size() != grid.values.size())
        throw LengthError("reference table has " + std::to_string(reference.size()) +
                          " cells, grid has " + std::to_string(grid.values.size()));
    DeviationReport report;
    report.convention = grid.convention;
    report.deltas.reserve(reference.size());
    double total = 0.0;
    const std::size_t cols = grid.orders.size();
    for (std::size_t i = 0; i < reference.size(); ++i) {
        const double d = grid.values[i] - reference[i];
        report.deltas.push_back(d);
        total += std::fabs(d);
        if (std::fabs(d) > report.max_abs) {
            report.max_abs = std::fabs(d);
            report.worst_month = grid.months[i / cols];
            report.worst_order = grid.orders[i % cols].value();
        }
    }
    report.mean_abs = total / static_cast<double>(reference.size());
    return report;
}

}  // namespace fracgrow
