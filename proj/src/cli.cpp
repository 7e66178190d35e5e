#include "fracgrow/cli.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <functional>
#include <map>
#include <optional>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"

#include "fracgrow/abalone_reference.hpp"
#include "fracgrow/adm.hpp"
#include "fracgrow/errors.hpp"
#include "fracgrow/fractional_calculus.hpp"
#include "fracgrow/growth_model.hpp"
#include "fracgrow/io.hpp"
#include "fracgrow/special_functions.hpp"

namespace fracgrow {

namespace {

std::string sig15(double v) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.15g", v);
    return buf;
}

struct GlobalOptions {
    std::string config_path;
    std::string json_path;
    std::string csv_path;
    std::string plot_path;
    std::optional<double> correct_month8;
};

struct ModelOptions {
    std::optional<double> r;
    std::vector<double> orders;
    std::optional<std::string> convention;
    std::optional<std::string> eta_mode;
    std::optional<double> initial_length;
    std::vector<double> etas;
    std::optional<int> series_depth;
};

void add_model_options(CLI::App& cmd, ModelOptions& m) {
    cmd.add_option("--r", m.r, "Initial growth rate r in (0,1)");
    cmd.add_option("--orders", m.orders, "Fractional orders, comma separated")->delimiter(',');
    cmd.add_option("--convention", m.convention,
                   "Stepping convention: cumulative | closed_form_per_row | cumulative_no_age");
    cmd.add_option("--eta-mode", m.eta_mode, "Growth-rate estimate: absolute | specific");
    cmd.add_option("--initial-length", m.initial_length, "Initial length M");
    cmd.add_option("--etas", m.etas, "Inline growth-rate schedule for months 2, 3, ...")
        ->delimiter(',');
    cmd.add_option("--series-depth", m.series_depth, "Series truncation depth");
}

// Defaults, then config file, then environment, then flags.
RunConfig resolve_config(const GlobalOptions& g, const ModelOptions& m) {
    RunConfig config;
    if (!g.config_path.empty())
        config = load_config(g.config_path, config);
    apply_environment(config);
    if (m.r)
        config.r = *m.r;
    if (!m.orders.empty())
        config.orders = m.orders;
    if (m.convention) {
        const auto c = parse_convention(*m.convention);
        if (!c)
            throw UsageError("unknown convention '" + *m.convention + "'");
        config.convention = *c;
    }
    if (m.eta_mode) {
        const auto e = parse_eta_mode(*m.eta_mode);
        if (!e)
            throw UsageError("unknown eta mode '" + *m.eta_mode + "'");
        config.eta_mode = *e;
    }
    if (m.initial_length)
        config.initial_length = *m.initial_length;
    if (!m.etas.empty())
        config.etas = m.etas;
    if (m.series_depth)
        config.series_depth = *m.series_depth;
    if (g.correct_month8)
        config.month8_override = *g.correct_month8;
    try {
        config.validate();
    } catch (const ValidationError& e) {
        throw UsageError(e.what());
    }
    return config;
}

void emit_files(const GlobalOptions& g, const ResultBundle& bundle, std::ostream& out) {
    if (!g.json_path.empty()) {
        write_bundle_json(bundle, g.json_path);
        out << "wrote " << g.json_path << "\n";
    }
    auto write_csv = [&](const std::string& path, auto writer) {
        std::ofstream f(path);
        if (!f)
            throw Error("cannot write " + path);
        writer(bundle, f);
        out << "wrote " << path << "\n";
    };
    if (!g.csv_path.empty())
        write_csv(g.csv_path, write_grid_csv);
    if (!g.plot_path.empty())
        write_csv(g.plot_path, write_plot_csv);
}

void print_grid(const PredictionGrid& grid, const std::vector<double>& etas, std::ostream& out) {
    out << "month       eta";
    for (const FracOrder& o : grid.orders) {
        char head[32];
        std::snprintf(head, sizeof head, "  %8s", ("h_" + format_number(o.value())).c_str());
        out << head;
    }
    out << "\n";
    for (std::size_t m = 0; m < grid.months.size(); ++m) {
        char lead[64];
        if (m == 0)
            std::snprintf(lead, sizeof lead, "%5d  %8s", grid.months[m], "-");
        else
            std::snprintf(lead, sizeof lead, "%5d  %8.4f", grid.months[m], etas[m - 1]);
        out << lead;
        for (std::size_t k = 0; k < grid.orders.size(); ++k) {
            char cell[32];
            std::snprintf(cell, sizeof cell, "  %8.4f", grid.at(m, k));
            out << cell;
        }
        out << "\n";
    }
}

void print_month_changes(const PredictionGrid& grid, const EtaSchedule& etas, std::ostream& out) {
    out << "month-over-month check:\n";
    for (std::size_t k = 0; k < grid.orders.size(); ++k) {
        const auto changes = month_over_month(grid, etas, k);
        bool any = false;
        out << "  beta=" << format_number(grid.orders[k].value()) << ":";
        for (const MonthChange& c : changes) {
            if (!c.decreases())
                continue;
            out << " decrease at month " << c.month << " (eta=" << format_number(c.eta)
                << ", exponent=" << sig15(c.exponent) << ");";
            any = true;
        }
        if (!any)
            out << " increasing every month";
        out << "\n";
    }
}

void print_deviation(double initial, double r, const EtaSchedule& etas,
                     const std::vector<FracOrder>& orders, std::ostream& out) {
    const std::vector<int> months = etas.months();
    bool matches = months.size() == abalone::lengths.size() && orders.size() == abalone::orders.size();
    for (std::size_t k = 0; matches && k < orders.size(); ++k)
        matches = orders[k].value() == abalone::orders[k];
    if (!matches)
        throw UsageError("--deviation needs a 24-month schedule and orders 0.5,0.6,0.7,0.8,0.9,1");

    const auto reference = abalone::flat_lengths();
    out << "deviation from the reference abalone table (predicted - reference):\n";
    out << "  convention            max_abs     mean_abs    worst cell         month2 beta=1\n";
    for (auto c : {SteppingConvention::cumulative, SteppingConvention::closed_form_per_row,
                   SteppingConvention::cumulative_no_age}) {
        const PredictionGrid grid = predict_table(initial, r, etas, orders, c);
        const DeviationReport rep = deviation_from(grid, reference);
        char line[200];
        std::snprintf(line, sizeof line, "  %-20s  %-10.6f  %-10.6f  m=%-2d beta=%-4s    %.4f vs %.4f\n",
                      std::string(to_string(c)).c_str(), rep.max_abs, rep.mean_abs, rep.worst_month,
                      format_number(rep.worst_order).c_str(), grid.at(1, orders.size() - 1),
                      abalone::lengths[1][5]);
        out << line;
    }
}

// --- subcommands -----------------------------------------------------------

struct PredictOptions {
    std::string obs_path;
    bool reference_etas = false;
    bool deviation = false;
};

int cmd_predict(const GlobalOptions& g, const ModelOptions& m, const PredictOptions& p,
                std::ostream& out) {
    ResultBundle bundle;
    bundle.config = resolve_config(g, m);
    RunConfig& config = bundle.config;

    std::optional<ObservationSeries> obs;
    std::optional<EtaSchedule> schedule;
    double initial = 0.0;
    if (!p.obs_path.empty()) {
        obs = load_observations(p.obs_path);
        if (obs->size() < 2)
            throw LengthError("predict needs at least 2 observations");
        schedule = estimate_eta(*obs, config.eta_mode);
        initial = config.initial_length.value_or(obs->points().front().length);
    } else if (!config.etas.empty()) {
        schedule = EtaSchedule::from_rates(config.etas);
        if (!config.initial_length)
            throw UsageError("an inline eta schedule needs initial_length");
        initial = *config.initial_length;
    } else if (p.reference_etas) {
        config.etas.assign(abalone::eta_column.begin(), abalone::eta_column.end());
        if (!config.initial_length)
            config.initial_length = abalone::initial_length;
        schedule = EtaSchedule::from_rates(config.etas);
        initial = *config.initial_length;
    } else {
        throw UsageError("predict needs --obs, an inline eta schedule, or --reference-etas");
    }
    if (config.month8_override)
        schedule = schedule->with_rate_at_month(abalone::suspect_month, *config.month8_override);

    const std::vector<FracOrder> orders = config.fractional_orders();
    bundle.grid = predict_table(initial, config.r, *schedule, orders, config.convention);
    for (const IntervalRate& rate : schedule->rates())
        bundle.etas.push_back(rate.eta);

    out << "# convention=" << to_string(config.convention) << " r=" << format_number(config.r)
        << " M=" << format_number(initial) << "\n";
    print_grid(bundle.grid, bundle.etas, out);

    if (obs) {
        bundle.observed = obs->lengths();
        out << "MAE by order:\n";
        for (std::size_t k = 0; k < orders.size(); ++k) {
            const double score = mae(bundle.grid.column(k), bundle.observed);
            bundle.scores.emplace_back(orders[k].value(), score);
            out << "  beta=" << format_number(orders[k].value()) << "  " << sig15(score) << "\n";
        }
    }
    print_month_changes(bundle.grid, *schedule, out);
    if (p.deviation)
        print_deviation(initial, config.r, *schedule, orders, out);

    bundle.provenance = make_provenance();
    emit_files(g, bundle, out);
    return kExitOk;
}

int cmd_fit(const GlobalOptions& g, const ModelOptions& m, const std::string& obs_path,
            std::ostream& out) {
    ResultBundle bundle;
    bundle.config = resolve_config(g, m);
    const ObservationSeries obs = load_observations(obs_path);
    const std::vector<FracOrder> orders = bundle.config.fractional_orders();
    const FitResult fit =
        fit_order(obs, orders, bundle.config.r, bundle.config.convention, bundle.config.eta_mode);

    bundle.grid = fit.grid;
    bundle.observed = obs.lengths();
    for (const IntervalRate& rate : estimate_eta(obs, bundle.config.eta_mode).rates())
        bundle.etas.push_back(rate.eta);
    out << "order  MAE\n";
    for (const auto& [order, score] : fit.scores) {
        bundle.scores.emplace_back(order.value(), score);
        out << format_number(order.value()) << "  " << sig15(score) << "\n";
    }
    bundle.best_order = fit.best.value();
    out << "best order: " << format_number(fit.best.value()) << "\n";
    bundle.provenance = make_provenance();
    emit_files(g, bundle, out);
    return kExitOk;
}

struct SpecialOptions {
    std::string function;
    std::optional<double> x, alpha, z;
    double beta = 1.0;
    double tol = 1e-15;
    std::size_t max_terms = 500;
};

int cmd_special(const SpecialOptions& o, std::ostream& out) {
    auto need = [](const std::optional<double>& v, const char* flag) {
        if (!v)
            throw UsageError(std::string("missing ") + flag);
        return *v;
    };
    const SeriesBudget budget{o.tol, o.max_terms};
    if (o.function == "gamma") {
        out << sig15(gamma(need(o.x, "--x"))) << "\n";
    } else if (o.function == "ml") {
        out << sig15(mittag_leffler(need(o.alpha, "--alpha"), need(o.z, "--z"), budget)) << "\n";
    } else if (o.function == "ml2") {
        out << sig15(mittag_leffler2(MLParams(need(o.alpha, "--alpha"), o.beta), need(o.z, "--z"), budget))
            << "\n";
    } else {
        throw UsageError("special: unknown function '" + o.function + "' (gamma | ml | ml2)");
    }
    return kExitOk;
}

struct CaputoOptions {
    std::string rule = "exact";
    bool compare = false;
    double beta = 0.5;
    double r = 0.04305;
    double s = 1.0;
    double scale = 1.0;
    std::string function = "exp";
    double gamma_exp = 1.0;
    double lower = 0.0;
    std::size_t nodes = 4096;
    double grading = 2.0;
};

int cmd_caputo(const CaputoOptions& o, std::ostream& out) {
    const FracOrder order(o.beta);
    const QuadratureSpec q{o.nodes, o.grading};

    std::map<std::string, std::function<double()>> rules;
    if (o.function == "exp") {
        rules["paper"] = [&] { return caputo_exp_paper_rule(order, o.r, o.scale, o.s); };
        rules["exact"] = [&] { return o.scale * caputo_exp_exact(order, o.r, o.s); };
        if (!order.is_integer())
            rules["numeric"] = [&] {
                const double r = o.r, scale = o.scale;
                return caputo_numeric(order, [r, scale](double xi) { return scale * r * std::exp(r * xi); },
                                      o.s, q);
            };
    } else if (o.function == "power") {
        const PowerFunction p(o.gamma_exp, o.lower);
        rules["exact"] = [&, p] { return o.scale * caputo_power(order, p, o.s); };
        if (!order.is_integer() && (o.gamma_exp == 0.0 || o.gamma_exp >= 1.0))
            rules["numeric"] = [&] {
                const double g = o.gamma_exp, scale = o.scale;
                if (!(o.s > o.lower))
                    throw DomainError("caputo: s must exceed the lower terminal");
                return caputo_numeric(
                    order,
                    [g, scale](double xi) { return g == 0.0 ? 0.0 : scale * g * std::pow(xi, g - 1.0); },
                    o.s - o.lower, q);
            };
    } else {
        throw UsageError("caputo: unknown function '" + o.function + "' (exp | power)");
    }

    if (!o.compare) {
        const auto it = rules.find(o.rule);
        if (it == rules.end()) {
            if (o.rule == "paper" || o.rule == "exact" || o.rule == "numeric")
                throw DomainError("caputo: rule '" + o.rule + "' does not apply to this function/order");
            throw UsageError("caputo: unknown rule '" + o.rule + "' (paper | exact | numeric)");
        }
        out << sig15(it->second()) << "\n";
        return kExitOk;
    }

    std::map<std::string, double> values;
    for (const char* name : {"paper", "exact", "numeric"}) {
        const auto it = rules.find(name);
        if (it == rules.end())
            continue;
        values[name] = it->second();
        char line[96];
        std::snprintf(line, sizeof line, "%-8s %.15g\n", name, values[name]);
        out << line;
    }
    const double exact = values.at("exact");
    for (const char* name : {"paper", "numeric"}) {
        const auto it = values.find(name);
        if (it == values.end())
            continue;
        const double abs_diff = std::fabs(it->second - exact);
        out << name << " vs exact: abs_diff=" << sig15(abs_diff)
            << " rel_diff=" << sig15(exact != 0.0 ? abs_diff / std::fabs(exact) : abs_diff) << "\n";
    }
    return kExitOk;
}

struct SeriesOptions {
    double initial = abalone::initial_length;
    std::optional<double> r;
    double eta = 0.0;
    double beta = 1.0;
    std::optional<int> depth;
    std::optional<double> s, t;
    std::string nonlinear;
};

PolynomialNonlinearity parse_nonlinearity(const std::string& spec) {
    std::map<std::uint32_t, double> coeffs;
    if (spec.empty())
        return {};
    std::stringstream ss(spec);
    std::string item;
    while (std::getline(ss, item, ',')) {
        const auto colon = item.find(':');
        if (colon == std::string::npos)
            throw UsageError("--nonlinear expects power:coeff pairs, got '" + item + "'");
        try {
            const int power = std::stoi(item.substr(0, colon));
            if (power < 1)
                throw UsageError("--nonlinear powers must be >= 1");
            coeffs[static_cast<std::uint32_t>(power)] += std::stod(item.substr(colon + 1));
        } catch (const std::logic_error&) {
            throw UsageError("--nonlinear: cannot parse '" + item + "'");
        }
    }
    return PolynomialNonlinearity(std::move(coeffs));
}

int cmd_series(const GlobalOptions& g, const SeriesOptions& o, std::ostream& out) {
    RunConfig config = resolve_config(g, {});
    const double r = o.r.value_or(config.r);
    const int depth = o.depth.value_or(config.series_depth);
    if (depth < 0 || depth > static_cast<int>(default_term_limits.max_t_power))
        throw UsageError("series depth must lie in [0, 64]");

    AdmProblem problem{TermSum::single(o.initial, 1, 0), FracOrder(o.beta), r, o.eta,
                       parse_nonlinearity(o.nonlinear), {}};
    const GrowthParams params{o.initial, r, o.eta, FracOrder(o.beta)};
    params.validate();
    const auto w = adm_iterate(problem, static_cast<std::size_t>(depth));

    out << "# w_n = sum of coeff * exp(k*r*s) * t^n/n!\n";
    out << "n  coeff  k  t_power\n";
    TermSum partial;
    for (std::size_t n = 0; n < w.size(); ++n) {
        for (const SeriesTerm& term : w[n].terms())
            out << n << "  " << sig15(term.coeff) << "  " << term.exp_mult << "  " << term.t_power << "\n";
        partial = term_add(partial, w[n]);
    }
    if (o.s || o.t) {
        const double s = o.s.value_or(0.0), t = o.t.value_or(0.0);
        const double value = evaluate(partial, r, s, t);
        out << "partial_sum " << sig15(value) << "\n";
        if (problem.nonlinearity.empty()) {
            const double exact = closed_form(params, s, t);
            out << "closed_form " << sig15(exact) << "\n";
            out << "rel_diff " << sig15(std::fabs(value - exact) / std::fabs(exact)) << "\n";
        }
    }
    return kExitOk;
}

int cmd_plot(const GlobalOptions& g, const std::string& bundle_path, std::ostream& out) {
    const ResultBundle bundle = read_bundle_json(bundle_path);
    if (g.plot_path.empty()) {
        write_plot_csv(bundle, out);
    } else {
        std::ofstream f(g.plot_path);
        if (!f)
            throw Error("cannot write " + g.plot_path);
        write_plot_csv(bundle, f);
    }
    return kExitOk;
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"fracgrow: fractional growth model toolkit", "fracgrow"};
    app.fallthrough();
    app.require_subcommand(1);

    GlobalOptions g;
    app.add_option("--config", g.config_path, "key=value configuration file");
    app.add_option("--json", g.json_path, "Write the result bundle as JSON");
    app.add_option("--csv", g.csv_path, "Write the prediction grid as CSV");
    app.add_option("--plot", g.plot_path, "Write long-format plot data as CSV");
    app.add_option("--correct-month8", g.correct_month8, "Replace the growth rate ending at month 8");

    ModelOptions predict_model;
    PredictOptions predict_opts;
    auto* predict = app.add_subcommand("predict", "Build the months x orders prediction grid");
    add_model_options(*predict, predict_model);
    predict->add_option("--obs", predict_opts.obs_path, "Observation CSV (month,length)");
    predict->add_flag("--reference-etas", predict_opts.reference_etas,
                      "Use the built-in abalone growth-rate column and M=0.5322");
    predict->add_flag("--deviation", predict_opts.deviation,
                      "Report deviations from the reference abalone table for every convention");

    ModelOptions fit_model;
    std::string fit_obs;
    auto* fit = app.add_subcommand("fit", "Select the fractional order with the lowest MAE");
    add_model_options(*fit, fit_model);
    fit->add_option("--obs", fit_obs, "Observation CSV (month,length)")->required();

    SpecialOptions special_opts;
    auto* special = app.add_subcommand("special", "Gamma and Mittag-Leffler functions");
    special->add_option("function", special_opts.function, "gamma | ml | ml2")->required();
    special->add_option("--x", special_opts.x, "Gamma argument");
    special->add_option("--alpha", special_opts.alpha, "Mittag-Leffler alpha");
    special->add_option("--beta", special_opts.beta, "Mittag-Leffler second parameter");
    special->add_option("--z", special_opts.z, "Mittag-Leffler argument");
    special->add_option("--tol", special_opts.tol, "Relative truncation threshold");
    special->add_option("--max-terms", special_opts.max_terms, "Series term cap");

    CaputoOptions caputo_opts;
    auto* caputo = app.add_subcommand("caputo", "Caputo derivative of e^{rs} or (s-a)^g");
    caputo->add_option("--rule", caputo_opts.rule, "paper | exact | numeric");
    caputo->add_flag("--compare", caputo_opts.compare, "Print every applicable rule side by side");
    caputo->add_option("--beta", caputo_opts.beta, "Fractional order in (0,1]");
    caputo->add_option("--r", caputo_opts.r, "Exponential rate r > 0");
    caputo->add_option("--s", caputo_opts.s, "Evaluation point");
    caputo->add_option("--scale", caputo_opts.scale, "Constant factor");
    caputo->add_option("--function", caputo_opts.function, "exp | power");
    caputo->add_option("--gamma-exp", caputo_opts.gamma_exp, "Power exponent g");
    caputo->add_option("--lower", caputo_opts.lower, "Lower terminal a of the power function");
    caputo->add_option("--nodes", caputo_opts.nodes, "Quadrature subintervals");
    caputo->add_option("--grading", caputo_opts.grading, "Mesh grading exponent");

    SeriesOptions series_opts;
    auto* series = app.add_subcommand("series", "Dump decomposition terms of the growth model");
    series->add_option("--initial-length", series_opts.initial, "Initial size M");
    series->add_option("--r", series_opts.r, "Initial growth rate r");
    series->add_option("--eta", series_opts.eta, "Growth rate eta");
    series->add_option("--beta", series_opts.beta, "Fractional order");
    series->add_option("--depth", series_opts.depth, "Number of components after w_0");
    series->add_option("--s", series_opts.s, "Evaluate partial sum at this s");
    series->add_option("--t", series_opts.t, "Evaluate partial sum at this t");
    series->add_option("--nonlinear", series_opts.nonlinear, "Polynomial N(w) as power:coeff,...");

    std::string plot_bundle;
    auto* plot = app.add_subcommand("plot", "Regenerate plot data from a JSON result bundle");
    plot->add_option("--bundle", plot_bundle, "Result bundle JSON")->required();

    std::vector<const char*> argv{"fracgrow"};
    for (const std::string& a : args)
        argv.push_back(a.c_str());

    try {
        app.parse(static_cast<int>(argv.size()), argv.data());
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e, out, err);
        return code == 0 ? kExitOk : kExitUsage;
    }

    try {
        if (predict->parsed())
            return cmd_predict(g, predict_model, predict_opts, out);
        if (fit->parsed())
            return cmd_fit(g, fit_model, fit_obs, out);
        if (special->parsed())
            return cmd_special(special_opts, out);
        if (caputo->parsed())
            return cmd_caputo(caputo_opts, out);
        if (series->parsed())
            return cmd_series(g, series_opts, out);
        if (plot->parsed())
            return cmd_plot(g, plot_bundle, out);
    } catch (const UsageError& e) {
        err << "usage error: " << e.what() << "\n";
        return kExitUsage;
    } catch (const Error& e) {
        err << "error: " << e.what() << "\n";
        return kExitDomain;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << "\n";
        return kExitDomain;
    }
    return kExitUsage;
}

}  // namespace fracgrow
