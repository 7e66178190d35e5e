#include "fracgrow/io.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <chrono>
#include <cmath>
#include <cstdlib>
#include <ctime>
#include <fstream>
#include <sstream>

#include "json.hpp"

#include "fracgrow/errors.hpp"

#ifndef FRACGROW_VERSION
#define FRACGROW_VERSION "0.0.0"
#endif

namespace fracgrow {

using json = nlohmann::ordered_json;

namespace {

std::string_view trim(std::string_view s) {
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front())))
        s.remove_prefix(1);
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back())))
        s.remove_suffix(1);
    return s;
}

std::optional<double> parse_double(std::string_view s) {
    s = trim(s);
    if (!s.empty() && s.front() == '+')
        s.remove_prefix(1);
    double v = 0.0;
    const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
    if (ec != std::errc() || ptr != s.data() + s.size() || s.empty() || !std::isfinite(v))
        return std::nullopt;
    return v;
}

std::optional<int> parse_int(std::string_view s) {
    s = trim(s);
    int v = 0;
    const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
    if (ec != std::errc() || ptr != s.data() + s.size() || s.empty())
        return std::nullopt;
    return v;
}

std::vector<std::string_view> split(std::string_view s, char sep) {
    std::vector<std::string_view> out;
    std::size_t start = 0;
    while (true) {
        const std::size_t pos = s.find(sep, start);
        out.push_back(s.substr(start, pos - start));
        if (pos == std::string_view::npos)
            break;
        start = pos + 1;
    }
    return out;
}

std::optional<std::vector<double>> parse_list(std::string_view s) {
    std::vector<double> out;
    if (trim(s).empty())
        return out;
    for (std::string_view item : split(s, ',')) {
        const auto v = parse_double(item);
        if (!v)
            return std::nullopt;
        out.push_back(*v);
    }
    return out;
}

std::string normalize_name(std::string_view s) {
    std::string out(trim(s));
    for (char& c : out) {
        c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
        if (c == '-')
            c = '_';
    }
    return out;
}

}  // namespace

// ---------------------------------------------------------------------------

void RunConfig::validate() const {
    if (!(r > 0.0 && r < 1.0))
        throw ValidationError("r must lie in (0, 1)");
    if (orders.empty())
        throw ValidationError("at least one fractional order is required");
    for (double b : orders)
        if (!(b > 0.0 && b <= 1.0))
            throw ValidationError("fractional order " + format_number(b) + " outside (0, 1]");
    if (series_depth < 1 || series_depth > static_cast<int>(default_term_limits.max_t_power))
        throw ValidationError("series_depth must lie in [1, 64]");
    if (initial_length && !(*initial_length > 0.0))
        throw ValidationError("initial_length must be positive");
}

std::vector<FracOrder> RunConfig::fractional_orders() const {
    std::vector<FracOrder> out;
    out.reserve(orders.size());
    for (double b : orders)
        out.emplace_back(b);
    return out;
}

RunConfig parse_config(std::istream& in, const std::string& source, RunConfig base) {
    RunConfig config = std::move(base);
    std::string raw;
    std::size_t line_no = 0;
    while (std::getline(in, raw)) {
        ++line_no;
        std::string_view line = raw;
        if (const auto hash = line.find('#'); hash != std::string_view::npos)
            line = line.substr(0, hash);
        line = trim(line);
        if (line.empty())
            continue;
        const auto eq = line.find('=');
        if (eq == std::string_view::npos)
            throw ParseError(source, line_no, "expected key = value");
        const std::string key = normalize_name(line.substr(0, eq));
        const std::string_view value = trim(line.substr(eq + 1));
        auto bad = [&](const std::string& what) { return ParseError(source, line_no, what); };

        if (key == "r") {
            const auto v = parse_double(value);
            if (!v)
                throw bad("r: not a number");
            config.r = *v;
        } else if (key == "orders") {
            const auto v = parse_list(value);
            if (!v || v->empty())
                throw bad("orders: expected a comma-separated list of numbers");
            config.orders = *v;
        } else if (key == "convention") {
            const auto c = parse_convention(normalize_name(value));
            if (!c)
                throw bad("convention: expected closed_form_per_row, cumulative or cumulative_no_age");
            config.convention = *c;
        } else if (key == "eta_mode") {
            const auto m = parse_eta_mode(normalize_name(value));
            if (!m)
                throw bad("eta_mode: expected absolute or specific");
            config.eta_mode = *m;
        } else if (key == "series_depth") {
            const auto v = parse_int(value);
            if (!v)
                throw bad("series_depth: not an integer");
            config.series_depth = *v;
        } else if (key == "month8_override") {
            const auto v = parse_double(value);
            if (!v)
                throw bad("month8_override: not a number");
            config.month8_override = *v;
        } else if (key == "initial_length") {
            const auto v = parse_double(value);
            if (!v)
                throw bad("initial_length: not a number");
            config.initial_length = *v;
        } else if (key == "etas") {
            const auto v = parse_list(value);
            if (!v)
                throw bad("etas: expected a comma-separated list of numbers");
            config.etas = *v;
        } else {
            throw bad("unknown key '" + key + "'");
        }
    }
    return config;
}

RunConfig load_config(const std::filesystem::path& path, RunConfig base) {
    std::ifstream in(path);
    if (!in)
        throw Error("cannot open config file " + path.string());
    return parse_config(in, path.string(), std::move(base));
}

void apply_environment(RunConfig& config) {
    const char* depth = std::getenv("FRACGROW_SERIES_DEPTH");
    if (depth == nullptr || *depth == '\0')
        return;
    const auto v = parse_int(depth);
    if (!v || *v < 1)
        throw UsageError(std::string("FRACGROW_SERIES_DEPTH must be a positive integer, got '") +
                         depth + "'");
    config.series_depth = *v;
}

ObservationSeries parse_observations(std::istream& in, const std::string& source) {
    std::string raw;
    std::size_t line_no = 0;
    bool header_seen = false;
    std::vector<Observation> points;
    while (std::getline(in, raw)) {
        ++line_no;
        const std::string_view line = trim(raw);
        if (line.empty())
            continue;
        if (!header_seen) {
            const auto cols = split(line, ',');
            if (cols.size() != 2 || normalize_name(cols[0]) != "month" ||
                normalize_name(cols[1]) != "length")
                throw ParseError(source, line_no, "expected header 'month,length'");
            header_seen = true;
            continue;
        }
        const auto cols = split(line, ',');
        if (cols.size() != 2)
            throw ParseError(source, line_no, "expected 2 fields, got " + std::to_string(cols.size()));
        const auto month = parse_int(cols[0]);
        if (!month)
            throw ParseError(source, line_no, "month is not an integer: '" + std::string(trim(cols[0])) + "'");
        const auto length = parse_double(cols[1]);
        if (!length)
            throw ParseError(source, line_no, "length is not a number: '" + std::string(trim(cols[1])) + "'");
        points.push_back({*month, *length});
    }
    if (!header_seen)
        throw ParseError(source, line_no, "missing header 'month,length'");
    try {
        return ObservationSeries(std::move(points));
    } catch (const ValidationError& e) {
        throw ValidationError(source + ": " + e.what());
    }
}

ObservationSeries load_observations(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in)
        throw Error("cannot open observation file " + path.string());
    return parse_observations(in, path.string());
}

// ---------------------------------------------------------------------------

Provenance make_provenance() {
    const std::time_t now = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
    std::tm utc{};
    gmtime_r(&now, &utc);
    char buf[32];
    std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &utc);
    return Provenance{"fracgrow", FRACGROW_VERSION, buf};
}

std::string format_number(double v) {
    char buf[64];
    const auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, v);
    return std::string(buf, ptr);
}

namespace {

json config_to_json(const RunConfig& c) {
    json j;
    j["r"] = c.r;
    j["orders"] = c.orders;
    j["convention"] = std::string(to_string(c.convention));
    j["eta_mode"] = std::string(to_string(c.eta_mode));
    j["series_depth"] = c.series_depth;
    j["month8_override"] = c.month8_override ? json(*c.month8_override) : json(nullptr);
    j["initial_length"] = c.initial_length ? json(*c.initial_length) : json(nullptr);
    j["etas"] = c.etas;
    return j;
}

RunConfig config_from_json(const json& j) {
    RunConfig c;
    c.r = j.at("r").get<double>();
    c.orders = j.at("orders").get<std::vector<double>>();
    const auto conv = parse_convention(j.at("convention").get<std::string>());
    const auto mode = parse_eta_mode(j.at("eta_mode").get<std::string>());
    if (!conv || !mode)
        throw ValidationError("bundle config has an unknown convention or eta_mode");
    c.convention = *conv;
    c.eta_mode = *mode;
    c.series_depth = j.at("series_depth").get<int>();
    if (!j.at("month8_override").is_null())
        c.month8_override = j.at("month8_override").get<double>();
    if (!j.at("initial_length").is_null())
        c.initial_length = j.at("initial_length").get<double>();
    c.etas = j.at("etas").get<std::vector<double>>();
    return c;
}

void write_header(const ResultBundle& b, std::string_view title, std::ostream& out) {
    out << "# " << title << "\n";
    out << "# config: " << config_json(b.config) << "\n";
    out << "# generated_at: " << b.provenance.generated_at << " by " << b.provenance.tool << " "
        << b.provenance.version << "\n";
}

}  // namespace

std::string config_json(const RunConfig& config) { return config_to_json(config).dump(); }

std::string bundle_to_json(const ResultBundle& b) {
    json j;
    j["config"] = config_to_json(b.config);

    json grid;
    grid["convention"] = std::string(to_string(b.grid.convention));
    grid["months"] = b.grid.months;
    json orders = json::array();
    for (const FracOrder& o : b.grid.orders)
        orders.push_back(o.value());
    grid["orders"] = orders;
    json rows = json::array();
    for (std::size_t m = 0; m < b.grid.months.size(); ++m) {
        json row = json::array();
        for (std::size_t k = 0; k < b.grid.orders.size(); ++k)
            row.push_back(b.grid.at(m, k));
        rows.push_back(row);
    }
    grid["values"] = rows;
    j["grid"] = grid;
    j["etas"] = b.etas;
    if (!b.observed.empty())
        j["observed"] = b.observed;
    if (!b.scores.empty()) {
        json scores = json::array();
        for (const auto& [order, score] : b.scores)
            scores.push_back(json{{"order", order}, {"mae", score}});
        j["scores"] = scores;
    }
    if (b.best_order)
        j["best_order"] = *b.best_order;
    j["provenance"] = json{{"tool", b.provenance.tool},
                           {"version", b.provenance.version},
                           {"generated_at", b.provenance.generated_at}};
    return j.dump(2) + "\n";
}

ResultBundle bundle_from_json(std::string_view text) {
    json j;
    try {
        j = json::parse(text);
    } catch (const json::parse_error& e) {
        throw ParseError("bundle", 0, e.what());
    }
    try {
        ResultBundle b;
        b.config = config_from_json(j.at("config"));
        const json& grid = j.at("grid");
        const auto conv = parse_convention(grid.at("convention").get<std::string>());
        if (!conv)
            throw ValidationError("bundle grid has an unknown convention");
        b.grid.convention = *conv;
        b.grid.months = grid.at("months").get<std::vector<int>>();
        for (double o : grid.at("orders").get<std::vector<double>>())
            b.grid.orders.emplace_back(o);
        for (const json& row : grid.at("values")) {
            const auto values = row.get<std::vector<double>>();
            if (values.size() != b.grid.orders.size())
                throw ValidationError("bundle grid row width does not match its orders");
            b.grid.values.insert(b.grid.values.end(), values.begin(), values.end());
        }
        if (b.grid.values.size() != b.grid.months.size() * b.grid.orders.size())
            throw ValidationError("bundle grid row count does not match its months");
        b.etas = j.at("etas").get<std::vector<double>>();
        if (j.contains("observed"))
            b.observed = j.at("observed").get<std::vector<double>>();
        if (j.contains("scores"))
            for (const json& s : j.at("scores"))
                b.scores.emplace_back(s.at("order").get<double>(), s.at("mae").get<double>());
        if (j.contains("best_order"))
            b.best_order = j.at("best_order").get<double>();
        const json& p = j.at("provenance");
        b.provenance = Provenance{p.at("tool").get<std::string>(), p.at("version").get<std::string>(),
                                  p.at("generated_at").get<std::string>()};
        return b;
    } catch (const json::exception& e) {
        throw ValidationError(std::string("malformed result bundle: ") + e.what());
    }
}

void write_bundle_json(const ResultBundle& bundle, const std::filesystem::path& path) {
    std::ofstream out(path);
    if (!out)
        throw Error("cannot write " + path.string());
    out << bundle_to_json(bundle);
}

ResultBundle read_bundle_json(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in)
        throw Error("cannot open bundle " + path.string());
    std::ostringstream text;
    text << in.rdbuf();
    return bundle_from_json(text.str());
}

void write_grid_csv(const ResultBundle& b, std::ostream& out) {
    write_header(b, "fracgrow prediction grid", out);
    out << "month,eta";
    for (const FracOrder& o : b.grid.orders)
        out << ",h_" << format_number(o.value());
    out << "\n";
    for (std::size_t m = 0; m < b.grid.months.size(); ++m) {
        out << b.grid.months[m] << ",";
        if (m > 0 && m - 1 < b.etas.size())
            out << format_number(b.etas[m - 1]);
        for (std::size_t k = 0; k < b.grid.orders.size(); ++k)
            out << "," << format_number(b.grid.at(m, k));
        out << "\n";
    }
}

void write_plot_csv(const ResultBundle& b, std::ostream& out) {
    write_header(b, "fracgrow plot data", out);
    out << "month,order,predicted,observed\n";
    for (std::size_t m = 0; m < b.grid.months.size(); ++m) {
        for (std::size_t k = 0; k < b.grid.orders.size(); ++k) {
            out << b.grid.months[m] << "," << format_number(b.grid.orders[k].value()) << ","
                << format_number(b.grid.at(m, k)) << ",";
            if (m < b.observed.size())
                out << format_number(b.observed[m]);
            out << "\n";
        }
    }
}

}  // namespace fracgrow
