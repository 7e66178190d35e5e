#include "fracgrow/term_algebra.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <map>
#include <string>
#include <utility>

#include "fracgrow/errors.hpp"

namespace fracgrow {

namespace {

using Key = std::pair<std::uint32_t, std::uint32_t>;

Key key_of(const SeriesTerm& t) { return {t.exp_mult, t.t_power}; }

void check_term(const SeriesTerm& t, const TermLimits& limits) {
    if (t.t_power > limits.max_t_power)
        throw OverflowError("time power " + std::to_string(t.t_power) + " exceeds cap " +
                            std::to_string(limits.max_t_power));
    if (!std::isfinite(t.coeff) || std::fabs(t.coeff) > limits.max_coeff)
        throw OverflowError("term coefficient out of range at (k=" + std::to_string(t.exp_mult) +
                            ", n=" + std::to_string(t.t_power) + ")");
}

std::vector<SeriesTerm> canonicalize(std::vector<SeriesTerm> terms, const TermLimits& limits) {
    std::stable_sort(terms.begin(), terms.end(),
                     [](const SeriesTerm& a, const SeriesTerm& b) { return key_of(a) < key_of(b); });
    std::vector<SeriesTerm> out;
    out.reserve(terms.size());
    for (const SeriesTerm& t : terms) {
        if (!out.empty() && key_of(out.back()) == key_of(t))
            out.back().coeff += t.coeff;
        else
            out.push_back(t);
    }
    std::erase_if(out, [](const SeriesTerm& t) { return t.coeff == 0.0; });
    for (const SeriesTerm& t : out)
        check_term(t, limits);
    return out;
}

constexpr std::size_t kPascalRows = 65;

constexpr auto make_pascal() {
    std::array<std::array<std::uint64_t, kPascalRows>, kPascalRows> c{};
    for (std::size_t n = 0; n < kPascalRows; ++n) {
        c[n][0] = 1;
        for (std::size_t k = 1; k <= n; ++k)
            c[n][k] = c[n - 1][k - 1] + (k < n ? c[n - 1][k] : 0);
    }
    return c;
}

constexpr auto kPascal = make_pascal();

}  // namespace

TermSum::TermSum(std::initializer_list<SeriesTerm> terms, const TermLimits& limits)
    : TermSum(std::vector<SeriesTerm>(terms), limits) {}

TermSum::TermSum(std::vector<SeriesTerm> terms, const TermLimits& limits)
    : terms_(canonicalize(std::move(terms), limits)) {}

TermSum TermSum::single(double coeff, std::uint32_t exp_mult, std::uint32_t t_power,
                        const TermLimits& limits) {
    return TermSum({SeriesTerm{coeff, exp_mult, t_power}}, limits);
}

double TermSum::coefficient(std::uint32_t exp_mult, std::uint32_t t_power) const noexcept {
    const Key wanted{exp_mult, t_power};
    const auto it = std::lower_bound(terms_.begin(), terms_.end(), wanted,
                                     [](const SeriesTerm& t, const Key& k) { return key_of(t) < k; });
    return (it != terms_.end() && key_of(*it) == wanted) ? it->coeff : 0.0;
}

std::uint64_t binomial(std::uint32_t n, std::uint32_t k) {
    if (n >= kPascalRows)
        throw OverflowError("binomial: n=" + std::to_string(n) + " beyond table");
    if (k > n)
        return 0;
    return kPascal[n][k];
}

TermSum term_add(const TermSum& x, const TermSum& y, const TermLimits& limits) {
    std::vector<SeriesTerm> all(x.terms().begin(), x.terms().end());
    all.insert(all.end(), y.terms().begin(), y.terms().end());
    return TermSum(std::move(all), limits);
}

TermSum term_scale(const TermSum& x, double factor, const TermLimits& limits) {
    std::vector<SeriesTerm> out(x.terms().begin(), x.terms().end());
    for (SeriesTerm& t : out)
        t.coeff *= factor;
    return TermSum(std::move(out), limits);
}

TermSum term_multiply(const TermSum& x, const TermSum& y, const TermLimits& limits) {
    std::map<Key, double> acc;
    for (const SeriesTerm& a : x.terms()) {
        for (const SeriesTerm& b : y.terms()) {
            const std::uint32_t n = a.t_power + b.t_power;
            if (n > limits.max_t_power)
                throw OverflowError("product time power " + std::to_string(n) + " exceeds cap " +
                                    std::to_string(limits.max_t_power));
            const double c = a.coeff * b.coeff * static_cast<double>(binomial(n, a.t_power));
            acc[{a.exp_mult + b.exp_mult, n}] += c;
        }
    }
    std::vector<SeriesTerm> out;
    out.reserve(acc.size());
    for (const auto& [key, c] : acc)
        out.push_back({c, key.first, key.second});
    return TermSum(std::move(out), limits);
}

double ls_multiplier(std::uint32_t exp_mult, double r, FracOrder order) {
    if (exp_mult == 0)
        return 0.0;
    return std::pow(static_cast<double>(exp_mult) * r, order.value());
}

TermSum apply_Ls(const TermSum& x, FracOrder order, double r, const TermLimits& limits) {
    if (!(r > 0.0))
        throw DomainError("apply_Ls: r must be positive");
    std::vector<SeriesTerm> out;
    out.reserve(x.size());
    for (const SeriesTerm& t : x.terms()) {
        if (t.exp_mult == 0)
            continue;
        out.push_back({t.coeff * ls_multiplier(t.exp_mult, r, order), t.exp_mult, t.t_power});
    }
    return TermSum(std::move(out), limits);
}

TermSum apply_Lt_inverse(const TermSum& x, const TermLimits& limits) {
    std::vector<SeriesTerm> out(x.terms().begin(), x.terms().end());
    for (SeriesTerm& t : out)
        ++t.t_power;
    return TermSum(std::move(out), limits);
}

double evaluate(const TermSum& x, double r, double s, double t) {
    // Terms are sorted by (k, n), so both factors extend the previous term's.
    long double sum = 0.0L;
    long double space_factor = 0.0L, time_factor = 1.0L;
    std::uint32_t k = 0, n = 0;
    bool have_k = false;
    for (const SeriesTerm& term : x.terms()) {
        if (!have_k || term.exp_mult != k) {
            k = term.exp_mult;
            space_factor = std::exp(static_cast<long double>(k) * r * static_cast<long double>(s));
            time_factor = 1.0L;
            n = 0;
            have_k = true;
        }
        for (; n < term.t_power; ++n)
            time_factor *= static_cast<long double>(t) / static_cast<long double>(n + 1);
        sum += static_cast<long double>(term.coeff) * space_factor * time_factor;
    }
    return static_cast<double>(sum);
}

}  // namespace fracgrow
