#include "fracgrow/adm.hpp"

#include <string>
#include <utility>

#include "fracgrow/errors.hpp"

namespace fracgrow {

PolynomialNonlinearity::PolynomialNonlinearity(std::map<std::uint32_t, double> coefficients)
    : coeffs_(std::move(coefficients)) {
    for (const auto& [power, c] : coeffs_)
        if (power == 0)
            throw DomainError("nonlinearity powers must be >= 1");
    std::erase_if(coeffs_, [](const auto& entry) { return entry.second == 0.0; });
}

namespace {

// Adds every product w_{i_1} ... w_{i_parts} with i_1 + ... = remaining.
void accumulate_compositions(std::span<const TermSum> w, std::uint32_t parts, std::size_t remaining,
                             const TermSum& prefix, TermSum& acc, const TermLimits& limits) {
    if (parts == 1) {
        if (!w[remaining].empty())
            acc = term_add(acc, term_multiply(prefix, w[remaining], limits), limits);
        return;
    }
    for (std::size_t i = 0; i <= remaining; ++i) {
        if (w[i].empty())
            continue;
        accumulate_compositions(w, parts - 1, remaining - i, term_multiply(prefix, w[i], limits),
                                acc, limits);
    }
}

}  // namespace

TermSum adomian_polynomial(const PolynomialNonlinearity& nl, std::span<const TermSum> w,
                           std::size_t n, const TermLimits& limits) {
    if (w.size() <= n)
        throw LengthError("adomian_polynomial: need components w_0..w_" + std::to_string(n) +
                          ", got " + std::to_string(w.size()));
    const TermSum unit = TermSum::single(1.0, 0, 0, limits);
    TermSum result;
    for (const auto& [power, c] : nl.coefficients()) {
        TermSum a_n;
        accumulate_compositions(w, power, n, unit, a_n, limits);
        result = term_add(result, term_scale(a_n, c, limits), limits);
    }
    return result;
}

std::vector<TermSum> adm_iterate(const AdmProblem& problem, std::size_t depth,
                                 const TermLimits& limits) {
    if (depth > limits.max_t_power)
        throw OverflowError("adm_iterate: depth " + std::to_string(depth) + " exceeds cap " +
                            std::to_string(limits.max_t_power));
    if (!(problem.r > 0.0))
        throw DomainError("adm_iterate: r must be positive");

    std::vector<TermSum> w;
    w.reserve(depth + 1);
    w.push_back(problem.initial);

    for (std::size_t n = 0; n < depth; ++n) {
        // eta w_n - L_s w_n, term by term.
        std::vector<SeriesTerm> linear;
        linear.reserve(w[n].size());
        for (const SeriesTerm& t : w[n].terms()) {
            const double rate = problem.eta - ls_multiplier(t.exp_mult, problem.r, problem.order);
            linear.push_back({t.coeff * rate, t.exp_mult, t.t_power});
        }
        TermSum next = apply_Lt_inverse(TermSum(std::move(linear), limits), limits);

        if (n == 0 && !problem.source.empty())
            next = term_add(next, apply_Lt_inverse(problem.source, limits), limits);
        if (!problem.nonlinearity.empty()) {
            const TermSum a_n = adomian_polynomial(problem.nonlinearity, w, n, limits);
            next = term_add(next, apply_Lt_inverse(term_scale(a_n, -1.0, limits), limits), limits);
        }
        w.push_back(std::move(next));
    }
    return w;
}

}  // namespace fracgrow
