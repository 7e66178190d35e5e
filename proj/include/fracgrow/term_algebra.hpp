#pragma once

#include <cstdint>
#include <initializer_list>
#include <span>
#include <vector>

#include "fracgrow/fractional_calculus.hpp"

namespace fracgrow {

// One basis element coeff * e^{exp_mult * r * s} * t^t_power / t_power!.
// The factorial normalization is part of the term, which makes the time
// antiderivative an index shift.
struct SeriesTerm {
    double coeff = 0.0;
    std::uint32_t exp_mult = 0;
    std::uint32_t t_power = 0;

    friend bool operator==(const SeriesTerm&, const SeriesTerm&) = default;
};

// Caps applied whenever a TermSum is built.
struct TermLimits {
    std::uint32_t max_t_power = 64;
    double max_coeff = 1e300;
};

inline constexpr TermLimits default_term_limits{};

// Finite canonical sum of SeriesTerms: sorted by (exp_mult, t_power), keys
// unique, no zero coefficients. Immutable once built.
class TermSum {
public:
    TermSum() = default;
    TermSum(std::initializer_list<SeriesTerm> terms, const TermLimits& limits = default_term_limits);
    explicit TermSum(std::vector<SeriesTerm> terms, const TermLimits& limits = default_term_limits);

    static TermSum single(double coeff, std::uint32_t exp_mult, std::uint32_t t_power,
                          const TermLimits& limits = default_term_limits);

    std::span<const SeriesTerm> terms() const noexcept { return terms_; }
    bool empty() const noexcept { return terms_.empty(); }
    std::size_t size() const noexcept { return terms_.size(); }

    // Coefficient stored under (exp_mult, t_power), or 0.
    double coefficient(std::uint32_t exp_mult, std::uint32_t t_power) const noexcept;

    friend bool operator==(const TermSum&, const TermSum&) = default;

private:
    std::vector<SeriesTerm> terms_;
};

// Exact binomial coefficient for n <= 64.
std::uint64_t binomial(std::uint32_t n, std::uint32_t k);

TermSum term_add(const TermSum& x, const TermSum& y, const TermLimits& limits = default_term_limits);
TermSum term_scale(const TermSum& x, double factor, const TermLimits& limits = default_term_limits);

// Product with renormalization: (t^a/a!)(t^b/b!) = C(a+b, a) t^(a+b)/(a+b)!.
TermSum term_multiply(const TermSum& x, const TermSum& y,
                      const TermLimits& limits = default_term_limits);

// Multiplier of the spatial fractional operator on e^{k r s}: (k r)^beta,
// and 0 for k = 0.
double ls_multiplier(std::uint32_t exp_mult, double r, FracOrder order);

// Spatial fractional operator under the eigenfunction rule; k = 0 terms vanish.
TermSum apply_Ls(const TermSum& x, FracOrder order, double r,
                 const TermLimits& limits = default_term_limits);

// Time antiderivative from 0: (c, k, n) -> (c, k, n + 1).
TermSum apply_Lt_inverse(const TermSum& x, const TermLimits& limits = default_term_limits);

// Sum of c e^{k r s} t^n / n! with t^n/n! built incrementally.
double evaluate(const TermSum& x, double r, double s, double t);

}  // namespace fracgrow
