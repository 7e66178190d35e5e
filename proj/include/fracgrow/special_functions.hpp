#pragma once

#include <cstddef>

namespace fracgrow {

// Parameters of the two-parameter Mittag-Leffler function E_{alpha,beta}.
// `beta` here is the Mittag-Leffler second parameter, unrelated to the
// fractional order of the growth model.
class MLParams {
public:
    explicit MLParams(double alpha, double beta = 1.0);

    double alpha() const noexcept { return alpha_; }
    double beta() const noexcept { return beta_; }

private:
    double alpha_;
    double beta_;
};

// Truncation control shared by the Mittag-Leffler series. Summation stops at
// the first term whose magnitude is below `tolerance * |partial sum|`.
struct SeriesBudget {
    double tolerance = 1e-15;
    std::size_t max_terms = 500;
};

// Gamma function on the real line. Throws PoleError at 0 and the negative
// integers.
double gamma(double x);

// E_alpha(z) = sum_m z^m / Gamma(m*alpha + 1).
double mittag_leffler(double alpha, double z, const SeriesBudget& budget = {});

// E_{alpha,beta}(z) = sum_m z^m / Gamma(m*alpha + beta).
// Throws ConvergenceError if the budget runs out or the sum overflows.
double mittag_leffler2(const MLParams& params, double z, const SeriesBudget& budget = {});

}  // namespace fracgrow
