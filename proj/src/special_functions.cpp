#include "fracgrow/special_functions.hpp"

#include <cmath>
#include <sstream>

#include "fracgrow/errors.hpp"

namespace fracgrow {

MLParams::MLParams(double alpha, double beta) : alpha_(alpha), beta_(beta) {
    if (!(alpha > 0.0) || !std::isfinite(alpha))
        throw DomainError("Mittag-Leffler alpha must be positive, got " + std::to_string(alpha));
    if (!(beta > 0.0) || !std::isfinite(beta))
        throw DomainError("Mittag-Leffler beta must be positive, got " + std::to_string(beta));
}

double gamma(double x) {
    if (std::isnan(x))
        throw DomainError("gamma: argument is NaN");
    if (x <= 0.0 && x == std::floor(x)) {
        std::ostringstream os;
        os << "gamma: pole at " << x;
        throw PoleError(os.str());
    }
    return std::tgamma(x);
}

namespace {

// z^m / Gamma(x) in extended precision. Past the range of tgammal the
// quotient is formed in log space.
long double power_over_gamma(long double z, std::size_t m, long double x) {
    if (m == 0)
        return 1.0L / std::tgamma(x);
    if (z == 0.0L)
        return 0.0L;
    if (x < 1700.0L)
        return std::pow(z, static_cast<long double>(m)) / std::tgamma(x);
    const long double magnitude =
        std::exp(static_cast<long double>(m) * std::log(std::fabs(z)) - std::lgamma(x));
    return (z < 0.0L && (m % 2 == 1)) ? -magnitude : magnitude;
}

}  // namespace

double mittag_leffler2(const MLParams& params, double z, const SeriesBudget& budget) {
    if (!std::isfinite(z))
        throw DomainError("Mittag-Leffler argument must be finite");

    const long double alpha = params.alpha();
    const long double beta = params.beta();
    const long double zl = z;
    long double sum = 0.0L;

    for (std::size_t m = 0; m < budget.max_terms; ++m) {
        const long double term = power_over_gamma(zl, m, static_cast<long double>(m) * alpha + beta);
        sum += term;
        if (!std::isfinite(sum))
            throw ConvergenceError("Mittag-Leffler series overflowed at term " + std::to_string(m));
        if (m > 0 && std::fabs(term) <= budget.tolerance * std::fabs(sum)) {
            const double result = static_cast<double>(sum);
            if (!std::isfinite(result))
                throw ConvergenceError("Mittag-Leffler value exceeds double range");
            return result;
        }
    }
    std::ostringstream os;
    os << "Mittag-Leffler series did not converge within " << budget.max_terms
       << " terms (alpha=" << params.alpha() << ", beta=" << params.beta() << ", z=" << z << ")";
    throw ConvergenceError(os.str());
}

double mittag_leffler(double alpha, double z, const SeriesBudget& budget) {
    return mittag_leffler2(MLParams(alpha, 1.0), z, budget);
}

}  // namespace fracgrow
