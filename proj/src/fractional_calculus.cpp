#include "fracgrow/fractional_calculus.hpp"

#include <cmath>
#include <string>

#include "fracgrow/errors.hpp"
#include "fracgrow/special_functions.hpp"
#include "product_integration.hpp"

namespace fracgrow {

FracOrder::FracOrder(double beta) : beta_(beta) {
    if (!(beta > 0.0 && beta <= 1.0))
        throw DomainError("fractional order must lie in (0, 1], got " + std::to_string(beta));
}

PowerFunction::PowerFunction(double exponent, double lower) : exponent_(exponent), lower_(lower) {
    if (!(exponent > -1.0) || !std::isfinite(exponent))
        throw DomainError("power exponent must exceed -1, got " + std::to_string(exponent));
    if (!(lower >= 0.0) || !std::isfinite(lower))
        throw DomainError("lower terminal must be non-negative, got " + std::to_string(lower));
}

void QuadratureSpec::validate() const {
    if (nodes < 16)
        throw DomainError("quadrature needs at least 16 nodes, got " + std::to_string(nodes));
    if (!(grading >= 1.0) || !std::isfinite(grading))
        throw DomainError("mesh grading must be >= 1, got " + std::to_string(grading));
}

double rl_integral_power(double order, const PowerFunction& p, double s) {
    if (!(order > 0.0) || !std::isfinite(order))
        throw DomainError("integral order must be positive");
    if (s < p.lower())
        throw DomainError("rl_integral_power: s lies below the lower terminal");
    const double g = p.exponent();
    const double span = s - p.lower();
    if (span == 0.0)
        return 0.0;
    return gamma(g + 1.0) / gamma(g + order + 1.0) * std::pow(span, g + order);
}

double caputo_power(FracOrder order, const PowerFunction& p, double s) {
    const double g = p.exponent();
    if (g < 0.0)
        throw DomainError("caputo_power: exponent must be non-negative");
    if (g == 0.0)
        return 0.0;
    if (!(s > p.lower()))
        throw DomainError("caputo_power: s must exceed the lower terminal");
    const double beta = order.value();
    return gamma(g + 1.0) / gamma(g - beta + 1.0) * std::pow(s - p.lower(), g - beta);
}

double caputo_exp_paper_rule(FracOrder order, double r, double scale, double s) {
    if (!(r > 0.0))
        throw DomainError("caputo_exp_paper_rule: r must be positive");
    return scale * std::pow(r, order.value()) * std::exp(r * s);
}

double caputo_exp_exact(FracOrder order, double r, double s) {
    if (!(r > 0.0))
        throw DomainError("caputo_exp_exact: r must be positive");
    if (s < 0.0)
        throw DomainError("caputo_exp_exact: s must be non-negative");
    const double beta = order.value();
    if (s == 0.0)
        return order.is_integer() ? r : 0.0;
    return r * std::pow(s, 1.0 - beta) * mittag_leffler2(MLParams(1.0, 2.0 - beta), r * s);
}

namespace {

void check_numeric_args(FracOrder order, double s, const QuadratureSpec& q) {
    if (order.is_integer())
        throw DomainError("caputo_numeric: order 1 is the classical derivative; evaluate f' directly");
    if (!(s > 0.0) || !std::isfinite(s))
        throw DomainError("caputo_numeric: s must be positive");
    q.validate();
}

}  // namespace

double caputo_numeric(FracOrder order, const RealFunction& f_prime, double s,
                      const QuadratureSpec& q) {
    check_numeric_args(order, s, q);
    const double beta = order.value();
    return detail::product_integral_parallel(beta, f_prime, s, q.nodes, q.grading) /
           gamma(1.0 - beta);
}

namespace serial {

double caputo_numeric(FracOrder order, const RealFunction& f_prime, double s,
                      const QuadratureSpec& q) {
    check_numeric_args(order, s, q);
    const double beta = order.value();
    return detail::product_integral_serial(beta, f_prime, s, q.nodes, q.grading) /
           gamma(1.0 - beta);
}

}  // namespace serial

}  // namespace fracgrow
