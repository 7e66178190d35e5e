#pragma once

#include <compare>
#include <cstddef>
#include <functional>

namespace fracgrow {

// Fractional order beta in (0, 1].
class FracOrder {
public:
    explicit FracOrder(double beta);

    double value() const noexcept { return beta_; }
    bool is_integer() const noexcept { return beta_ == 1.0; }

    friend auto operator<=>(const FracOrder&, const FracOrder&) = default;

private:
    double beta_;
};

// (s - a)^exponent with exponent > -1 and lower terminal a >= 0.
class PowerFunction {
public:
    explicit PowerFunction(double exponent, double lower = 0.0);

    double exponent() const noexcept { return exponent_; }
    double lower() const noexcept { return lower_; }

private:
    double exponent_;
    double lower_;
};

// Graded mesh for product integration of the Caputo kernel. `nodes` is the
// number of subintervals; the mesh u_j = s (j/nodes)^grading clusters points
// next to the kernel singularity.
struct QuadratureSpec {
    std::size_t nodes = 4096;
    double grading = 2.0;

    void validate() const;
};

// Riemann-Liouville integral of order `order` > 0 applied to a power function,
// in closed form: Gamma(g+1)/Gamma(g+order+1) (s-a)^(g+order).
double rl_integral_power(double order, const PowerFunction& p, double s);

// Caputo derivative of (s-a)^g: Gamma(g+1)/Gamma(g-beta+1) (s-a)^(g-beta),
// and exactly 0 for g = 0.
double caputo_power(FracOrder order, const PowerFunction& p, double s);

// The eigenfunction rule L_s(scale e^{rs}) = scale r^beta e^{rs} used by the
// growth model's series derivation.
double caputo_exp_paper_rule(FracOrder order, double r, double scale, double s);

// Strict Caputo derivative of e^{rs} with lower terminal 0:
// r s^(1-beta) E_{1,2-beta}(r s).
double caputo_exp_exact(FracOrder order, double r, double s);

using RealFunction = std::function<double(double)>;

// Caputo derivative of order beta in (0,1) at s, computed from the classical
// derivative f_prime by product integration on a graded mesh. The kernel
// (s - xi)^(-beta) is integrated exactly against the piecewise-linear
// interpolant of f_prime, so the singular endpoint is never sampled.
// f_prime is evaluated concurrently and must be safe to call from several
// threads.
double caputo_numeric(FracOrder order, const RealFunction& f_prime, double s,
                      const QuadratureSpec& q = {});

namespace serial {

// Single-threaded reference for caputo_numeric; same summation order, so the
// two agree bit for bit.
double caputo_numeric(FracOrder order, const RealFunction& f_prime, double s,
                      const QuadratureSpec& q = {});

}  // namespace serial

}  // namespace fracgrow
