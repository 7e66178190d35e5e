#pragma once

#include <cstddef>

#include "fracgrow/fractional_calculus.hpp"

namespace fracgrow::detail {

// Integral over [0, s] of (s - xi)^(-beta) f(xi) d xi by product integration
// on the graded mesh u_j = s (j/n)^grading in u = s - xi. Both versions use
// the same per-interval weights and sum contributions in index order.
double product_integral_parallel(double beta, const RealFunction& f, double s, std::size_t n,
                                 double grading);
double product_integral_serial(double beta, const RealFunction& f, double s, std::size_t n,
                               double grading);

}  // namespace fracgrow::detail
