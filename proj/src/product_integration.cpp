#include "product_integration.hpp"

#include <cmath>
#include <exception>
#include <vector>

namespace fracgrow::detail {

namespace {

double mesh_point(double s, std::size_t j, std::size_t n, double grading) {
    if (j == n)
        return s;
    return s * std::pow(static_cast<double>(j) / static_cast<double>(n), grading);
}

// b^q - a^q without cancellation when b is close to a.
double power_difference(double a, double b, double q) {
    if (a == 0.0)
        return std::pow(b, q);
    return std::pow(a, q) * std::expm1(q * std::log1p((b - a) / a));
}

// Contribution of [a, b] in u with samples fa = f(s - a), fb = f(s - b).
double interval_contribution(double a, double b, double fa, double fb, double beta) {
    const double p = 1.0 - beta;
    const double h = b - a;
    const double m0 = power_difference(a, b, p) / p;
    const double m1 = power_difference(a, b, p + 1.0) / (p + 1.0);
    const double w_left = (b * m0 - m1) / h;
    const double w_right = (m1 - a * m0) / h;
    return fa * w_left + fb * w_right;
}

}  // namespace

double product_integral_parallel(double beta, const RealFunction& f, double s, std::size_t n,
                                 double grading) {
    const auto count = static_cast<long long>(n);
    std::vector<double> u(n + 1);
    std::vector<double> fu(n + 1);
    std::vector<double> part(n);
    std::exception_ptr failure;

#pragma omp parallel for schedule(static)
    for (long long j = 0; j <= count; ++j) {
        try {
            u[j] = mesh_point(s, static_cast<std::size_t>(j), n, grading);
            fu[j] = f(s - u[j]);
        } catch (...) {
#pragma omp critical(fracgrow_product_integral)
            if (!failure)
                failure = std::current_exception();
        }
    }
    if (failure)
        std::rethrow_exception(failure);

#pragma omp parallel for schedule(static)
    for (long long j = 0; j < count; ++j)
        part[j] = interval_contribution(u[j], u[j + 1], fu[j], fu[j + 1], beta);

    double sum = 0.0;
    for (double c : part)
        sum += c;
    return sum;
}

double product_integral_serial(double beta, const RealFunction& f, double s, std::size_t n,
                               double grading) {
    double a = 0.0;
    double fa = f(s);
    double sum = 0.0;
    for (std::size_t j = 0; j < n; ++j) {
        const double b = mesh_point(s, j + 1, n, grading);
        const double fb = f(s - b);
        sum += interval_contribution(a, b, fa, fb, beta);
        a = b;
        fa = fb;
    }
    return sum;
}

}  // namespace fracgrow::detail
