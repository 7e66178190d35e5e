#pragma once

#include <cstddef>
#include <cstdint>
#include <map>
#include <span>
#include <vector>

#include "fracgrow/fractional_calculus.hpp"
#include "fracgrow/term_algebra.hpp"

namespace fracgrow {

// N(w) = sum_j c_j w^j over powers j >= 1.
class PolynomialNonlinearity {
public:
    PolynomialNonlinearity() = default;
    explicit PolynomialNonlinearity(std::map<std::uint32_t, double> coefficients);

    const std::map<std::uint32_t, double>& coefficients() const noexcept { return coeffs_; }
    bool empty() const noexcept { return coeffs_.empty(); }

private:
    std::map<std::uint32_t, double> coeffs_;
};

// A_n for N applied to the decomposition w_0 + w_1 + ...: for each w^j the
// sum over all compositions i_1 + ... + i_j = n of w_{i_1} ... w_{i_j}.
// Requires w.size() > n.
TermSum adomian_polynomial(const PolynomialNonlinearity& nl, std::span<const TermSum> w,
                           std::size_t n, const TermLimits& limits = default_term_limits);

// L_t w + L_s w + N(w) = eta w + g, with w(s, 0) given by `initial`.
struct AdmProblem {
    TermSum initial;
    FracOrder order{1.0};
    double r = 0.0;
    double eta = 0.0;
    PolynomialNonlinearity nonlinearity;
    TermSum source;
};

// Components w_0 ... w_depth of the decomposition:
//   w_{n+1} = L_t^{-1}[eta w_n - L_s w_n] - L_t^{-1} A_n,
// with L_t^{-1} g added once, to w_1.
std::vector<TermSum> adm_iterate(const AdmProblem& problem, std::size_t depth,
                                 const TermLimits& limits = default_term_limits);

}  // namespace fracgrow
