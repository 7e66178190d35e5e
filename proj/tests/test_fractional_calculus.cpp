#include <cmath>
#include <numbers>
#include <random>

#include "doctest.h"
#include "fracgrow/errors.hpp"
#include "fracgrow/fractional_calculus.hpp"
#include "oracles.hpp"

using namespace fracgrow;

namespace {

// Midpoint rule after the substitution u = (s - xi)^alpha, which removes the
// kernel singularity of the Riemann-Liouville integral:
// I^alpha g(s) = 1/Gamma(alpha+1) * int_0^{s^alpha} g(s - u^{1/alpha}) du.
template <class G>
double rl_integral_quadrature(double alpha, G g, double s, int n = 200000) {
    const double top = std::pow(s, alpha);
    const double h = top / n;
    double sum = 0.0;
    for (int i = 0; i < n; ++i) {
        const double u = (i + 0.5) * h;
        sum += g(s - std::pow(u, 1.0 / alpha));
    }
    return sum * h / std::tgamma(alpha + 1.0);
}

}  // namespace

TEST_CASE("FracOrder validates its interval") {
    CHECK_NOTHROW(FracOrder(1.0));
    CHECK_NOTHROW(FracOrder(1e-6));
    CHECK_THROWS_AS(FracOrder(0.0), DomainError);
    CHECK_THROWS_AS(FracOrder(1.0000001), DomainError);
    CHECK_THROWS_AS(FracOrder(std::nan("")), DomainError);
    CHECK_THROWS_AS(PowerFunction(-1.0), DomainError);
    CHECK_THROWS_AS(PowerFunction(1.0, -0.5), DomainError);
    CHECK_THROWS_AS((QuadratureSpec{8, 2.0}.validate()), DomainError);
    CHECK_THROWS_AS((QuadratureSpec{64, 0.5}.validate()), DomainError);
}

TEST_CASE("rl_integral_power examples") {
    CHECK(rl_integral_power(1.0, PowerFunction(1.0), 2.0) == doctest::Approx(2.0).epsilon(1e-14));
    const double expected = 1.0 / std::tgamma(1.5);
    CHECK(std::fabs(rl_integral_power(0.5, PowerFunction(0.0), 1.0) - 1.1283791671) < 1e-9);
    CHECK(std::fabs(rl_integral_power(0.5, PowerFunction(0.0), 1.0) -
                    rl_integral_quadrature(0.5, [](double) { return 1.0; }, 1.0)) < 1e-8);
    CHECK(rl_integral_power(0.5, PowerFunction(0.0), 1.0) == doctest::Approx(expected));
    CHECK(rl_integral_power(0.7, PowerFunction(2.0, 1.0), 1.0) == 0.0);
    CHECK_THROWS_AS(rl_integral_power(0.5, PowerFunction(1.0, 2.0), 1.0), DomainError);
}

TEST_CASE("rl_integral_power agrees with direct quadrature") {
    for (double alpha : {0.3, 0.5, 1.5})
        for (double g : {0.5, 1.0, 2.0}) {
            const double closed = rl_integral_power(alpha, PowerFunction(g), 1.7);
            const double quad = rl_integral_quadrature(alpha, [g](double x) { return std::pow(x, g); }, 1.7);
            CHECK(closed == doctest::Approx(quad).epsilon(1e-6));
        }
}

TEST_CASE("caputo_power examples") {
    CHECK(caputo_power(FracOrder(1.0), PowerFunction(2.0), 3.0) == doctest::Approx(6.0).epsilon(1e-14));
    CHECK(std::fabs(caputo_power(FracOrder(0.5), PowerFunction(1.0), 1.0) -
                    2.0 / std::sqrt(std::numbers::pi)) < 1e-14);
    CHECK_THROWS_AS(caputo_power(FracOrder(0.5), PowerFunction(-0.5), 1.0), DomainError);
    CHECK_THROWS_AS(caputo_power(FracOrder(0.5), PowerFunction(1.0, 1.0), 1.0), DomainError);
}

TEST_CASE("constants are annihilated for every order") {
    for (double beta = 0.01; beta <= 1.0; beta += 0.01)
        for (double s : {0.0, 0.5, 3.0})
            CHECK(caputo_power(FracOrder(beta), PowerFunction(0.0), s) == 0.0);
}

TEST_CASE("beta -> 1 continuity") {
    for (double g : {1.0, 2.0, 3.0})
        for (double s : {0.5, 1.0, 2.0}) {
            const double classical = g * std::pow(s, g - 1.0);
            CHECK(std::fabs(caputo_power(FracOrder(0.999), PowerFunction(g), s) - classical) <=
                  1e-2 * std::fabs(classical));
        }
}

TEST_CASE("integral of the Caputo derivative recovers g(s) - g(0)") {
    for (double beta : {0.2, 0.5, 0.8, 1.0})
        for (double g : {1.0, 2.0})
            for (double s : {0.5, 1.0, 2.5}) {
                // D^beta s^g = c s^(g-beta); integrate that power back.
                const double c = caputo_power(FracOrder(beta), PowerFunction(g), s) /
                                 std::pow(s, g - beta);
                const double back = c * rl_integral_power(beta, PowerFunction(g - beta), s);
                CHECK(std::fabs(back - std::pow(s, g)) <= 1e-10 * std::max(1.0, std::pow(s, g)));
            }
}

TEST_CASE("paper rule examples and monotonicity") {
    CHECK(caputo_exp_paper_rule(FracOrder(1.0), 0.04305, 1.0, 0.0) == doctest::Approx(0.04305));
    CHECK(std::fabs(caputo_exp_paper_rule(FracOrder(0.5), 0.04305, 1.0, 0.0) - std::sqrt(0.04305)) < 1e-16);
    CHECK(caputo_exp_paper_rule(FracOrder(0.3), 0.5, 0.0, 2.0) == 0.0);
    CHECK_THROWS_AS(caputo_exp_paper_rule(FracOrder(0.3), 0.0, 1.0, 2.0), DomainError);

    for (double r : {0.01, 0.04305, 0.5, 0.99})
        for (double b1 = 0.05; b1 < 1.0; b1 += 0.05) {
            const double b2 = b1 + 0.05;
            CHECK(caputo_exp_paper_rule(FracOrder(b1), r, 1.0, 0.0) >
                  caputo_exp_paper_rule(FracOrder(std::min(b2, 1.0)), r, 1.0, 0.0));
        }
}

TEST_CASE("exact exponential rule") {
    CHECK(caputo_exp_exact(FracOrder(1.0), 1.0, 1.0) == doctest::Approx(std::numbers::e).epsilon(1e-14));
    // E_{1,1.5}(1) to 40 digits: 2.2906982523032382309...
    CHECK(std::fabs(caputo_exp_exact(FracOrder(0.5), 1.0, 1.0) - 2.290698252303238) < 1e-13);
    CHECK(caputo_exp_exact(FracOrder(0.5), 1.0, 1e-12) < 1e-5);
    CHECK(caputo_exp_exact(FracOrder(0.5), 1.0, 0.0) == 0.0);
    CHECK(caputo_exp_exact(FracOrder(1.0), 2.0, 0.0) == 2.0);
    for (double beta : {0.1, 0.5, 0.9})
        for (double s : {0.1, 1.0, 6.0, 24.0})
            CHECK(caputo_exp_exact(FracOrder(beta), 0.04305, s) ==
                  doctest::Approx(oracle::caputo_exp_incomplete_gamma(beta, 0.04305, s)).epsilon(1e-12));
}

TEST_CASE("exact rule stays below the paper rule for r, beta in (0, 1)") {
    // Regression snapshot over a fixed grid.
    int checked = 0;
    for (double r : {0.01, 0.04305, 0.2, 0.5, 0.9})
        for (double beta : {0.1, 0.3, 0.5, 0.7, 0.9, 0.99})
            for (double s : {0.01, 0.5, 1.0, 6.0, 12.0, 24.0}) {
                CHECK(caputo_exp_exact(FracOrder(beta), r, s) <
                      caputo_exp_paper_rule(FracOrder(beta), r, 1.0, s));
                ++checked;
            }
    CHECK(checked == 180);
}

TEST_CASE("numeric Caputo examples") {
    const FracOrder half(0.5);
    CHECK(caputo_numeric(half, [](double) { return 0.0; }, 1.3) == 0.0);
    CHECK(std::fabs(caputo_numeric(half, [](double) { return 1.0; }, 1.0) -
                    caputo_power(half, PowerFunction(1.0), 1.0)) <= 1e-6);
    CHECK(std::fabs(caputo_numeric(half, [](double x) { return std::exp(x); }, 1.0) -
                    caputo_exp_exact(half, 1.0, 1.0)) <= 1e-6);
    CHECK_THROWS_AS(caputo_numeric(FracOrder(1.0), [](double) { return 1.0; }, 1.0), DomainError);
    CHECK_THROWS_AS(caputo_numeric(half, [](double) { return 1.0; }, 0.0), DomainError);
}

TEST_CASE("numeric Caputo tracks power closed forms") {
    for (double beta : {0.2, 0.5, 0.8})
        for (double g : {1.0, 2.0, 3.5}) {
            const double s = 1.6;
            const double numeric =
                caputo_numeric(FracOrder(beta), [g](double x) { return g * std::pow(x, g - 1.0); }, s);
            CHECK(numeric == doctest::Approx(caputo_power(FracOrder(beta), PowerFunction(g), s)).epsilon(1e-6));
        }
}

TEST_CASE("numeric Caputo is linear") {
    std::mt19937_64 rng(7);
    std::uniform_real_distribution<double> coef(-3.0, 3.0);
    const QuadratureSpec q{512, 2.0};
    for (int trial = 0; trial < 20; ++trial) {
        const double a = coef(rng), b = coef(rng), w = coef(rng);
        const FracOrder order(0.1 + 0.04 * trial);
        auto f = [w](double x) { return std::sin(w * x) + x * x; };
        auto g = [w](double x) { return std::exp(-w * x * 0.1); };
        const double lhs = caputo_numeric(order, [&](double x) { return a * f(x) + b * g(x); }, 2.0, q);
        const double rhs = a * caputo_numeric(order, f, 2.0, q) + b * caputo_numeric(order, g, 2.0, q);
        CHECK(std::fabs(lhs - rhs) <= 1e-10);
    }
}
