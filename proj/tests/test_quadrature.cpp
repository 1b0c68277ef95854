#include "doctest.h"
#include "oracles.hpp"
#include "splab/quadrature.hpp"
#include "splab/special.hpp"

#include <cmath>
#include <numeric>
#include <random>

using namespace splab;

TEST_CASE("simpson node weights: closure, normalization, cubic exactness") {
    CHECK(simpson_node_weights(0).empty());
    CHECK(simpson_node_weights(1) == std::vector<double>{0.0});
    CHECK(simpson_node_weights(2) == std::vector<double>{0.5, 0.5});
    CHECK(simpson_node_weights(3) ==
          std::vector<double>{1.0 / 3.0, 4.0 / 3.0, 1.0 / 3.0});

    // weights integrate the constant 1 over m-1 unit intervals
    for (std::size_t m = 2; m <= 13; ++m) {
        const auto w = simpson_node_weights(m);
        const double s = std::accumulate(w.begin(), w.end(), 0.0);
        CHECK(s == doctest::Approx(double(m - 1)).epsilon(1e-14));
    }

    // exact on cubics for every m >= 3 (both parities, incl. the 3/8 tail)
    for (std::size_t m : {std::size_t(3), std::size_t(4), std::size_t(6),
                          std::size_t(7), std::size_t(10), std::size_t(11)}) {
        const auto w = simpson_node_weights(m);
        double acc = 0.0;
        for (std::size_t i = 0; i < m; ++i) {
            const double x = double(i);
            acc += w[i] * (x * x * x - 2.0 * x + 1.0);
        }
        const double L = double(m - 1);
        const double exact = L * L * L * L / 4.0 - L * L + L;
        CHECK(acc == doctest::Approx(exact).epsilon(1e-13));
    }
}

TEST_CASE("adaptive integrate hits requested tolerance") {
    // polynomial (finite interval)
    const double p = integrate([](double x) { return x * x * x - x; }, {0.0, 2.0}, 1e-12);
    CHECK(p == doctest::Approx(2.0).epsilon(1e-12));

    // against the Gauss-Kronrod oracle on a non-polynomial integrand
    auto f = [](double x) { return std::pow(sech(x), 3); };
    const double mine = integrate(f, {-5.0, 3.0}, 1e-11);
    const double ref = oracle::integral_quad(f, -5.0, 3.0);
    CHECK(mine == doctest::Approx(ref).epsilon(1e-10));

    CHECK_THROWS_AS(integrate([](double) { return 1.0; }, {0.0, 1.0}, 0.0),
                    std::invalid_argument);
}

TEST_CASE("semi-infinite tails truncate by decay profile") {
    // int_0^inf exp(-x) dx = 1 with decay rate exp(-2*0.5*x)
    DecayProfile d{0.5, 0.5, 1e-14};
    const double v = integrate([](double x) { return std::exp(-x); },
                               {0.0, inf}, 1e-12, d);
    CHECK(v == doctest::Approx(1.0).epsilon(1e-11));

    // full-line Gaussian; the quadratic decay beats any linear envelope
    DecayProfile g{1.0, 1.0, 1e-14};
    const double two_pi = 2.0 * std::acos(-1.0);
    const double n = integrate(
        [two_pi](double x) { return std::exp(-0.5 * x * x) / std::sqrt(two_pi); },
        {-inf, inf}, 1e-12, g);
    CHECK(n == doctest::Approx(1.0).epsilon(1e-11));

    CHECK_THROWS(DecayProfile{-1.0, 1.0, 1e-12}.radius());
}

TEST_CASE("integrate is linear in the integrand") {
    std::mt19937 rng(77u);
    std::uniform_real_distribution<double> dc(-3.0, 3.0);
    auto f = [](double x) { return sech(x); };
    auto g = [](double x) { return std::sin(x) * std::exp(-0.1 * x * x); };
    for (int k = 0; k < 5; ++k) {
        const double alpha = dc(rng), beta = dc(rng);
        const double lhs = integrate(
            [&](double x) { return alpha * f(x) + beta * g(x); }, {-4.0, 6.0}, 1e-12);
        const double rhs = alpha * integrate(f, {-4.0, 6.0}, 1e-12) +
                           beta * integrate(g, {-4.0, 6.0}, 1e-12);
        CHECK(lhs == doctest::Approx(rhs).epsilon(1e-10));
    }
}

TEST_CASE("grid_integral agrees with the adaptive routine") {
    GridSpec spec{-6.0, 6.0, 1201};
    Grid g = Grid::sample(spec, [](double x) { return sech(x) * sech(x); });
    const double a = grid_integral(g);
    const double b = integrate([](double x) { return sech(x) * sech(x); },
                               {-6.0, 6.0}, 1e-13);
    CHECK(a == doctest::Approx(b).epsilon(1e-9));
}

TEST_CASE("cumulative integral reproduces antiderivatives at high order") {
    GridSpec spec{0.0, 3.0, 201};
    Grid g = Grid::sample(spec, [](double x) { return std::cos(x); });
    Grid F = cumulative_integral(g);
    double emax = 0.0;
    for (std::size_t i = 0; i < F.n; ++i)
        emax = std::max(emax, std::abs(F.values[i] - std::sin(F.x(i))));
    CHECK(emax < 5e-10);  // h = 0.015, local degree-4 interpolant

    // endpoint matches the global Simpson value
    Grid gi = Grid::sample(spec, [](double x) { return std::exp(-x) * x; });
    Grid Fi = cumulative_integral(gi);
    CHECK(Fi.values.back() == doctest::Approx(grid_integral(gi)).epsilon(1e-9));
    CHECK(Fi.values.front() == 0.0);

    // fifth-order convergence: halving the step shrinks the error ~32x
    GridSpec fine{0.0, 3.0, 401};
    Grid F2 = cumulative_integral(Grid::sample(fine, [](double x) { return std::cos(x); }));
    double emax2 = 0.0;
    for (std::size_t i = 0; i < F2.n; ++i)
        emax2 = std::max(emax2, std::abs(F2.values[i] - std::sin(F2.x(i))));
    CHECK(emax / emax2 > 20.0);

    Grid tiny(GridSpec{0.0, 1.0, 4});
    CHECK_THROWS_AS(cumulative_integral(tiny), std::invalid_argument);
}
