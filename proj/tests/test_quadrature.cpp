#include <cmath>
#include <complex>

#include "doctest.h"
#include "hyplab/quadrature.hpp"

using namespace hyplab;

TEST_CASE("Gauss-Legendre nodes integrate polynomials exactly") {
    for (int n : {4, 16, 48}) {
        const auto& xs = gaussLegendreNodes(n);
        const auto& ws = gaussLegendreWeights(n);
        REQUIRE((int)xs.size() == n);
        // exact for degree 2n-1
        double val = 0.0;
        const int deg = 2 * n - 1;
        for (int i = 0; i < n; ++i) val += ws[i] * std::pow(xs[i], deg - 1);
        CHECK(val == doctest::Approx(2.0 / deg).epsilon(1e-12));
        double odd = 0.0;
        for (int i = 0; i < n; ++i) odd += ws[i] * std::pow(xs[i], deg);
        CHECK(std::abs(odd) < 1e-13);
    }
}

TEST_CASE("fixed-order rule reproduces a closed-form integral") {
    const std::function<double(double)> f = [](double x) { return std::exp(2.0 * x); };
    const double got = gaussLegendre(f, 0.0, 1.0, 32);
    CHECK(got == doctest::Approx((std::exp(2.0) - 1.0) / 2.0).epsilon(1e-14));
}

TEST_CASE("adaptive rule matches an oscillatory closed form") {
    QuadratureSpec spec;
    const double rho = 200.0;
    const cplx got =
        adaptiveGK([rho](double x) { return std::polar(1.0, rho * x); }, 0.0, 1.0, spec);
    const cplx want = (std::polar(1.0, rho) - 1.0) / cplx(0.0, rho);
    CHECK(std::abs(got - want) < 1e-10);
}

TEST_CASE("adaptive rule throws once the subdivision budget is exhausted") {
    QuadratureSpec spec;
    spec.max_subdivisions = 4;
    auto hard = [](double x) { return std::polar(1.0, 5.0e4 * x * x); };
    CHECK_THROWS_AS(adaptiveGK(hard, 0.0, 1.0, spec), QuadratureError);
    // the exception still carries the best value found
    try {
        adaptiveGK(hard, 0.0, 1.0, spec);
    } catch (const QuadratureError& e) {
        CHECK(std::isfinite(e.best_value.real()));
        CHECK(e.achieved_error > 0.0);
    }
}

TEST_CASE("composite rule halves its panel width to estimate the error") {
    const CompositeResult r =
        compositeGL([](double x) { return cplx(std::sin(3.0 * x), 0.0); }, 0.0, 2.0, 8, 16);
    const double want = (1.0 - std::cos(6.0)) / 3.0;
    CHECK(r.value.real() == doctest::Approx(want).epsilon(1e-13));
    CHECK(std::abs(r.value - want) <= 100.0 * r.error_estimate + 1e-14);
}

TEST_CASE("pairwise summation is order-stable and accurate") {
    std::vector<double> xs(100001);
    for (size_t i = 0; i < xs.size(); ++i) xs[i] = 1.0 / (1.0 + (double)i);
    const double forward = pairwiseSum(xs);
    std::reverse(xs.begin(), xs.end());
    const double backward = pairwiseSum(xs);
    CHECK(forward == doctest::Approx(backward).epsilon(1e-15));
}
