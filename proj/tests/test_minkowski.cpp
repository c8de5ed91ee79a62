#include <random>

#include "doctest.h"
#include "hyplab/minkowski.hpp"

using namespace hyplab;

TEST_CASE("hyperboloid points sit on the unit shell") {
    const HyperboloidPoint p{0.3, -1.2, 0.8};
    CHECK(minkowskiSquare(p.asFourVector()) == doctest::Approx(1.0).epsilon(1e-14));
    CHECK(p.v0 >= 1.0);
}

TEST_CASE("geodesic distance is symmetric, zero on the diagonal, boost invariant") {
    const HyperboloidPoint a{0.5, 0.0, -0.2}, b{-0.3, 1.1, 0.4};
    CHECK(hyperbolicDist(a, a) == 0.0);
    CHECK(hyperbolicDist(a, b) == doctest::Approx(hyperbolicDist(b, a)).epsilon(1e-15));

    const LorentzBoost L = LorentzBoost::rapidity({0.0, 1.0, 0.0}, 0.8)
                               .compose(LorentzBoost::rotation({0.0, 0.0, 1.0}, 0.5));
    CHECK(hyperbolicDist(L.apply(a), L.apply(b)) ==
          doctest::Approx(hyperbolicDist(a, b)).epsilon(1e-12));
}

TEST_CASE("boosts preserve the metric and compose with their inverses") {
    const LorentzBoost L = LorentzBoost::toPoint(HyperboloidPoint{1.3, -0.4, 0.7});
    CHECK(L.metricDefect() < 1e-12);
    const LorentzBoost I = L.compose(L.inverse());
    const FourVector x{0.7, 1.0, -2.0, 0.3};
    const FourVector y = I.apply(x);
    CHECK(std::abs(y.t - x.t) < 1e-12);
    CHECK(std::abs(y.x[0] - x.x[0]) < 1e-12);

    // toPoint maps the rest point to its target
    const HyperboloidPoint target{1.3, -0.4, 0.7};
    const HyperboloidPoint image = L.apply(HyperboloidPoint{0.0, 0.0, 0.0});
    CHECK(std::abs(image.v[0] - target.v[0]) < 1e-12);
    CHECK(std::abs(image.v[2] - target.v[2]) < 1e-12);
}

TEST_CASE("non-orthochronous or non-metric matrices are rejected") {
    std::array<std::array<double, 4>, 4> m{};
    for (int i = 0; i < 4; ++i) m[i][i] = 1.0;
    m[0][0] = -1.0;  // time reversal
    m[1][1] = -1.0;
    CHECK_THROWS_AS(LorentzBoost{m}, std::invalid_argument);
    m[0][0] = 2.0;  // not metric preserving
    m[1][1] = 1.0;
    CHECK_THROWS_AS(LorentzBoost{m}, std::invalid_argument);
}

TEST_CASE("velocity-cone inequalities hold on a random sweep") {
    std::mt19937_64 rng(7);
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    std::normal_distribution<double> gauss(0.0, 1.0);
    int conditional_hits = 0;
    for (int i = 0; i < 20000; ++i) {
        const double nu = 0.1 + 3.0 * unit(rng);
        auto draw = [&] {
            std::array<double, 3> d{gauss(rng), gauss(rng), gauss(rng)};
            const double n = std::sqrt(d[0] * d[0] + d[1] * d[1] + d[2] * d[2]);
            const double mag = nu * unit(rng);
            return HyperboloidPoint{mag * d[0] / n, mag * d[1] / n, mag * d[2] / n};
        };
        const HyperboloidPoint v1 = draw(), v2 = draw();
        const double l1 = std::pow(10.0, 3.0 * unit(rng));
        const double l2 = std::pow(10.0, 3.0 * unit(rng));
        const GeomBoundsReport rep = geomBounds(v1, v2, l1, l2, nu);
        CHECK(rep.satisfied(1e-12));
        conditional_hits += rep.cond_applicable;

        const DifferenceRegion region = supportDifferenceBound(nu);
        CHECK(region.contains(v1.asFourVector() - v2.asFourVector(), 1e-12));
    }
    CHECK(conditional_hits > 0);  // the conditional branch is actually exercised
}

TEST_CASE("difference region is sharp on axis-aligned pairs") {
    const double nu = 1.5;
    const DifferenceRegion region = supportDifferenceBound(nu);
    const HyperboloidPoint a{nu, 0.0, 0.0}, b{-nu, 0.0, 0.0};
    const FourVector q = a.asFourVector() - b.asFourVector();
    CHECK(q.spatialNorm() == doctest::Approx(2.0 * nu).epsilon(1e-14));
    CHECK(region.contains(q, 1e-12));
    // scaling slightly past the radius bound leaves the region
    const FourVector q2{q.t, q.x[0] * 1.01, q.x[1], q.x[2]};
    CHECK_FALSE(region.contains(q2, 1e-12));
}

TEST_CASE("precondition violations are rejected") {
    const HyperboloidPoint far{3.0, 0.0, 0.0};
    CHECK_THROWS_AS(geomBounds(far, HyperboloidPoint{0, 0, 0}, 1.0, 1.0, 0.5),
                    std::invalid_argument);
}
