#include <cmath>

#include "doctest.h"
#include "hyplab/expansion.hpp"

using namespace hyplab;

TEST_CASE("radial carrier interpolates its samples and respects the support") {
    RadialFunction g;
    g.center = HyperboloidPoint{0.0, 0.0, 0.0};
    g.rmax = 1.0;
    for (int i = 0; i <= 20; ++i) {
        const double r = i / 20.0;
        g.values.push_back(cplx(std::cos(r), r * r));
    }
    CHECK(std::abs(g.eval(0.35) - cplx(std::cos(0.35), 0.35 * 0.35)) < 1e-4);
    CHECK(g.eval(1.5) == cplx(0.0, 0.0));
    // even reflection at the origin: smooth, no jump
    CHECK(std::abs(g.eval(0.001) - g.eval(0.0)) < 1e-4);
}

TEST_CASE("extracted leading coefficient reproduces the amplitude") {
    const HyperboloidProfile f{HyperboloidPoint{0.0, 0.0, 0.0}, 1.8, 1.0};
    QuadratureSpec spec;
    spec.max_subdivisions = 40000;
    const HyperboloidPoint v{0.2, 0.0, 0.0};
    const auto coeffs = extractLk(f.asAmplitude(), v, 2, defaultRhoGrid(100.0, 1.0e4), spec);
    REQUIRE(coeffs.size() >= 3);
    CHECK(std::abs(coeffs[0] - cplx(f(v), 0.0)) < 1e-6);
}

TEST_CASE("remainder rates improve with each correction order") {
    MomentumProfile chi;
    chi.mass_center = 1.0;
    chi.angular_center = HyperboloidPoint{0.0, 0.0, 0.0};
    chi.angular_inner_radius = 1.3;
    chi.angular_radius = 1.9;
    chi.validate();
    const HyperboloidProfile f{HyperboloidPoint{0.0, 0.0, 0.0}, 1.2, 1.0};
    QuadratureSpec spec;
    spec.max_subdivisions = 40000;

    const std::vector<double> lambdas = defaultRhoGrid(30.0, 300.0, 8);
    const std::vector<FourVector> ps = {
        {1.0, 0.0, 0.0, 0.0},
        {1.02 * std::cosh(0.3), 1.02 * std::sinh(0.3), 0.0, 0.0},
    };
    const RateFit fit0 = verifyFexp(chi, f, 0, lambdas, ps, spec);
    REQUIRE(fit0.valid);
    CHECK(fit0.slope <= -0.8);

    const RateFit fit2 = verifyFexp(chi, f, 2, lambdas, ps, spec);
    REQUIRE(fit2.valid);
    CHECK(fit2.slope <= -2.6);
    CHECK(fit2.slope < fit0.slope);
}

TEST_CASE("recursive corrections start from the profile itself") {
    const HyperboloidProfile f{HyperboloidPoint{0.0, 0.0, 0.0}, 1.5, 1.0};
    QuadratureSpec spec;
    spec.max_subdivisions = 40000;
    const auto fs = recursiveCorrections(f, 1, 21, defaultRhoGrid(100.0, 1.0e4), spec);
    REQUIRE(fs.size() == 2);
    // f_0 is the profile
    CHECK(std::abs(fs[0].eval(0.0) - cplx(f(f.center), 0.0)) < 1e-12);
    // 0.75 is a sample node of the 21-point radial carrier, so no
    // interpolation error enters the comparison
    CHECK(std::abs(fs[0].eval(0.75) - cplx(f.radial(0.75 / f.radius) * 1.0, 0.0)) < 1e-9);
    // f_1 is not identically zero
    double m1 = 0.0;
    for (const cplx& z : fs[1].values) m1 = std::max(m1, std::abs(z));
    CHECK(m1 > 0.0);
}
