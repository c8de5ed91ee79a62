#include <cstdio>
#include <filesystem>

#include "doctest.h"
#include "hyplab/fock.hpp"

using namespace hyplab;

namespace {
FockBasis smallBasis(int n_max = 2) {
    return FockBasis::build(ModeGrid::build(1.0, 0.5, 0.5), n_max, 2000);
}
}  // namespace

TEST_CASE("basis enumeration: vacuum first, consistent momenta, dimension guard") {
    const FockBasis b = smallBasis();
    REQUIRE(b.dim() > 1);
    for (int o : b.states[0]) CHECK(o == 0);
    CHECK(b.momenta[0].t == 0.0);
    for (int s = 0; s < b.dim(); ++s) {
        FourVector P{0.0, 0.0, 0.0, 0.0};
        for (size_t m = 0; m < b.states[s].size(); ++m)
            P = P + b.grid.modes[m].onShell() * (double)b.states[s][m];
        CHECK(std::abs(P.t - b.momenta[s].t) < 1e-12);
        CHECK(b.indexOf(b.states[s]) == s);
    }
    CHECK_THROWS_AS(FockBasis::build(ModeGrid::build(1.0, 0.5, 1.0), 2, 10), std::runtime_error);
}

TEST_CASE("ladder algebra: number operator and truncated canonical commutator") {
    const FockBasis b = smallBasis();
    const int mode = 3;
    const Eigen::MatrixXcd a = annihilator(b, mode);
    const Eigen::MatrixXcd comm = bracket(a, a.adjoint());
    // canonical on every state that stays below the truncation ceiling
    for (int s = 0; s < b.dim(); ++s) {
        int total = 0;
        for (int o : b.states[s]) total += o;
        if (total >= b.n_max) continue;
        CHECK(std::abs(comm(s, s) - 1.0) < 1e-14);
    }
    // the defect is confined to the top layer
    for (int s = 0; s < b.dim(); ++s)
        for (int t = 0; t < b.dim(); ++t)
            if (s != t) CHECK(std::abs(comm(s, t)) < 1e-14);
}

TEST_CASE("field operators are self-adjoint for real kernels") {
    const FockBasis b = smallBasis();
    const SpatialBump g{{0.1, 0.0, 0.0}, 0.6, 1.0};
    const OperatorMatrix phi = buildSpatialFieldOperator(b, g);
    CHECK((phi.mat - phi.mat.adjoint()).norm() < 1e-12);
    const OperatorMatrix w = buildWickSquare(b, g);
    CHECK((w.mat - w.mat.adjoint()).norm() < 1e-12);
    // normal ordering: vanishing vacuum expectation
    CHECK(std::abs(w.mat(0, 0)) < 1e-15);
}

TEST_CASE("wick square matches the quadratic ladder expansion on a tiny basis") {
    const FockBasis b = smallBasis(2);
    const SpatialBump g{{0.0, 0.0, 0.0}, 0.5, 1.0};
    const int M = b.grid.size();
    Eigen::MatrixXcd direct = Eigen::MatrixXcd::Zero(b.dim(), b.dim());
    for (int m = 0; m < M; ++m) {
        const Eigen::MatrixXcd am = annihilator(b, m);
        for (int l = 0; l < M; ++l) {
            const Eigen::MatrixXcd al = annihilator(b, l);
            const auto& km = b.grid.modes[m];
            const auto& kl = b.grid.modes[l];
            const double rw = std::sqrt(km.weight * kl.weight);
            const std::array<double, 3> sum{km.k[0] + kl.k[0], km.k[1] + kl.k[1],
                                            km.k[2] + kl.k[2]};
            const std::array<double, 3> msum{-sum[0], -sum[1], -sum[2]};
            const std::array<double, 3> diff{km.k[0] - kl.k[0], km.k[1] - kl.k[1],
                                             km.k[2] - kl.k[2]};
            direct += rw * g.fourier3(msum) * (am * al);
            direct += rw * g.fourier3(sum) * (am.adjoint() * al.adjoint());
            direct += 2.0 * rw * g.fourier3(diff) * (am.adjoint() * al);
        }
    }
    CHECK((buildWickSquare(b, g).mat - direct).norm() < 1e-12);
}

TEST_CASE("translations are diagonal phases and covariant on field operators") {
    const FockBasis b = smallBasis();
    const FourVector a{0.3, 0.7, -0.2, 0.1};
    const OperatorMatrix U = translationOperator(b, a);
    CHECK((U.mat * U.mat.adjoint() - Eigen::MatrixXcd::Identity(b.dim(), b.dim())).norm() <
          1e-12);
    CHECK(std::abs(U.mat(0, 0) - cplx(1.0, 0.0)) < 1e-15);

    // translating an equal-time field equals the field of the shifted bump
    // when the shift is purely spatial
    const SpatialBump g{{0.0, 0.0, 0.0}, 0.5, 1.0};
    const FourVector shift{0.0, 0.4, 0.0, 0.0};
    const OperatorMatrix lhs = translateOperator(b, buildSpatialFieldOperator(b, g), shift);
    SpatialBump g2 = g;
    g2.center = {0.4, 0.0, 0.0};
    const OperatorMatrix rhs = buildSpatialFieldOperator(b, g2);
    CHECK((lhs.mat - rhs.mat).norm() < 1e-10);
}

TEST_CASE("spectral projectors are diagonal and idempotent") {
    const FockBasis b = smallBasis();
    const OperatorMatrix E =
        spectralProjector(b, [](const FourVector& P) { return P.t <= 2.0; }, "E");
    CHECK((E.mat * E.mat - E.mat).norm() < 1e-15);
    const OperatorMatrix Eo = vacuumOrthProjector(b);
    CHECK(std::abs(Eo.mat(0, 0)) < 1e-15);
    CHECK(std::abs(Eo.mat(1, 1) - cplx(1.0, 0.0)) < 1e-15);
}

TEST_CASE("operator norm equals the largest singular value") {
    Eigen::MatrixXcd A(2, 2);
    A << cplx(3.0, 0.0), cplx(0.0, 0.0), cplx(0.0, 0.0), cplx(0.0, -2.0);
    CHECK(operatorNorm(A) == doctest::Approx(3.0).epsilon(1e-13));
}

TEST_CASE("kernel projector bounds: jordan block saturation and ambiguity rejection") {
    Eigen::MatrixXcd J = Eigen::MatrixXcd::Zero(2, 2);
    J(0, 1) = 1.0;
    const LemmaReport rep = kernelProjectorLemmaCheck(J, 2);
    CHECK(rep.kernel_dim == 2);
    CHECK(std::abs(rep.lhs1 - rep.rhs1) < 1e-12);
    CHECK(rep.satisfied(1e-12));

    // singular values straddling the threshold within a factor 10 are refused
    Eigen::MatrixXcd A = Eigen::MatrixXcd::Zero(2, 2);
    A(0, 0) = 1.0;
    A(1, 1) = 3e-9;  // relative to sigma_max = 1, sits at the 1e-9 threshold
    CHECK_THROWS_AS(kernelProjectorLemmaCheck(A, 1), std::runtime_error);
}

TEST_CASE("operator dump/load round trip and convention mismatch rejection") {
    const FockBasis b = smallBasis();
    const SpatialBump g{{0.0, 0.0, 0.0}, 0.5, 1.0};
    const OperatorMatrix w = buildWickSquare(b, g);
    const std::string path =
        (std::filesystem::temp_directory_path() / "hyplab_test_op.bin").string();
    dumpOperator(w, path, "test-convention-1");
    const OperatorMatrix back = loadOperator(path, "test-convention-1");
    CHECK((back.mat - w.mat).norm() == 0.0);
    CHECK(back.label == w.label);
    CHECK_THROWS_AS(loadOperator(path, "other-convention"), std::runtime_error);
    std::filesystem::remove(path);
}
