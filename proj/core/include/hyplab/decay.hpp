#pragma once

#include <functional>
#include <vector>

#include "hyplab/fock.hpp"
#include "hyplab/profiles.hpp"
#include "hyplab/ratefit.hpp"

namespace hyplab {

/// Dominance scan of the c/(r + |vec a| - |a0|)^kappa template.
struct DecayScanResult {
    std::vector<FourVector> offsets;
    std::vector<double> values;
    std::vector<double> template_values;
    double c{0.0};  // minimal constant making the template dominate
    double r{0.0};
    double kappa{0.0};
    bool pass{false};
};

/// Smeared two-field commutator as a c-number, by continuum shell quadrature:
/// (2pi)^4 int d3k/((2pi)^3 2 omega)
///   [chi1(-kt) chi2(kt) e^{i kt.a} - chi1(kt) chi2(-kt) e^{-i kt.a}].
/// Radial range [0, kmax], fixed Gauss-Legendre orders; independent of the
/// Fock machinery.
cplx pauliJordanSmeared(const std::function<cplx(const FourVector&)>& chihat1,
                        const std::function<cplx(const FourVector&)>& chihat2,
                        const FourVector& a, double m, double kmax, int radial_order = 96,
                        int theta_order = 32, int phi_order = 32);

/// Same sum on the mode lattice (exactly what the Fock matrices realize).
cplx pauliJordanLattice(const ModeGrid& grid,
                        const std::function<cplx(const FourVector&)>& chihat1,
                        const std::function<cplx(const FourVector&)>& chihat2,
                        const FourVector& a);

/// Equal-time momentum kernel of a spatial bump: chihat(p) = ghat3(p)/(2pi)^2.
std::function<cplx(const FourVector&)> equalTimeKernel(const SpatialBump& g);

/// Kernel of the convolution-smeared field A(chi * phi): (2pi)^2 chihat phihat.
std::function<cplx(const FourVector&)> convolveKernel(
    const std::function<cplx(const FourVector&)>& chihat,
    const std::function<cplx(const FourVector&)>& phihat);

/// Minimal c with kappa and r fixed; throws std::invalid_argument when an
/// offset is not spacelike.
DecayScanResult fitAssumption21(const std::vector<FourVector>& offsets,
                                const std::vector<double>& values, double kappa, double r);

/// c-number modulus of the mixed commutator of two hyperboloid-smeared fields
/// on the lattice: (2pi)^4 sum_k w_k Fhat1(kt) conj(Fhat2(kt)).
cplx hyperboloidCommutatorValue(const ModeGrid& grid,
                                const std::function<double(const FourVector&)>& chi1_eval,
                                const HyperboloidProfile& f1, double lam1,
                                const std::function<double(const FourVector&)>& chi2_eval,
                                const HyperboloidProfile& f2, double lam2,
                                const QuadratureSpec& spec);

/// Integral of |f1 f2| (v0)^3 over H+ with the invariant measure.
double absMomentIntegral(const HyperboloidProfile& f1, const HyperboloidProfile& f2,
                         int radial_order = 64, int theta_order = 32);

struct HyperboloidScan {
    std::vector<double> lam1, lam2, products, values;
    std::vector<double> ratios;       // distinct ratio values scanned
    std::vector<RateFit> ratio_fits;  // one fit per ratio, |value| vs lam1*lam2
    double gamma{0.0}, gamma12{0.0};
};

/// Thm-2.4(ii)-style scan: for each ratio in `ratios` (subset of
/// [e^-gamma, e^gamma]) walk lam1*lam2 over `products` and fit the decay.
/// Rejects gamma >= gamma12 (the support gap of f1, f2).
HyperboloidScan hyperboloidCommutatorScan(const ModeGrid& grid, const MomentumProfile& chi1,
                                          const HyperboloidProfile& f1,
                                          const MomentumProfile& chi2,
                                          const HyperboloidProfile& f2,
                                          const std::vector<double>& products,
                                          const std::vector<double>& ratios, double gamma,
                                          const QuadratureSpec& spec);

/// Vacuum cluster correlator
///   K = (Omega, B12(y1) E_orth U(-y) B34(y2) Omega),
/// B_ij(z) = [Psi_i(z/2), Psi_j(-z/2)], on the truncated Fock space.
cplx clusterFunctionK(const FockBasis& basis, const OperatorMatrix& P1, const OperatorMatrix& P2,
                      const OperatorMatrix& P3, const OperatorMatrix& P4, const FourVector& y1,
                      const FourVector& y2, const FourVector& y);

/// Independent mode-level Wick-contraction evaluation of the same K for Wick
/// squares of four spatial bumps (no Fock-basis machinery involved).
cplx clusterOracleWick(const ModeGrid& grid, const SpatialBump& g1, const SpatialBump& g2,
                       const SpatialBump& g3, const SpatialBump& g4, const FourVector& y1,
                       const FourVector& y2, const FourVector& y);

struct AhrReport {
    std::vector<FourVector> offsets;
    std::vector<double> values;
    std::vector<double> separations;  // |vec y| - |y0|
    std::vector<int> skipped;         // indices violating the hypothesis
    double c2{0.0};                   // fitted constant of the 1/sep^2 envelope
    double excess_slope{0.0};         // log-log slope of value * sep^2 (<= 0 expected)
    double r{0.0};
};

/// |(Omega, B1 E_orth U(y) B2 Omega)| on the grid; hypothesis |vec y| >= |y0| + 2r.
AhrReport ahrBoundCheck(const FockBasis& basis, const OperatorMatrix& B1,
                        const OperatorMatrix& B2, const std::vector<FourVector>& ys, double r);

}  // namespace hyplab
