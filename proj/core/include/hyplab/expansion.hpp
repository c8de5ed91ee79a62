#pragma once

#include <vector>

#include "hyplab/minkowski.hpp"
#include "hyplab/profiles.hpp"
#include "hyplab/quadrature.hpp"
#include "hyplab/ratefit.hpp"
#include "hyplab/wavepacket.hpp"

namespace hyplab {

/// One row of the expansion check at fixed rho and direction v.
struct ExpansionResult {
    double rho{0.0};
    HyperboloidPoint v;
    std::vector<cplx> terms;  // rho^{-k} c_k, k = 0..N
    cplx oracle;              // quadrature value with the prefactor divided out
    double remainder_estimate{0.0};
};

/// Complex-valued radial function about a hyperboloid center, sampled on a
/// uniform grid over [0, rmax] (cubic interpolation, even at 0, 0 beyond).
/// Carrier for the recursion corrections, which need not stay real.
struct RadialFunction {
    HyperboloidPoint center;
    double rmax{0.0};
    std::vector<cplx> values;

    cplx eval(double r) const;
    cplx operator()(const HyperboloidPoint& u) const { return eval(hyperbolicDist(u, center)); }
    WavepacketAmplitude realAmplitude() const;
    WavepacketAmplitude imagAmplitude() const;
};

/// Oscillatory integral of a complex radial amplitude (two real passes).
cplx integrateRadial(const RadialFunction& g, double rho, const HyperboloidPoint& v,
                     const QuadratureSpec& spec);

/// Default log-spaced grid, 16 points per decade over [lo, hi].
std::vector<double> defaultRhoGrid(double lo = 30.0, double hi = 300.0, int per_decade = 16);

/// Coefficients c_k, k = 0..kmax, in the large-rho fit of the reduced
/// oscillatory amplitude to sum c_k rho^{-k}. The fit runs over rho_grid with
/// `extra` spare powers absorbing the truncation tail; c_0 reproduces the
/// amplitude at v. Throws std::runtime_error when the normal system is
/// ill-conditioned (condition number reported in the message).
std::vector<cplx> extractLk(const WavepacketAmplitude& amp, const HyperboloidPoint& v, int kmax,
                            const std::vector<double>& rho_grid, const QuadratureSpec& spec,
                            int extra = 2, double* condition = nullptr);

/// Evaluation of the expansion against the quadrature oracle at one rho.
ExpansionResult expandAt(const WavepacketAmplitude& amp, const HyperboloidPoint& v, double rho,
                         const std::vector<cplx>& coefficients, const QuadratureSpec& spec);

/// Corrections f_0..f_N of the recursion f_k = -sum_{j<k} L_{k-j} f_j, built
/// as radial functions about the profile center (the profile is rotation
/// symmetric, so every correction is too).
std::vector<RadialFunction> recursiveCorrections(const HyperboloidProfile& f, int N,
                                                 int radial_points,
                                                 const std::vector<double>& rho_grid,
                                                 const QuadratureSpec& spec);

/// Remainder-rate check of the corrected momentum-space expansion:
/// R(lambda, p) = exp(-i 3pi/4) sum_j lambda^{-j} (lambda/2pi)^{3/2}
///                chi_j(p) I(f_j, rho, v)  -  exp(i rho) chi(p) f(v),
/// with chi_j(p) = chi(p) (p^2)^{3/4 - j/2}, rho = lambda sqrt(p^2),
/// v = p/sqrt(p^2). Returns the log-log fit of max_p |R| against lambda.
RateFit verifyFexp(const MomentumProfile& chi, const HyperboloidProfile& f, int N,
                   const std::vector<double>& lambda_grid,
                   const std::vector<FourVector>& p_samples, const QuadratureSpec& spec,
                   int radial_points = 41, std::vector<double>* residuals = nullptr);

}  // namespace hyplab
