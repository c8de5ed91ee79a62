#pragma once

#include <array>
#include <functional>

#include "hyplab/minkowski.hpp"
#include "hyplab/quadrature.hpp"
#include "hyplab/wavepacket.hpp"

namespace hyplab {

/// Standard unit bump exp(-1/(1-t^2)) on (-1,1), zero outside, with analytic
/// derivatives to order 8 (rational-coefficient recurrence).
double bumpValue(double t);
double bumpDerivative(double t, int order);  // order in [0, 8]

/// Smooth transition: 1 for s <= 0, 0 for s >= 1, strictly monotone between.
/// The outer plateaus are exact (the defining quotient degenerates there).
double plateauStep(double s);

/// Rotation-symmetric C-infinity bump on H+ in geodesic distance from center.
struct HyperboloidProfile {
    HyperboloidPoint center;
    double radius{1.0};
    double amplitude{1.0};

    double operator()(const HyperboloidPoint& u) const;
    /// Shape in the scaled radial variable t = dist/radius (even in t).
    double radial(double t) const;
    double radialDerivative(double t, int order) const;  // d^n/dt^n, n <= 8
    /// Exact sup of |vec(v)| over the support ball.
    double supportNu() const;
    WavepacketAmplitude asAmplitude() const;
};

/// chi-hat(p) = shell(sqrt(p^2)) * angular(p / sqrt(p^2)), real valued,
/// supported in the forward cone. With `plateau` set both factors equal 1
/// exactly on the declared inner region.
struct MomentumProfile {
    double mass_center{1.0};
    double shell_halfwidth{0.2};
    double plateau_halfwidth{0.1};  // inner shell where chi-hat = 1 (plateau mode)
    HyperboloidPoint angular_center;
    double angular_radius{0.6};        // outer geodesic support radius
    double angular_inner_radius{0.3};  // plateau mode inner radius
    bool plateau{true};
    double amplitude{1.0};  // ignored in plateau mode (plateau forces 1)

    MomentumProfile() = default;
    /// Throws std::invalid_argument if the shell support touches the light cone
    /// (mass_center - shell_halfwidth must stay positive) or radii are inconsistent.
    void validate() const;

    double operator()(const FourVector& p) const;
    double shell(double r) const;
    double angular(const HyperboloidPoint& v) const;
    /// True when p lies in the inner region where chi-hat = 1 (plateau mode only).
    bool onPlateau(const FourVector& p) const;
    /// Distance of the support from the light cone: mass_center - shell_halfwidth.
    double supportMargin() const { return mass_center - shell_halfwidth; }
};

/// Multiplier (p^2)^{3/4} of the one-particle-space isomorphism. Throws if p
/// is not forward timelike.
double diamondFactor(const FourVector& p);

/// Pointwise evaluators for the transform and its inverse on the class.
std::function<double(const FourVector&)> diamondTransform(const MomentumProfile& chi);
std::function<double(const FourVector&)> diamondInverse(const MomentumProfile& chi);

/// Normalized smooth time window h supported in (tau1, tau2) subset (0, inf),
/// integral one. The normalization and the Fourier transform use one fixed
/// composite Gauss-Legendre rule so that fourier(0) reproduces 1 to roundoff.
struct TimeKernel {
    double tau1{0.5};
    double tau2{1.5};

    TimeKernel();
    TimeKernel(double t1, double t2);

    double operator()(double lam) const;
    cplx fourier(double omega) const;  // integral of exp(i omega lam) h(lam)
    /// h^eta_Lambda(lam) = h((lam - Lambda)/s + 1)/s with s = (m Lambda)^eta / m.
    double scaledEta(double lam, double Lambda, double eta, double m) const;
    /// Support interval of h^eta_Lambda.
    std::array<double, 2> scaledSupport(double Lambda, double eta, double m) const;

  private:
    double norm_{1.0};
};

/// Creation-coefficient profile of the hyperboloid-smeared field, Fhat_lambda(p)
/// = (lambda/2pi)^{3/2} chi-hat(p) * I(f, rho = lambda sqrt(p^2), v = p/sqrt(p^2)).
/// `chi_value` is evaluated by the caller (plain or diamond version).
cplx fLambdaHat(double chi_value, const HyperboloidProfile& f, double lambda,
                const FourVector& p, const QuadratureSpec& spec);

}  // namespace hyplab
