#pragma once

#include <array>
#include <functional>

#include "hyplab/minkowski.hpp"
#include "hyplab/quadrature.hpp"

namespace hyplab {

/// Amplitude on the unit hyperboloid together with exact support data.
/// The support ball (geodesic, radius about center) must contain supp f.
struct WavepacketAmplitude {
    std::function<double(const HyperboloidPoint&)> f;
    HyperboloidPoint support_center;
    double support_radius{0.0};
    /// f depends only on dist(u, support_center): the phi sweep of the sphere
    /// quadrature collapses to a single sample.
    bool azimuthally_symmetric{false};
};

struct SphereRule {
    int n_theta{32};
    int n_phi{32};
};

/// I(rho, v) = integral of f(u) exp(i rho v.u) over H+ with measure d3u/u0.
/// Evaluated in hyperbolic normal coordinates centered at v; the radial
/// oscillation exp(i rho cosh r) is resolved adaptively (Gauss-Kronrod).
cplx integrateWavepacket(const WavepacketAmplitude& amp, double rho,
                         const HyperboloidPoint& v, const QuadratureSpec& spec,
                         const SphereRule& sphere = {});

/// Same integral on a fixed composite tensor Gauss-Legendre grid in r.
/// Independent of the adaptive path; used as the second scheme of the
/// dual-scheme cross check.
cplx integrateWavepacketTensor(const WavepacketAmplitude& amp, double rho,
                               const HyperboloidPoint& v, int radial_panels,
                               int radial_order, const SphereRule& sphere = {});

/// Universal stationary-phase prefactor exp(i 3pi/4) (2pi/rho)^{3/2} exp(i rho).
cplx stationaryPhasePrefactor(double rho);

/// I divided by the prefactor; tends to f(v) as rho grows.
cplx reducedAmplitude(cplx integral_value, double rho);

/// Orthonormal spacelike frame at v with the first axis pointed toward
/// `toward` (geodesic direction); arbitrary but deterministic when the two
/// points coincide. Frame vectors satisfy e_i.e_j = -delta_ij, e_i.v = 0.
std::array<FourVector, 3> tangentFrame(const HyperboloidPoint& v,
                                       const HyperboloidPoint& toward);

}  // namespace hyplab
