#include "hyplab/wavepacket.hpp"

#include <algorithm>
#include <cmath>

namespace hyplab {

namespace {

FourVector frameColumn(const LorentzBoost& B, int spatial_axis) {
    const auto& m = B.matrix();
    // column spatial_axis+1 of the boost: image of the standard unit vector
    return {m[0][spatial_axis + 1], m[1][spatial_axis + 1], m[2][spatial_axis + 1],
            m[3][spatial_axis + 1]};
}

// Euclidean inner product on frame coordinates (frame vectors are spacelike
// orthonormal, e_i.e_j = -delta_ij, so -minkowskiDot is the right pairing).
double frameDot(const FourVector& e, const FourVector& a) { return -minkowskiDot(e, a); }

}  // namespace

std::array<FourVector, 3> tangentFrame(const HyperboloidPoint& v, const HyperboloidPoint& toward) {
    const LorentzBoost B = LorentzBoost::toPoint(v);
    std::array<FourVector, 3> e = {frameColumn(B, 0), frameColumn(B, 1), frameColumn(B, 2)};

    const double D = hyperbolicDist(v, toward);
    if (D < 1e-12) return e;

    // unit tangent at v pointing toward the target along the geodesic
    const double sh = std::sinh(D);
    FourVector T = (toward.asFourVector() - v.asFourVector() * std::cosh(D)) * (1.0 / sh);

    std::array<double, 3> t{frameDot(e[0], T), frameDot(e[1], T), frameDot(e[2], T)};
    const double tn = std::sqrt(t[0] * t[0] + t[1] * t[1] + t[2] * t[2]);
    if (tn < 1e-14) return e;
    for (auto& c : t) c /= tn;

    // complete {t} to a right-handed orthonormal basis of frame coordinates
    std::array<double, 3> a{1.0, 0.0, 0.0};
    if (std::abs(t[0]) > 0.9) a = {0.0, 1.0, 0.0};
    std::array<double, 3> u2{a[1] * t[2] - a[2] * t[1], a[2] * t[0] - a[0] * t[2],
                             a[0] * t[1] - a[1] * t[0]};
    const double u2n = std::sqrt(u2[0] * u2[0] + u2[1] * u2[1] + u2[2] * u2[2]);
    for (auto& c : u2) c /= u2n;
    std::array<double, 3> u3{t[1] * u2[2] - t[2] * u2[1], t[2] * u2[0] - t[0] * u2[2],
                             t[0] * u2[1] - t[1] * u2[0]};

    auto combine = [&](const std::array<double, 3>& c) {
        return e[0] * c[0] + e[1] * c[1] + e[2] * c[2];
    };
    return {combine(t), combine(u2), combine(u3)};
}

namespace {

struct NormalChart {
    FourVector v4;
    std::array<FourVector, 3> e;  // e[0] toward the support center
    double r_lo, r_hi;            // radial support window
    double D;                     // dist(v, support center)
    double R;                     // support radius
};

NormalChart makeChart(const WavepacketAmplitude& amp, const HyperboloidPoint& v) {
    NormalChart c;
    c.v4 = v.asFourVector();
    c.e = tangentFrame(v, amp.support_center);
    c.D = hyperbolicDist(v, amp.support_center);
    c.R = amp.support_radius;
    c.r_lo = std::max(0.0, c.D - c.R);
    c.r_hi = c.D + c.R;
    return c;
}

// Sphere section at geodesic radius r, restricted in cos(theta) to the cap
// meeting the support ball. theta is measured from e[0].
double sphereSection(const NormalChart& c, const WavepacketAmplitude& amp, double r,
                     const SphereRule& sph) {
    double mu_lo = -1.0, mu_hi = 1.0;
    const double shr = std::sinh(r), chr = std::cosh(r);
    if (c.D > 1e-12 && shr > 1e-300) {
        // cosh dist(u, center) = cosh r cosh D - sinh r sinh D cos(theta) <= cosh R
        const double bound = (chr * std::cosh(c.D) - std::cosh(c.R)) / (shr * std::sinh(c.D));
        mu_lo = std::max(-1.0, bound);
        if (mu_lo >= mu_hi) return 0.0;
    }
    const auto& xs = gaussLegendreNodes(sph.n_theta);
    const auto& ws = gaussLegendreWeights(sph.n_theta);
    const double half = 0.5 * (mu_hi - mu_lo), mid = 0.5 * (mu_hi + mu_lo);

    const int n_phi = amp.azimuthally_symmetric ? 1 : sph.n_phi;
    std::vector<double> theta_terms(sph.n_theta);
    std::vector<double> phi_terms(n_phi);
    for (int i = 0; i < sph.n_theta; ++i) {
        const double mu = mid + half * xs[i];
        const double st = std::sqrt(std::max(0.0, 1.0 - mu * mu));
        for (int j = 0; j < n_phi; ++j) {
            const double phi = 2.0 * M_PI * j / n_phi;  // periodic trapezoid
            FourVector n = c.e[0] * mu + c.e[1] * (st * std::cos(phi)) + c.e[2] * (st * std::sin(phi));
            FourVector u4 = c.v4 * chr + n * shr;
            phi_terms[j] = amp.f(toHyperboloid(u4));
        }
        theta_terms[i] = ws[i] * pairwiseSum(phi_terms);
    }
    return half * (2.0 * M_PI / n_phi) * pairwiseSum(theta_terms);
}

}  // namespace

cplx integrateWavepacket(const WavepacketAmplitude& amp, double rho, const HyperboloidPoint& v,
                         const QuadratureSpec& spec, const SphereRule& sphere) {
    if (!(rho > 0.0)) throw std::invalid_argument("integrateWavepacket: rho must be positive");
    if (amp.support_radius <= 0.0) return cplx(0.0, 0.0);
    NormalChart chart = makeChart(amp, v);

    auto radial = [&](double r) -> cplx {
        const double S = sphereSection(chart, amp, r, sphere);
        if (S == 0.0) return cplx(0.0, 0.0);
        const double sh = std::sinh(r);
        return std::polar(sh * sh * S, rho * std::cosh(r));
    };
    // resolve the radial phase: rho (cosh r_hi - cosh r_lo) / 2pi periods
    const double periods = rho * (std::cosh(chart.r_hi) - std::cosh(chart.r_lo)) / (2.0 * M_PI);
    const int init = std::max(1, (int)std::ceil(periods * spec.oscillation_resolution / 15.0));
    return adaptiveGK(radial, chart.r_lo, chart.r_hi, spec, init);
}

cplx integrateWavepacketTensor(const WavepacketAmplitude& amp, double rho,
                               const HyperboloidPoint& v, int radial_panels, int radial_order,
                               const SphereRule& sphere) {
    if (!(rho > 0.0)) throw std::invalid_argument("integrateWavepacketTensor: rho must be positive");
    if (amp.support_radius <= 0.0) return cplx(0.0, 0.0);
    NormalChart chart = makeChart(amp, v);

    auto radial = [&](double r) -> cplx {
        const double S = sphereSection(chart, amp, r, sphere);
        const double sh = std::sinh(r);
        return std::polar(sh * sh * S, rho * std::cosh(r));
    };
    const double periods = rho * (std::cosh(chart.r_hi) - std::cosh(chart.r_lo)) / (2.0 * M_PI);
    const int panels = std::max(radial_panels, (int)std::ceil(periods * 8.0 / radial_order));
    return compositeGL(radial, chart.r_lo, chart.r_hi, panels, radial_order).value;
}

cplx stationaryPhasePrefactor(double rho) {
    const double mag = std::pow(2.0 * M_PI / rho, 1.5);
    return std::polar(mag, 0.75 * M_PI + rho);
}

cplx reducedAmplitude(cplx integral_value, double rho) {
    return integral_value / stationaryPhasePrefactor(rho);
}

}  // namespace hyplab
