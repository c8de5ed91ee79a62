#include "hyplab/profiles.hpp"

#include <cmath>
#include <vector>

namespace hyplab {

namespace {

constexpr int kMaxBumpOrder = 8;

// b^{(n)}(t) = P_n(t) (1-t^2)^{-2n} b(t); the P_n have integer coefficients,
// P_{n+1} = P_n'(1-t^2)^2 + (4n t (1-t^2) - 2t) P_n.
using Poly = std::vector<double>;

Poly polyDeriv(const Poly& p) {
    if (p.size() <= 1) return {0.0};
    Poly d(p.size() - 1);
    for (size_t i = 1; i < p.size(); ++i) d[i - 1] = p[i] * (double)i;
    return d;
}
Poly polyMul(const Poly& a, const Poly& b) {
    Poly c(a.size() + b.size() - 1, 0.0);
    for (size_t i = 0; i < a.size(); ++i)
        for (size_t j = 0; j < b.size(); ++j) c[i + j] += a[i] * b[j];
    return c;
}
Poly polyAdd(const Poly& a, const Poly& b) {
    Poly c(std::max(a.size(), b.size()), 0.0);
    for (size_t i = 0; i < a.size(); ++i) c[i] += a[i];
    for (size_t i = 0; i < b.size(); ++i) c[i] += b[i];
    return c;
}

const std::vector<Poly>& bumpPolys() {
    static const std::vector<Poly> table = [] {
        std::vector<Poly> ps;
        ps.push_back({1.0});  // P_0
        const Poly one_minus_t2{1.0, 0.0, -1.0};
        const Poly omt2_sq = polyMul(one_minus_t2, one_minus_t2);
        for (int n = 0; n < kMaxBumpOrder; ++n) {
            const Poly& pn = ps.back();
            Poly a = polyMul(polyDeriv(pn), omt2_sq);
            Poly factor = polyAdd(polyMul({0.0, 4.0 * n}, one_minus_t2), {0.0, -2.0});
            ps.push_back(polyAdd(a, polyMul(factor, pn)));
        }
        return ps;
    }();
    return table;
}

double polyEval(const Poly& p, double t) {
    double acc = 0.0;
    for (size_t i = p.size(); i-- > 0;) acc = acc * t + p[i];
    return acc;
}

}  // namespace

double bumpValue(double t) {
    const double s = 1.0 - t * t;
    if (s <= 0.0) return 0.0;
    return std::exp(-1.0 / s);
}

double bumpDerivative(double t, int order) {
    if (order < 0 || order > kMaxBumpOrder)
        throw std::invalid_argument("bumpDerivative: order out of range [0, 8]");
    const double s = 1.0 - t * t;
    if (s <= 0.0) return 0.0;
    // exp(-1/s) / s^{2n} computed through the exponent to avoid 0 * inf
    const double scale = std::exp(-1.0 / s - 2.0 * order * std::log(s));
    return polyEval(bumpPolys()[order], t) * scale;
}

double plateauStep(double s) {
    if (s <= 0.0) return 1.0;
    if (s >= 1.0) return 0.0;
    const double g1 = std::exp(-1.0 / (1.0 - s));
    const double g2 = std::exp(-1.0 / s);
    return g1 / (g1 + g2);
}

double HyperboloidProfile::operator()(const HyperboloidPoint& u) const {
    return radial(hyperbolicDist(u, center) / radius);
}

double HyperboloidProfile::radial(double t) const { return amplitude * bumpValue(t); }

double HyperboloidProfile::radialDerivative(double t, int order) const {
    return amplitude * bumpDerivative(t, order);
}

double HyperboloidProfile::supportNu() const {
    // max rapidity on the support ball is rap(center) + radius
    const double sh = center.spatialNorm();
    const double ch = center.v0;
    return sh * std::cosh(radius) + ch * std::sinh(radius);
}

WavepacketAmplitude HyperboloidProfile::asAmplitude() const {
    HyperboloidProfile copy = *this;
    return {[copy](const HyperboloidPoint& u) { return copy(u); }, center, radius, true};
}

void MomentumProfile::validate() const {
    if (!(mass_center > 0.0) || !(shell_halfwidth > 0.0))
        throw std::invalid_argument("MomentumProfile: mass_center and shell_halfwidth must be positive");
    if (!(mass_center - shell_halfwidth > 0.0))
        throw std::invalid_argument("MomentumProfile: shell support touches the light cone");
    if (!(angular_radius > 0.0))
        throw std::invalid_argument("MomentumProfile: angular_radius must be positive");
    if (plateau) {
        if (!(plateau_halfwidth > 0.0) || !(plateau_halfwidth < shell_halfwidth))
            throw std::invalid_argument("MomentumProfile: plateau_halfwidth must lie in (0, shell_halfwidth)");
        if (!(angular_inner_radius > 0.0) || !(angular_inner_radius < angular_radius))
            throw std::invalid_argument("MomentumProfile: angular_inner_radius must lie in (0, angular_radius)");
    }
}

double MomentumProfile::shell(double r) const {
    const double d = std::abs(r - mass_center);
    if (plateau) {
        return plateauStep((d - plateau_halfwidth) / (shell_halfwidth - plateau_halfwidth));
    }
    return bumpValue(d / shell_halfwidth);
}

double MomentumProfile::angular(const HyperboloidPoint& v) const {
    const double d = hyperbolicDist(v, angular_center);
    if (plateau) {
        return plateauStep((d - angular_inner_radius) / (angular_radius - angular_inner_radius));
    }
    return bumpValue(d / angular_radius);
}

double MomentumProfile::operator()(const FourVector& p) const {
    if (!(p.t > 0.0)) return 0.0;
    const double q = minkowskiSquare(p);
    if (!(q > 0.0)) return 0.0;
    const double s = shell(std::sqrt(q));
    if (s == 0.0) return 0.0;
    const double a = angular(toHyperboloid(p));
    if (a == 0.0) return 0.0;
    return plateau ? s * a : amplitude * s * a;
}

bool MomentumProfile::onPlateau(const FourVector& p) const {
    if (!plateau || !(p.t > 0.0)) return false;
    const double q = minkowskiSquare(p);
    if (!(q > 0.0)) return false;
    if (std::abs(std::sqrt(q) - mass_center) > plateau_halfwidth) return false;
    return hyperbolicDist(toHyperboloid(p), angular_center) <= angular_inner_radius;
}

double diamondFactor(const FourVector& p) {
    const double q = minkowskiSquare(p);
    if (!(p.t > 0.0) || !(q > 0.0))
        throw std::invalid_argument("diamondFactor: p must be forward timelike");
    return std::pow(q, 0.75);
}

std::function<double(const FourVector&)> diamondTransform(const MomentumProfile& chi) {
    chi.validate();
    return [chi](const FourVector& p) {
        const double c = chi(p);
        return c == 0.0 ? 0.0 : c * diamondFactor(p);
    };
}

std::function<double(const FourVector&)> diamondInverse(const MomentumProfile& chi) {
    chi.validate();
    return [chi](const FourVector& p) {
        const double c = chi(p);
        return c == 0.0 ? 0.0 : c / diamondFactor(p);
    };
}

namespace {
// one fixed rule for both the normalization and the Fourier transform, so
// fourier(0) returns exactly the normalized integral
constexpr int kKernelPanels = 8;
constexpr int kKernelOrder = 32;
}  // namespace

TimeKernel::TimeKernel() : TimeKernel(0.5, 1.5) {}

TimeKernel::TimeKernel(double t1, double t2) : tau1(t1), tau2(t2) {
    if (!(t1 > 0.0) || !(t2 > t1))
        throw std::invalid_argument("TimeKernel: need 0 < tau1 < tau2");
    const double w = tau2 - tau1;
    auto shape = [&](double lam) -> cplx {
        return bumpValue((2.0 * lam - (tau1 + tau2)) / w);
    };
    const cplx S = compositeGL(shape, tau1, tau2, kKernelPanels, kKernelOrder).value;
    norm_ = 1.0 / S.real();
}

double TimeKernel::operator()(double lam) const {
    return norm_ * bumpValue((2.0 * lam - (tau1 + tau2)) / (tau2 - tau1));
}

cplx TimeKernel::fourier(double omega) const {
    const int panels =
        std::max(kKernelPanels,
                 (int)std::ceil(std::abs(omega) * (tau2 - tau1) / (2.0 * M_PI) * 2.0));
    auto integrand = [&](double lam) -> cplx {
        return std::polar((*this)(lam), omega * lam);
    };
    return compositeGL(integrand, tau1, tau2, panels, kKernelOrder).value;
}

double TimeKernel::scaledEta(double lam, double Lambda, double eta, double m) const {
    if (!(Lambda > 0.0) || !(m > 0.0) || !(eta > 0.0) || !(eta <= 1.0))
        throw std::invalid_argument("TimeKernel::scaledEta: need Lambda, m > 0 and eta in (0,1]");
    const double s = std::pow(m * Lambda, eta) / m;
    return (*this)((lam - Lambda) / s + 1.0) / s;
}

std::array<double, 2> TimeKernel::scaledSupport(double Lambda, double eta, double m) const {
    const double s = std::pow(m * Lambda, eta) / m;
    return {Lambda + (tau1 - 1.0) * s, Lambda + (tau2 - 1.0) * s};
}

cplx fLambdaHat(double chi_value, const HyperboloidProfile& f, double lambda,
                const FourVector& p, const QuadratureSpec& spec) {
    if (chi_value == 0.0 || f.amplitude == 0.0) return cplx(0.0, 0.0);
    if (!(lambda > 0.0)) throw std::invalid_argument("fLambdaHat: lambda must be positive");
    const double q = minkowskiSquare(p);
    if (!(p.t > 0.0) || !(q > 0.0))
        throw std::invalid_argument("fLambdaHat: p must be forward timelike");
    const double rho = lambda * std::sqrt(q);
    const cplx I = integrateWavepacket(f.asAmplitude(), rho, toHyperboloid(p), spec);
    return std::pow(lambda / (2.0 * M_PI), 1.5) * chi_value * I;
}

}  // namespace hyplab
