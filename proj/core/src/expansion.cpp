#include "hyplab/expansion.hpp"

#include <cmath>
#include <sstream>

namespace hyplab {

namespace {

// Catmull-Rom sample with even reflection below 0 and zero padding above.
cplx sampleGrid(const std::vector<cplx>& vals, int i) {
    const int n = (int)vals.size();
    if (i < 0) i = -i;
    if (i >= n) return cplx(0.0, 0.0);
    return vals[i];
}

}  // namespace

cplx RadialFunction::eval(double r) const {
    if (values.size() < 4 || !(rmax > 0.0)) return cplx(0.0, 0.0);
    if (r >= rmax) return cplx(0.0, 0.0);
    const int n = (int)values.size();
    const double h = rmax / (n - 1);
    double s = r / h;
    int i = (int)std::floor(s);
    if (i > n - 2) i = n - 2;
    const double t = s - i;
    const cplx p0 = sampleGrid(values, i - 1);
    const cplx p1 = sampleGrid(values, i);
    const cplx p2 = sampleGrid(values, i + 1);
    const cplx p3 = sampleGrid(values, i + 2);
    const cplx a = 2.0 * p1;
    const cplx b = p2 - p0;
    const cplx c = 2.0 * p0 - 5.0 * p1 + 4.0 * p2 - p3;
    const cplx d = -p0 + 3.0 * p1 - 3.0 * p2 + p3;
    return 0.5 * (a + b * t + c * (t * t) + d * (t * t * t));
}

WavepacketAmplitude RadialFunction::realAmplitude() const {
    RadialFunction copy = *this;
    return {[copy](const HyperboloidPoint& u) { return copy(u).real(); }, center, rmax, true};
}

WavepacketAmplitude RadialFunction::imagAmplitude() const {
    RadialFunction copy = *this;
    return {[copy](const HyperboloidPoint& u) { return copy(u).imag(); }, center, rmax, true};
}

cplx integrateRadial(const RadialFunction& g, double rho, const HyperboloidPoint& v,
                     const QuadratureSpec& spec) {
    bool has_re = false, has_im = false;
    for (const cplx& c : g.values) {
        if (c.real() != 0.0) has_re = true;
        if (c.imag() != 0.0) has_im = true;
    }
    cplx out(0.0, 0.0);
    if (has_re) out += integrateWavepacket(g.realAmplitude(), rho, v, spec);
    if (has_im) out += cplx(0.0, 1.0) * integrateWavepacket(g.imagAmplitude(), rho, v, spec);
    return out;
}

std::vector<double> defaultRhoGrid(double lo, double hi, int per_decade) {
    std::vector<double> grid;
    const double step = std::log(10.0) / per_decade;
    const int n = (int)std::floor(std::log(hi / lo) / step + 1e-9) + 1;
    for (int i = 0; i < n; ++i) grid.push_back(lo * std::exp(i * step));
    if (grid.back() < hi * (1.0 - 1e-12)) grid.push_back(hi);
    return grid;
}

std::vector<cplx> extractLk(const WavepacketAmplitude& amp, const HyperboloidPoint& v, int kmax,
                            const std::vector<double>& rho_grid, const QuadratureSpec& spec,
                            int extra, double* condition) {
    if (kmax < 0 || kmax > 3) throw std::invalid_argument("extractLk: kmax must be in [0, 3]");
    const int degree = kmax + extra;
    if ((int)rho_grid.size() < degree + 2)
        throw std::invalid_argument("extractLk: rho grid too small for requested order");

    const double rho_min = rho_grid.front();
    std::vector<double> us, re, im;
    for (double rho : rho_grid) {
        const cplx a = reducedAmplitude(integrateWavepacket(amp, rho, v, spec), rho);
        us.push_back(rho_min / rho);  // in (0, 1]: keeps the Vandermonde tame
        re.push_back(a.real());
        im.push_back(a.imag());
    }
    double cond_re = 0.0, cond_im = 0.0;
    const std::vector<double> cre = fitPolynomial(us, re, degree, nullptr, &cond_re);
    const std::vector<double> cim = fitPolynomial(us, im, degree, nullptr, &cond_im);
    const double cond = std::max(cond_re, cond_im);
    if (condition) *condition = cond;
    if (!(cond < 1e8)) {
        std::ostringstream msg;
        msg << "extractLk: ill-conditioned fit, condition " << cond;
        throw std::runtime_error(msg.str());
    }
    std::vector<cplx> out(kmax + 1);
    double scale = 1.0;
    for (int k = 0; k <= kmax; ++k) {
        out[k] = cplx(cre[k], cim[k]) * scale;
        scale *= rho_min;  // back from powers of u = rho_min/rho to rho^{-k}
    }
    return out;
}

ExpansionResult expandAt(const WavepacketAmplitude& amp, const HyperboloidPoint& v, double rho,
                         const std::vector<cplx>& coefficients, const QuadratureSpec& spec) {
    ExpansionResult r;
    r.rho = rho;
    r.v = v;
    r.oracle = reducedAmplitude(integrateWavepacket(amp, rho, v, spec), rho);
    cplx partial(0.0, 0.0);
    double p = 1.0;
    for (const cplx& c : coefficients) {
        r.terms.push_back(c * p);
        partial += c * p;
        p /= rho;
    }
    r.remainder_estimate = std::abs(r.oracle - partial);
    return r;
}

std::vector<RadialFunction> recursiveCorrections(const HyperboloidProfile& f, int N,
                                                 int radial_points,
                                                 const std::vector<double>& rho_grid,
                                                 const QuadratureSpec& spec) {
    if (N < 0 || N > 3) throw std::invalid_argument("recursiveCorrections: N must be in [0, 3]");
    if (radial_points < 8) throw std::invalid_argument("recursiveCorrections: grid too coarse");
    const double R = f.radius;
    const double h = R / (radial_points - 1);

    std::vector<RadialFunction> fs(N + 1);
    for (auto& g : fs) {
        g.center = f.center;
        g.rmax = R;
        g.values.assign(radial_points, cplx(0.0, 0.0));
    }
    // radial sample points: move along a fixed geodesic from the center
    const HyperboloidPoint probe(f.center.v[0] + 1.0, f.center.v[1], f.center.v[2]);
    const auto frame = tangentFrame(f.center, probe);
    std::vector<HyperboloidPoint> pts(radial_points);
    for (int i = 0; i < radial_points; ++i) {
        const double r = i * h;
        pts[i] = toHyperboloid(f.center.asFourVector() * std::cosh(r) + frame[0] * std::sinh(r));
    }
    for (int i = 0; i < radial_points; ++i) fs[0].values[i] = f(pts[i]);
    if (N == 0) return fs;

    // coeffs[j][i][k] = L_k f_j at radius index i; only k <= N - j is used
    std::vector<std::vector<std::vector<cplx>>> coeffs(N);
    for (int j = 0; j < N; ++j) {
        coeffs[j].resize(radial_points);
        for (int i = 0; i < radial_points; ++i) {
            std::vector<cplx> c;
            if (j == 0) {
                c = extractLk(f.asAmplitude(), pts[i], N, rho_grid, spec);
            } else {
                const RadialFunction& g = fs[j];
                const int kmax = N - j;
                std::vector<cplx> cre(kmax + 1, cplx(0, 0)), cim(kmax + 1, cplx(0, 0));
                bool has_re = false, has_im = false;
                for (const cplx& vv : g.values) {
                    if (vv.real() != 0.0) has_re = true;
                    if (vv.imag() != 0.0) has_im = true;
                }
                if (has_re) cre = extractLk(g.realAmplitude(), pts[i], kmax, rho_grid, spec);
                if (has_im) cim = extractLk(g.imagAmplitude(), pts[i], kmax, rho_grid, spec);
                c.resize(kmax + 1);
                for (int k = 0; k <= kmax; ++k) c[k] = cre[k] + cplx(0.0, 1.0) * cim[k];
            }
            coeffs[j][i] = std::move(c);
        }
        // f_{j+1} = -sum_{l <= j} L_{j+1-l} f_l
        for (int i = 0; i < radial_points; ++i) {
            cplx acc(0.0, 0.0);
            for (int l = 0; l <= j; ++l) acc += coeffs[l][i][j + 1 - l];
            fs[j + 1].values[i] = -acc;
        }
    }
    return fs;
}

RateFit verifyFexp(const MomentumProfile& chi, const HyperboloidProfile& f, int N,
                   const std::vector<double>& lambda_grid,
                   const std::vector<FourVector>& p_samples, const QuadratureSpec& spec,
                   int radial_points, std::vector<double>* residuals) {
    chi.validate();
    // Extraction needs rho well inside the asymptotic regime; the test window in
    // lambda_grid can start much lower, so the two grids are deliberately separate.
    const auto fs = recursiveCorrections(f, N, radial_points, defaultRhoGrid(100.0, 2000.0), spec);
    const cplx phase_fix = std::polar(1.0, -0.75 * M_PI);

    std::vector<double> maxR;
    for (double lam : lambda_grid) {
        double worst = 0.0;
        for (const FourVector& p : p_samples) {
            const double q = minkowskiSquare(p);
            if (!(p.t > 0.0) || !(q > 0.0))
                throw std::invalid_argument("verifyFexp: p samples must be forward timelike");
            const double chiv = chi(p);
            if (chiv == 0.0) continue;
            const double rho = lam * std::sqrt(q);
            const HyperboloidPoint v = toHyperboloid(p);
            cplx lhs(0.0, 0.0);
            double lam_pow = 1.0;
            for (int j = 0; j <= N; ++j) {
                const double chij = chiv * std::pow(q, 0.75 - 0.5 * j);
                const cplx Ij = integrateRadial(fs[j], rho, v, spec);
                lhs += lam_pow * std::pow(lam / (2.0 * M_PI), 1.5) * chij * Ij;
                lam_pow /= lam;
            }
            lhs *= phase_fix;
            const cplx rhs = std::polar(chiv * f(v), rho);
            worst = std::max(worst, std::abs(lhs - rhs));
        }
        maxR.push_back(worst);
    }
    if (residuals) *residuals = maxR;
    return fitLogLog(lambda_grid, maxR);
}

}  // namespace hyplab
