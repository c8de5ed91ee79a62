#include "hyplab/decay.hpp"

#include <Eigen/Dense>
#include <cmath>

#include "hyplab/quadrature.hpp"

namespace hyplab {

cplx pauliJordanSmeared(const std::function<cplx(const FourVector&)>& chihat1,
                        const std::function<cplx(const FourVector&)>& chihat2,
                        const FourVector& a, double m, double kmax, int radial_order,
                        int theta_order, int phi_order) {
    const auto& rx = gaussLegendreNodes(radial_order);
    const auto& rw = gaussLegendreWeights(radial_order);
    const auto& tx = gaussLegendreNodes(theta_order);
    const auto& tw = gaussLegendreWeights(theta_order);

    std::vector<cplx> radial_terms(radial_order);
    std::vector<cplx> theta_terms(theta_order);
    std::vector<cplx> phi_terms(phi_order);
    for (int i = 0; i < radial_order; ++i) {
        const double k = 0.5 * kmax * (rx[i] + 1.0);
        const double omega = std::sqrt(m * m + k * k);
        for (int j = 0; j < theta_order; ++j) {
            const double mu = tx[j];
            const double st = std::sqrt(std::max(0.0, 1.0 - mu * mu));
            for (int l = 0; l < phi_order; ++l) {
                const double phi = 2.0 * M_PI * l / phi_order;
                const FourVector kt{omega, k * st * std::cos(phi), k * st * std::sin(phi),
                                    k * mu};
                const cplx pos = chihat1(-kt) * chihat2(kt) * std::polar(1.0, minkowskiDot(kt, a));
                const cplx neg = chihat1(kt) * chihat2(-kt) * std::polar(1.0, -minkowskiDot(kt, a));
                phi_terms[l] = pos - neg;
            }
            theta_terms[j] = tw[j] * (2.0 * M_PI / phi_order) * pairwiseSum(phi_terms);
        }
        radial_terms[i] = rw[i] * (0.5 * kmax) * (k * k / (2.0 * omega)) * pairwiseSum(theta_terms);
    }
    const double norm = std::pow(2.0 * M_PI, 4) / std::pow(2.0 * M_PI, 3);
    return norm * pairwiseSum(radial_terms);
}

cplx pauliJordanLattice(const ModeGrid& grid,
                        const std::function<cplx(const FourVector&)>& chihat1,
                        const std::function<cplx(const FourVector&)>& chihat2,
                        const FourVector& a) {
    std::vector<cplx> terms(grid.size());
    for (int i = 0; i < grid.size(); ++i) {
        const FourVector kt = grid.modes[i].onShell();
        const double w = grid.modes[i].weight;
        const cplx pos = chihat1(-kt) * chihat2(kt) * std::polar(1.0, minkowskiDot(kt, a));
        const cplx neg = chihat1(kt) * chihat2(-kt) * std::polar(1.0, -minkowskiDot(kt, a));
        terms[i] = w * (pos - neg);
    }
    return std::pow(2.0 * M_PI, 4) * pairwiseSum(terms);
}

std::function<cplx(const FourVector&)> equalTimeKernel(const SpatialBump& g) {
    return [g](const FourVector& p) -> cplx {
        return g.fourier3({p.x[0], p.x[1], p.x[2]}) / std::pow(2.0 * M_PI, 2);
    };
}

std::function<cplx(const FourVector&)> convolveKernel(
    const std::function<cplx(const FourVector&)>& chihat,
    const std::function<cplx(const FourVector&)>& phihat) {
    return [chihat, phihat](const FourVector& p) -> cplx {
        return std::pow(2.0 * M_PI, 2) * chihat(p) * phihat(p);
    };
}

DecayScanResult fitAssumption21(const std::vector<FourVector>& offsets,
                                const std::vector<double>& values, double kappa, double r) {
    if (offsets.size() != values.size())
        throw std::invalid_argument("fitAssumption21: size mismatch");
    if (!(r > 0.0) || !(kappa > 0.0))
        throw std::invalid_argument("fitAssumption21: r and kappa must be positive");
    DecayScanResult out;
    out.offsets = offsets;
    out.values = values;
    out.kappa = kappa;
    out.r = r;
    for (size_t i = 0; i < offsets.size(); ++i) {
        const double sep = offsets[i].spatialNorm() - std::abs(offsets[i].t);
        if (!(sep >= 0.0))
            throw std::invalid_argument("fitAssumption21: offsets must be spacelike");
        out.c = std::max(out.c, values[i] * std::pow(r + sep, kappa));
    }
    for (size_t i = 0; i < offsets.size(); ++i) {
        const double sep = offsets[i].spatialNorm() - std::abs(offsets[i].t);
        out.template_values.push_back(out.c / std::pow(r + sep, kappa));
    }
    out.pass = std::isfinite(out.c);
    return out;
}

cplx hyperboloidCommutatorValue(const ModeGrid& grid,
                                const std::function<double(const FourVector&)>& chi1_eval,
                                const HyperboloidProfile& f1, double lam1,
                                const std::function<double(const FourVector&)>& chi2_eval,
                                const HyperboloidProfile& f2, double lam2,
                                const QuadratureSpec& spec) {
    std::vector<cplx> terms(grid.size());
    for (int i = 0; i < grid.size(); ++i) {
        const FourVector kt = grid.modes[i].onShell();
        const cplx F1 = fLambdaHat(chi1_eval(kt), f1, lam1, kt, spec);
        if (F1 == cplx(0.0, 0.0)) {
            terms[i] = cplx(0.0, 0.0);
            continue;
        }
        const cplx F2 = fLambdaHat(chi2_eval(kt), f2, lam2, kt, spec);
        terms[i] = grid.modes[i].weight * F1 * std::conj(F2);
    }
    return std::pow(2.0 * M_PI, 4) * pairwiseSum(terms);
}

double absMomentIntegral(const HyperboloidProfile& f1, const HyperboloidProfile& f2,
                         int radial_order, int theta_order) {
    // polar chart about f1.center; integrand supported in dist <= R1
    const HyperboloidPoint c = f1.center;
    const FourVector c4 = c.asFourVector();
    // frame with first axis toward f2's center so the theta rule sees the overlap smoothly
    const HyperboloidPoint probe(c.v[0] + 1.0, c.v[1], c.v[2]);
    const double D = hyperbolicDist(c, f2.center);
    const auto e = (D > 1e-12) ? tangentFrame(c, f2.center) : tangentFrame(c, probe);

    const auto& rx = gaussLegendreNodes(radial_order);
    const auto& rw = gaussLegendreWeights(radial_order);
    const auto& tx = gaussLegendreNodes(theta_order);
    const auto& tw = gaussLegendreWeights(theta_order);
    const double R = f1.radius;

    std::vector<double> radial_terms(radial_order);
    std::vector<double> theta_terms(theta_order);
    for (int i = 0; i < radial_order; ++i) {
        const double rr = 0.5 * R * (rx[i] + 1.0);
        const double shr = std::sinh(rr), chr = std::cosh(rr);
        for (int j = 0; j < theta_order; ++j) {
            const double mu = tx[j];
            const double st = std::sqrt(std::max(0.0, 1.0 - mu * mu));
            // azimuthal symmetry about the axis toward f2: phi integral = 2 pi
            const FourVector n = e[0] * mu + e[1] * st;
            const HyperboloidPoint u = toHyperboloid(c4 * chr + n * shr);
            theta_terms[j] =
                tw[j] * std::abs(f1(u) * f2(u)) * u.v0 * u.v0 * u.v0;
        }
        radial_terms[i] = rw[i] * (0.5 * R) * shr * shr * (2.0 * M_PI) * pairwiseSum(theta_terms);
    }
    return pairwiseSum(radial_terms);
}

HyperboloidScan hyperboloidCommutatorScan(const ModeGrid& grid, const MomentumProfile& chi1,
                                          const HyperboloidProfile& f1,
                                          const MomentumProfile& chi2,
                                          const HyperboloidProfile& f2,
                                          const std::vector<double>& products,
                                          const std::vector<double>& ratios, double gamma,
                                          const QuadratureSpec& spec) {
    HyperboloidScan out;
    out.gamma = gamma;
    out.gamma12 = hyperbolicDist(f1.center, f2.center) - f1.radius - f2.radius;
    if (!(out.gamma12 > 0.0))
        throw std::invalid_argument("hyperboloidCommutatorScan: supports must be disjoint");
    if (!(gamma < out.gamma12))
        throw std::invalid_argument("hyperboloidCommutatorScan: gamma must be below the support gap");
    for (double rat : ratios) {
        if (!(rat >= std::exp(-gamma) - 1e-12) || !(rat <= std::exp(gamma) + 1e-12))
            throw std::invalid_argument("hyperboloidCommutatorScan: ratio outside [e^-gamma, e^gamma]");
    }
    chi1.validate();
    chi2.validate();
    auto c1 = [&chi1](const FourVector& p) { return chi1(p); };
    auto c2 = [&chi2](const FourVector& p) { return chi2(p); };

    out.ratios = ratios;
    for (double rat : ratios) {
        std::vector<double> xs, ys;
        for (double prod : products) {
            const double l1 = std::sqrt(prod * rat);
            const double l2 = std::sqrt(prod / rat);
            const cplx z = hyperboloidCommutatorValue(grid, c1, f1, l1, c2, f2, l2, spec);
            out.lam1.push_back(l1);
            out.lam2.push_back(l2);
            out.products.push_back(prod);
            out.values.push_back(std::abs(z));
            xs.push_back(prod);
            ys.push_back(std::abs(z));
        }
        out.ratio_fits.push_back(fitLogLog(xs, ys));
    }
    return out;
}

cplx clusterFunctionK(const FockBasis& basis, const OperatorMatrix& P1, const OperatorMatrix& P2,
                      const OperatorMatrix& P3, const OperatorMatrix& P4, const FourVector& y1,
                      const FourVector& y2, const FourVector& y) {
    auto at = [&](const OperatorMatrix& A, const FourVector& z) {
        return translateOperator(basis, A, z).mat;
    };
    const Eigen::MatrixXcd B12 =
        bracket(at(P1, y1 * 0.5), at(P2, -(y1 * 0.5)));
    const Eigen::MatrixXcd B34 =
        bracket(at(P3, y2 * 0.5), at(P4, -(y2 * 0.5)));
    const Eigen::MatrixXcd Eo = vacuumOrthProjector(basis).mat;
    const Eigen::MatrixXcd U = translationOperator(basis, -y).mat;
    const int d = basis.dim();
    const Eigen::VectorXcd omega = Eigen::VectorXcd::Unit(d, 0);
    return omega.dot(B12 * (Eo * (U * (B34 * omega))));
}

namespace {

using CMat = Eigen::MatrixXcd;

struct WickPieces {
    CMat C;  // creation-pair amplitudes sqrt(w_k w_l) g(k+l) exp(i(kt+lt).z)
    CMat A;  // annihilation-pair            g(-(k+l)) exp(-i(kt+lt).z)
    CMat M;  // mixed 2 g(k-l) exp(i(kt-lt).z), a^dag_k a_l ordering
};

WickPieces wickPieces(const ModeGrid& grid, const SpatialBump& g, const FourVector& z) {
    const int M = grid.size();
    WickPieces p;
    p.C.resize(M, M);
    p.A.resize(M, M);
    p.M.resize(M, M);
    for (int k = 0; k < M; ++k) {
        const auto& mk = grid.modes[k];
        for (int l = 0; l < M; ++l) {
            const auto& ml = grid.modes[l];
            const double rw = std::sqrt(mk.weight * ml.weight);
            const std::array<double, 3> sum{mk.k[0] + ml.k[0], mk.k[1] + ml.k[1],
                                            mk.k[2] + ml.k[2]};
            const std::array<double, 3> msum{-sum[0], -sum[1], -sum[2]};
            const std::array<double, 3> diff{mk.k[0] - ml.k[0], mk.k[1] - ml.k[1],
                                             mk.k[2] - ml.k[2]};
            const FourVector ks = mk.onShell() + ml.onShell();
            const FourVector kd = mk.onShell() - ml.onShell();
            p.C(k, l) = rw * g.fourier3(sum) * std::polar(1.0, minkowskiDot(ks, z));
            p.A(k, l) = rw * g.fourier3(msum) * std::polar(1.0, -minkowskiDot(ks, z));
            p.M(k, l) = 2.0 * rw * g.fourier3(diff) * std::polar(1.0, minkowskiDot(kd, z));
        }
    }
    return p;
}

// vacuum component of W applied to the pair state sum X(p,q) a+_p a+_q Omega
cplx vacuumPart(const WickPieces& W, const CMat& X) {
    const CMat S = X + X.transpose();
    return (W.A.array() * S.array()).sum();
}

// pair amplitude of the 2-particle part of W applied to the same state
CMat pairPart(const WickPieces& W, const CMat& X) { return W.M * (X + X.transpose()); }

}  // namespace

cplx clusterOracleWick(const ModeGrid& grid, const SpatialBump& g1, const SpatialBump& g2,
                       const SpatialBump& g3, const SpatialBump& g4, const FourVector& y1,
                       const FourVector& y2, const FourVector& y) {
    const WickPieces W1 = wickPieces(grid, g1, y1 * 0.5);
    const WickPieces W2 = wickPieces(grid, g2, -(y1 * 0.5));
    const WickPieces W3 = wickPieces(grid, g3, y2 * 0.5);
    const WickPieces W4 = wickPieces(grid, g4, -(y2 * 0.5));

    // 2-particle amplitude of [W3, W4] Omega (vacuum part dropped by E_orth)
    const CMat Y0 = pairPart(W3, W4.C) - pairPart(W4, W3.C);
    // U(-y) phases per pair
    const int M = grid.size();
    CMat Y(M, M);
    for (int s = 0; s < M; ++s)
        for (int t = 0; t < M; ++t) {
            const FourVector P = grid.modes[s].onShell() + grid.modes[t].onShell();
            Y(s, t) = Y0(s, t) * std::polar(1.0, -minkowskiDot(P, y));
        }
    // (Omega, [W1, W2] Y)
    return vacuumPart(W1, pairPart(W2, Y)) - vacuumPart(W2, pairPart(W1, Y));
}

AhrReport ahrBoundCheck(const FockBasis& basis, const OperatorMatrix& B1,
                        const OperatorMatrix& B2, const std::vector<FourVector>& ys, double r) {
    AhrReport rep;
    rep.r = r;
    const Eigen::MatrixXcd Eo = vacuumOrthProjector(basis).mat;
    const int d = basis.dim();
    const Eigen::VectorXcd omega = Eigen::VectorXcd::Unit(d, 0);
    const Eigen::VectorXcd right0 = B2.mat * omega;
    const Eigen::VectorXcd left = (omega.adjoint() * B1.mat).adjoint();

    std::vector<double> lx, ly;
    for (size_t i = 0; i < ys.size(); ++i) {
        const double sep = ys[i].spatialNorm() - std::abs(ys[i].t);
        if (!(sep >= 2.0 * r)) {
            rep.skipped.push_back((int)i);
            continue;
        }
        const Eigen::MatrixXcd U = translationOperator(basis, ys[i]).mat;
        const cplx val = left.dot(Eo * (U * right0));
        rep.offsets.push_back(ys[i]);
        rep.separations.push_back(sep);
        rep.values.push_back(std::abs(val));
        rep.c2 = std::max(rep.c2, std::abs(val) * sep * sep);
        if (std::abs(val) > 0.0) {
            lx.push_back(sep);
            ly.push_back(std::abs(val) * sep * sep);
        }
    }
    if (lx.size() >= 2) rep.excess_slope = fitLogLog(lx, ly).slope;
    return rep;
}

}  // namespace hyplab
