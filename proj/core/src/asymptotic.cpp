#include "hyplab/asymptotic.hpp"

#include <cmath>
#include <map>

namespace hyplab {

OperatorMatrix baseField(const FockBasis& basis) {
    const int M = basis.grid.size();
    std::vector<cplx> c(M), a(M);
    for (int m = 0; m < M; ++m) {
        c[m] = std::sqrt(basis.grid.modes[m].weight);
        a[m] = c[m];
    }
    return buildFromCoefficients(basis, c, a, "phi(0)");
}

namespace {

std::array<long long, 4> transferKey(const FourVector& p) {
    auto q = [](double x) { return (long long)std::llround(x * 1e9); };
    return {q(p.t), q(p.x[0]), q(p.x[1]), q(p.x[2])};
}

}  // namespace

OperatorMatrix smearOperator(const FockBasis& basis, const OperatorMatrix& A,
                             const std::function<cplx(const FourVector&)>& ghat,
                             const std::string& label) {
    const int d = basis.dim();
    if (A.mat.rows() != d || A.mat.cols() != d)
        throw std::invalid_argument("smearOperator: dimension mismatch");
    const double norm = std::pow(2.0 * M_PI, 2);
    std::map<std::array<long long, 4>, cplx> cache;
    Eigen::MatrixXcd out = Eigen::MatrixXcd::Zero(d, d);
    for (int t = 0; t < d; ++t) {
        for (int s = 0; s < d; ++s) {
            const cplx a = A.mat(s, t);
            if (a == cplx(0.0, 0.0)) continue;
            const FourVector dp = basis.momenta[s] - basis.momenta[t];
            const auto key = transferKey(dp);
            auto it = cache.find(key);
            if (it == cache.end()) it = cache.emplace(key, norm * ghat(dp)).first;
            if (it->second != cplx(0.0, 0.0)) out(s, t) = it->second * a;
        }
    }
    return {out, label};
}

std::function<cplx(const FourVector&)> hyperboloidKernel(
    const std::function<double(const FourVector&)>& chi_eval, const HyperboloidProfile& f,
    double lambda, const QuadratureSpec& spec) {
    return [chi_eval, f, lambda, spec](const FourVector& p) -> cplx {
        if (!(p.t > 0.0) || !(minkowskiSquare(p) > 0.0)) return cplx(0.0, 0.0);
        return fLambdaHat(chi_eval(p), f, lambda, p, spec);
    };
}

OperatorMatrix hyperboloidSmear(const FockBasis& basis, const OperatorMatrix& A,
                                const std::function<double(const FourVector&)>& chi_eval,
                                const HyperboloidProfile& f, double lambda,
                                const QuadratureSpec& spec) {
    return smearOperator(basis, A, hyperboloidKernel(chi_eval, f, lambda, spec),
                         A.label + "[lam,f]");
}

PrimedFieldResult primedField(const FockBasis& basis, const OperatorMatrix& A,
                              const MomentumProfile& chi, const HyperboloidProfile& f,
                              const TimeKernel& h, double Lambda, double m) {
    chi.validate();
    bool all_on_shell = true;
    auto kernel = [&](const FourVector& p) -> cplx {
        if (!(p.t > 0.0)) return cplx(0.0, 0.0);
        const double q = minkowskiSquare(p);
        if (!(q > 0.0)) return cplx(0.0, 0.0);
        const double chiv = chi(p);
        if (chiv == 0.0) return cplx(0.0, 0.0);
        const double root = std::sqrt(q);
        if (std::abs(root - m) > 1e-9) all_on_shell = false;
        return h.fourier(Lambda * (root - m)) * chiv * f(toHyperboloid(p));
    };
    OperatorMatrix op = smearOperator(basis, A, kernel, A.label + "'[f]");
    return {std::move(op), all_on_shell};
}

OperatorMatrix timeAveragedField(const FockBasis& basis, const OperatorMatrix& A,
                                 const MomentumProfile& chi, const HyperboloidProfile& f,
                                 const TimeKernel& h, double Lambda, double eta, double m,
                                 const QuadratureSpec& spec, int nodes) {
    chi.validate();
    const auto diamond = diamondTransform(chi);
    const auto supp = h.scaledSupport(Lambda, eta, m);
    const auto& xs = gaussLegendreNodes(nodes);
    const auto& ws = gaussLegendreWeights(nodes);
    const double half = 0.5 * (supp[1] - supp[0]);
    const double mid = 0.5 * (supp[1] + supp[0]);

    const int d = basis.dim();
    Eigen::MatrixXcd acc = Eigen::MatrixXcd::Zero(d, d);
    for (int i = 0; i < nodes; ++i) {
        const double lam = mid + half * xs[i];
        const double hv = h.scaledEta(lam, Lambda, eta, m);
        if (hv == 0.0) continue;
        const cplx phase = std::polar(1.0, -(lam * m + 0.75 * M_PI));
        const OperatorMatrix term = hyperboloidSmear(basis, A, diamond, f, lam, spec);
        acc += (half * ws[i] * hv * phase) * term.mat;
    }
    return {acc, A.label + "_Lam[f]"};
}

OutFieldResult outField(const FockBasis& basis, const OperatorMatrix& A,
                        const MomentumProfile& chi, const HyperboloidProfile& f, double m,
                        const std::vector<double>& lambda_grid, const QuadratureSpec& spec,
                        const OperatorMatrix* Delta) {
    chi.validate();
    if (!chi.plateau)
        throw std::invalid_argument("outField: chi must carry a plateau (unit neighborhood)");
    if (lambda_grid.size() < 2) throw std::invalid_argument("outField: need >= 2 grid points");
    const auto diamond = diamondTransform(chi);

    std::vector<Eigen::MatrixXcd> Ms;
    Ms.reserve(lambda_grid.size());
    for (double lam : lambda_grid) {
        const cplx phase = std::polar(1.0, -(lam * m + 0.75 * M_PI));
        Ms.push_back(phase * hyperboloidSmear(basis, A, diamond, f, lam, spec).mat);
    }
    const size_t n = lambda_grid.size();
    const double l1 = lambda_grid[n - 2], l2 = lambda_grid[n - 1];
    // entrywise Richardson with leading 1/lambda correction
    Eigen::MatrixXcd L = (l2 * Ms[n - 1] - l1 * Ms[n - 2]) / (l2 - l1);

    OutFieldResult r;
    r.lambdas.assign(lambda_grid.begin(), lambda_grid.end());
    for (size_t i = 0; i < n; ++i) {
        Eigen::MatrixXcd diff = Ms[i] - L;
        if (Delta) diff = diff * Delta->mat;
        r.distances.push_back(operatorNorm(diff));
    }
    r.rate = fitLogLog(r.lambdas, r.distances);
    r.extrapolation_error = operatorNorm(L - Ms[n - 1]);
    r.converged = r.rate.valid ? r.rate.slope < 0.0 : true;  // all-zero distances converge too
    if (!r.converged) {
        // no asymptotic field: keep the raw last matrix for inspection
        r.limit = {Ms[n - 1], A.label + "^out[f] (divergent)"};
    } else {
        r.limit = {L, A.label + "^out[f]"};
    }
    return r;
}

double supportGap(const HyperboloidProfile& f1, const HyperboloidProfile& f2) {
    return hyperbolicDist(f1.center, f2.center) - f1.radius - f2.radius;
}

CommutatorDecay asymptoticCommutatorCheck(const FockBasis& basis, const OperatorMatrix& A,
                                          const MomentumProfile& chi1,
                                          const HyperboloidProfile& f1,
                                          const MomentumProfile& chi2,
                                          const HyperboloidProfile& f2, const TimeKernel& h,
                                          const std::vector<double>& Lambda_grid, double eta,
                                          double m, const QuadratureSpec& spec,
                                          const OperatorMatrix* Delta, bool fermi) {
    CommutatorDecay r;
    r.gap = supportGap(f1, f2);
    if (!(r.gap > 0.0))
        throw std::invalid_argument("asymptoticCommutatorCheck: supports must be disjoint");
    r.combo = {"[A,B]", "[A,B*]", "[A*,B]", "[A*,B*]"};
    r.Lambdas.assign(Lambda_grid.begin(), Lambda_grid.end());

    for (double Lam : Lambda_grid) {
        const OperatorMatrix P1 = timeAveragedField(basis, A, chi1, f1, h, Lam, eta, m, spec);
        const OperatorMatrix P2 = timeAveragedField(basis, A, chi2, f2, h, Lam, eta, m, spec);
        const std::array<Eigen::MatrixXcd, 4> brackets = {
            bracket(P1.mat, P2.mat, fermi), bracket(P1.mat, P2.mat.adjoint(), fermi),
            bracket(P1.mat.adjoint(), P2.mat, fermi),
            bracket(P1.mat.adjoint(), P2.mat.adjoint(), fermi)};
        for (int c = 0; c < 4; ++c) {
            Eigen::MatrixXcd B = brackets[c];
            if (Delta) B = B * Delta->mat;
            r.norms[c].push_back(operatorNorm(B));
        }
    }
    for (int c = 0; c < 4; ++c) r.fits[c] = fitLogLog(r.Lambdas, r.norms[c]);
    return r;
}

ProductCheck twoOperatorProductCheck(const FockBasis& basis, const OperatorMatrix& A,
                                     const MomentumProfile& chi1, const HyperboloidProfile& f1,
                                     const MomentumProfile& chi2, const HyperboloidProfile& f2,
                                     const TimeKernel& h, const std::vector<double>& Lambda_grid,
                                     double eta1, double eta2, double m,
                                     const QuadratureSpec& spec, int nodes) {
    ProductCheck r;
    r.Lambdas.assign(Lambda_grid.begin(), Lambda_grid.end());
    const int d = basis.dim();

    // rhs: (2pi)^4 (A Omega, conj(f1) f2 (P/m) E0 A Omega); E0 keeps exactly
    // the one-particle shell states
    Eigen::VectorXcd base = A.mat.col(0);
    cplx rhs(0.0, 0.0);
    for (int s = 1; s < d; ++s) {
        if (base(s) == cplx(0.0, 0.0)) continue;
        const FourVector P = basis.momenta[s];
        const double q = minkowskiSquare(P);
        if (!(q > 0.0) || std::abs(std::sqrt(q) - m) > 1e-9) continue;
        const HyperboloidPoint v = toHyperboloid(P);
        rhs += std::norm(base(s)) * f1(v) * f2(v);
    }
    r.rhs_value = std::pow(2.0 * M_PI, 4) * rhs;

    for (double Lam : Lambda_grid) {
        const OperatorMatrix P1 =
            timeAveragedField(basis, A, chi1, f1, h, Lam, eta1, m, spec, nodes);
        const OperatorMatrix P2 =
            timeAveragedField(basis, A, chi2, f2, h, Lam, eta2, m, spec, nodes);
        const Eigen::VectorXcd v = P1.mat.adjoint() * (P2.mat * Eigen::VectorXcd::Unit(d, 0));
        r.lhs_values.push_back(v(0));
        r.residuals.push_back((v - r.rhs_value * Eigen::VectorXcd::Unit(d, 0)).norm());
    }
    return r;
}

}  // namespace hyplab
