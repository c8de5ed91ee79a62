#include "hyplab/minkowski.hpp"

#include <algorithm>
#include <cmath>

namespace hyplab {

HyperboloidPoint toHyperboloid(const FourVector& p) {
    const double p2 = minkowskiSquare(p);
    if (!(p2 > 0.0) || !(p.t > 0.0))
        throw std::invalid_argument("toHyperboloid: vector not in the open forward cone");
    const double s = std::sqrt(p2);
    return HyperboloidPoint(p.x[0] / s, p.x[1] / s, p.x[2] / s);
}

namespace {
constexpr std::array<double, 4> kMetricDiag{1.0, -1.0, -1.0, -1.0};

std::array<double, 3> normalized(const std::array<double, 3>& a) {
    const double n = std::sqrt(a[0] * a[0] + a[1] * a[1] + a[2] * a[2]);
    if (n == 0.0) throw std::invalid_argument("zero axis");
    return {a[0] / n, a[1] / n, a[2] / n};
}
}  // namespace

LorentzBoost::LorentzBoost() {
    for (auto& row : m_) row.fill(0.0);
    for (int i = 0; i < 4; ++i) m_[i][i] = 1.0;
}

double LorentzBoost::metricDefect() const {
    double worst = 0.0;
    for (int i = 0; i < 4; ++i)
        for (int j = 0; j < 4; ++j) {
            double s = 0.0;
            for (int k = 0; k < 4; ++k) s += m_[k][i] * kMetricDiag[k] * m_[k][j];
            const double target = (i == j) ? kMetricDiag[i] : 0.0;
            worst = std::max(worst, std::abs(s - target));
        }
    return worst;
}

LorentzBoost::LorentzBoost(const std::array<std::array<double, 4>, 4>& m, double tol) : m_(m) {
    if (metricDefect() > tol)
        throw std::invalid_argument("LorentzBoost: matrix does not preserve the metric");
    if (m_[0][0] < 1.0 - tol)
        throw std::invalid_argument("LorentzBoost: not orthochronous");
}

LorentzBoost LorentzBoost::rapidity(const std::array<double, 3>& axis, double chi) {
    const auto n = normalized(axis);
    const double ch = std::cosh(chi), sh = std::sinh(chi);
    LorentzBoost b;
    b.m_[0][0] = ch;
    for (int i = 0; i < 3; ++i) {
        b.m_[0][i + 1] = sh * n[i];
        b.m_[i + 1][0] = sh * n[i];
        for (int j = 0; j < 3; ++j)
            b.m_[i + 1][j + 1] = (i == j ? 1.0 : 0.0) + (ch - 1.0) * n[i] * n[j];
    }
    return b;
}

LorentzBoost LorentzBoost::toPoint(const HyperboloidPoint& p) {
    const double vn = p.spatialNorm();
    if (vn == 0.0) return LorentzBoost();
    return rapidity(p.v, std::asinh(vn));
}

LorentzBoost LorentzBoost::rotation(const std::array<double, 3>& axis, double angle) {
    const auto n = normalized(axis);
    const double c = std::cos(angle), s = std::sin(angle);
    LorentzBoost b;
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j) {
            double eps = 0.0;  // -sum_k e_{ijk} n_k
            eps += (i == 0 && j == 1) ? -n[2] : 0.0;
            eps += (i == 1 && j == 0) ? n[2] : 0.0;
            eps += (i == 0 && j == 2) ? n[1] : 0.0;
            eps += (i == 2 && j == 0) ? -n[1] : 0.0;
            eps += (i == 1 && j == 2) ? -n[0] : 0.0;
            eps += (i == 2 && j == 1) ? n[0] : 0.0;
            b.m_[i + 1][j + 1] = c * (i == j ? 1.0 : 0.0) + (1.0 - c) * n[i] * n[j] + s * eps;
        }
    return b;
}

FourVector LorentzBoost::apply(const FourVector& a) const {
    const std::array<double, 4> in{a.t, a.x[0], a.x[1], a.x[2]};
    std::array<double, 4> out{};
    for (int i = 0; i < 4; ++i)
        for (int j = 0; j < 4; ++j) out[i] += m_[i][j] * in[j];
    return {out[0], out[1], out[2], out[3]};
}

HyperboloidPoint LorentzBoost::apply(const HyperboloidPoint& p) const {
    const FourVector im = apply(p.asFourVector());
    return HyperboloidPoint(im.x);
}

LorentzBoost LorentzBoost::inverse() const {
    // L^{-1} = g L^T g
    LorentzBoost r;
    for (int i = 0; i < 4; ++i)
        for (int j = 0; j < 4; ++j) r.m_[i][j] = kMetricDiag[i] * m_[j][i] * kMetricDiag[j];
    return r;
}

LorentzBoost LorentzBoost::compose(const LorentzBoost& o) const {
    LorentzBoost r;
    for (int i = 0; i < 4; ++i)
        for (int j = 0; j < 4; ++j) {
            double s = 0.0;
            for (int k = 0; k < 4; ++k) s += m_[i][k] * o.m_[k][j];
            r.m_[i][j] = s;
        }
    return r;
}

GeomBoundsReport geomBounds(const HyperboloidPoint& v1, const HyperboloidPoint& v2,
                            double lam1, double lam2, double nu) {
    if (!(nu > 0.0) || !(lam1 > 0.0) || !(lam2 > 0.0))
        throw std::invalid_argument("geomBounds: nu, lam1, lam2 must be positive");
    const double slack = 1e-12;
    if (v1.spatialNorm() > nu + slack || v2.spatialNorm() > nu + slack)
        throw std::invalid_argument("geomBounds: |vec(v_i)| exceeds nu");

    GeomBoundsReport r;
    r.beta = nu / std::sqrt(nu * nu + 1.0);
    std::array<double, 3> d{};
    for (int i = 0; i < 3; ++i) d[i] = lam1 * v1.v[i] - lam2 * v2.v[i];
    const double dspace = std::sqrt(d[0] * d[0] + d[1] * d[1] + d[2] * d[2]);
    const double dtime = std::abs(lam1 * v1.v0 - lam2 * v2.v0);

    r.ineq1_lhs = dtime;
    r.ineq1_rhs = std::abs(lam1 - lam2) + r.beta * dspace;
    r.ineq2_lhs = dspace - dtime;
    r.ineq2_rhs = (1.0 - r.beta) * dspace - std::abs(lam1 - lam2);

    r.sigma = std::abs(lam1 - lam2);
    r.cond_applicable = r.sigma > 0.0 && dspace >= 2.0 * r.sigma / (1.0 - r.beta);
    if (r.cond_applicable) {
        r.ineq3_lhs = dspace - dtime;
        r.ineq3_rhs = 0.5 * (1.0 - r.beta) * dspace;
    }
    return r;
}

DifferenceRegion supportDifferenceBound(double nu) {
    if (!(nu >= 0.0)) throw std::invalid_argument("supportDifferenceBound: nu must be >= 0");
    return {nu / std::sqrt(nu * nu + 1.0), 2.0 * nu};
}

}  // namespace hyplab
