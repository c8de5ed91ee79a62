#pragma once

#include <array>
#include <cmath>
#include <stdexcept>
#include <string>

namespace hyplab {

/// Signature convention: (+,-,-,-), natural units c = 1.
struct FourVector {
    double t{0.0};
    std::array<double, 3> x{0.0, 0.0, 0.0};

    FourVector() = default;
    FourVector(double t_, double x1, double x2, double x3) : t(t_), x{x1, x2, x3} {}
    FourVector(double t_, const std::array<double, 3>& xs) : t(t_), x(xs) {}

    FourVector operator+(const FourVector& o) const {
        return {t + o.t, x[0] + o.x[0], x[1] + o.x[1], x[2] + o.x[2]};
    }
    FourVector operator-(const FourVector& o) const {
        return {t - o.t, x[0] - o.x[0], x[1] - o.x[1], x[2] - o.x[2]};
    }
    FourVector operator*(double s) const { return {t * s, x[0] * s, x[1] * s, x[2] * s}; }
    FourVector operator-() const { return {-t, -x[0], -x[1], -x[2]}; }

    double spatialNorm() const { return std::sqrt(x[0] * x[0] + x[1] * x[1] + x[2] * x[2]); }
    bool finite() const {
        return std::isfinite(t) && std::isfinite(x[0]) && std::isfinite(x[1]) && std::isfinite(x[2]);
    }
};

inline double minkowskiDot(const FourVector& a, const FourVector& b) {
    return a.t * b.t - (a.x[0] * b.x[0] + a.x[1] * b.x[1] + a.x[2] * b.x[2]);
}
inline double minkowskiSquare(const FourVector& a) { return minkowskiDot(a, a); }

/// Point of the future unit hyperboloid v.v = 1, v0 >= 1. Only the spatial
/// velocity is stored; the time component is derived, so the constraint
/// cannot drift.
struct HyperboloidPoint {
    std::array<double, 3> v{0.0, 0.0, 0.0};
    double v0{1.0};

    HyperboloidPoint() = default;
    explicit HyperboloidPoint(const std::array<double, 3>& vs)
        : v(vs), v0(std::sqrt(1.0 + vs[0] * vs[0] + vs[1] * vs[1] + vs[2] * vs[2])) {}
    HyperboloidPoint(double v1, double v2, double v3) : HyperboloidPoint(std::array<double, 3>{v1, v2, v3}) {}

    FourVector asFourVector() const { return {v0, v[0], v[1], v[2]}; }
    double spatialNorm() const { return std::sqrt(v[0] * v[0] + v[1] * v[1] + v[2] * v[2]); }
};

/// Projects a forward timelike four-vector onto H+ (p / sqrt(p^2)).
HyperboloidPoint toHyperboloid(const FourVector& p);

inline double hyperboloidDot(const HyperboloidPoint& a, const HyperboloidPoint& b) {
    return minkowskiDot(a.asFourVector(), b.asFourVector());
}

/// Geodesic distance on H+: arccosh(v.u), clamped against roundoff below 1.
inline double hyperbolicDist(const HyperboloidPoint& a, const HyperboloidPoint& b) {
    const double c = hyperboloidDot(a, b);
    return std::acosh(c < 1.0 ? 1.0 : c);
}

/// Density of the invariant measure d^3v / v0 against d^3v.
inline double measureWeight(const HyperboloidPoint& p) { return 1.0 / p.v0; }

/// Proper orthochronous Lorentz transformation, stored as a 4x4 matrix in
/// (t, x, y, z) index order. General matrices are accepted only if they pass
/// the metric-preservation check.
class LorentzBoost {
  public:
    LorentzBoost();  // identity

    /// Validates L^T g L = g and L[0][0] >= 1; throws std::invalid_argument otherwise.
    explicit LorentzBoost(const std::array<std::array<double, 4>, 4>& m, double tol = 1e-10);

    /// Pure boost of given rapidity along a spatial axis direction.
    static LorentzBoost rapidity(const std::array<double, 3>& axis, double chi);
    /// Pure boost mapping (1,0,0,0) to the given hyperboloid point.
    static LorentzBoost toPoint(const HyperboloidPoint& p);
    /// Spatial rotation by angle about a unit axis.
    static LorentzBoost rotation(const std::array<double, 3>& axis, double angle);

    FourVector apply(const FourVector& a) const;
    HyperboloidPoint apply(const HyperboloidPoint& p) const;
    LorentzBoost inverse() const;
    LorentzBoost compose(const LorentzBoost& o) const;  // this * o

    const std::array<std::array<double, 4>, 4>& matrix() const { return m_; }
    double metricDefect() const;  // max |(L^T g L - g)_{ij}|

  private:
    std::array<std::array<double, 4>, 4> m_;
};

/// Evaluation record of the elementary geometric inequalities used for the
/// hyperboloid-smearing commutator estimates.
struct GeomBoundsReport {
    // |l1 v1^0 - l2 v2^0| <= |l1-l2| + beta |l1 vec(v1) - l2 vec(v2)|
    double ineq1_lhs{0}, ineq1_rhs{0};
    // |l1 vec(v1)-l2 vec(v2)| - |l1 v1^0-l2 v2^0| >= (1-beta)|l1 vec(v1)-l2 vec(v2)| - |l1-l2|
    double ineq2_lhs{0}, ineq2_rhs{0};
    // Conditional: under |l1-l2| <= sigma and |l1 vec(v1)-l2 vec(v2)| >= 2 sigma/(1-beta),
    // lhs >= (1-beta)/2 |l1 vec(v1)-l2 vec(v2)| >= sigma.
    bool cond_applicable{false};
    double ineq3_lhs{0}, ineq3_rhs{0};
    double sigma{0};
    double beta{0};
    bool satisfied(double slack = 1e-12) const {
        bool ok = ineq1_lhs <= ineq1_rhs + slack && ineq2_lhs >= ineq2_rhs - slack;
        if (cond_applicable) ok = ok && ineq3_lhs >= ineq3_rhs - slack && ineq3_lhs >= sigma - slack;
        return ok;
    }
};

/// Evaluates the three inequalities for points with |vec(v_i)| <= nu. The
/// conditional third is checked with sigma = |lam1 - lam2| whenever its
/// hypotheses hold. Throws std::invalid_argument on precondition violation.
GeomBoundsReport geomBounds(const HyperboloidPoint& v1, const HyperboloidPoint& v2,
                            double lam1, double lam2, double nu);

/// Bounding region for D_nu - D_nu: |q0|/|vec(q)| <= nu/sqrt(nu^2+1), |vec(q)| <= 2 nu.
struct DifferenceRegion {
    double ratio_max{0};
    double radius_max{0};
    bool contains(const FourVector& q, double slack = 1e-12) const {
        const double qs = q.spatialNorm();
        if (qs > radius_max + slack) return false;
        return std::abs(q.t) <= ratio_max * qs + slack;
    }
};

DifferenceRegion supportDifferenceBound(double nu);

}  // namespace hyplab
