#include "hyplab/ratefit.hpp"

#include <Eigen/Dense>
#include <Eigen/SVD>
#include <cmath>
#include <stdexcept>

namespace hyplab {

RateFit fitLogLog(const std::vector<double>& xs, const std::vector<double>& ys) {
    if (xs.size() != ys.size()) throw std::invalid_argument("fitLogLog: size mismatch");
    RateFit fit;
    fit.xs = xs;
    fit.ys = ys;
    std::vector<double> lx, ly;
    for (size_t i = 0; i < xs.size(); ++i) {
        if (!(xs[i] > 0.0)) throw std::invalid_argument("fitLogLog: xs must be positive");
        if (ys[i] > 0.0 && std::isfinite(ys[i])) {
            lx.push_back(std::log(xs[i]));
            ly.push_back(std::log(ys[i]));
        } else {
            ++fit.excluded;
        }
    }
    const size_t n = lx.size();
    if (n < 2) return fit;
    double sx = 0, sy = 0, sxx = 0, sxy = 0, syy = 0;
    for (size_t i = 0; i < n; ++i) {
        sx += lx[i];
        sy += ly[i];
        sxx += lx[i] * lx[i];
        sxy += lx[i] * ly[i];
        syy += ly[i] * ly[i];
    }
    const double den = n * sxx - sx * sx;
    if (den <= 0.0) return fit;
    fit.slope = (n * sxy - sx * sy) / den;
    fit.intercept = (sy - fit.slope * sx) / n;
    const double sst = syy - sy * sy / n;
    double sse = 0.0;
    for (size_t i = 0; i < n; ++i) {
        const double r = ly[i] - (fit.intercept + fit.slope * lx[i]);
        sse += r * r;
    }
    fit.r2 = sst > 0.0 ? 1.0 - sse / sst : 1.0;
    fit.valid = true;
    return fit;
}

std::vector<double> fitPolynomial(const std::vector<double>& xs, const std::vector<double>& ys,
                                  int degree, double* max_residual, double* condition) {
    if (xs.size() != ys.size()) throw std::invalid_argument("fitPolynomial: size mismatch");
    const int n = (int)xs.size();
    if (n < degree + 1) throw std::invalid_argument("fitPolynomial: not enough points");
    Eigen::MatrixXd A(n, degree + 1);
    Eigen::VectorXd b(n);
    for (int i = 0; i < n; ++i) {
        double p = 1.0;
        for (int j = 0; j <= degree; ++j) {
            A(i, j) = p;
            p *= xs[i];
        }
        b(i) = ys[i];
    }
    Eigen::JacobiSVD<Eigen::MatrixXd> svd(A, Eigen::ComputeThinU | Eigen::ComputeThinV);
    Eigen::VectorXd c = svd.solve(b);
    if (condition) {
        const auto& sv = svd.singularValues();
        *condition = sv(sv.size() - 1) > 0.0 ? sv(0) / sv(sv.size() - 1) : INFINITY;
    }
    if (max_residual) {
        Eigen::VectorXd r = A * c - b;
        *max_residual = r.cwiseAbs().maxCoeff();
    }
    return std::vector<double>(c.data(), c.data() + c.size());
}

Extrapolation richardson(double x1, double y1, double x2, double y2) {
    if (!(x2 > x1) || !(x1 > 0.0)) throw std::invalid_argument("richardson: need 0 < x1 < x2");
    // y = L + c/x  =>  L = (x2 y2 - x1 y1) / (x2 - x1)
    Extrapolation e;
    e.limit = (x2 * y2 - x1 * y1) / (x2 - x1);
    e.error = std::abs(e.limit - y2);
    return e;
}

}  // namespace hyplab
