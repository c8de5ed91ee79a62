#pragma once

#include <vector>

namespace hyplab {

/// Least-squares line through (log x, log y). Nonpositive ys are excluded
/// from the fit and counted in `excluded`.
struct RateFit {
    std::vector<double> xs;
    std::vector<double> ys;
    double slope{0.0};
    double intercept{0.0};  // log-intercept
    double r2{0.0};
    int excluded{0};
    bool valid{false};  // at least two usable points
};

RateFit fitLogLog(const std::vector<double>& xs, const std::vector<double>& ys);

/// Plain least-squares fit of ys against powers x^0..x^degree; returns the
/// coefficients (size degree+1) and writes the max |residual| if asked.
std::vector<double> fitPolynomial(const std::vector<double>& xs, const std::vector<double>& ys,
                                  int degree, double* max_residual = nullptr,
                                  double* condition = nullptr);

/// Richardson extrapolation to x -> infinity assuming y = L + c/x: combines
/// the last two grid points; error bar = |correction|.
struct Extrapolation {
    double limit{0.0};
    double error{0.0};
};
Extrapolation richardson(double x1, double y1, double x2, double y2);

}  // namespace hyplab
