#pragma once

#include <complex>
#include <functional>
#include <stdexcept>
#include <string>
#include <vector>

namespace hyplab {

using cplx = std::complex<double>;

struct QuadratureSpec {
    double abs_tol{1e-9};
    int max_subdivisions{4000};
    int oscillation_resolution{8};  // minimum nodes per phase period
};

/// Thrown when an adaptive rule cannot reach the requested tolerance; carries
/// the best value obtained and the achieved error estimate.
class QuadratureError : public std::runtime_error {
  public:
    QuadratureError(const std::string& what, cplx best, double achieved)
        : std::runtime_error(what), best_value(best), achieved_error(achieved) {}
    cplx best_value;
    double achieved_error;
};

/// Gauss-Legendre nodes/weights on [-1, 1], cached per order.
const std::vector<double>& gaussLegendreNodes(int n);
const std::vector<double>& gaussLegendreWeights(int n);

/// Fixed-order Gauss-Legendre on [a, b].
double gaussLegendre(const std::function<double(double)>& f, double a, double b, int n);
cplx gaussLegendre(const std::function<cplx(double)>& f, double a, double b, int n);

/// Globally adaptive Gauss-Kronrod 7-15 for complex integrands. The interval
/// is pre-split so that no panel spans more than `initial_panels` equal parts;
/// panels are then bisected until the summed error estimate is within tol.
cplx adaptiveGK(const std::function<cplx(double)>& f, double a, double b,
                const QuadratureSpec& spec, int initial_panels = 1);

/// Composite Gauss-Legendre with `panels` equal panels of order `order`,
/// together with a refined value (twice the panels) for error estimation.
struct CompositeResult {
    cplx value;
    double error_estimate;
};
CompositeResult compositeGL(const std::function<cplx(double)>& f, double a, double b,
                            int panels, int order);

/// Deterministic pairwise summation (independent of accumulation grouping
/// chosen by the optimizer at -O2; fixed tree order).
double pairwiseSum(const std::vector<double>& xs);
cplx pairwiseSum(const std::vector<cplx>& xs);

}  // namespace hyplab
