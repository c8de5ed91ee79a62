#pragma once

#include <array>
#include <functional>
#include <vector>

#include "hyplab/expansion.hpp"
#include "hyplab/fock.hpp"
#include "hyplab/profiles.hpp"
#include "hyplab/ratefit.hpp"

namespace hyplab {

/// The base algebra element: the field at the origin, sum_k sqrt(w_k)(a_k + a_k^dag).
OperatorMatrix baseField(const FockBasis& basis);

/// Smearing as an entrywise momentum-transfer weight:
/// B_st = (2pi)^2 ghat(P_s - P_t) A_st. Kernel values are cached per distinct
/// transfer, so expensive kernels are evaluated once per lattice difference.
OperatorMatrix smearOperator(const FockBasis& basis, const OperatorMatrix& A,
                             const std::function<cplx(const FourVector&)>& ghat,
                             const std::string& label);

/// Kernel of the hyperboloid smearing: Fhat_lambda(p) for a chi evaluator
/// (plain profile or its diamond image).
std::function<cplx(const FourVector&)> hyperboloidKernel(
    const std::function<double(const FourVector&)>& chi_eval, const HyperboloidProfile& f,
    double lambda, const QuadratureSpec& spec);

OperatorMatrix hyperboloidSmear(const FockBasis& basis, const OperatorMatrix& A,
                                const std::function<double(const FourVector&)>& chi_eval,
                                const HyperboloidProfile& f, double lambda,
                                const QuadratureSpec& spec);

/// Kernel htilde(Lambda(sqrt(p^2) - m)) chihat(p) f(p/sqrt(p^2)). On the free
/// instance every transfer sits exactly on a mass shell, so the operator does
/// not depend on Lambda; shell_degenerate records that.
struct PrimedFieldResult {
    OperatorMatrix op;
    bool shell_degenerate{false};
};
PrimedFieldResult primedField(const FockBasis& basis, const OperatorMatrix& A,
                              const MomentumProfile& chi, const HyperboloidProfile& f,
                              const TimeKernel& h, double Lambda, double m);

/// Time-averaged field: integral over lam of
///   h^eta_Lambda(lam) exp(-i(lam m + 3pi/4)) (diamond-smeared hyperboloid field),
/// evaluated by fixed-order Gauss-Legendre on the kernel support.
OperatorMatrix timeAveragedField(const FockBasis& basis, const OperatorMatrix& A,
                                 const MomentumProfile& chi, const HyperboloidProfile& f,
                                 const TimeKernel& h, double Lambda, double eta, double m,
                                 const QuadratureSpec& spec, int nodes = 20);

/// Large-lambda limit of exp(-i(lam m + 3pi/4)) (diamond hyperboloid field),
/// Richardson-extrapolated entrywise assuming a leading 1/lambda correction.
struct OutFieldResult {
    OperatorMatrix limit;
    RateFit rate;                  // |M(lam) - limit| against lam
    double extrapolation_error{0};
    bool converged{false};
    std::vector<double> lambdas;
    std::vector<double> distances;
};
OutFieldResult outField(const FockBasis& basis, const OperatorMatrix& A,
                        const MomentumProfile& chi, const HyperboloidProfile& f, double m,
                        const std::vector<double>& lambda_grid, const QuadratureSpec& spec,
                        const OperatorMatrix* Delta = nullptr);

/// Support gap of two geodesic balls: dist(c1,c2) - R1 - R2; positive iff the
/// supports are disjoint with margin gamma_12.
double supportGap(const HyperboloidProfile& f1, const HyperboloidProfile& f2);

/// Norms of [A^sharp, B^sharp]_(anti)comm E(Delta) for the four dagger
/// combinations, along the Lambda grid, with decay fits.
struct CommutatorDecay {
    std::vector<double> Lambdas;
    std::array<std::vector<double>, 4> norms;
    std::array<std::string, 4> combo;
    std::array<RateFit, 4> fits;
    double gap{0.0};
};
CommutatorDecay asymptoticCommutatorCheck(const FockBasis& basis, const OperatorMatrix& A,
                                          const MomentumProfile& chi1,
                                          const HyperboloidProfile& f1,
                                          const MomentumProfile& chi2,
                                          const HyperboloidProfile& f2, const TimeKernel& h,
                                          const std::vector<double>& Lambda_grid, double eta,
                                          double m, const QuadratureSpec& spec,
                                          const OperatorMatrix* Delta = nullptr,
                                          bool fermi = false);

/// Product-on-vacuum limit: the vector (Psi1_Lambda)^* (Psi2_Lambda) Omega is
/// purely a multiple of the vacuum; the check compares that scalar against
/// (2pi)^4 (Psi1 Omega, (conj f1 f2)(P/m) E0 Psi2 Omega) along the grid.
struct ProductCheck {
    std::vector<double> Lambdas;
    std::vector<cplx> lhs_values;
    cplx rhs_value{0.0, 0.0};
    std::vector<double> residuals;  // |lhs - rhs|
};
ProductCheck twoOperatorProductCheck(const FockBasis& basis, const OperatorMatrix& A,
                                     const MomentumProfile& chi1, const HyperboloidProfile& f1,
                                     const MomentumProfile& chi2, const HyperboloidProfile& f2,
                                     const TimeKernel& h, const std::vector<double>& Lambda_grid,
                                     double eta1, double eta2, double m,
                                     const QuadratureSpec& spec, int nodes = 20);

}  // namespace hyplab
