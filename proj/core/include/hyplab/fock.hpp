#pragma once

#include <Eigen/Dense>
#include <functional>
#include <map>
#include <string>
#include <vector>

#include "hyplab/minkowski.hpp"
#include "hyplab/profiles.hpp"

namespace hyplab {

/// Cubic momentum lattice |k| <= cutoff with per-mode weight
/// spacing^3 / ((2pi)^3 2 omega_k), the cell measure of d3k/((2pi)^3 2 omega).
struct ModeGrid {
    double mass{1.0};
    double spacing{0.5};
    double cutoff{1.0};

    struct Mode {
        std::array<double, 3> k;
        double omega;
        double weight;
        FourVector onShell() const { return {omega, k[0], k[1], k[2]}; }
    };
    std::vector<Mode> modes;

    static ModeGrid build(double mass, double spacing, double cutoff);
    int size() const { return (int)modes.size(); }
};

/// Occupation-number basis over the grid modes, total particle number
/// <= n_max. States are enumerated in a fixed deterministic order with the
/// vacuum first.
struct FockBasis {
    ModeGrid grid;
    int n_max{2};
    std::vector<std::vector<int>> states;  // occupancy per mode
    std::vector<FourVector> momenta;       // total P per state

    /// Throws std::runtime_error when the dimension would exceed max_dim.
    static FockBasis build(const ModeGrid& grid, int n_max, int max_dim = 5000);
    int dim() const { return (int)states.size(); }
    int indexOf(const std::vector<int>& occ) const;  // -1 if absent

  private:
    std::map<std::vector<int>, int> index_;
};

struct OperatorMatrix {
    Eigen::MatrixXcd mat;
    std::string label;

    OperatorMatrix adjoint() const { return {mat.adjoint(), label + "*"}; }
};

/// Ladder operators on the basis (a_j lowers mode j).
Eigen::MatrixXcd annihilator(const FockBasis& basis, int mode);

/// sum_j (creation[j] a_j^dag + annihilation[j] a_j).
OperatorMatrix buildFromCoefficients(const FockBasis& basis,
                                     const std::vector<cplx>& creation,
                                     const std::vector<cplx>& annihilation,
                                     const std::string& label);

/// Smeared field with creation coefficient (2pi)^2 chihat(omega_k, k) sqrt(w_k)
/// and annihilation coefficient (2pi)^2 chihat(-omega_k, -k) sqrt(w_k).
/// `chihat` may be complex valued (diamond images, F-profiles).
OperatorMatrix buildFieldOperator(const FockBasis& basis,
                                  const std::function<cplx(const FourVector&)>& chihat,
                                  const std::string& label);

/// Product of three axis bumps, each of half-width `width` about the center.
struct SpatialBump {
    std::array<double, 3> center{0.0, 0.0, 0.0};
    double width{1.0};
    double amplitude{1.0};

    double operator()(const std::array<double, 3>& x) const;
    /// int g(x) exp(-i q.x) d3x, separable into cached 1d transforms.
    cplx fourier3(const std::array<double, 3>& q) const;
    /// Radius of the smallest ball about the center containing supp g.
    double supportRadius() const { return width * std::sqrt(3.0); }
};

/// Equal-time smeared field phi(g) = int g(x) phi(0,x) d3x.
OperatorMatrix buildSpatialFieldOperator(const FockBasis& basis, const SpatialBump& g);

/// Normal-ordered Wick square :phi^2:(g) at time zero; vacuum expectation 0.
OperatorMatrix buildWickSquare(const FockBasis& basis, const SpatialBump& g);

/// Diagonal 0/1 projector from a predicate on the state's total momentum.
OperatorMatrix spectralProjector(const FockBasis& basis,
                                 const std::function<bool(const FourVector&)>& region,
                                 const std::string& label);

/// 1 - |vacuum><vacuum|.
OperatorMatrix vacuumOrthProjector(const FockBasis& basis);

/// Diagonal translation U(a) with phases exp(i P(state).a) (Minkowski dot).
OperatorMatrix translationOperator(const FockBasis& basis, const FourVector& a);

/// U(a) A U(-a).
OperatorMatrix translateOperator(const FockBasis& basis, const OperatorMatrix& A,
                                 const FourVector& a);

/// AB - BA, or the anticommutator AB + BA when fermi is set.
Eigen::MatrixXcd bracket(const Eigen::MatrixXcd& A, const Eigen::MatrixXcd& B, bool fermi = false);

/// Largest singular value.
double operatorNorm(const Eigen::MatrixXcd& A);

struct LemmaReport {
    double lhs1{0}, rhs1{0};  // |A P|^2 vs (n-1) |[A, A*]|
    double lhs2{0}, rhs2{0};  // |A* P|^2 vs n |[A, A*]|
    int kernel_dim{0};
    bool satisfied(double slack = 1e-12) const {
        return lhs1 <= rhs1 + slack && lhs2 <= rhs2 + slack;
    }
};

/// P projects onto ker(A^n) (rank-revealing SVD with relative threshold
/// `rel_tol`). Throws std::runtime_error when singular values crowd the
/// threshold (decision ambiguous within a factor 10).
LemmaReport kernelProjectorLemmaCheck(const Eigen::MatrixXcd& A, int n, double rel_tol = 1e-9);

/// Versioned binary round-trip for regression fixtures.
void dumpOperator(const OperatorMatrix& A, const std::string& path, const std::string& convention);
OperatorMatrix loadOperator(const std::string& path, const std::string& expected_convention);

}  // namespace hyplab
