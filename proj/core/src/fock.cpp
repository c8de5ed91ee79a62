#include "hyplab/fock.hpp"

#include <Eigen/SVD>
#include <cmath>
#include <cstdio>
#include <cstring>
#include <fstream>
#include <mutex>
#include <stdexcept>

#include "hyplab/quadrature.hpp"

namespace hyplab {

ModeGrid ModeGrid::build(double mass, double spacing, double cutoff) {
    if (!(mass > 0.0) || !(spacing > 0.0) || !(cutoff > 0.0))
        throw std::invalid_argument("ModeGrid: mass, spacing, cutoff must be positive");
    ModeGrid g;
    g.mass = mass;
    g.spacing = spacing;
    g.cutoff = cutoff;
    const int n = (int)std::floor(cutoff / spacing + 1e-9);
    const double cell = spacing * spacing * spacing;
    for (int i = -n; i <= n; ++i)
        for (int j = -n; j <= n; ++j)
            for (int l = -n; l <= n; ++l) {
                const std::array<double, 3> k{i * spacing, j * spacing, l * spacing};
                const double k2 = k[0] * k[0] + k[1] * k[1] + k[2] * k[2];
                if (k2 > cutoff * cutoff + 1e-12) continue;
                Mode m;
                m.k = k;
                m.omega = std::sqrt(mass * mass + k2);
                m.weight = cell / (std::pow(2.0 * M_PI, 3) * 2.0 * m.omega);
                g.modes.push_back(m);
            }
    return g;
}

FockBasis FockBasis::build(const ModeGrid& grid, int n_max, int max_dim) {
    if (n_max < 1) throw std::invalid_argument("FockBasis: n_max must be >= 1");
    FockBasis b;
    b.grid = grid;
    b.n_max = n_max;
    const int M = grid.size();

    // deterministic enumeration: by total number (vacuum first), then
    // lexicographic occupancy inside each sector
    std::vector<int> occ(M, 0);
    for (int n = 0; n <= n_max; ++n) {
        std::vector<std::vector<int>> sector;
        std::function<void(int, int)> fill = [&](int mode, int remaining) {
            if (mode == M) {
                if (remaining == 0) sector.push_back(occ);
                return;
            }
            const int hi = std::min(remaining, n_max);
            for (int c = 0; c <= hi; ++c) {
                occ[mode] = c;
                fill(mode + 1, remaining - c);
            }
            occ[mode] = 0;
        };
        fill(0, n);
        for (auto& s : sector) b.states.push_back(std::move(s));
        if ((int)b.states.size() > max_dim)
            throw std::runtime_error("FockBasis: dimension exceeds the configured maximum " +
                                     std::to_string(max_dim));
    }

    b.momenta.resize(b.states.size());
    for (size_t s = 0; s < b.states.size(); ++s) {
        FourVector P;
        for (int m = 0; m < M; ++m) {
            const int c = b.states[s][m];
            if (c == 0) continue;
            const FourVector km = grid.modes[m].onShell();
            P = P + km * (double)c;
        }
        b.momenta[s] = P;
        b.index_[b.states[s]] = (int)s;
    }
    return b;
}

int FockBasis::indexOf(const std::vector<int>& occ) const {
    auto it = index_.find(occ);
    return it == index_.end() ? -1 : it->second;
}

Eigen::MatrixXcd annihilator(const FockBasis& basis, int mode) {
    const int d = basis.dim();
    Eigen::MatrixXcd A = Eigen::MatrixXcd::Zero(d, d);
    for (int s = 0; s < d; ++s) {
        const auto& occ = basis.states[s];
        if (occ[mode] == 0) continue;
        std::vector<int> lowered = occ;
        lowered[mode] -= 1;
        const int t = basis.indexOf(lowered);
        // lowered state always exists: total number only decreases
        A(t, s) = std::sqrt((double)occ[mode]);
    }
    return A;
}

OperatorMatrix buildFromCoefficients(const FockBasis& basis, const std::vector<cplx>& creation,
                                     const std::vector<cplx>& annihilation,
                                     const std::string& label) {
    const int M = basis.grid.size();
    if ((int)creation.size() != M || (int)annihilation.size() != M)
        throw std::invalid_argument("buildFromCoefficients: coefficient size mismatch");
    const int d = basis.dim();
    Eigen::MatrixXcd out = Eigen::MatrixXcd::Zero(d, d);
    for (int m = 0; m < M; ++m) {
        if (creation[m] == cplx(0.0, 0.0) && annihilation[m] == cplx(0.0, 0.0)) continue;
        const Eigen::MatrixXcd a = annihilator(basis, m);
        if (creation[m] != cplx(0.0, 0.0)) out += creation[m] * a.adjoint();
        if (annihilation[m] != cplx(0.0, 0.0)) out += annihilation[m] * a;
    }
    return {out, label};
}

OperatorMatrix buildFieldOperator(const FockBasis& basis,
                                  const std::function<cplx(const FourVector&)>& chihat,
                                  const std::string& label) {
    const int M = basis.grid.size();
    const double norm = std::pow(2.0 * M_PI, 2);
    std::vector<cplx> cre(M), ann(M);
    for (int m = 0; m < M; ++m) {
        const auto& mode = basis.grid.modes[m];
        const double rw = std::sqrt(mode.weight);
        const FourVector kt = mode.onShell();
        cre[m] = norm * chihat(kt) * rw;
        ann[m] = norm * chihat(-kt) * rw;
    }
    return buildFromCoefficients(basis, cre, ann, label);
}

namespace {

// cached 1d transform of the unit bump: B(s) = int_{-1}^{1} b(t) exp(-i s t) dt
// (real and even in s)
double unitBumpTransform(double s) {
    static std::mutex mu;
    static std::map<long long, double> cache;
    const long long key = (long long)std::llround(s * 1e9);
    {
        std::lock_guard<std::mutex> lock(mu);
        auto it = cache.find(key);
        if (it != cache.end()) return it->second;
    }
    const int order = std::max(48, (int)std::ceil(std::abs(s) * 4.0));
    const std::function<double(double)> integrand = [s](double t) {
        return bumpValue(t) * std::cos(s * t);
    };
    const double val = gaussLegendre(integrand, -1.0, 1.0, order);
    std::lock_guard<std::mutex> lock(mu);
    cache[key] = val;
    return val;
}

}  // namespace

double SpatialBump::operator()(const std::array<double, 3>& x) const {
    double v = amplitude;
    for (int i = 0; i < 3; ++i) v *= bumpValue((x[i] - center[i]) / width);
    return v;
}

cplx SpatialBump::fourier3(const std::array<double, 3>& q) const {
    cplx v(amplitude, 0.0);
    for (int i = 0; i < 3; ++i) {
        const double B = unitBumpTransform(q[i] * width);
        v *= width * B * std::polar(1.0, -q[i] * center[i]);
    }
    return v;
}

OperatorMatrix buildSpatialFieldOperator(const FockBasis& basis, const SpatialBump& g) {
    const int M = basis.grid.size();
    std::vector<cplx> cre(M), ann(M);
    for (int m = 0; m < M; ++m) {
        const auto& mode = basis.grid.modes[m];
        const double rw = std::sqrt(mode.weight);
        const std::array<double, 3> k = mode.k;
        const std::array<double, 3> mk{-k[0], -k[1], -k[2]};
        // phi(0,x) mode k carries exp(i k.x) on the annihilation side
        ann[m] = g.fourier3(mk) * rw;
        cre[m] = g.fourier3(k) * rw;
    }
    return buildFromCoefficients(basis, cre, ann, "phi(g)");
}

OperatorMatrix buildWickSquare(const FockBasis& basis, const SpatialBump& g) {
    const int M = basis.grid.size();
    const int d = basis.dim();
    Eigen::MatrixXcd out = Eigen::MatrixXcd::Zero(d, d);
    // matrix elements filled per occupation state; the annihilators are one
    // entry per column, so dense products would waste d^3 work per mode pair
    std::vector<int> occ;
    for (int m = 0; m < M; ++m) {
        const auto& km = basis.grid.modes[m];
        for (int l = 0; l < M; ++l) {
            const auto& kl = basis.grid.modes[l];
            const double rw = std::sqrt(km.weight * kl.weight);
            const std::array<double, 3> sum{km.k[0] + kl.k[0], km.k[1] + kl.k[1],
                                            km.k[2] + kl.k[2]};
            const std::array<double, 3> msum{-sum[0], -sum[1], -sum[2]};
            const std::array<double, 3> diff{km.k[0] - kl.k[0], km.k[1] - kl.k[1],
                                             km.k[2] - kl.k[2]};
            const cplx c_aa = g.fourier3(msum) * rw;
            const cplx c_cc = g.fourier3(sum) * rw;
            const cplx c_ca = 2.0 * g.fourier3(diff) * rw;
            const int dml = (m == l) ? 1 : 0;
            for (int s = 0; s < d; ++s) {
                const auto& st = basis.states[s];
                if (c_aa != cplx(0, 0) && st[l] > 0 && st[m] - dml > 0) {
                    occ = st;
                    occ[l] -= 1;
                    occ[m] -= 1;
                    out(basis.indexOf(occ), s) +=
                        c_aa * std::sqrt((double)(st[l] * (st[m] - dml)));
                }
                if (c_cc != cplx(0, 0)) {
                    occ = st;
                    occ[l] += 1;
                    occ[m] += 1;
                    const int t = basis.indexOf(occ);
                    // raised state missing means it fell outside the particle
                    // number truncation; drop it, matching a^dag on the cutoff
                    if (t >= 0)
                        out(t, s) += c_cc * std::sqrt((double)((st[l] + 1) * (st[m] + dml + 1)));
                }
                if (c_ca != cplx(0, 0) && st[l] > 0) {
                    occ = st;
                    occ[l] -= 1;
                    const int raised = occ[m] + 1;
                    occ[m] += 1;
                    out(basis.indexOf(occ), s) += c_ca * std::sqrt((double)(st[l] * raised));
                }
            }
        }
    }
    return {out, ":phi^2:(g)"};
}

OperatorMatrix spectralProjector(const FockBasis& basis,
                                 const std::function<bool(const FourVector&)>& region,
                                 const std::string& label) {
    const int d = basis.dim();
    Eigen::MatrixXcd P = Eigen::MatrixXcd::Zero(d, d);
    for (int s = 0; s < d; ++s)
        if (region(basis.momenta[s])) P(s, s) = 1.0;
    return {P, label};
}

OperatorMatrix vacuumOrthProjector(const FockBasis& basis) {
    const int d = basis.dim();
    Eigen::MatrixXcd P = Eigen::MatrixXcd::Identity(d, d);
    P(0, 0) = 0.0;  // vacuum is state 0 by construction
    return {P, "E_orth"};
}

OperatorMatrix translationOperator(const FockBasis& basis, const FourVector& a) {
    const int d = basis.dim();
    Eigen::MatrixXcd U = Eigen::MatrixXcd::Zero(d, d);
    for (int s = 0; s < d; ++s) U(s, s) = std::polar(1.0, minkowskiDot(basis.momenta[s], a));
    return {U, "U(a)"};
}

OperatorMatrix translateOperator(const FockBasis& basis, const OperatorMatrix& A,
                                 const FourVector& a) {
    const OperatorMatrix U = translationOperator(basis, a);
    const OperatorMatrix Um = translationOperator(basis, -a);
    return {U.mat * A.mat * Um.mat, A.label + "(a)"};
}

Eigen::MatrixXcd bracket(const Eigen::MatrixXcd& A, const Eigen::MatrixXcd& B, bool fermi) {
    return fermi ? Eigen::MatrixXcd(A * B + B * A) : Eigen::MatrixXcd(A * B - B * A);
}

double operatorNorm(const Eigen::MatrixXcd& A) {
    if (A.size() == 0) return 0.0;
    Eigen::BDCSVD<Eigen::MatrixXcd> svd(A);
    return svd.singularValues()(0);
}

LemmaReport kernelProjectorLemmaCheck(const Eigen::MatrixXcd& A, int n, double rel_tol) {
    if (A.rows() != A.cols()) throw std::invalid_argument("kernelProjectorLemmaCheck: square matrix required");
    if (n < 1) throw std::invalid_argument("kernelProjectorLemmaCheck: n >= 1 required");
    Eigen::MatrixXcd An = Eigen::MatrixXcd::Identity(A.rows(), A.cols());
    for (int i = 0; i < n; ++i) An = An * A;

    Eigen::JacobiSVD<Eigen::MatrixXcd> svd(An, Eigen::ComputeFullV);
    const auto& sv = svd.singularValues();
    const double smax = sv.size() ? sv(0) : 0.0;
    const double thr = std::max(smax * rel_tol, 1e-300);
    int kdim = 0;
    for (int i = 0; i < sv.size(); ++i) {
        if (sv(i) < thr) {
            ++kdim;
        } else if (smax > 0.0 && sv(i) < thr * 10.0 && sv(i) > thr * 0.1 && sv(i) != smax) {
            throw std::runtime_error(
                "kernelProjectorLemmaCheck: rank decision ambiguous near threshold " +
                std::to_string(thr) + "; pass an explicit tolerance");
        }
    }
    const int d = (int)A.rows();
    const Eigen::MatrixXcd V = svd.matrixV();
    const Eigen::MatrixXcd Vk = V.rightCols(kdim);
    const Eigen::MatrixXcd P = Vk * Vk.adjoint();

    LemmaReport r;
    r.kernel_dim = kdim;
    const double comm = operatorNorm(bracket(A, A.adjoint()));
    const double ap = operatorNorm(A * P);
    const double asp = operatorNorm(A.adjoint() * P);
    r.lhs1 = ap * ap;
    r.rhs1 = (n - 1) * comm;
    r.lhs2 = asp * asp;
    r.rhs2 = n * comm;
    (void)d;
    return r;
}

namespace {
constexpr char kMagic[9] = "HYPLABOP";
constexpr int kVersion = 1;
}  // namespace

void dumpOperator(const OperatorMatrix& A, const std::string& path, const std::string& convention) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("dumpOperator: cannot open " + path);
    out.write(kMagic, 8);
    const int32_t ver = kVersion;
    out.write((const char*)&ver, 4);
    auto writeStr = [&](const std::string& s) {
        const int32_t n = (int32_t)s.size();
        out.write((const char*)&n, 4);
        out.write(s.data(), n);
    };
    writeStr(convention);
    writeStr(A.label);
    const int32_t rows = (int32_t)A.mat.rows(), cols = (int32_t)A.mat.cols();
    out.write((const char*)&rows, 4);
    out.write((const char*)&cols, 4);
    out.write((const char*)A.mat.data(), sizeof(cplx) * rows * cols);
}

OperatorMatrix loadOperator(const std::string& path, const std::string& expected_convention) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::runtime_error("loadOperator: cannot open " + path);
    char magic[8];
    in.read(magic, 8);
    if (std::memcmp(magic, kMagic, 8) != 0) throw std::runtime_error("loadOperator: bad magic");
    int32_t ver = 0;
    in.read((char*)&ver, 4);
    if (ver != kVersion) throw std::runtime_error("loadOperator: unsupported version");
    auto readStr = [&] {
        int32_t n = 0;
        in.read((char*)&n, 4);
        std::string s(n, '\0');
        in.read(s.data(), n);
        return s;
    };
    const std::string conv = readStr();
    if (conv != expected_convention)
        throw std::runtime_error("loadOperator: convention mismatch: " + conv);
    OperatorMatrix A;
    A.label = readStr();
    int32_t rows = 0, cols = 0;
    in.read((char*)&rows, 4);
    in.read((char*)&cols, 4);
    A.mat.resize(rows, cols);
    in.read((char*)A.mat.data(), sizeof(cplx) * rows * cols);
    if (!in) throw std::runtime_error("loadOperator: truncated file");
    return A;
}

}  // namespace hyplab
