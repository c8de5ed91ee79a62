#include "hyplab/experiments.hpp"

#include <atomic>
#include <chrono>
#include <cinttypes>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <random>
#include <thread>

#include "hyplab/asymptotic.hpp"
#include "hyplab/decay.hpp"
#include "hyplab/expansion.hpp"
#include "hyplab/fock.hpp"
#include "hyplab/minkowski.hpp"
#include "hyplab/profiles.hpp"
#include "hyplab/quadrature.hpp"

namespace hyplab {

namespace {

// ---------- plumbing ----------

std::string hex64(std::uint64_t h) {
    char buf[20];
    std::snprintf(buf, sizeof buf, "%016" PRIx64, h);
    return buf;
}

std::string num(double x) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", x);
    return buf;
}

/// CSV artifact with the config hash pinned in a leading comment line.
class Csv {
  public:
    Csv(const ExperimentContext& ctx, const std::string& name,
        const std::vector<std::string>& header) {
        std::filesystem::create_directories(ctx.out_dir);
        const std::string path = ctx.out_dir + "/" + name;
        out_.open(path, std::ios::binary | std::ios::trunc);
        if (!out_) throw std::runtime_error("cannot open output file " + path);
        out_ << "# config " << hex64(ctx.cfg.hash()) << "\n";
        writeCells(header);
    }
    void row(const std::vector<std::string>& cells) { writeCells(cells); }

  private:
    void writeCells(const std::vector<std::string>& cells) {
        for (size_t i = 0; i < cells.size(); ++i) out_ << (i ? "," : "") << cells[i];
        out_ << "\n";
    }
    std::ofstream out_;
};

class Timer {
  public:
    double seconds() const {
        return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0_).count();
    }
    void reset() { t0_ = std::chrono::steady_clock::now(); }

  private:
    std::chrono::steady_clock::time_point t0_ = std::chrono::steady_clock::now();
};

VerdictRecord verdict(const std::string& id, double measured, double threshold,
                      const std::string& relation, double runtime_s) {
    VerdictRecord v;
    v.id = id;
    v.statement = claimStatement(id);
    v.measured = measured;
    v.threshold = threshold;
    v.relation = relation;
    v.pass = relation == "<=" ? measured <= threshold : measured >= threshold;
    v.runtime_s = runtime_s;
    return v;
}

std::vector<double> logspace(double lo, double hi, int n) {
    std::vector<double> out(n);
    for (int i = 0; i < n; ++i)
        out[i] = lo * std::pow(hi / lo, n == 1 ? 0.0 : (double)i / (n - 1));
    return out;
}

template <class F>
void parallelFor(int n, int jobs, F&& fn) {
    jobs = std::max(1, std::min(jobs, n));
    if (jobs == 1) {
        for (int i = 0; i < n; ++i) fn(i);
        return;
    }
    std::atomic<int> next{0};
    std::exception_ptr error;
    std::mutex error_mu;
    std::vector<std::thread> pool;
    for (int j = 0; j < jobs; ++j)
        pool.emplace_back([&] {
            for (;;) {
                const int i = next.fetch_add(1);
                if (i >= n) return;
                try {
                    fn(i);
                } catch (...) {
                    std::lock_guard<std::mutex> lock(error_mu);
                    if (!error) error = std::current_exception();
                }
            }
        });
    for (auto& t : pool) t.join();
    if (error) std::rethrow_exception(error);
}

// ---------- shared setup ----------

MomentumProfile defaultChi(const ExperimentConfig& cfg) {
    MomentumProfile chi;
    chi.mass_center = cfg.mass;
    chi.shell_halfwidth = cfg.chi_shell_halfwidth;
    chi.plateau_halfwidth = cfg.chi_plateau_halfwidth;
    chi.angular_center = HyperboloidPoint{0.0, 0.0, 0.0};
    chi.angular_radius = cfg.chi_angular_radius;
    chi.angular_inner_radius = cfg.chi_angular_inner_radius;
    chi.validate();
    return chi;
}

FockBasis defaultBasis(const ExperimentConfig& cfg) {
    return FockBasis::build(ModeGrid::build(cfg.mass, cfg.grid_spacing, cfg.grid_cutoff),
                            cfg.n_max, cfg.max_dim);
}

// ---------- expand: remainder rates of the radial oscillatory expansion ----------

std::vector<VerdictRecord> runExpand(const ExperimentContext& ctx) {
    const ExperimentConfig& cfg = ctx.cfg;
    QuadratureSpec spec;
    // the extraction window reaches rho = 1e4 where the integrand has several
    // thousand oscillation periods across the support
    spec.max_subdivisions = 40000;
    Timer timer;

    const std::vector<HyperboloidProfile> profiles = {
        {HyperboloidPoint{0.0, 0.0, 0.0}, 2.0, 1.0},
        {HyperboloidPoint{0.25, 0.0, 0.0}, 1.7, 0.8},
        {HyperboloidPoint{0.0, -0.2, 0.15}, 2.4, 1.3},
    };

    // coefficients are extracted on a high-rho window disjoint from the
    // tested window, so the rate fits below are out-of-sample
    const std::vector<double> extraction_grid = defaultRhoGrid(100.0, 1.0e4);
    const std::vector<double> test_grid = defaultRhoGrid(cfg.lambda_lo, cfg.lambda_hi);

    Csv csv(ctx, "expand.csv",
            {"profile", "rho", "oracle_re", "oracle_im", "residual0", "residual1", "residual2"});

    double worst_c0 = 0.0;
    std::array<double, 3> worst_slope{-1e9, -1e9, -1e9};
    for (size_t pi = 0; pi < profiles.size(); ++pi) {
        const HyperboloidProfile& f = profiles[pi];
        // stationary direction off center but inside the support
        const auto frame = tangentFrame(f.center, HyperboloidPoint{1.0, 0.3, 0.0});
        const double off = 0.3 * f.radius;
        const HyperboloidPoint v = toHyperboloid(f.center.asFourVector() * std::cosh(off) +
                                                 frame[0] * std::sinh(off));

        const WavepacketAmplitude amp = f.asAmplitude();
        const std::vector<cplx> coeffs = extractLk(amp, v, 2, extraction_grid, spec);
        worst_c0 = std::max(worst_c0, std::abs(coeffs[0] - cplx(f(v), 0.0)));

        std::vector<ExpansionResult> rows(test_grid.size());
        parallelFor((int)test_grid.size(), ctx.jobs,
                    [&](int i) { rows[i] = expandAt(amp, v, test_grid[i], coeffs, spec); });

        std::array<std::vector<double>, 3> residuals;
        for (const ExpansionResult& r : rows) {
            cplx partial = 0.0;
            std::vector<std::string> cells = {std::to_string(pi), num(r.rho),
                                              num(r.oracle.real()), num(r.oracle.imag())};
            for (int N = 0; N < 3; ++N) {
                partial += r.terms[N];
                residuals[N].push_back(std::abs(r.oracle - partial));
                cells.push_back(num(residuals[N].back()));
            }
            csv.row(cells);
        }
        for (int N = 0; N < 3; ++N) {
            const RateFit fit = fitLogLog(test_grid, residuals[N]);
            if (!fit.valid) throw std::runtime_error("expand: degenerate residual fit");
            worst_slope[N] = std::max(worst_slope[N], fit.slope);
        }
    }

    const double t = timer.seconds();
    std::vector<VerdictRecord> out;
    for (int N = 0; N < 3; ++N)
        out.push_back(verdict("expand.remainder_rate_n" + std::to_string(N), worst_slope[N],
                              -(N + 1) + cfg.slope_margin, "<=", t / 4));
    out.push_back(verdict("expand.leading_coefficient", worst_c0, cfg.leading_coefficient_tol,
                          "<=", t / 4));
    return out;
}

// ---------- rates: shell approach and the product limit ----------

std::vector<VerdictRecord> runRates(const ExperimentContext& ctx) {
    const ExperimentConfig& cfg = ctx.cfg;
    QuadratureSpec spec;
    // the cap scan reaches Lambda ~ 2400 where the smearing integrand has a few
    // thousand oscillation periods across the support
    spec.max_subdivisions = 40000;
    std::vector<VerdictRecord> out;

    const FockBasis basis = defaultBasis(cfg);
    const OperatorMatrix A = baseField(basis);
    const MomentumProfile chi = defaultChi(cfg);
    const HyperboloidProfile f{HyperboloidPoint{0.0, 0.0, 0.0}, cfg.f_radius, 1.0};
    const TimeKernel h(cfg.h_tau1, cfg.h_tau2);
    const double m = cfg.mass;

    Timer timer;
    {
        const OperatorMatrix shell = primedField(basis, A, chi, f, h, cfg.cap_lambda_lo, m).op;
        const OperatorMatrix E = spectralProjector(
            basis, [m](const FourVector& P) { return P.t <= 3.0 * m; }, "E(p0<=3m)");
        const std::vector<double> lambdas =
            logspace(cfg.lambda_lo, cfg.lambda_hi, cfg.lambda_points);
        const auto chi_diamond = diamondTransform(chi);
        std::vector<double> dists(lambdas.size());
        parallelFor((int)lambdas.size(), ctx.jobs, [&](int i) {
            const double lam = lambdas[i];
            const OperatorMatrix M = hyperboloidSmear(basis, A, chi_diamond, f, lam, spec);
            const cplx phase = std::polar(1.0, -(lam * m + 3.0 * M_PI / 4.0));
            dists[i] = operatorNorm((phase * M.mat - shell.mat) * E.mat);
        });

        Csv csv(ctx, "rates.csv", {"lambda", "distance"});
        for (size_t i = 0; i < lambdas.size(); ++i)
            csv.row({num(lambdas[i]), num(dists[i])});

        const RateFit fit = fitLogLog(lambdas, dists);
        if (!fit.valid) throw std::runtime_error("rates: degenerate distance fit");
        out.push_back(verdict("rates.shell_approach", fit.slope, -1.0 + cfg.slope_margin, "<=",
                              timer.seconds()));
    }

    // product of two capped operators on the vacuum, two window scalings
    timer.reset();
    const HyperboloidProfile f2{HyperboloidPoint{0.1, 0.0, 0.0}, 0.9 * cfg.f_radius, 1.0};
    const std::vector<double> Lambdas =
        logspace(cfg.cap_lambda_lo, cfg.cap_lambda_hi, cfg.cap_lambda_points);

    auto limitOf = [&](double eta, ProductCheck* keep) {
        const ProductCheck pc =
            twoOperatorProductCheck(basis, A, chi, f, chi, f2, h, Lambdas, eta, eta, m, spec);
        const size_t n = pc.Lambdas.size();
        const Extrapolation re = richardson(pc.Lambdas[n - 2], pc.lhs_values[n - 2].real(),
                                            pc.Lambdas[n - 1], pc.lhs_values[n - 1].real());
        const Extrapolation im = richardson(pc.Lambdas[n - 2], pc.lhs_values[n - 2].imag(),
                                            pc.Lambdas[n - 1], pc.lhs_values[n - 1].imag());
        if (keep) *keep = pc;
        return std::make_pair(cplx(re.limit, im.limit), re.error + im.error);
    };

    ProductCheck pc_half;
    const auto [limit_half, err_half] = limitOf(0.5, &pc_half);
    const auto [limit_one, err_one] = limitOf(1.0, nullptr);

    Csv csv(ctx, "product.csv", {"Lambda", "lhs_re", "lhs_im", "residual"});
    for (size_t i = 0; i < pc_half.Lambdas.size(); ++i)
        csv.row({num(pc_half.Lambdas[i]), num(pc_half.lhs_values[i].real()),
                 num(pc_half.lhs_values[i].imag()), num(pc_half.residuals[i])});

    const double t = timer.seconds();
    const double rel = pc_half.residuals.back() / std::abs(pc_half.rhs_value);
    out.push_back(verdict("product.residual", rel, cfg.product_residual_tol, "<=", t / 2));
    out.push_back(verdict("product.window_consistency", std::abs(limit_half - limit_one),
                          10.0 * (err_half + err_one), "<=", t / 2));
    return out;
}

// ---------- outfield: vacuum identity and disjoint-region projections ----------

std::vector<VerdictRecord> runOutfield(const ExperimentContext& ctx) {
    const ExperimentConfig& cfg = ctx.cfg;
    QuadratureSpec spec;
    const double m = cfg.mass;
    const FockBasis basis = defaultBasis(cfg);
    const OperatorMatrix A = baseField(basis);
    const TimeKernel h(cfg.h_tau1, cfg.h_tau2);
    std::vector<VerdictRecord> out;

    std::vector<int> particle_count(basis.dim());
    for (int s = 0; s < basis.dim(); ++s) {
        int n = 0;
        for (int o : basis.states[s]) n += o;
        particle_count[s] = n;
    }

    Timer timer;
    std::mt19937_64 rng(cfg.seed ^ 0x9e3779b97f4a7c15ull);
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    auto randomDirection = [&] {
        // Gaussian draw normalized; deterministic given the seed
        std::normal_distribution<double> gauss(0.0, 1.0);
        std::array<double, 3> d{gauss(rng), gauss(rng), gauss(rng)};
        const double n = std::sqrt(d[0] * d[0] + d[1] * d[1] + d[2] * d[2]);
        return std::array<double, 3>{d[0] / n, d[1] / n, d[2] / n};
    };

    Csv vcsv(ctx, "outfield_vacuum.csv",
             {"draw", "center_x", "center_y", "center_z", "radius", "amplitude", "residual"});
    double worst_identity = 0.0;
    for (int draw = 0; draw < 5; ++draw) {
        const auto dir = randomDirection();
        const double shift = 0.15 * unit(rng);
        HyperboloidProfile f{
            HyperboloidPoint{shift * dir[0], shift * dir[1], shift * dir[2]},
            0.5 + 0.3 * unit(rng), 0.5 + unit(rng)};
        MomentumProfile chi = defaultChi(cfg);
        chi.angular_center = f.center;
        chi.angular_inner_radius = f.radius + 0.1;
        chi.angular_radius = f.radius + 0.5;
        chi.validate();

        const Eigen::VectorXcd lhs =
            primedField(basis, A, chi, f, h, cfg.cap_lambda_lo, m).op.mat.col(0);
        const OperatorMatrix phi_chi = buildFieldOperator(
            basis, [&chi](const FourVector& p) { return cplx(chi(p), 0.0); }, "phi(chi)");
        Eigen::VectorXcd rhs = phi_chi.mat.col(0);
        for (int s = 0; s < basis.dim(); ++s) {
            if (particle_count[s] != 1) {
                rhs(s) = 0.0;
                continue;
            }
            const FourVector P = basis.momenta[s];
            rhs(s) *= f(HyperboloidPoint{P.x[0] / m, P.x[1] / m, P.x[2] / m});
        }
        const double res = (lhs - rhs).norm();
        worst_identity = std::max(worst_identity, res);
        vcsv.row({std::to_string(draw), num(f.center.v[0]), num(f.center.v[1]),
                  num(f.center.v[2]), num(f.radius), num(f.amplitude), num(res)});
    }
    out.push_back(verdict("outfield.vacuum_identity", worst_identity, cfg.vacuum_identity_tol,
                          "<=", timer.seconds()));

    // disjoint-region projections of the extrapolated limit operator
    timer.reset();
    const MomentumProfile chi = defaultChi(cfg);
    const HyperboloidProfile f{HyperboloidPoint{0.0, 0.0, 0.0}, cfg.f_radius, 1.0};
    const OutFieldResult of = outField(basis, A, chi, f, m,
                                       {0.5 * cfg.lambda_hi, 0.75 * cfg.lambda_hi, cfg.lambda_hi},
                                       spec);

    // padded bounding box of m * supp f in energy-momentum coordinates
    std::array<double, 4> flo{1e300, 1e300, 1e300, 1e300},
        fhi{-1e300, -1e300, -1e300, -1e300};
    const auto frame = tangentFrame(f.center, HyperboloidPoint{1.0, 0.0, 0.0});
    for (int ir = 0; ir <= 8; ++ir)
        for (int it = 0; it <= 16; ++it)
            for (int ip = 0; ip < 32; ++ip) {
                const double r = f.radius * ir / 8.0;
                const double th = M_PI * it / 16.0, ph = 2.0 * M_PI * ip / 32.0;
                const FourVector n = frame[0] * (std::sin(th) * std::cos(ph)) +
                                     frame[1] * (std::sin(th) * std::sin(ph)) +
                                     frame[2] * std::cos(th);
                const FourVector u =
                    f.center.asFourVector() * std::cosh(r) + n * std::sinh(r);
                const std::array<double, 4> c{m * u.t, m * u.x[0], m * u.x[1], m * u.x[2]};
                for (int j = 0; j < 4; ++j) {
                    flo[j] = std::min(flo[j], c[j] - 0.05);
                    fhi[j] = std::max(fhi[j], c[j] + 0.05);
                }
            }

    struct Box {
        std::array<double, 4> lo, hi;
        bool contains(const FourVector& P) const {
            const std::array<double, 4> c{P.t, P.x[0], P.x[1], P.x[2]};
            for (int j = 0; j < 4; ++j)
                if (c[j] < lo[j] || c[j] > hi[j]) return false;
            return true;
        }
    };
    std::uniform_int_distribution<int> pick(0, basis.dim() - 1);
    auto randomBox = [&] {
        Box b;
        const FourVector P = basis.momenta[pick(rng)];
        const std::array<double, 4> c{P.t + 0.4 * (unit(rng) - 0.5), P.x[0] + 0.4 * (unit(rng) - 0.5),
                                      P.x[1] + 0.4 * (unit(rng) - 0.5),
                                      P.x[2] + 0.4 * (unit(rng) - 0.5)};
        for (int j = 0; j < 4; ++j) {
            const double w = 0.2 + 0.6 * unit(rng);
            b.lo[j] = c[j] - w;
            b.hi[j] = c[j] + w;
        }
        return b;
    };

    Csv pcsv(ctx, "outfield_projection.csv", {"pair", "states1", "states2", "max_entry"});
    double worst_entry = 0.0;
    int accepted = 0, attempts = 0;
    while (accepted < 20 && attempts < 20000) {
        ++attempts;
        const Box b1 = randomBox(), b2 = randomBox();
        // precondition: box2 disjoint from (padded f-box) + box1 in one coordinate
        bool disjoint = false;
        for (int j = 0; j < 4; ++j)
            disjoint = disjoint || b2.hi[j] < flo[j] + b1.lo[j] || b2.lo[j] > fhi[j] + b1.hi[j];
        if (!disjoint) continue;
        int n1 = 0, n2 = 0;
        for (int s = 0; s < basis.dim(); ++s) {
            n1 += b1.contains(basis.momenta[s]);
            n2 += b2.contains(basis.momenta[s]);
        }
        if (n1 == 0 || n2 == 0) continue;
        double max_entry = 0.0;
        for (int s = 0; s < basis.dim(); ++s) {
            if (!b2.contains(basis.momenta[s])) continue;
            for (int t = 0; t < basis.dim(); ++t)
                if (b1.contains(basis.momenta[t]))
                    max_entry = std::max(max_entry, std::abs(of.limit.mat(s, t)));
        }
        pcsv.row({std::to_string(accepted), std::to_string(n1), std::to_string(n2),
                  num(max_entry)});
        worst_entry = std::max(worst_entry, max_entry);
        ++accepted;
    }
    if (accepted < 20) throw std::runtime_error("outfield: could not generate 20 region pairs");
    out.push_back(verdict("outfield.disjoint_projection", worst_entry, cfg.zero_entry_tol, "<=",
                          timer.seconds()));
    return out;
}

// ---------- decay: disjoint-support slopes and the diagonal moment bound ----------

std::vector<VerdictRecord> runDecay(const ExperimentContext& ctx) {
    const ExperimentConfig& cfg = ctx.cfg;
    QuadratureSpec spec;
    const ModeGrid grid = ModeGrid::build(cfg.mass, cfg.grid_spacing, cfg.grid_cutoff);
    std::vector<VerdictRecord> out;

    Timer timer;
    {
        const HyperboloidProfile f1{HyperboloidPoint{0.0, 0.0, 0.0}, 0.4, 1.0};
        const HyperboloidProfile f2{HyperboloidPoint{std::sinh(1.5), 0.0, 0.0}, 0.4, 1.0};
        MomentumProfile chi1 = defaultChi(cfg);
        chi1.angular_center = f1.center;
        chi1.angular_radius = 2.5;
        chi1.angular_inner_radius = 2.0;
        MomentumProfile chi2 = chi1;
        chi2.angular_center = f2.center;

        const double gamma12 = supportGap(f1, f2);
        const double gamma = gamma12 / 2.0;
        std::vector<double> ratios(5);
        for (int i = 0; i < 5; ++i) ratios[i] = std::exp(-gamma + 2.0 * gamma * i / 4.0);
        const std::vector<double> products =
            logspace(cfg.lambda_lo * cfg.lambda_lo, cfg.lambda_hi * cfg.lambda_hi, 5);

        const HyperboloidScan scan =
            hyperboloidCommutatorScan(grid, chi1, f1, chi2, f2, products, ratios, gamma, spec);

        Csv csv(ctx, "decay_disjoint.csv", {"ratio", "lambda1", "lambda2", "value"});
        for (size_t i = 0; i < scan.values.size(); ++i)
            csv.row({num(scan.ratios[i / products.size()]), num(scan.lam1[i]), num(scan.lam2[i]),
                     num(scan.values[i])});

        double worst_slope = -1e9;
        for (const RateFit& fit : scan.ratio_fits) {
            if (!fit.valid) throw std::runtime_error("decay: degenerate disjoint-scan fit");
            worst_slope = std::max(worst_slope, fit.slope);
        }
        out.push_back(verdict("decay.disjoint_slope", worst_slope, -0.5, "<=", timer.seconds()));
    }

    timer.reset();
    {
        MomentumProfile chi = defaultChi(cfg);
        chi.angular_radius = 2.5;
        chi.angular_inner_radius = 2.0;
        auto chi_eval = [&chi](const FourVector& p) { return chi(p); };
        const std::vector<std::pair<HyperboloidProfile, HyperboloidProfile>> pairs = {
            {{HyperboloidPoint{0.0, 0.0, 0.0}, 0.4, 1.0}, {HyperboloidPoint{0.2, 0.0, 0.0}, 0.5, 1.0}},
            {{HyperboloidPoint{0.0, 0.0, 0.0}, 0.5, 0.8}, {HyperboloidPoint{0.1, 0.1, 0.0}, 0.4, 1.2}},
            {{HyperboloidPoint{0.1, 0.0, 0.0}, 0.6, 1.0}, {HyperboloidPoint{0.0, 0.25, 0.0}, 0.5, 0.7}},
            {{HyperboloidPoint{0.0, -0.1, 0.0}, 0.45, 1.1}, {HyperboloidPoint{-0.15, 0.0, 0.1}, 0.55, 1.0}},
            {{HyperboloidPoint{0.0, 0.0, 0.1}, 0.5, 0.9}, {HyperboloidPoint{0.05, -0.05, 0.2}, 0.45, 1.3}},
        };
        const double lam = cfg.lambda_hi;
        Csv csv(ctx, "decay_diagonal.csv", {"pair", "value", "moment", "ratio"});
        std::vector<double> ratios;
        for (size_t i = 0; i < pairs.size(); ++i) {
            const double value = std::abs(hyperboloidCommutatorValue(
                grid, chi_eval, pairs[i].first, lam, chi_eval, pairs[i].second, lam, spec));
            const double moment = absMomentIntegral(pairs[i].first, pairs[i].second);
            if (!(moment > 0.0)) throw std::runtime_error("decay: vanishing overlap moment");
            ratios.push_back(value / moment);
            csv.row({std::to_string(i), num(value), num(moment), num(ratios.back())});
        }
        // constant fitted on the first pair must dominate the remaining four
        const double c = 10.0 * ratios[0];
        double worst = 0.0;
        for (size_t i = 1; i < ratios.size(); ++i) worst = std::max(worst, ratios[i] / c);
        out.push_back(verdict("decay.moment_bound", worst, 1.0, "<=", timer.seconds()));
    }
    return out;
}

// ---------- cluster: Wick-square envelope, elementary zero, cross-check ----------

std::vector<VerdictRecord> runCluster(const ExperimentContext& ctx) {
    const ExperimentConfig& cfg = ctx.cfg;
    const ModeGrid grid = ModeGrid::build(cfg.mass, cfg.grid_spacing, cfg.grid_cutoff);
    const FockBasis basis = FockBasis::build(grid, cfg.n_max, cfg.max_dim);
    std::vector<VerdictRecord> out;

    const SpatialBump g1{{0.0, 0.0, 0.0}, 0.5, 1.0};
    const SpatialBump g2{{0.3, 0.0, 0.0}, 0.45, 1.0};
    const SpatialBump g3{{-0.2, 0.1, 0.0}, 0.4, 1.0};
    const SpatialBump g4{{0.05, -0.15, 0.25}, 0.5, 1.0};
    const FourVector y1{0.25, 0.3, 0.0, 0.0};
    const FourVector y2{0.1, 0.0, 0.3, 0.0};

    Timer timer;
    const OperatorMatrix W1 = buildWickSquare(basis, g1);
    const OperatorMatrix W2 = buildWickSquare(basis, g2);
    const OperatorMatrix W3 = buildWickSquare(basis, g3);
    const OperatorMatrix W4 = buildWickSquare(basis, g4);

    // localization radius of the translated commutator pairs
    auto pairRadius = [](const SpatialBump& a, const SpatialBump& b, const FourVector& y) {
        return std::max(a.supportRadius(), b.supportRadius()) +
               0.5 * (y.spatialNorm() + std::abs(y.t));
    };
    const double r = std::max(pairRadius(g1, g2, y1), pairRadius(g3, g4, y2));
    const double d = r;

    // scan the hypothesis region |vec y| >= |y0| + 2r; the momentum lattice
    // makes translation phases periodic with period 2 pi / spacing, so the
    // scan stays below the half period where the truncation is faithful
    const double alias_limit = M_PI / cfg.grid_spacing - 0.3;
    const std::array<double, 2> times{0.0, 0.3};
    const std::array<std::array<double, 3>, 2> dirs{{{1.0, 0.0, 0.0},
                                                     {1.0 / std::sqrt(2.0), 1.0 / std::sqrt(2.0), 0.0}}};
    const std::array<double, 6> scales{1.0, 1.2, 1.45, 1.75, 2.1, 2.5};

    Csv csv(ctx, "cluster.csv", {"y0", "yx", "yy", "yz", "separation", "value", "envelope"});
    struct Point {
        FourVector y;
        double sep, value;
    };

    // fixed pieces of K: only the translation U(-y) changes along the scan
    auto at = [&](const OperatorMatrix& A, const FourVector& z) {
        return translateOperator(basis, A, z).mat;
    };
    const Eigen::MatrixXcd B12 = bracket(at(W1, y1 * 0.5), at(W2, -(y1 * 0.5)));
    const Eigen::MatrixXcd B34 = bracket(at(W3, y2 * 0.5), at(W4, -(y2 * 0.5)));
    const Eigen::VectorXcd omega = Eigen::VectorXcd::Unit(basis.dim(), 0);
    Eigen::VectorXcd right = B34 * omega;
    right(0) = 0.0;  // vacuum-orthogonal projection
    const Eigen::VectorXcd left = (omega.adjoint() * B12).adjoint();
    auto evalK = [&](const FourVector& y) {
        Eigen::VectorXcd v = right;
        for (int s = 0; s < basis.dim(); ++s)
            v(s) *= std::polar(1.0, -minkowskiDot(basis.momenta[s], y));
        return cplx(left.dot(v));
    };

    std::vector<Point> points;
    for (double t : times)
        for (const auto& dir : dirs)
            for (double s : scales) {
                const double L = std::min((std::abs(t) + 2.0 * r) * s, alias_limit);
                const FourVector y{t, L * dir[0], L * dir[1], L * dir[2]};
                points.push_back({y, L - std::abs(t), std::abs(evalK(y))});
            }

    // envelope constant fitted on the closer two thirds, checked on the far
    // third (dominance in the tail is the substance of the claim)
    std::vector<Point> sorted = points;
    std::sort(sorted.begin(), sorted.end(),
              [](const Point& a, const Point& b) { return a.sep < b.sep; });
    const size_t ncal = 2 * sorted.size() / 3;
    double c2 = 0.0;
    for (size_t i = 0; i < ncal; ++i)
        c2 = std::max(c2, sorted[i].value * sorted[i].sep * sorted[i].sep / (d * d * d));
    if (!(c2 > 0.0)) throw std::runtime_error("cluster: calibration values all vanish");
    double worst = 0.0;
    for (size_t i = ncal; i < sorted.size(); ++i)
        worst = std::max(worst, sorted[i].value * sorted[i].sep * sorted[i].sep / (c2 * d * d * d));
    for (const Point& p : points)
        csv.row({num(p.y.t), num(p.y.x[0]), num(p.y.x[1]), num(p.y.x[2]), num(p.sep),
                 num(p.value), num(c2 * d * d * d / (p.sep * p.sep))});
    out.push_back(verdict("cluster.envelope", worst, 1.0, "<=", timer.seconds()));

    // contraction closed form at the three nearest scan points
    timer.reset();
    double worst_rel = 0.0;
    for (size_t i = 0; i < 3; ++i) {
        const FourVector& y = sorted[i].y;
        const cplx Kmat = clusterFunctionK(basis, W1, W2, W3, W4, y1, y2, y);
        const cplx Kora = clusterOracleWick(grid, g1, g2, g3, g4, y1, y2, y);
        worst_rel = std::max(worst_rel, std::abs(Kmat - Kora) / std::abs(Kmat));
    }
    out.push_back(
        verdict("cluster.cross_check", worst_rel, cfg.cross_check_rel_tol, "<=", timer.seconds()));

    // elementary fields: central commutators, K vanishes identically
    timer.reset();
    const OperatorMatrix F1 = buildSpatialFieldOperator(basis, g1);
    const OperatorMatrix F2 = buildSpatialFieldOperator(basis, g2);
    const OperatorMatrix F3 = buildSpatialFieldOperator(basis, g3);
    const OperatorMatrix F4 = buildSpatialFieldOperator(basis, g4);
    double worst_zero = 0.0;
    for (size_t i = 0; i < 3; ++i)
        worst_zero = std::max(
            worst_zero,
            std::abs(clusterFunctionK(basis, F1, F2, F3, F4, y1, y2, sorted[i].y)));
    out.push_back(
        verdict("cluster.elementary_zero", worst_zero, cfg.zero_entry_tol, "<=", timer.seconds()));
    return out;
}

// ---------- geom: random inequality sweep ----------

std::vector<VerdictRecord> runGeom(const ExperimentContext& ctx) {
    const ExperimentConfig& cfg = ctx.cfg;
    Timer timer;
    std::mt19937_64 rng(cfg.seed ^ 0xd1b54a32d192ed03ull);
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    std::normal_distribution<double> gauss(0.0, 1.0);

    auto randomPoint = [&](double nu) {
        std::array<double, 3> dir{gauss(rng), gauss(rng), gauss(rng)};
        const double n = std::sqrt(dir[0] * dir[0] + dir[1] * dir[1] + dir[2] * dir[2]);
        const double mag = nu * std::cbrt(unit(rng));
        return HyperboloidPoint{mag * dir[0] / n, mag * dir[1] / n, mag * dir[2] / n};
    };

    Csv csv(ctx, "geom.csv",
            {"sample", "kind", "nu", "lambda1", "lambda2", "lhs", "rhs"});
    long violations = 0;
    for (int i = 0; i < cfg.geom_samples; ++i) {
        const double nu = 0.2 + 2.8 * unit(rng);
        const HyperboloidPoint v1 = randomPoint(nu), v2 = randomPoint(nu);
        const double l1 = std::pow(10.0, 3.0 * unit(rng));
        const double l2 = std::pow(10.0, 3.0 * unit(rng));
        const GeomBoundsReport rep = geomBounds(v1, v2, l1, l2, nu);
        if (!rep.satisfied(cfg.inequality_slack)) {
            ++violations;
            csv.row({std::to_string(i), "bounds", num(nu), num(l1), num(l2), num(rep.ineq1_lhs),
                     num(rep.ineq1_rhs)});
        }
        const DifferenceRegion region = supportDifferenceBound(nu);
        const FourVector q = v1.asFourVector() - v2.asFourVector();
        if (!region.contains(q, cfg.inequality_slack)) {
            ++violations;
            csv.row({std::to_string(i), "difference", num(nu), num(l1), num(l2),
                     num(std::abs(q.t)), num(region.ratio_max * q.spatialNorm())});
        }
    }
    csv.row({"total", "violations", std::to_string(violations), "", "", "", ""});
    return {verdict("geom.inequality_sweep", (double)violations, 0.0, "<=", timer.seconds())};
}

// ---------- lemma: kernel-projector norm bounds ----------

std::vector<VerdictRecord> runLemma(const ExperimentContext& ctx) {
    const ExperimentConfig& cfg = ctx.cfg;
    Timer timer;
    std::mt19937_64 rng(cfg.seed ^ 0x2545f4914f6cdd1dull);
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    std::normal_distribution<double> gauss(0.0, 1.0);

    auto randomUnitary = [&](int d) {
        Eigen::MatrixXcd G(d, d);
        for (int i = 0; i < d; ++i)
            for (int j = 0; j < d; ++j) G(i, j) = cplx(gauss(rng), gauss(rng));
        return Eigen::MatrixXcd(Eigen::HouseholderQR<Eigen::MatrixXcd>(G).householderQ());
    };

    Csv csv(ctx, "lemma.csv", {"sample", "dim", "n", "kernel_dim", "lhs1", "rhs1", "lhs2", "rhs2"});
    long violations = 0;
    int done = 0, attempts = 0;
    while (done < cfg.lemma_samples && attempts < 20 * cfg.lemma_samples) {
        ++attempts;
        const int d = 2 + (int)(11 * unit(rng));
        const int n = 2 + (int)(3 * unit(rng)) % 3;
        Eigen::MatrixXcd A;
        if (unit(rng) < 0.5) {
            // generic dense draw (kernel usually trivial)
            A.resize(d, d);
            for (int i = 0; i < d; ++i)
                for (int j = 0; j < d; ++j) A(i, j) = cplx(gauss(rng), gauss(rng));
        } else {
            // planted nilpotent blocks under a random unitary change of basis
            Eigen::MatrixXcd J = Eigen::MatrixXcd::Zero(d, d);
            int pos = 0;
            while (pos < d) {
                const int block = 1 + (int)((double)n * unit(rng)) % n;
                const int sz = std::min(block, d - pos);
                if (unit(rng) < 0.7) {
                    for (int i = 0; i + 1 < sz; ++i)
                        J(pos + i, pos + i + 1) = 0.5 + unit(rng);
                } else {
                    for (int i = 0; i < sz; ++i)
                        J(pos + i, pos + i) = cplx(gauss(rng), gauss(rng));
                }
                pos += sz;
            }
            const Eigen::MatrixXcd U = randomUnitary(d);
            A = U * J * U.adjoint();
        }
        LemmaReport rep;
        try {
            rep = kernelProjectorLemmaCheck(A, n);
        } catch (const std::runtime_error&) {
            continue;  // rank decision ambiguous at this draw; take the next one
        }
        const double scale = std::max(1.0, operatorNorm(A));
        if (!rep.satisfied(1e-9 * scale * scale)) ++violations;
        csv.row({std::to_string(done), std::to_string(d), std::to_string(n),
                 std::to_string(rep.kernel_dim), num(rep.lhs1), num(rep.rhs1), num(rep.lhs2),
                 num(rep.rhs2)});
        ++done;
    }
    if (done < cfg.lemma_samples) throw std::runtime_error("lemma: too many ambiguous draws");
    std::vector<VerdictRecord> out;
    out.push_back(
        verdict("lemma.random_sweep", (double)violations, 0.0, "<=", timer.seconds()));

    // the 2x2 shift matrix saturates the first bound
    timer.reset();
    Eigen::MatrixXcd J = Eigen::MatrixXcd::Zero(2, 2);
    J(0, 1) = 1.0;
    const LemmaReport rep = kernelProjectorLemmaCheck(J, 2);
    out.push_back(verdict("lemma.jordan_equality", std::abs(rep.lhs1 - rep.rhs1),
                          cfg.equality_tol, "<=", timer.seconds()));
    return out;
}

}  // namespace

// ---------- registry and dispatch ----------

const std::vector<std::pair<std::string, std::string>>& claimRegistry() {
    static const std::vector<std::pair<std::string, std::string>> reg = {
        {"expand.remainder_rate_n0",
         "dropping all corrections leaves a remainder decaying at least one power of rho"},
        {"expand.remainder_rate_n1",
         "one correction term improves the remainder decay to two powers of rho"},
        {"expand.remainder_rate_n2",
         "two correction terms improve the remainder decay to three powers of rho"},
        {"expand.leading_coefficient",
         "the leading expansion coefficient reproduces the amplitude at the stationary point"},
        {"rates.shell_approach",
         "the rescaled hyperboloid-smeared field approaches the shell operator at rate 1/lambda "
         "on bounded-energy states"},
        {"product.residual",
         "the product of two capped fields on the vacuum converges to the profile-product "
         "value"},
        {"product.window_consistency",
         "the square-root and linear time-window scalings give the same limit within "
         "extrapolation error"},
        {"outfield.vacuum_identity",
         "the capped field on the vacuum equals the profile-weighted single-particle vector"},
        {"outfield.disjoint_projection",
         "the limit operator vanishes between energy-momentum regions not connected by a "
         "shell momentum in the velocity support"},
        {"decay.disjoint_slope",
         "commutators of hyperboloid fields with disjoint velocity supports decay in the "
         "product of scales, uniformly over the admissible ratio range"},
        {"decay.moment_bound",
         "diagonal commutator magnitudes are bounded by one constant times the overlap "
         "moment integral"},
        {"cluster.envelope",
         "the Wick-square cluster function is dominated by an inverse-square separation "
         "envelope with a single constant"},
        {"cluster.cross_check",
         "the matrix cluster function matches the contraction closed form"},
        {"cluster.elementary_zero",
         "the elementary-field cluster function vanishes identically"},
        {"geom.inequality_sweep",
         "the velocity-cone inequalities hold on random admissible samples"},
        {"lemma.random_sweep",
         "kernel-projector norms obey the commutator-norm bounds with no violations"},
        {"lemma.jordan_equality", "the 2x2 shift matrix saturates the kernel-projector bound"},
    };
    return reg;
}

const std::string& claimStatement(const std::string& id) {
    for (const auto& [key, text] : claimRegistry())
        if (key == id) return text;
    throw std::invalid_argument("unknown claim id: " + id);
}

const std::vector<std::string>& subcommandNames() {
    static const std::vector<std::string> names = {"expand", "rates",   "outfield", "decay",
                                                   "cluster", "geom",   "lemma"};
    return names;
}

std::vector<VerdictRecord> runSubcommand(const std::string& name, const ExperimentContext& ctx) {
    ctx.cfg.validate();
    if (name == "expand") return runExpand(ctx);
    if (name == "rates") return runRates(ctx);
    if (name == "outfield") return runOutfield(ctx);
    if (name == "decay") return runDecay(ctx);
    if (name == "cluster") return runCluster(ctx);
    if (name == "geom") return runGeom(ctx);
    if (name == "lemma") return runLemma(ctx);
    throw std::invalid_argument("unknown subcommand: " + name);
}

namespace {
std::string jsonEscape(const std::string& s) {
    std::string out;
    for (char c : s) {
        if (c == '"' || c == '\\') out.push_back('\\');
        out.push_back(c);
    }
    return out;
}
}  // namespace

void writeVerdicts(const std::string& path, const ExperimentConfig& cfg,
                   const std::vector<VerdictRecord>& verdicts) {
    const std::filesystem::path p(path);
    if (p.has_parent_path()) std::filesystem::create_directories(p.parent_path());
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) throw std::runtime_error("cannot open verdicts file " + path);
    out << "{\n  \"config_hash\": \"" << hex64(cfg.hash()) << "\",\n  \"verdicts\": [\n";
    for (size_t i = 0; i < verdicts.size(); ++i) {
        const VerdictRecord& v = verdicts[i];
        out << "    {\"id\": \"" << jsonEscape(v.id) << "\", \"statement\": \""
            << jsonEscape(v.statement) << "\", \"measured\": " << num(v.measured)
            << ", \"threshold\": " << num(v.threshold) << ", \"relation\": \"" << v.relation
            << "\", \"pass\": " << (v.pass ? "true" : "false")
            << ", \"runtime_s\": " << num(v.runtime_s) << "}" << (i + 1 < verdicts.size() ? "," : "")
            << "\n";
    }
    out << "  ]\n}\n";
}

}  // namespace hyplab
