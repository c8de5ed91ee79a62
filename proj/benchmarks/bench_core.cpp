#include <benchmark/benchmark.h>

#include "hyplab/asymptotic.hpp"
#include "hyplab/fock.hpp"
#include "hyplab/profiles.hpp"
#include "hyplab/wavepacket.hpp"

using namespace hyplab;

namespace {

const FockBasis& benchBasis() {
    static const FockBasis basis = FockBasis::build(ModeGrid::build(1.0, 0.5, 1.0), 2, 5000);
    return basis;
}

void BM_OscillatoryAmplitude(benchmark::State& state) {
    const double rho = (double)state.range(0);
    const HyperboloidProfile f{HyperboloidPoint{0.0, 0.0, 0.0}, 1.2, 1.0};
    const WavepacketAmplitude amp = f.asAmplitude();
    const HyperboloidPoint v{0.2, 0.1, 0.0};
    QuadratureSpec spec;
    spec.max_subdivisions = 40000;
    for (auto _ : state) {
        benchmark::DoNotOptimize(integrateWavepacket(amp, rho, v, spec));
    }
}
BENCHMARK(BM_OscillatoryAmplitude)->Arg(30)->Arg(300)->Arg(3000);

void BM_BuildWickSquare(benchmark::State& state) {
    const FockBasis& basis = benchBasis();
    const SpatialBump g{{0.1, 0.0, -0.2}, 0.8, 1.0};
    for (auto _ : state) {
        benchmark::DoNotOptimize(buildWickSquare(basis, g));
    }
}
BENCHMARK(BM_BuildWickSquare);

void BM_HyperboloidSmear(benchmark::State& state) {
    const FockBasis& basis = benchBasis();
    const OperatorMatrix A = baseField(basis);
    MomentumProfile chi;
    chi.angular_inner_radius = 1.3;
    chi.angular_radius = 1.9;
    chi.validate();
    const HyperboloidProfile f{HyperboloidPoint{0.0, 0.0, 0.0}, 1.2, 1.0};
    QuadratureSpec spec;
    auto chi_eval = [&chi](const FourVector& p) { return chi(p); };
    const double lambda = (double)state.range(0);
    for (auto _ : state) {
        benchmark::DoNotOptimize(hyperboloidSmear(basis, A, chi_eval, f, lambda, spec));
    }
}
BENCHMARK(BM_HyperboloidSmear)->Arg(30)->Arg(300);

void BM_OperatorNorm(benchmark::State& state) {
    const FockBasis& basis = benchBasis();
    const OperatorMatrix A = baseField(basis);
    for (auto _ : state) {
        benchmark::DoNotOptimize(operatorNorm(A.mat));
    }
}
BENCHMARK(BM_OperatorNorm);

}  // namespace

BENCHMARK_MAIN();
