// Serial reference vs OpenMP kernel on the t=3 instance.
// Thread count follows SCHEME_FORGE_THREADS / OMP_NUM_THREADS. The serial
// axiom (iii) check is the naive per-line scan, so that pair also measures
// the per-point formulation, not only threading.

#include <benchmark/benchmark.h>

#include "scheme_forge/geometry.hpp"
#include "scheme_forge/kernels.hpp"
#include "scheme_forge/relation_scheme.hpp"

using namespace scheme_forge;

namespace {

struct Fixture {
    GQ gq = build_hermitian_gq();
    RelationScheme scheme = scheme_from_hemisystem(gq, find_hemisystem(gq));
    std::vector<std::optional<kernels::CompiledSystem>> systems = kernels::compile_systems(closed_form_parameters(3));
    std::vector<kernels::Triple> triples = kernels::sample_triples(scheme, 20000, 1);
};

const Fixture& fixture() {
    static const Fixture f;
    return f;
}

void BM_axiom3_serial(benchmark::State& st) {
    const auto& f = fixture();
    for (auto _ : st)
        benchmark::DoNotOptimize(kernels::serial::gq_axiom3_violation(f.gq));
}

void BM_axiom3_omp(benchmark::State& st) {
    const auto& f = fixture();
    for (auto _ : st)
        benchmark::DoNotOptimize(kernels::gq_axiom3_violation(f.gq));
}

void BM_count_scheme_serial(benchmark::State& st) {
    const auto& f = fixture();
    for (auto _ : st)
        benchmark::DoNotOptimize(kernels::serial::count_scheme(f.scheme));
}

void BM_count_scheme_omp(benchmark::State& st) {
    const auto& f = fixture();
    for (auto _ : st)
        benchmark::DoNotOptimize(kernels::count_scheme(f.scheme));
}

void BM_sweep_serial(benchmark::State& st) {
    const auto& f = fixture();
    for (auto _ : st)
        benchmark::DoNotOptimize(kernels::serial::sweep_triples(f.scheme, f.systems, f.triples));
    st.SetItemsProcessed(static_cast<std::int64_t>(st.iterations() * f.triples.size()));
}

void BM_sweep_omp(benchmark::State& st) {
    const auto& f = fixture();
    for (auto _ : st)
        benchmark::DoNotOptimize(kernels::sweep_triples(f.scheme, f.systems, f.triples));
    st.SetItemsProcessed(static_cast<std::int64_t>(st.iterations() * f.triples.size()));
}

} // namespace

BENCHMARK(BM_axiom3_serial)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_axiom3_omp)->Unit(benchmark::kMillisecond)->UseRealTime();
BENCHMARK(BM_count_scheme_serial)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_count_scheme_omp)->Unit(benchmark::kMillisecond)->UseRealTime();
BENCHMARK(BM_sweep_serial)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_sweep_omp)->Unit(benchmark::kMillisecond)->UseRealTime();

int main(int argc, char** argv) {
    configure_threads_from_env();
    benchmark::Initialize(&argc, argv);
    if (benchmark::ReportUnrecognizedArguments(argc, argv))
        return 1;
    benchmark::RunSpecifiedBenchmarks();
    benchmark::Shutdown();
    return 0;
}
