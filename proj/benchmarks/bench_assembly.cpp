#include <benchmark/benchmark.h>

#include "npspec/geometry.hpp"
#include "npspec/nystrom.hpp"

using namespace npspec;

namespace {

std::shared_ptr<const nys::Mesh> octant_mesh(int panels) {
    static const auto cone = geom::cone_from_edges(
        {geom::Vec3(1, 0, 0), geom::Vec3(0, 1, 0), geom::Vec3(0, 0, 1)});
    return std::make_shared<nys::Mesh>(
        nys::build_mesh(cone.cross_section, panels, 10, 4));
}

} // namespace

static void BM_assemble(benchmark::State& state) {
    const auto mesh = octant_mesh(static_cast<int>(state.range(0)));
    nys::AssembleOptions opt;
    opt.with_gram = state.range(1) != 0;
    for (auto _ : state)
        benchmark::DoNotOptimize(nys::assemble(mesh, 0.0, 0.9, opt));
    state.SetItemsProcessed(state.iterations() * mesh->nodes.size() *
                            mesh->nodes.size());
}
BENCHMARK(BM_assemble)->Args({4, 0})->Args({8, 0})->Args({8, 1})->Unit(benchmark::kMillisecond);

static void BM_eigensolve(benchmark::State& state) {
    const auto mesh = octant_mesh(static_cast<int>(state.range(0)));
    nys::AssembleOptions opt;
    opt.with_gram = false;
    const auto sys = nys::assemble(mesh, 0.0, 0.9, opt);
    for (auto _ : state)
        benchmark::DoNotOptimize(nys::raw_eigenvalues(sys));
}
BENCHMARK(BM_eigensolve)->Arg(4)->Arg(8)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
