#include <benchmark/benchmark.h>

#include "mandel/lamination.hpp"
#include "mandel/plane.hpp"
#include "mandel/surgery.hpp"

namespace {

using namespace mandel;

std::array<Angle, 8> fig2_angles() {
    return {Angle::parse("11/56"),   Angle::parse("199/1008"), Angle::parse("103/504"),
            Angle::parse("23/112"),  Angle::parse("29/112"),   Angle::parse("131/504"),
            Angle::parse("269/1008"), Angle::parse("15/56")};
}

void BM_ValidateFig2(benchmark::State& state) {
    auto theta = fig2_angles();
    for (auto _ : state) {
        Validation v = inspect_config(theta);
        benchmark::DoNotOptimize(v.ok());
    }
}
BENCHMARK(BM_ValidateFig2);

void BM_ConjugacyImage(benchmark::State& state) {
    EdgeConfig cfg = validate_config(fig2_angles());
    PiecewiseDoublingMap g = build_forward_map(cfg);
    Angle t(static_cast<long long>(state.range(0)), 9973);   // odd prime denominator
    for (auto _ : state) {
        Angle image = conjugacy_image(g, t);
        benchmark::DoNotOptimize(image.num());
    }
}
BENCHMARK(BM_ConjugacyImage)->Arg(1)->Arg(1997)->Arg(2039);

void BM_BuildLamination(benchmark::State& state) {
    for (auto _ : state) {
        Lamination lam = build_lamination(static_cast<std::uint64_t>(state.range(0)));
        benchmark::DoNotOptimize(lam.leaves.size());
    }
}
BENCHMARK(BM_BuildLamination)->Arg(8)->Arg(12);

void BM_TraceParameterRay(benchmark::State& state) {
    Angle theta = Angle::parse("11/56");
    SolverSettings s;
    for (auto _ : state) {
        RayPolyline ray = trace_parameter_ray(theta, s);
        benchmark::DoNotOptimize(ray.points.size());
    }
}
BENCHMARK(BM_TraceParameterRay);

void BM_EscapeData(benchmark::State& state) {
    Viewport vp{Complex(-0.14, 1.03), 0.25};
    for (auto _ : state) {
        ImageBuffer img = escape_data(PlaneKind::mandelbrot, Complex{}, vp, 160, 120, 500);
        benchmark::DoNotOptimize(img.data.back());
    }
}
BENCHMARK(BM_EscapeData);

} // namespace

int main(int argc, char** argv) {
    benchmark::Initialize(&argc, argv);
    benchmark::RunSpecifiedBenchmarks();
    return 0;
}
