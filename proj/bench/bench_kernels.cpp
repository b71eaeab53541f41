// Parallel kernels against their serial references. Run with
//   ./bench_kernels --benchmark_counters_tabular=true
// to compare; the speedup is the serial/parallel time ratio per kernel.

#include <benchmark/benchmark.h>

#include <vector>

#include "mswave/chain.hpp"
#include "mswave/foldy.hpp"
#include "mswave/packet.hpp"
#include "mswave/slab.hpp"

using namespace mswave;

namespace {

struct FieldSetup {
    std::vector<foldy::Scatterer> scatterers;
    foldy::PlaneWave incident{{1.7, 0.0, 0.0}};
    foldy::ExcitingFields xi;
    std::vector<Vec3> points;
    double k = 1.7;

    FieldSetup() {
        for (int i = 0; i < 48; ++i) {
            scatterers.push_back({{0.37 * i, 0.0, 0.0},
                                  foldy::ConstantAmplitude{Complex{0.05, 0.02}},
                                  greens::make_kind(1, greens::Variant::Outgoing)});
        }
        xi = foldy::solve_exciting_fields(scatterers, incident, k);
        for (int i = 0; i < 20000; ++i) {
            points.push_back({-5.0 + 0.0015 * i, 0.0, 0.0});
        }
    }
};

const FieldSetup& field_setup() {
    static const FieldSetup s;
    return s;
}

void total_field_parallel(benchmark::State& state) {
    const auto& s = field_setup();
    for (auto _ : state) {
        benchmark::DoNotOptimize(
            foldy::total_field_grid(s.points, s.scatterers, s.xi, s.incident, s.k));
    }
}
BENCHMARK(total_field_parallel)->Unit(benchmark::kMillisecond);

void total_field_serial(benchmark::State& state) {
    const auto& s = field_setup();
    for (auto _ : state) {
        benchmark::DoNotOptimize(
            foldy::total_field_grid_serial(s.points, s.scatterers, s.xi, s.incident, s.k));
    }
}
BENCHMARK(total_field_serial)->Unit(benchmark::kMillisecond);

void scan_parallel(benchmark::State& state) {
    const slab::ScanRequest req{-3.0, 3.0, 1e-5, 0.95, 1.94};
    for (auto _ : state) {
        benchmark::DoNotOptimize(slab::scan_transmittance(req));
    }
}
BENCHMARK(scan_parallel)->Unit(benchmark::kMillisecond);

void scan_serial(benchmark::State& state) {
    const slab::ScanRequest req{-3.0, 3.0, 1e-5, 0.95, 1.94};
    for (auto _ : state) {
        benchmark::DoNotOptimize(slab::scan_transmittance_serial(req));
    }
}
BENCHMARK(scan_serial)->Unit(benchmark::kMillisecond);

void synthesize_parallel(benchmark::State& state) {
    packet::PacketSpec spec;
    spec.g = packet::GaussianSpectrum{2.0, 0.4};
    std::vector<double> pts;
    for (int i = 0; i < 800; ++i) {
        pts.push_back(-8.0 + 0.02 * i);
    }
    for (auto _ : state) {
        benchmark::DoNotOptimize(packet::synthesize_grid(spec, pts, 0.9));
    }
}
BENCHMARK(synthesize_parallel)->Unit(benchmark::kMillisecond);

void synthesize_serial(benchmark::State& state) {
    packet::PacketSpec spec;
    spec.g = packet::GaussianSpectrum{2.0, 0.4};
    std::vector<double> pts;
    for (int i = 0; i < 800; ++i) {
        pts.push_back(-8.0 + 0.02 * i);
    }
    for (auto _ : state) {
        benchmark::DoNotOptimize(packet::synthesize_grid_serial(spec, pts, 0.9));
    }
}
BENCHMARK(synthesize_serial)->Unit(benchmark::kMillisecond);

void design_parallel(benchmark::State& state) {
    std::vector<chain::PartialRT> free3(3);
    chain::DesignOptions opts;
    opts.seed = 11;
    opts.starts = 32;
    opts.parallel = true;
    for (auto _ : state) {
        benchmark::DoNotOptimize(chain::design_search(free3, opts));
    }
}
BENCHMARK(design_parallel)->Unit(benchmark::kMillisecond);

void design_serial(benchmark::State& state) {
    std::vector<chain::PartialRT> free3(3);
    chain::DesignOptions opts;
    opts.seed = 11;
    opts.starts = 32;
    opts.parallel = false;
    for (auto _ : state) {
        benchmark::DoNotOptimize(chain::design_search(free3, opts));
    }
}
BENCHMARK(design_serial)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
