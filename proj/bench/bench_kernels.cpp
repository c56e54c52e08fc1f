// Serial reference vs OpenMP kernels on desk-scale presets.
#include <benchmark/benchmark.h>

#include <random>

#include "qcrypt/cipher.hpp"

using namespace qcrypt;

namespace {

struct Fixture {
  SchemePlan plan;
  KeyFile key;
  MultiImageState state;
  kernels::ScrambleSpec scramble;
  kernels::DiffusionSpec diffusion;

  explicit Fixture(const std::string& name) : plan(preset(name)) {
    std::mt19937_64 rng(7);
    key = generate_key(plan, {}, rng);
    const AxisLayout& l = plan.layout;
    std::vector<Raster> images;
    std::uniform_int_distribution<int> sample(0, (1 << l.sample_depth()) - 1);
    for (std::uint64_t i = 0; i < l.capacity(); ++i) {
      Raster r(l.side(), l.side(), l.channels, l.sample_depth());
      for (auto& s : r.samples) s = static_cast<std::uint16_t>(sample(rng));
      images.push_back(std::move(r));
    }
    state = pack(images, l);
    key.seeds = plaintext_seeds(plan, state);
    key.plaintext_count = images.size();
    scramble = scramble_spec(plan, key, 0);
    diffusion = diffusion_spec(plan, key);
  }
};

Fixture& fixture(int which) {
  static Fixture ququart("ququart"), monster("scheme7"), mixed("scheme2");
  return which == 0 ? ququart : which == 1 ? monster : mixed;
}

void BM_Scramble(benchmark::State& st, Backend backend) {
  auto& f = fixture(static_cast<int>(st.range(0)));
  std::vector<std::uint8_t> out(f.state.cells.size());
  for (auto _ : st) {
    if (backend == Backend::serial) kernels::scramble_serial(f.plan.layout, f.state.cells, out, f.scramble, false);
    else kernels::scramble_omp(f.plan.layout, f.state.cells, out, f.scramble, false);
    benchmark::DoNotOptimize(out.data());
  }
  st.SetItemsProcessed(static_cast<std::int64_t>(st.iterations() * f.plan.layout.address_count()));
}

void BM_Diffuse(benchmark::State& st, Backend backend) {
  auto& f = fixture(static_cast<int>(st.range(0)));
  auto cells = f.state.cells;
  for (auto _ : st) {
    if (backend == Backend::serial) kernels::diffuse_serial(f.plan.layout, cells, f.diffusion, false);
    else kernels::diffuse_omp(f.plan.layout, cells, f.diffusion, false);
    benchmark::DoNotOptimize(cells.data());
  }
  st.SetItemsProcessed(static_cast<std::int64_t>(st.iterations() * f.plan.layout.address_count()));
}

void BM_KeyTable(benchmark::State& st, Backend backend) {
  auto& f = fixture(static_cast<int>(st.range(0)));
  for (auto _ : st) benchmark::DoNotOptimize(diffusion_spec(f.plan, f.key, backend).words.data());
}

}  // namespace

// 0 = ququart, 1 = scheme7, 2 = scheme2
BENCHMARK_CAPTURE(BM_Scramble, serial, Backend::serial)->DenseRange(0, 2)->Unit(benchmark::kMillisecond);
BENCHMARK_CAPTURE(BM_Scramble, omp, Backend::omp)->DenseRange(0, 2)->Unit(benchmark::kMillisecond);
BENCHMARK_CAPTURE(BM_Diffuse, serial, Backend::serial)->DenseRange(0, 2)->Unit(benchmark::kMillisecond);
BENCHMARK_CAPTURE(BM_Diffuse, omp, Backend::omp)->DenseRange(0, 2)->Unit(benchmark::kMillisecond);
BENCHMARK_CAPTURE(BM_KeyTable, serial, Backend::serial)->DenseRange(0, 2)->Unit(benchmark::kMillisecond);
BENCHMARK_CAPTURE(BM_KeyTable, omp, Backend::omp)->DenseRange(0, 2)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
