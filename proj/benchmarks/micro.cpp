// Micro-benchmarks for the pipeline hot spots: PDB parsing, isomorphism
// search, maximum clique over the modular product, and Kabsch superposition.
#include <benchmark/benchmark.h>

#include "bss/align.hpp"
#include "bss/graph_match.hpp"
#include "bss/pdb.hpp"
#include "fixtures.hpp"
#include "oracles.hpp"

namespace {

void bm_parse_pdb(benchmark::State& state) {
  fixtures::ProteinSpec spec;
  spec.seed = 1;
  spec.far_residues = static_cast<int>(state.range(0));  // bulk scales freely
  std::string text = fixtures::make_protein_pdb(spec);
  for (auto _ : state) {
    auto s = bss::parse_pdb(text, "1bmk");
    benchmark::DoNotOptimize(s);
  }
  state.SetBytesProcessed(static_cast<int64_t>(state.iterations()) *
                          static_cast<int64_t>(text.size()));
}
BENCHMARK(bm_parse_pdb)->Arg(16)->Arg(48)->Arg(96);

void bm_find_isomorphisms(benchmark::State& state) {
  int n = static_cast<int>(state.range(0));
  auto a = fixtures::ring_graph(n);
  auto b = fixtures::permuted(a, 7);
  for (auto _ : state) {
    auto isos = bss::find_isomorphisms(a, b);
    benchmark::DoNotOptimize(isos);
  }
}
BENCHMARK(bm_find_isomorphisms)->Arg(6)->Arg(10)->Arg(14);

void bm_max_clique(benchmark::State& state) {
  int n = static_cast<int>(state.range(0));
  auto a = fixtures::random_graph(11, n, 0.5, {"C"});
  auto b = fixtures::random_graph(12, n, 0.5, {"C"});
  auto product = bss::modular_product(a, b);
  for (auto _ : state) {
    auto clique = bss::max_clique(product);
    benchmark::DoNotOptimize(clique);
  }
}
BENCHMARK(bm_max_clique)->Arg(6)->Arg(8)->Arg(10);

void bm_kabsch(benchmark::State& state) {
  int n = static_cast<int>(state.range(0));
  auto p = oracles::random_cloud(21, n);
  auto q = oracles::random_cloud(22, n);
  for (auto _ : state) {
    auto s = bss::kabsch(p, q);
    benchmark::DoNotOptimize(s);
  }
}
BENCHMARK(bm_kabsch)->Arg(6)->Arg(30)->Arg(120);

}  // namespace

BENCHMARK_MAIN();
