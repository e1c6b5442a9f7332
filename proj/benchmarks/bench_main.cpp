#include <benchmark/benchmark.h>

#include <cstdint>
#include <random>
#include <set>
#include <vector>

#include "z4ap/bounds.hpp"
#include "z4ap/cosets.hpp"
#include "z4ap/group.hpp"
#include "z4ap/lemma.hpp"
#include "z4ap/linalg.hpp"
#include "z4ap/poly.hpp"
#include "z4ap/search.hpp"

using namespace z4ap;

namespace {

PointSet random_set(int n, std::size_t target, std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    PointSet s(n);
    while (s.size() < target) {
        std::uint64_t bits = 0;
        for (int i = 0; i < n; ++i) bits |= (rng() & 3) << (2 * i);
        s.insert(GroupVector(n, bits));
    }
    return s;
}

void BM_Gf2Rank(benchmark::State& state) {
    std::size_t rows = std::size_t(state.range(0));
    std::mt19937_64 rng(7);
    Gf2Matrix m(rows, 2 * rows);
    for (std::size_t r = 0; r < rows; ++r)
        for (auto& word : m.row(r)) word = rng();
    for (auto _ : state) benchmark::DoNotOptimize(m.rank());
}
BENCHMARK(BM_Gf2Rank)->Arg(64)->Arg(256)->Arg(1024);

void BM_ProgressionCheck(benchmark::State& state) {
    int n = int(state.range(0));
    PointSet base = exact_r3(2).witness;
    PointSet s = base;
    for (int k = 2; 2 * k <= n; ++k) s = tensor_power(base, k);
    for (auto _ : state) benchmark::DoNotOptimize(is_progression_free(s));
    state.SetLabel(std::to_string(s.size()) + " pts");
}
BENCHMARK(BM_ProgressionCheck)->Arg(4)->Arg(6)->Arg(8);

void BM_VanishingPoly(benchmark::State& state) {
    std::mt19937_64 rng(11);
    std::set<std::uint32_t> masks;
    while (masks.size() < std::size_t(state.range(0)))
        masks.insert(std::uint32_t(rng()) & 0x3ff);
    std::vector<std::uint32_t> pts(masks.begin(), masks.end());
    for (auto _ : state) benchmark::DoNotOptimize(vanishing_poly(pts, 10, 3));
}
BENCHMARK(BM_VanishingPoly)->Arg(64)->Arg(160);

void BM_BuildCertificate(benchmark::State& state) {
    int threads = int(state.range(0));
    std::mt19937_64 rng(13);
    int n = 12;
    std::vector<std::pair<Monomial, int>> terms;
    for (Monomial m : monomials_up_to(n, 2))
        terms.emplace_back(m, int(rng() & 1));
    terms.emplace_back(0, 1);
    MultilinearPoly p = MultilinearPoly::from_terms(n, 2, std::move(terms));
    std::vector<std::uint32_t> masks;
    for (int i = 0; i < 128; ++i)
        masks.push_back(std::uint32_t(rng()) & ((1u << n) - 1));
    FpPointSet pts = FpPointSet::from_masks(n, masks);
    for (auto _ : state)
        benchmark::DoNotOptimize(build_certificate(p, pts, 2, threads));
}
BENCHMARK(BM_BuildCertificate)->Arg(1)->Arg(4)->MeasureProcessCPUTime()
    ->UseRealTime();

void BM_RichCosetReport(benchmark::State& state) {
    PointSet s = random_set(int(state.range(0)), 300, 17);
    Rational eps(1, 5);
    for (auto _ : state)
        benchmark::DoNotOptimize(rich_coset_report(s, eps));
}
BENCHMARK(BM_RichCosetReport)->Arg(8)->Arg(12);

void BM_ComputeGamma(benchmark::State& state) {
    for (auto _ : state) benchmark::DoNotOptimize(compute_gamma(1e-12));
}
BENCHMARK(BM_ComputeGamma);

void BM_ExactSearch(benchmark::State& state) {
    for (auto _ : state) benchmark::DoNotOptimize(exact_r3(2));
}
BENCHMARK(BM_ExactSearch);

}  // namespace

BENCHMARK_MAIN();
