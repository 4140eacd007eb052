#include <bobtail/common/rng.hpp>
#include <bobtail/protocol/assembly.hpp>
#include <bobtail/protocol/serialize.hpp>
#include <bobtail/stats/gamma.hpp>
#include <bobtail/stats/sampling.hpp>

#include <benchmark/benchmark.h>

namespace {

using namespace bobtail;

void BM_GammaQuantile(benchmark::State& state)
{
    const int k = static_cast<int>(state.range(0));
    double p = 0.5;
    for (auto _ : state) {
        benchmark::DoNotOptimize(stats::gamma_quantile(p, k, 1.0));
        p = p < 0.999 ? p + 0.001 : 0.001;
    }
}
BENCHMARK(BM_GammaQuantile)->Arg(1)->Arg(10)->Arg(40)->Arg(200);

void BM_OrderStats(benchmark::State& state)
{
    const auto params = stats::MiningParams::make(static_cast<int>(state.range(0)));
    Rng rng(1);
    for (auto _ : state)
        benchmark::DoNotOptimize(stats::sample_order_stats(params, rng).w_k());
    state.SetItemsProcessed(state.iterations() * state.range(0));
}
BENCHMARK(BM_OrderStats)->Arg(1)->Arg(40);

void BM_BlockTime(benchmark::State& state)
{
    const int k = static_cast<int>(state.range(0));
    Rng rng(2);
    for (auto _ : state)
        benchmark::DoNotOptimize(stats::sample_block_time(k, 1.0, 0.4, rng));
}
BENCHMARK(BM_BlockTime)->Arg(1)->Arg(40);

// Candidate pools shaped like the intra-block engine's: ascending values,
// two reward classes, uniform receipt times.
std::vector<protocol::SelectionCandidate> pool(std::size_t n, Rng& rng, std::uint64_t& last)
{
    std::vector<protocol::SelectionCandidate> c;
    last = 0;
    for (std::size_t i = 0; i < n; ++i) {
        last += 1 + rng() % 100;
        c.push_back({protocol::Uint256{last}, rng() % 2 ? 2 : 0, uniform01(rng)});
    }
    return c;
}

void BM_SelectPackage(benchmark::State& state)
{
    const auto k = static_cast<int>(state.range(0));
    Rng rng(3);
    std::uint64_t last = 0;
    const auto c = pool(static_cast<std::size_t>(3 * k), rng, last);
    const protocol::Uint256 target{last / 2};
    for (auto _ : state)
        benchmark::DoNotOptimize(protocol::select_package_limited(c, k, target, 50000));
}
BENCHMARK(BM_SelectPackage)->Arg(5)->Arg(10)->Arg(40)->Unit(benchmark::kMicrosecond);

void BM_ProofValue(benchmark::State& state)
{
    protocol::ProofSet p{protocol::Uint256{1}, protocol::Uint256{2}, {protocol::Uint256{3}}, protocol::Uint256{4},
                         protocol::Uint256{5}};
    for (auto _ : state) {
        p.nonce_commitment += protocol::Uint256{1};
        benchmark::DoNotOptimize(protocol::proof_value(p));
    }
}
BENCHMARK(BM_ProofValue);

} // namespace

BENCHMARK_MAIN();
