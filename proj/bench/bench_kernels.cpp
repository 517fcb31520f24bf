// Serial reference vs OpenMP kernels on a synthetic log.
#include <benchmark/benchmark.h>

#include <set>

#include "pmanon/kernels.hpp"
#include "pmanon/synthetic.hpp"

using namespace pmanon;

namespace {

struct Level {
    EncodedLog enc;
    std::vector<CandidateNode> nodes;
};

const Level& level2() {
    static const Level lv = [] {
        SyntheticOptions opt;
        opt.cases = 3000;
        Level l;
        l.enc = encode(prepare_log(synthetic_log(opt), TimestampAccuracy::hours), Perspective::AR,
                       TimestampAccuracy::hours);
        CandidateGrower g(l.enc, BkType::seq);
        auto roots = g.roots();
        l.nodes = kernels::expand_level_serial(g, roots, std::vector<char>(roots.size(), 1));
        return l;
    }();
    return lv;
}

const std::vector<std::vector<int>>& variants_of(int n) {
    static std::vector<std::vector<int>> v;
    if (v.empty()) {
        SyntheticOptions opt;
        opt.cases = 3000;
        auto enc = encode(synthetic_log(opt), Perspective::A, TimestampAccuracy::seconds);
        std::set<std::vector<int>> uniq(enc.traces.begin(), enc.traces.end());
        v.assign(uniq.begin(), uniq.end());
    }
    static std::vector<std::vector<int>> cut;
    cut.assign(v.begin(), v.begin() + std::min<std::size_t>(n, v.size()));
    return cut;
}

void BM_evaluate_serial(benchmark::State& s) {
    const auto& l = level2();
    for (auto _ : s) benchmark::DoNotOptimize(kernels::evaluate_level_serial(l.enc, l.nodes, 20, 0.5));
    s.SetItemsProcessed(s.iterations() * static_cast<long>(l.nodes.size()));
}

void BM_evaluate_parallel(benchmark::State& s) {
    const auto& l = level2();
    for (auto _ : s) benchmark::DoNotOptimize(kernels::evaluate_level_parallel(l.enc, l.nodes, 20, 0.5));
    s.SetItemsProcessed(s.iterations() * static_cast<long>(l.nodes.size()));
}

void BM_cost_matrix_serial(benchmark::State& s) {
    const auto& v = variants_of(static_cast<int>(s.range(0)));
    for (auto _ : s) benchmark::DoNotOptimize(kernels::cost_matrix_serial(v, v));
}

void BM_cost_matrix_parallel(benchmark::State& s) {
    const auto& v = variants_of(static_cast<int>(s.range(0)));
    for (auto _ : s) benchmark::DoNotOptimize(kernels::cost_matrix_parallel(v, v));
}

}  // namespace

BENCHMARK(BM_evaluate_serial)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_evaluate_parallel)->Unit(benchmark::kMillisecond)->UseRealTime();
BENCHMARK(BM_cost_matrix_serial)->Arg(200)->Arg(800)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_cost_matrix_parallel)->Arg(200)->Arg(800)->Unit(benchmark::kMillisecond)->UseRealTime();

BENCHMARK_MAIN();
