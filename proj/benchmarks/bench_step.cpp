// Microbenchmarks for one recursion step: the incidence-table update on its
// own, the same update on sets grown by a measurement run, and the
// Fourier-Motzkin oracle it is checked against (small sizes only; the oracle
// is the part that blows up).

#include <benchmark/benchmark.h>

#include <map>
#include <random>
#include <utility>

#include "lagset/estimator.hpp"
#include "lagset/harness.hpp"
#include "lagset/oracle.hpp"
#include "lagset/recursion.hpp"

using namespace lagset;
using S = Rational;

namespace {

Polytope<S> unit_box(int m) {
    Mat<S> A(2 * m, m);
    Vec<S> b = Vec<S>::Ones(2 * m);
    A.setZero();
    for (int i = 0; i < m; ++i) {
        A(2 * i, i) = S(1);
        A(2 * i + 1, i) = S(-1);
    }
    return from_halfspaces<S>(A, b);
}

struct Grown {
    PlantModel<S> plant;
    Polytope<S> set;  // estimate entering step k
    S z;              // measurement consumed at step k
};

/// Replay the order-3 seed-1 measurement run up to step k and hand back the
/// set the estimator holds there. Memoized: growing to k = 10 costs seconds.
const Grown& grown_state(int k) {
    static std::map<int, Grown> cache;
    auto it = cache.find(k);
    if (it != cache.end()) return it->second;

    std::mt19937_64 rng(1);
    PlantModel<S> plant = random_stable_plant(3, rng);
    Scenario<S> sc = make_scenario<S>(plant, k + 1, 2);
    Estimator<S> est(plant, sc.x0, StepMode::PropagateThenUpdate);
    for (int j = 0; j < k; ++j) est.observe(sc.measurements[static_cast<std::size_t>(j)]);
    Grown g{plant, est.polytope(), sc.measurements[static_cast<std::size_t>(k)]};
    return cache.emplace(k, std::move(g)).first->second;
}

void BM_propagate_box(benchmark::State& state) {
    const int m = static_cast<int>(state.range(0));
    // n = t^m, d = 1 + t^m / 2: a minimal stable order-m plant
    std::vector<S> nv(static_cast<std::size_t>(m) + 1, S(0));
    std::vector<S> dv(static_cast<std::size_t>(m) + 1, S(0));
    nv.back() = S(1);
    dv.front() = S(1);
    dv.back() = S(1, 2);
    PlantModel<S> plant = parse_plant<S>(nv, dv);
    Polytope<S> box = unit_box(m);
    for (auto _ : state) {
        auto out = lag_propagate(box, plant);
        benchmark::DoNotOptimize(out.first.V);
    }
    state.counters["n_f"] = box.n_facets();
}
BENCHMARK(BM_propagate_box)->Arg(2)->Arg(3)->Arg(4);

void BM_step_grown(benchmark::State& state) {
    const Grown& g = grown_state(static_cast<int>(state.range(0)));
    for (auto _ : state) {
        auto out = step(g.set, g.z, g.plant, StepMode::PropagateThenUpdate);
        benchmark::DoNotOptimize(out.first.V);
    }
    state.counters["n_f"] = g.set.n_facets();
}
BENCHMARK(BM_step_grown)->Arg(4)->Arg(6)->Arg(8)->Arg(10)->Unit(benchmark::kMillisecond);

void BM_oracle_grown(benchmark::State& state) {
    const Grown& g = grown_state(static_cast<int>(state.range(0)));
    HRep<S> H = make_hrep<S>(g.set.F, g.set.h);
    for (auto _ : state) {
        auto out = oracle_step<S>(H, g.z, g.plant, StepMode::PropagateThenUpdate);
        benchmark::DoNotOptimize(out.H.b);
    }
    state.counters["n_f"] = g.set.n_facets();
}
BENCHMARK(BM_oracle_grown)->Arg(4)->Arg(6)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
