/**
 * Scenario generation, trace recording, cross-checking against the
 * projection oracle, and the facet-table vs projection benchmark.
 *
 * A scenario is a randomly drawn stable plant plus a noisy closed-loop
 * trajectory: inputs and output noise are dyadic rationals in [-1, 1], so
 * the true state is always a member of every correctly computed set and
 * membership is checkable exactly.
 */
#pragma once

#include <cstdint>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include "lagset/estimator.hpp"
#include "lagset/json_io.hpp"
#include "lagset/oracle.hpp"
#include "lagset/plant.hpp"
#include "lagset/recursion.hpp"

namespace lagset {

/// Plant with all companion eigenvalues strictly inside the unit circle,
/// drawn from rational roots (optionally complex pairs). Numerator is
/// rejected until coprime with the denominator.
PlantModel<Rational> random_stable_plant(int order, std::mt19937_64& rng);

/// Dyadic noise sample in [-1, 1] with denominator 1024.
template <class S>
S noise_sample(std::mt19937_64& rng) {
    std::uniform_int_distribution<int> q(-1024, 1024);
    return S(q(rng)) / S(1024);
}

template <class S>
struct Scenario {
    PlantModel<S> plant;
    Vec<S> x0;
    std::vector<S> inputs;        // u_k, |u| <= 1
    std::vector<S> measurements;  // z_k = <C, x_k> + w_k, |w| <= 1
    std::vector<Vec<S>> states;   // x_0 .. x_K
};

/// Roll out a closed trajectory of the plant under random admissible
/// inputs and noise. Both the inputs and the resulting measurements are
/// recorded so estimator runs can be replayed deterministically.
template <class S>
Scenario<S> make_scenario(const PlantModel<S>& plant, int steps, std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    PrimalRealization<S> pr = primal_realization(plant);
    Scenario<S> sc;
    sc.plant = plant;
    sc.x0 = Vec<S>::Zero(plant.m);
    Vec<S> x = sc.x0;
    sc.states.push_back(x);
    for (int k = 0; k < steps; ++k) {
        S w = noise_sample<S>(rng);
        sc.measurements.push_back(S(pr.C.dot(x) + w));
        S u = noise_sample<S>(rng);
        sc.inputs.push_back(u);
        x = pr.A * x + pr.B * u;
        sc.states.push_back(x);
    }
    return sc;
}

/// Wrap an externally supplied measurement sequence as a scenario. No
/// trajectory is recorded, so runs over it skip the true-state containment
/// check; every other invariant is still enforced.
template <class S>
Scenario<S> replay_scenario(const PlantModel<S>& plant, std::vector<S> measurements) {
    Scenario<S> sc;
    sc.plant = plant;
    sc.x0 = Vec<S>::Zero(plant.m);
    sc.measurements = std::move(measurements);
    return sc;
}

/// Measurement list from JSON: a plain array, or an object holding one
/// under "measurements". Entries may be scalar strings ("-3/2", "0.25")
/// or JSON numbers.
template <class S>
std::vector<S> measurements_from_json(const Json& j) {
    const Json& arr = j.is_object() ? j.at("measurements") : j;
    if (!arr.is_array() || arr.empty())
        throw Error("measurements: expected a non-empty JSON array");
    std::vector<S> z;
    z.reserve(arr.size());
    for (const auto& e : arr)
        z.push_back(parse_scalar<S>(e.is_string() ? e.get<std::string>() : e.dump()));
    return z;
}

/// Run the estimator over a scenario, verifying that the true state stays
/// inside every computed set, and return the per-step JSON trace.
template <class S>
Json simulate(const Scenario<S>& sc, StepMode mode) {
    Estimator<S> est(sc.plant, sc.x0, mode);
    Json trace;
    trace["plant"] = plant_json<S>(sc.plant);
    trace["mode"] = mode_name(mode);
    trace["backend"] = ScalarOps<S>::backend_name();
    trace["steps"] = Json::array();
    const int K = static_cast<int>(sc.measurements.size());
    for (int k = 0; k < K; ++k) {
        est.observe(sc.measurements[k]);
        if (static_cast<int>(sc.states.size()) > k + 1) {
            // the set after observing z_k holds x_k (then-propagate modes: x_{k+1})
            const Vec<S>& truth =
                mode == StepMode::PropagateThenUpdate ? sc.states[k] : sc.states[k + 1];
            if (!est.contains(truth)) throw ContainmentViolation(k);
        }
        Json entry;
        entry["k"] = k;
        entry["z"] = scalar_str<S>(sc.measurements[k]);
        entry["backing"] = est.backing_name();
        if (est.backing() == Estimator<S>::Backing::Facets) {
            entry["set"] = polytope_json<S>(est.polytope());
        } else {
            Mat<S> P = est.points();
            Json pts = Json::array();
            for (int c = 0; c < P.cols(); ++c) pts.push_back(vec_json<S>(P.col(c)));
            entry["points"] = std::move(pts);
        }
        if (est.last_report()) entry["report"] = report_json(*est.last_report());
        trace["steps"].push_back(std::move(entry));
    }
    return trace;
}

// ---------------------------------------------------------------------------
// verification runs (exact backend)

struct VerifyOutcome {
    bool ok = true;
    int steps_done = 0;
    int alignment_pairs = 0;
    int alignment_points = 0;
    std::vector<std::string> failures;
};

/// Replay one scenario in both step orders against the projection oracle:
/// per measurement, both pipelines must agree set-for-set, the two orders
/// must satisfy their cut/propagate interleaving, the combinatorial step
/// reports must satisfy the growth bounds, every polytope must validate,
/// and sampled vertex/facet pairs must pass the alignment check.
VerifyOutcome verify_scenario(const Scenario<Rational>& sc);

// ---------------------------------------------------------------------------
// benchmark (facet table vs projection + redundancy elimination)

struct BenchRecord {
    int order = 0;
    int k = 0;
    int n_f = 0;    // facets entering the step
    double t_fv = 0.0;
    double t_fm = 0.0;   // censored records carry 0
    bool censored = false;  // projection aborted by the row guard
    bool equal = false;     // facet rows agree with the oracle rows
};

struct BenchOptions {
    int order = 3;
    int steps = 12;
    int repeats = 3;
    std::uint64_t seed = 1;
    std::size_t fm_row_guard = kFmRowGuard;
};

std::vector<BenchRecord> bench_run(const BenchOptions& opt);

std::string bench_csv(const std::vector<BenchRecord>& records);

// ---------------------------------------------------------------------------
// worked examples (printed walkthroughs)

/// Known names: "fig1", "square", "diamond". Throws UnknownExample.
void run_example(const std::string& name, std::ostream& os);

}  // namespace lagset
