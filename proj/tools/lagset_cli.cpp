/**
 * Command-line front end: simulate (JSON trace), verify (cross-check
 * against the projection oracle), bench (facet table vs projection CSV),
 * example (printed walkthroughs).
 *
 * Exit codes: 0 success, 1 mismatch or internal failure, 2 infeasible or
 * degenerate measurement, 3 usage.
 */
#include <fstream>
#include <iostream>
#include <string>

#include <CLI11.hpp>

#include "lagset/harness.hpp"

namespace {

using namespace lagset;

Json read_json(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw Error("cannot open " + path);
    return Json::parse(in);
}

void write_text(const std::string& path, const std::string& text) {
    if (path.empty()) {
        std::cout << text;
        return;
    }
    std::ofstream out(path);
    if (!out) throw Error("cannot open " + path);
    out << text;
}

template <class S>
PlantModel<S> load_or_random(const std::string& plant_file, int order, std::uint64_t seed) {
    if (!plant_file.empty()) return plant_from_json<S>(read_json(plant_file));
    std::mt19937_64 rng(seed);
    PlantModel<Rational> exact = random_stable_plant(order, rng);
    if constexpr (std::is_same_v<S, Rational>)
        return exact;
    else
        return plant_from_json<S>(plant_json<Rational>(exact));
}

template <class S>
Scenario<S> load_scenario(const std::string& plant_file, const std::string& z_file, int order, int steps,
                          std::uint64_t seed) {
    PlantModel<S> plant = load_or_random<S>(plant_file, order, seed);
    if (!z_file.empty())
        return replay_scenario<S>(plant, measurements_from_json<S>(read_json(z_file)));
    return make_scenario<S>(plant, steps, seed + 1);
}

template <class S>
int do_simulate(const std::string& plant_file, const std::string& z_file, int order, int steps,
                std::uint64_t seed, StepMode mode, const std::string& out_file) {
    Scenario<S> sc = load_scenario<S>(plant_file, z_file, order, steps, seed);
    Json trace = simulate<S>(sc, mode);
    write_text(out_file, trace.dump(2) + "\n");
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"set-membership state estimation for lag plants, exact on the facet table"};
    app.require_subcommand(1);

    std::string plant_file, z_file, out_file, csv_file, example_name;
    std::string mode_s = "ptu", backend = "exact";
    int steps = 8, order = 2, repeats = 3;
    std::uint64_t seed = 1;

    auto add_plant_opts = [&](CLI::App* cmd) {
        cmd->add_option("--plant", plant_file, "plant JSON file {\"n\": [...], \"d\": [...]}");
        cmd->add_option("--order", order, "random plant order when --plant is omitted")->check(CLI::Range(1, 8));
        cmd->add_option("--steps", steps, "number of measurements")->check(CLI::PositiveNumber);
        cmd->add_option("--seed", seed, "scenario seed");
        cmd->add_option("--measurements", z_file,
                        "JSON array of measurements to replay instead of simulating (overrides --steps)");
    };

    CLI::App* sim = app.add_subcommand("simulate", "run the estimator, write a JSON trace");
    add_plant_opts(sim);
    sim->add_option("--mode", mode_s, "step order: utp (update, then propagate) or ptu")
        ->check(CLI::IsMember({"utp", "ptu"}));
    sim->add_option("--backend", backend, "scalar backend")->check(CLI::IsMember({"exact", "float"}));
    sim->add_option("--out", out_file, "trace path (stdout when omitted)");

    CLI::App* ver = app.add_subcommand("verify", "replay both step orders against the projection oracle");
    add_plant_opts(ver);

    CLI::App* ben = app.add_subcommand("bench", "time the facet table against the projection oracle");
    ben->add_option("--order", order, "plant order")->check(CLI::Range(1, 8));
    ben->add_option("--steps", steps, "number of measurements")->check(CLI::PositiveNumber);
    ben->add_option("--repeats", repeats, "timing repeats per step (median)")->check(CLI::PositiveNumber);
    ben->add_option("--seed", seed, "scenario seed");
    ben->add_option("--csv", csv_file, "CSV path (stdout when omitted)");

    CLI::App* exa = app.add_subcommand("example", "print a worked walkthrough");
    exa->add_option("name", example_name, "fig1, square, or diamond")->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 3;
    }

    try {
        if (sim->parsed()) {
            StepMode mode = parse_mode(mode_s);
            return backend == "float"
                       ? do_simulate<FloatScalar>(plant_file, z_file, order, steps, seed, mode, out_file)
                       : do_simulate<Rational>(plant_file, z_file, order, steps, seed, mode, out_file);
        }
        if (ver->parsed()) {
            Scenario<Rational> sc = load_scenario<Rational>(plant_file, z_file, order, steps, seed);
            VerifyOutcome out = verify_scenario(sc);
            std::cout << "verified " << out.steps_done << " steps, " << out.alignment_pairs
                      << " alignment pairs (" << out.alignment_points << " points): "
                      << (out.ok ? "OK" : "MISMATCH") << "\n";
            for (const auto& f : out.failures) std::cout << "  " << f << "\n";
            return out.ok ? 0 : 1;
        }
        if (ben->parsed()) {
            BenchOptions opt;
            opt.order = order;
            opt.steps = steps;
            opt.repeats = repeats;
            opt.seed = seed;
            write_text(csv_file, bench_csv(bench_run(opt)));
            return 0;
        }
        if (exa->parsed()) {
            run_example(example_name, std::cout);
            return 0;
        }
    } catch (const InfeasibleMeasurement& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const DegenerateCut& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const UnknownExample& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 3;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 3;
}
