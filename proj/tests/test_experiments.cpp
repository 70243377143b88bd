#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <sstream>

#include "ccn/experiments.hpp"
#include "ccn/rng.hpp"

using namespace ccn;

TEST_CASE("exact sweep cells match brute force on regenerated graphs") {
    SweepOptions opt;
    opt.n_grid = {8, 10};
    opt.seeds_per_n = 3;
    opt.mode = SweepMode::exact;
    opt.base_seed = 11;
    SweepResult res = run_sweep(opt);
    REQUIRE(res.cells.size() == 6);
    for (const auto& cell : res.cells) {
        CAPTURE(cell.n);
        CAPTURE(cell.index);
        CHECK(cell.seed == Rng::derive_seed(11, std::uint64_t(cell.n), std::uint64_t(cell.index)));
        CHECK(cell.status == "proved");
        CHECK(cell.lower == cell.upper);
        CHECK(cell.valid);
        // the cell's seed is the whole story: regenerate and recompute
        Rng rng(cell.seed);
        Graph g = gen_gnp(cell.n, opt.p, rng);
        CHECK(cell.chi == chi_c_bruteforce(g).k);
    }
}

TEST_CASE("heuristic sweep produces verified colorings and a sane summary") {
    SweepOptions opt;
    opt.n_grid = {16, 32};
    opt.seeds_per_n = 4;
    opt.mode = SweepMode::heuristic;
    opt.base_seed = 7;
    SweepResult res = run_sweep(opt);
    REQUIRE(res.cells.size() == 8);
    for (const auto& cell : res.cells) {
        CHECK(cell.status == "ok");
        CHECK(cell.valid);
        CHECK(cell.chi >= 1);
        CHECK(cell.chi <= cell.n);
    }
    REQUIRE(res.summary.per_n.size() == 2);
    for (const auto& row : res.summary.per_n) {
        CHECK(row.samples == 4);
        CHECK(row.min <= row.mean);
        CHECK(row.mean <= row.max);
    }
    // two distinct grid points determine the least-squares line
    REQUIRE(res.summary.fit.has_value());
    const FitResult& fit = *res.summary.fit;
    REQUIRE(fit.residuals.size() == 2);
    CHECK(fit.a * std::log2(16.0) + fit.b + fit.residuals[0] ==
          doctest::Approx(res.summary.per_n[0].mean));
    CHECK(fit.a * std::log2(32.0) + fit.b + fit.residuals[1] ==
          doctest::Approx(res.summary.per_n[1].mean));
}

TEST_CASE("sweep output is independent of the job count") {
    SweepOptions opt;
    opt.n_grid = {12, 16, 20};
    opt.seeds_per_n = 4;
    opt.mode = SweepMode::heuristic;
    opt.base_seed = 3;
    opt.jobs = 1;
    SweepResult serial = run_sweep(opt);
    opt.jobs = 4;
    SweepResult threaded = run_sweep(opt);

    std::ostringstream csv1, csv2, jl1, jl2;
    write_sweep_csv(serial, csv1);
    write_sweep_csv(threaded, csv2);
    CHECK(csv1.str() == csv2.str());
    write_sweep_jsonl(serial, jl1);
    write_sweep_jsonl(threaded, jl2);
    CHECK(jl1.str() == jl2.str());
}

TEST_CASE("sweep csv layout") {
    SweepOptions opt;
    opt.n_grid = {8};
    opt.seeds_per_n = 2;
    opt.mode = SweepMode::heuristic;
    SweepResult res = run_sweep(opt);
    std::ostringstream out;
    write_sweep_csv(res, out);
    std::string s = out.str();
    CHECK(s.rfind("# schema ccn-sweep-1\n", 0) == 0);
    CHECK(s.find("n,index,seed,status,lower,upper,chi,valid\n") != std::string::npos);
    CHECK(s.find("# summary n=8 ") != std::string::npos);
    // one grid point cannot pin a slope
    CHECK(s.find("# fit underdetermined") != std::string::npos);
    CHECK_FALSE(res.summary.fit.has_value());

    std::string plot = gnuplot_script(res, "sweep.csv");
    CHECK(plot.find("plot \"sweep.csv\"") != std::string::npos);
    CHECK(plot.find("log($1)/log(2)") != std::string::npos);
}

TEST_CASE("sweep option validation") {
    SweepOptions opt;
    CHECK_THROWS_AS(run_sweep(opt), InputError); // empty grid
    opt.n_grid = {128};
    opt.mode = SweepMode::exact;
    CHECK_THROWS_AS(run_sweep(opt), InputError); // exact mode guard
    opt.n_grid = {1};
    CHECK_THROWS_AS(run_sweep(opt), InputError);
    opt.n_grid = {16};
    opt.mode = SweepMode::heuristic;
    opt.seeds_per_n = 0;
    CHECK_THROWS_AS(run_sweep(opt), InputError);
    opt.seeds_per_n = 2;
    opt.p = 1.5;
    CHECK_THROWS_AS(run_sweep(opt), InputError);
}

TEST_CASE("experiment records keep wall time out of payloads") {
    ExperimentRecord rec;
    rec.command = "gen";
    rec.n = 10;
    rec.p = 0.5;
    rec.seed = 3;
    rec.payload = {{"edges", 21}};
    rec.wall_ms = 12.5;
    auto with = rec.to_json(true);
    auto without = rec.to_json(false);
    CHECK(with.contains("wall_ms"));
    CHECK_FALSE(without.contains("wall_ms"));
    CHECK(without["payload"]["edges"] == 21);
    CHECK(without["generator"] == std::string(Rng::kGeneratorId));
}

TEST_CASE("certify aggregates are consistent and job-count independent") {
    CertifyOptions opt;
    opt.n = 32;
    opt.seeds = 3;
    opt.base_seed = 5;
    opt.avoidance_trials = 10;
    CertifyResult serial = run_certify(opt, desk_profile());
    opt.jobs = 3;
    CertifyResult threaded = run_certify(opt, desk_profile());

    CHECK(serial.aggregate.dump() == threaded.aggregate.dump());
    std::ostringstream a, b;
    write_certify_jsonl(serial, a);
    write_certify_jsonl(threaded, b);
    CHECK(a.str() == b.str());

    REQUIRE(serial.per_seed.size() == 3);
    // desk s_max at n=32 is 2, so each seed runs exactly one refutation
    CHECK(serial.aggregate["refute_runs"] == 3);
    int attempts = serial.aggregate["construct_attempts"];
    int successes = serial.aggregate["construct_successes"];
    int valid = serial.aggregate["construct_witnesses_valid"];
    CHECK(attempts <= 3);
    CHECK(successes <= attempts);
    CHECK(valid == successes); // a clean success always carries a valid witness
    for (const auto& seed : serial.per_seed) {
        CHECK(seed.record["seed"] == seed.seed);
        CHECK(seed.record["payload"]["index"] == seed.index);
        for (const auto& run : seed.refutes) {
            if (run.witness_found) {
                CHECK(run.witness_valid);
                CHECK(run.fallback_invalid); // refuted colorings really are invalid
            }
        }
    }
}

TEST_CASE("certify on the complete graph finds nothing significant") {
    CertifyOptions opt;
    opt.n = 16;
    opt.p = 1.0;
    opt.seeds = 2;
    opt.avoidance_trials = 5;
    CertifyResult res = run_certify(opt, desk_profile());
    CHECK(res.aggregate["significant_halves"] == 0);
    CHECK(res.aggregate["construct_attempts"] == 0);
    CHECK(res.aggregate["avoidance_holds"] == 0); // one vertex silences all
    CHECK(res.aggregate["refute_witnesses"] == 0); // 2-colorings of K_n are valid
    CHECK(res.aggregate["verify_fallback_invalid"] == 0);
}

TEST_CASE("certify on the empty graph stalls at the transversal search") {
    CertifyOptions opt;
    opt.n = 16;
    opt.p = 0.0;
    opt.seeds = 2;
    opt.avoidance_trials = 5;
    CertifyResult res = run_certify(opt, desk_profile());
    // halves are always significant, but no clique can cross the z-sets
    CHECK(res.aggregate["significant_halves"] == 2);
    CHECK(res.aggregate["construct_attempts"] == 2);
    CHECK(res.aggregate["construct_successes"] == 0);
    CHECK(res.aggregate["construct_stage_histogram"]["transversal_search"] == 2);
    CHECK(res.aggregate["refute_witnesses"] == 0);

    std::ostringstream csv;
    write_certify_csv(res, csv);
    std::string s = csv.str();
    CHECK(s.rfind("# schema ccn-certify-1\nmetric,value\n", 0) == 0);
    CHECK(s.find("construct_stage_histogram.transversal_search,2\n") != std::string::npos);
    CHECK(s.find("significant_halves,2\n") != std::string::npos);
    CHECK(s.find("type,") == std::string::npos);
}

TEST_CASE("certify option validation") {
    CertifyOptions opt;
    opt.n = 2;
    CHECK_THROWS_AS(run_certify(opt, desk_profile()), InputError);
    opt.n = 16;
    opt.seeds = 0;
    CHECK_THROWS_AS(run_certify(opt, desk_profile()), InputError);
    opt.seeds = 1;
    opt.avoidance_trials = 0;
    CHECK_THROWS_AS(run_certify(opt, desk_profile()), InputError);
}
