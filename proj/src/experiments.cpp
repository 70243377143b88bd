#include "ccn/experiments.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <exception>
#include <mutex>
#include <ostream>
#include <thread>

#include "ccn/rng.hpp"

namespace ccn {

namespace {

double now_ms() {
    using namespace std::chrono;
    return duration<double, std::milli>(steady_clock::now().time_since_epoch()).count();
}

std::string fmt(double x) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.6g", x);
    return buf;
}

// body(i) for i in [0, count); exceptions resurface on the calling thread
template <class F>
void parallel_for(int count, int jobs, F&& body) {
    jobs = std::max(1, jobs);
    if (jobs == 1 || count <= 1) {
        for (int i = 0; i < count; ++i) body(i);
        return;
    }
    jobs = std::min({jobs, count, 256});
    std::atomic<int> next{0};
    std::atomic<bool> failed{false};
    std::exception_ptr error;
    std::mutex error_mu;
    auto worker = [&] {
        while (!failed.load(std::memory_order_relaxed)) {
            int i = next.fetch_add(1);
            if (i >= count) return;
            try {
                body(i);
            } catch (...) {
                std::lock_guard<std::mutex> lock(error_mu);
                if (!error) error = std::current_exception();
                failed = true;
                return;
            }
        }
    };
    std::vector<std::thread> pool;
    for (int t = 0; t < jobs; ++t) pool.emplace_back(worker);
    for (auto& th : pool) th.join();
    if (error) std::rethrow_exception(error);
}

} // namespace

nlohmann::json ExperimentRecord::to_json(bool include_wall) const {
    nlohmann::json j{
        {"command", command},
        {"n", n},
        {"p", p},
        {"seed", seed},
        {"generator", Rng::kGeneratorId},
        {"version", kToolkitVersion},
        {"payload", payload},
    };
    if (thresholds) j["thresholds"] = ccn::to_json(*thresholds);
    if (include_wall) j["wall_ms"] = wall_ms;
    return j;
}

// ---- sweep ------------------------------------------------------------------

namespace {

void validate_sweep(const SweepOptions& opt) {
    if (opt.n_grid.empty()) throw InputError("sweep: empty n grid");
    for (int n : opt.n_grid) {
        if (n < 2) throw InputError("sweep: n must be >= 2");
        if (opt.mode == SweepMode::exact && n > kExactSweepMaxN)
            throw InputError("sweep: exact mode is guarded to n <= " +
                             std::to_string(kExactSweepMaxN));
    }
    if (opt.seeds_per_n < 1) throw InputError("sweep: seeds_per_n must be >= 1");
    if (!(opt.p >= 0 && opt.p <= 1)) throw InputError("sweep: p must lie in [0,1]");
}

} // namespace

SweepResult run_sweep(const SweepOptions& opt) {
    validate_sweep(opt);
    SweepResult res;
    res.options = opt;
    res.cells.resize(opt.n_grid.size() * opt.seeds_per_n);
    for (std::size_t gi = 0; gi < opt.n_grid.size(); ++gi)
        for (int s = 0; s < opt.seeds_per_n; ++s) {
            SweepCell& cell = res.cells[gi * opt.seeds_per_n + s];
            cell.n = opt.n_grid[gi];
            cell.index = s;
            cell.seed = Rng::derive_seed(opt.base_seed, std::uint64_t(cell.n), std::uint64_t(s));
        }

    parallel_for(int(res.cells.size()), opt.jobs, [&](int i) {
        SweepCell& cell = res.cells[i];
        double t0 = now_ms();
        Rng rng(cell.seed);
        Graph g = gen_gnp(cell.n, opt.p, rng);
        if (opt.mode == SweepMode::exact) {
            ExactResult er = chi_c_exact(g, opt.exact_limits);
            cell.status = er.proved() ? "proved" : "gap";
            cell.lower = er.lower;
            cell.upper = er.upper;
            cell.chi = er.upper;
            try {
                cell.valid = verify_coloring(g, er.coloring).valid;
            } catch (const BudgetExceeded&) {
                cell.valid = false;
            }
        } else {
            try {
                Coloring c = greedy_clique_coloring(g, rng, opt.greedy_limits);
                c.compact();
                cell.status = "ok";
                cell.lower = cell.upper = cell.chi = c.num_colors;
                cell.valid = verify_coloring(g, c).valid;
            } catch (const BudgetExceeded&) {
                cell.status = "gap";
                cell.chi = 0;
                cell.valid = false;
            }
        }
        cell.wall_ms = now_ms() - t0;
    });

    res.summary = summarize_sweep(opt, res.cells);
    return res;
}

SweepSummary summarize_sweep(const SweepOptions& opt, const std::vector<SweepCell>& cells) {
    SweepSummary sum;
    for (int n : opt.n_grid) {
        SweepSummary::PerN row;
        row.n = n;
        long long total = 0;
        for (const auto& cell : cells) {
            if (cell.n != n || cell.chi < 1) continue;
            if (row.samples == 0) {
                row.min = row.max = cell.chi;
            } else {
                row.min = std::min(row.min, cell.chi);
                row.max = std::max(row.max, cell.chi);
            }
            ++row.samples;
            total += cell.chi;
        }
        if (row.samples > 0) row.mean = double(total) / row.samples;
        sum.per_n.push_back(row);
    }

    std::vector<double> xs, ys;
    for (const auto& row : sum.per_n) {
        if (row.samples == 0) continue;
        xs.push_back(std::log2(double(row.n)));
        ys.push_back(row.mean);
    }
    bool spread = false;
    for (double x : xs)
        if (std::abs(x - xs.front()) > 1e-12) spread = true;
    if (xs.size() >= 2 && spread) {
        double sx = 0, sy = 0, sxx = 0, sxy = 0;
        for (std::size_t i = 0; i < xs.size(); ++i) {
            sx += xs[i];
            sy += ys[i];
            sxx += xs[i] * xs[i];
            sxy += xs[i] * ys[i];
        }
        double den = xs.size() * sxx - sx * sx;
        FitResult fit;
        fit.a = (xs.size() * sxy - sx * sy) / den;
        fit.b = (sy - fit.a * sx) / xs.size();
        for (std::size_t i = 0; i < xs.size(); ++i)
            fit.residuals.push_back(ys[i] - (fit.a * xs[i] + fit.b));
        sum.fit = fit;
    }
    return sum;
}

void write_sweep_csv(const SweepResult& r, std::ostream& out) {
    out << "# schema ccn-sweep-1\n";
    out << "# mode=" << (r.options.mode == SweepMode::exact ? "exact" : "heuristic")
        << " p=" << fmt(r.options.p) << " base_seed=" << r.options.base_seed
        << " seeds_per_n=" << r.options.seeds_per_n << "\n";
    out << "n,index,seed,status,lower,upper,chi,valid\n";
    for (const auto& c : r.cells)
        out << c.n << "," << c.index << "," << c.seed << "," << c.status << "," << c.lower << ","
            << c.upper << "," << c.chi << "," << (c.valid ? 1 : 0) << "\n";
    for (const auto& row : r.summary.per_n)
        out << "# summary n=" << row.n << " samples=" << row.samples << " mean=" << fmt(row.mean)
            << " min=" << row.min << " max=" << row.max << "\n";
    if (r.summary.fit) {
        out << "# fit a=" << fmt(r.summary.fit->a) << " b=" << fmt(r.summary.fit->b)
            << " residuals=";
        for (std::size_t i = 0; i < r.summary.fit->residuals.size(); ++i)
            out << (i ? ";" : "") << fmt(r.summary.fit->residuals[i]);
        out << "\n";
    } else {
        out << "# fit underdetermined (need means at two distinct n)\n";
    }
}

namespace {

nlohmann::json summary_json(const SweepSummary& sum) {
    nlohmann::json per_n = nlohmann::json::array();
    for (const auto& row : sum.per_n)
        per_n.push_back({{"n", row.n},
                         {"samples", row.samples},
                         {"mean", row.mean},
                         {"min", row.min},
                         {"max", row.max}});
    nlohmann::json j{{"type", "summary"}, {"per_n", per_n}};
    if (sum.fit)
        j["fit"] = {{"a", sum.fit->a}, {"b", sum.fit->b}, {"residuals", sum.fit->residuals}};
    else
        j["fit"] = nullptr;
    return j;
}

} // namespace

void write_sweep_jsonl(const SweepResult& r, std::ostream& out) {
    for (const auto& c : r.cells) {
        nlohmann::json j{
            {"schema", "ccn-sweep-1"},
            {"type", "cell"},
            {"n", c.n},
            {"index", c.index},
            {"seed", c.seed},
            {"status", c.status},
            {"lower", c.lower},
            {"upper", c.upper},
            {"chi", c.chi},
            {"valid", c.valid},
        };
        out << j.dump() << "\n";
    }
    out << summary_json(r.summary).dump() << "\n";
}

std::string gnuplot_script(const SweepResult& r, const std::string& csv_path) {
    std::string s;
    s += "set datafile separator \",\"\n";
    s += "set xlabel \"log2 n\"\n";
    s += "set ylabel \"colors\"\n";
    s += "set key left top\n";
    if (r.summary.fit) {
        s += "a = " + fmt(r.summary.fit->a) + "\n";
        s += "b = " + fmt(r.summary.fit->b) + "\n";
    }
    // the csv starts with two comment lines and one header line
    s += "plot \"" + csv_path + "\" skip 3 using (log($1)/log(2)):7 with points title \"samples\"";
    if (r.summary.fit) s += ", a*x + b with lines title \"least-squares fit\"";
    s += "\n";
    return s;
}

// ---- certify ----------------------------------------------------------------

namespace {

void validate_certify(const CertifyOptions& opt) {
    if (opt.n < 4) throw InputError("certify: n must be >= 4");
    if (opt.seeds < 1) throw InputError("certify: seeds must be >= 1");
    if (!(opt.p >= 0 && opt.p <= 1)) throw InputError("certify: p must lie in [0,1]");
    if (opt.avoidance_trials < 1) throw InputError("certify: avoidance_trials must be >= 1");
}

Coloring random_coloring(int n, int s, Rng& rng) {
    Coloring c;
    c.num_colors = s;
    c.color.resize(n);
    for (int v = 0; v < n; ++v) c.color[v] = rng.next_int(s);
    std::vector<int> seen(s, 0);
    for (int v = 0; v < n; ++v) seen[c.color[v]] = 1;
    for (int j = 0; j < s; ++j)
        if (!seen[j]) c.color[j] = j; // deterministic repair of an empty class
    return c;
}

// a witness must be a monochromatic maximal clique on >= 2 vertices
bool witness_ok(const Graph& g, const Coloring& c, const VertexSet& w) {
    if (w.count() < 2) return false;
    if (!is_maximal_clique(g, w).is_maximal()) return false;
    int color = -1;
    bool mono = true;
    w.for_each([&](int v) {
        if (color == -1) color = c.color[v];
        else if (c.color[v] != color) mono = false;
    });
    return mono;
}

} // namespace

CertifyResult run_certify(const CertifyOptions& opt, const ParameterProfile& profile) {
    validate_certify(opt);
    CertifyResult res;
    res.options = opt;
    res.thresholds = resolve_thresholds(profile, opt.n);
    const ResolvedThresholds& th = res.thresholds;
    res.per_seed.resize(opt.seeds);

    parallel_for(opt.seeds, opt.jobs, [&](int i) {
        CertifySeedResult& r = res.per_seed[i];
        r.index = i;
        r.seed = Rng::derive_seed(opt.base_seed, std::uint64_t(opt.n), std::uint64_t(i));
        Rng rng(r.seed);
        Graph g = gen_gnp(opt.n, opt.p, rng);

        AvoidanceReport av = check_avoidance_sampled(g, th, opt.avoidance_trials, rng);
        r.avoidance_holds = av.holds;
        r.avoidance_min = av.min_count;

        std::vector<int> perm(opt.n);
        for (int v = 0; v < opt.n; ++v) perm[v] = v;
        rng.shuffle(perm);
        VertexSet half(opt.n);
        for (int j = 0; j < opt.n / 2; ++j) half.set(perm[j]);

        BadVertexCheck bv = check_bad_vertices(g, half, th);
        r.bad_vertex_holds = bv.holds;
        r.bad_vertex_count = bv.bad.count();

        SignificanceReport sig = is_significant(g, half, th);
        r.half_significant = sig.significant();

        nlohmann::json payload{
            {"index", i},
            {"avoidance", to_json(av)},
            {"bad_vertex", to_json(bv)},
            {"significance", to_json(sig)},
        };

        if (r.half_significant) {
            r.construct_attempted = true;
            ConstructionResult built = construct_covering_clique(g, half, th, rng, opt.budget);
            r.construct_stage = to_string(built.stage);
            r.construct_ok = built.ok();
            if (built.ok()) r.construct_witness_valid = built.witness->check(g);
            payload["construction"] = to_json(built);
        }

        nlohmann::json refutes = nlohmann::json::array();
        for (int s = 2; s <= std::max(2, th.s_max) && s <= opt.n; ++s) {
            Coloring c = random_coloring(opt.n, s, rng);
            RefutationOutcome out = refute_coloring(g, c, th, rng, opt.budget);
            RefuteRun run;
            run.num_classes = s;
            run.reached = to_string(out.reached);
            run.failure = out.failure;
            run.witness_found = out.witness_found();
            if (out.witness) run.witness_valid = witness_ok(g, c, *out.witness);
            try {
                run.fallback_invalid = !verify_coloring(g, c).valid;
            } catch (const BudgetExceeded&) {
                run.fallback_invalid = false;
            }
            nlohmann::json rj{
                {"classes", s},
                {"outcome", to_json(out)},
                {"witness_valid", run.witness_valid},
                {"fallback_invalid", run.fallback_invalid},
            };
            refutes.push_back(std::move(rj));
            r.refutes.push_back(std::move(run));
        }
        payload["refutes"] = std::move(refutes);
        r.record = certificate_record(std::move(payload), th, r.seed);
    });

    nlohmann::json stage_hist = nlohmann::json::object();
    nlohmann::json refute_hist = nlohmann::json::object();
    int avoidance_holds = 0, bad_holds = 0, significant = 0;
    int attempts = 0, successes = 0, witnesses_valid = 0;
    int refute_runs = 0, refute_witnesses = 0, refute_valid = 0, fallback_invalid = 0;
    for (const auto& r : res.per_seed) {
        avoidance_holds += r.avoidance_holds;
        bad_holds += r.bad_vertex_holds;
        significant += r.half_significant;
        if (r.construct_attempted) {
            ++attempts;
            stage_hist[r.construct_stage] = int(stage_hist.value(r.construct_stage, 0)) + 1;
            successes += r.construct_ok;
            witnesses_valid += r.construct_witness_valid;
        }
        for (const auto& run : r.refutes) {
            ++refute_runs;
            refute_hist[run.reached] = int(refute_hist.value(run.reached, 0)) + 1;
            refute_witnesses += run.witness_found;
            refute_valid += run.witness_valid;
            fallback_invalid += run.fallback_invalid;
        }
    }
    res.aggregate = {
        {"type", "aggregate"},
        {"n", opt.n},
        {"p", opt.p},
        {"seeds", opt.seeds},
        {"base_seed", opt.base_seed},
        {"avoidance_holds", avoidance_holds},
        {"bad_vertex_holds", bad_holds},
        {"significant_halves", significant},
        {"construct_attempts", attempts},
        {"construct_successes", successes},
        {"construct_witnesses_valid", witnesses_valid},
        {"construct_stage_histogram", stage_hist},
        {"refute_runs", refute_runs},
        {"refute_stage_histogram", refute_hist},
        {"refute_witnesses", refute_witnesses},
        {"refute_witnesses_valid", refute_valid},
        {"verify_fallback_invalid", fallback_invalid},
    };
    return res;
}

void write_certify_jsonl(const CertifyResult& r, std::ostream& out) {
    for (const auto& seed : r.per_seed) out << seed.record.dump() << "\n";
    out << r.aggregate.dump() << "\n";
}

void write_certify_csv(const CertifyResult& r, std::ostream& out) {
    out << "# schema ccn-certify-1\n";
    out << "metric,value\n";
    for (auto it = r.aggregate.begin(); it != r.aggregate.end(); ++it) {
        if (it.value().is_object()) {
            for (auto jt = it.value().begin(); jt != it.value().end(); ++jt)
                out << it.key() << "." << jt.key() << "," << jt.value().dump() << "\n";
        } else if (it.key() != "type") {
            out << it.key() << "," << it.value().dump() << "\n";
        }
    }
}

} // namespace ccn
