#include "pointerlab/commands.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <numbers>
#include <random>
#include <sstream>
#include <thread>

#include "pointerlab/model.hpp"
#include "pointerlab/oracle.hpp"

namespace pointerlab::commands {

namespace {

template <typename T>
const T& need(const std::optional<T>& v, const char* section, const char* command) {
    if (!v) throw ConfigError(std::string(command) + " needs a \"" + section + "\" section");
    return *v;
}

std::string dump(const Json& j) { return j.dump(2) + "\n"; }

double max_entry_error(const Matrix2& a, const Matrix2& b) {
    double err = 0.0;
    for (int i = 0; i < 2; ++i) {
        for (int j = 0; j < 2; ++j) err = std::max(err, std::abs(a[i][j] - b[i][j]));
    }
    return err;
}

Json check_row(const std::string& name, bool passed, double error, double tolerance) {
    return Json{{"name", name}, {"passed", passed}, {"max_error", error}, {"tolerance", tolerance}};
}

// Random apparatus for the oracle suite: couplings on [0, 0.5], inits uniform on the sphere.
ApparatusSpec random_spec(std::mt19937_64& rng, std::size_t n) {
    return make_apparatus(Disordered{0.0, 0.5, rng()}, n, RandomInits{rng()});
}

SystemInit random_system(std::mt19937_64& rng) {
    const double cos_theta = 2.0 * unit_uniform(rng()) - 1.0;
    const double phi = 2.0 * std::numbers::pi * unit_uniform(rng());
    return {Complex{std::sqrt(0.5 * (1.0 + cos_theta)), 0.0},
            std::polar(std::sqrt(0.5 * (1.0 - cos_theta)), phi)};
}

}  // namespace

void apply_overrides(RunConfig& cfg, const Options& opts) {
    if (!opts.seed) return;
    if (cfg.apparatus) {
        if (auto* d = std::get_if<Disordered>(&cfg.apparatus->ensemble)) d->seed = *opts.seed;
    }
    if (cfg.oracle) cfg.oracle->seed = *opts.seed;
}

std::string simulate(const RunConfig& cfg) {
    const ApparatusSpec spec = need(cfg.apparatus, "apparatus", "simulate").build();
    const GridConfig& grid = need(cfg.grid, "grid", "simulate");
    const auto count = static_cast<std::size_t>(std::floor(grid.t_max / grid.step + 1e-9)) + 1;

    std::string out = "t,availability\n";
    out.reserve(count * 40);
    for (std::size_t i = 0; i < count; ++i) {
        const double t = static_cast<double>(i) * grid.step;
        out += format_double(t);
        out += ',';
        out += format_double(availability(spec, t));
        out += '\n';
    }
    return out;
}

std::string windows(const RunConfig& cfg, const Options& opts) {
    const ApparatusSpec spec = need(cfg.apparatus, "apparatus", "windows").build();
    const WindowConfig wc = need(cfg.window, "window", "windows").resolve(spec, opts.threads);

    std::vector<Warning> warnings;
    const TimeSet wprc = wprc_set(spec, wc, &warnings);
    const TimeSet prc = prc_times(spec, wc);
    const Revivals rev = revivals(spec, wc);

    Json warn = Json::array();
    for (const auto& w : warnings) warn.push_back({{"code", w.code}, {"message", w.message}});
    Json notes = Json::array();
    if (rev.degenerate) {
        notes.push_back("degenerate: every apparatus qubit starts in a sigma_z eigenstate or is "
                        "uncoupled, so A(t) = 1 for all t");
    }

    Json j;
    j["epsilon"] = wc.epsilon;
    j["grid_step"] = wc.grid_step;
    j["refine_tol"] = wc.refine_tol;
    j["wprc"] = to_json(wprc);
    j["prc"] = to_json(prc);
    j["revivals"] = to_json(rev);
    j["longest_window"] = to_json(longest_window(wprc));
    j["warnings"] = std::move(warn);
    j["notes"] = std::move(notes);
    return dump(j);
}

std::string classify(const RunConfig& cfg, const Options& opts) {
    Json j = Json::object();
    std::optional<ApparatusSpec> spec;
    std::optional<WindowConfig> wc;
    std::optional<LongestWindow> longest;
    if (cfg.apparatus) spec = cfg.apparatus->build();
    if (spec && cfg.window) wc = cfg.window->resolve(*spec, opts.threads);

    if (spec && wc) {
        const TimeSet wprc = wprc_set(*spec, *wc);
        longest = longest_window(wprc);
        j["longest_window"] = to_json(*longest);
        if (cfg.observer) {
            const TimeSet prc = prc_times(*spec, *wc);
            j["reliability"] =
                to_json(reliability(cfg.observer->model(), wprc, prc, cfg.observer->options));
        }
    }
    if (cfg.apparatus && cfg.budget) {
        j["accessibility"] =
            to_json(accessibility(static_cast<long long>(cfg.apparatus->n), *cfg.budget));
    }
    if (cfg.apparatus && longest && cfg.region) {
        j["diagram"] = to_json(
            place_in_diagram(static_cast<double>(cfg.apparatus->n), longest->duration, *cfg.region));
    }
    if (!cfg.comparisons.empty()) {
        Json rows = Json::array();
        for (const auto& c : cfg.comparisons) {
            rows.push_back({{"a", {c.a.n, c.a.t}},
                            {"b", {c.b.n, c.b.t}},
                            {"result", to_string(compare_quality(c.a, c.b))}});
        }
        j["comparisons"] = std::move(rows);
    }
    if (cfg.order_vs_disorder) {
        const auto& o = *cfg.order_vs_disorder;
        const auto& app = need(cfg.apparatus, "apparatus", "classify order_vs_disorder");
        const auto& obs = need(cfg.observer, "observer", "classify order_vs_disorder");
        const auto& ws = need(cfg.window, "window", "classify order_vs_disorder");
        // Defaults are resolved for the fastest coupling either apparatus can have.
        const ApparatusSpec fastest = make_apparatus(Ordered{o.interval.hi}, 1, EquatorialInits{});
        const WindowConfig ovd_cfg = ws.resolve(fastest, 1);
        j["order_vs_disorder"] = to_json(order_vs_disorder_report(
            o.g, o.interval, app.n, o.seeds, ovd_cfg, obs.model(), obs.options, opts.threads));
    }
    if (j.empty()) throw ConfigError("classify: configuration has nothing to classify");
    return dump(j);
}

OracleCheckResult oracle_check(const RunConfig& cfg) {
    const OracleConfig oc = cfg.oracle.value_or(OracleConfig{});
    if (oc.max_n > oracle::kMaxApparatusQubits) {
        throw CapacityError("state-vector oracle supports at most " +
                            std::to_string(oracle::kMaxApparatusQubits) +
                            " apparatus qubits, got N = " + std::to_string(oc.max_n));
    }
    std::mt19937_64 rng(oc.seed);
    Json checks = Json::array();
    bool all = true;
    auto record = [&](const std::string& name, double err, double tol) {
        const bool ok = err <= tol;
        all = all && ok;
        checks.push_back(check_row(name, ok, err, tol));
    };

    if (cfg.apparatus) {
        const ApparatusSpec spec = cfg.apparatus->build();
        const SystemInit sys = cfg.system.value_or(SystemInit(std::sqrt(0.5), std::sqrt(0.5)));
        double err = 0.0;
        for (double t : {0.0, 0.7, 2.1, 13.0, 97.5}) {
            err = std::max(err, max_entry_error(reduced_system_state(spec, sys, t),
                                                oracle::partial_trace_system(
                                                    oracle::evolve_full(spec, sys, t))));
        }
        record("configured_apparatus_vs_partial_trace", err, oc.tolerance);
    }

    {
        double err = 0.0;
        for (std::size_t trial = 0; trial < oc.trials; ++trial) {
            const std::size_t n = 1 + rng() % oc.max_n;
            const ApparatusSpec spec = random_spec(rng, n);
            const SystemInit sys = random_system(rng);
            const double t = 100.0 * unit_uniform(rng());
            err = std::max(err, max_entry_error(reduced_system_state(spec, sys, t),
                                                oracle::partial_trace_system(
                                                    oracle::evolve_full(spec, sys, t))));
        }
        record("reduced_state_vs_partial_trace", err, oc.tolerance);
    }

    {
        // Dense diagonalisation grows as 8^N, so the general route is checked on N <= 6.
        const std::size_t n_cap = std::min<std::size_t>(oc.max_n, 6);
        double err = 0.0;
        for (std::size_t trial = 0; trial < oc.trials; ++trial) {
            const std::size_t n = 1 + rng() % n_cap;
            const ApparatusSpec spec = random_spec(rng, n);
            const double t = 100.0 * unit_uniform(rng());
            const oracle::GeneralOzawaSpec general{{1.0, -1.0},
                                                   oracle::qubit_pointer_generator(spec.couplings()),
                                                   oracle::product_ready_state(spec)};
            const auto ev = oracle::evolve_general_ozawa(
                general, {Complex{std::sqrt(0.5), 0.0}, Complex{std::sqrt(0.5), 0.0}}, t);
            err = std::max(err, std::abs(ev.delta(1, 0) - overlap(spec, t)));
        }
        record("overlap_vs_general_ozawa", err, oc.tolerance);
    }

    if (oc.variance) {
        const auto& vc = *oc.variance;
        // sqrt of distinct primes are rationally independent.
        static constexpr int kPrimes[] = {2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37};
        std::vector<double> g;
        for (std::size_t k = 0; k < vc.n; ++k) {
            const double p = k < std::size(kPrimes) ? kPrimes[k] : 41.0 + 2.0 * static_cast<double>(k);
            g.push_back(0.05 * std::sqrt(p));
        }
        const ApparatusSpec shaped = make_apparatus(Ordered{1.0}, vc.n, RandomInits{rng()});
        const ApparatusSpec spec(g, shaped.inits());

        const auto steps = static_cast<std::size_t>(vc.horizon / vc.step);
        double sq = 0.0;
        Complex mean{0.0, 0.0};
        for (std::size_t i = 0; i < steps; ++i) {
            const Complex z = overlap(spec, (static_cast<double>(i) + 0.5) * vc.step);
            sq += std::norm(z);
            mean += z;
        }
        sq /= static_cast<double>(steps);
        mean /= static_cast<double>(steps);
        const double expected = long_time_variance(spec);
        record("time_average_of_availability_squared", std::abs(sq - expected) / expected,
               vc.tolerance);
        record("time_average_of_overlap", std::abs(mean), vc.mean_tolerance);
    }

    Json j{{"passed", all}, {"checks", std::move(checks)}};
    return {dump(j), all};
}

std::string sweep(const RunConfig& cfg, const Options& opts) {
    const SweepConfig& sw = need(cfg.sweep, "sweep", "sweep");
    const WindowSettings& ws = need(cfg.window, "window", "sweep");
    const ObserverConfig& obs = need(cfg.observer, "observer", "sweep");
    const AccessibilityBudget& budget = need(cfg.budget, "budget", "sweep");
    const RegionSpec& region = need(cfg.region, "region", "sweep");

    std::vector<std::size_t> ns = sw.n_values;
    std::sort(ns.begin(), ns.end());
    ns.erase(std::unique(ns.begin(), ns.end()), ns.end());
    std::vector<std::uint64_t> seeds = sw.seeds;
    std::sort(seeds.begin(), seeds.end());
    seeds.erase(std::unique(seeds.begin(), seeds.end()), seeds.end());

    struct Cell {
        std::size_t n;
        std::size_t ensemble;
        std::optional<std::uint64_t> seed;
        std::string row;
    };
    std::vector<Cell> cells;
    for (std::size_t n : ns) {
        for (std::size_t e = 0; e < sw.ensembles.size(); ++e) {
            if (std::holds_alternative<Ordered>(sw.ensembles[e].ensemble)) {
                cells.push_back({n, e, std::nullopt, {}});
                continue;
            }
            if (seeds.empty()) throw ConfigError("sweep: disordered ensembles need seeds");
            for (auto s : seeds) cells.push_back({n, e, s, {}});
        }
    }

    const ObserverModel model = obs.model();
    auto run_cell = [&](Cell& c) {
        const auto& ens = sw.ensembles[c.ensemble];
        ApparatusSpec spec = [&] {
            if (const auto* o = std::get_if<Ordered>(&ens.ensemble)) {
                return make_apparatus(*o, c.n, sw.inits);
            }
            const auto& iv = std::get<Interval>(ens.ensemble);
            return make_apparatus(Disordered{iv.lo, iv.hi, *c.seed}, c.n, sw.inits);
        }();
        const WindowConfig wc = ws.resolve(spec, 1);
        const ApparatusAnalysis a = analyse_apparatus(spec, wc, model, obs.options);
        const auto acc = accessibility(static_cast<long long>(c.n), budget);
        const auto place = place_in_diagram(static_cast<double>(c.n), a.longest_window, region);

        c.row = std::to_string(c.n) + "," + ens.id() + "," +
                (c.seed ? std::to_string(*c.seed) : std::string()) + "," +
                format_double(a.longest_window) + "," +
                format_double(a.reliability.theta_eps / a.reliability.theta_big) + "," +
                to_string(a.reliability.verdict) + "," + to_string(acc.verdict) + "," +
                (place.in_region ? "true" : "false") + "\n";
    };

    std::atomic<std::size_t> next{0};
    std::exception_ptr failure;
    std::mutex failure_mutex;
    auto worker = [&] {
        for (std::size_t i = next++; i < cells.size(); i = next++) {
            try {
                run_cell(cells[i]);
            } catch (...) {
                std::lock_guard lock(failure_mutex);
                if (!failure) failure = std::current_exception();
            }
        }
    };
    {
        const std::size_t workers = std::clamp<std::size_t>(opts.threads, 1, std::max<std::size_t>(cells.size(), 1));
        std::vector<std::jthread> pool;
        for (std::size_t w = 1; w < workers; ++w) pool.emplace_back(worker);
        worker();
    }
    if (failure) std::rethrow_exception(failure);

    std::string out = "n,ensemble,seed,longest_t,theta_ratio,reliability,accessibility,in_region\n";
    for (const auto& c : cells) out += c.row;
    return out;
}

std::string info(const RunConfig& cfg) {
    const InfoConfig& ic = need(cfg.info, "info", "info");
    const GeneralState state(ic.coeffs);
    const auto p = state.populations();
    const auto [plus, minus] = perturbed_eigenvalues(p[0], p[1], ic.epsilon);

    Json j;
    j["populations"] = p;
    j["prc"] = to_json(mutual_info_prc(state));
    j["wprc"] = to_json(wprc_info_deficit(state, ic.epsilon));
    j["perturbed_eigenvalues"] = {plus, minus};
    return dump(j);
}

}  // namespace pointerlab::commands
