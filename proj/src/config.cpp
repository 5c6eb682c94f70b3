#include "pointerlab/config.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <set>
#include <sstream>

#include "pointerlab/model.hpp"

namespace pointerlab {

namespace {

// Object view that records which keys were read, so leftovers can be rejected.
class Section {
public:
    Section(const Json& j, std::string path) : j_(j), path_(std::move(path)) {
        if (!j_.is_object()) fail("must be a JSON object");
    }

    bool has(const std::string& key) const { return j_.contains(key); }

    const Json& at(const std::string& key) {
        if (!j_.contains(key)) fail("missing required key \"" + key + "\"");
        used_.insert(key);
        return j_.at(key);
    }

    const Json* find(const std::string& key) {
        if (!j_.contains(key)) return nullptr;
        used_.insert(key);
        return &j_.at(key);
    }

    Section sub(const std::string& key) { return {at(key), path_ + "." + key}; }

    template <typename T>
    T get(const std::string& key) {
        return convert<T>(at(key), key);
    }

    template <typename T>
    std::optional<T> maybe(const std::string& key) {
        // null means "use the default"
        const Json* v = find(key);
        if (!v || v->is_null()) return std::nullopt;
        return convert<T>(*v, key);
    }

    template <typename T>
    T convert(const Json& v, const std::string& key) const {
        try {
            if constexpr (std::is_same_v<T, double>) {
                if (!v.is_number()) throw ConfigError("");
            } else if constexpr (std::is_integral_v<T>) {
                if (!v.is_number_integer() || (std::is_unsigned_v<T> && v.is_number_integer() &&
                                               !v.is_number_unsigned() && v.get<long long>() < 0)) {
                    throw ConfigError("");
                }
            }
            return v.get<T>();
        } catch (const std::exception&) {
            fail("key \"" + key + "\" has the wrong type");
        }
    }

    void finish() const {
        for (const auto& [key, value] : j_.items()) {
            if (!used_.count(key)) fail("unknown key \"" + key + "\"");
        }
    }

    [[noreturn]] void fail(const std::string& msg) const { throw ConfigError(path_ + ": " + msg); }

    const std::string& path() const { return path_; }

private:
    const Json& j_;
    std::string path_;
    std::set<std::string> used_;
};

Complex parse_complex(const Json& v, const std::string& where) {
    if (v.is_number()) return {v.get<double>(), 0.0};
    if (v.is_array() && v.size() == 2 && v[0].is_number() && v[1].is_number()) {
        return {v[0].get<double>(), v[1].get<double>()};
    }
    throw ConfigError(where + ": complex value must be a number or [re, im]");
}

Interval parse_pair(const Json& v, const std::string& where) {
    if (!v.is_array() || v.size() != 2 || !v[0].is_number() || !v[1].is_number()) {
        throw ConfigError(where + ": expected a [lo, hi] pair");
    }
    return {v[0].get<double>(), v[1].get<double>()};
}

std::vector<std::uint64_t> parse_seeds(Section& s, const std::string& key) {
    const Json& v = s.at(key);
    if (!v.is_array()) s.fail("\"" + key + "\" must be an array of unsigned integers");
    std::vector<std::uint64_t> seeds;
    for (const auto& e : v) {
        if (!e.is_number_unsigned()) s.fail("\"" + key + "\" must hold unsigned integers");
        seeds.push_back(e.get<std::uint64_t>());
    }
    return seeds;
}

InitsPolicy parse_inits(Section s) {
    const auto policy = s.get<std::string>("policy");
    InitsPolicy out;
    if (policy == "equatorial") {
        out = EquatorialInits{s.maybe<std::vector<double>>("phases").value_or(std::vector<double>{})};
    } else if (policy == "fixed") {
        const Json& states = s.at("states");
        if (!states.is_array()) s.fail("\"states\" must be an array");
        FixedInits fixed;
        for (std::size_t i = 0; i < states.size(); ++i) {
            Section q(states[i], s.path() + ".states[" + std::to_string(i) + "]");
            const Complex alpha = parse_complex(q.at("alpha"), q.path());
            const Complex beta = parse_complex(q.at("beta"), q.path());
            q.finish();
            fixed.inits.emplace_back(alpha, beta);
        }
        out = std::move(fixed);
    } else if (policy == "random") {
        out = RandomInits{s.get<std::uint64_t>("seed")};
    } else {
        s.fail("unknown inits policy \"" + policy + "\"");
    }
    s.finish();
    return out;
}

EnsembleConfig parse_ensemble(Section s) {
    const auto kind = s.get<std::string>("kind");
    EnsembleConfig out;
    if (kind == "ordered") {
        const double g = s.get<double>("g");
        if (!(g > 0.0)) s.fail("ordered g must be positive");
        out = Ordered{g};
    } else if (kind == "disordered") {
        const Interval iv = parse_pair(s.at("interval"), s.path());
        if (!(iv.lo >= 0.0 && iv.lo < iv.hi)) s.fail("interval must satisfy 0 <= g_lo < g_hi");
        out = Disordered{iv.lo, iv.hi, s.get<std::uint64_t>("seed")};
    } else if (kind == "explicit") {
        out = ExplicitCouplings{s.get<std::vector<double>>("couplings")};
    } else {
        s.fail("unknown ensemble kind \"" + kind + "\"");
    }
    s.finish();
    return out;
}

void require_positive(Section& s, double v, const std::string& key) {
    if (!(v > 0.0) || !std::isfinite(v)) s.fail("\"" + key + "\" must be positive and finite");
}

}  // namespace

ApparatusSpec ApparatusConfig::build() const {
    if (const auto* ex = std::get_if<ExplicitCouplings>(&ensemble)) {
        if (ex->couplings.size() != n) {
            throw ConfigError("apparatus: coupling list has " + std::to_string(ex->couplings.size()) +
                              " entries but n = " + std::to_string(n));
        }
        // Reuse make_apparatus for the inits, then swap in the explicit couplings.
        const ApparatusSpec shaped = make_apparatus(Ordered{1.0}, n, inits);
        return {ex->couplings, shaped.inits()};
    }
    if (const auto* o = std::get_if<Ordered>(&ensemble)) return make_apparatus(*o, n, inits);
    return make_apparatus(std::get<Disordered>(ensemble), n, inits);
}

WindowConfig WindowSettings::resolve(const ApparatusSpec& spec, unsigned threads) const {
    WindowConfig cfg = WindowConfig::defaults_for(spec, epsilon, t_max);
    if (grid_step) {
        cfg.grid_step = *grid_step;
        cfg.refine_tol = *grid_step * 1e-6;
    }
    if (refine_tol) cfg.refine_tol = *refine_tol;
    if (revival_eta) cfg.revival_eta = *revival_eta;
    cfg.threads = threads;
    cfg.validate();
    return cfg;
}

std::string SweepEnsemble::id() const {
    if (const auto* o = std::get_if<Ordered>(&ensemble)) return "ordered:g=" + format_double(o->g);
    const auto& iv = std::get<Interval>(ensemble);
    return "disordered:[" + format_double(iv.lo) + ";" + format_double(iv.hi) + "]";
}

RunConfig parse_config(const Json& j) {
    Section root(j, "config");
    const Json& version = root.at("schema_version");
    if (!version.is_number_integer() || version.get<int>() != kSchemaVersion) {
        root.fail("schema_version must be " + std::to_string(kSchemaVersion));
    }

    RunConfig cfg;
    if (root.has("apparatus")) {
        Section s = root.sub("apparatus");
        ApparatusConfig a;
        a.n = s.get<std::size_t>("n");
        if (a.n == 0) s.fail("n must be at least 1");
        a.ensemble = parse_ensemble(s.sub("ensemble"));
        if (s.has("inits")) a.inits = parse_inits(s.sub("inits"));
        s.finish();
        cfg.apparatus = std::move(a);
    }
    if (root.has("system")) {
        Section s = root.sub("system");
        const Complex a = parse_complex(s.at("a"), s.path());
        const Complex b = parse_complex(s.at("b"), s.path());
        s.finish();
        cfg.system = SystemInit(a, b);
    }
    if (root.has("grid")) {
        Section s = root.sub("grid");
        GridConfig g{s.get<double>("t_max"), s.get<double>("step")};
        require_positive(s, g.t_max, "t_max");
        require_positive(s, g.step, "step");
        s.finish();
        cfg.grid = g;
    }
    if (root.has("window")) {
        Section s = root.sub("window");
        WindowSettings w;
        w.epsilon = s.maybe<double>("epsilon").value_or(0.01);
        w.t_max = s.get<double>("t_max");
        w.grid_step = s.maybe<double>("grid_step");
        w.refine_tol = s.maybe<double>("refine_tol");
        w.revival_eta = s.maybe<double>("revival_eta");
        if (!(w.epsilon > 0.0 && w.epsilon < 1.0)) s.fail("epsilon must lie in (0, 1)");
        require_positive(s, w.t_max, "t_max");
        s.finish();
        cfg.window = w;
    }
    if (root.has("observer")) {
        Section s = root.sub("observer");
        ObserverConfig o{parse_pair(s.at("window"), s.path()), UniformTimes{}, {}};
        if (s.has("distribution")) {
            Section d = s.sub("distribution");
            const auto kind = d.get<std::string>("kind");
            if (kind == "uniform") {
                o.distribution = UniformTimes{};
            } else if (kind == "truncated_gaussian") {
                o.distribution = TruncatedGaussianTimes{d.get<double>("t_m"), d.get<double>("delta_t")};
            } else {
                d.fail("unknown distribution kind \"" + kind + "\"");
            }
            d.finish();
        }
        o.options.theta_min = s.maybe<double>("theta_min").value_or(o.options.theta_min);
        o.options.rel_tol = s.maybe<double>("rel_tol").value_or(o.options.rel_tol);
        s.finish();
        (void)o.model();  // validates the window and distribution
        cfg.observer = o;
    }
    if (root.has("budget")) {
        Section s = root.sub("budget");
        AccessibilityBudget b{s.get<double>("e0"), s.get<double>("noise_floor"), s.get<double>("max_energy")};
        s.finish();
        b.validate();
        cfg.budget = b;
    }
    if (root.has("region")) {
        Section s = root.sub("region");
        const Interval n = parse_pair(s.at("n_range"), s.path());
        const Interval t = parse_pair(s.at("t_range"), s.path());
        s.finish();
        RegionSpec r{n.lo, n.hi, t.lo, t.hi};
        r.validate();
        cfg.region = r;
    }
    if (const Json* cmp = root.find("comparisons")) {
        if (!cmp->is_array()) root.fail("\"comparisons\" must be an array");
        for (std::size_t i = 0; i < cmp->size(); ++i) {
            Section s((*cmp)[i], "config.comparisons[" + std::to_string(i) + "]");
            const Interval a = parse_pair(s.at("a"), s.path());
            const Interval b = parse_pair(s.at("b"), s.path());
            s.finish();
            cfg.comparisons.push_back({{a.lo, a.hi}, {b.lo, b.hi}});
        }
    }
    if (root.has("order_vs_disorder")) {
        Section s = root.sub("order_vs_disorder");
        OrderDisorderConfig o{s.get<double>("g"), parse_pair(s.at("interval"), s.path()),
                              parse_seeds(s, "seeds")};
        if (o.seeds.empty()) s.fail("seeds must not be empty");
        if (!o.interval.contains(o.g)) s.fail("g must lie inside interval");
        s.finish();
        cfg.order_vs_disorder = std::move(o);
    }
    if (root.has("sweep")) {
        Section s = root.sub("sweep");
        SweepConfig sw;
        sw.n_values = s.get<std::vector<std::size_t>>("n_values");
        if (sw.n_values.empty() ||
            std::any_of(sw.n_values.begin(), sw.n_values.end(), [](auto n) { return n == 0; })) {
            s.fail("n_values must be a nonempty list of positive integers");
        }
        const Json& ens = s.at("ensembles");
        if (!ens.is_array() || ens.empty()) s.fail("ensembles must be a nonempty array");
        for (std::size_t i = 0; i < ens.size(); ++i) {
            Section e(ens[i], s.path() + ".ensembles[" + std::to_string(i) + "]");
            const auto kind = e.get<std::string>("kind");
            if (kind == "ordered") {
                const double g = e.get<double>("g");
                if (!(g > 0.0)) e.fail("ordered g must be positive");
                sw.ensembles.push_back({Ordered{g}});
            } else if (kind == "disordered") {
                const Interval iv = parse_pair(e.at("interval"), e.path());
                if (!(iv.lo >= 0.0 && iv.lo < iv.hi)) e.fail("interval must satisfy 0 <= g_lo < g_hi");
                sw.ensembles.push_back({iv});
            } else {
                e.fail("unknown ensemble kind \"" + kind + "\"");
            }
            e.finish();
        }
        sw.seeds = s.has("seeds") ? parse_seeds(s, "seeds") : std::vector<std::uint64_t>{};
        if (s.has("inits")) sw.inits = parse_inits(s.sub("inits"));
        s.finish();
        cfg.sweep = std::move(sw);
    }
    if (root.has("info")) {
        Section s = root.sub("info");
        InfoConfig info;
        const Json& coeffs = s.at("coeffs");
        if (!coeffs.is_array()) s.fail("\"coeffs\" must be an array");
        for (const auto& c : coeffs) info.coeffs.push_back(parse_complex(c, s.path()));
        info.epsilon = s.maybe<double>("epsilon").value_or(0.0);
        if (!(info.epsilon >= 0.0)) s.fail("epsilon must be nonnegative");
        s.finish();
        (void)GeneralState(info.coeffs);
        cfg.info = std::move(info);
    }
    if (root.has("oracle")) {
        Section s = root.sub("oracle");
        OracleConfig o;
        o.trials = s.maybe<std::size_t>("trials").value_or(o.trials);
        o.max_n = s.maybe<std::size_t>("max_n").value_or(o.max_n);
        o.seed = s.maybe<std::uint64_t>("seed").value_or(o.seed);
        o.tolerance = s.maybe<double>("tolerance").value_or(o.tolerance);
        if (o.max_n == 0) s.fail("max_n must be at least 1");
        if (const Json* v = s.find("variance")) {
            if (v->is_null()) {
                o.variance.reset();
            } else {
                Section vs(*v, s.path() + ".variance");
                VarianceCheckConfig vc;
                vc.n = vs.maybe<std::size_t>("n").value_or(vc.n);
                vc.horizon = vs.maybe<double>("horizon").value_or(vc.horizon);
                vc.step = vs.maybe<double>("step").value_or(vc.step);
                vc.tolerance = vs.maybe<double>("tolerance").value_or(vc.tolerance);
                vc.mean_tolerance = vs.maybe<double>("mean_tolerance").value_or(vc.mean_tolerance);
                require_positive(vs, vc.horizon, "horizon");
                require_positive(vs, vc.step, "step");
                if (vc.n == 0) vs.fail("n must be at least 1");
                vs.finish();
                o.variance = vc;
            }
        }
        s.finish();
        cfg.oracle = o;
    }
    if (root.has("output")) {
        Section s = root.sub("output");
        cfg.output_path = s.get<std::string>("path");
        s.finish();
    }
    root.finish();

    // Cross-section constraints that can be checked without running anything.
    if (cfg.apparatus) (void)cfg.apparatus->build();
    return cfg;
}

RunConfig load_config(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("cannot open config file " + path);
    Json j;
    try {
        j = Json::parse(in);
    } catch (const nlohmann::json::parse_error& e) {
        throw ConfigError("config " + path + " is not valid JSON: " + e.what());
    }
    return parse_config(j);
}

}  // namespace pointerlab
