// Acceptance run: one PASS/FAIL line per top-level criterion. Exit status is
// nonzero if any line fails.
#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <numbers>
#include <random>
#include <string>

#include "pointerlab/classifier.hpp"
#include "pointerlab/commands.hpp"
#include "pointerlab/information.hpp"
#include "pointerlab/model.hpp"
#include "pointerlab/oracle.hpp"

using namespace pointerlab;

namespace {

constexpr double kPi = std::numbers::pi;

// Pinned tolerances.
constexpr double kOracleTol = 1e-10;
constexpr double kOracleSeconds = 10.0;
constexpr double kLatticeTol = 1e-6;
constexpr double kVarianceRelTol = 0.05;
constexpr double kMeanOverlapMax = 0.02;
constexpr double kFullRatioTol = 1e-9;
constexpr double kRevivalMargin = 0.05;
constexpr double kDeficitRelTol = 0.05;
constexpr double kHalvingTarget = 16.0;
constexpr double kHalvingRelTol = 0.30;

int failures = 0;

void report(bool ok, const std::string& name, const std::string& detail) {
    std::printf("%s  %-34s %s\n", ok ? "PASS" : "FAIL", name.c_str(), detail.c_str());
    std::fflush(stdout);
    if (!ok) ++failures;
}

std::string fmt(const char* f, auto... args) {
    char buf[512];
    std::snprintf(buf, sizeof buf, f, args...);
    return buf;
}

ApparatusSpec ordered(double g, std::size_t n) { return make_apparatus(Ordered{g}, n, EquatorialInits{}); }

double max_entry_error(const Matrix2& a, const Matrix2& b) {
    double e = 0.0;
    for (int i = 0; i < 2; ++i)
        for (int j = 0; j < 2; ++j) e = std::max(e, std::abs(a[i][j] - b[i][j]));
    return e;
}

void oracle_equivalence() {
    std::mt19937_64 rng(20240611);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    const auto start = std::chrono::steady_clock::now();
    double worst = 0.0;
    for (int trial = 0; trial < 50; ++trial) {
        const std::size_t n = 1 + rng() % 10;
        std::vector<double> g;
        std::vector<QubitInit> inits;
        for (std::size_t k = 0; k < n; ++k) {
            g.push_back(0.5 * u(rng));
            const double th = std::acos(2 * u(rng) - 1);
            inits.emplace_back(std::cos(th / 2), std::polar(std::sin(th / 2), 2 * kPi * u(rng)));
        }
        const ApparatusSpec spec(g, inits);
        const double th = std::acos(2 * u(rng) - 1);
        const SystemInit sys(std::cos(th / 2), std::polar(std::sin(th / 2), 2 * kPi * u(rng)));
        const double t = 100.0 * u(rng);
        worst = std::max(worst, max_entry_error(reduced_system_state(spec, sys, t),
                                                oracle::partial_trace_system(oracle::evolve_full(spec, sys, t))));
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    report(worst <= kOracleTol && secs < kOracleSeconds, "oracle_equivalence",
           fmt("50 cases, N<=10: max entry error %.3e (tol %.0e), %.3f s (limit %.0f s)", worst, kOracleTol, secs,
               kOracleSeconds));
}

void ordered_prc_lattice() {
    const double g = 0.1;
    const auto spec = ordered(g, 5);
    const auto prc = prc_times(spec, WindowConfig::defaults_for(spec, 0.01, 50.0));
    std::vector<double> expected;
    for (int k = 0; kPi / (4 * g) + k * kPi / (2 * g) <= 50.0; ++k) expected.push_back(kPi / (4 * g) + k * kPi / (2 * g));
    double worst = 0.0;
    bool ok = prc.points().size() == expected.size();
    for (std::size_t i = 0; ok && i < expected.size(); ++i) worst = std::max(worst, std::abs(prc.points()[i] - expected[i]));
    ok = ok && worst <= kLatticeTol;
    report(ok, "ordered_prc_lattice",
           fmt("%zu points (expected %zu), max deviation %.3e (tol %.0e)", prc.points().size(), expected.size(), worst,
               kLatticeTol));
}

void variance_law() {
    // Couplings proportional to sqrt of distinct primes are rationally independent.
    const std::vector<double> g{0.05 * std::sqrt(2.0), 0.05 * std::sqrt(3.0), 0.05 * std::sqrt(5.0),
                                0.05 * std::sqrt(7.0), 0.05 * std::sqrt(11.0), 0.05 * std::sqrt(13.0)};
    const auto shaped = make_apparatus(Ordered{1.0}, 6, RandomInits{99});
    const ApparatusSpec spec(g, shaped.inits());
    const double horizon = 1e5;
    const double step = 0.05;
    const auto steps = static_cast<std::size_t>(horizon / step);
    double sq = 0.0;
    Complex mean{0.0, 0.0};
    for (std::size_t i = 0; i < steps; ++i) {
        const Complex z = overlap(spec, (static_cast<double>(i) + 0.5) * step);
        sq += std::norm(z);
        mean += z;
    }
    sq /= static_cast<double>(steps);
    mean /= static_cast<double>(steps);
    const double expected = long_time_variance(spec);
    const double rel = std::abs(sq - expected) / expected;
    report(rel <= kVarianceRelTol && std::abs(mean) < kMeanOverlapMax, "variance_law",
           fmt("N=6, [0,1e5]: <A^2>=%.6f vs prod=%.6f (rel %.2e, tol %.2f); |<overlap>|=%.2e (max %.2f)", sq, expected,
               rel, kVarianceRelTol, std::abs(mean), kMeanOverlapMax));
}

void monotone_depth() {
    const double g = 0.1;
    const double half = kPi / (2 * g);
    const double quarter = kPi / (4 * g);
    const std::size_t ns[] = {5, 10, 100};
    bool ok = true;

    double a_at[3];
    for (int i = 0; i < 3; ++i) a_at[i] = availability(ordered(g, ns[i]), quarter);
    ok = ok && a_at[2] < a_at[1] && a_at[1] < a_at[0];

    // interior of (0, pi/4g): strict decrease in N at every sample
    for (int k = 1; k < 64; ++k) {
        const double t = quarter * k / 64.0;
        const double a5 = availability(ordered(g, 5), t);
        const double a10 = availability(ordered(g, 10), t);
        const double a100 = availability(ordered(g, 100), t);
        ok = ok && a100 < a10 && a10 < a5;
    }

    double cov[3];
    for (int i = 0; i < 3; ++i) {
        const auto spec = ordered(g, ns[i]);
        const auto w = wprc_set(spec, WindowConfig::defaults_for(spec, 0.01, 50.0));
        cov[i] = w.measure_within(0.0, half) / half;
    }
    ok = ok && cov[0] < cov[1] && cov[1] < cov[2];
    report(ok, "monotone_decoherence_depth",
           fmt("A(pi/4g) N=5,10,100: %.3e > %.3e > %.3e; WPRC coverage of [0,pi/2g]: %.4f < %.4f < %.4f", a_at[0],
               a_at[1], a_at[2], cov[0], cov[1], cov[2]));
}

void disorder_superiority() {
    const double g = 0.1;
    const double half = kPi / (2 * g);
    std::vector<std::uint64_t> seeds;
    for (std::uint64_t s = 1; s <= 20; ++s) seeds.push_back(s);
    const auto fastest = ordered(0.2, 1);
    const auto cfg = WindowConfig::defaults_for(fastest, 0.01, 1000.0);
    const ObserverModel obs({0.0, 1000.0}, UniformTimes{});
    const auto rep = order_vs_disorder_report(g, {0.0, 0.2}, 100, seeds, cfg, obs);

    double ordered_max = 0.0;
    for (std::size_t n : {5u, 10u, 100u, 1000u}) {
        const auto spec = ordered(g, n);
        ordered_max = std::max(ordered_max,
                               longest_window(wprc_set(spec, WindowConfig::defaults_for(spec, 0.01, 1000.0))).duration);
    }
    const bool ok = rep.median_disordered_longest > half && ordered_max < half;
    report(ok, "disordered_window_superiority",
           fmt("N=100, I=[0,0.2], 20 seeds: median longest %.3f vs pi/2g %.3f; ordered max longest %.3f", rep.median_disordered_longest,
               half, ordered_max));
}

void reliability_integrals() {
    const auto spec = ordered(0.1, 10);
    const auto cfg = WindowConfig::defaults_for(spec, 0.01, 50.0);
    const auto wprc = wprc_set(spec, cfg);
    const auto prc = prc_times(spec, cfg);
    const Interval first = wprc.intervals().at(0);
    const double mid = 0.5 * (first.lo + first.hi);
    const double quarter_len = 0.25 * first.length();
    const auto inside = reliability(ObserverModel({mid - quarter_len, mid + quarter_len}, UniformTimes{}), wprc, prc);
    const double r_in = inside.theta_eps / inside.theta_big;

    const double rev = kPi / 0.2;
    const auto centred = reliability(ObserverModel({rev - 7.0, rev + 7.0}, UniformTimes{}), wprc, prc);
    const double r_rev = centred.theta_eps / centred.theta_big;
    const bool ok = std::abs(r_in - 1.0) <= kFullRatioTol && r_rev < 1.0 - kRevivalMargin && inside.p_good_prc == 0.0;
    report(ok, "reliability_integrals",
           fmt("inside WPRC: theta_eps/Theta = %.12f (tol %.0e); revival-centred: %.4f (< %.2f)", r_in, kFullRatioTol,
               r_rev, 1.0 - kRevivalMargin));
}

void accessibility_verdicts() {
    const AccessibilityBudget b{1.0, 5.0, 100.0};
    const auto a = accessibility(3, b);
    const auto c = accessibility(50, b);
    const auto d = accessibility(1000000, b);
    const bool ok = a.verdict == AccessibilityVerdict::nonfunctional && c.verdict == AccessibilityVerdict::accessible &&
                    c.n_lower == 5 && c.n_upper == 100 && d.verdict == AccessibilityVerdict::inaccessible;
    report(ok, "accessibility_verdicts",
           fmt("N=3 %s, N=50 %s (N_l=%lld, N_u=%lld), N=1e6 %s", to_string(a.verdict).c_str(), to_string(c.verdict).c_str(),
               c.n_lower, c.n_upper, to_string(d.verdict).c_str()));
}

void information_deficit() {
    const GeneralState s({std::sqrt(0.6), std::sqrt(0.4)});
    const double closed = 2 * 0.01 * 0.01 * (std::log(0.6) - std::log(0.4)) / 0.2;
    const auto r1 = wprc_info_deficit(s, 0.01);
    const auto r2 = wprc_info_deficit(s, 0.005);
    const double rel = std::abs(*r1.deficit - closed) / closed;
    const double ratio = std::abs(*r1.deficit_remainder) / std::abs(*r2.deficit_remainder);
    const bool ok = rel <= kDeficitRelTol && std::abs(ratio - kHalvingTarget) <= kHalvingRelTol * kHalvingTarget;
    report(ok, "information_deficit",
           fmt("eps=0.01: exact %.6e vs 2A %.6e (rel %.2e, tol %.2f); remainder ratio on halving eps %.3f (16 +- 30%%)",
               *r1.deficit, closed, rel, kDeficitRelTol, ratio));
}

void property_suites() {
    std::mt19937_64 rng(7);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    int mono = 0, mono_ok = 0, prc_n = 0, prc_ok = 0, po_ok = 0;
    for (int trial = 0; trial < 20; ++trial) {
        const auto spec = make_apparatus(Disordered{0.01, 0.2, rng()}, 2 + rng() % 40, EquatorialInits{});
        double e1 = 0.001 + 0.3 * u(rng), e2 = 0.001 + 0.3 * u(rng);
        if (e1 > e2) std::swap(e1, e2);
        const auto c1 = WindowConfig::defaults_for(spec, e1, 100.0);
        const auto w1 = wprc_set(spec, c1);
        const auto w2 = wprc_set(spec, WindowConfig::defaults_for(spec, e2, 100.0));
        for (const auto& iv : w1.intervals()) {
            ++mono;
            for (const auto& jv : w2.intervals())
                if (jv.lo - 2 * c1.refine_tol <= iv.lo && iv.hi <= jv.hi + 2 * c1.refine_tol) {
                    ++mono_ok;
                    break;
                }
        }
        const auto prc = prc_times(spec, c1);
        for (double t : prc.points()) {
            ++prc_n;
            for (const auto& iv : w1.intervals())
                if (iv.lo - c1.refine_tol <= t && t <= iv.hi + c1.refine_tol) {
                    ++prc_ok;
                    break;
                }
        }
    }
    auto leq = [](ApparatusPoint a, ApparatusPoint b) {
        const auto q = compare_quality(a, b);
        return q == Quality::a_better || q == Quality::equal;
    };
    const int po_trials = 3000;
    for (int i = 0; i < po_trials; ++i) {
        const ApparatusPoint a{double(rng() % 4), double(rng() % 4)}, b{double(rng() % 4), double(rng() % 4)},
            c{double(rng() % 4), double(rng() % 4)};
        const bool refl = leq(a, a);
        const bool anti = !(leq(a, b) && leq(b, a)) || (a.n == b.n && a.t == b.t);
        const bool trans = !(leq(a, b) && leq(b, c)) || leq(a, c);
        po_ok += refl && anti && trans;
    }

    // byte-identical outputs of seeded runs, across repeats and thread counts
    RunConfig cfg = parse_config(Json::parse(R"({
      "schema_version": 1,
      "apparatus": {"n": 40, "ensemble": {"kind": "disordered", "interval": [0, 0.2], "seed": 17}},
      "window": {"epsilon": 0.01, "t_max": 300},
      "observer": {"window": [0, 300], "distribution": {"kind": "uniform"}},
      "budget": {"e0": 1, "noise_floor": 5, "max_energy": 100},
      "region": {"n_range": [1, 100], "t_range": [1, 300]},
      "sweep": {"n_values": [10, 40], "seeds": [1, 2, 3], "ensembles": [{"kind": "ordered", "g": 0.1}, {"kind": "disordered", "interval": [0, 0.2]}]}
    })"));
    const bool det = commands::windows(cfg, {std::nullopt, 1}) == commands::windows(cfg, {std::nullopt, 4}) &&
                     commands::sweep(cfg, {std::nullopt, 1}) == commands::sweep(cfg, {std::nullopt, 3}) &&
                     commands::sweep(cfg, {std::nullopt, 1}) == commands::sweep(cfg, {std::nullopt, 1});

    const bool ok = mono_ok == mono && prc_ok == prc_n && prc_n > 0 && po_ok == po_trials && det;
    report(ok, "property_suites",
           fmt("eps-monotone %d/%d, PRC in WPRC %d/%d, partial order %d/%d, deterministic outputs %s", mono_ok, mono, prc_ok,
               prc_n, po_ok, po_trials, det ? "yes" : "no"));
}

}  // namespace

int main() {
    oracle_equivalence();
    ordered_prc_lattice();
    variance_law();
    monotone_depth();
    disorder_superiority();
    reliability_integrals();
    accessibility_verdicts();
    information_deficit();
    property_suites();
    std::printf("%s: %d failing criteria\n", failures ? "FAILED" : "ALL PASSED", failures);
    return failures ? 1 : 0;
}
