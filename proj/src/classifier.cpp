#include "pointerlab/classifier.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <limits>
#include <numbers>
#include <thread>

#include "pointerlab/model.hpp"

namespace pointerlab {

namespace {

// Probability that a standard normal variable lies in [x_lo, x_hi], computed
// from erfc on the side of the tail to avoid cancellation.
double normal_mass(double x_lo, double x_hi) {
    const double s = std::numbers::sqrt2;
    if (x_lo >= 0.0) return 0.5 * (std::erfc(x_lo / s) - std::erfc(x_hi / s));
    if (x_hi <= 0.0) return 0.5 * (std::erfc(-x_hi / s) - std::erfc(-x_lo / s));
    return 1.0 - 0.5 * (std::erfc(-x_lo / s) + std::erfc(x_hi / s));
}

double median(std::vector<double> v) {
    if (v.empty()) return 0.0;
    std::sort(v.begin(), v.end());
    const std::size_t m = v.size() / 2;
    return v.size() % 2 ? v[m] : 0.5 * (v[m - 1] + v[m]);
}

bool covers(const TimeSet& outer, const Interval& iv) {
    return std::any_of(outer.intervals().begin(), outer.intervals().end(),
                       [&](const Interval& o) { return o.lo <= iv.lo && iv.hi <= o.hi; });
}

}  // namespace

ObserverModel::ObserverModel(Interval window, TimeDistribution distribution)
    : window_(window), distribution_(distribution) {
    if (!(window_.lo < window_.hi) || window_.lo < 0.0 || !std::isfinite(window_.hi)) {
        throw ValidationError("observer window needs 0 <= t_i < t_f");
    }
    if (const auto* g = std::get_if<TruncatedGaussianTimes>(&distribution_)) {
        if (!(g->delta_t > 0.0) || !std::isfinite(g->delta_t) || !std::isfinite(g->t_m)) {
            throw ValidationError("observer delta_t must be positive");
        }
    }
}

double ObserverModel::mass(double lo, double hi) const {
    if (std::holds_alternative<UniformTimes>(distribution_)) {
        const double a = std::max(lo, window_.lo);
        const double b = std::min(hi, window_.hi);
        return b > a ? (b - a) / window_.length() : 0.0;
    }
    const auto& g = std::get<TruncatedGaussianTimes>(distribution_);
    lo = std::max(lo, 0.0);
    if (!(hi > lo)) return 0.0;
    const double sigma = g.delta_t / 6.0;
    const double support = normal_mass(-g.t_m / sigma, std::numeric_limits<double>::infinity());
    return normal_mass((lo - g.t_m) / sigma, (hi - g.t_m) / sigma) / support;
}

std::string to_string(ReliabilityVerdict v) {
    switch (v) {
        case ReliabilityVerdict::reliable_over_window: return "reliable_over_window";
        case ReliabilityVerdict::not_reliable: return "not_reliable";
        case ReliabilityVerdict::perfectly_reliable_on_horizon: return "perfectly_reliable_on_horizon";
    }
    return "unknown";
}

ReliabilityReport reliability(const ObserverModel& obs, const TimeSet& wprc, const TimeSet& prc,
                              const ReliabilityOptions& opts) {
    const Interval& w = obs.window();
    for (const TimeSet* ts : {&wprc, &prc}) {
        if (w.lo < ts->horizon().lo || w.hi > ts->horizon().hi) {
            throw ValidationError("observer window is not inside the analysed horizon");
        }
    }

    ReliabilityReport r;
    r.theta_big = obs.mass(w.lo, w.hi);
    if (r.theta_big < opts.theta_min) {
        throw WindowMismatchError("window/distribution mismatch: Theta = " +
                                  std::to_string(r.theta_big) + " < " +
                                  std::to_string(opts.theta_min));
    }

    for (const auto& iv : wprc.intervals()) {
        r.theta_eps += obs.mass(std::max(iv.lo, w.lo), std::min(iv.hi, w.hi));
    }
    r.theta_eps = std::min(r.theta_eps, r.theta_big);

    // Isolated points carry no probability; only intervals of the PRC set could.
    double good = 0.0;
    for (const auto& iv : prc.intervals()) {
        good += obs.mass(std::max(iv.lo, w.lo), std::min(iv.hi, w.hi));
    }
    r.p_good_prc = good / r.theta_big;

    if (r.theta_eps >= r.theta_big * (1.0 - opts.rel_tol)) {
        const Interval& h = wprc.horizon();
        r.verdict = covers(wprc, h) ? ReliabilityVerdict::perfectly_reliable_on_horizon
                                    : ReliabilityVerdict::reliable_over_window;
    } else {
        r.verdict = ReliabilityVerdict::not_reliable;
    }
    return r;
}

void AccessibilityBudget::validate() const {
    if (!(e0 > 0.0 && noise_floor > 0.0 && max_energy > 0.0)) {
        throw ValidationError("budget energies must be positive");
    }
    if (!(noise_floor < max_energy)) {
        throw ValidationError("budget noise floor must be below the maximal energy");
    }
}

std::string to_string(AccessibilityVerdict v) {
    switch (v) {
        case AccessibilityVerdict::nonfunctional: return "nonfunctional";
        case AccessibilityVerdict::accessible: return "accessible";
        case AccessibilityVerdict::inaccessible: return "inaccessible";
    }
    return "unknown";
}

AccessibilityReport accessibility(long long n, const AccessibilityBudget& budget) {
    if (n < 1) throw ValidationError("apparatus size N must be at least 1");
    budget.validate();
    AccessibilityReport r{};
    r.n_lower = static_cast<long long>(std::ceil(budget.noise_floor / budget.e0));
    r.n_upper = static_cast<long long>(std::floor(budget.max_energy / budget.e0));
    if (n < r.n_lower) {
        r.verdict = AccessibilityVerdict::nonfunctional;
    } else if (n > r.n_upper) {
        r.verdict = AccessibilityVerdict::inaccessible;
    } else {
        r.verdict = AccessibilityVerdict::accessible;
    }
    return r;
}

void RegionSpec::validate() const {
    if (!(n_min <= n_max) || !(t_min <= t_max)) throw ValidationError("region ranges must be nonempty");
}

DiagramPoint place_in_diagram(double n, double t, const RegionSpec& region) {
    region.validate();
    if (!(t >= 0.0)) throw ValidationError("window duration must be nonnegative");
    const bool inside = region.n_min <= n && n <= region.n_max && region.t_min <= t && t <= region.t_max;
    return {inside, n, t};
}

std::string to_string(Quality q) {
    switch (q) {
        case Quality::a_better: return "a_better";
        case Quality::b_better: return "b_better";
        case Quality::incomparable: return "incomparable";
        case Quality::equal: return "equal";
    }
    return "unknown";
}

Quality compare_quality(const ApparatusPoint& a, const ApparatusPoint& b) {
    if (a.n == b.n && a.t == b.t) return Quality::equal;
    if (a.n <= b.n && a.t >= b.t) return Quality::a_better;
    if (b.n <= a.n && b.t >= a.t) return Quality::b_better;
    return Quality::incomparable;
}

Quality compare_window_families(const TimeSet& a, const TimeSet& b) {
    const bool a_holds_b = std::all_of(b.intervals().begin(), b.intervals().end(),
                                       [&](const Interval& iv) { return covers(a, iv); });
    const bool b_holds_a = std::all_of(a.intervals().begin(), a.intervals().end(),
                                       [&](const Interval& iv) { return covers(b, iv); });
    if (a_holds_b && b_holds_a) return Quality::equal;
    if (a_holds_b) return Quality::a_better;
    if (b_holds_a) return Quality::b_better;
    return Quality::incomparable;
}

ApparatusAnalysis analyse_apparatus(const ApparatusSpec& spec, const WindowConfig& cfg,
                                    const ObserverModel& obs, const ReliabilityOptions& opts) {
    const TimeSet wprc = wprc_set(spec, cfg);
    const TimeSet prc = prc_times(spec, cfg);
    const Revivals rev = revivals(spec, cfg);

    ApparatusAnalysis a;
    a.longest_window = longest_window(wprc).duration;
    a.coverage_fraction = wprc.measure() / cfg.t_max;
    a.revival_count = rev.times.size();
    a.revivals_per_time = static_cast<double>(rev.times.size()) / cfg.t_max;
    a.min_revival_gap = cfg.t_max;
    for (std::size_t i = 1; i < rev.times.size(); ++i) {
        a.min_revival_gap = std::min(a.min_revival_gap, rev.times[i] - rev.times[i - 1]);
    }
    a.reliability = reliability(obs, wprc, prc, opts);
    return a;
}

OrderDisorderReport order_vs_disorder_report(double g, Interval coupling_interval, std::size_t n,
                                             const std::vector<std::uint64_t>& seeds,
                                             const WindowConfig& cfg, const ObserverModel& obs,
                                             const ReliabilityOptions& opts, unsigned threads) {
    if (!coupling_interval.contains(g)) {
        throw ValidationError("ordered coupling g must lie inside the disordered interval");
    }
    if (seeds.empty()) throw ValidationError("order/disorder comparison needs at least one seed");

    OrderDisorderReport rep;
    rep.g = g;
    rep.coupling_interval = coupling_interval;
    rep.n = n;
    rep.half_period = std::numbers::pi / (2.0 * g);

    const ApparatusSpec ordered = make_apparatus(Ordered{g}, n, EquatorialInits{});
    rep.ordered = analyse_apparatus(ordered, cfg, obs, opts);

    rep.disordered.resize(seeds.size());
    std::atomic<std::size_t> next{0};
    auto worker = [&] {
        for (std::size_t i = next++; i < seeds.size(); i = next++) {
            const ApparatusSpec spec = make_apparatus(
                Disordered{coupling_interval.lo, coupling_interval.hi, seeds[i]}, n, EquatorialInits{});
            rep.disordered[i] = analyse_apparatus(spec, cfg, obs, opts);
            rep.disordered[i].seed = seeds[i];
        }
    };
    {
        const std::size_t workers = std::clamp<std::size_t>(threads, 1, seeds.size());
        std::vector<std::jthread> pool;
        for (std::size_t w = 1; w < workers; ++w) pool.emplace_back(worker);
        worker();
    }

    std::vector<double> longest, coverage, rate, gaps;
    for (const auto& d : rep.disordered) {
        longest.push_back(d.longest_window);
        coverage.push_back(d.coverage_fraction);
        rate.push_back(d.revivals_per_time);
        gaps.push_back(d.min_revival_gap);
    }
    rep.median_disordered_longest = median(longest);
    rep.median_disordered_coverage = median(coverage);
    rep.median_disordered_revival_rate = median(rate);
    rep.disorder_longer_windows = rep.median_disordered_longest > rep.ordered.longest_window;
    rep.disorder_gaps_exceed_half_period = median(gaps) > rep.half_period;
    rep.random_spike_risk = rep.median_disordered_coverage < rep.ordered.coverage_fraction;

    if (rep.disorder_longer_windows) {
        rep.recommendations.emplace_back(
            "disordered: longer measurement windows for the same N; choose it when the "
            "energy budget matters more than predictability");
    }
    rep.recommendations.emplace_back(
        "ordered: availability is known in closed form and windows repeat with period pi/2g; "
        "choose it when the coupling is known and a larger apparatus is affordable");
    if (rep.random_spike_risk) {
        rep.recommendations.emplace_back(
            "disordered at this N: availability spikes above epsilon at unpredictable times; "
            "increase N before relying on it");
    }
    return rep;
}

}  // namespace pointerlab
