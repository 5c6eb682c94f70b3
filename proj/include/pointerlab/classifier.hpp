#pragma once

#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "pointerlab/windows.hpp"

namespace pointerlab {

struct UniformTimes {};

/// Gaussian with mean t_m and sigma = delta_t / 6, truncated to t >= 0 and renormalised.
struct TruncatedGaussianTimes {
    double t_m;
    double delta_t;
};

using TimeDistribution = std::variant<UniformTimes, TruncatedGaussianTimes>;

/// When an observer reads the apparatus: a window [t_i, t_f] and a distribution of
/// measurement times. Uniform means uniform on the window.
class ObserverModel {
public:
    ObserverModel(Interval window, TimeDistribution distribution);

    const Interval& window() const { return window_; }
    const TimeDistribution& distribution() const { return distribution_; }

    /// Probability mass of [lo, hi] under p(t).
    double mass(double lo, double hi) const;

private:
    Interval window_;
    TimeDistribution distribution_;
};

enum class ReliabilityVerdict { reliable_over_window, not_reliable, perfectly_reliable_on_horizon };

std::string to_string(ReliabilityVerdict v);

struct ReliabilityReport {
    double theta_big = 0.0;   // integral of p over the window
    double theta_eps = 0.0;   // integral of p over window ∩ WPRC set
    double p_good_prc = 0.0;  // P(G) for the exact-orthogonality set
    ReliabilityVerdict verdict = ReliabilityVerdict::not_reliable;
};

struct ReliabilityOptions {
    /// Theta below this is rejected as a window/distribution mismatch.
    double theta_min = 0.99;
    /// theta_eps >= Theta (1 - rel_tol) counts as theta_eps = Theta.
    double rel_tol = 1e-6;
};

/// Raised when the observer's window holds too little of its own time distribution.
class WindowMismatchError : public ValidationError {
public:
    using ValidationError::ValidationError;
};

ReliabilityReport reliability(const ObserverModel& obs, const TimeSet& wprc, const TimeSet& prc,
                              const ReliabilityOptions& opts = {});

struct AccessibilityBudget {
    double e0;
    double noise_floor;
    double max_energy;

    void validate() const;
};

enum class AccessibilityVerdict { nonfunctional, accessible, inaccessible };

std::string to_string(AccessibilityVerdict v);

struct AccessibilityReport {
    AccessibilityVerdict verdict;
    long long n_lower;  // ceil(noise_floor / e0)
    long long n_upper;  // floor(max_energy / e0)
};

/// Size verdict with E_0 = N e0. N == N_l and N == N_u count as accessible.
AccessibilityReport accessibility(long long n, const AccessibilityBudget& budget);

struct RegionSpec {
    double n_min, n_max;
    double t_min, t_max;

    void validate() const;
};

struct DiagramPoint {
    bool in_region;
    double n;
    double t;
};

DiagramPoint place_in_diagram(double n, double t, const RegionSpec& region);

enum class Quality { a_better, b_better, incomparable, equal };

std::string to_string(Quality q);

struct ApparatusPoint {
    double n;
    double t;
};

/// Fewer qubits and longer windows is better; conflicting dominance is incomparable.
Quality compare_quality(const ApparatusPoint& a, const ApparatusPoint& b);

/// Containment of window families: `a` is more reliable than `b` when every
/// interval of `b` lies inside some interval of `a`. Non-nested families are incomparable.
Quality compare_window_families(const TimeSet& a, const TimeSet& b);

struct ApparatusAnalysis {
    std::optional<std::uint64_t> seed;
    double longest_window = 0.0;
    double coverage_fraction = 0.0;    // measure(WPRC) / t_max
    std::size_t revival_count = 0;     // including t = 0
    double revivals_per_time = 0.0;
    /// Smallest gap between consecutive revivals; t_max when only t = 0 is on the horizon.
    double min_revival_gap = 0.0;
    ReliabilityReport reliability;
};

struct OrderDisorderReport {
    double g;
    Interval coupling_interval;
    std::size_t n;
    double half_period;  // pi / 2g
    ApparatusAnalysis ordered;
    std::vector<ApparatusAnalysis> disordered;  // in seed order
    double median_disordered_longest = 0.0;
    double median_disordered_coverage = 0.0;
    double median_disordered_revival_rate = 0.0;
    bool disorder_longer_windows = false;      // median longest window > ordered longest window
    bool disorder_gaps_exceed_half_period = false;  // median min revival gap > pi / 2g
    bool random_spike_risk = false;            // median disordered coverage < ordered coverage
    std::vector<std::string> recommendations;
};

/// Ordered g versus disordered on `coupling_interval` (g must lie inside), both with
/// equatorial inits, analysed on the same window config and observer. Seeds are
/// processed by up to `threads` workers and merged in seed order.
OrderDisorderReport order_vs_disorder_report(double g, Interval coupling_interval, std::size_t n,
                                             const std::vector<std::uint64_t>& seeds,
                                             const WindowConfig& cfg, const ObserverModel& obs,
                                             const ReliabilityOptions& opts = {},
                                             unsigned threads = 1);

/// Full single-apparatus analysis used by the report and the sweep.
ApparatusAnalysis analyse_apparatus(const ApparatusSpec& spec, const WindowConfig& cfg,
                                    const ObserverModel& obs, const ReliabilityOptions& opts);

}  // namespace pointerlab
