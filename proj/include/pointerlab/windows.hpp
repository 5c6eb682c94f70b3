#pragma once

#include <optional>
#include <string>
#include <vector>

#include "pointerlab/types.hpp"

namespace pointerlab {

struct Interval {
    double lo;
    double hi;

    double length() const { return hi - lo; }
    bool contains(double t) const { return lo <= t && t <= hi; }
    bool operator==(const Interval&) const = default;
};

/// Sorted union of disjoint closed intervals plus isolated points, on a horizon [0, t_max].
class TimeSet {
public:
    explicit TimeSet(Interval horizon) : horizon_(horizon) {}
    TimeSet(Interval horizon, std::vector<Interval> intervals, std::vector<double> points);

    const Interval& horizon() const { return horizon_; }
    const std::vector<Interval>& intervals() const { return intervals_; }
    const std::vector<double>& points() const { return points_; }
    bool empty() const { return intervals_.empty() && points_.empty(); }

    /// Lebesgue measure (points contribute nothing).
    double measure() const;
    /// Measure of the part of the set inside [lo, hi].
    double measure_within(double lo, double hi) const;
    bool contains(double t) const;

private:
    Interval horizon_;
    std::vector<Interval> intervals_;
    std::vector<double> points_;
};

struct WindowConfig {
    double epsilon = 0.01;
    double t_max = 0.0;
    double grid_step = 0.0;
    double refine_tol = 0.0;
    double revival_eta = 0.01;
    /// Worker threads for grid evaluation; results do not depend on it.
    unsigned threads = 1;

    /// grid_step = pi / (32 max g), refine_tol = grid_step * 1e-6, revival_eta = 0.01.
    static WindowConfig defaults_for(const ApparatusSpec& spec, double epsilon, double t_max);

    void validate() const;
};

struct Warning {
    std::string code;
    std::string message;
};

/// {t in [0, t_max] : A(t) < epsilon} as closed intervals. Boundaries are bisected
/// on A(t) - epsilon until they are within refine_tol and |A - epsilon| <= 1e-6 epsilon.
///
/// Appends a "coarse_grid" warning when grid_step > pi / (4 max g).
TimeSet wprc_set(const ApparatusSpec& spec, const WindowConfig& cfg,
                 std::vector<Warning>* warnings = nullptr);

/// Isolated zeros of the overlap on [0, t_max].
///
/// The overlap is a product, so it vanishes exactly where one factor does. Each
/// factor cos(2 g t) + i d sin(2 g t) is scanned for sign changes of its real part,
/// the crossing is bisected to refine_tol, and it is kept only if the whole
/// factor is zero there (|d| ~ 0). Tangential near-zeros are rejected.
TimeSet prc_times(const ApparatusSpec& spec, const WindowConfig& cfg);

struct Revivals {
    std::vector<double> times;
    /// Set when A(t) is identically 1; times then holds the horizon endpoints.
    bool degenerate = false;
};

/// Local maxima of A with A >= 1 - revival_eta, located as + to - sign changes
/// of d(A^2)/dt. t = 0 is always a revival.
Revivals revivals(const ApparatusSpec& spec, const WindowConfig& cfg);

struct LongestWindow {
    std::optional<Interval> interval;
    double duration = 0.0;
};

/// Longest interval of the set; ties go to the earliest start.
LongestWindow longest_window(const TimeSet& ts);

/// True when every factor has constant modulus, i.e. A(t) = 1 for all t.
bool is_trivially_coherent(const ApparatusSpec& spec);

/// Grid t_i = i * step on [0, t_max], with t_max always the last point.
std::vector<double> uniform_grid(double t_max, double step);

}  // namespace pointerlab
