#include "pointerlab/windows.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <thread>

#include "pointerlab/model.hpp"

namespace pointerlab {

namespace {

constexpr int kMaxBisections = 200;

template <typename Fn>
std::vector<double> evaluate_grid(const std::vector<double>& grid, unsigned threads, Fn fn) {
    std::vector<double> out(grid.size());
    const std::size_t workers = std::clamp<std::size_t>(threads, 1, grid.size() ? grid.size() : 1);
    if (workers == 1) {
        for (std::size_t i = 0; i < grid.size(); ++i) out[i] = fn(grid[i]);
        return out;
    }
    std::vector<std::jthread> pool;
    const std::size_t chunk = (grid.size() + workers - 1) / workers;
    for (std::size_t w = 0; w < workers; ++w) {
        const std::size_t begin = w * chunk;
        const std::size_t end = std::min(grid.size(), begin + chunk);
        pool.emplace_back([&, begin, end] {
            for (std::size_t i = begin; i < end; ++i) out[i] = fn(grid[i]);
        });
    }
    return out;
}

// Bisects a bracket whose ends disagree on (f > 0). Stops once the bracket is
// narrower than `tol` and |f(mid)| <= `value_tol`, or at machine resolution.
template <typename Fn>
double bisect(Fn f, double lo, double hi, double tol, double value_tol) {
    const bool lo_positive = f(lo) > 0.0;
    for (int it = 0; it < kMaxBisections; ++it) {
        const double mid = 0.5 * (lo + hi);
        if (mid <= lo || mid >= hi) break;
        const double f_mid = f(mid);
        if (hi - lo <= tol && std::abs(f_mid) <= value_tol) return mid;
        if ((f_mid > 0.0) == lo_positive) {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    return 0.5 * (lo + hi);
}

}  // namespace

TimeSet::TimeSet(Interval horizon, std::vector<Interval> intervals, std::vector<double> points)
    : horizon_(horizon), intervals_(std::move(intervals)), points_(std::move(points)) {
    for (std::size_t i = 0; i < intervals_.size(); ++i) {
        const auto& iv = intervals_[i];
        if (!(iv.lo < iv.hi)) throw ValidationError("time set interval must have lo < hi");
        if (iv.lo < horizon_.lo || iv.hi > horizon_.hi) {
            throw ValidationError("time set interval lies outside the horizon");
        }
        if (i > 0 && !(intervals_[i - 1].hi < iv.lo)) {
            throw ValidationError("time set intervals must be sorted and disjoint");
        }
    }
    for (std::size_t i = 0; i < points_.size(); ++i) {
        const double p = points_[i];
        if (!horizon_.contains(p)) throw ValidationError("time set point lies outside the horizon");
        if (i > 0 && !(points_[i - 1] < p)) throw ValidationError("time set points must be sorted");
        for (const auto& iv : intervals_) {
            if (iv.lo < p && p < iv.hi) {
                throw ValidationError("time set point lies inside an interval");
            }
        }
    }
}

double TimeSet::measure() const {
    double m = 0.0;
    for (const auto& iv : intervals_) m += iv.length();
    return m;
}

double TimeSet::measure_within(double lo, double hi) const {
    double m = 0.0;
    for (const auto& iv : intervals_) {
        const double a = std::max(lo, iv.lo);
        const double b = std::min(hi, iv.hi);
        if (b > a) m += b - a;
    }
    return m;
}

bool TimeSet::contains(double t) const {
    for (const auto& iv : intervals_) {
        if (iv.contains(t)) return true;
    }
    return std::binary_search(points_.begin(), points_.end(), t);
}

WindowConfig WindowConfig::defaults_for(const ApparatusSpec& spec, double epsilon, double t_max) {
    WindowConfig cfg;
    cfg.epsilon = epsilon;
    cfg.t_max = t_max;
    const double g = spec.max_coupling();
    cfg.grid_step = g > 0.0 ? std::numbers::pi / (32.0 * g) : t_max / 64.0;
    cfg.grid_step = std::min(cfg.grid_step, t_max / 2.0);
    cfg.refine_tol = cfg.grid_step * 1e-6;
    cfg.revival_eta = 0.01;
    return cfg;
}

void WindowConfig::validate() const {
    if (!(epsilon > 0.0 && epsilon < 1.0)) throw ValidationError("epsilon must lie in (0, 1)");
    if (!(revival_eta > 0.0 && revival_eta < 1.0)) {
        throw ValidationError("revival_eta must lie in (0, 1)");
    }
    if (!(refine_tol > 0.0 && refine_tol < grid_step && grid_step < t_max) ||
        !std::isfinite(t_max)) {
        throw ValidationError("window config needs 0 < refine_tol < grid_step < t_max");
    }
}

std::vector<double> uniform_grid(double t_max, double step) {
    std::vector<double> grid;
    const auto cells = static_cast<std::size_t>(std::ceil(t_max / step));
    grid.reserve(cells + 1);
    for (std::size_t i = 0; i < cells; ++i) {
        const double t = static_cast<double>(i) * step;
        if (t >= t_max) break;
        grid.push_back(t);
    }
    grid.push_back(t_max);
    return grid;
}

bool is_trivially_coherent(const ApparatusSpec& spec) {
    const auto& g = spec.couplings();
    for (std::size_t k = 0; k < spec.size(); ++k) {
        if (g[k] == 0.0) continue;
        const auto& q = spec.inits()[k];
        const double w = q.up_weight() + q.down_weight();
        const double d = q.down_weight() - q.up_weight();
        if (w * w - d * d > kNormTolerance) return false;
    }
    return true;
}

TimeSet wprc_set(const ApparatusSpec& spec, const WindowConfig& cfg,
                 std::vector<Warning>* warnings) {
    cfg.validate();
    const double g_max = spec.max_coupling();
    if (warnings && g_max > 0.0 && cfg.grid_step > std::numbers::pi / (4.0 * g_max)) {
        warnings->push_back({"coarse_grid", "grid_step " + std::to_string(cfg.grid_step) +
                                                " exceeds pi/(4 max g) = " +
                                                std::to_string(std::numbers::pi / (4.0 * g_max))});
    }

    const Interval horizon{0.0, cfg.t_max};
    const auto grid = uniform_grid(cfg.t_max, cfg.grid_step);
    auto avail = [&](double t) { return availability(spec, t); };
    auto slope = [&](double t) { return availability_sq_derivative(spec, t); };
    const auto a_grid = evaluate_grid(grid, cfg.threads, avail);
    const auto d_grid = evaluate_grid(grid, cfg.threads, slope);

    // Extrema inside a cell are added as extra samples so that a dip below eps
    // (or a spike above it) narrower than the grid step is not stepped over.
    std::vector<double> ts;
    std::vector<double> a;
    ts.reserve(grid.size());
    a.reserve(grid.size());
    for (std::size_t i = 0; i < grid.size(); ++i) {
        if (i > 0 && d_grid[i - 1] != 0.0 && d_grid[i] != 0.0 &&
            (d_grid[i - 1] > 0.0) != (d_grid[i] > 0.0)) {
            const double t_ext = bisect(slope, grid[i - 1], grid[i], cfg.refine_tol,
                                        std::numeric_limits<double>::infinity());
            if (t_ext > ts.back() && t_ext < grid[i]) {
                ts.push_back(t_ext);
                a.push_back(avail(t_ext));
            }
        }
        ts.push_back(grid[i]);
        a.push_back(a_grid[i]);
    }

    const double eps = cfg.epsilon;
    auto margin = [&](double t) { return eps - avail(t); };
    const double value_tol = eps * 1e-6;

    std::vector<Interval> intervals;
    bool is_open = a[0] < eps;
    double open_at = ts[0];
    for (std::size_t i = 0; i + 1 < ts.size(); ++i) {
        const bool below_here = a[i] < eps;
        const bool below_next = a[i + 1] < eps;
        if (below_here == below_next) continue;
        const double edge = bisect(margin, ts[i], ts[i + 1], cfg.refine_tol, value_tol);
        if (below_next) {
            is_open = true;
            open_at = edge;
        } else {
            if (is_open && edge > open_at) intervals.push_back({open_at, edge});
            is_open = false;
        }
    }
    if (is_open && cfg.t_max > open_at) intervals.push_back({open_at, cfg.t_max});
    return {horizon, std::move(intervals), {}};
}

TimeSet prc_times(const ApparatusSpec& spec, const WindowConfig& cfg) {
    cfg.validate();
    const auto grid = uniform_grid(cfg.t_max, cfg.grid_step);
    std::vector<double> zeros;

    for (std::size_t k = 0; k < spec.size(); ++k) {
        const double g = spec.couplings()[k];
        if (g == 0.0) continue;
        const QubitInit& q = spec.inits()[k];
        auto re = [&](double t) { return overlap_factor(g, q, t).real(); };
        const double floor = 1e-9 + 4.0 * std::abs(g) * cfg.refine_tol;
        auto accept = [&](double t) {
            if (std::abs(overlap_factor(g, q, t)) <= floor) zeros.push_back(t);
        };

        double prev = re(grid[0]);
        if (prev == 0.0) accept(grid[0]);
        for (std::size_t i = 0; i + 1 < grid.size(); ++i) {
            const double next = re(grid[i + 1]);
            if (next == 0.0) {
                accept(grid[i + 1]);
            } else if (prev != 0.0 && (prev > 0.0) != (next > 0.0)) {
                accept(bisect(re, grid[i], grid[i + 1], cfg.refine_tol, floor));
            }
            prev = next;
        }
    }

    std::sort(zeros.begin(), zeros.end());
    std::vector<double> points;
    for (double z : zeros) {
        if (points.empty() || z - points.back() > cfg.refine_tol) points.push_back(z);
    }
    return {Interval{0.0, cfg.t_max}, {}, std::move(points)};
}

Revivals revivals(const ApparatusSpec& spec, const WindowConfig& cfg) {
    cfg.validate();
    if (is_trivially_coherent(spec)) return {{0.0, cfg.t_max}, true};

    const auto grid = uniform_grid(cfg.t_max, cfg.grid_step);
    auto slope = [&](double t) { return availability_sq_derivative(spec, t); };
    const auto d = evaluate_grid(grid, cfg.threads, slope);
    const double threshold = 1.0 - cfg.revival_eta;

    Revivals out;
    out.times.push_back(0.0);
    for (std::size_t i = 0; i + 1 < grid.size(); ++i) {
        if (!(d[i] > 0.0 && d[i + 1] <= 0.0)) continue;
        const double t = d[i + 1] == 0.0
                             ? grid[i + 1]
                             : bisect(slope, grid[i], grid[i + 1], cfg.refine_tol,
                                      std::numeric_limits<double>::infinity());
        if (availability(spec, t) >= threshold && t > out.times.back()) out.times.push_back(t);
    }
    return out;
}

LongestWindow longest_window(const TimeSet& ts) {
    LongestWindow best;
    for (const auto& iv : ts.intervals()) {
        if (!best.interval || iv.length() > best.duration) {
            best.interval = iv;
            best.duration = iv.length();
        }
    }
    return best;
}

}  // namespace pointerlab
