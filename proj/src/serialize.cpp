#include "pointerlab/serialize.hpp"

#include <charconv>
#include <system_error>

namespace pointerlab {

std::string format_double(double x) {
    char buf[64];
    const auto res = std::to_chars(buf, buf + sizeof buf, x);
    if (res.ec != std::errc{}) throw std::runtime_error("format_double: conversion failed");
    return {buf, res.ptr};
}

Json to_json(const TimeSet& ts) {
    Json intervals = Json::array();
    for (const auto& iv : ts.intervals()) intervals.push_back({iv.lo, iv.hi});
    return Json{{"horizon", {ts.horizon().lo, ts.horizon().hi}},
                {"intervals", std::move(intervals)},
                {"points", ts.points()}};
}

TimeSet timeset_from_json(const Json& j) {
    try {
        const auto h = j.at("horizon").get<std::vector<double>>();
        if (h.size() != 2) throw ValidationError("time set horizon must be [lo, hi]");
        std::vector<Interval> intervals;
        for (const auto& iv : j.at("intervals")) {
            const auto pair = iv.get<std::vector<double>>();
            if (pair.size() != 2) throw ValidationError("time set interval must be [lo, hi]");
            intervals.push_back({pair[0], pair[1]});
        }
        return {Interval{h[0], h[1]}, std::move(intervals), j.at("points").get<std::vector<double>>()};
    } catch (const nlohmann::json::exception& e) {
        throw ValidationError(std::string("malformed time set JSON: ") + e.what());
    }
}

Json to_json(const Revivals& r) {
    return Json{{"times", r.times}, {"degenerate", r.degenerate}};
}

Json to_json(const LongestWindow& w) {
    Json interval = nullptr;
    if (w.interval) interval = {w.interval->lo, w.interval->hi};
    return Json{{"interval", interval}, {"duration", w.duration}};
}

Json to_json(const ReliabilityReport& r) {
    return Json{{"theta_big", r.theta_big},
                {"theta_eps", r.theta_eps},
                {"p_good_prc", r.p_good_prc},
                {"verdict", to_string(r.verdict)}};
}

Json to_json(const AccessibilityReport& r) {
    return Json{{"verdict", to_string(r.verdict)}, {"n_lower", r.n_lower}, {"n_upper", r.n_upper}};
}

Json to_json(const DiagramPoint& p) {
    return Json{{"in_region", p.in_region}, {"n", p.n}, {"t", p.t}};
}

Json to_json(const InfoReport& r) {
    Json j{{"s_gamma", r.s_gamma},
           {"s_xi", r.s_xi},
           {"s_total", r.s_total},
           {"mutual_info", r.mutual_info},
           {"mutual_info_initial", r.mutual_info_initial}};
    if (r.epsilon) {
        j["epsilon"] = *r.epsilon;
        j["deficit"] = *r.deficit;
        j["deficit_leading_order"] = *r.deficit_leading_order;
        j["deficit_remainder"] = *r.deficit_remainder;
        j["degenerate"] = r.degenerate;
        j["expansion_valid"] = r.expansion_valid;
    }
    return j;
}

Json to_json(const ApparatusAnalysis& a) {
    Json j;
    j["seed"] = a.seed ? Json(*a.seed) : Json(nullptr);
    j["longest_window"] = a.longest_window;
    j["coverage_fraction"] = a.coverage_fraction;
    j["revival_count"] = a.revival_count;
    j["revivals_per_time"] = a.revivals_per_time;
    j["min_revival_gap"] = a.min_revival_gap;
    j["reliability"] = to_json(a.reliability);
    return j;
}

Json to_json(const OrderDisorderReport& r) {
    Json disordered = Json::array();
    for (const auto& d : r.disordered) disordered.push_back(to_json(d));
    return Json{{"g", r.g},
                {"interval", {r.coupling_interval.lo, r.coupling_interval.hi}},
                {"n", r.n},
                {"half_period", r.half_period},
                {"ordered", to_json(r.ordered)},
                {"disordered", std::move(disordered)},
                {"median_disordered_longest", r.median_disordered_longest},
                {"median_disordered_coverage", r.median_disordered_coverage},
                {"median_disordered_revival_rate", r.median_disordered_revival_rate},
                {"disorder_longer_windows", r.disorder_longer_windows},
                {"disorder_gaps_exceed_half_period", r.disorder_gaps_exceed_half_period},
                {"random_spike_risk", r.random_spike_risk},
                {"recommendations", r.recommendations}};
}

}  // namespace pointerlab
