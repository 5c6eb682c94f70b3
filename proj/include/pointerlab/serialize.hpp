#pragma once

#include <string>

#include <json.hpp>

#include "pointerlab/classifier.hpp"
#include "pointerlab/information.hpp"
#include "pointerlab/windows.hpp"

namespace pointerlab {

using Json = nlohmann::ordered_json;

/// Shortest decimal text that parses back to the same double.
std::string format_double(double x);

/// {"horizon":[0,tmax],"intervals":[[lo,hi],...],"points":[...]}
Json to_json(const TimeSet& ts);
TimeSet timeset_from_json(const Json& j);

Json to_json(const Revivals& r);
Json to_json(const LongestWindow& w);
Json to_json(const ReliabilityReport& r);
Json to_json(const AccessibilityReport& r);
Json to_json(const DiagramPoint& p);
Json to_json(const InfoReport& r);
Json to_json(const ApparatusAnalysis& a);
Json to_json(const OrderDisorderReport& r);

}  // namespace pointerlab
