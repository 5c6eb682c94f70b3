#pragma once

#include <optional>
#include <string>
#include <vector>

#include "pointerlab/classifier.hpp"
#include "pointerlab/serialize.hpp"

namespace pointerlab {

inline constexpr int kSchemaVersion = 1;

/// Malformed or physically invalid run configuration (CLI exit code 1).
class ConfigError : public ValidationError {
public:
    using ValidationError::ValidationError;
};

/// Explicit coupling list, used when the apparatus is given qubit by qubit.
struct ExplicitCouplings {
    std::vector<double> couplings;
};

using EnsembleConfig = std::variant<Ordered, Disordered, ExplicitCouplings>;

struct ApparatusConfig {
    std::size_t n = 0;
    EnsembleConfig ensemble;
    InitsPolicy inits = EquatorialInits{};

    ApparatusSpec build() const;
};

struct GridConfig {
    double t_max;
    double step;
};

/// Window settings; unset fields take WindowConfig::defaults_for.
struct WindowSettings {
    double epsilon = 0.01;
    double t_max = 0.0;
    std::optional<double> grid_step;
    std::optional<double> refine_tol;
    std::optional<double> revival_eta;

    WindowConfig resolve(const ApparatusSpec& spec, unsigned threads) const;
};

struct ObserverConfig {
    Interval window;
    TimeDistribution distribution;
    ReliabilityOptions options;

    ObserverModel model() const { return {window, distribution}; }
};

struct ComparisonConfig {
    ApparatusPoint a;
    ApparatusPoint b;
};

struct OrderDisorderConfig {
    double g;
    Interval interval;
    std::vector<std::uint64_t> seeds;
};

/// Ordered ensembles ignore the seed list.
struct SweepEnsemble {
    std::variant<Ordered, Interval> ensemble;

    std::string id() const;
};

struct SweepConfig {
    std::vector<std::size_t> n_values;
    std::vector<SweepEnsemble> ensembles;
    std::vector<std::uint64_t> seeds;
    InitsPolicy inits = EquatorialInits{};
};

struct InfoConfig {
    std::vector<Complex> coeffs;
    double epsilon = 0.0;
};

struct VarianceCheckConfig {
    std::size_t n = 6;
    double horizon = 1e5;
    double step = 0.05;
    double tolerance = 0.05;
    double mean_tolerance = 0.02;
};

struct OracleConfig {
    std::size_t trials = 50;
    std::size_t max_n = 10;
    std::uint64_t seed = 1;
    double tolerance = 1e-10;
    std::optional<VarianceCheckConfig> variance = VarianceCheckConfig{};
};

struct RunConfig {
    std::optional<ApparatusConfig> apparatus;
    std::optional<SystemInit> system;
    std::optional<GridConfig> grid;
    std::optional<WindowSettings> window;
    std::optional<ObserverConfig> observer;
    std::optional<AccessibilityBudget> budget;
    std::optional<RegionSpec> region;
    std::vector<ComparisonConfig> comparisons;
    std::optional<OrderDisorderConfig> order_vs_disorder;
    std::optional<SweepConfig> sweep;
    std::optional<InfoConfig> info;
    std::optional<OracleConfig> oracle;
    std::optional<std::string> output_path;
};

/// Parses and validates a run configuration. Unknown keys anywhere are errors.
RunConfig parse_config(const Json& j);
RunConfig load_config(const std::string& path);

}  // namespace pointerlab
