#pragma once

#include <cmath>
#include <complex>
#include <numbers>
#include <random>
#include <vector>

#include "pointerlab/model.hpp"

// Reference computations written straight from the pointer-state definitions,
// independent of the library's closed forms.
namespace testsupport {

using pointerlab::ApparatusSpec;
using pointerlab::Complex;
using pointerlab::QubitInit;

inline constexpr double kPi = std::numbers::pi;

inline Complex ref_overlap(const ApparatusSpec& spec, double t) {
    Complex prod{1.0, 0.0};
    const Complex i{0.0, 1.0};
    for (std::size_t k = 0; k < spec.size(); ++k) {
        const double g = spec.couplings()[k];
        const auto& q = spec.inits()[k];
        prod *= std::norm(q.alpha()) * std::exp(-2.0 * i * g * t) +
                std::norm(q.beta()) * std::exp(2.0 * i * g * t);
    }
    return prod;
}

inline double uniform(std::mt19937_64& rng, double lo, double hi) {
    return std::uniform_real_distribution<double>(lo, hi)(rng);
}

inline QubitInit random_qubit(std::mt19937_64& rng) {
    const double theta = std::acos(uniform(rng, -1.0, 1.0));
    const double phi = uniform(rng, 0.0, 2.0 * kPi);
    return {Complex{std::cos(theta / 2), 0.0}, std::polar(std::sin(theta / 2), phi)};
}

inline ApparatusSpec random_apparatus(std::mt19937_64& rng, std::size_t n, double g_max = 0.5) {
    std::vector<double> g;
    std::vector<QubitInit> inits;
    for (std::size_t k = 0; k < n; ++k) {
        g.push_back(uniform(rng, 0.0, g_max));
        inits.push_back(random_qubit(rng));
    }
    return {g, inits};
}

inline ApparatusSpec ordered(double g, std::size_t n) {
    return pointerlab::make_apparatus(pointerlab::Ordered{g}, n, pointerlab::EquatorialInits{});
}

}  // namespace testsupport
