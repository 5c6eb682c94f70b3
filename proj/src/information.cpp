#include "pointerlab/information.hpp"

#include <cmath>
#include <string>

namespace pointerlab {

namespace {

constexpr double kEigenTolerance = 1e-10;
constexpr double kDegenerateGap = 1e-9;

double h(double p) { return p > 0.0 ? -p * std::log(p) : 0.0; }

}  // namespace

GeneralState::GeneralState(std::vector<Complex> coeffs) : coeffs_(std::move(coeffs)) {
    if (coeffs_.size() < 2) throw ValidationError("general state needs dimension d >= 2");
    double total = 0.0;
    for (const auto& c : coeffs_) {
        if (!std::isfinite(c.real()) || !std::isfinite(c.imag())) {
            throw ValidationError("state coefficients must be finite");
        }
        total += std::norm(c);
    }
    if (std::abs(total - 1.0) > kNormTolerance) {
        throw ValidationError("state coefficients must satisfy sum |c|^2 = 1");
    }
}

std::vector<double> GeneralState::populations() const {
    std::vector<double> p;
    p.reserve(coeffs_.size());
    for (const auto& c : coeffs_) p.push_back(std::norm(c));
    return p;
}

double entropy(std::span<const double> eigenvalues) {
    double sum = 0.0;
    double s = 0.0;
    for (double lambda : eigenvalues) {
        if (lambda < -kEigenTolerance || !std::isfinite(lambda)) {
            throw ValidationError("entropy: eigenvalue " + std::to_string(lambda) + " is negative");
        }
        sum += lambda;
        s += h(lambda);
    }
    if (std::abs(sum - 1.0) > kEigenTolerance) {
        throw ValidationError("entropy: eigenvalues must sum to 1");
    }
    return s;
}

InfoReport mutual_info_prc(const GeneralState& state) {
    const auto p = state.populations();
    InfoReport r;
    r.s_gamma = entropy(p);
    r.s_xi = r.s_gamma;
    r.s_total = 0.0;
    r.mutual_info = r.s_gamma + r.s_xi - r.s_total;
    return r;
}

std::pair<double, double> perturbed_eigenvalues(double c1sq, double c2sq, double eps) {
    if (c1sq < 0.0 || c2sq < 0.0 || c1sq + c2sq > 1.0 + kNormTolerance) {
        throw ValidationError("perturbed_eigenvalues: populations must be nonnegative with sum <= 1");
    }
    if (!(eps >= 0.0)) throw ValidationError("perturbed_eigenvalues: eps must be nonnegative");
    const double mean = 0.5 * (c1sq + c2sq);
    const double diff = c1sq - c2sq;
    const double half_gap = 0.5 * std::sqrt(diff * diff + 4.0 * eps * eps);
    // Delta_- = det / Delta_+ avoids cancellation when Delta_- is small.
    const double plus = mean + half_gap;
    const double minus = plus > 0.0 ? (c1sq * c2sq - eps * eps) / plus : 0.0;
    return {plus, minus};
}

InfoReport wprc_info_deficit(const GeneralState& state, double eps) {
    if (!(eps >= 0.0) || !std::isfinite(eps)) {
        throw ValidationError("wprc_info_deficit: eps must be finite and nonnegative");
    }
    const auto p = state.populations();
    const double c1 = p[0];
    const double c2 = p[1];
    if (eps * eps > c1 * c2) {
        throw ValidationError("wprc_info_deficit: eps^2 exceeds |c1|^2 |c2|^2, the perturbed "
                              "state would not be positive");
    }

    const auto [plus, minus] = perturbed_eigenvalues(c1, c2, eps);
    std::vector<double> spectrum = p;
    spectrum[0] = plus;
    spectrum[1] = minus;

    InfoReport r;
    r.s_gamma = entropy(spectrum);
    r.s_xi = r.s_gamma;
    r.s_total = 0.0;
    r.mutual_info = r.s_gamma + r.s_xi - r.s_total;
    r.epsilon = eps;

    // Only the 1-2 block changes, so the difference is taken on that block alone.
    const double exact = eps == 0.0 ? 0.0 : 2.0 * ((h(c1) + h(c2)) - (h(plus) + h(minus)));
    r.deficit = exact;

    const double gap = c1 - c2;
    r.degenerate = std::abs(gap) <= kDegenerateGap;
    r.expansion_valid = !r.degenerate && eps * eps < 0.1 * std::abs(gap);
    if (eps == 0.0) {
        r.deficit_leading_order = 0.0;
    } else if (r.degenerate) {
        r.deficit_leading_order = exact;
    } else {
        const double a = eps * eps * (std::log(c1) - std::log(c2)) / gap;
        r.deficit_leading_order = 2.0 * a;
    }
    r.deficit_remainder = exact - *r.deficit_leading_order;
    return r;
}

}  // namespace pointerlab
