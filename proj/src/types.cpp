#include "pointerlab/types.hpp"

#include <algorithm>
#include <cmath>

namespace pointerlab {

namespace {

bool finite(Complex z) { return std::isfinite(z.real()) && std::isfinite(z.imag()); }

void check_normalized(Complex x, Complex y, const char* what) {
    if (!finite(x) || !finite(y)) {
        throw ValidationError(std::string(what) + ": amplitudes must be finite");
    }
    const double norm = std::norm(x) + std::norm(y);
    if (std::abs(norm - 1.0) > kNormTolerance) {
        throw ValidationError(std::string(what) + ": |x|^2 + |y|^2 must equal 1 (got " +
                              std::to_string(norm) + ")");
    }
}

}  // namespace

QubitInit::QubitInit(Complex alpha, Complex beta) : alpha_(alpha), beta_(beta) {
    check_normalized(alpha, beta, "qubit init");
}

QubitInit QubitInit::equatorial(double phase) {
    const double h = std::sqrt(0.5);
    return {h, std::polar(h, phase)};
}

SystemInit::SystemInit(Complex a, Complex b) : a_(a), b_(b) {
    check_normalized(a, b, "system init");
}

ApparatusSpec::ApparatusSpec(std::vector<double> couplings, std::vector<QubitInit> inits)
    : couplings_(std::move(couplings)), inits_(std::move(inits)) {
    if (couplings_.empty()) {
        throw ValidationError("apparatus needs at least one qubit");
    }
    if (couplings_.size() != inits_.size()) {
        throw ValidationError("coupling list has " + std::to_string(couplings_.size()) +
                              " entries but init list has " + std::to_string(inits_.size()));
    }
    for (double g : couplings_) {
        if (!std::isfinite(g)) {
            throw ValidationError("couplings must be finite");
        }
    }
}

double ApparatusSpec::max_coupling() const {
    double m = 0.0;
    for (double g : couplings_) m = std::max(m, std::abs(g));
    return m;
}

ApparatusSpec ApparatusSpec::concat(const ApparatusSpec& a, const ApparatusSpec& b) {
    std::vector<double> g = a.couplings_;
    g.insert(g.end(), b.couplings_.begin(), b.couplings_.end());
    std::vector<QubitInit> inits = a.inits_;
    inits.insert(inits.end(), b.inits_.begin(), b.inits_.end());
    return {std::move(g), std::move(inits)};
}

double BlochVector::norm() const { return std::sqrt(r[0] * r[0] + r[1] * r[1] + r[2] * r[2]); }

}  // namespace pointerlab
