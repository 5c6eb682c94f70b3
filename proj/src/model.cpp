#include "pointerlab/model.hpp"

#include <cmath>
#include <numbers>
#include <random>
#include <string>

namespace pointerlab {

namespace {

constexpr std::size_t kDirectProductLimit = 64;

void require_time(double t) {
    if (!(t >= 0.0) || !std::isfinite(t)) {
        throw ValidationError("time must be finite and nonnegative");
    }
}

}  // namespace

Complex overlap_factor(double coupling, const QubitInit& init, double t) {
    // Inits are normalised on construction, so |alpha|^2 + |beta|^2 is taken as exactly 1.
    const double phase = 2.0 * coupling * t;
    return {std::cos(phase), (init.down_weight() - init.up_weight()) * std::sin(phase)};
}

Complex overlap(const ApparatusSpec& spec, double t) {
    require_time(t);
    const auto& g = spec.couplings();
    const auto& inits = spec.inits();

    if (spec.size() <= kDirectProductLimit) {
        Complex prod{1.0, 0.0};
        for (std::size_t k = 0; k < g.size(); ++k) prod *= overlap_factor(g[k], inits[k], t);
        return prod;
    }

    double log_mag = 0.0;
    double phase = 0.0;
    for (std::size_t k = 0; k < g.size(); ++k) {
        const Complex f = overlap_factor(g[k], inits[k], t);
        const double mag = std::abs(f);
        if (mag == 0.0) return {0.0, 0.0};
        log_mag += std::log(mag);
        phase += std::arg(f);
    }
    return std::polar(std::exp(log_mag), std::remainder(phase, 2.0 * std::numbers::pi));
}

double availability(const ApparatusSpec& spec, double t) { return std::abs(overlap(spec, t)); }

double availability_sq_derivative(const ApparatusSpec& spec, double t) {
    require_time(t);
    const auto& g = spec.couplings();
    const auto& inits = spec.inits();
    const std::size_t n = spec.size();

    // |f_k|^2 = cos^2(2gt) + d^2 sin^2(2gt), with d = |beta|^2 - |alpha|^2.
    std::vector<double> sq(n);
    std::vector<double> dsq(n);
    for (std::size_t k = 0; k < n; ++k) {
        const double d = inits[k].down_weight() - inits[k].up_weight();
        const double c = std::cos(2.0 * g[k] * t);
        const double s = std::sin(2.0 * g[k] * t);
        sq[k] = c * c + d * d * s * s;
        dsq[k] = 2.0 * g[k] * std::sin(4.0 * g[k] * t) * (d * d - 1.0);
    }

    // prefix[k] = prod_{j<k} sq[j]
    std::vector<double> prefix(n + 1, 1.0);
    for (std::size_t k = 0; k < n; ++k) prefix[k + 1] = prefix[k] * sq[k];
    double suffix = 1.0;
    double total = 0.0;
    for (std::size_t k = n; k-- > 0;) {
        total += dsq[k] * prefix[k] * suffix;
        suffix *= sq[k];
    }
    return total;
}

std::vector<AvailabilitySample> sample_availability(const ApparatusSpec& spec,
                                                    std::span<const double> t_grid) {
    for (std::size_t i = 0; i < t_grid.size(); ++i) {
        if (!(t_grid[i] >= 0.0) || !std::isfinite(t_grid[i])) {
            throw ValidationError("time grid must be finite and nonnegative");
        }
        if (i > 0 && t_grid[i] < t_grid[i - 1]) {
            throw ValidationError("time grid must be sorted");
        }
    }
    std::vector<AvailabilitySample> out;
    out.reserve(t_grid.size());
    for (double t : t_grid) out.push_back({t, availability(spec, t)});
    return out;
}

Matrix2 reduced_system_state(const ApparatusSpec& spec, const SystemInit& sys, double t) {
    const Complex coherence = sys.a() * std::conj(sys.b()) * overlap(spec, t);
    Matrix2 rho{};
    rho[0][0] = std::norm(sys.a());
    rho[1][1] = std::norm(sys.b());
    rho[0][1] = coherence;
    rho[1][0] = std::conj(coherence);
    return rho;
}

BlochVector bloch_vector(const ApparatusSpec& spec, const SystemInit& sys, double t) {
    const Matrix2 rho = reduced_system_state(spec, sys, t);
    return {{2.0 * rho[0][1].real(), -2.0 * rho[0][1].imag(),
             rho[0][0].real() - rho[1][1].real()}};
}

Matrix2 density_from_bloch(const BlochVector& b) {
    const auto& r = b.r;
    Matrix2 rho{};
    rho[0][0] = 0.5 * (1.0 + r[2]);
    rho[1][1] = 0.5 * (1.0 - r[2]);
    rho[0][1] = Complex{0.5 * r[0], -0.5 * r[1]};
    rho[1][0] = Complex{0.5 * r[0], 0.5 * r[1]};
    return rho;
}

double long_time_variance(const ApparatusSpec& spec) {
    double prod = 1.0;
    for (const auto& init : spec.inits()) {
        const double up = init.up_weight();
        const double down = init.down_weight();
        prod *= up * up + down * down;
    }
    return prod;
}

Complex perturbative_overlap(double g, std::span<const double> deltas, double t) {
    require_time(t);
    const double c = std::cos(2.0 * g * t);
    if (std::abs(c) <= 0.1) {
        throw ValidationError("perturbative expansion invalid: |cos(2gt)| <= 0.1");
    }
    double sum = 0.0;
    for (double dg : deltas) sum += dg * std::sin(2.0 * (g + dg) * t);
    const double base = std::pow(c, static_cast<double>(deltas.size()));
    return {base * (1.0 - 2.0 * t / c * sum), 0.0};
}

double unit_uniform(std::uint64_t bits) {
    return static_cast<double>(bits >> 11) * 0x1.0p-53;
}

ApparatusSpec make_apparatus(const CouplingEnsemble& ensemble, std::size_t n,
                             const InitsPolicy& inits_policy) {
    if (n == 0) throw ValidationError("apparatus size N must be at least 1");

    std::vector<double> couplings(n);
    if (const auto* ord = std::get_if<Ordered>(&ensemble)) {
        if (!(ord->g > 0.0) || !std::isfinite(ord->g)) {
            throw ValidationError("ordered coupling g must be positive and finite");
        }
        std::fill(couplings.begin(), couplings.end(), ord->g);
    } else {
        const auto& dis = std::get<Disordered>(ensemble);
        if (!(dis.g_lo >= 0.0) || !(dis.g_lo < dis.g_hi) || !std::isfinite(dis.g_hi)) {
            throw ValidationError("disordered interval must satisfy 0 <= g_lo < g_hi");
        }
        std::mt19937_64 rng(dis.seed);
        for (auto& g : couplings) g = dis.g_lo + (dis.g_hi - dis.g_lo) * unit_uniform(rng());
    }

    std::vector<QubitInit> inits;
    inits.reserve(n);
    if (const auto* eq = std::get_if<EquatorialInits>(&inits_policy)) {
        if (!eq->phases.empty() && eq->phases.size() != n) {
            throw ValidationError("equatorial phase list must be empty or have N entries");
        }
        for (std::size_t k = 0; k < n; ++k) {
            inits.push_back(QubitInit::equatorial(eq->phases.empty() ? 0.0 : eq->phases[k]));
        }
    } else if (const auto* fixed = std::get_if<FixedInits>(&inits_policy)) {
        if (fixed->inits.size() != n) {
            throw ValidationError("fixed init list has " + std::to_string(fixed->inits.size()) +
                                  " entries, expected " + std::to_string(n));
        }
        inits = fixed->inits;
    } else {
        std::mt19937_64 rng(std::get<RandomInits>(inits_policy).seed);
        for (std::size_t k = 0; k < n; ++k) {
            const double cos_theta = 2.0 * unit_uniform(rng()) - 1.0;
            const double phi = 2.0 * std::numbers::pi * unit_uniform(rng());
            const double up = std::sqrt(0.5 * (1.0 + cos_theta));
            const double down = std::sqrt(0.5 * (1.0 - cos_theta));
            inits.emplace_back(Complex{up, 0.0}, std::polar(down, phi));
        }
    }
    return {std::move(couplings), std::move(inits)};
}

}  // namespace pointerlab
