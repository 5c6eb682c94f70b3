#pragma once

#include <array>
#include <complex>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <variant>
#include <vector>

namespace pointerlab {

using Complex = std::complex<double>;

// Units: hbar = 1. Couplings are angular frequencies, times are 1/frequency.

/// Raised for inputs that violate a documented precondition.
class ValidationError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

/// Raised when a request exceeds a hard size limit (e.g. the state-vector oracle).
class CapacityError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

inline constexpr double kNormTolerance = 1e-12;

/// Initial state alpha|up> + beta|down> of one apparatus qubit.
class QubitInit {
public:
    QubitInit(Complex alpha, Complex beta);

    static QubitInit equatorial(double phase = 0.0);
    static QubitInit up() { return {1.0, 0.0}; }
    static QubitInit down() { return {0.0, 1.0}; }

    Complex alpha() const { return alpha_; }
    Complex beta() const { return beta_; }
    double up_weight() const { return std::norm(alpha_); }
    double down_weight() const { return std::norm(beta_); }

private:
    Complex alpha_;
    Complex beta_;
};

/// Initial state a|up> + b|down> of the measured qubit.
class SystemInit {
public:
    SystemInit(Complex a, Complex b);

    Complex a() const { return a_; }
    Complex b() const { return b_; }

private:
    Complex a_;
    Complex b_;
};

/// N apparatus qubits, each coupled to the measured qubit through sigma_z (x) g_k sigma_z^(k).
class ApparatusSpec {
public:
    ApparatusSpec(std::vector<double> couplings, std::vector<QubitInit> inits);

    std::size_t size() const { return couplings_.size(); }
    const std::vector<double>& couplings() const { return couplings_; }
    const std::vector<QubitInit>& inits() const { return inits_; }
    double max_coupling() const;

    /// Apparatus made of the qubits of `a` followed by those of `b`.
    static ApparatusSpec concat(const ApparatusSpec& a, const ApparatusSpec& b);

private:
    std::vector<double> couplings_;
    std::vector<QubitInit> inits_;
};

struct Ordered {
    double g;
};

struct Disordered {
    double g_lo;
    double g_hi;
    std::uint64_t seed;
};

using CouplingEnsemble = std::variant<Ordered, Disordered>;

/// All |alpha_k|^2 = 1/2; phases[k] is the relative phase of beta_k (0 when absent).
struct EquatorialInits {
    std::vector<double> phases;
};

struct FixedInits {
    std::vector<QubitInit> inits;
};

/// Uniform on the Bloch sphere, drawn from its own mt19937_64 stream.
struct RandomInits {
    std::uint64_t seed;
};

using InitsPolicy = std::variant<EquatorialInits, FixedInits, RandomInits>;

using Matrix2 = std::array<std::array<Complex, 2>, 2>;

struct BlochVector {
    std::array<double, 3> r;

    double norm() const;
};

}  // namespace pointerlab
