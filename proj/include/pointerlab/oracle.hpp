#pragma once

#include <vector>

#include <Eigen/Dense>

#include "pointerlab/types.hpp"

// Brute-force reference evolutions. Nothing here reuses the closed forms in
// model.hpp; tests compare the two routes.
namespace pointerlab::oracle {

inline constexpr std::size_t kMaxApparatusQubits = 12;
inline constexpr Eigen::Index kMaxPointerDimension = 4096;

/// Amplitudes of the (N+1)-qubit state in the tensor order (system, a_1, ..., a_N).
///
/// Index i = s * 2^N + sum_k b_k 2^(N-k), where bit value 0 is |up> (sigma_z = +1)
/// and 1 is |down> (sigma_z = -1).
struct StateVector {
    std::size_t apparatus_qubits = 0;
    std::vector<Complex> amplitudes;

    double norm() const;
};

/// Separable input state (a|up> + b|down>) (x) prod_k (alpha_k|up> + beta_k|down>).
StateVector initial_state(const ApparatusSpec& spec, const SystemInit& sys);

/// exp(-i H t)|psi(0)> for H = sigma_z (x) sum_k g_k S_k, using the fact that H is
/// diagonal in the computational basis. Throws CapacityError for N > 12.
StateVector evolve_full(const ApparatusSpec& spec, const SystemInit& sys, double t);

/// Diagonal of H in the computational basis, length 2^(N+1).
std::vector<double> hamiltonian_diagonal(const ApparatusSpec& spec);

/// Tr over the apparatus of |psi><psi|.
Matrix2 partial_trace_system(const StateVector& psi);

/// H = O_Gamma (x) O_Xi with O_Gamma = sum_gamma omega_gamma |gamma><gamma|.
struct GeneralOzawaSpec {
    std::vector<double> system_spectrum;
    Eigen::MatrixXcd pointer_generator;
    Eigen::VectorXcd ready_state;
};

struct OzawaEvolution {
    /// |Xi^gamma(t)> = exp(-i omega_gamma O_Xi t)|Xi_R>, one per gamma.
    std::vector<Eigen::VectorXcd> pointer_states;
    /// delta(g1, g2) = <Xi^g1(t)|Xi^g2(t)>.
    Eigen::MatrixXcd delta;
    /// rho_Gamma = sum |c|^2 |g><g| + sum_{g != g'} c_g c_g'^* delta(g', g) |g><g'|.
    Eigen::MatrixXcd system_state;
};

/// Diagonalises O_Xi once and evolves every pointer state at the given times.
class GeneralOzawaEvolver {
public:
    explicit GeneralOzawaEvolver(GeneralOzawaSpec spec);

    OzawaEvolution evolve(const std::vector<Complex>& coeffs, double t) const;

private:
    GeneralOzawaSpec spec_;
    Eigen::MatrixXcd eigenvectors_;
    Eigen::VectorXd eigenvalues_;
    Eigen::VectorXcd ready_in_eigenbasis_;
};

OzawaEvolution evolve_general_ozawa(const GeneralOzawaSpec& spec,
                                    const std::vector<Complex>& coeffs, double t);

/// O_Xi = sum_k g_k S_k as a dense 2^N x 2^N matrix, for reducing the general
/// evolution to the qubit model.
Eigen::MatrixXcd qubit_pointer_generator(const std::vector<double>& couplings);

/// Product ready state prod_k (alpha_k|up> + beta_k|down>).
Eigen::VectorXcd product_ready_state(const ApparatusSpec& spec);

}  // namespace pointerlab::oracle
