#pragma once

#include <span>
#include <utility>
#include <vector>

#include "pointerlab/types.hpp"

namespace pointerlab {

/// Pointer-state overlap <Xi^-(t)|Xi^+(t)> = prod_k (|alpha_k|^2 e^{-2i g_k t} + |beta_k|^2 e^{2i g_k t}).
///
/// Evaluated as a direct complex product for N <= 64 and through accumulated
/// log-magnitude and phase beyond that, so cos^N-type products do not underflow
/// before they legitimately reach zero.
Complex overlap(const ApparatusSpec& spec, double t);

/// One factor of the overlap product for a single qubit.
Complex overlap_factor(double coupling, const QubitInit& init, double t);

/// Availability A(t) = |overlap(spec, t)|, in [0, 1].
double availability(const ApparatusSpec& spec, double t);

/// d(A^2)/dt, evaluated without dividing by any factor so it stays finite at zeros of A.
double availability_sq_derivative(const ApparatusSpec& spec, double t);

struct AvailabilitySample {
    double t;
    double availability;
};

/// Availability on a sorted, nonnegative grid. Throws ValidationError otherwise.
std::vector<AvailabilitySample> sample_availability(const ApparatusSpec& spec,
                                                    std::span<const double> t_grid);

/// Reduced density matrix of the measured qubit in the {up, down} basis.
///
/// Diagonal (|a|^2, |b|^2); off-diagonal rho[0][1] = a b* <Xi^-|Xi^+>.
Matrix2 reduced_system_state(const ApparatusSpec& spec, const SystemInit& sys, double t);

/// Bloch vector of reduced_system_state.
///
/// For a = b = 1/sqrt(2) this gives |r(t)| = A(t); the squared reading
/// |r|^2 = A is not what rho = (I + r.sigma)/2 yields and is not used.
BlochVector bloch_vector(const ApparatusSpec& spec, const SystemInit& sys, double t);

/// Density matrix (I + r.sigma)/2.
Matrix2 density_from_bloch(const BlochVector& r);

/// prod_k (|alpha_k|^4 + |beta_k|^4): the long-time mean of A(t)^2 for incommensurate couplings.
double long_time_variance(const ApparatusSpec& spec);

/// First-order expansion of prod_k cos(2 (g + dg_k) t) around the ordered value:
/// cos(2gt)^N [1 - (2t / cos 2gt) sum_k dg_k sin(2 g_k t)], g_k = g + dg_k.
///
/// Only meaningful for equatorial inits and short times. Throws ValidationError
/// when |cos(2gt)| <= 0.1, where the expansion breaks down.
Complex perturbative_overlap(double g, std::span<const double> deltas, double t);

/// Deterministic apparatus construction.
///
/// Disordered couplings come from std::mt19937_64 seeded with the ensemble
/// seed: the k-th draw u_k = (x_k >> 11) * 2^-53 gives g_k = g_lo + (g_hi - g_lo) u_k.
/// RandomInits use a separate generator, two draws per qubit in qubit order
/// (cos theta, then phi).
ApparatusSpec make_apparatus(const CouplingEnsemble& ensemble, std::size_t n,
                             const InitsPolicy& inits_policy);

/// Uniform double in [0, 1) from one mt19937_64 output. Stable across platforms.
double unit_uniform(std::uint64_t bits);

}  // namespace pointerlab
