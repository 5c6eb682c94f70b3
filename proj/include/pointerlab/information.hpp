#pragma once

#include <optional>
#include <span>
#include <vector>

#include "pointerlab/types.hpp"

// Entropies and mutual information in nats.
namespace pointerlab {

/// |Gamma> = sum_gamma c_gamma |gamma>, d >= 2, normalised.
class GeneralState {
public:
    explicit GeneralState(std::vector<Complex> coeffs);

    const std::vector<Complex>& coeffs() const { return coeffs_; }
    std::size_t dimension() const { return coeffs_.size(); }
    std::vector<double> populations() const;

private:
    std::vector<Complex> coeffs_;
};

/// -sum lambda ln lambda with 0 ln 0 = 0. Rejects eigenvalues below -1e-10 or a
/// sum further than 1e-10 from 1.
double entropy(std::span<const double> eigenvalues);

/// Information quantities of the global state. The global state is pure, so
/// s_total = 0, s_xi = s_gamma and mutual_info = 2 s_gamma.
struct InfoReport {
    double s_gamma = 0.0;
    double s_xi = 0.0;
    double s_total = 0.0;
    double mutual_info = 0.0;
    /// Mutual information of the separable input state, always 0.
    double mutual_info_initial = 0.0;

    // Present only for the epsilon-perturbed pointers.
    std::optional<double> epsilon;
    std::optional<double> deficit;                // exact: I(eps = 0) - I(eps)
    std::optional<double> deficit_leading_order;  // 2A
    std::optional<double> deficit_remainder;      // exact - 2A
    bool degenerate = false;         // |c1|^2 ~ |c2|^2; 2A replaced by the exact value
    bool expansion_valid = true;     // eps^2 < 0.1 ||c1|^2 - |c2|^2|
};

/// Mutual information at a time where the pointers are exactly orthogonal.
InfoReport mutual_info_prc(const GeneralState& state);

/// Eigenvalues of the 1-2 block when <Xi^1|Xi^2> = eps:
/// (c1 + c2)/2 +- sqrt((c1 - c2)^2 + 4 eps^2)/2, with c_i = |c_i|^2.
std::pair<double, double> perturbed_eigenvalues(double c1sq, double c2sq, double eps);

/// Mutual information when pointers 1 and 2 overlap by eps and all others stay orthogonal.
///
/// The exact deficit comes from the perturbed eigenvalues; the leading-order
/// value 2A, A = eps^2 (ln|c1|^2 - ln|c2|^2) / (|c1|^2 - |c2|^2), is reported next to it.
InfoReport wprc_info_deficit(const GeneralState& state, double eps);

}  // namespace pointerlab
