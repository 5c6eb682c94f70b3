#include "pointerlab/oracle.hpp"

#include <cmath>
#include <string>

#include <Eigen/Eigenvalues>

namespace pointerlab::oracle {

namespace {

void require_capacity(const ApparatusSpec& spec) {
    if (spec.size() > kMaxApparatusQubits) {
        throw CapacityError("state-vector oracle supports at most " +
                            std::to_string(kMaxApparatusQubits) + " apparatus qubits, got N = " +
                            std::to_string(spec.size()));
    }
}

}  // namespace

double StateVector::norm() const {
    double s = 0.0;
    for (const auto& a : amplitudes) s += std::norm(a);
    return std::sqrt(s);
}

StateVector initial_state(const ApparatusSpec& spec, const SystemInit& sys) {
    require_capacity(spec);
    std::vector<Complex> amps{sys.a(), sys.b()};
    for (const auto& q : spec.inits()) {
        std::vector<Complex> next;
        next.reserve(amps.size() * 2);
        for (const auto& amp : amps) {
            next.push_back(amp * q.alpha());
            next.push_back(amp * q.beta());
        }
        amps = std::move(next);
    }
    return {spec.size(), std::move(amps)};
}

std::vector<double> hamiltonian_diagonal(const ApparatusSpec& spec) {
    require_capacity(spec);
    const std::size_t n = spec.size();
    const std::size_t apparatus_dim = std::size_t{1} << n;
    const auto& g = spec.couplings();

    std::vector<double> diag(2 * apparatus_dim);
    for (std::size_t e = 0; e < apparatus_dim; ++e) {
        double field = 0.0;
        for (std::size_t k = 0; k < n; ++k) {
            const bool down = (e >> (n - 1 - k)) & 1U;
            field += down ? -g[k] : g[k];
        }
        diag[e] = field;
        diag[apparatus_dim + e] = -field;
    }
    return diag;
}

StateVector evolve_full(const ApparatusSpec& spec, const SystemInit& sys, double t) {
    if (!(t >= 0.0)) throw ValidationError("time must be nonnegative");
    StateVector psi = initial_state(spec, sys);
    const auto diag = hamiltonian_diagonal(spec);
    for (std::size_t i = 0; i < diag.size(); ++i) {
        psi.amplitudes[i] *= std::polar(1.0, -diag[i] * t);
    }
    return psi;
}

Matrix2 partial_trace_system(const StateVector& psi) {
    const std::size_t apparatus_dim = std::size_t{1} << psi.apparatus_qubits;
    if (psi.amplitudes.size() != 2 * apparatus_dim) {
        throw ValidationError("state vector length does not match its qubit count");
    }
    Matrix2 rho{};
    for (std::size_t s = 0; s < 2; ++s) {
        for (std::size_t sp = 0; sp < 2; ++sp) {
            Complex acc{0.0, 0.0};
            for (std::size_t e = 0; e < apparatus_dim; ++e) {
                acc += psi.amplitudes[s * apparatus_dim + e] *
                       std::conj(psi.amplitudes[sp * apparatus_dim + e]);
            }
            rho[s][sp] = acc;
        }
    }
    return rho;
}

GeneralOzawaEvolver::GeneralOzawaEvolver(GeneralOzawaSpec spec) : spec_(std::move(spec)) {
    const auto& o = spec_.pointer_generator;
    if (o.rows() != o.cols()) throw ValidationError("pointer generator must be square");
    if (o.rows() == 0) throw ValidationError("pointer generator must be nonempty");
    if (o.rows() > kMaxPointerDimension) {
        throw CapacityError("general Ozawa oracle supports pointer dimension <= " +
                            std::to_string(kMaxPointerDimension) + ", got " +
                            std::to_string(o.rows()));
    }
    if ((o - o.adjoint()).cwiseAbs().maxCoeff() > kNormTolerance) {
        throw ValidationError("pointer generator is not Hermitian");
    }
    if (spec_.ready_state.size() != o.rows()) {
        throw ValidationError("ready state dimension does not match pointer generator");
    }
    if (std::abs(spec_.ready_state.squaredNorm() - 1.0) > kNormTolerance) {
        throw ValidationError("ready state must be normalized");
    }
    if (spec_.system_spectrum.empty()) throw ValidationError("system spectrum is empty");

    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> solver(o);
    eigenvectors_ = solver.eigenvectors();
    eigenvalues_ = solver.eigenvalues();
    ready_in_eigenbasis_ = eigenvectors_.adjoint() * spec_.ready_state;
}

OzawaEvolution GeneralOzawaEvolver::evolve(const std::vector<Complex>& coeffs, double t) const {
    const std::size_t d = spec_.system_spectrum.size();
    if (coeffs.size() != d) {
        throw ValidationError("coefficient count does not match system spectrum");
    }
    double total = 0.0;
    for (const auto& c : coeffs) total += std::norm(c);
    if (std::abs(total - 1.0) > kNormTolerance) {
        throw ValidationError("system coefficients must be normalized");
    }

    OzawaEvolution out;
    const Eigen::Index dim = eigenvalues_.size();
    Eigen::MatrixXcd states(dim, static_cast<Eigen::Index>(d));
    for (std::size_t g = 0; g < d; ++g) {
        Eigen::VectorXcd phased(dim);
        for (Eigen::Index j = 0; j < dim; ++j) {
            phased[j] = std::polar(1.0, -spec_.system_spectrum[g] * eigenvalues_[j] * t) *
                        ready_in_eigenbasis_[j];
        }
        states.col(static_cast<Eigen::Index>(g)) = eigenvectors_ * phased;
        out.pointer_states.push_back(states.col(static_cast<Eigen::Index>(g)));
    }
    out.delta = states.adjoint() * states;

    const auto di = static_cast<Eigen::Index>(d);
    out.system_state = Eigen::MatrixXcd::Zero(di, di);
    for (Eigen::Index g = 0; g < di; ++g) {
        for (Eigen::Index gp = 0; gp < di; ++gp) {
            out.system_state(g, gp) = coeffs[g] * std::conj(coeffs[gp]) * out.delta(gp, g);
        }
    }
    return out;
}

OzawaEvolution evolve_general_ozawa(const GeneralOzawaSpec& spec,
                                    const std::vector<Complex>& coeffs, double t) {
    return GeneralOzawaEvolver(spec).evolve(coeffs, t);
}

Eigen::MatrixXcd qubit_pointer_generator(const std::vector<double>& couplings) {
    const std::size_t n = couplings.size();
    if (n > kMaxApparatusQubits) {
        throw CapacityError("pointer generator supports at most " +
                            std::to_string(kMaxApparatusQubits) + " qubits");
    }
    const Eigen::Index dim = Eigen::Index{1} << n;
    Eigen::MatrixXcd o = Eigen::MatrixXcd::Zero(dim, dim);
    // sum_k g_k S_k, built as an explicit sum of Kronecker products.
    const Eigen::Matrix2cd sz{{1.0, 0.0}, {0.0, -1.0}};
    for (std::size_t k = 0; k < n; ++k) {
        Eigen::MatrixXcd term = Eigen::MatrixXcd::Identity(1, 1);
        for (std::size_t j = 0; j < n; ++j) {
            const Eigen::MatrixXcd factor =
                (j == k) ? Eigen::MatrixXcd(sz) : Eigen::MatrixXcd(Eigen::MatrixXcd::Identity(2, 2));
            Eigen::MatrixXcd next(term.rows() * 2, term.cols() * 2);
            for (Eigen::Index r = 0; r < term.rows(); ++r) {
                for (Eigen::Index c = 0; c < term.cols(); ++c) {
                    next.block(2 * r, 2 * c, 2, 2) = term(r, c) * factor;
                }
            }
            term = std::move(next);
        }
        o += couplings[k] * term;
    }
    return o;
}

Eigen::VectorXcd product_ready_state(const ApparatusSpec& spec) {
    Eigen::VectorXcd v = Eigen::VectorXcd::Ones(1);
    for (const auto& q : spec.inits()) {
        Eigen::VectorXcd next(v.size() * 2);
        for (Eigen::Index i = 0; i < v.size(); ++i) {
            next[2 * i] = v[i] * q.alpha();
            next[2 * i + 1] = v[i] * q.beta();
        }
        v = std::move(next);
    }
    return v;
}

}  // namespace pointerlab::oracle
