#ifndef SDR_HAMILTONIAN_HPP
#define SDR_HAMILTONIAN_HPP

#include <complex>
#include <memory>
#include <vector>

#include "sdr/basis.hpp"
#include "sdr/register.hpp"
#include "sdr/waveform.hpp"

namespace sdr {

// Time-dependent Rydberg Hamiltonian
//   H(t) = (Omega(t)/2) sum_j (e^{i phi}|g_j><r_j| + e^{-i phi}|r_j><g_j|)
//        + sum_{j<k} V_jk n_j n_k
//        - sum_j (Delta_g(t) + alpha_j Delta_l(t)) n_j
// held matrix-free; per-basis-state diagonal data is precomputed once.
struct HamiltonianSpec {
    AtomRegister reg;
    WaveformSet waves;
    std::shared_ptr<const BasisSpec> basis;
    Eigen::MatrixXd v_matrix;

    // Per basis state: interaction sum, excitation count, sum of alpha_j
    // over excited atoms.
    std::vector<double> diag_v;
    std::vector<std::uint8_t> popcnt;
    std::vector<double> alpha_sum;
};

HamiltonianSpec make_hamiltonian(AtomRegister reg, WaveformSet waves,
                                 std::shared_ptr<const BasisSpec> basis);

// Recompute the interaction matrix from positions and compare against the
// cached copy; throws InputError on disagreement.
void check_v_matrix(const HamiltonianSpec& spec);

// out = H(t) * in over raw amplitude arrays of length |basis|. No
// normalization requirement; used by integrators on intermediate vectors.
void apply_hamiltonian_raw(const HamiltonianSpec& spec, double t, const std::complex<double>* in,
                           std::complex<double>* out);

// Public operator application; enforces dimension match and normalization
// within 1e-6.
QuantumState apply_hamiltonian(const HamiltonianSpec& spec, double t, const QuantumState& state);

// Dense materialization by applying H to unit vectors; test/oracle use only,
// capped at 2^10 basis states.
Eigen::MatrixXcd dense_hamiltonian(const HamiltonianSpec& spec, double t);

// Max |H - H^dagger| entry of the dense materialization.
double hermiticity_check(const HamiltonianSpec& spec, double t);

}  // namespace sdr

#endif
