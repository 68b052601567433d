#include "sdr/hamiltonian.hpp"

#include <bit>
#include <cmath>

#include "sdr/errors.hpp"

namespace sdr {

HamiltonianSpec make_hamiltonian(AtomRegister reg, WaveformSet waves,
                                 std::shared_ptr<const BasisSpec> basis) {
    if (!basis || basis->states.empty()) throw InputError("empty basis");
    if (basis->n_atoms != int(reg.positions.size())) {
        throw InputError("basis atom count does not match register");
    }

    HamiltonianSpec spec;
    spec.v_matrix = interaction_matrix(reg);
    spec.reg = std::move(reg);
    spec.waves = std::move(waves);
    spec.basis = std::move(basis);

    const auto& states = spec.basis->states;
    const int n = spec.basis->n_atoms;
    spec.diag_v.resize(states.size());
    spec.popcnt.resize(states.size());
    spec.alpha_sum.resize(states.size());
    for (std::size_t s = 0; s < states.size(); ++s) {
        const std::uint64_t b = states[s];
        double v = 0.0, asum = 0.0;
        for (int j = 0; j < n; ++j) {
            if (!((b >> j) & 1)) continue;
            asum += spec.reg.local_scale[std::size_t(j)];
            for (int k = j + 1; k < n; ++k) {
                if ((b >> k) & 1) v += spec.v_matrix(j, k);
            }
        }
        spec.diag_v[s] = v;
        spec.popcnt[s] = std::uint8_t(std::popcount(b));
        spec.alpha_sum[s] = asum;
    }
    return spec;
}

void check_v_matrix(const HamiltonianSpec& spec) {
    const Eigen::MatrixXd fresh = interaction_matrix(spec.reg);
    if (fresh.rows() != spec.v_matrix.rows() || fresh.cols() != spec.v_matrix.cols() ||
        (fresh - spec.v_matrix).cwiseAbs().maxCoeff() != 0.0) {
        throw InputError("cached interaction matrix is inconsistent with register positions");
    }
}

void apply_hamiltonian_raw(const HamiltonianSpec& spec, double t, const std::complex<double>* in,
                           std::complex<double>* out) {
    const BasisSpec& basis = *spec.basis;
    const std::size_t dim = basis.states.size();
    const int n = basis.n_atoms;

    const double omega_half = 0.5 * eval_waveform(spec.waves.omega, t);
    const double dg = eval_waveform(spec.waves.delta_g, t);
    const double dl = eval_waveform(spec.waves.delta_l, t);
    const double phi = eval_waveform(spec.waves.phi, t);
    // e^{+i phi} multiplies |g><r| (de-excitation), its conjugate the reverse.
    const std::complex<double> down{omega_half * std::cos(phi), omega_half * std::sin(phi)};
    const std::complex<double> up = std::conj(down);

    const bool full = basis.mode == BasisMode::full;
    for (std::size_t a = 0; a < dim; ++a) {
        const std::uint64_t b = basis.states[a];
        std::complex<double> acc =
            (spec.diag_v[a] - dg * spec.popcnt[a] - dl * spec.alpha_sum[a]) * in[a];
        if (omega_half != 0.0) {
            for (int j = 0; j < n; ++j) {
                const std::uint64_t partner = b ^ (std::uint64_t(1) << j);
                std::size_t pi;
                if (full) {
                    pi = std::size_t(partner);
                } else {
                    const std::ptrdiff_t idx = basis.index_of(partner);
                    if (idx < 0) continue;  // coupling leaves the blockade basis
                    pi = std::size_t(idx);
                }
                // Row b gains |r><g| (amplitude up) when atom j is excited in
                // b, and |g><r| (amplitude down) when it is ground.
                acc += ((b >> j) & 1 ? up : down) * in[pi];
            }
        }
        out[a] = acc;
    }
}

QuantumState apply_hamiltonian(const HamiltonianSpec& spec, double t, const QuantumState& state) {
    if (state.dim() != spec.basis->states.size()) {
        throw InputError("state dimension does not match basis size");
    }
    if (std::abs(state.norm2() - 1.0) > 1e-6) {
        throw InputError("state is not normalized within 1e-6");
    }
    QuantumState out;
    out.basis = state.basis;
    out.amplitudes.resize(state.amplitudes.size());
    apply_hamiltonian_raw(spec, t, state.amplitudes.data(), out.amplitudes.data());
    return out;
}

Eigen::MatrixXcd dense_hamiltonian(const HamiltonianSpec& spec, double t) {
    const std::size_t dim = spec.basis->states.size();
    if (dim > (std::size_t(1) << 10)) {
        throw InputError("dense materialization capped at 2^10 basis states");
    }
    const Eigen::Index n = static_cast<Eigen::Index>(dim);
    Eigen::MatrixXcd h(n, n);
    Eigen::VectorXcd unit = Eigen::VectorXcd::Zero(n);
    Eigen::VectorXcd col(n);
    for (Eigen::Index j = 0; j < n; ++j) {
        unit[j] = 1.0;
        apply_hamiltonian_raw(spec, t, unit.data(), col.data());
        h.col(j) = col;
        unit[j] = 0.0;
    }
    return h;
}

double hermiticity_check(const HamiltonianSpec& spec, double t) {
    const Eigen::MatrixXcd h = dense_hamiltonian(spec, t);
    return (h - h.adjoint()).cwiseAbs().maxCoeff();
}

}  // namespace sdr
