#ifndef SDR_EVOLVE_HPP
#define SDR_EVOLVE_HPP

#include <cstdint>
#include <functional>
#include <vector>

#include "sdr/hamiltonian.hpp"

namespace sdr {

enum class EvolveMethod { krylov, rk4 };

struct EvolutionResult {
    QuantumState final_state;
    std::vector<double> densities;  // per-atom <n_j>
    double norm_drift = 0.0;        // |1 - ||psi||^2| at the end
    std::int64_t step_count = 0;
    double wall_time = 0.0;  // seconds
};

// Called after every completed step with the current time and state.
using EvolveObserver = std::function<void(double t, const QuantumState&)>;

// Integrate the Schroedinger equation over [0, waves.duration].
//
// krylov: per step, freeze H at the midpoint and apply exp(-i H dt) through
// a Lanczos expansion (full reorthogonalization, adaptive dimension <= 30,
// residual tolerance 1e-10). rk4: classical Runge-Kutta on the
// time-dependent ODE. The final partial step absorbs durations not divisible
// by dt. Norm drift is reported, never repaired; drift beyond 1e-4 aborts
// with NormDriftError.
EvolutionResult evolve(const HamiltonianSpec& spec, const QuantumState& initial, double dt,
                       EvolveMethod method = EvolveMethod::krylov,
                       const EvolveObserver& observer = {});

// density_j = sum over basis states with bit j set of |amplitude|^2.
std::vector<double> rydberg_densities(const QuantumState& state);

// Deterministic i.i.d. bitstring samples from |amplitude|^2; draw k depends
// only on (seed, k).
std::vector<std::uint64_t> sample_bitstrings(const QuantumState& state, std::size_t shots,
                                             std::uint64_t seed);

// Ground-truth propagation: waveforms sampled piecewise-constant at
// sample_dt (frozen at interval midpoints), each interval advanced by exact
// dense eigendecomposition. Capped at 2^10 basis states. Consecutive
// intervals with identical drive values reuse the decomposition.
QuantumState exact_reference(const HamiltonianSpec& spec, const QuantumState& initial,
                             double duration, double sample_dt = 1e-3);

}  // namespace sdr

#endif
