#include "sdr/evolve.hpp"

#include <algorithm>
#include <array>
#include <bit>
#include <chrono>
#include <cmath>
#include <complex>

#include "sdr/errors.hpp"
#include "sdr/rng.hpp"

namespace sdr {

namespace {

using Complexd = std::complex<double>;

constexpr int kMaxKrylov = 30;
constexpr double kKrylovTol = 1e-10;
constexpr double kDriftAbort = 1e-4;

// y = exp(-i*h*T) e1 for the real symmetric tridiagonal T given by
// alpha[0..k], beta[0..k-1].
Eigen::VectorXcd expm_tridiag_e1(const std::vector<double>& alpha, const std::vector<double>& beta,
                                 int k, double h) {
    Eigen::MatrixXd t = Eigen::MatrixXd::Zero(k, k);
    for (int i = 0; i < k; ++i) {
        t(i, i) = alpha[std::size_t(i)];
        if (i + 1 < k) t(i, i + 1) = t(i + 1, i) = beta[std::size_t(i)];
    }
    const Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(t);
    const Eigen::MatrixXd& u = es.eigenvectors();
    Eigen::VectorXcd phases(k);
    for (int i = 0; i < k; ++i) {
        phases[i] = std::exp(Complexd(0.0, -h * es.eigenvalues()[i])) * u(0, i);
    }
    return u.cast<Complexd>() * phases;
}

// psi <- exp(-i*h*H(t_frozen)) psi via a Lanczos expansion with full
// reorthogonalization and Saad's residual estimate beta_k*|y_k|.
void krylov_step(const HamiltonianSpec& spec, double t_frozen, double h, Eigen::VectorXcd& psi,
                 Eigen::VectorXcd& work) {
    const Eigen::Index dim = psi.size();
    const double beta0 = psi.norm();
    if (beta0 == 0.0) return;

    std::vector<Eigen::VectorXcd> v;
    v.reserve(kMaxKrylov + 1);
    v.push_back(psi / beta0);

    std::vector<double> alpha, beta;
    Eigen::VectorXcd y;
    int k = 0;
    while (true) {
        apply_hamiltonian_raw(spec, t_frozen, v[std::size_t(k)].data(), work.data());
        alpha.push_back(v[std::size_t(k)].dot(work).real());
        work -= alpha.back() * v[std::size_t(k)];
        if (k > 0) work -= beta[std::size_t(k - 1)] * v[std::size_t(k - 1)];
        for (int i = 0; i <= k; ++i) {
            work -= v[std::size_t(i)].dot(work) * v[std::size_t(i)];
        }
        const double b = work.norm();
        ++k;
        y = expm_tridiag_e1(alpha, beta, k, h);
        const double scale = std::abs(alpha.back()) + (k > 1 ? std::abs(beta.back()) : 0.0);
        const bool breakdown = b <= 1e-14 * std::max(1.0, scale);
        const bool converged = b * std::abs(y[k - 1]) <= kKrylovTol;
        if (breakdown || converged || k == kMaxKrylov || k == int(dim)) break;
        beta.push_back(b);
        v.push_back(work / b);
    }

    psi.setZero();
    for (int i = 0; i < k; ++i) psi += (beta0 * y[i]) * v[std::size_t(i)];
}

void rk4_step(const HamiltonianSpec& spec, double t, double h, Eigen::VectorXcd& psi,
              std::array<Eigen::VectorXcd, 5>& work) {
    const Complexd mi(0.0, -1.0);
    auto& [k1, k2, k3, k4, tmp] = work;

    apply_hamiltonian_raw(spec, t, psi.data(), k1.data());
    tmp = psi + (0.5 * h) * (mi * k1);
    apply_hamiltonian_raw(spec, t + 0.5 * h, tmp.data(), k2.data());
    tmp = psi + (0.5 * h) * (mi * k2);
    apply_hamiltonian_raw(spec, t + 0.5 * h, tmp.data(), k3.data());
    tmp = psi + h * (mi * k3);
    apply_hamiltonian_raw(spec, t + h, tmp.data(), k4.data());

    psi += (h / 6.0) * (mi * (k1 + 2.0 * k2 + 2.0 * k3 + k4));
}

std::vector<double> densities_unchecked(const QuantumState& state) {
    const BasisSpec& basis = *state.basis;
    std::vector<double> out(std::size_t(basis.n_atoms), 0.0);
    for (std::size_t s = 0; s < basis.states.size(); ++s) {
        const double p = std::norm(state.amplitudes[Eigen::Index(s)]);
        std::uint64_t b = basis.states[s];
        while (b) {
            out[std::size_t(std::countr_zero(b))] += p;
            b &= b - 1;
        }
    }
    return out;
}

}  // namespace

EvolutionResult evolve(const HamiltonianSpec& spec, const QuantumState& initial, double dt,
                       EvolveMethod method, const EvolveObserver& observer) {
    const double duration = spec.waves.duration;
    if (!(dt > 0.0)) throw InputError("evolution step dt must be positive");
    if (dt > duration) throw InputError("dt exceeds the evolution duration");
    if (initial.dim() != spec.basis->states.size()) {
        throw InputError("initial state dimension does not match basis size");
    }
    if (std::abs(initial.norm2() - 1.0) > 1e-6) {
        throw InputError("initial state is not normalized within 1e-6");
    }

    const auto t_start = std::chrono::steady_clock::now();

    QuantumState state = initial;
    Eigen::VectorXcd krylov_work;
    std::array<Eigen::VectorXcd, 5> rk4_work;
    if (method == EvolveMethod::krylov) {
        krylov_work.resize(state.amplitudes.size());
    } else {
        for (auto& w : rk4_work) w.resize(state.amplitudes.size());
    }

    EvolutionResult result;
    // t is recomputed as k*dt each step (not accumulated), so durations that
    // are exact multiples of dt take exactly duration/dt steps.
    for (std::int64_t k = 0;; ++k) {
        const double t = static_cast<double>(k) * dt;
        if (t >= duration - 1e-12 * duration) break;
        const double h = std::min(dt, duration - t);
        if (method == EvolveMethod::krylov) {
            krylov_step(spec, t + 0.5 * h, h, state.amplitudes, krylov_work);
        } else {
            rk4_step(spec, t, h, state.amplitudes, rk4_work);
        }
        ++result.step_count;
        const double t_end = h < dt ? duration : static_cast<double>(k + 1) * dt;

        const double drift = std::abs(1.0 - state.norm2());
        if (drift > kDriftAbort) {
            throw NormDriftError("norm drift " + std::to_string(drift) + " exceeded " +
                                     std::to_string(kDriftAbort) + " at t = " +
                                     std::to_string(t_end) + " us; reduce the step size",
                                 drift);
        }
        if (observer) observer(t_end, state);
    }

    result.norm_drift = std::abs(1.0 - state.norm2());
    result.densities = densities_unchecked(state);
    result.final_state = std::move(state);
    result.wall_time =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - t_start).count();
    return result;
}

std::vector<double> rydberg_densities(const QuantumState& state) {
    if (!state.basis) throw InputError("state has no basis");
    if (std::abs(state.norm2() - 1.0) > 1e-6) {
        throw InputError("state is not normalized within 1e-6");
    }
    return densities_unchecked(state);
}

std::vector<std::uint64_t> sample_bitstrings(const QuantumState& state, std::size_t shots,
                                             std::uint64_t seed) {
    if (shots < 1) throw InputError("need at least one shot");
    if (!state.basis) throw InputError("state has no basis");

    const Eigen::Index dim = state.amplitudes.size();
    std::vector<double> cdf(static_cast<std::size_t>(dim));
    double total = 0.0;
    for (Eigen::Index i = 0; i < dim; ++i) {
        total += std::norm(state.amplitudes[i]);
        cdf[std::size_t(i)] = total;
    }
    if (total <= 0.0) throw InputError("state has zero norm");

    std::vector<std::uint64_t> out(shots);
    for (std::size_t s = 0; s < shots; ++s) {
        const double u = uniform01(seed, s) * total;
        const auto it = std::upper_bound(cdf.begin(), cdf.end(), u);
        const std::size_t idx = std::min(std::size_t(it - cdf.begin()), std::size_t(dim - 1));
        out[s] = state.basis->states[idx];
    }
    return out;
}

QuantumState exact_reference(const HamiltonianSpec& spec, const QuantumState& initial,
                             double duration, double sample_dt) {
    const std::size_t dim = spec.basis->states.size();
    if (dim > (std::size_t(1) << 10)) {
        throw InputError("exact_reference capped at 2^10 basis states");
    }
    if (!(duration > 0.0) || !(sample_dt > 0.0)) {
        throw InputError("exact_reference needs positive duration and sampling interval");
    }
    if (initial.dim() != dim) throw InputError("initial state dimension does not match basis");

    QuantumState state = initial;

    // Consecutive intervals whose frozen drive values and length coincide
    // reuse the eigendecomposition (plateau waveforms hit this constantly).
    Eigen::MatrixXcd u;
    Eigen::VectorXd evals;
    std::array<double, 5> cached_key{};
    bool have_cache = false;

    for (std::int64_t k = 0;; ++k) {
        const double t = static_cast<double>(k) * sample_dt;
        if (t >= duration - 1e-12 * duration) break;
        const double h = std::min(sample_dt, duration - t);
        const double tm = t + 0.5 * h;
        const std::array<double, 5> key = {eval_waveform(spec.waves.omega, tm),
                                           eval_waveform(spec.waves.delta_g, tm),
                                           eval_waveform(spec.waves.delta_l, tm),
                                           eval_waveform(spec.waves.phi, tm), h};
        if (!have_cache || key != cached_key) {
            const Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(dense_hamiltonian(spec, tm));
            u = es.eigenvectors();
            evals = es.eigenvalues();
            cached_key = key;
            have_cache = true;
        }
        Eigen::VectorXcd coeffs = u.adjoint() * state.amplitudes;
        for (Eigen::Index i = 0; i < coeffs.size(); ++i) {
            coeffs[i] *= std::exp(std::complex<double>(0.0, -h * evals[i]));
        }
        state.amplitudes = u * coeffs;
    }
    return state;
}

}  // namespace sdr
