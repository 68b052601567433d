#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <cmath>
#include <complex>
#include <map>
#include <memory>
#include <vector>

#include "doctest.h"
#include "sdr/errors.hpp"
#include "sdr/evolve.hpp"

using namespace sdr;

namespace {

AtomRegister make_register(std::vector<Vec2> positions_um) {
    AtomRegister reg;
    reg.profile = HardwareProfile{};
    reg.positions = std::move(positions_um);
    reg.local_scale.assign(reg.positions.size(), 1.0);
    return reg;
}

Waveform constant(double v) {
    Waveform w;
    w.samples = {{0.0, v}};
    return w;
}

WaveformSet drive(double omega, double delta_g, double duration) {
    WaveformSet set;
    set.omega = constant(omega);
    set.delta_g = constant(delta_g);
    set.delta_l = constant(0.0);
    set.phi = constant(0.0);
    set.duration = duration;
    return set;
}

HamiltonianSpec spec_for(AtomRegister reg, WaveformSet waves) {
    auto basis = std::make_shared<BasisSpec>(enumerate_basis(reg, BasisMode::full));
    return make_hamiltonian(std::move(reg), std::move(waves), basis);
}

// distance between states ignoring the global phase
double phase_free_error(const QuantumState& a, const QuantumState& b) {
    const std::complex<double> overlap = a.amplitudes.dot(b.amplitudes);
    return std::sqrt(std::max(0.0, 2.0 * (1.0 - std::abs(overlap))));
}

double fidelity(const QuantumState& a, const QuantumState& b) {
    return std::norm(a.amplitudes.dot(b.amplitudes));
}

}  // namespace

TEST_CASE("resonant Rabi drive follows sin^2(Omega t / 2) exactly") {
    const double omega = 2.0 * kPi;
    for (EvolveMethod method : {EvolveMethod::krylov, EvolveMethod::rk4}) {
        CAPTURE(int(method));
        // half flip at t = pi/Omega = 0.5 us
        const auto spec = spec_for(make_register({{10, 10}}), drive(omega, 0.0, 0.5));
        const QuantumState g0 = ground_state(spec.basis);

        std::vector<std::pair<double, double>> observed;  // (t, P_r)
        const EvolutionResult res =
            evolve(spec, g0, 1e-3, method, [&](double t, const QuantumState& st) {
                observed.emplace_back(t, rydberg_densities(st)[0]);
            });

        REQUIRE(res.densities.size() == 1);
        CHECK(res.densities[0] == doctest::Approx(1.0).epsilon(1e-6));
        CHECK(res.step_count == 500);
        CHECK(res.norm_drift <= 1e-6);
        CHECK(std::int64_t(observed.size()) == res.step_count);
        for (std::size_t i = 0; i < observed.size(); i += 37) {
            const auto [t, pr] = observed[i];
            const double want = std::pow(std::sin(0.5 * omega * t), 2);
            CHECK(std::abs(pr - want) <= 1e-6);
        }

        // quarter flip: P_r = 1/2
        const auto spec_q = spec_for(make_register({{10, 10}}), drive(omega, 0.0, 0.25));
        const EvolutionResult quarter = evolve(spec_q, ground_state(spec_q.basis), 1e-3, method);
        CHECK(quarter.densities[0] == doctest::Approx(0.5).epsilon(1e-6));
    }
}

TEST_CASE("with the drive off the ground state only acquires a phase") {
    const auto spec = spec_for(make_register({{10, 10}, {30, 10}}), drive(0.0, 5.0, 1.0));
    const QuantumState g0 = ground_state(spec.basis);
    const EvolutionResult res = evolve(spec, g0, 1e-3);
    CHECK(res.step_count == 1000);
    for (double d : res.densities) CHECK(d <= 1e-12);
    CHECK(fidelity(res.final_state, g0) == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(res.norm_drift <= 1e-9);
}

TEST_CASE("two blockaded atoms never doubly excite and match the exact oracle") {
    // 4 um apart at default c6: V ~ 1323 rad/us >> Omega
    AtomRegister reg = make_register({{0, 0}, {4, 0}});
    const double omega = reg.profile.omega_max;
    const auto spec = spec_for(std::move(reg), drive(omega, 0.0, 0.5));
    const QuantumState g0 = ground_state(spec.basis);

    double max_prr = 0.0;
    const EvolutionResult res =
        evolve(spec, g0, 1e-3, EvolveMethod::krylov, [&](double, const QuantumState& st) {
            max_prr = std::max(max_prr, std::norm(st.amplitudes[3]));
        });
    CHECK(max_prr < 0.01);

    const QuantumState exact = exact_reference(spec, g0, 0.5);
    CHECK(fidelity(res.final_state, exact) >= 1.0 - 1e-6);
}

TEST_CASE("krylov and rk4 agree with the exact reference on a ramped schedule") {
    AtomRegister reg = make_register({{0, 0}, {6, 0}, {3, 5}});
    const WaveformSet waves = default_adiabatic_waveforms(reg.profile, 1.0);
    const auto spec = spec_for(std::move(reg), waves);
    const QuantumState g0 = ground_state(spec.basis);
    const QuantumState exact = exact_reference(spec, g0, 1.0);

    const EvolutionResult kry = evolve(spec, g0, 1e-3, EvolveMethod::krylov);
    const EvolutionResult rk = evolve(spec, g0, 1e-3, EvolveMethod::rk4);
    CHECK(fidelity(kry.final_state, exact) >= 1.0 - 1e-6);
    CHECK(fidelity(rk.final_state, exact) >= 1.0 - 1e-6);
    CHECK(kry.norm_drift <= 1e-6);
    CHECK(rk.norm_drift <= 1e-6);

    // the reference is self-consistent under halved sampling: differences
    // shrink at 2nd order and drop below 1e-6 once the interval is fine
    const QuantumState s2 = exact_reference(spec, g0, 1.0, 5e-4);
    const QuantumState s4 = exact_reference(spec, g0, 1.0, 2.5e-4);
    const QuantumState s8 = exact_reference(spec, g0, 1.0, 1.25e-4);
    const double d12 = phase_free_error(exact, s2);
    const double d24 = phase_free_error(s2, s4);
    const double d48 = phase_free_error(s4, s8);
    CHECK(d12 / d24 >= 3.0);
    CHECK(d24 / d48 >= 3.0);
    CHECK(d48 < 1e-6);
}

TEST_CASE("rk4 converges at 4th order against a time-independent oracle") {
    // constant drive makes exact_reference exact to machine precision
    AtomRegister reg = make_register({{0, 0}, {6, 0}});
    const auto spec = spec_for(std::move(reg), drive(15.7, 3.0, 1.0));
    const QuantumState g0 = ground_state(spec.basis);
    const QuantumState exact = exact_reference(spec, g0, 1.0);

    const auto err_at = [&](double dt) {
        return phase_free_error(evolve(spec, g0, dt, EvolveMethod::rk4).final_state, exact);
    };
    const double e1 = err_at(2e-3);
    const double e2 = err_at(1e-3);
    CHECK(e1 > 0.0);
    CHECK(e1 / e2 >= 4.0);  // 4th order predicts ~16x
    CHECK(e1 / e2 <= 64.0);

    // krylov under constant H is exact up to the Lanczos residual
    const EvolutionResult kry = evolve(spec, g0, 1e-2, EvolveMethod::krylov);
    CHECK(fidelity(kry.final_state, exact) >= 1.0 - 1e-9);
}

TEST_CASE("energy is conserved under a time-independent hamiltonian") {
    AtomRegister reg = make_register({{0, 0}, {7, 0}});
    const auto spec = spec_for(std::move(reg), drive(9.0, 4.0, 1.0));
    QuantumState init = ground_state(spec.basis);
    init.amplitudes.setConstant(0.5);  // equal superposition, already normalized

    const auto energy = [&](const QuantumState& st) {
        const QuantumState h_st = apply_hamiltonian(spec, 0.5, st);
        return st.amplitudes.dot(h_st.amplitudes).real();
    };
    const double e0 = energy(init);
    const EvolutionResult res = evolve(spec, init, 1e-3);
    const double e1 = energy(res.final_state);
    CHECK(std::abs(e1 - e0) <= 1e-8 * std::abs(e0));
}

TEST_CASE("step accounting: exact multiples and trailing partial steps") {
    const auto spec = spec_for(make_register({{10, 10}}), drive(1.0, 0.0, 1.0));
    const QuantumState g0 = ground_state(spec.basis);

    std::vector<double> times;
    const EvolutionResult a =
        evolve(spec, g0, 0.3, EvolveMethod::krylov,
               [&](double t, const QuantumState&) { times.push_back(t); });
    CHECK(a.step_count == 4);  // 0.3, 0.6, 0.9 + partial 0.1
    REQUIRE(times.size() == 4);
    CHECK(times[0] == doctest::Approx(0.3));
    CHECK(times[2] == doctest::Approx(0.9));
    CHECK(times[3] == 1.0);

    CHECK(evolve(spec, g0, 1.0).step_count == 1);
    CHECK(evolve(spec, g0, 1e-3).step_count == 1000);

    CHECK_THROWS_AS(evolve(spec, g0, 0.0), InputError);
    CHECK_THROWS_AS(evolve(spec, g0, 2.0), InputError);  // dt > duration
    QuantumState bad = g0;
    bad.amplitudes *= 0.5;
    CHECK_THROWS_AS(evolve(spec, bad, 1e-3), InputError);
}

TEST_CASE("excessive rk4 steps abort with a norm-drift diagnostic") {
    AtomRegister reg = make_register({{0, 0}, {4, 0}});  // V ~ 1323 rad/us
    const auto spec = spec_for(std::move(reg), drive(15.7, 0.0, 4.0));
    const QuantumState g0 = ground_state(spec.basis);
    try {
        evolve(spec, g0, 0.05, EvolveMethod::rk4);
        FAIL("expected NormDriftError");
    } catch (const NormDriftError& e) {
        CHECK(e.drift > 1e-4);
    }
}

TEST_CASE("rydberg_densities sums excited-state probability per atom") {
    auto basis = std::make_shared<BasisSpec>(
        enumerate_basis(make_register({{0, 0}, {10, 0}}), BasisMode::full));

    QuantumState st;
    st.basis = basis;
    st.amplitudes = Eigen::VectorXcd::Zero(4);

    st.amplitudes[0] = 1.0;  // |gg>
    CHECK(rydberg_densities(st) == std::vector<double>{0.0, 0.0});

    st.amplitudes[0] = 0.0;
    st.amplitudes[1] = 1.0;  // atom 0 excited
    CHECK(rydberg_densities(st) == std::vector<double>{1.0, 0.0});

    st.amplitudes[1] = 1.0 / std::sqrt(2.0);
    st.amplitudes[2] = 1.0 / std::sqrt(2.0);
    const auto d = rydberg_densities(st);
    CHECK(d[0] == doctest::Approx(0.5));
    CHECK(d[1] == doctest::Approx(0.5));
}

TEST_CASE("bitstring sampling is seeded, deterministic, and unbiased") {
    auto basis = std::make_shared<BasisSpec>(
        enumerate_basis(make_register({{0, 0}, {10, 0}}), BasisMode::full));

    SUBCASE("a computational basis state always samples itself") {
        QuantumState st;
        st.basis = basis;
        st.amplitudes = Eigen::VectorXcd::Zero(4);
        st.amplitudes[2] = 1.0;
        for (std::uint64_t m : sample_bitstrings(st, 64, 7)) CHECK(m == 2);
    }
    SUBCASE("seed determinism and prefix stability") {
        QuantumState st;
        st.basis = basis;
        st.amplitudes = Eigen::VectorXcd::Constant(4, 0.5);
        const auto a = sample_bitstrings(st, 200, 42);
        const auto b = sample_bitstrings(st, 200, 42);
        CHECK(a == b);
        const auto prefix = sample_bitstrings(st, 50, 42);
        CHECK(std::equal(prefix.begin(), prefix.end(), a.begin()));
        const auto c = sample_bitstrings(st, 200, 43);
        CHECK(a != c);
    }
    SUBCASE("single-atom uniform superposition: 5 sigma binomial bound") {
        auto b1 = std::make_shared<BasisSpec>(
            enumerate_basis(make_register({{0, 0}}), BasisMode::full));
        QuantumState st;
        st.basis = b1;
        st.amplitudes = Eigen::VectorXcd::Constant(2, 1.0 / std::sqrt(2.0));
        const std::size_t shots = 100000;
        const auto samples = sample_bitstrings(st, shots, 2026);
        double ones = 0;
        for (auto m : samples) ones += double(m);
        const double frac = ones / double(shots);
        const double sigma = 0.5 / std::sqrt(double(shots));
        CHECK(std::abs(frac - 0.5) <= 5.0 * sigma);
    }
    SUBCASE("chi^2 against |amplitude|^2 does not reject at alpha = 1e-3") {
        QuantumState st;
        st.basis = basis;
        st.amplitudes.resize(4);
        const double probs[4] = {0.4, 0.3, 0.2, 0.1};
        for (int i = 0; i < 4; ++i) st.amplitudes[i] = std::sqrt(probs[i]);
        const std::size_t shots = 100000;
        std::map<std::uint64_t, double> counts;
        for (auto m : sample_bitstrings(st, shots, 99)) counts[m] += 1.0;
        double chi2 = 0.0;
        for (int i = 0; i < 4; ++i) {
            const double expect = probs[i] * double(shots);
            const double diff = counts[std::uint64_t(i)] - expect;
            chi2 += diff * diff / expect;
        }
        CHECK(chi2 < 16.27);  // chi^2_{3, alpha=1e-3}
    }
}

TEST_CASE("exact_reference argument guards") {
    const auto spec = spec_for(make_register({{10, 10}}), drive(1.0, 0.0, 1.0));
    const QuantumState g0 = ground_state(spec.basis);
    CHECK_THROWS_AS(exact_reference(spec, g0, 0.0), InputError);
    CHECK_THROWS_AS(exact_reference(spec, g0, 1.0, 0.0), InputError);

    std::vector<Vec2> many;
    for (int i = 0; i < 11; ++i) many.push_back({6.0 * i, 0.0});
    const auto big = spec_for(make_register(many), drive(1.0, 0.0, 1.0));
    CHECK_THROWS_AS(exact_reference(big, ground_state(big.basis), 1.0), InputError);
}
