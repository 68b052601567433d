#ifndef SDR_WAVEFORM_HPP
#define SDR_WAVEFORM_HPP

#include <vector>

#include "sdr/register.hpp"

namespace sdr {

struct WaveformSample {
    double t = 0.0;  // us
    double v = 0.0;  // rad/us (dimensionless radians for the phase waveform)
};

// Piecewise-linear schedule. Sample times must be strictly increasing and
// start at 0; evaluation clamps beyond both ends.
struct Waveform {
    std::vector<WaveformSample> samples;

    void check() const;  // throws InputError on a malformed sample list
};

double eval_waveform(const Waveform& w, double t);

// The four drive schedules of the Hamiltonian plus the evolution window.
struct WaveformSet {
    Waveform omega;    // Rabi drive, >= 0
    Waveform delta_g;  // global detuning
    Waveform delta_l;  // local detuning (scaled per atom by alpha_j)
    Waveform phi;      // drive phase, radians
    double duration = 0.0;  // us
};

// Hardware-facing validation: omega within [0, omega_max] and zero at both
// ends of the window, |delta| <= delta_abs_max, duration in (0, t_max].
// Enforced where schedules enter a simulation, not inside the integrator.
void validate_waveforms(const WaveformSet& set, const HardwareProfile& profile);

// Omega ramps 0 -> omega_max over the first 10% of the window, holds, and
// ramps back to 0 over the last 10%; delta_g sweeps -delta_abs_max/2 ->
// +delta_abs_max/2; delta_l and phi stay zero.
WaveformSet default_adiabatic_waveforms(const HardwareProfile& profile, double duration);

}  // namespace sdr

#endif
