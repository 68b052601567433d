#include "sdr/waveform.hpp"

#include <algorithm>
#include <cmath>

#include "sdr/errors.hpp"

namespace sdr {

void Waveform::check() const {
    if (samples.empty()) throw InputError("waveform needs at least one sample");
    if (samples.front().t != 0.0) throw InputError("waveform must start at t = 0");
    for (std::size_t i = 1; i < samples.size(); ++i) {
        if (!(samples[i].t > samples[i - 1].t)) {
            throw InputError("waveform sample times must be strictly increasing");
        }
    }
}

double eval_waveform(const Waveform& w, double t) {
    const auto& s = w.samples;
    if (s.empty()) return 0.0;
    if (t <= s.front().t) return s.front().v;
    if (t >= s.back().t) return s.back().v;
    const auto hi = std::upper_bound(s.begin(), s.end(), t,
                                     [](double a, const WaveformSample& b) { return a < b.t; });
    const auto lo = hi - 1;
    const double f = (t - lo->t) / (hi->t - lo->t);
    return lo->v + f * (hi->v - lo->v);
}

void validate_waveforms(const WaveformSet& set, const HardwareProfile& profile) {
    set.omega.check();
    set.delta_g.check();
    set.delta_l.check();
    set.phi.check();
    if (!(set.duration > 0.0)) throw InputError("evolution duration must be positive");
    if (set.duration > profile.t_max) {
        throw InputError("duration " + std::to_string(set.duration) + " us exceeds t_max " +
                         std::to_string(profile.t_max));
    }
    for (const auto& s : set.omega.samples) {
        if (s.v < 0.0) throw InputError("omega waveform must be non-negative");
        if (s.v > profile.omega_max + 1e-12) {
            throw InputError("omega waveform exceeds omega_max " +
                             std::to_string(profile.omega_max));
        }
    }
    for (const Waveform* w : {&set.delta_g, &set.delta_l}) {
        for (const auto& s : w->samples) {
            if (std::abs(s.v) > profile.delta_abs_max + 1e-12) {
                throw InputError("detuning waveform exceeds delta_abs_max " +
                                 std::to_string(profile.delta_abs_max));
            }
        }
    }
    if (std::abs(eval_waveform(set.omega, 0.0)) > 1e-12 ||
        std::abs(eval_waveform(set.omega, set.duration)) > 1e-12) {
        throw InputError("omega must be zero at the start and end of the window");
    }
}

WaveformSet default_adiabatic_waveforms(const HardwareProfile& profile, double duration) {
    if (!(duration > 0.0) || duration > profile.t_max) {
        throw InputError("duration must lie in (0, t_max]");
    }
    WaveformSet set;
    set.duration = duration;
    const double ramp = 0.1 * duration;
    set.omega.samples = {{0.0, 0.0},
                         {ramp, profile.omega_max},
                         {duration - ramp, profile.omega_max},
                         {duration, 0.0}};
    set.delta_g.samples = {{0.0, -0.5 * profile.delta_abs_max},
                           {duration, 0.5 * profile.delta_abs_max}};
    set.delta_l.samples = {{0.0, 0.0}};
    set.phi.samples = {{0.0, 0.0}};
    return set;
}

}  // namespace sdr
