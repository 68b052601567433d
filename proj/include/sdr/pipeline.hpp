#ifndef SDR_PIPELINE_HPP
#define SDR_PIPELINE_HPP

#include <memory>
#include <optional>
#include <string>

#include "sdr/basis.hpp"
#include "sdr/dots.hpp"
#include "sdr/evolve.hpp"
#include "sdr/image.hpp"
#include "sdr/register.hpp"
#include "sdr/waveform.hpp"

namespace sdr {

// Every tunable of the encode/simulate chain with its documented default.
struct PipelineOptions {
    HardwareProfile profile;

    // imaging + generalization
    double threshold = 0.25;        // fraction of the max gradient magnitude
    bool threshold_absolute = false;  // interpret `threshold` as raw gradient units
    double spacing = 3.0;           // equidistant resample spacing, px
    int min_contour_points = 4;     // traced contours shorter than this are noise
    int budget = 30;                // atom budget for the epsilon search
    double eps_min = 0.0;           // px
    double eps_max = 64.0;          // px

    // embedding + evolution
    double alpha = 1.0;                                  // local-detuning scale
    SpacingPolicy spacing_policy = SpacingPolicy::merge;
    double duration = 4.0;                               // us
    double dt = 1e-3;                                    // us
    EvolveMethod method = EvolveMethod::krylov;
    BasisMode basis_mode = BasisMode::full;
    double blockade_radius = 0.0;  // um; 0 derives (c6/omega_max)^(1/6)
};

// Sobel -> threshold -> trace -> short-contour filter -> resample ->
// budgeted RDP. The result is normalized by max(width, height).
DotCloud encode_image(const GrayImage& img, const PipelineOptions& opts,
                      const std::string& source = {});

struct SimulationOutput {
    AtomRegister reg;
    std::shared_ptr<const BasisSpec> basis;
    WaveformSet waves;
    EvolutionResult result;
};

// Embed the cloud (canonical 0.8-box pose), validate the drive schedules,
// and evolve from the all-ground state. `waves` overrides the default
// adiabatic schedule.
SimulationOutput simulate_cloud(const DotCloud& cloud, const PipelineOptions& opts,
                                const std::optional<WaveformSet>& waves = std::nullopt,
                                const EvolveObserver& observer = {});

}  // namespace sdr

#endif
