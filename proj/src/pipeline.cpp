#include "sdr/pipeline.hpp"

#include <algorithm>

#include "sdr/errors.hpp"

namespace sdr {

DotCloud encode_image(const GrayImage& img, const PipelineOptions& opts,
                      const std::string& source) {
    const GradientField grad = sobel_magnitude(img);
    const EdgeMap edges = opts.threshold_absolute
                              ? threshold_edges_absolute(grad, opts.threshold)
                              : threshold_edges(grad, opts.threshold);
    if (edges.true_count() == 0) {
        throw InputError("no edges above threshold in " +
                         (source.empty() ? std::string("image") : source));
    }

    std::vector<Polyline> contours = trace_contours(edges);
    const std::size_t min_pts = std::size_t(std::max(2, opts.min_contour_points));
    std::vector<Polyline> lines;
    for (Polyline& c : contours) {
        if (c.points.size() < min_pts) continue;  // tracing specks, not shape
        Polyline r = resample_equidistant(c, opts.spacing);
        if (r.points.size() < 2) continue;  // collapsed below a usable chain
        lines.push_back(std::move(r));
    }
    if (lines.empty()) {
        throw InputError("no contours with at least " + std::to_string(min_pts) + " points in " +
                         (source.empty() ? std::string("image") : source));
    }

    return simplify_to_budget(lines, opts.budget, opts.eps_min, opts.eps_max, img.width,
                              img.height, source);
}

SimulationOutput simulate_cloud(const DotCloud& cloud, const PipelineOptions& opts,
                                const std::optional<WaveformSet>& waves,
                                const EvolveObserver& observer) {
    SimulationOutput out;
    out.reg = embed(normalize_cloud(cloud), opts.profile, opts.alpha, opts.spacing_policy);

    out.waves = waves ? *waves : default_adiabatic_waveforms(opts.profile, opts.duration);
    validate_waveforms(out.waves, opts.profile);

    const double radius = opts.blockade_radius > 0.0
                              ? opts.blockade_radius
                              : blockade_radius(opts.profile.c6, opts.profile.omega_max);
    auto basis = std::make_shared<const BasisSpec>(
        enumerate_basis(out.reg, opts.basis_mode, radius));
    out.basis = basis;

    const HamiltonianSpec spec = make_hamiltonian(out.reg, out.waves, basis);
    out.result = evolve(spec, ground_state(basis), opts.dt, opts.method, observer);
    return out;
}

}  // namespace sdr
