#ifndef SDR_REGISTER_HPP
#define SDR_REGISTER_HPP

#include <Eigen/Dense>
#include <string>
#include <vector>

#include "sdr/dots.hpp"
#include "sdr/geometry.hpp"

namespace sdr {

// Physical device geometry and drive limits. Angular frequencies in rad/us,
// lengths in um, times in us. Defaults mirror publicly documented values for
// a commercial neutral-atom machine; all fields are configuration.
struct HardwareProfile {
    double area_width = 75.0;    // um
    double area_height = 76.0;   // um
    double min_spacing = 4.0;    // um
    int max_atoms = 256;
    double c6 = 2.0 * kPi * 862690.0;        // rad/us * um^6
    double omega_max = 2.0 * kPi * 2.5;      // rad/us
    double delta_abs_max = 2.0 * kPi * 20.0; // rad/us
    double t_max = 4.0;                      // us

    void check() const;  // throws InputError on a non-positive field
};

// How embed() resolves min-spacing conflicts.
enum class SpacingPolicy { merge, strict };

struct AtomRegister {
    std::vector<Vec2> positions;      // um
    std::vector<double> local_scale;  // alpha_j in [0,1], one per atom
    HardwareProfile profile;
    std::string provenance;  // DotCloud id

    std::size_t size() const { return positions.size(); }
};

struct Violation {
    enum class Kind { out_of_area, spacing, coincident };
    Kind kind;
    int index_a = -1;
    int index_b = -1;      // -1 for single-atom violations
    double measured = 0.0; // offending coordinate or pair distance, um
    std::string message;
};

// Map normalized [0,1]^2 coordinates onto the device: uniform scale
// s = min(area_width, area_height) on both axes, the unit square centered in
// the area. Min-spacing conflicts are repaired by repeatedly merging the
// closest offending pair at its midpoint (policy merge) or rejected (strict).
AtomRegister embed(const DotCloud& cloud, const HardwareProfile& profile,
                   double alpha_default = 1.0, SpacingPolicy policy = SpacingPolicy::merge);

// Reports every out-of-area coordinate and under-spaced pair; never throws.
std::vector<Violation> validate(const AtomRegister& reg);

// V_jk = c6 / d_jk^6 (rad/us), zero diagonal, symmetric.
Eigen::MatrixXd interaction_matrix(const AtomRegister& reg);

// Blockade radius R_b = (c6 / omega)^(1/6), um.
double blockade_radius(double c6, double omega);

}  // namespace sdr

#endif
