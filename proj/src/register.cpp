#include "sdr/register.hpp"

#include <cmath>
#include <limits>
#include <sstream>

#include "sdr/errors.hpp"

namespace sdr {

void HardwareProfile::check() const {
    const auto bad = [](const char* name) {
        throw InputError(std::string("hardware profile field must be positive: ") + name);
    };
    if (!(area_width > 0.0)) bad("area_width");
    if (!(area_height > 0.0)) bad("area_height");
    if (!(min_spacing > 0.0)) bad("min_spacing");
    if (max_atoms < 1) bad("max_atoms");
    if (!(c6 > 0.0)) bad("c6");
    if (!(omega_max > 0.0)) bad("omega_max");
    if (!(delta_abs_max > 0.0)) bad("delta_abs_max");
    if (!(t_max > 0.0)) bad("t_max");
}

namespace {

// Index pair of the closest atoms, or {-1,-1} for fewer than two atoms.
std::pair<int, int> closest_pair(const std::vector<Vec2>& pos, double& d2_out) {
    std::pair<int, int> best{-1, -1};
    d2_out = std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i < pos.size(); ++i) {
        for (std::size_t j = i + 1; j < pos.size(); ++j) {
            const double d2 = dist2(pos[i], pos[j]);
            if (d2 < d2_out) {
                d2_out = d2;
                best = {int(i), int(j)};
            }
        }
    }
    return best;
}

}  // namespace

AtomRegister embed(const DotCloud& cloud, const HardwareProfile& profile, double alpha_default,
                   SpacingPolicy policy) {
    profile.check();
    if (cloud.points.empty()) throw InputError("cannot embed an empty dot cloud");
    if (int(cloud.points.size()) > profile.max_atoms) {
        throw HardwareError("dot cloud has " + std::to_string(cloud.points.size()) +
                            " points, exceeding max_atoms " + std::to_string(profile.max_atoms));
    }
    if (!(alpha_default >= 0.0 && alpha_default <= 1.0)) {
        throw InputError("alpha_default must lie in [0, 1]");
    }

    Vec2 lo = cloud.points.front();
    Vec2 hi = cloud.points.front();
    for (const Vec2& p : cloud.points) {
        lo.x = std::min(lo.x, p.x);
        lo.y = std::min(lo.y, p.y);
        hi.x = std::max(hi.x, p.x);
        hi.y = std::max(hi.y, p.y);
    }
    if (hi.x - lo.x > 1.0 + 1e-12 || hi.y - lo.y > 1.0 + 1e-12) {
        throw InputError("dot cloud spans more than the unit square; normalize it first");
    }

    // Uniform scale by s on both axes, pattern bounding box centered in the
    // area: a unit-square cloud then always lands inside the device.
    const double s = std::min(profile.area_width, profile.area_height);
    const double off_x = 0.5 * (profile.area_width - s * (lo.x + hi.x));
    const double off_y = 0.5 * (profile.area_height - s * (lo.y + hi.y));

    AtomRegister reg;
    reg.profile = profile;
    reg.provenance = cloud.source;
    reg.positions.reserve(cloud.points.size());
    for (const Vec2& p : cloud.points) {
        reg.positions.push_back({p.x * s + off_x, p.y * s + off_y});
    }
    reg.local_scale.assign(reg.positions.size(), alpha_default);

    const std::size_t initial = reg.positions.size();
    while (reg.positions.size() >= 2) {
        double d2 = 0.0;
        const auto [i, j] = closest_pair(reg.positions, d2);
        if (std::sqrt(d2) >= profile.min_spacing) break;
        if (policy == SpacingPolicy::strict) {
            std::ostringstream msg;
            msg << "atoms " << i << " and " << j << " are " << std::sqrt(d2)
                << " um apart, below min_spacing " << profile.min_spacing;
            throw HardwareError(msg.str());
        }
        reg.positions[i] = 0.5 * (reg.positions[i] + reg.positions[std::size_t(j)]);
        reg.local_scale[i] = 0.5 * (reg.local_scale[i] + reg.local_scale[std::size_t(j)]);
        reg.positions.erase(reg.positions.begin() + j);
        reg.local_scale.erase(reg.local_scale.begin() + j);
    }

    if (initial >= 3 && reg.positions.size() < 2) {
        throw HardwareError("min-spacing merge cascade collapsed the register below 2 atoms");
    }
    return reg;
}

std::vector<Violation> validate(const AtomRegister& reg) {
    std::vector<Violation> out;
    const auto& prof = reg.profile;
    for (std::size_t i = 0; i < reg.positions.size(); ++i) {
        const Vec2 p = reg.positions[i];
        if (p.x < 0.0 || p.x > prof.area_width || p.y < 0.0 || p.y > prof.area_height) {
            std::ostringstream msg;
            msg << "atom " << i << " at (" << p.x << ", " << p.y << ") um is outside the "
                << prof.area_width << " x " << prof.area_height << " um area";
            out.push_back({Violation::Kind::out_of_area, int(i), -1,
                           std::max(std::abs(p.x), std::abs(p.y)), msg.str()});
        }
    }
    for (std::size_t i = 0; i < reg.positions.size(); ++i) {
        for (std::size_t j = i + 1; j < reg.positions.size(); ++j) {
            const double d = dist(reg.positions[i], reg.positions[j]);
            if (d < prof.min_spacing) {
                std::ostringstream msg;
                msg << "atoms " << i << " and " << j << " are " << d
                    << " um apart, below min_spacing " << prof.min_spacing;
                out.push_back({Violation::Kind::spacing, int(i), int(j), d, msg.str()});
            }
        }
    }
    return out;
}

Eigen::MatrixXd interaction_matrix(const AtomRegister& reg) {
    const auto n = Eigen::Index(reg.positions.size());
    Eigen::MatrixXd v = Eigen::MatrixXd::Zero(n, n);
    for (Eigen::Index i = 0; i < n; ++i) {
        for (Eigen::Index j = i + 1; j < n; ++j) {
            const double d2 = dist2(reg.positions[std::size_t(i)], reg.positions[std::size_t(j)]);
            if (d2 == 0.0) {
                throw HardwareError("coincident atoms " + std::to_string(i) + " and " +
                                    std::to_string(j) + " have zero separation");
            }
            const double vij = reg.profile.c6 / (d2 * d2 * d2);
            v(i, j) = vij;
            v(j, i) = vij;
        }
    }
    return v;
}

double blockade_radius(double c6, double omega) {
    if (!(c6 > 0.0) || !(omega > 0.0)) {
        throw InputError("blockade radius requires positive c6 and omega");
    }
    return std::pow(c6 / omega, 1.0 / 6.0);
}

}  // namespace sdr
