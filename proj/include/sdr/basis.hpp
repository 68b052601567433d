#ifndef SDR_BASIS_HPP
#define SDR_BASIS_HPP

#include <Eigen/Dense>
#include <complex>
#include <cstdint>
#include <memory>
#include <vector>

#include "sdr/register.hpp"

namespace sdr {

enum class BasisMode { full, blockade };

// Computational basis over atom bit-configurations (bit j = 1 <=> atom j in
// |r>). Full mode enumerates all 2^N states; blockade mode keeps exactly the
// independent sets of the graph whose edges join atoms closer than
// blockade_radius. States are sorted ascending by bitmask value.
struct BasisSpec {
    BasisMode mode = BasisMode::full;
    double blockade_radius = 0.0;  // um, meaningful in blockade mode only
    int n_atoms = 0;
    std::vector<std::uint64_t> states;

    std::size_t size() const { return states.size(); }

    // Position of `mask` in `states`, or -1 when outside the basis.
    std::ptrdiff_t index_of(std::uint64_t mask) const;
};

BasisSpec enumerate_basis(const AtomRegister& reg, BasisMode mode, double blockade_radius = 0.0);

// Complex amplitude vector over the basis order.
struct QuantumState {
    std::shared_ptr<const BasisSpec> basis;
    Eigen::VectorXcd amplitudes;

    std::size_t dim() const { return std::size_t(amplitudes.size()); }
    double norm2() const { return amplitudes.squaredNorm(); }
};

// |g...g>: amplitude 1 on the all-zero configuration.
QuantumState ground_state(std::shared_ptr<const BasisSpec> basis);

}  // namespace sdr

#endif
