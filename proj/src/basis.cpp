#include "sdr/basis.hpp"

#include <algorithm>

#include "sdr/errors.hpp"

namespace sdr {

std::ptrdiff_t BasisSpec::index_of(std::uint64_t mask) const {
    if (mode == BasisMode::full) {
        return mask < states.size() ? std::ptrdiff_t(mask) : -1;
    }
    const auto it = std::lower_bound(states.begin(), states.end(), mask);
    if (it == states.end() || *it != mask) return -1;
    return it - states.begin();
}

namespace {

constexpr std::size_t kMaxBlockadeStates = std::size_t(1) << 24;

// Depth-first extension over atoms from the most significant bit down,
// taking the 0-branch before the 1-branch, which emits independent-set
// masks in ascending numeric order.
void enumerate_independent(const std::vector<std::uint64_t>& adj, int bit, std::uint64_t mask,
                           std::vector<std::uint64_t>& out) {
    if (bit < 0) {
        if (out.size() >= kMaxBlockadeStates) {
            throw HardwareError("blockade basis exceeds 2^24 states");
        }
        out.push_back(mask);
        return;
    }
    enumerate_independent(adj, bit - 1, mask, out);
    if ((adj[std::size_t(bit)] & mask) == 0) {
        enumerate_independent(adj, bit - 1, mask | (std::uint64_t(1) << bit), out);
    }
}

}  // namespace

BasisSpec enumerate_basis(const AtomRegister& reg, BasisMode mode, double blockade_radius) {
    const int n = int(reg.positions.size());
    if (n < 1) throw InputError("cannot enumerate a basis for an empty register");

    BasisSpec basis;
    basis.mode = mode;
    basis.n_atoms = n;

    if (mode == BasisMode::full) {
        if (n > 24) {
            throw HardwareError("full basis capped at 24 atoms (got " + std::to_string(n) +
                                "); use blockade mode");
        }
        basis.states.resize(std::size_t(1) << n);
        for (std::size_t i = 0; i < basis.states.size(); ++i) basis.states[i] = i;
        return basis;
    }

    if (!(blockade_radius > 0.0)) throw InputError("blockade mode needs a positive radius");
    if (n > 63) {
        throw HardwareError("blockade basis capped at 63 atoms (got " + std::to_string(n) + ")");
    }
    basis.blockade_radius = blockade_radius;

    std::vector<std::uint64_t> adj(std::size_t(n), 0);
    for (int i = 0; i < n; ++i) {
        for (int j = i + 1; j < n; ++j) {
            if (dist(reg.positions[std::size_t(i)], reg.positions[std::size_t(j)]) <
                blockade_radius) {
                adj[std::size_t(i)] |= std::uint64_t(1) << j;
                adj[std::size_t(j)] |= std::uint64_t(1) << i;
            }
        }
    }
    enumerate_independent(adj, n - 1, 0, basis.states);
    return basis;
}

QuantumState ground_state(std::shared_ptr<const BasisSpec> basis) {
    if (!basis || basis->states.empty()) throw InputError("empty basis");
    QuantumState st;
    st.amplitudes = Eigen::VectorXcd::Zero(Eigen::Index(basis->states.size()));
    st.amplitudes[0] = 1.0;  // states are ascending, so index 0 is all-ground
    st.basis = std::move(basis);
    return st;
}

}  // namespace sdr
