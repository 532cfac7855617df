#pragma once

#include "helmstab/sources.hpp"

#include <vector>

namespace helmstab::testing {

// Reference truth used across the suites: one f0 bump left of the
// interface, one f1 bump right of it.
inline std::vector<Bump> truth_f0() { return {{-0.4, 0.25, 1.0}}; }
inline std::vector<Bump> truth_f1() { return {{0.35, 0.3, 0.8}}; }

inline SourcePair two_bump(const SourceGrid& grid) {
    const auto b0 = truth_f0();
    const auto b1 = truth_f1();
    return make_bump_pair(grid, b0, b1);
}

// Both functions carry a bump on each side of x = 0.
inline SourcePair straddling(const SourceGrid& grid) {
    const std::vector<Bump> b0{{-0.45, 0.3, 1.0}, {0.5, 0.2, -0.6}};
    const std::vector<Bump> b1{{-0.3, 0.25, 0.7}, {0.4, 0.35, 1.1}};
    return make_bump_pair(grid, b0, b1);
}

}  // namespace helmstab::testing
