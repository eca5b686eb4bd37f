#pragma once

#include <cstdint>
#include <vector>

#include "ec/metric_core.hpp"

namespace ec::testing {

// corners of the unit square, basepoint 0
inline FiniteMetricSpace unit_square() {
    return FiniteMetricSpace::from_coordinates({{0, 0}, {1, 0}, {1, 1}, {0, 1}}, 0);
}

// two unit squares 10 apart
inline FiniteMetricSpace two_squares() {
    return FiniteMetricSpace::from_coordinates(
        {{0, 0}, {1, 0}, {1, 1}, {0, 1}, {10, 0}, {11, 0}, {11, 1}, {10, 1}}, 0);
}

inline FiniteMetricSpace single_point() {
    return FiniteMetricSpace::from_coordinates({{0, 0}}, 0);
}

// deterministic linear congruential generator for property-style tests
struct Lcg {
    std::uint64_t state;
    explicit Lcg(std::uint64_t seed) : state(seed) {}
    std::uint64_t next() {
        state = state * 6364136223846793005ull + 1442695040888963407ull;
        return state >> 11;
    }
    std::int64_t range(std::int64_t lo, std::int64_t hi) { // inclusive
        return lo + static_cast<std::int64_t>(next() % static_cast<std::uint64_t>(hi - lo + 1));
    }
};

} // namespace ec::testing
