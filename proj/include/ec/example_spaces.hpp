#pragma once

#include <cstdint>
#include <string>

#include "ec/metric_core.hpp"

namespace ec {

enum class Family : std::uint8_t {
    Circle,
    WedgeOfCircles,
    HawaiianStage,
    GasketLevel,
    CarpetLevel,
    SineCurve,
    UnitSquareCorners
};

Family family_from_string(const std::string& name);
std::string family_to_string(Family f);

struct SamplerSpec {
    Family family = Family::Circle;
    std::uint32_t level = 1; // stage / level / circle count / oscillation count
    double density = 0.05;   // target maximum spacing along 1-dimensional pieces
};

// Deterministic sampler; Euclidean metric, basepoint at the family's natural
// tangency or corner point. Rejects densities coarser than a quarter of the
// smallest feature and levels beyond the desk budget.
FiniteMetricSpace sample(const SamplerSpec& spec);

// q_n of the three fractal families; rejects the others.
std::size_t expected_rank(Family family, std::uint32_t n);

// The scale the level-n geometry is evaluated at: 1/2^{n+1} for the earring
// and gasket, (1/2)*3^{-n} for the carpet.
double stage_scale(Family family, std::uint32_t n);

} // namespace ec
