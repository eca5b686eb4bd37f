#pragma once

#include <string>

#include "ec/scale_complex.hpp"
#include "ec/scale_tower.hpp"

namespace ec {

// "ec-tower/1" document; identical inputs yield byte-identical output.
std::string tower_to_json(const TowerReport& report);

// Step plot of betti against scale (log axis), critical scales marked.
std::string tower_to_svg(const TowerReport& report);

std::string presentation_to_json(const PresentationAtScale& pres,
                                 const AbelianInvariants& invariants);

struct AnalyzeResult {
    double scale = 0.0;
    bool chain_connected = false;
    std::size_t component_size = 0;
    std::size_t generators = 0;
    std::size_t relators = 0;
    Certification certification = Certification::Inconclusive;
    AbelianInvariants invariants;
    UniversalityResult universality;
};

std::string analyze_to_json(const AnalyzeResult& result);

std::string certification_name(Certification c);

} // namespace ec
