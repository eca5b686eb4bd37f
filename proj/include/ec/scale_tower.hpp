#pragma once

#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "ec/cover_builder.hpp"
#include "ec/group_engine.hpp"
#include "ec/metric_core.hpp"
#include "ec/scale_complex.hpp"
#include "ec/subgroup_folding.hpp"

namespace ec {

// Sparse integer matrix stored column-wise: one (row, value) list per column.
using SparseColumns = std::vector<std::vector<std::pair<std::uint32_t, std::int64_t>>>;

// Coarsening homomorphism data between two scales of the same space.
struct ThetaData {
    // per fine generator: its defining loop re-read at the coarse scale
    std::vector<Word> images_raw;     // over coarse raw generators
    SparseColumns matrix_raw;         // coarse raw gens x fine raw gens, exact
    std::size_t coarse_raw_gens = 0;
    std::size_t fine_raw_gens = 0;

    // available when both scales are certified free
    bool reduced_available = false;
    std::vector<Word> images_reduced;              // fine simplified gens -> coarse simplified words
    std::vector<std::vector<std::int64_t>> matrix_reduced; // coarse rank x fine rank
    std::optional<bool> surjective;                // folding verdict
    std::optional<std::size_t> kernel_rank;        // betti_fine - rank(matrix_reduced)
};

ThetaData theta(const PresentationAtScale& coarse, const SimplifiedPresentation& coarse_simp,
                const PresentationAtScale& fine, const SimplifiedPresentation& fine_simp);

// Exact product of reduced matrices.
std::vector<std::vector<std::int64_t>> matmul(const std::vector<std::vector<std::int64_t>>& a,
                                              const std::vector<std::vector<std::int64_t>>& b);
// Exact product of raw sparse matrices (columns of b mapped through a).
SparseColumns sparse_matmul(const SparseColumns& a, std::size_t a_rows, const SparseColumns& b);
bool sparse_equal(const SparseColumns& a, const SparseColumns& b);

enum class UniversalityVerdict : std::uint8_t { Certified, Refuted, Inconclusive };

struct UniversalityResult {
    UniversalityVerdict verdict = UniversalityVerdict::Inconclusive;
    Word witness; // a provably nontrivial loop word when refuted
};

UniversalityResult universality_check(const FPGroup& group);

struct SpaceDigest {
    std::size_t points = 0;
    double diameter = 0.0;
    double min_spacing = 0.0;
    PointIndex basepoint = 0;
};

struct ScaleRecord {
    double scale = 0.0;
    bool chain_connected = false;
    std::size_t component_size = 0;
    std::size_t generators = 0;
    std::size_t relators = 0;
    Certification certification = Certification::Inconclusive;
    AbelianInvariants invariants;
    std::optional<bool> covering_like; // unset for the finest scale
};

struct MapRecord {
    std::size_t coarse_index = 0;
    std::size_t fine_index = 0;
    std::optional<bool> surjective;
    std::optional<std::size_t> kernel_rank;
    std::vector<std::vector<std::int64_t>> matrix_reduced; // empty when unavailable
};

struct StabilizationReport {
    bool stable = false;
    std::size_t rank = 0;
    std::size_t window = 0;
};

struct TowerReport {
    SpaceDigest digest;
    std::vector<ScaleRecord> scales;      // coarse to fine, strictly decreasing
    std::vector<MapRecord> maps;          // consecutive pairs
    std::vector<std::size_t> critical;    // indices i where (i, i+1) changes invariants
    StabilizationReport stabilization;
    std::vector<std::string> warnings;
};

struct TowerOptions {
    std::size_t stabilization_window = 3;
    std::size_t tietze_budget = 50;
    std::size_t threads = 0; // 0 = read EC_THREADS, default 1
};

// Per-scale data kept alive for callers that need presentations and theta maps
// beyond the report (acceptance checks, CLI emitters). Graphs reference the
// space passed to run_tower; the caller keeps it alive.
struct TowerDetail {
    std::vector<double> schedule;
    std::vector<std::unique_ptr<ScaleGraph>> graphs;
    std::vector<std::unique_ptr<PresentationAtScale>> presentations;
    std::vector<SimplifiedPresentation> simplifications;
    std::vector<ThetaData> thetas; // consecutive pairs
    TowerReport report;
};

TowerDetail run_tower(const FiniteMetricSpace& space, const std::vector<double>& schedule,
                      const TowerOptions& options = {});

// Geometric default schedule: ratio 1/2 from diameter/2 down to twice the
// minimum positive spacing.
std::vector<double> auto_schedule(const FiniteMetricSpace& space);

} // namespace ec
