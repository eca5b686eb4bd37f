#pragma once

#include <cstdint>
#include <unordered_map>
#include <vector>

#include "ec/chain_homotopy.hpp"
#include "ec/group_engine.hpp"
#include "ec/metric_core.hpp"

namespace ec {

// Finite presentation of the deck group at one scale: BFS spanning tree of the
// basepoint component, one generator per non-tree edge, one relator per
// triangle. Generator g for edge {a,b} (a<b) is positive when traversed a->b.
class PresentationAtScale {
public:
    explicit PresentationAtScale(const ScaleGraph& graph);

    const ScaleGraph& graph() const { return *graph_; }
    PointIndex basepoint() const { return basepoint_; }
    bool in_component(PointIndex v) const { return parent_[v] != -2; }
    std::size_t component_size() const { return component_size_; }

    const std::vector<std::pair<PointIndex, PointIndex>>& generators() const { return generators_; }
    const std::vector<Word>& relators() const { return relators_; }
    std::size_t generator_count() const { return generators_.size(); }

    // Letter contributed by traversing u -> v; 0 for tree edges and the diagonal.
    Letter edge_letter(PointIndex u, PointIndex v) const;
    // Reduced generator trace of a vertex sequence (consecutive entries admissible).
    Word trace(const std::vector<PointIndex>& vertices) const;
    // Tree path basepoint -> v.
    std::vector<PointIndex> tree_path_from_root(PointIndex v) const;
    // The defining loop of a generator: tree path + edge + tree path back.
    std::vector<PointIndex> generator_loop(std::size_t gen) const;

    FPGroup fp_group() const { return make_fp_group(generators_.size(), relators_); }

private:
    const ScaleGraph* graph_;
    PointIndex basepoint_;
    std::size_t component_size_ = 0;
    std::vector<std::int64_t> parent_; // -1 root, -2 outside basepoint component
    std::vector<std::pair<PointIndex, PointIndex>> generators_;
    std::unordered_map<std::uint64_t, std::uint32_t> edge_to_generator_;
    std::vector<Word> relators_;
};

struct ChainClass {
    PointIndex endpoint;
    Word word; // freely reduced, over the presentation's generators
};

bool operator==(const ChainClass& a, const ChainClass& b);

// Class of a chain based at the basepoint, as (endpoint, generator trace).
ChainClass chain_class(const PresentationAtScale& pres, const Chain& chain);

// Class of a discretized loop c(t_0),...,c(t_n); every consecutive pair must be
// within scale and the first and last samples must be the basepoint.
ChainClass loop_class(const PresentationAtScale& pres, const std::vector<PointIndex>& samples);

// Finite generating set from a dense net: lollipop loops, one per
// non-tree edge of the dense-set subgraph, returned as generator words.
// Preconditions: dense_set is fine-scale dense, contains the basepoint, and
// fine_scale_check.scale <= graph.scale / 3 (so F^3 is inside E).
std::vector<Word> minimal_generators(const ScaleGraph& graph,
                                     const std::vector<PointIndex>& dense_set,
                                     const ScaleGraph& fine_scale_check);

} // namespace ec
