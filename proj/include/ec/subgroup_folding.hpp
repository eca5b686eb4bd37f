#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "ec/words.hpp"

namespace ec {

// Folded core graph of a finitely generated subgroup of a free group.
// Transitions are deterministic and inverse-closed; states are BFS-numbered
// from the base, so equal subgroups produce identical graphs.
class FoldedSubgroupGraph {
public:
    static FoldedSubgroupGraph fold(const std::vector<Word>& words, std::size_t ambient_rank,
                                    bool reverse_insertion_order = false);

    std::size_t ambient_rank() const { return ambient_rank_; }
    std::size_t state_count() const { return out_.size(); }
    std::uint32_t base() const { return 0; }
    // number of positive-letter transitions
    std::size_t edge_count() const;
    std::size_t rank() const; // edges - states + 1 of the core graph

    // -1 when no transition with this letter leaves the state
    std::int64_t transition(std::uint32_t state, Letter l) const;

    bool member(const Word& w) const;
    bool surjective(std::size_t ambient_rank) const;

    bool same_graph(const FoldedSubgroupGraph& other) const;

    std::string to_dot() const;

private:
    std::size_t ambient_rank_ = 0;
    std::vector<std::map<Letter, std::uint32_t>> out_;
};

struct InjectivityProbe {
    bool kernel_found = false;
    Word witness;                    // shortlex-least kernel word when found
    std::uint32_t bound_reached = 0; // L actually exhausted when no kernel found
    bool budget_lowered = false;
};

// Exhaustively maps reduced domain words of length <= max_word_length through
// the homomorphism given by generator images (words over the codomain). The
// enumeration budget may force a lower bound, reported explicitly.
InjectivityProbe probe_injectivity(const std::vector<Word>& images, std::uint32_t max_word_length,
                                   std::size_t budget = 2000000);

} // namespace ec
