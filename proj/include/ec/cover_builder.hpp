#pragma once

#include <cstdint>
#include <functional>
#include <memory>
#include <optional>
#include <string>
#include <unordered_map>
#include <vector>

#include "ec/group_engine.hpp"
#include "ec/scale_complex.hpp"

namespace ec {

enum class CoverMode : std::uint8_t {
    Free,       // vertex identity = (endpoint, reduced word), needs certified-free scale
    Abelianized // vertex identity = (endpoint, exponent vector mod relator lattice)
};

// BFS truncation of the scale cover X_eps: vertices are chain classes reachable
// within `radius` extensions of the base class, edges are single extensions.
class TruncatedCover {
public:
    CoverMode mode() const { return mode_; }
    double scale() const { return pres_->graph().scale(); }
    std::uint32_t radius() const { return radius_; }
    std::size_t vertex_count() const { return points_.size(); }
    std::uint32_t base() const { return 0; }

    PointIndex point(std::uint32_t v) const { return points_[v]; }
    const Word& word(std::uint32_t v) const { return words_[v]; }
    std::uint32_t depth(std::uint32_t v) const { return depth_[v]; }
    std::size_t max_word_length() const;

    const std::vector<std::pair<std::uint32_t, std::uint32_t>>& edges() const { return edges_; }
    bool has_edge(std::uint32_t a, std::uint32_t b) const;

    std::optional<std::uint32_t> find(PointIndex point, const Word& word) const;
    std::vector<std::uint32_t> fiber(PointIndex point) const;

    const PresentationAtScale& presentation() const { return *pres_; }
    const SimplifiedPresentation& simplification() const { return *simp_; }

    friend TruncatedCover build_cover(const PresentationAtScale&, const SimplifiedPresentation&,
                                      std::uint32_t, CoverMode);
    friend struct CoverTestAccess; // fault-injection hook for the test suite

private:
    const PresentationAtScale* pres_ = nullptr;
    const SimplifiedPresentation* simp_ = nullptr;
    CoverMode mode_ = CoverMode::Free;
    std::uint32_t radius_ = 0;
    std::vector<PointIndex> points_;
    std::vector<Word> words_; // reduced word over simplified generators (Free mode)
    std::vector<std::uint32_t> depth_;
    std::vector<std::pair<std::uint32_t, std::uint32_t>> edges_;
    std::unordered_map<std::uint64_t, std::vector<std::uint32_t>> index_;
    std::shared_ptr<const IntegerLattice> lattice_; // Abelianized mode
    std::vector<std::vector<BigInt>> exps_;         // Abelianized mode: canonical exponent vectors

    std::uint64_t key(PointIndex p, const Word& w) const;
    std::uint64_t key_ab(PointIndex p, const std::vector<BigInt>& e) const;
};

// Free mode requires a certified-free (or trivial) simplification and rejects
// otherwise, pointing at the abelianized mode.
TruncatedCover build_cover(const PresentationAtScale& pres, const SimplifiedPresentation& simp,
                           std::uint32_t radius, CoverMode mode = CoverMode::Free);

// Left action of a deck word (over simplified generators) on a cover vertex;
// nullopt means the image lies outside the truncation.
std::optional<std::uint32_t> deck_act(const TruncatedCover& cover, const Word& deck_word,
                                      std::uint32_t vertex);

struct DiscretenessReport {
    std::size_t words_checked = 0;
    std::size_t actions_checked = 0;
    std::vector<std::string> violations;
    bool clean() const { return violations.empty(); }
};

// Every nonidentity deck word of length <= words_up_to, acting wherever the
// image stays inside the truncation: no fixed point, no cover-edge proximity,
// endpoint preserved. Also checks fiber = orbit inside the truncation.
DiscretenessReport check_discreteness(const TruncatedCover& cover, std::uint32_t words_up_to);

} // namespace ec
