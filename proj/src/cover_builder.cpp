#include "ec/cover_builder.hpp"

#include <algorithm>
#include <queue>
#include <set>

namespace ec {

namespace {

std::uint64_t hash_word(const Word& w) {
    std::uint64_t h = 1469598103934665603ull;
    for (Letter l : w) {
        h ^= static_cast<std::uint64_t>(static_cast<std::uint32_t>(l));
        h *= 1099511628211ull;
    }
    return h ^ w.size();
}

std::uint64_t hash_exps(const std::vector<BigInt>& e) {
    std::uint64_t h = 1469598103934665603ull;
    for (const BigInt& x : e) {
        for (char c : x.str()) {
            h ^= static_cast<unsigned char>(c);
            h *= 1099511628211ull;
        }
        h ^= 0x9e3779b97f4a7c15ull;
    }
    return h;
}

} // namespace

std::uint64_t TruncatedCover::key(PointIndex p, const Word& w) const {
    return hash_word(w) ^ (static_cast<std::uint64_t>(p) * 0x9e3779b97f4a7c15ull);
}

std::uint64_t TruncatedCover::key_ab(PointIndex p, const std::vector<BigInt>& e) const {
    return hash_exps(e) ^ (static_cast<std::uint64_t>(p) * 0x9e3779b97f4a7c15ull);
}

std::size_t TruncatedCover::max_word_length() const {
    std::size_t m = 0;
    for (const Word& w : words_)
        m = std::max(m, w.size());
    return m;
}

bool TruncatedCover::has_edge(std::uint32_t a, std::uint32_t b) const {
    if (a > b) std::swap(a, b);
    return std::binary_search(edges_.begin(), edges_.end(), std::make_pair(a, b));
}

std::optional<std::uint32_t> TruncatedCover::find(PointIndex point, const Word& word) const {
    if (mode_ == CoverMode::Free) {
        auto it = index_.find(key(point, word));
        if (it == index_.end()) return std::nullopt;
        for (std::uint32_t v : it->second)
            if (points_[v] == point && words_[v] == word) return v;
        return std::nullopt;
    }
    // Abelianized: canonicalize the exponent vector first
    std::vector<BigInt> e(simp_->rank());
    for (Letter l : word)
        e[letter_generator(l)] += BigInt(l > 0 ? 1 : -1);
    e = lattice_->reduce(std::move(e));
    auto it = index_.find(key_ab(point, e));
    if (it == index_.end()) return std::nullopt;
    for (std::uint32_t v : it->second)
        if (points_[v] == point && exps_[v] == e) return v;
    return std::nullopt;
}

std::vector<std::uint32_t> TruncatedCover::fiber(PointIndex point) const {
    std::vector<std::uint32_t> out;
    for (std::uint32_t v = 0; v < points_.size(); ++v)
        if (points_[v] == point) out.push_back(v);
    return out;
}

TruncatedCover build_cover(const PresentationAtScale& pres, const SimplifiedPresentation& simp,
                           std::uint32_t radius, CoverMode mode) {
    if (mode == CoverMode::Free && !simp.certified_free())
        throw ValidationError(
            "cover construction needs a FreeCertified scale; use the abelianized cover mode "
            "for inconclusive presentations");
    TruncatedCover c;
    c.pres_ = &pres;
    c.simp_ = &simp;
    c.mode_ = mode;
    c.radius_ = radius;

    if (mode == CoverMode::Abelianized) {
        std::vector<std::vector<BigInt>> rows;
        for (const Word& r : simp.group().relators) {
            std::vector<BigInt> row(simp.rank());
            for (Letter l : r)
                row[letter_generator(l)] += BigInt(l > 0 ? 1 : -1);
            rows.push_back(std::move(row));
        }
        c.lattice_ = std::make_shared<const IntegerLattice>(std::move(rows), simp.rank());
    }

    // simplified image of each oriented edge letter, memoized per generator
    const auto& graph = pres.graph();
    auto letter_image = [&](Letter l) -> const Word& { return simp.image(letter_generator(l)); };

    auto add_vertex = [&](PointIndex p, Word w, std::vector<BigInt> e,
                          std::uint32_t depth) -> std::uint32_t {
        std::uint32_t id = static_cast<std::uint32_t>(c.points_.size());
        c.points_.push_back(p);
        c.depth_.push_back(depth);
        if (mode == CoverMode::Free) {
            c.index_[c.key(p, w)].push_back(id);
            c.words_.push_back(std::move(w));
        } else {
            c.index_[c.key_ab(p, e)].push_back(id);
            c.exps_.push_back(std::move(e));
            c.words_.push_back(std::move(w)); // representative word, informational
        }
        return id;
    };

    std::vector<BigInt> zero(mode == CoverMode::Abelianized ? simp.rank() : 0);
    add_vertex(pres.basepoint(), Word{}, zero, 0);
    std::set<std::pair<std::uint32_t, std::uint32_t>> edge_set;
    std::queue<std::uint32_t> q;
    q.push(0);
    while (!q.empty()) {
        std::uint32_t v = q.front();
        q.pop();
        PointIndex p = c.points_[v];
        for (PointIndex to : graph.neighbors(p)) {
            if (!pres.in_component(to)) continue;
            Word w = c.words_[v];
            Letter l = pres.edge_letter(p, to);
            if (l != 0) {
                const Word& img = letter_image(l);
                if (l > 0) {
                    for (Letter x : img)
                        push_reduced(w, x);
                } else {
                    for (auto it = img.rbegin(); it != img.rend(); ++it)
                        push_reduced(w, -*it);
                }
            }
            std::optional<std::uint32_t> target;
            std::vector<BigInt> e;
            if (mode == CoverMode::Free) {
                target = c.find(to, w);
            } else {
                e.assign(simp.rank(), BigInt());
                for (Letter x : w)
                    e[letter_generator(x)] += BigInt(x > 0 ? 1 : -1);
                e = c.lattice_->reduce(std::move(e));
                auto it = c.index_.find(c.key_ab(to, e));
                if (it != c.index_.end())
                    for (std::uint32_t u : it->second)
                        if (c.points_[u] == to && c.exps_[u] == e) {
                            target = u;
                            break;
                        }
            }
            if (!target && c.depth_[v] < radius) {
                target = add_vertex(to, std::move(w), std::move(e), c.depth_[v] + 1);
                q.push(*target);
            }
            if (target && *target != v) {
                auto ab = std::minmax(v, *target);
                edge_set.emplace(ab.first, ab.second);
            }
        }
    }
    c.edges_.assign(edge_set.begin(), edge_set.end());
    return c;
}

std::optional<std::uint32_t> deck_act(const TruncatedCover& cover, const Word& deck_word,
                                      std::uint32_t vertex) {
    if (vertex >= cover.vertex_count()) throw ValidationError("deck_act: vertex out of range");
    Word moved = concat_reduced(free_reduce(deck_word), cover.word(vertex));
    return cover.find(cover.point(vertex), moved);
}

namespace {

void enumerate_reduced_words(std::size_t rank, std::uint32_t max_len,
                             const std::function<void(const Word&)>& visit) {
    Word w;
    std::function<void()> rec = [&]() {
        if (!w.empty()) visit(w);
        if (w.size() == max_len) return;
        for (std::size_t g = 0; g < rank; ++g) {
            for (Letter l : {make_letter(g, true), make_letter(g, false)}) {
                if (!w.empty() && w.back() == -l) continue;
                w.push_back(l);
                rec();
                w.pop_back();
            }
        }
    };
    rec();
}

} // namespace

DiscretenessReport check_discreteness(const TruncatedCover& cover, std::uint32_t words_up_to) {
    DiscretenessReport rep;
    const std::size_t rank = cover.simplification().rank();
    enumerate_reduced_words(rank, words_up_to, [&](const Word& g) {
        ++rep.words_checked;
        for (std::uint32_t v = 0; v < cover.vertex_count(); ++v) {
            auto img = deck_act(cover, g, v);
            if (!img) continue;
            ++rep.actions_checked;
            if (*img == v)
                rep.violations.push_back("fixed point: word " + word_to_string(g) + " fixes vertex " +
                                         std::to_string(v));
            else if (cover.has_edge(v, *img))
                rep.violations.push_back("E*-proximity: word " + word_to_string(g) +
                                         " moves vertex " + std::to_string(v) +
                                         " to an adjacent vertex");
            if (cover.point(*img) != cover.point(v))
                rep.violations.push_back("fiber escape: word " + word_to_string(g) +
                                         " changed the endpoint of vertex " + std::to_string(v));
        }
    });
    // fiber = orbit inside the truncation
    for (PointIndex p = 0; p < cover.presentation().graph().vertex_count(); ++p) {
        auto fib = cover.fiber(p);
        for (std::size_t i = 0; i < fib.size(); ++i)
            for (std::size_t j = i + 1; j < fib.size(); ++j) {
                Word g = concat_reduced(cover.word(fib[j]), inverse_word(cover.word(fib[i])));
                auto img = deck_act(cover, g, fib[i]);
                ++rep.actions_checked;
                if (!img || *img != fib[j])
                    rep.violations.push_back("fiber/orbit mismatch over point " + std::to_string(p) +
                                             " between cover vertices " + std::to_string(fib[i]) +
                                             " and " + std::to_string(fib[j]));
            }
    }
    return rep;
}

} // namespace ec
