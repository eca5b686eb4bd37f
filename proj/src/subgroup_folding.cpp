#include "ec/subgroup_folding.hpp"

#include <algorithm>
#include <deque>
#include <functional>
#include <queue>

#include "ec/errors.hpp"

namespace ec {

namespace {

struct UF {
    std::vector<std::uint32_t> p;
    std::uint32_t find(std::uint32_t x) {
        while (p[x] != x) {
            p[x] = p[p[x]];
            x = p[x];
        }
        return x;
    }
};

} // namespace

FoldedSubgroupGraph FoldedSubgroupGraph::fold(const std::vector<Word>& words,
                                              std::size_t ambient_rank,
                                              bool reverse_insertion_order) {
    for (const Word& w : words)
        for (Letter l : w)
            if (l == 0 || letter_generator(l) >= ambient_rank)
                throw ValidationError("fold: word letter outside the ambient alphabet");

    // bouquet of word paths at the base state
    std::vector<std::map<Letter, std::vector<std::uint32_t>>> multi(1);
    auto new_state = [&]() {
        multi.emplace_back();
        return static_cast<std::uint32_t>(multi.size() - 1);
    };
    std::vector<Word> ordered = words;
    if (reverse_insertion_order) std::reverse(ordered.begin(), ordered.end());
    for (const Word& raw : ordered) {
        Word w = free_reduce(raw);
        std::uint32_t at = 0;
        for (std::size_t i = 0; i < w.size(); ++i) {
            std::uint32_t next = i + 1 == w.size() ? 0 : new_state();
            multi[at][w[i]].push_back(next);
            multi[next][-w[i]].push_back(at);
            at = next;
        }
    }

    // fold: merge targets of equal-labeled transitions until deterministic
    UF uf;
    uf.p.resize(multi.size());
    for (std::uint32_t i = 0; i < uf.p.size(); ++i)
        uf.p[i] = i;
    std::deque<std::uint32_t> dirty;
    for (std::uint32_t i = 0; i < multi.size(); ++i)
        dirty.push_back(i);
    while (!dirty.empty()) {
        std::uint32_t s = uf.find(dirty.front());
        dirty.pop_front();
        auto& trans = multi[s];
        bool merged_any = false;
        bool s_absorbed = false;
        for (auto it = trans.begin(); it != trans.end() && !s_absorbed; ++it) {
            auto& targets = it->second;
            // canonicalize and dedupe targets
            for (auto& t : targets)
                t = uf.find(t);
            std::sort(targets.begin(), targets.end());
            targets.erase(std::unique(targets.begin(), targets.end()), targets.end());
            while (targets.size() > 1) {
                std::uint32_t a = uf.find(targets[0]);
                std::uint32_t b = uf.find(targets[1]);
                if (a == b) {
                    targets.erase(targets.begin() + 1);
                    continue;
                }
                // merge b into a (keep the smaller representative)
                if (b < a) std::swap(a, b);
                uf.p[b] = a;
                s_absorbed = b == s;
                // move b's transitions into a; inserting into trans while
                // iterating is fine for std::map, missed keys are redone via dirty
                for (auto& [l2, ts2] : multi[b]) {
                    auto& dst = multi[a][l2];
                    dst.insert(dst.end(), ts2.begin(), ts2.end());
                }
                multi[b].clear();
                dirty.push_back(a);
                merged_any = true;
                if (s_absorbed) break; // `targets` dangles now; stop touching it
                targets.erase(targets.begin() + 1);
                targets[0] = a;
            }
        }
        if (merged_any && !s_absorbed) dirty.push_back(s);
    }

    // collapse to canonical states
    std::vector<std::int64_t> remap(multi.size(), -1);
    std::vector<std::map<Letter, std::uint32_t>> det;
    std::vector<std::uint32_t> roots;
    for (std::uint32_t i = 0; i < multi.size(); ++i) {
        std::uint32_t r = uf.find(i);
        if (remap[r] < 0) {
            remap[r] = static_cast<std::int64_t>(roots.size());
            roots.push_back(r);
        }
    }
    det.resize(roots.size());
    for (std::uint32_t i = 0; i < roots.size(); ++i) {
        for (auto& [l, ts] : multi[roots[i]]) {
            if (ts.empty()) continue;
            std::uint32_t t = uf.find(ts[0]);
            det[i][l] = static_cast<std::uint32_t>(remap[t]);
        }
    }
    std::uint32_t base = static_cast<std::uint32_t>(remap[uf.find(0)]);

    // core pruning: repeatedly drop non-base states of degree <= 1
    bool pruned = true;
    std::vector<char> dead(det.size(), 0);
    while (pruned) {
        pruned = false;
        for (std::uint32_t s = 0; s < det.size(); ++s) {
            if (dead[s] || s == base) continue;
            std::size_t deg = 0;
            for (auto& [l, t] : det[s])
                if (!dead[t]) ++deg;
            if (deg <= 1) {
                dead[s] = 1;
                pruned = true;
            }
        }
    }

    // BFS renumbering from the base, letters in a fixed order
    FoldedSubgroupGraph out;
    out.ambient_rank_ = ambient_rank;
    std::vector<std::int64_t> order(det.size(), -1);
    std::vector<std::uint32_t> bfs{base};
    order[base] = 0;
    for (std::size_t head = 0; head < bfs.size(); ++head) {
        std::uint32_t s = bfs[head];
        for (std::size_t g = 0; g < ambient_rank; ++g)
            for (Letter l : {make_letter(g, true), make_letter(g, false)}) {
                auto it = det[s].find(l);
                if (it == det[s].end() || dead[it->second]) continue;
                if (order[it->second] < 0) {
                    order[it->second] = static_cast<std::int64_t>(bfs.size());
                    bfs.push_back(it->second);
                }
            }
    }
    out.out_.resize(bfs.size());
    for (std::uint32_t s = 0; s < det.size(); ++s) {
        if (order[s] < 0) continue;
        for (auto& [l, t] : det[s]) {
            if (dead[t] || order[t] < 0) continue;
            out.out_[static_cast<std::size_t>(order[s])][l] =
                static_cast<std::uint32_t>(order[t]);
        }
    }
    return out;
}

std::size_t FoldedSubgroupGraph::edge_count() const {
    std::size_t e = 0;
    for (const auto& m : out_)
        for (const auto& [l, t] : m)
            if (l > 0) ++e;
    return e;
}

std::size_t FoldedSubgroupGraph::rank() const { return edge_count() - state_count() + 1; }

std::int64_t FoldedSubgroupGraph::transition(std::uint32_t state, Letter l) const {
    const auto& m = out_[state];
    auto it = m.find(l);
    return it == m.end() ? -1 : static_cast<std::int64_t>(it->second);
}

bool FoldedSubgroupGraph::member(const Word& w) const {
    for (Letter l : w)
        if (l == 0 || letter_generator(l) >= ambient_rank_)
            throw ValidationError("member: word letter outside the ambient alphabet");
    std::uint32_t at = 0;
    for (Letter l : free_reduce(w)) {
        std::int64_t next = transition(at, l);
        if (next < 0) return false;
        at = static_cast<std::uint32_t>(next);
    }
    return at == 0;
}

bool FoldedSubgroupGraph::surjective(std::size_t ambient_rank) const {
    for (std::size_t g = 0; g < ambient_rank; ++g)
        if (!member(Word{make_letter(g, true)})) return false;
    return true;
}

bool FoldedSubgroupGraph::same_graph(const FoldedSubgroupGraph& other) const {
    return ambient_rank_ == other.ambient_rank_ && out_ == other.out_;
}

std::string FoldedSubgroupGraph::to_dot() const {
    std::string s = "digraph folded {\n  rankdir=LR;\n  node [shape=circle];\n";
    s += "  0 [shape=doublecircle];\n";
    for (std::uint32_t st = 0; st < out_.size(); ++st)
        for (const auto& [l, t] : out_[st])
            if (l > 0)
                s += "  " + std::to_string(st) + " -> " + std::to_string(t) + " [label=\"g" +
                     std::to_string(letter_generator(l) + 1) + "\"];\n";
    s += "}\n";
    return s;
}

InjectivityProbe probe_injectivity(const std::vector<Word>& images, std::uint32_t max_word_length,
                                   std::size_t budget) {
    InjectivityProbe out;
    const std::size_t rank = images.size();
    if (rank == 0) {
        out.bound_reached = max_word_length;
        return out;
    }
    // shrink the bound until the reduced-word count fits the budget
    std::uint32_t bound = max_word_length;
    auto count_words = [&](std::uint32_t L) -> double {
        double total = 0, level = 1;
        for (std::uint32_t i = 1; i <= L; ++i) {
            level *= i == 1 ? static_cast<double>(2 * rank) : static_cast<double>(2 * rank - 1);
            total += level;
            if (total > 1e18) return total;
        }
        return total;
    };
    while (bound > 1 && count_words(bound) > static_cast<double>(budget)) {
        --bound;
        out.budget_lowered = true;
    }

    // shortlex enumeration: shortest kernel word wins, lex order breaks ties
    Word w;
    auto image_of = [&](const Word& word) {
        Word img;
        for (Letter l : word) {
            const Word& gi = images[letter_generator(l)];
            if (l > 0) {
                for (Letter x : gi)
                    push_reduced(img, x);
            } else {
                for (auto it = gi.rbegin(); it != gi.rend(); ++it)
                    push_reduced(img, -*it);
            }
        }
        return img;
    };
    std::function<bool(std::uint32_t)> rec = [&](std::uint32_t target_len) -> bool {
        if (w.size() == target_len) {
            if (image_of(w).empty()) {
                out.kernel_found = true;
                out.witness = w;
                return true;
            }
            return false;
        }
        for (std::size_t g = 0; g < rank; ++g)
            for (Letter l : {make_letter(g, true), make_letter(g, false)}) {
                if (!w.empty() && w.back() == -l) continue;
                w.push_back(l);
                if (rec(target_len)) return true;
                w.pop_back();
            }
        return false;
    };
    for (std::uint32_t L = 1; L <= bound; ++L)
        if (rec(L)) break;
    out.bound_reached = bound;
    return out;
}

} // namespace ec
