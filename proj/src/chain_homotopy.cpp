#include "ec/chain_homotopy.hpp"

#include <algorithm>
#include <cstring>
#include <queue>
#include <unordered_map>

namespace ec {

namespace {

std::string edge_name(PointIndex a, PointIndex b, double scale) {
    return "{" + std::to_string(std::min(a, b)) + "," + std::to_string(std::max(a, b)) +
           "} is not an edge at scale " + std::to_string(scale);
}

void require_admissible(const ScaleGraph& g, PointIndex a, PointIndex b) {
    if (!g.admissible(a, b)) throw ValidationError(edge_name(a, b, g.scale()));
}

std::uint64_t hash_seq(const PointIndex* data, std::size_t len) {
    std::uint64_t h = 1469598103934665603ull;
    for (std::size_t i = 0; i < len; ++i) {
        h ^= data[i];
        h *= 1099511628211ull;
    }
    return h ^ len;
}

} // namespace

Chain make_chain(const ScaleGraph& graph, std::vector<PointIndex> vertices) {
    if (vertices.empty()) throw ValidationError("chain must be nonempty");
    for (PointIndex v : vertices)
        if (v >= graph.vertex_count())
            throw ValidationError("chain vertex " + std::to_string(v) + " out of range");
    for (std::size_t i = 1; i < vertices.size(); ++i)
        require_admissible(graph, vertices[i - 1], vertices[i]);
    return Chain{&graph, std::move(vertices)};
}

Chain apply_move(const Chain& chain, const HomotopyMove& move) {
    const ScaleGraph& g = *chain.graph;
    const auto& v = chain.vertices;
    Chain out;
    out.graph = chain.graph;
    if (move.kind == MoveKind::Add) {
        if (move.point >= g.vertex_count())
            throw ValidationError("added point " + std::to_string(move.point) + " out of range");
        if (v.size() == 1) {
            // the only legal growth of a one-point chain duplicates its point
            if (move.position != 0 || move.point != v[0])
                throw ValidationError("a one-point chain only extends by duplicating its point");
            out.vertices = {v[0], v[0]};
            return out;
        }
        if (move.position + 1 >= v.size())
            throw ValidationError("add position " + std::to_string(move.position) + " out of range");
        require_admissible(g, v[move.position], move.point);
        require_admissible(g, move.point, v[move.position + 1]);
        out.vertices = v;
        out.vertices.insert(out.vertices.begin() + move.position + 1, move.point);
    } else {
        if (v.size() == 2 && move.position == 1 && v[0] == v[1]) {
            // degenerate collapse (x,x) -> (x); both endpoint values stay x
            out.vertices = {v[0]};
            return out;
        }
        if (move.position == 0 || move.position + 1 >= v.size())
            throw ValidationError("remove position " + std::to_string(move.position) +
                                  " is an endpoint or out of range");
        require_admissible(g, v[move.position - 1], v[move.position + 1]);
        out.vertices = v;
        out.vertices.erase(out.vertices.begin() + move.position);
    }
    return out;
}

Chain verify_certificate(const HomotopyCertificate& cert) {
    Chain current = make_chain(*cert.start.graph, cert.start.vertices);
    for (std::size_t i = 0; i < cert.moves.size(); ++i) {
        try {
            current = apply_move(current, cert.moves[i]);
        } catch (const ValidationError& e) {
            throw CertificateError(i, "certificate invalid at move " + std::to_string(i) + ": " +
                                          e.what());
        }
    }
    return current;
}

HomotopyCertificate reverse_certificate(const HomotopyCertificate& cert) {
    Chain current = make_chain(*cert.start.graph, cert.start.vertices);
    std::vector<HomotopyMove> inverses;
    inverses.reserve(cert.moves.size());
    for (const auto& m : cert.moves) {
        if (m.kind == MoveKind::Add) {
            std::uint32_t pos = current.vertices.size() == 1 ? 1u : m.position + 1;
            inverses.push_back({MoveKind::Remove, pos, 0});
        } else {
            std::uint32_t pos = current.vertices.size() == 2 ? 0u : m.position - 1;
            inverses.push_back({MoveKind::Add, pos, current.vertices[m.position]});
        }
        current = apply_move(current, m);
    }
    std::reverse(inverses.begin(), inverses.end());
    return HomotopyCertificate{current, std::move(inverses)};
}

NormalizeResult normalize(const Chain& chain) {
    Chain current = make_chain(*chain.graph, chain.vertices);
    std::vector<HomotopyMove> moves;
    bool changed = true;
    while (changed) {
        changed = false;
        const auto& v = current.vertices;
        for (std::uint32_t i = 1; i + 1 <= v.size() - 1; ++i) {
            // duplicates and backtracks; both removals lean on the diagonal
            if (v[i] == v[i - 1] || v[i] == v[i + 1] || v[i - 1] == v[i + 1]) {
                HomotopyMove m{MoveKind::Remove, i, 0};
                current = apply_move(current, m);
                moves.push_back(m);
                changed = true;
                break;
            }
        }
        if (!changed && current.vertices.size() == 2 &&
            current.vertices[0] == current.vertices[1]) {
            HomotopyMove m{MoveKind::Remove, 1, 0};
            current = apply_move(current, m);
            moves.push_back(m);
            changed = true;
        }
    }
    return NormalizeResult{current, HomotopyCertificate{make_chain(*chain.graph, chain.vertices),
                                                        std::move(moves)}};
}

std::int64_t OracleClasses::find_stored(const std::vector<PointIndex>& chain) const {
    if (buckets_.empty()) return -1;
    std::uint64_t h = hash_seq(chain.data(), chain.size());
    std::size_t mask = buckets_.size() - 1;
    std::size_t b = h & mask;
    while (buckets_[b] != UINT32_MAX) {
        const Stored& s = stored_[buckets_[b]];
        if (s.length == chain.size() &&
            std::memcmp(arena_.data() + s.offset, chain.data(), sizeof(PointIndex) * s.length) == 0)
            return buckets_[b];
        b = (b + 1) & mask;
    }
    return -1;
}

std::int64_t OracleClasses::class_of(const std::vector<PointIndex>& chain) const {
    std::int64_t idx = find_stored(chain);
    if (idx < 0) return -1;
    return stored_[static_cast<std::size_t>(idx)].cls;
}

namespace {

struct UnionFind {
    std::vector<std::uint32_t> parent;
    std::uint32_t find(std::uint32_t x) {
        while (parent[x] != x) {
            parent[x] = parent[parent[x]];
            x = parent[x];
        }
        return x;
    }
    void unite(std::uint32_t a, std::uint32_t b) {
        a = find(a);
        b = find(b);
        if (a == b) return;
        if (a < b) parent[b] = a; // keep the smallest id (shortlex-least) as root
        else parent[a] = b;
    }
};

// Enumerates all chains from the basepoint with at most `cap` hops, in shortlex
// order, and unions chains related by a single Remove. Returns per-chain data.
struct Enumeration {
    std::vector<PointIndex> arena;
    struct Item {
        std::uint32_t offset;
        std::uint32_t length;
    };
    std::vector<Item> items;
    UnionFind uf;
};

Enumeration enumerate_and_fold(const ScaleGraph& graph, std::uint32_t cap, std::size_t budget) {
    Enumeration e;
    const PointIndex bp = graph.space().basepoint();
    e.arena.push_back(bp);
    e.items.push_back({0, 1});

    // hash table chain -> id
    auto rehash = [&](std::vector<std::uint32_t>& buckets, std::size_t want) {
        std::size_t cap2 = 16;
        while (cap2 < want * 2)
            cap2 <<= 1;
        buckets.assign(cap2, UINT32_MAX);
        for (std::uint32_t id = 0; id < e.items.size(); ++id) {
            std::uint64_t h = hash_seq(e.arena.data() + e.items[id].offset, e.items[id].length);
            std::size_t mask = buckets.size() - 1;
            std::size_t b = h & mask;
            while (buckets[b] != UINT32_MAX)
                b = (b + 1) & mask;
            buckets[b] = id;
        }
    };
    std::vector<std::uint32_t> buckets;
    rehash(buckets, 1024);
    auto lookup = [&](const PointIndex* data, std::size_t len) -> std::int64_t {
        std::uint64_t h = hash_seq(data, len);
        std::size_t mask = buckets.size() - 1;
        std::size_t b = h & mask;
        while (buckets[b] != UINT32_MAX) {
            const auto& it = e.items[buckets[b]];
            if (it.length == len &&
                std::memcmp(e.arena.data() + it.offset, data, sizeof(PointIndex) * len) == 0)
                return buckets[b];
            b = (b + 1) & mask;
        }
        return -1;
    };
    auto insert = [&](const PointIndex* data, std::size_t len) -> std::uint32_t {
        if (e.items.size() + 1 > budget)
            throw BudgetExceeded("oracle budget exceeded (" + std::to_string(budget) + " chains)");
        std::uint32_t id = static_cast<std::uint32_t>(e.items.size());
        std::uint32_t off = static_cast<std::uint32_t>(e.arena.size());
        e.arena.insert(e.arena.end(), data, data + len);
        e.items.push_back({off, static_cast<std::uint32_t>(len)});
        if ((e.items.size() + 1) * 2 > buckets.size()) rehash(buckets, e.items.size() + 1);
        std::uint64_t h = hash_seq(data, len);
        std::size_t mask = buckets.size() - 1;
        std::size_t b = h & mask;
        while (buckets[b] != UINT32_MAX)
            b = (b + 1) & mask;
        buckets[b] = id;
        return id;
    };

    std::uint32_t level_begin = 0, level_end = 1;
    std::vector<PointIndex> buf;
    for (std::uint32_t hops = 1; hops <= cap; ++hops) {
        for (std::uint32_t id = level_begin; id < level_end; ++id) {
            buf.assign(e.arena.begin() + e.items[id].offset,
                       e.arena.begin() + e.items[id].offset + e.items[id].length);
            PointIndex last = buf.back();
            buf.push_back(0);
            auto extend_with = [&](PointIndex next) {
                buf.back() = next;
                insert(buf.data(), buf.size());
            };
            // ascending extension order keeps ids in shortlex order
            auto nbrs = graph.neighbors(last);
            std::size_t k = 0;
            for (; k < nbrs.size() && nbrs[k] < last; ++k)
                extend_with(nbrs[k]);
            extend_with(last);
            for (; k < nbrs.size(); ++k)
                extend_with(nbrs[k]);
            buf.pop_back();
        }
        level_begin = level_end;
        level_end = static_cast<std::uint32_t>(e.items.size());
    }

    e.uf.parent.resize(e.items.size());
    for (std::uint32_t i = 0; i < e.items.size(); ++i)
        e.uf.parent[i] = i;
    // single Remove moves; their inverses (Adds) are covered by symmetry
    std::vector<PointIndex> shorter;
    for (std::uint32_t id = 0; id < e.items.size(); ++id) {
        const auto& it = e.items[id];
        const PointIndex* v = e.arena.data() + it.offset;
        if (it.length == 2 && v[0] == v[1]) {
            // degenerate collapse (x,x) -> (x)
            shorter.assign(1, v[0]);
            std::int64_t other = lookup(shorter.data(), 1);
            if (other >= 0) e.uf.unite(id, static_cast<std::uint32_t>(other));
            continue;
        }
        if (it.length < 3) continue;
        for (std::uint32_t i = 1; i + 1 < it.length; ++i) {
            if (!graph.admissible(v[i - 1], v[i + 1])) continue;
            shorter.assign(v, v + it.length);
            shorter.erase(shorter.begin() + i);
            std::int64_t other = lookup(shorter.data(), shorter.size());
            if (other >= 0) e.uf.unite(id, static_cast<std::uint32_t>(other));
        }
    }
    return e;
}

std::size_t count_loop_classes(const ScaleGraph& graph, Enumeration& e, PointIndex endpoint,
                               std::uint32_t maxlen) {
    (void)graph;
    std::vector<std::uint32_t> roots;
    for (std::uint32_t id = 0; id < e.items.size(); ++id) {
        const auto& it = e.items[id];
        if (it.length - 1 > maxlen) continue;
        if (e.arena[it.offset + it.length - 1] != endpoint) continue;
        roots.push_back(e.uf.find(id));
    }
    std::sort(roots.begin(), roots.end());
    roots.erase(std::unique(roots.begin(), roots.end()), roots.end());
    return roots.size();
}

} // namespace

OracleClasses oracle_classes(const ScaleGraph& graph, PointIndex endpoint, std::uint32_t maxlen,
                             std::size_t budget) {
    if (endpoint >= graph.vertex_count())
        throw ValidationError("oracle endpoint out of range");
    Enumeration e = enumerate_and_fold(graph, maxlen + 1, budget);

    OracleClasses out;
    out.endpoint_ = endpoint;
    out.maxlen_ = maxlen;

    // collect classes among reported chains (endpoint matches, hops <= maxlen)
    std::unordered_map<std::uint32_t, std::int32_t> root_to_class;
    std::vector<std::uint32_t> rep_ids;
    for (std::uint32_t id = 0; id < e.items.size(); ++id) {
        const auto& it = e.items[id];
        if (it.length - 1 > maxlen) continue;
        if (e.arena[it.offset + it.length - 1] != endpoint) continue;
        std::uint32_t root = e.uf.find(id);
        if (!root_to_class.count(root)) {
            root_to_class.emplace(root, static_cast<std::int32_t>(rep_ids.size()));
            rep_ids.push_back(id); // first hit in id order = shortlex-least in its class
        }
    }
    for (std::uint32_t rid : rep_ids) {
        const auto& it = e.items[rid];
        out.reps_.emplace_back(e.arena.begin() + it.offset,
                               e.arena.begin() + it.offset + it.length);
    }

    // store everything for class_of lookups
    out.arena_ = std::move(e.arena);
    out.stored_.reserve(e.items.size());
    for (std::uint32_t id = 0; id < e.items.size(); ++id) {
        const auto& it = e.items[id];
        std::int32_t cls = -1;
        if (it.length - 1 <= maxlen && out.arena_[it.offset + it.length - 1] == endpoint) {
            auto f = root_to_class.find(e.uf.find(id));
            if (f != root_to_class.end()) cls = f->second;
        }
        out.stored_.push_back({it.offset, it.length, cls});
    }
    std::size_t cap2 = 16;
    while (cap2 < out.stored_.size() * 2)
        cap2 <<= 1;
    out.buckets_.assign(cap2, UINT32_MAX);
    for (std::uint32_t id = 0; id < out.stored_.size(); ++id) {
        std::uint64_t h = hash_seq(out.arena_.data() + out.stored_[id].offset,
                                   out.stored_[id].length);
        std::size_t mask = out.buckets_.size() - 1;
        std::size_t b = h & mask;
        while (out.buckets_[b] != UINT32_MAX)
            b = (b + 1) & mask;
        out.buckets_[b] = id;
    }

    // stability: the loop-class count did not change from maxlen-1 to maxlen
    if (maxlen >= 1) {
        Enumeration prev = enumerate_and_fold(graph, maxlen, budget);
        std::size_t prev_count = count_loop_classes(graph, prev, endpoint, maxlen - 1);
        out.stable_ = prev_count == out.reps_.size();
    }
    return out;
}

SearchResult search_homotopy(const Chain& a, const Chain& b, std::size_t budget) {
    if (a.graph != b.graph) throw ValidationError("search_homotopy: chains on different graphs");
    if (a.front() != b.front() || a.back() != b.back())
        throw ValidationError("search_homotopy: endpoint mismatch");
    const ScaleGraph& g = *a.graph;
    make_chain(g, a.vertices);
    make_chain(g, b.vertices);

    SearchResult res;
    if (a.vertices == b.vertices) {
        res.found = true;
        res.certificate = {a, {}};
        return res;
    }

    const std::size_t cap_hops = std::max(a.hops(), b.hops()) + 2;

    struct Node {
        std::vector<PointIndex> chain;
        std::int64_t parent;
        HomotopyMove via;
    };
    std::vector<Node> nodes;
    std::unordered_map<std::uint64_t, std::vector<std::uint32_t>> seen; // hash -> ids
    auto known = [&](const std::vector<PointIndex>& c) -> bool {
        auto it = seen.find(hash_seq(c.data(), c.size()));
        if (it == seen.end()) return false;
        for (std::uint32_t id : it->second)
            if (nodes[id].chain == c) return true;
        return false;
    };
    auto remember = [&](std::vector<PointIndex> c, std::int64_t parent, HomotopyMove via) {
        std::uint64_t h = hash_seq(c.data(), c.size());
        nodes.push_back({std::move(c), parent, via});
        seen[h].push_back(static_cast<std::uint32_t>(nodes.size() - 1));
    };

    remember(a.vertices, -1, HomotopyMove{});
    std::size_t head = 0;
    while (head < nodes.size() && nodes.size() <= budget) {
        const std::size_t id = head++;
        std::vector<PointIndex> cur = nodes[id].chain; // copy: nodes may reallocate
        auto offer = [&](std::vector<PointIndex>&& next, HomotopyMove via) -> bool {
            if (known(next)) return false;
            bool hit = next == b.vertices;
            remember(std::move(next), static_cast<std::int64_t>(id), via);
            return hit;
        };
        bool done = false;
        // removes
        if (cur.size() == 2 && cur[0] == cur[1]) {
            done = offer(std::vector<PointIndex>{cur[0]}, HomotopyMove{MoveKind::Remove, 1, 0});
        }
        for (std::uint32_t i = 1; !done && i + 1 < cur.size(); ++i) {
            if (!g.admissible(cur[i - 1], cur[i + 1])) continue;
            std::vector<PointIndex> next = cur;
            next.erase(next.begin() + i);
            done = offer(std::move(next), HomotopyMove{MoveKind::Remove, i, 0});
        }
        // adds
        if (!done && cur.size() == 1 && cap_hops >= 1) {
            done = offer(std::vector<PointIndex>{cur[0], cur[0]},
                         HomotopyMove{MoveKind::Add, 0, cur[0]});
        }
        if (!done && cur.size() >= 2 && cur.size() - 1 < cap_hops) {
            for (std::uint32_t i = 0; !done && i + 1 < cur.size(); ++i) {
                auto try_point = [&](PointIndex p) -> bool {
                    if (!g.admissible(p, cur[i + 1])) return false;
                    std::vector<PointIndex> next = cur;
                    next.insert(next.begin() + i + 1, p);
                    return offer(std::move(next), HomotopyMove{MoveKind::Add, i, p});
                };
                auto nbrs = g.neighbors(cur[i]);
                std::size_t k = 0;
                for (; !done && k < nbrs.size() && nbrs[k] < cur[i]; ++k)
                    done = try_point(nbrs[k]);
                if (!done) done = try_point(cur[i]);
                for (; !done && k < nbrs.size(); ++k)
                    done = try_point(nbrs[k]);
            }
        }
        if (done) {
            std::vector<HomotopyMove> moves;
            std::int64_t at = static_cast<std::int64_t>(nodes.size()) - 1;
            while (nodes[at].parent >= 0) {
                moves.push_back(nodes[at].via);
                at = nodes[at].parent;
            }
            std::reverse(moves.begin(), moves.end());
            res.found = true;
            res.certificate = {a, std::move(moves)};
            res.explored = nodes.size();
            return res;
        }
    }
    res.explored = nodes.size();
    return res;
}

} // namespace ec
