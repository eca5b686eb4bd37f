#include "ec/scale_complex.hpp"

#include <algorithm>
#include <queue>

namespace ec {

namespace {
inline std::uint64_t edge_key(PointIndex a, PointIndex b) {
    if (a > b) std::swap(a, b);
    return (static_cast<std::uint64_t>(a) << 32) | b;
}
} // namespace

PresentationAtScale::PresentationAtScale(const ScaleGraph& graph)
    : graph_(&graph), basepoint_(graph.space().basepoint()) {
    const std::size_t n = graph.vertex_count();
    parent_.assign(n, -2);
    parent_[basepoint_] = -1;
    std::queue<PointIndex> q;
    q.push(basepoint_);
    component_size_ = 1;
    while (!q.empty()) {
        PointIndex v = q.front();
        q.pop();
        for (PointIndex w : graph.neighbors(v)) // ascending: lexicographic tie-break
            if (parent_[w] == -2) {
                parent_[w] = v;
                ++component_size_;
                q.push(w);
            }
    }
    for (auto [a, b] : graph.edges()) {
        if (!in_component(a)) continue; // edges live inside one component
        bool tree = parent_[a] == b || parent_[b] == a;
        if (tree) continue;
        edge_to_generator_.emplace(edge_key(a, b), static_cast<std::uint32_t>(generators_.size()));
        generators_.emplace_back(a, b);
    }
    relators_.reserve(graph.triangles().size());
    for (const auto& t : graph.triangles()) {
        if (!in_component(t[0])) continue;
        Word w;
        auto add = [&](PointIndex u, PointIndex v) {
            Letter l = edge_letter(u, v);
            if (l != 0) w.push_back(l);
        };
        add(t[0], t[1]);
        add(t[1], t[2]);
        add(t[2], t[0]);
        relators_.push_back(std::move(w)); // distinct edges: already freely reduced
    }
}

Letter PresentationAtScale::edge_letter(PointIndex u, PointIndex v) const {
    if (u == v) return 0;
    auto it = edge_to_generator_.find(edge_key(u, v));
    if (it == edge_to_generator_.end()) return 0; // tree edge
    return make_letter(it->second, u < v);
}

Word PresentationAtScale::trace(const std::vector<PointIndex>& vertices) const {
    Word w;
    for (std::size_t i = 1; i < vertices.size(); ++i) {
        Letter l = edge_letter(vertices[i - 1], vertices[i]);
        if (l != 0) push_reduced(w, l);
    }
    return w;
}

std::vector<PointIndex> PresentationAtScale::tree_path_from_root(PointIndex v) const {
    if (!in_component(v)) throw ValidationError("vertex outside the basepoint component");
    std::vector<PointIndex> path;
    for (std::int64_t x = v; x != -1; x = parent_[static_cast<std::size_t>(x)])
        path.push_back(static_cast<PointIndex>(x));
    std::reverse(path.begin(), path.end());
    return path;
}

std::vector<PointIndex> PresentationAtScale::generator_loop(std::size_t gen) const {
    auto [a, b] = generators_[gen];
    std::vector<PointIndex> loop = tree_path_from_root(a);
    std::vector<PointIndex> back = tree_path_from_root(b);
    std::reverse(back.begin(), back.end());
    loop.insert(loop.end(), back.begin(), back.end());
    return loop;
}

bool operator==(const ChainClass& a, const ChainClass& b) {
    return a.endpoint == b.endpoint && a.word == b.word;
}

ChainClass chain_class(const PresentationAtScale& pres, const Chain& chain) {
    if (chain.front() != pres.basepoint())
        throw ValidationError("chain is not based at the basepoint");
    if (!pres.in_component(chain.back()))
        throw ValidationError("chain leaves the basepoint component");
    return ChainClass{chain.back(), pres.trace(chain.vertices)};
}

ChainClass loop_class(const PresentationAtScale& pres, const std::vector<PointIndex>& samples) {
    if (samples.empty()) throw ValidationError("empty loop");
    if (samples.front() != pres.basepoint() || samples.back() != pres.basepoint())
        throw ValidationError("loop must start and end at the basepoint");
    const ScaleGraph& g = pres.graph();
    for (std::size_t i = 1; i < samples.size(); ++i)
        if (!g.admissible(samples[i - 1], samples[i]))
            throw ValidationError("mesh too coarse at samples (" + std::to_string(i - 1) + "," +
                                  std::to_string(i) + "): points " +
                                  std::to_string(samples[i - 1]) + "," +
                                  std::to_string(samples[i]) + " are not within scale");
    return ChainClass{samples.back(), pres.trace(samples)};
}

std::vector<Word> minimal_generators(const ScaleGraph& graph,
                                     const std::vector<PointIndex>& dense_set,
                                     const ScaleGraph& fine_scale_check) {
    if (&graph.space() != &fine_scale_check.space())
        throw ValidationError("minimal_generators: graphs over different spaces");
    if (fine_scale_check.scale() > graph.scale() / 3.0 * (1.0 + 1e-9))
        throw ValidationError("minimal_generators: fine scale must be at most scale/3");
    const FiniteMetricSpace& space = graph.space();
    const PointIndex bp = space.basepoint();
    std::vector<char> in_dense(space.size(), 0);
    for (PointIndex a : dense_set) {
        if (a >= space.size()) throw ValidationError("dense set index out of range");
        in_dense[a] = 1;
    }
    if (!in_dense[bp]) throw ValidationError("dense set must contain the basepoint");
    for (PointIndex x = 0; x < space.size(); ++x) {
        bool covered = false;
        for (PointIndex a : dense_set)
            if (space.dist(x, a) < fine_scale_check.scale()) {
                covered = true;
                break;
            }
        if (!covered)
            throw ValidationError("dense set misses point " + std::to_string(x) +
                                  " at the fine scale");
    }

    // subgraph of the scale graph induced on the dense set
    std::vector<PointIndex> nodes = dense_set;
    std::sort(nodes.begin(), nodes.end());
    nodes.erase(std::unique(nodes.begin(), nodes.end()), nodes.end());
    std::vector<std::int64_t> parent(space.size(), -2);
    parent[bp] = -1;
    std::queue<PointIndex> q;
    q.push(bp);
    while (!q.empty()) {
        PointIndex v = q.front();
        q.pop();
        for (PointIndex w : graph.neighbors(v))
            if (in_dense[w] && parent[w] == -2) {
                parent[w] = v;
                q.push(w);
            }
    }
    auto path_from_root = [&](PointIndex v) {
        std::vector<PointIndex> p;
        for (std::int64_t x = v; x != -1; x = parent[static_cast<std::size_t>(x)])
            p.push_back(static_cast<PointIndex>(x));
        std::reverse(p.begin(), p.end());
        return p;
    };

    PresentationAtScale pres(graph);
    std::vector<Word> out;
    for (PointIndex a : nodes) {
        if (parent[a] == -2) continue; // unreachable dense points contribute nothing
        for (PointIndex b : graph.neighbors(a)) {
            if (!in_dense[b] || b <= a) continue;
            if (parent[b] == -2) continue;
            if (parent[a] == b || parent[b] == a) continue; // dense-tree edge
            // lollipop through dense points: *->a, edge, b->*
            std::vector<PointIndex> loop = path_from_root(a);
            std::vector<PointIndex> back = path_from_root(b);
            std::reverse(back.begin(), back.end());
            loop.insert(loop.end(), back.begin(), back.end());
            Chain c = make_chain(graph, std::move(loop));
            out.push_back(chain_class(pres, c).word);
        }
    }
    return out;
}

} // namespace ec
