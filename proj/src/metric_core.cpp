#include "ec/metric_core.hpp"

#include <algorithm>
#include <cmath>
#include <queue>

namespace ec {

FiniteMetricSpace FiniteMetricSpace::from_coordinates(std::vector<std::vector<double>> coords,
                                                      PointIndex basepoint,
                                                      std::vector<std::string> labels) {
    FiniteMetricSpace s;
    s.storage_ = Storage::Coordinates;
    s.n_ = coords.size();
    if (s.n_ == 0) throw ValidationError("space must contain at least one point");
    s.dim_ = coords[0].size();
    if (s.dim_ == 0) throw ValidationError("points need at least one coordinate");
    s.coords_.reserve(s.n_ * s.dim_);
    for (std::size_t i = 0; i < s.n_; ++i) {
        if (coords[i].size() != s.dim_)
            throw ValidationError("point " + std::to_string(i) + " has inconsistent dimension");
        for (double c : coords[i]) {
            if (!std::isfinite(c))
                throw ValidationError("point " + std::to_string(i) + " has a non-finite coordinate");
            s.coords_.push_back(c);
        }
    }
    if (basepoint >= s.n_)
        throw ValidationError("basepoint " + std::to_string(basepoint) + " out of range (n=" +
                              std::to_string(s.n_) + ")");
    s.basepoint_ = basepoint;
    if (!labels.empty() && labels.size() != s.n_)
        throw ValidationError("labels count does not match point count");
    s.labels_ = std::move(labels);
    return s;
}

FiniteMetricSpace FiniteMetricSpace::from_matrix(const std::vector<std::vector<double>>& matrix,
                                                 PointIndex basepoint, bool pseudometric,
                                                 std::vector<std::string> labels) {
    FiniteMetricSpace s;
    s.storage_ = Storage::Matrix;
    s.n_ = matrix.size();
    if (s.n_ == 0) throw ValidationError("space must contain at least one point");
    s.matrix_.assign(s.n_ * s.n_, 0.0);
    for (std::size_t i = 0; i < s.n_; ++i) {
        if (matrix[i].size() != s.n_)
            throw ValidationError("matrix row " + std::to_string(i) + " has wrong length");
        for (std::size_t j = 0; j < s.n_; ++j) {
            double d = matrix[i][j];
            if (!std::isfinite(d) || d < 0.0)
                throw ValidationError("negative or non-finite distance at (" + std::to_string(i) +
                                      "," + std::to_string(j) + ")");
            s.matrix_[i * s.n_ + j] = d;
        }
        if (s.matrix_[i * s.n_ + i] != 0.0)
            throw ValidationError("nonzero diagonal at (" + std::to_string(i) + "," +
                                  std::to_string(i) + ")");
    }
    for (std::size_t i = 0; i < s.n_; ++i)
        for (std::size_t j = i + 1; j < s.n_; ++j)
            if (s.matrix_[i * s.n_ + j] != s.matrix_[j * s.n_ + i])
                throw ValidationError("asymmetric at (" + std::to_string(i) + "," +
                                      std::to_string(j) + ")");
    if (!pseudometric) {
        for (std::size_t i = 0; i < s.n_; ++i)
            for (std::size_t j = 0; j < s.n_; ++j)
                for (std::size_t k = 0; k < s.n_; ++k)
                    if (s.matrix_[i * s.n_ + j] >
                        s.matrix_[i * s.n_ + k] + s.matrix_[k * s.n_ + j] + 1e-12)
                        throw ValidationError("triangle inequality violated at (" +
                                              std::to_string(i) + "," + std::to_string(j) + "," +
                                              std::to_string(k) + ")");
    }
    if (basepoint >= s.n_)
        throw ValidationError("basepoint " + std::to_string(basepoint) + " out of range (n=" +
                              std::to_string(s.n_) + ")");
    s.basepoint_ = basepoint;
    if (!labels.empty() && labels.size() != s.n_)
        throw ValidationError("labels count does not match point count");
    s.labels_ = std::move(labels);
    s.pseudometric_ = pseudometric;
    return s;
}

std::span<const double> FiniteMetricSpace::coordinates(PointIndex i) const {
    if (storage_ != Storage::Coordinates) return {};
    return {coords_.data() + static_cast<std::size_t>(i) * dim_, dim_};
}

double FiniteMetricSpace::coord_dist(PointIndex i, PointIndex j) const {
    const double* a = coords_.data() + static_cast<std::size_t>(i) * dim_;
    const double* b = coords_.data() + static_cast<std::size_t>(j) * dim_;
    double s = 0.0;
    for (std::size_t k = 0; k < dim_; ++k) {
        double d = a[k] - b[k];
        s += d * d;
    }
    return std::sqrt(s);
}

double FiniteMetricSpace::diameter() const {
    double m = 0.0;
    for (PointIndex i = 0; i < n_; ++i)
        for (PointIndex j = i + 1; j < n_; ++j)
            m = std::max(m, dist(i, j));
    return m;
}

double FiniteMetricSpace::min_positive_spacing() const {
    double m = 0.0;
    bool found = false;
    for (PointIndex i = 0; i < n_; ++i)
        for (PointIndex j = i + 1; j < n_; ++j) {
            double d = dist(i, j);
            if (d > 0.0 && (!found || d < m)) {
                m = d;
                found = true;
            }
        }
    return found ? m : 0.0;
}

ScaleGraph::ScaleGraph(const FiniteMetricSpace& space, double scale)
    : space_(&space), scale_(scale) {
    if (!(scale > 0.0)) throw ValidationError("scale must be positive");
    const std::size_t n = space.size();
    std::vector<std::vector<PointIndex>> adj(n);
    for (PointIndex i = 0; i < n; ++i)
        for (PointIndex j = i + 1; j < n; ++j)
            if (space.dist(i, j) < scale) {
                edges_.emplace_back(i, j);
                adj[i].push_back(j);
                adj[j].push_back(i);
            }
    adj_offsets_.assign(n + 1, 0);
    for (std::size_t i = 0; i < n; ++i)
        adj_offsets_[i + 1] = adj_offsets_[i] + static_cast<std::uint32_t>(adj[i].size());
    adj_.reserve(adj_offsets_[n]);
    for (std::size_t i = 0; i < n; ++i)
        adj_.insert(adj_.end(), adj[i].begin(), adj[i].end()); // already sorted ascending
    // 3-cliques, lexicographic: for each edge (i,j) intersect the upper neighborhoods
    for (auto [i, j] : edges_) {
        auto ni = neighbors(i);
        auto nj = neighbors(j);
        auto it = std::lower_bound(ni.begin(), ni.end(), j + 1);
        auto jt = std::lower_bound(nj.begin(), nj.end(), j + 1);
        while (it != ni.end() && jt != nj.end()) {
            if (*it < *jt)
                ++it;
            else if (*jt < *it)
                ++jt;
            else {
                triangles_.push_back({i, j, *it});
                ++it;
                ++jt;
            }
        }
    }
}

std::span<const PointIndex> ScaleGraph::neighbors(PointIndex v) const {
    return {adj_.data() + adj_offsets_[v], adj_.data() + adj_offsets_[v + 1]};
}

bool ScaleGraph::adjacent(PointIndex i, PointIndex j) const {
    auto ni = neighbors(i);
    return std::binary_search(ni.begin(), ni.end(), j);
}

ComponentLabeling chain_connected(const ScaleGraph& graph) {
    const std::size_t n = graph.vertex_count();
    ComponentLabeling out;
    out.component.assign(n, 0);
    std::vector<char> seen(n, 0);
    for (PointIndex s = 0; s < n; ++s) {
        if (seen[s]) continue;
        ++out.component_count;
        std::queue<PointIndex> q;
        q.push(s);
        seen[s] = 1;
        while (!q.empty()) {
            PointIndex v = q.front();
            q.pop();
            out.component[v] = s;
            for (PointIndex w : graph.neighbors(v))
                if (!seen[w]) {
                    seen[w] = 1;
                    q.push(w);
                }
        }
    }
    out.connected = out.component_count == 1;
    return out;
}

std::vector<PointIndex> power_reach(const ScaleGraph& graph, PointIndex x, std::uint32_t n) {
    if (x >= graph.vertex_count()) throw ValidationError("power_reach: point index out of range");
    std::vector<std::int64_t> depth(graph.vertex_count(), -1);
    std::queue<PointIndex> q;
    q.push(x);
    depth[x] = 0;
    std::vector<PointIndex> out{x};
    while (!q.empty()) {
        PointIndex v = q.front();
        q.pop();
        if (depth[v] == static_cast<std::int64_t>(n)) continue;
        for (PointIndex w : graph.neighbors(v))
            if (depth[w] < 0) {
                depth[w] = depth[v] + 1;
                out.push_back(w);
                q.push(w);
            }
    }
    std::sort(out.begin(), out.end());
    return out;
}

bool balls_chain_connected(const ScaleGraph& graph, const ScaleGraph& finer) {
    if (&graph.space() != &finer.space())
        throw ValidationError("balls_chain_connected: graphs over different spaces");
    if (finer.scale() > graph.scale())
        throw ValidationError("balls_chain_connected: finer scale exceeds coarse scale");
    const FiniteMetricSpace& space = graph.space();
    const std::size_t n = space.size();
    std::vector<PointIndex> ball;
    std::vector<std::int32_t> pos(n, -1);
    std::vector<PointIndex> stack;
    for (PointIndex x = 0; x < n; ++x) {
        ball.clear();
        for (PointIndex y = 0; y < n; ++y)
            if (space.dist(x, y) < graph.scale()) ball.push_back(y);
        if (ball.empty()) continue; // cannot happen: x itself is in the ball
        for (std::size_t k = 0; k < ball.size(); ++k)
            pos[ball[k]] = static_cast<std::int32_t>(k);
        // connectivity of finer-graph restricted to the ball
        std::vector<char> seen(ball.size(), 0);
        stack.assign(1, ball[0]);
        seen[0] = 1;
        std::size_t visited = 1;
        while (!stack.empty()) {
            PointIndex v = stack.back();
            stack.pop_back();
            for (PointIndex w : finer.neighbors(v)) {
                std::int32_t p = pos[w];
                if (p >= 0 && !seen[p]) {
                    seen[p] = 1;
                    ++visited;
                    stack.push_back(w);
                }
            }
        }
        for (PointIndex y : ball)
            pos[y] = -1;
        if (visited != ball.size()) return false;
    }
    return true;
}

} // namespace ec
