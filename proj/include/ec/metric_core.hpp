#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "ec/errors.hpp"

namespace ec {

using PointIndex = std::uint32_t;

// A finite pseudometric space with a basepoint. Distances come either from
// embedded coordinates (Euclidean) or from an explicit symmetric matrix.
class FiniteMetricSpace {
public:
    static FiniteMetricSpace from_coordinates(std::vector<std::vector<double>> coords,
                                              PointIndex basepoint,
                                              std::vector<std::string> labels = {});
    // pseudometric=true skips the triangle-inequality check.
    static FiniteMetricSpace from_matrix(const std::vector<std::vector<double>>& matrix,
                                         PointIndex basepoint, bool pseudometric,
                                         std::vector<std::string> labels = {});

    std::size_t size() const { return n_; }
    PointIndex basepoint() const { return basepoint_; }

    double dist(PointIndex i, PointIndex j) const {
        if (storage_ == Storage::Matrix) return matrix_[static_cast<std::size_t>(i) * n_ + j];
        return coord_dist(i, j);
    }

    bool has_coordinates() const { return storage_ == Storage::Coordinates; }
    std::size_t dimension() const { return dim_; }
    std::span<const double> coordinates(PointIndex i) const;
    const std::vector<std::string>& labels() const { return labels_; }
    bool declared_pseudometric() const { return pseudometric_; }

    double diameter() const;
    // Smallest nonzero pairwise distance; 0 when no positive distance exists.
    double min_positive_spacing() const;

private:
    enum class Storage { Coordinates, Matrix };
    Storage storage_ = Storage::Coordinates;
    std::size_t n_ = 0;
    std::size_t dim_ = 0;
    PointIndex basepoint_ = 0;
    std::vector<double> coords_; // n_ * dim_
    std::vector<double> matrix_; // n_ * n_
    std::vector<std::string> labels_;
    bool pseudometric_ = false;

    double coord_dist(PointIndex i, PointIndex j) const;
};

// The metric entourage at one scale, realized as a graph: edges are the pairs
// at distance strictly below the scale, triangles are its 3-cliques.
class ScaleGraph {
public:
    ScaleGraph(const FiniteMetricSpace& space, double scale);

    double scale() const { return scale_; }
    const FiniteMetricSpace& space() const { return *space_; }
    std::size_t vertex_count() const { return space_->size(); }

    const std::vector<std::pair<PointIndex, PointIndex>>& edges() const { return edges_; }
    const std::vector<std::array<PointIndex, 3>>& triangles() const { return triangles_; }

    std::span<const PointIndex> neighbors(PointIndex v) const;
    bool adjacent(PointIndex i, PointIndex j) const;
    // The entourage relation: diagonal plus edges.
    bool admissible(PointIndex i, PointIndex j) const { return i == j || adjacent(i, j); }

private:
    const FiniteMetricSpace* space_;
    double scale_;
    std::vector<std::pair<PointIndex, PointIndex>> edges_;
    std::vector<std::array<PointIndex, 3>> triangles_;
    std::vector<std::uint32_t> adj_offsets_;
    std::vector<PointIndex> adj_;
};

struct ComponentLabeling {
    bool connected = false;
    // component[i] = smallest point index in i's component
    std::vector<PointIndex> component;
    std::size_t component_count = 0;
};

ComponentLabeling chain_connected(const ScaleGraph& graph);

// B(x, E^n): all points reachable by a chain of at most n hops (diagonal allowed).
std::vector<PointIndex> power_reach(const ScaleGraph& graph, PointIndex x, std::uint32_t n);

// True iff each coarse-scale metric ball induces a connected subgraph of `finer`.
bool balls_chain_connected(const ScaleGraph& graph, const ScaleGraph& finer);

} // namespace ec
