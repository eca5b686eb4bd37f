#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "ec/metric_core.hpp"

namespace ec {

// An E-chain: consecutive vertices are equal or joined by an edge of the graph.
struct Chain {
    const ScaleGraph* graph = nullptr;
    std::vector<PointIndex> vertices;

    std::size_t hops() const { return vertices.size() - 1; }
    PointIndex front() const { return vertices.front(); }
    PointIndex back() const { return vertices.back(); }
};

Chain make_chain(const ScaleGraph& graph, std::vector<PointIndex> vertices);

enum class MoveKind : std::uint8_t { Add, Remove };

struct HomotopyMove {
    MoveKind kind;
    std::uint32_t position; // Add: insert between position and position+1; Remove: delete this interior index
    PointIndex point = 0;   // Add only
};

struct HomotopyCertificate {
    Chain start;
    std::vector<HomotopyMove> moves;
};

// Single E-extension / its inverse; throws ValidationError naming the violated edge.
Chain apply_move(const Chain& chain, const HomotopyMove& move);

// Replays the moves; independent of any search code. Throws CertificateError with
// the index of the first invalid step.
Chain verify_certificate(const HomotopyCertificate& cert);

// The same moves played backwards (Add <-> Remove); verifies from the end chain.
HomotopyCertificate reverse_certificate(const HomotopyCertificate& cert);

struct NormalizeResult {
    Chain chain;
    HomotopyCertificate certificate;
};

// Drops consecutive duplicates and immediate backtracks until none remain.
NormalizeResult normalize(const Chain& chain);

// Brute-force partition of chains from the basepoint under single moves.
// Chains up to maxlen hops are partitioned; moves may pass through chains one
// hop longer. Deterministic: class representatives are shortlex-least.
class OracleClasses {
public:
    std::size_t class_count() const { return reps_.size(); }
    const std::vector<std::vector<PointIndex>>& representatives() const { return reps_; }
    bool stable() const { return stable_; }
    std::uint32_t maxlen() const { return maxlen_; }
    PointIndex endpoint() const { return endpoint_; }

    // -1 when the chain is not in the partitioned set.
    std::int64_t class_of(const std::vector<PointIndex>& chain) const;

    friend OracleClasses oracle_classes(const ScaleGraph&, PointIndex, std::uint32_t, std::size_t);

private:
    PointIndex endpoint_ = 0;
    std::uint32_t maxlen_ = 0;
    bool stable_ = false;
    std::vector<std::vector<PointIndex>> reps_;
    // flattened chain arena + class id per stored chain
    struct Stored {
        std::uint32_t offset;
        std::uint32_t length; // vertex count
        std::int32_t cls;     // -1 when outside the reported partition
    };
    std::vector<Stored> stored_;
    std::vector<PointIndex> arena_;
    std::vector<std::uint32_t> buckets_; // open-addressing index into stored_
    std::int64_t find_stored(const std::vector<PointIndex>& chain) const;
};

OracleClasses oracle_classes(const ScaleGraph& graph, PointIndex endpoint, std::uint32_t maxlen,
                             std::size_t budget = 1000000);

struct SearchResult {
    bool found = false;
    HomotopyCertificate certificate; // valid when found
    std::size_t explored = 0;
};

// BFS for an E-homotopy from a to b; NotFound is inconclusive, never a proof.
SearchResult search_homotopy(const Chain& a, const Chain& b, std::size_t budget = 100000);

} // namespace ec
