#pragma once

// Exact brute-force k-NN under cosine and Euclidean distance, the ranking
// equivalence check on the sphere, and a Jaccard measure of how stable
// post-hoc-normalized rankings are across a gauge orbit.

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "gaugelab/gauge.hpp"

namespace gaugelab {

enum class Metric { Cosine, Euclidean };

const char* to_string(Metric metric);

struct Neighbor {
    std::size_t id;
    double distance;
};

struct NeighborList {
    std::int64_t query_id;  // -1 when the query is not a candidate row
    Metric metric;
    std::vector<Neighbor> neighbors;  // ascending distance, ties by id
};

// Exact top-k by the chosen metric over all candidate rows. Ties break by
// ascending candidate id. When exclude_id >= 0 that row is skipped (used
// when the query is itself a candidate).
NeighborList knn(const Vector& query, const EmbeddingMatrix& candidates, std::size_t k,
                 Metric metric, std::int64_t exclude_id = -1);

struct Divergence {
    std::size_t query_id;
    std::size_t rank;
};

struct RankingEquivalenceResult {
    bool identical;
    std::optional<Divergence> first_divergence;
};

// Runs knn under both metrics for every query row and compares the ordered
// id lists. Rows must be unit within 1e-9 unless raw_mode is set; raw mode
// reports divergences instead of erroring (the unnormalized failure case).
RankingEquivalenceResult ranking_equivalence_check(const EmbeddingMatrix& queries,
                                                   const EmbeddingMatrix& candidates,
                                                   std::size_t k, bool raw_mode = false);

// Mean Jaccard overlap between identity-gauge top-k sets and each sampled
// gauge's top-k sets, on post-hoc-normalized rows pi(D^-1 b), averaged over
// items as queries. 1.0 means rankings are gauge-stable.
double gauge_ranking_sensitivity(const EmbeddingMatrix& candidates,
                                 const std::vector<GaugeMatrix>& d_samples, std::size_t k,
                                 std::uint64_t seed);

// One JSON line per list: {"query_id":..,"metric":..,"neighbors":[[id,d],..]}
std::string neighbor_lists_to_jsonl(const std::vector<NeighborList>& lists);

}  // namespace gaugelab
