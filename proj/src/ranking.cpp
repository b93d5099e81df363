#include "gaugelab/ranking.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include <json.hpp>

#include "gaugelab/kernels.hpp"
#include "gaugelab/rng.hpp"

namespace gaugelab {

const char* to_string(Metric metric) {
    return metric == Metric::Cosine ? "cosine" : "euclidean";
}

NeighborList knn(const Vector& query, const EmbeddingMatrix& candidates, std::size_t k,
                 Metric metric, std::int64_t exclude_id) {
    const std::size_t n = candidates.rows();
    const std::size_t avail = n - (exclude_id >= 0 ? 1 : 0);
    if (k == 0 || k > avail)
        throw std::invalid_argument("knn: k out of range for candidate count");
    if (query.dim() != candidates.cols())
        throw std::invalid_argument("knn: query dimension mismatch");

    const double qnorm = query.norm();
    if (metric == Metric::Cosine && qnorm == 0.0)
        throw std::domain_error("knn: cosine metric undefined for zero query");

    std::vector<Neighbor> all;
    all.reserve(avail);
    for (std::size_t j = 0; j < n; ++j) {
        if (exclude_id >= 0 && j == static_cast<std::size_t>(exclude_id)) continue;
        const auto row = candidates.row(j);
        double dist;
        if (metric == Metric::Cosine) {
            const double cnorm = std::sqrt(kernels::dot(row.data(), row.data(), row.size()));
            if (cnorm == 0.0)
                throw std::domain_error("knn: cosine metric undefined for zero candidate " +
                                        std::to_string(j));
            dist = 1.0 - kernels::dot(query.data(), row.data(), row.size()) / (qnorm * cnorm);
        } else {
            dist = std::sqrt(kernels::squared_l2(query.data(), row.data(), row.size()));
        }
        all.push_back({j, dist});
    }
    std::sort(all.begin(), all.end(), [](const Neighbor& a, const Neighbor& b) {
        if (a.distance != b.distance) return a.distance < b.distance;
        return a.id < b.id;
    });
    all.resize(k);
    return NeighborList{exclude_id, metric, std::move(all)};
}

RankingEquivalenceResult ranking_equivalence_check(const EmbeddingMatrix& queries,
                                                   const EmbeddingMatrix& candidates,
                                                   std::size_t k, bool raw_mode) {
    if (queries.cols() != candidates.cols())
        throw std::invalid_argument("ranking_equivalence_check: dimension mismatch");
    if (!raw_mode) {
        auto check_unit = [](const EmbeddingMatrix& e, const char* what) {
            for (std::size_t i = 0; i < e.rows(); ++i) {
                if (std::abs(e.row_vector(i).norm() - 1.0) > 1e-9)
                    throw std::domain_error(
                        std::string("ranking_equivalence_check: non-unit ") + what + " row " +
                        std::to_string(i) + "; normalize the rows or use raw mode");
            }
        };
        check_unit(queries, "query");
        check_unit(candidates, "candidate");
    }

    for (std::size_t q = 0; q < queries.rows(); ++q) {
        const Vector query = queries.row_vector(q);
        const NeighborList by_cos = knn(query, candidates, k, Metric::Cosine);
        const NeighborList by_euc = knn(query, candidates, k, Metric::Euclidean);
        for (std::size_t r = 0; r < k; ++r) {
            if (by_cos.neighbors[r].id != by_euc.neighbors[r].id)
                return {false, Divergence{q, r}};
        }
    }
    return {true, std::nullopt};
}

namespace {

EmbeddingMatrix posthoc_normalized_orbit(const EmbeddingMatrix& b, const GaugeMatrix& d) {
    EmbeddingMatrix out = apply_gauge(b, d, GaugeSide::RightDInverse);
    for (std::size_t i = 0; i < out.rows(); ++i) {
        auto r = out.row(i);
        const double nrm = std::sqrt(kernels::dot(r.data(), r.data(), r.size()));
        if (nrm == 0.0)
            throw std::domain_error("gauge orbit produced a zero row; cannot normalize");
        for (double& x : r) x /= nrm;
    }
    return out;
}

std::vector<std::vector<std::size_t>> topk_sets(const EmbeddingMatrix& e, std::size_t k,
                                                const std::vector<std::size_t>& query_ids) {
    std::vector<std::vector<std::size_t>> sets;
    sets.reserve(query_ids.size());
    for (std::size_t q : query_ids) {
        const NeighborList nl =
            knn(e.row_vector(q), e, k, Metric::Cosine, static_cast<std::int64_t>(q));
        std::vector<std::size_t> ids;
        ids.reserve(k);
        for (const Neighbor& nb : nl.neighbors) ids.push_back(nb.id);
        std::sort(ids.begin(), ids.end());
        sets.push_back(std::move(ids));
    }
    return sets;
}

double jaccard(const std::vector<std::size_t>& a, const std::vector<std::size_t>& b) {
    std::size_t inter = 0, i = 0, j = 0;
    while (i < a.size() && j < b.size()) {
        if (a[i] == b[j]) { ++inter; ++i; ++j; }
        else if (a[i] < b[j]) ++i;
        else ++j;
    }
    const std::size_t uni = a.size() + b.size() - inter;
    return uni == 0 ? 1.0 : static_cast<double>(inter) / static_cast<double>(uni);
}

}  // namespace

double gauge_ranking_sensitivity(const EmbeddingMatrix& candidates,
                                 const std::vector<GaugeMatrix>& d_samples, std::size_t k,
                                 std::uint64_t seed) {
    if (d_samples.size() < 2)
        throw std::invalid_argument("gauge_ranking_sensitivity: need >= 2 gauge samples");
    if (candidates.rows() < 2 || k >= candidates.rows())
        throw std::invalid_argument("gauge_ranking_sensitivity: need k < n and n >= 2");

    // All items serve as queries up to 256; beyond that a seeded subsample
    // keeps the probe cheap.
    std::vector<std::size_t> query_ids;
    if (candidates.rows() <= 256) {
        query_ids.resize(candidates.rows());
        for (std::size_t i = 0; i < query_ids.size(); ++i) query_ids[i] = i;
    } else {
        Rng rng(seed);
        for (std::size_t i = 0; i < 256; ++i)
            query_ids.push_back(static_cast<std::size_t>(rng.next_u64() % candidates.rows()));
        std::sort(query_ids.begin(), query_ids.end());
        query_ids.erase(std::unique(query_ids.begin(), query_ids.end()), query_ids.end());
    }

    const auto baseline =
        topk_sets(posthoc_normalized_orbit(candidates, GaugeMatrix::identity(candidates.cols())),
                  k, query_ids);

    double total = 0.0;
    std::size_t count = 0;
    for (const GaugeMatrix& d : d_samples) {
        const auto sets = topk_sets(posthoc_normalized_orbit(candidates, d), k, query_ids);
        for (std::size_t q = 0; q < query_ids.size(); ++q) {
            total += jaccard(baseline[q], sets[q]);
            ++count;
        }
    }
    return total / static_cast<double>(count);
}

std::string neighbor_lists_to_jsonl(const std::vector<NeighborList>& lists) {
    std::string out;
    for (const NeighborList& nl : lists) {
        nlohmann::json j;
        j["query_id"] = nl.query_id;
        j["metric"] = to_string(nl.metric);
        auto& arr = j["neighbors"] = nlohmann::json::array();
        for (const Neighbor& nb : nl.neighbors) arr.push_back({nb.id, nb.distance});
        out += j.dump();
        out += '\n';
    }
    return out;
}

}  // namespace gaugelab
