#pragma once

// Command implementations behind the gauge_lab CLI. Each command is a pure
// function from its options to report text, so the test suite can exercise
// them without spawning processes; the binary in tools/ only handles flag
// parsing and file I/O.

#include <cstdint>
#include <string>

#include "gaugelab/datagen.hpp"
#include "gaugelab/io.hpp"

namespace gaugelab::cli {

// Fixture pair behind the gauge-demo command: two unit vectors in R^2 whose
// baseline cosine is 0.952 and whose cosine rises monotonically under
// diag(2, 0.5) and then diag(0.3, 3.3).
std::pair<Vector, Vector> demo_pair();

// CSV for the equivalence curve (see geometry.hpp).
std::string curve_csv(std::size_t samples);

// CSV table gauge_label,d1,d2,cosine,inner_product for the three demo
// gauges. The inner_product column is the prediction-level pairing
// <D b1, D^-1 b2>, constant across rows; the cosine column is
// cos(D b1, D b2), which drifts.
std::string gauge_demo_csv();

struct PathAbOptions {
    SyntheticSpec spec{32, 48, 4, 0.01, 7};
    std::size_t k = 4;
    double lambda = 0.0;
    std::size_t gauge_trials = 100;
    // Severe gauges: log-uniform per axis over [gauge_lo, gauge_hi].
    double gauge_lo = 1e-2;
    double gauge_hi = 1e2;
};

// Runs Path A (unconstrained training + post-hoc normalization across the
// gauge orbit) and Path B (sphere-constrained training) end to end and
// returns a JSON report with both branches, all statistics and all seeds.
std::string pathab_report_json(const PathAbOptions& options);

enum class Verdict { SphereSafe, GaugeSensitive, Indeterminate };
const char* to_string(Verdict v);

struct AuditOptions {
    std::size_t gauge_trials = 32;
    std::size_t k = 10;
    std::uint64_t seed = 0;
    double unit_tolerance = 1e-6;
    double spread_threshold = 0.01;
    double overlap_threshold = 0.99;
    double gauge_lo = 1e-2;
    double gauge_hi = 1e2;
};

struct AuditReport {
    std::string source;
    std::size_t n = 0;
    std::size_t d = 0;
    double unit_norm_fraction = 0.0;
    double gauge_cosine_spread = 0.0;
    double gauge_knn_overlap = 1.0;
    Verdict verdict = Verdict::Indeterminate;
};

AuditReport audit(const EmbeddingMatrix& embeddings, const AuditOptions& options,
                  const std::string& source);

std::string audit_report_json(const AuditReport& report, const AuditOptions& options);

}  // namespace gaugelab::cli
