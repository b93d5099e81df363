// gauge_lab: equivalence-curve emission, gauge distortion demo, the
// Path A / Path B factorization experiment, and a gauge-sensitivity audit
// for embedding files.

#include <cstdint>
#include <iostream>
#include <string>

#include <CLI11.hpp>
#include <json.hpp>

#include "gaugelab/cli.hpp"

namespace {

int fail(const std::string& command, const std::exception& e) {
    nlohmann::json err;
    err["error"] = e.what();
    err["command"] = command;
    std::cerr << err.dump() << "\n";
    return 1;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"gauge_lab: cosine/Euclidean equivalence and gauge-freedom experiments"};
    app.require_subcommand(1);

    // curve
    auto* curve = app.add_subcommand("curve", "emit the theta sweep of d_C and d_E^2/2 as CSV");
    std::size_t samples = 181;
    std::string curve_out = "curve.csv";
    curve->add_option("--samples", samples, "number of theta samples over [0, 180] degrees");
    curve->add_option("--out", curve_out, "output CSV path");

    // gauge-demo
    auto* demo = app.add_subcommand("gauge-demo", "cosine drift of a fixed pair under three gauges");
    std::string demo_out = "gauge_demo.csv";
    demo->add_option("--out", demo_out, "output CSV path");

    // pathab
    auto* pathab = app.add_subcommand(
        "pathab", "unconstrained + post-hoc normalization vs sphere-constrained training");
    gaugelab::cli::PathAbOptions pa;
    pathab->add_option("--seed", pa.spec.seed, "fixture seed")->envname("GAUGE_LAB_SEED");
    pathab->add_option("--m", pa.spec.m, "users (rows of A)");
    pathab->add_option("--n", pa.spec.n, "items (columns of A)");
    pathab->add_option("--true-rank", pa.spec.true_rank, "rank of the synthetic signal");
    pathab->add_option("--sigma", pa.spec.noise_sigma, "noise level");
    pathab->add_option("--k", pa.k, "factorization rank");
    pathab->add_option("--lambda", pa.lambda, "product regularization weight");
    pathab->add_option("--gauge-trials", pa.gauge_trials, "number of sampled gauges");
    std::string pathab_out = "pathab.json";
    pathab->add_option("--out", pathab_out, "output JSON path");

    // audit
    auto* audit = app.add_subcommand("audit", "audit an embedding file for gauge sensitivity");
    std::string audit_path;
    audit->add_option("file", audit_path, "embedding file (CSV or JSONL)")->required();
    gaugelab::cli::AuditOptions ao;
    audit->add_option("--seed", ao.seed, "seed for gauge and pair sampling")
        ->envname("GAUGE_LAB_SEED");
    audit->add_option("--gauge-trials", ao.gauge_trials, "number of sampled gauges");
    audit->add_option("--k", ao.k, "top-k for the ranking overlap probe");
    audit->add_option("--spread-threshold", ao.spread_threshold,
                      "cosine spread above which the verdict is gauge_sensitive");
    audit->add_option("--overlap-threshold", ao.overlap_threshold,
                      "kNN overlap below which the verdict is gauge_sensitive");
    std::string format;
    audit->add_option("--format", format, "input format: csv or jsonl (default: by extension)")
        ->check(CLI::IsMember({"csv", "jsonl"}));

    CLI11_PARSE(app, argc, argv);

    try {
        if (*curve) {
            gaugelab::write_text_file(curve_out, gaugelab::cli::curve_csv(samples));
            std::cout << "wrote " << curve_out << "\n";
        } else if (*demo) {
            gaugelab::write_text_file(demo_out, gaugelab::cli::gauge_demo_csv());
            std::cout << "wrote " << demo_out << "\n";
        } else if (*pathab) {
            gaugelab::write_text_file(pathab_out, gaugelab::cli::pathab_report_json(pa));
            std::cout << "wrote " << pathab_out << "\n";
        } else if (*audit) {
            const gaugelab::EmbeddingFormat fmt =
                format.empty() ? gaugelab::detect_format(audit_path)
                               : (format == "jsonl" ? gaugelab::EmbeddingFormat::Jsonl
                                                    : gaugelab::EmbeddingFormat::Csv);
            const gaugelab::EmbeddingMatrix embeddings =
                gaugelab::read_embeddings(audit_path, fmt);
            const gaugelab::cli::AuditReport report =
                gaugelab::cli::audit(embeddings, ao, audit_path);
            std::cout << gaugelab::cli::audit_report_json(report, ao);
        }
    } catch (const std::exception& e) {
        return fail(app.get_subcommands().front()->get_name(), e);
    }
    return 0;
}
