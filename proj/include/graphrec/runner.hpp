#pragma once

#include <array>
#include <iosfwd>
#include <string>
#include <vector>

#include "graphrec/eval.hpp"

namespace graphrec {

/// Declarative run description: dataset paths, pipeline choices, parameters,
/// and output location. Loadable from JSON with command-line overrides; all
/// durations here are in days and converted when building PPRSettings.
struct RunConfig {
    std::string reviews_path;
    std::string trust_path; // required only for explicit trust
    char delimiter = '\0';  // '\0' = whitespace

    GraphKind graph = GraphKind::BIP;
    ContentMode content = ContentMode::None;
    DecayKind decay = DecayKind::None;
    TrustKind trust = TrustKind::None;

    double session_days = 90.0;
    double long_term_weight = 0.5;
    double half_life_days = 180.0;
    double steepness_per_day = 1.0;
    double trust_weight = 0.3;
    int min_overlap = 1;
    double damping = 0.85;
    double tol = 1e-10;
    int max_iter = 100;

    std::vector<int> list_lens = {10};
    int slices = 7;

    int samples = 50;
    std::uint64_t seed = 42;
    Metric objective = Metric::F1;
    bool matrix_tune = false; // tune each matrix cell instead of fixed parameters

    std::string out_dir = "out";

    void validate() const;
};

RunConfig load_config_file(const std::string& path);

/// PPRSettings for the first configured list length (days -> seconds).
PPRSettings settings_from(const RunConfig& config);

struct LoadedData {
    IngestStats stats;
    LinkStream stream;
    ContentCatalog catalog;
    ExplicitTrustNetwork trust_net;
};

LoadedData load_dataset(const RunConfig& config);

struct RunOutput {
    std::vector<std::pair<int, EvalResult>> per_n; // (list length, result)
    std::string summary_path;
    std::string detail_path;
};

/// Evaluates the single configured combination and writes summary.csv +
/// detail.jsonl under config.out_dir.
RunOutput run_single(const RunConfig& config, const LoadedData& data);

struct TuneOutput {
    SearchResult search;
    std::string trials_path;
    std::string best_path;
};

/// Random-search tuning; writes trials.jsonl (deterministic under the seed)
/// and best.json.
TuneOutput run_tune(const RunConfig& config, const LoadedData& data);

struct MatrixRow {
    ContentMode content;
    DecayKind decay;
    TrustKind trust;
    std::array<EvalResult, 3> per_graph; // BIP, STG, LSG
};

struct MatrixOutput {
    std::vector<MatrixRow> rows; // 27 side-information combinations
    EvalResult popularity;       // baseline on the same slices
    std::string csv_path;
};

/// Evaluates every side-information combination on every basic graph plus the
/// popularity baseline, and writes the cross-tabulated matrix.csv.
MatrixOutput run_matrix(const RunConfig& config, const LoadedData& data);

/// Builds the configured graph over the whole stream and dumps its edge list.
void run_inspect(const RunConfig& config, const LoadedData& data, std::ostream& out);

// Enum <-> text used by config files, flags, and reports.
std::string to_string(GraphKind k);
std::string to_string(ContentMode m);
std::string to_string(DecayKind d);
std::string to_string(TrustKind t);
GraphKind graph_kind_from(const std::string& s);
ContentMode content_mode_from(const std::string& s);
DecayKind decay_kind_from(const std::string& s);
TrustKind trust_kind_from(const std::string& s);
Metric metric_from(const std::string& s);

} // namespace graphrec
